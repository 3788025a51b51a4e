#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jtx/borel.hpp"
#include "jtx/crystalline.hpp"
#include "jtx/dynamics.hpp"
#include "jtx/experiment.hpp"
#include "jtx/probes.hpp"
#include "jtx/serialize.hpp"
#include "jtx/stieltjes.hpp"
#include "jtx/thouless.hpp"
#include "jtx/transfer.hpp"
#include "jtx/transport.hpp"

namespace py = pybind11;
using namespace jtx;

namespace {

JacobiModel model_from_spec(const py::dict& spec) {
    return jacobi_model_from_json(json::parse(std::string(py::str(py::module_::import("json")
                                                                      .attr("dumps")(spec)))));
}

Lead lead_from_spec(const py::object& spec) {
    if (py::isinstance<py::str>(spec)) {
        const std::string s = spec.cast<std::string>();
        if (s == "free" || s == "free-half-line") return Lead::free_half_line();
        throw std::invalid_argument("unknown lead shorthand: " + s);
    }
    return lead_from_json(json::parse(std::string(py::str(py::module_::import("json")
                                                              .attr("dumps")(spec)))));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "spectral and transport quantities of half-line Jacobi operators";

    py::class_<JacobiModel>(m, "JacobiModel")
        .def_static("free_chain", &JacobiModel::free_chain)
        .def_static("explicit_list", &JacobiModel::explicit_list, py::arg("a"), py::arg("b"))
        .def_static("anderson", &JacobiModel::anderson, py::arg("width"), py::arg("seed"))
        .def_static("almost_mathieu", &JacobiModel::almost_mathieu, py::arg("coupling"),
                    py::arg("alpha"), py::arg("theta"))
        .def_static("fibonacci", &JacobiModel::fibonacci, py::arg("coupling"))
        .def_static("from_dict", &model_from_spec)
        .def("a", &JacobiModel::a)
        .def("b", &JacobiModel::b)
        .def("diagonal",
             [](const JacobiModel& self, std::size_t n) { return self.slice(n).b; })
        .def("off_diagonal",
             [](const JacobiModel& self, std::size_t n) { return self.slice(n).a; })
        .def("to_dict", [](const JacobiModel& self) {
            return py::module_::import("json").attr("loads")(to_json(self).dump());
        });

    py::class_<DiscreteMeasure>(m, "DiscreteMeasure")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("points"),
             py::arg("weights"))
        .def_readonly("points", &DiscreteMeasure::points)
        .def_readonly("weights", &DiscreteMeasure::weights);

    py::class_<PeriodicJacobi>(m, "PeriodicJacobi")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("a"), py::arg("b"))
        .def_readonly("L", &PeriodicJacobi::L)
        .def_readonly("a", &PeriodicJacobi::a)
        .def_readonly("b", &PeriodicJacobi::b)
        .def_readonly("lambda_S", &PeriodicJacobi::lambda_S);

    py::class_<Lead>(m, "Lead")
        .def_static("free_half_line", &Lead::free_half_line)
        .def_static("wide_band", &Lead::wide_band, py::arg("gamma"))
        .def_static("periodic_half_line",
                    [](const PeriodicJacobi& per, const std::string& side) {
                        return Lead::periodic_half_line(per, side == "left" ? Side::Left
                                                                            : Side::Right);
                    })
        .def_static("table", &Lead::table, py::arg("energies"), py::arg("values"))
        .def_static("from_dict", &lead_from_spec)
        .def("borel_boundary", &Lead::borel_boundary)
        .def("borel", &Lead::borel);

    m.def("periodize", &periodize, py::arg("sample"), py::arg("L"), py::arg("lambda_S"));
    m.def("restrict_repeated", &restrict_repeated, py::arg("per"), py::arg("N"));
    m.def("measure_to_jacobi", &measure_to_jacobi, py::arg("measure"), py::arg("n_max"));

    m.def("one_step_matrix", [](double E, double a, double b) {
        const Matrix2 mm = one_step_matrix(E, a, b);
        return std::vector<std::vector<double>>{{mm.m00, mm.m01}, {mm.m10, mm.m11}};
    });
    m.def("transfer_norm",
          [](const JacobiModel& model, double E, std::size_t n) {
              return transfer_matrix_scaled(model, E, n).log_norm();
          },
          py::arg("model"), py::arg("E"), py::arg("n"),
          "log of the spectral norm of the transfer product");
    m.def("eigenfunction", &eigenfunction, py::arg("model"), py::arg("E"), py::arg("n_max"),
          py::arg("theta") = 0.0);
    m.def("discriminant", &discriminant, py::arg("per"), py::arg("E"));

    m.def("borel_transform",
          [](const JacobiModel& model, cdouble z, std::size_t depth) {
              return borel_transform(model, z, {.depth = depth}).value;
          },
          py::arg("model"), py::arg("z"), py::arg("depth") = 10000);
    m.def("borel_transform_measure",
          [](const DiscreteMeasure& nu, cdouble z) { return borel_transform(nu, z).value; },
          py::arg("measure"), py::arg("z"));
    m.def("ac_density",
          [](const JacobiModel& model, double E, double eta) {
              return ac_density(model, E, eta);
          },
          py::arg("model"), py::arg("E"), py::arg("eta") = 1e-6);
    m.def("weak_density_approx", &weak_density_approx, py::arg("model"), py::arg("E"),
          py::arg("n"));
    m.def("tm_inverse_square_integral",
          [](const JacobiModel& model, std::size_t L, double lo, double hi, std::size_t n) {
              const EnergyGrid grid(lo, hi, n);
              return tm_inverse_square_integral(model, L, grid).value;
          },
          py::arg("model"), py::arg("L"), py::arg("lo"), py::arg("hi"), py::arg("n") = 2000);

    m.def("sigma_ac_probe",
          [](const JacobiModel& model, double lo, double hi, std::size_t n,
             const std::vector<std::size_t>& L_list, double threshold) {
              const EnergyGrid grid(lo, hi, n);
              const auto nodes = sigma_ac_probe(model, grid, L_list, threshold);
              py::list out;
              for (const auto& node : nodes) {
                  py::dict d;
                  d["E"] = node.energy;
                  d["min_log_norm"] = node.min_log_norm;
                  d["bounded"] = node.bounded;
                  out.append(d);
              }
              return out;
          },
          py::arg("model"), py::arg("lo"), py::arg("hi"), py::arg("n"), py::arg("L_list"),
          py::arg("threshold"));

    m.def("m_function",
          [](const PeriodicJacobi& per, const std::string& side, double E, double eta) {
              return m_function(per, side == "left" ? Side::Left : Side::Right, E, eta).value;
          },
          py::arg("per"), py::arg("side"), py::arg("E"), py::arg("eta") = 0.0);

    m.def("lb_transmittance",
          [](const JacobiModel& sample, std::size_t L, const Lead& left, const Lead& right,
             double lambda, double E) {
              TransportSetup spec(sample, L, left, right, lambda,
                                  E - 0.5, E + 0.5);
              return lb_transmittance(spec, E);
          },
          py::arg("sample"), py::arg("L"), py::arg("left"), py::arg("right"), py::arg("lam"),
          py::arg("E"));
    m.def("steady_current",
          [](const JacobiModel& sample, std::size_t L, const Lead& left, const Lead& right,
             double lambda, double mu_l, double mu_r, std::size_t grid_n) {
              TransportSetup spec(sample, L, left, right, lambda, mu_l, mu_r);
              spec.grid = EnergyGrid(mu_l, mu_r, grid_n, QuadRule::Midpoint, 0.0);
              py::gil_scoped_release release;
              return steady_current(spec).current;
          },
          py::arg("sample"), py::arg("L"), py::arg("left"), py::arg("right"), py::arg("lam"),
          py::arg("mu_l"), py::arg("mu_r"), py::arg("grid_n") = 2000);
    m.def("linear_response",
          [](const JacobiModel& sample, std::size_t L, const Lead& left, const Lead& right,
             double lambda, double mu) {
              TransportSetup spec(sample, L, left, right, lambda, mu - 0.5, mu + 0.5);
              return linear_response(spec, mu);
          });
    m.def("thouless_current",
          [](const PeriodicJacobi& per, double mu_l, double mu_r) {
              py::gil_scoped_release release;
              return thouless_current(per, mu_l, mu_r);
          },
          py::arg("per"), py::arg("mu_l"), py::arg("mu_r"));
    m.def("crystalline_transmittance",
          [](const PeriodicJacobi& per, const Lead& left, const Lead& right, double lambda,
             double E) { return crystalline_transmittance(per, left, right, lambda, E); },
          py::arg("per"), py::arg("left"), py::arg("right"), py::arg("lam"), py::arg("E"));
    m.def("crystalline_current",
          [](const PeriodicJacobi& per, const Lead& left, const Lead& right, double lambda,
             double mu_l, double mu_r) {
              py::gil_scoped_release release;
              return crystalline_current(per, left, right, lambda, mu_l, mu_r);
          },
          py::arg("per"), py::arg("left"), py::arg("right"), py::arg("lam"), py::arg("mu_l"),
          py::arg("mu_r"));
    m.def("repeated_sample_current",
          [](const PeriodicJacobi& per, const Lead& left, const Lead& right, double lambda,
             std::size_t N, double mu_l, double mu_r, std::size_t grid_n) {
              py::gil_scoped_release release;
              return repeated_sample_current(per, left, right, lambda, N, mu_l, mu_r, grid_n);
          },
          py::arg("per"), py::arg("left"), py::arg("right"), py::arg("lam"), py::arg("N"),
          py::arg("mu_l"), py::arg("mu_r"), py::arg("grid_n") = 2000);

    py::class_<TruncatedEbb>(m, "TruncatedJunction")
        .def_property_readonly("trace_density",
                               [](const TruncatedEbb& s) { return s.trace_density; })
        .def_property_readonly("size",
                               [](const TruncatedEbb& s) { return s.eigenvalues.size(); });
    m.def("build_truncated",
          [](const JacobiModel& sample, std::size_t L, const Lead& left, const Lead& right,
             double lambda, double mu_l, double mu_r, std::size_t M) {
              py::gil_scoped_release release;
              return build_truncated(sample, L, left, right, lambda, mu_l, mu_r, M);
          },
          py::arg("sample"), py::arg("L"), py::arg("left"), py::arg("right"), py::arg("lam"),
          py::arg("mu_l"), py::arg("mu_r"), py::arg("M") = 1500);
    m.def("current_at_time", &current_at_time, py::arg("junction"), py::arg("t"));
    m.def("cesaro_current",
          [](const TruncatedEbb& sys, double t_max, std::size_t samples) {
              py::gil_scoped_release release;
              return cesaro_current(sys, t_max, samples).value;
          },
          py::arg("junction"), py::arg("t_max"), py::arg("samples") = 2000);

    m.def("run_experiment", [](const py::dict& config) {
        const ExperimentConfig cfg = config_from_json(
            json::parse(std::string(py::str(py::module_::import("json").attr("dumps")(config)))));
        ExperimentOutput out;
        {
            py::gil_scoped_release release;
            out = run_experiment(cfg);
        }
        return py::module_::import("json").attr("loads")(out.envelope.dump());
    });

#ifdef VERSION_INFO
#define STR0(x) #x
#define STR(x) STR0(x)
    m.attr("__version__") = STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}

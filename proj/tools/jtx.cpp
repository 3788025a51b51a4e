// jtx: spectral and transport quantities of half-line Jacobi operators.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "jtx/borel.hpp"
#include "jtx/crystalline.hpp"
#include "jtx/dynamics.hpp"
#include "jtx/experiment.hpp"
#include "jtx/probes.hpp"
#include "jtx/stieltjes.hpp"
#include "jtx/thouless.hpp"
#include "jtx/transfer.hpp"
#include "jtx/transport.hpp"

namespace fs = std::filesystem;
using namespace jtx;

namespace {

struct Common {
    std::string out_dir;
    std::string format = "csv";
    bool strict = false;
    std::vector<std::string> warnings;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json load_json_arg(const std::string& arg) {
    const std::string text = (!arg.empty() && arg.front() == '{') ? arg : slurp(arg);
    return json::parse(text);
}

JacobiModel parse_model(const std::string& arg, std::uint64_t seed) {
    if (arg == "free") return JacobiModel::free_chain();
    json j = load_json_arg(arg);
    if (!j.contains("seed") && seed != 0) j["seed"] = seed;
    return jacobi_model_from_json(j);
}

Lead parse_lead(const std::string& arg) {
    if (arg == "free" || arg == "free-half-line") return Lead::free_half_line();
    if (arg.rfind("wide-band:", 0) == 0) return Lead::wide_band(std::stod(arg.substr(10)));
    if (arg.size() > 4 && arg.substr(arg.size() - 4) == ".csv") return lead_from_csv(slurp(arg));
    return lead_from_json(load_json_arg(arg));
}

std::pair<double, double> parse_window(const std::string& arg) {
    const auto comma = arg.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("window must be two comma-separated numbers");
    const double a = std::stod(arg.substr(0, comma));
    const double b = std::stod(arg.substr(comma + 1));
    if (!(a < b)) throw std::invalid_argument("window needs a < b");
    return {a, b};
}

std::vector<std::size_t> parse_L_list(const std::string& arg) {
    std::vector<std::size_t> out;
    std::istringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
    if (out.empty()) throw std::invalid_argument("empty L list");
    return out;
}

void emit(const Common& c, const std::string& stem, const std::string& csv, const json& j) {
    if (c.out_dir.empty()) {
        if (c.format == "json") std::cout << j.dump(2) << "\n";
        else std::cout << csv;
        return;
    }
    fs::create_directories(c.out_dir);
    if (c.format == "csv" || c.format == "both") {
        std::ofstream f(fs::path(c.out_dir) / (stem + ".csv"), std::ios::binary);
        f << csv;
    }
    if (c.format == "json" || c.format == "both") {
        std::ofstream f(fs::path(c.out_dir) / (stem + ".json"), std::ios::binary);
        f << j.dump(2) << "\n";
    }
}

int finish(const Common& c) {
    for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
    if (c.strict && !c.warnings.empty()) return 2;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral and transport quantities of half-line Jacobi operators"};
    app.require_subcommand(1);

    Common common;
    std::string model_arg = "free", measure_arg, config_arg;
    std::string lead_l_arg = "free", lead_r_arg = "free";
    std::string window_arg = "-1,1", L_list_arg = "10,20,40,80,160,320";
    std::size_t grid_n = 2000, n_arg = 10, N_reps = 1, M_depth = 1500, samples = 2000;
    double eta = 1e-6, lambda = 1.0, lambda_S = 1.0, t_max = 500.0;
    std::uint64_t seed = 0;

    app.add_option("--out", common.out_dir, "output directory (default: stdout)");
    app.add_option("--format", common.format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    app.add_flag("--strict", common.strict, "exit 2 when numerical-quality warnings fire");
    app.add_option("--seed", seed, "seed for seeded model kinds");

    auto add_model = [&](CLI::App* cmd) {
        cmd->add_option("--model", model_arg, "model JSON file, inline JSON, or 'free'");
    };
    auto add_window = [&](CLI::App* cmd) {
        cmd->add_option("--window", window_arg, "energy window a,b");
    };
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--grid", grid_n, "number of grid nodes");
    };
    auto add_leads = [&](CLI::App* cmd) {
        cmd->add_option("--lead-left", lead_l_arg, "left lead: 'free', 'wide-band:g', file");
        cmd->add_option("--lead-right", lead_r_arg, "right lead spec");
        cmd->add_option("--lambda", lambda, "junction coupling");
    };

    // jacobi
    auto* jacobi = app.add_subcommand("jacobi", "Jacobi parameter construction");
    auto* from_measure = jacobi->add_subcommand("from-measure",
                                                "recurrence coefficients of a discrete measure");
    from_measure->add_option("--measure", measure_arg, "measure JSON {points[], weights[]}")
        ->required();
    from_measure->add_option("--n", n_arg, "number of recurrence levels");

    // tm
    auto* tm = app.add_subcommand("tm", "transfer-matrix probes");
    auto* tm_norm = tm->add_subcommand("norm", "log transfer norms over a grid");
    add_model(tm_norm);
    add_window(tm_norm);
    add_grid(tm_norm);
    tm_norm->add_option("--n", n_arg, "number of transfer steps");
    auto* tm_integral = tm->add_subcommand("integral", "inverse-square transfer-norm integral");
    add_model(tm_integral);
    add_window(tm_integral);
    add_grid(tm_integral);
    tm_integral->add_option("--L-list", L_list_arg, "comma-separated step counts");

    // spectral
    auto* spectral = app.add_subcommand("spectral", "spectral-measure probes");
    auto* density = spectral->add_subcommand("density", "ac-density estimate on a grid");
    add_model(density);
    add_window(density);
    add_grid(density);
    density->add_option("--eta", eta, "boundary offset");

    // transport
    auto* transport = app.add_subcommand("transport", "steady currents");
    auto* lb = transport->add_subcommand("lb", "Landauer-Buttiker transmittance and current");
    add_model(lb);
    add_window(lb);
    add_grid(lb);
    add_leads(lb);
    lb->add_option("--L", n_arg, "sample length");
    lb->add_option("--eta", eta, "boundary offset for the resolvent (default 0)");
    auto* thouless_cmd = transport->add_subcommand("thouless", "periodized band-measure current");
    add_model(thouless_cmd);
    add_window(thouless_cmd);
    thouless_cmd->add_option("--L", n_arg, "period");
    thouless_cmd->add_option("--lambda-S", lambda_S, "internal coupling");
    auto* crys = transport->add_subcommand("crystalline", "infinite-repetition current");
    add_model(crys);
    add_window(crys);
    add_leads(crys);
    crys->add_option("--L", n_arg, "period");
    crys->add_option("--lambda-S", lambda_S, "internal coupling");
    auto* repeat = transport->add_subcommand("repeat", "N-repetition current");
    add_model(repeat);
    add_window(repeat);
    add_leads(repeat);
    add_grid(repeat);
    repeat->add_option("--L", n_arg, "period");
    repeat->add_option("--lambda-S", lambda_S, "internal coupling");
    repeat->add_option("--N", N_reps, "number of repetitions");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "time-domain verification");
    auto* dynamics = oracle->add_subcommand("dynamics", "quasi-free evolution of the junction");
    add_model(dynamics);
    add_window(dynamics);
    add_leads(dynamics);
    add_grid(dynamics);
    dynamics->add_option("--L", n_arg, "sample length");
    dynamics->add_option("--M", M_depth, "reservoir truncation depth");
    dynamics->add_option("--tmax", t_max, "averaging horizon");
    dynamics->add_option("--samples", samples, "time samples for the trapezoid average");

    // experiment
    auto* experiment = app.add_subcommand("experiment", "configured sweeps and reports");
    auto* run = experiment->add_subcommand("run", "length sweep of a configured quantity");
    run->add_option("--config", config_arg, "experiment config JSON")->required();
    auto* acet = experiment->add_subcommand("acet", "conductance vs transfer-norm comparison");
    add_model(acet);
    add_window(acet);
    add_grid(acet);
    acet->add_option("--L-list", L_list_arg, "comma-separated lengths");
    auto* rates = experiment->add_subcommand("rates", "empirical decay-rate table");
    rates->add_option("--config", config_arg, "experiment config JSON")->required();

    // let --out/--format/--strict/--seed appear after any subcommand
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (CLI::App* sub : cmd->get_subcommands(nullptr)) allow_fallthrough(sub);
    };
    for (CLI::App* sub : app.get_subcommands(nullptr)) allow_fallthrough(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (from_measure->parsed()) {
            const DiscreteMeasure nu = discrete_measure_from_json(load_json_arg(measure_arg));
            const JacobiModel m = measure_to_jacobi(nu, n_arg);
            std::string csv = "index,a,b\n";
            for (std::size_t i = 0; i < m.stored_b().size(); ++i) {
                csv += std::to_string(i + 1) + ",";
                csv += (i < m.stored_a().size() ? format_double(m.stored_a()[i]) : "") + ",";
                csv += format_double(m.stored_b()[i]) + "\n";
            }
            emit(common, "jacobi", csv, to_json(m));
            return finish(common);
        }

        if (tm_norm->parsed()) {
            const JacobiModel m = parse_model(model_arg, seed);
            const auto [lo, hi] = parse_window(window_arg);
            const EnergyGrid grid(lo, hi, grid_n);
            std::string csv = "E,log_norm\n";
            json vals = json::array();
            for (double E : grid.nodes()) {
                const double ln = transfer_matrix_scaled(m, E, n_arg).log_norm();
                csv += format_double(E) + "," + format_double(ln) + "\n";
                vals.push_back({{"E", E}, {"log_norm", ln}});
            }
            emit(common, "tm_norm", csv, json{{"n", n_arg}, {"values", vals}});
            return finish(common);
        }

        if (tm_integral->parsed()) {
            const JacobiModel m = parse_model(model_arg, seed);
            const auto [lo, hi] = parse_window(window_arg);
            const EnergyGrid grid(lo, hi, grid_n);
            std::string csv = "L,value\n";
            json vals = json::array();
            for (std::size_t L : parse_L_list(L_list_arg)) {
                const IntegralResult r = tm_inverse_square_integral(m, L, grid);
                if (r.refinement_warning)
                    common.warnings.push_back("integral refined at L=" + std::to_string(L));
                csv += std::to_string(L) + "," + format_double(r.value) + "\n";
                vals.push_back({{"L", L}, {"value", r.value}});
            }
            emit(common, "tm_integral", csv, json{{"values", vals}});
            return finish(common);
        }

        if (density->parsed()) {
            const JacobiModel m = parse_model(model_arg, seed);
            const auto [lo, hi] = parse_window(window_arg);
            const EnergyGrid grid(lo, hi, grid_n, QuadRule::Midpoint, eta);
            std::string csv = "E,value,verdict\n";
            json vals = json::array();
            for (double E : grid.nodes()) {
                BorelOptions opts;
                const BorelResult F = borel_transform(m, cdouble(E, eta), opts);
                if (F.depth_warning)
                    common.warnings.push_back("depth warning at E=" + format_double(E));
                const double d = F.value.imag() / std::numbers::pi;
                const char* verdict = d > 1e-8 ? "positive" : "zero";
                csv += format_double(E) + "," + format_double(d) + "," + verdict + "\n";
                vals.push_back({{"E", E}, {"density", d}, {"verdict", verdict}});
            }
            emit(common, "density", csv, json{{"eta", eta}, {"values", vals}});
            return finish(common);
        }

        if (lb->parsed()) {
            const JacobiModel m = parse_model(model_arg, seed);
            const auto [lo, hi] = parse_window(window_arg);
            TransportSetup spec(m, n_arg, parse_lead(lead_l_arg), parse_lead(lead_r_arg),
                                lambda, lo, hi);
            spec.grid = EnergyGrid(lo, hi, grid_n, QuadRule::Midpoint,
                                   lb->count("--eta") ? eta : 0.0);
            const TransportResult res = steady_current(spec);
            for (const auto& w : res.warnings) common.warnings.push_back(w);
            std::string csv = "E,D\n";
            for (std::size_t i = 0; i < res.energies.size(); ++i) {
                csv += format_double(res.energies[i]) + "," +
                       format_double(res.transmittance[i]) + "\n";
            }
            emit(common, "transport_lb", csv, to_json(res));
            return finish(common);
        }

        if (thouless_cmd->parsed()) {
            const JacobiModel m = parse_model(model_arg, seed);
            const auto [lo, hi] = parse_window(window_arg);
            const PeriodicJacobi per = periodize(m, n_arg, lambda_S);
            const BandSegments bands = spectrum_in_window(per, lo, hi);
            if (!bands.converged)
                common.warnings.push_back("band measure hit the refinement cap");
            const double current = bands.measure / (2.0 * std::numbers::pi);
            std::string csv = "band_lo,band_hi\n";
            for (const auto& [a, b] : bands.segments)
                csv += format_double(a) + "," + format_double(b) + "\n";
            emit(common, "transport_thouless", csv,
                 json{{"current", current},
                      {"band_measure", bands.measure},
                      {"converged", bands.converged}});
            return finish(common);
        }

        if (crys->parsed()) {
            const JacobiModel m = parse_model(model_arg, seed);
            const auto [lo, hi] = parse_window(window_arg);
            const PeriodicJacobi per = periodize(m, n_arg, lambda_S);
            const Lead left = parse_lead(lead_l_arg), right = parse_lead(lead_r_arg);
            const double cur = crystalline_current(per, left, right, lambda, lo, hi);
            const double th = thouless_current(per, lo, hi);
            emit(common, "transport_crystalline", "current\n" + format_double(cur) + "\n",
                 json{{"current", cur}, {"thouless_bound", th}});
            return finish(common);
        }

        if (repeat->parsed()) {
            const JacobiModel m = parse_model(model_arg, seed);
            const auto [lo, hi] = parse_window(window_arg);
            const PeriodicJacobi per = periodize(m, n_arg, lambda_S);
            const Lead left = parse_lead(lead_l_arg), right = parse_lead(lead_r_arg);
            std::string csv = "N,current\n";
            json vals = json::array();
            for (std::size_t N = 1; N <= N_reps; ++N) {
                const double cur =
                    repeated_sample_current(per, left, right, lambda, N, lo, hi, grid_n);
                csv += std::to_string(N) + "," + format_double(cur) + "\n";
                vals.push_back({{"N", N}, {"current", cur}});
            }
            emit(common, "transport_repeat", csv,
                 json{{"crystalline_limit",
                       crystalline_current(per, left, right, lambda, lo, hi)},
                      {"values", vals}});
            return finish(common);
        }

        if (dynamics->parsed()) {
            const JacobiModel m = parse_model(model_arg, seed);
            const auto [lo, hi] = parse_window(window_arg);
            const Lead left = parse_lead(lead_l_arg), right = parse_lead(lead_r_arg);
            const TruncatedEbb sys =
                build_truncated(m, n_arg, left, right, lambda, lo, hi, M_depth);
            const CesaroResult ces = cesaro_current(sys, t_max, samples);
            if (ces.recurrence_warning)
                common.warnings.push_back("averaging horizon beyond the reservoir round trip");
            TransportSetup spec(m, n_arg, left, right, lambda, lo, hi);
            spec.grid = EnergyGrid(lo, hi, grid_n, QuadRule::Midpoint, 0.0);
            const double steady = steady_current(spec).current;
            std::string csv = "t,current\n";
            for (std::size_t i = 0; i < ces.times.size(); ++i) {
                csv += format_double(ces.times[i]) + "," + format_double(ces.currents[i]) + "\n";
            }
            const double gap =
                steady != 0.0 ? std::abs(ces.value - steady) / std::abs(steady) : 0.0;
            emit(common, "oracle_dynamics", csv,
                 json{{"cesaro", ces.value},
                      {"steady_reference", steady},
                      {"relative_gap", gap},
                      {"recurrence_warning", ces.recurrence_warning}});
            return finish(common);
        }

        if (run->parsed()) {
            ExperimentConfig cfg = config_from_json(load_json_arg(config_arg));
            if (!common.out_dir.empty()) cfg.out_dir = common.out_dir;
            if (common.strict) cfg.strict = true;
            const ExperimentOutput out = run_experiment(cfg);
            for (const auto& w : out.warnings) common.warnings.push_back(w);
            if (cfg.out_dir.empty()) emit(common, to_string(cfg.quantity), out.csv, out.envelope);
            else std::cout << out.envelope["verdict"].dump() << "\n";
            common.strict = cfg.strict;
            return finish(common);
        }

        if (acet->parsed()) {
            const JacobiModel m = parse_model(model_arg, seed);
            const auto [lo, hi] = parse_window(window_arg);
            const EnergyGrid grid(lo, hi, grid_n);
            const AcetReport rep = acet_sets_probe(m, grid, parse_L_list(L_list_arg),
                                                   1e-3 / (2.0 * std::numbers::pi));
            std::string csv = "mu,min_conductance,max_conductance,min_log_norm,verdict\n";
            json nodes = json::array();
            for (const auto& node : rep.nodes) {
                const std::string verdict = node.conducting ? "conducting" : "non-conducting";
                csv += format_double(node.mu) + "," + format_double(node.min_conductance) +
                       "," + format_double(node.max_conductance) + "," +
                       format_double(node.min_log_norm) + "," + verdict + "\n";
                nodes.push_back({{"mu", node.mu},
                                 {"conducting", node.conducting},
                                 {"bounded", node.bounded}});
            }
            emit(common, "acet", csv,
                 json{{"agreement_rate", rep.agreement_rate}, {"nodes", nodes}});
            return finish(common);
        }

        if (rates->parsed()) {
            const json j = load_json_arg(config_arg);
            if (!j.is_array() || j.size() < 2)
                throw ConfigError("", "rates config must be an array of at least two configs");
            std::vector<std::pair<std::string, Verdict>> verdicts;
            for (std::size_t i = 0; i < j.size(); ++i) {
                const ExperimentConfig cfg = config_from_json(j[i]);
                const std::string label = to_string(cfg.model.kind()) + "/" +
                                          to_string(cfg.quantity);
                verdicts.emplace_back(label, run_experiment(cfg).verdict);
            }
            const auto rows = rate_report(verdicts);
            std::string csv = "label,quantity,slope,final_value,classification\n";
            json table = json::array();
            for (const auto& row : rows) {
                csv += row.label + "," + to_string(row.quantity) + "," +
                       format_double(row.slope) + "," + format_double(row.final_value) + "," +
                       to_string(row.classification) + "\n";
                table.push_back({{"label", row.label},
                                 {"slope", row.slope},
                                 {"final_value", row.final_value},
                                 {"classification", to_string(row.classification)}});
            }
            emit(common, "rates", csv, json{{"note", "empirical fitted rates"}, {"rows", table}});
            return finish(common);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error at " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

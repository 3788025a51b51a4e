#include "jtx/serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "jtx/transport.hpp"

namespace jtx {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json to_json(const JacobiModel& model) {
    json j;
    j["kind"] = to_string(model.kind());
    json params = json::object();
    switch (model.kind()) {
        case ModelKind::ExplicitList:
            params["a"] = model.stored_a();
            params["b"] = model.stored_b();
            break;
        case ModelKind::Free:
            break;
        case ModelKind::Anderson:
            params["W"] = model.anderson_params().width;
            break;
        case ModelKind::AlmostMathieu:
            params["lambda_c"] = model.almost_mathieu_params().coupling;
            params["alpha"] = model.almost_mathieu_params().alpha;
            params["theta"] = model.almost_mathieu_params().theta;
            break;
        case ModelKind::Fibonacci:
            params["lambda_c"] = model.fibonacci_params().coupling;
            break;
    }
    j["params"] = params;
    j["seed"] = model.kind() == ModelKind::Anderson ? model.anderson_params().seed : 0;
    if (const auto len = model.length()) j["length"] = *len;
    else j["length"] = nullptr;
    return j;
}

JacobiModel jacobi_model_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const json params = j.value("params", json::object());
    if (kind == "explicit-list") {
        return JacobiModel::explicit_list(params.at("a").get<std::vector<double>>(),
                                          params.at("b").get<std::vector<double>>());
    }
    if (kind == "free") return JacobiModel::free_chain();
    if (kind == "anderson") {
        return JacobiModel::anderson(params.at("W").get<double>(),
                                     j.value("seed", std::uint64_t{0}));
    }
    if (kind == "almost-mathieu") {
        return JacobiModel::almost_mathieu(params.at("lambda_c").get<double>(),
                                           params.at("alpha").get<double>(),
                                           params.at("theta").get<double>());
    }
    if (kind == "fibonacci") return JacobiModel::fibonacci(params.at("lambda_c").get<double>());
    throw std::invalid_argument("unknown model kind: " + kind);
}

json to_json(const DiscreteMeasure& nu) {
    json j;
    j["points"] = nu.points;
    j["weights"] = nu.weights;
    return j;
}

DiscreteMeasure discrete_measure_from_json(const json& j) {
    return DiscreteMeasure(j.at("points").get<std::vector<double>>(),
                           j.at("weights").get<std::vector<double>>());
}

json to_json(const PeriodicJacobi& per) {
    json j;
    j["L"] = per.L;
    j["a"] = per.a;
    j["b"] = per.b;
    j["lambda_S"] = per.lambda_S;
    return j;
}

PeriodicJacobi periodic_jacobi_from_json(const json& j) {
    return PeriodicJacobi(j.at("a").get<std::vector<double>>(),
                          j.at("b").get<std::vector<double>>());
}

json to_json(const Lead& lead) {
    json j;
    j["kind"] = to_string(lead.kind());
    json params = json::object();
    switch (lead.kind()) {
        case LeadKind::FreeHalfLine:
            break;
        case LeadKind::WideBand:
            params["gamma"] = lead.gamma();
            break;
        case LeadKind::PeriodicHalfLine:
            params["block"] = to_json(*lead.periodic_block());
            params["side"] = lead.side() == Side::Left ? "left" : "right";
            break;
        case LeadKind::Table: {
            params["E"] = lead.table_energies();
            std::vector<double> re, im;
            for (const cdouble& f : lead.table_values()) {
                re.push_back(f.real());
                im.push_back(f.imag());
            }
            params["ReF"] = re;
            params["ImF"] = im;
            break;
        }
    }
    j["params"] = params;
    return j;
}

Lead lead_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const json params = j.value("params", json::object());
    if (kind == "free-half-line") return Lead::free_half_line();
    if (kind == "wide-band") return Lead::wide_band(params.at("gamma").get<double>());
    if (kind == "periodic-half-line") {
        const Side side = params.value("side", std::string("right")) == "left" ? Side::Left
                                                                               : Side::Right;
        return Lead::periodic_half_line(periodic_jacobi_from_json(params.at("block")), side);
    }
    if (kind == "table") {
        const auto E = params.at("E").get<std::vector<double>>();
        const auto re = params.at("ReF").get<std::vector<double>>();
        const auto im = params.at("ImF").get<std::vector<double>>();
        if (re.size() != E.size() || im.size() != E.size())
            throw std::invalid_argument("table lead arrays must have equal length");
        std::vector<cdouble> F(E.size());
        for (std::size_t i = 0; i < E.size(); ++i) F[i] = cdouble(re[i], im[i]);
        return Lead::table(E, F);
    }
    throw std::invalid_argument("unknown lead kind: " + kind);
}

json to_json(const TransportResult& result) {
    json j;
    j["current"] = result.current;
    j["metadata"] = {{"spec_hash", result.spec_hash},
                     {"eta", result.eta},
                     {"grid_nodes", result.grid_nodes},
                     {"tolerances", {{"clip", result.clip_tol}, {"support", result.support_tol}}},
                     {"warnings", result.warnings}};
    j["energies"] = result.energies;
    j["transmittance"] = result.transmittance;
    return j;
}

std::string transport_setup_hash(const TransportSetup& spec) {
    json j;
    j["sample"] = to_json(spec.sample);
    j["L"] = spec.L;
    j["left"] = to_json(spec.left);
    j["right"] = to_json(spec.right);
    j["lambda"] = spec.lambda;
    j["window"] = {spec.mu_l, spec.mu_r};
    j["grid"] = {{"n", spec.grid.n},
                 {"rule", spec.grid.rule == QuadRule::Midpoint ? "midpoint" : "gauss-legendre"},
                 {"eta", spec.grid.eta}};
    const std::string text = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

Lead lead_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> E;
    std::vector<cdouble> F;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& c : line) {
            if (c == ',' || c == ';' || c == '\t') c = ' ';
        }
        std::istringstream row(line);
        double e, re, im;
        if (!(row >> e >> re >> im)) continue;  // header or malformed row
        E.push_back(e);
        F.emplace_back(re, im);
    }
    return Lead::table(std::move(E), std::move(F));
}

}  // namespace jtx

#include "jtx/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

namespace jtx {

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::SteadyCurrent: return "steady_current";
        case Quantity::ThoulessCurrent: return "thouless_current";
        case Quantity::CrystallineCurrent: return "crystalline_current";
        case Quantity::TmInverseSquareIntegral: return "tm_inverse_square_integral";
    }
    return "unknown";
}

Quantity quantity_from_string(const std::string& s) {
    if (s == "steady_current" || s == "lb") return Quantity::SteadyCurrent;
    if (s == "thouless_current" || s == "thouless") return Quantity::ThoulessCurrent;
    if (s == "crystalline_current" || s == "crystalline") return Quantity::CrystallineCurrent;
    if (s == "tm_inverse_square_integral" || s == "tm") return Quantity::TmInverseSquareIntegral;
    throw std::invalid_argument("unknown quantity: " + s);
}

std::string to_string(TrendClass c) {
    switch (c) {
        case TrendClass::DecayingToZero: return "decaying-to-zero";
        case TrendClass::BoundedBelow: return "bounded-below";
        case TrendClass::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict classify_trend(Quantity q, std::vector<std::size_t> L_list, std::vector<double> values,
                       const ClassifierThresholds& thr) {
    if (L_list.size() != values.size() || values.empty())
        throw std::invalid_argument("length sweep and values must match and be nonempty");
    Verdict v;
    v.quantity = q;
    v.L_list = std::move(L_list);
    v.values = std::move(values);
    v.thresholds = thr;

    // Least squares of ln(value) on L; exact zeros are clamped far below any
    // classification threshold.
    const std::size_t n = v.values.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(v.L_list[i]);
        const double y = std::log(std::max(std::abs(v.values[i]), 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    v.slope = denom != 0.0 ? (static_cast<double>(n) * sxy - sx * sy) / denom : 0.0;

    double vmin = HUGE_VAL;
    for (double val : v.values) vmin = std::min(vmin, val);
    const double final_value = v.values.back();

    if (v.slope < -thr.slope_min && final_value < thr.value_max)
        v.classification = TrendClass::DecayingToZero;
    else if (vmin > thr.floor)
        v.classification = TrendClass::BoundedBelow;
    else
        v.classification = TrendClass::Inconclusive;
    return v;
}

namespace {

const std::set<std::string> kTopKeys = {"quantity", "model",   "leads",  "lambda", "lambda_S",
                                        "window",   "L_list",  "grid",   "thresholds",
                                        "out",      "format",  "seed",   "strict"};

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& base) {
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) throw ConfigError(base + "/" + key, "unknown key");
    }
}

template <class F>
auto wrap(const std::string& pointer, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(pointer, e.what());
    }
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
    reject_unknown(j, kTopKeys, "");
    ExperimentConfig cfg;

    if (!j.contains("quantity")) throw ConfigError("/quantity", "required field missing");
    if (!j.at("quantity").is_string()) throw ConfigError("/quantity", "expected a string");
    cfg.quantity = wrap("/quantity",
                        [&] { return quantity_from_string(j.at("quantity").get<std::string>()); });

    if (!j.contains("model")) throw ConfigError("/model", "required field missing");
    cfg.model = wrap("/model", [&] {
        json m = j.at("model");
        if (!m.is_object()) throw ConfigError("/model", "expected an object");
        if (j.contains("seed") && !m.contains("seed")) m["seed"] = j.at("seed");
        return jacobi_model_from_json(m);
    });

    if (j.contains("leads")) {
        const json& leads = j.at("leads");
        if (!leads.is_array() || leads.size() != 2)
            throw ConfigError("/leads", "expected an array of two lead specs");
        cfg.left = wrap("/leads/0", [&] { return lead_from_json(leads[0]); });
        cfg.right = wrap("/leads/1", [&] { return lead_from_json(leads[1]); });
    }

    if (j.contains("lambda")) {
        if (!j.at("lambda").is_number()) throw ConfigError("/lambda", "expected a number");
        cfg.lambda = j.at("lambda").get<double>();
    }
    if (j.contains("lambda_S")) {
        if (!j.at("lambda_S").is_number()) throw ConfigError("/lambda_S", "expected a number");
        cfg.lambda_S = j.at("lambda_S").get<double>();
        if (cfg.lambda_S == 0.0) throw ConfigError("/lambda_S", "must be nonzero");
    }
    if (j.contains("window")) {
        const json& w = j.at("window");
        if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
            throw ConfigError("/window", "expected [mu_l, mu_r]");
        cfg.mu_l = w[0].get<double>();
        cfg.mu_r = w[1].get<double>();
        if (!(cfg.mu_l < cfg.mu_r)) throw ConfigError("/window", "needs mu_l < mu_r");
    }
    if (j.contains("L_list")) {
        const json& l = j.at("L_list");
        if (!l.is_array() || l.empty()) throw ConfigError("/L_list", "expected a nonempty array");
        cfg.L_list.clear();
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (!l[i].is_number_integer() || l[i].get<long long>() < 1)
                throw ConfigError("/L_list/" + std::to_string(i), "expected a positive integer");
            cfg.L_list.push_back(l[i].get<std::size_t>());
        }
        for (std::size_t i = 0; i + 1 < cfg.L_list.size(); ++i) {
            if (!(cfg.L_list[i] < cfg.L_list[i + 1]))
                throw ConfigError("/L_list", "must be strictly increasing");
        }
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        if (!g.is_object()) throw ConfigError("/grid", "expected an object");
        reject_unknown(g, {"n", "rule", "eta"}, "/grid");
        if (g.contains("n")) {
            if (!g.at("n").is_number_integer() || g.at("n").get<long long>() < 2)
                throw ConfigError("/grid/n", "expected an integer >= 2");
            cfg.grid_n = g.at("n").get<std::size_t>();
        }
        if (g.contains("rule")) {
            const std::string r = g.at("rule").get<std::string>();
            if (r == "midpoint") cfg.rule = QuadRule::Midpoint;
            else if (r == "gauss-legendre") cfg.rule = QuadRule::GaussLegendre;
            else throw ConfigError("/grid/rule", "expected midpoint or gauss-legendre");
        }
        if (g.contains("eta")) {
            if (!g.at("eta").is_number() || g.at("eta").get<double>() < 0.0)
                throw ConfigError("/grid/eta", "expected a nonnegative number");
            cfg.eta = g.at("eta").get<double>();
        }
    }
    if (j.contains("thresholds")) {
        const json& t = j.at("thresholds");
        if (!t.is_object()) throw ConfigError("/thresholds", "expected an object");
        reject_unknown(t, {"slope_min", "value_max", "floor"}, "/thresholds");
        if (t.contains("slope_min")) cfg.thresholds.slope_min = t.at("slope_min").get<double>();
        if (t.contains("value_max")) cfg.thresholds.value_max = t.at("value_max").get<double>();
        if (t.contains("floor")) cfg.thresholds.floor = t.at("floor").get<double>();
    }
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("format")) {
        cfg.format = j.at("format").get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "both")
            throw ConfigError("/format", "expected csv, json, or both");
    }
    if (j.contains("strict")) cfg.strict = j.at("strict").get<bool>();
    return cfg;
}

json effective_config_json(const ExperimentConfig& cfg) {
    json j;
    j["quantity"] = to_string(cfg.quantity);
    j["model"] = to_json(cfg.model);
    j["leads"] = {to_json(cfg.left), to_json(cfg.right)};
    j["lambda"] = cfg.lambda;
    j["lambda_S"] = cfg.lambda_S;
    j["window"] = {cfg.mu_l, cfg.mu_r};
    j["L_list"] = cfg.L_list;
    j["grid"] = {{"n", cfg.grid_n},
                 {"rule", cfg.rule == QuadRule::Midpoint ? "midpoint" : "gauss-legendre"},
                 {"eta", cfg.eta}};
    j["thresholds"] = {{"slope_min", cfg.thresholds.slope_min},
                       {"value_max", cfg.thresholds.value_max},
                       {"floor", cfg.thresholds.floor}};
    j["out"] = cfg.out_dir;
    j["format"] = cfg.format;
    j["strict"] = cfg.strict;
    return j;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    ExperimentOutput out;
    std::vector<double> values;
    values.reserve(cfg.L_list.size());

    for (const std::size_t L : cfg.L_list) {
        switch (cfg.quantity) {
            case Quantity::SteadyCurrent: {
                TransportSetup spec(cfg.model, L, cfg.left, cfg.right, cfg.lambda, cfg.mu_l,
                                    cfg.mu_r);
                spec.grid = cfg.window_grid();
                TransportResult r = steady_current(spec);
                for (const auto& w : r.warnings) out.warnings.push_back(w);
                values.push_back(r.current);
                break;
            }
            case Quantity::ThoulessCurrent: {
                const PeriodicJacobi per = periodize(cfg.model, L, cfg.lambda_S);
                values.push_back(thouless_current(per, cfg.mu_l, cfg.mu_r));
                break;
            }
            case Quantity::CrystallineCurrent: {
                const PeriodicJacobi per = periodize(cfg.model, L, cfg.lambda_S);
                values.push_back(crystalline_current(per, cfg.left, cfg.right, cfg.lambda,
                                                     cfg.mu_l, cfg.mu_r));
                break;
            }
            case Quantity::TmInverseSquareIntegral: {
                EnergyGrid g = cfg.window_grid();
                const IntegralResult r = tm_inverse_square_integral(cfg.model, L, g);
                if (r.refinement_warning)
                    out.warnings.push_back("tm integral refined at L = " + std::to_string(L));
                values.push_back(r.value);
                break;
            }
        }
    }

    out.verdict = classify_trend(cfg.quantity, cfg.L_list, values, cfg.thresholds);

    std::string csv = "L,value\n";
    for (std::size_t i = 0; i < cfg.L_list.size(); ++i) {
        csv += std::to_string(cfg.L_list[i]) + "," + format_double(out.verdict.values[i]) + "\n";
    }
    out.csv = csv;

    json env;
    env["config"] = effective_config_json(cfg);
    env["values"] = out.verdict.values;
    env["verdict"] = {{"slope", out.verdict.slope},
                      {"classification", to_string(out.verdict.classification)}};
    env["warnings"] = out.warnings;
    out.envelope = env;

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        const std::string stem = to_string(cfg.quantity);
        if (cfg.format == "csv" || cfg.format == "both") {
            std::ofstream f(fs::path(cfg.out_dir) / (stem + ".csv"), std::ios::binary);
            f << out.csv;
        }
        if (cfg.format == "json" || cfg.format == "both") {
            std::ofstream f(fs::path(cfg.out_dir) / (stem + ".json"), std::ios::binary);
            f << out.envelope.dump(2) << "\n";
        }
    }
    return out;
}

AcetReport acet_sets_probe(const JacobiModel& model, const EnergyGrid& grid,
                           const std::vector<std::size_t>& L_list, double threshold,
                           const AcetOptions& opts) {
    AcetReport report;
    const std::vector<SigmaAcNode> norms =
        sigma_ac_probe(model, grid, L_list, opts.norm_threshold);

    const std::vector<double> mus = grid.nodes();
    std::size_t agree = 0;
    for (std::size_t i = 0; i < mus.size(); ++i) {
        AcetNode node;
        node.mu = mus[i];
        node.min_conductance = HUGE_VAL;
        node.max_conductance = 0.0;
        for (const std::size_t L : L_list) {
            TransportSetup spec(model, L, opts.left, opts.right, opts.lambda, grid.lo, grid.hi);
            const double g = linear_response(spec, node.mu);
            node.min_conductance = std::min(node.min_conductance, g);
            node.max_conductance = std::max(node.max_conductance, g);
        }
        node.conducting = node.min_conductance > threshold;
        node.min_log_norm = norms[i].min_log_norm;
        node.bounded = norms[i].bounded;
        if (node.conducting == node.bounded) ++agree;
        report.nodes.push_back(node);
    }
    report.agreement_rate =
        mus.empty() ? 0.0 : static_cast<double>(agree) / static_cast<double>(mus.size());
    return report;
}

std::vector<RateRow> rate_report(const std::vector<std::pair<std::string, Verdict>>& verdicts) {
    if (verdicts.size() < 2)
        throw std::invalid_argument("rate report needs at least two verdicts");
    std::vector<RateRow> rows;
    for (const auto& [label, v] : verdicts) {
        RateRow row;
        row.label = label;
        row.quantity = v.quantity;
        row.slope = v.slope;
        row.final_value = v.values.empty() ? 0.0 : v.values.back();
        row.classification = v.classification;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace jtx

#pragma once

#include <optional>

#include "jtx/crystalline.hpp"
#include "jtx/probes.hpp"
#include "jtx/serialize.hpp"
#include "jtx/thouless.hpp"
#include "jtx/transport.hpp"

namespace jtx {

enum class Quantity {
    SteadyCurrent,
    ThoulessCurrent,
    CrystallineCurrent,
    TmInverseSquareIntegral
};

std::string to_string(Quantity q);
Quantity quantity_from_string(const std::string& s);

enum class TrendClass { DecayingToZero, BoundedBelow, Inconclusive };

std::string to_string(TrendClass c);

struct ClassifierThresholds {
    double slope_min = 0.02;  ///< per site, natural log
    double value_max = 1e-3;
    double floor = 1e-3;
};

/// Finite-scale trend classification of a quantity along a length sweep.
struct Verdict {
    Quantity quantity = Quantity::SteadyCurrent;
    std::vector<std::size_t> L_list;
    std::vector<double> values;
    double slope = 0.0;  ///< fitted d ln(value) / dL
    TrendClass classification = TrendClass::Inconclusive;
    ClassifierThresholds thresholds;
};

Verdict classify_trend(Quantity q, std::vector<std::size_t> L_list, std::vector<double> values,
                       const ClassifierThresholds& thr);

/// Validation failure with a JSON pointer to the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& pointer, const std::string& what)
        : std::runtime_error(pointer + ": " + what), pointer_path(pointer) {}
    std::string pointer_path;
};

struct ExperimentConfig {
    Quantity quantity = Quantity::SteadyCurrent;
    JacobiModel model = JacobiModel::free_chain();
    Lead left = Lead::free_half_line();
    Lead right = Lead::free_half_line();
    double lambda = 1.0;
    double lambda_S = 1.0;
    double mu_l = -1.0;
    double mu_r = 1.0;
    std::vector<std::size_t> L_list{10, 20, 40, 80, 160, 320};
    std::size_t grid_n = 2000;
    QuadRule rule = QuadRule::Midpoint;
    double eta = 0.0;
    ClassifierThresholds thresholds;
    std::string out_dir;
    std::string format = "csv";  ///< csv | json | both
    bool strict = false;

    EnergyGrid window_grid() const { return EnergyGrid(mu_l, mu_r, grid_n, rule, eta); }
};

/// Parse and validate a config document; unknown keys are rejected, errors
/// carry JSON pointer paths.
ExperimentConfig config_from_json(const json& j);
/// The fully materialized config (all defaults resolved), for provenance.
json effective_config_json(const ExperimentConfig& cfg);

struct ExperimentOutput {
    Verdict verdict;
    json envelope;
    std::string csv;
    std::vector<std::string> warnings;
};

/// Sweep the configured quantity along L_list; write CSV/JSON into
/// cfg.out_dir when set.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

struct AcetOptions {
    double norm_threshold = 50.0;       ///< transfer-norm boundedness cutoff
    Lead left = Lead::free_half_line();
    Lead right = Lead::free_half_line();
    double lambda = 1.0;
};

struct AcetNode {
    double mu = 0.0;
    double min_conductance = 0.0;
    double max_conductance = 0.0;
    double min_log_norm = 0.0;
    bool conducting = false;  ///< conductance stays above threshold over the L list
    bool bounded = false;     ///< transfer norms stay below the norm threshold
};

struct AcetReport {
    std::vector<AcetNode> nodes;
    double agreement_rate = 0.0;  ///< fraction of nodes where the two sides agree
};

/// Per-node comparison of the linear-response conductance sweep against the
/// finite-L transfer-norm proxy.
AcetReport acet_sets_probe(const JacobiModel& model, const EnergyGrid& grid,
                           const std::vector<std::size_t>& L_list, double threshold,
                           const AcetOptions& opts = {});

struct RateRow {
    std::string label;
    Quantity quantity;
    double slope = 0.0;
    double final_value = 0.0;
    TrendClass classification = TrendClass::Inconclusive;
};

/// Side-by-side empirical decay rates; the slopes are fitted, not derived.
std::vector<RateRow> rate_report(const std::vector<std::pair<std::string, Verdict>>& verdicts);

}  // namespace jtx

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace jtx {

enum class QuadRule { Midpoint, GaussLegendre };

/// Energy discretization of an interval plus the boundary offset eta used for
/// E + i*eta evaluations.
struct EnergyGrid {
    double lo = -1.0;
    double hi = 1.0;
    std::size_t n = 2000;
    QuadRule rule = QuadRule::Midpoint;
    double eta = 1e-6;

    EnergyGrid() = default;
    EnergyGrid(double lo_, double hi_, std::size_t n_ = 2000,
               QuadRule rule_ = QuadRule::Midpoint, double eta_ = 1e-6)
        : lo(lo_), hi(hi_), n(n_), rule(rule_), eta(eta_) {
        validate();
    }

    void validate() const {
        if (!(lo < hi)) throw std::invalid_argument("grid needs lo < hi");
        if (n < 2) throw std::invalid_argument("grid needs at least 2 nodes");
        if (!(eta >= 0.0)) throw std::invalid_argument("grid needs eta >= 0");
    }

    std::vector<double> nodes() const;
    /// Quadrature nodes and weights for integrating over [lo, hi].
    std::pair<std::vector<double>, std::vector<double>> nodes_weights() const;

    EnergyGrid refined(std::size_t factor) const {
        EnergyGrid g = *this;
        g.n = n * factor;
        return g;
    }
};

/// Deterministic pairwise summation (fixed reduction order).
double pairwise_sum(std::span<const double> v);

/// Gauss-Legendre nodes/weights on [-1, 1], by Newton iteration.
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace jtx

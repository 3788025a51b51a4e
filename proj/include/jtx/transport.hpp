#pragma once

#include <string>
#include <vector>

#include "jtx/grid.hpp"
#include "jtx/lead.hpp"
#include "jtx/model.hpp"

namespace jtx {

/// A finite sample coupled at its endpoints to two reservoirs, plus the
/// chemical-potential window and the evaluation grid.
struct TransportSetup {
    JacobiModel sample;
    std::size_t L = 1;  ///< number of sample sites used
    Lead left = Lead::free_half_line();
    Lead right = Lead::free_half_line();
    double lambda = 1.0;
    double mu_l = -1.0;
    double mu_r = 1.0;
    EnergyGrid grid{-1.0, 1.0, 2000, QuadRule::Midpoint, 0.0};

    TransportSetup(JacobiModel sample_, std::size_t L_, Lead left_, Lead right_, double lambda_,
                   double mu_l_, double mu_r_)
        : sample(std::move(sample_)), L(L_), left(std::move(left_)), right(std::move(right_)),
          lambda(lambda_), mu_l(mu_l_), mu_r(mu_r_) {
        grid = EnergyGrid(mu_l, mu_r, 2000, QuadRule::Midpoint, 0.0);
        validate();
    }

    void validate() const {
        if (L < 1) throw std::invalid_argument("sample needs at least one site");
        if (!(mu_l < mu_r)) throw std::invalid_argument("window needs mu_l < mu_r");
        const JacobiSlice s = sample.slice(L);
        if (s.b.size() < L || (L > 1 && s.a.size() < L - 1))
            throw std::out_of_range("sample model shorter than L sites");
    }
};

struct GreenResult {
    cdouble value{0.0, 0.0};
    bool finite = true;  ///< false when the effective matrix was singular
};

/// Corner entry (1, L) of (H_eff - z)^{-1} where H_eff is the sample block
/// dressed with boundary self-energies: H_eff = J_L + sigma_l P_1 + sigma_r P_L.
/// O(L) three-term determinant recurrence with rescaling.
GreenResult sample_green_corner(std::span<const double> b_diag, std::span<const double> a_off,
                                cdouble z, cdouble sigma_l, cdouble sigma_r);

/// <delta_1, (H_lambda - E - i eta)^{-1} delta_L> via the Schur complement
/// onto the sample, with self-energies lambda^2 F_{l/r}(E + i eta).
GreenResult effective_green(const TransportSetup& spec, double E, double eta);

/// One-particle transmittance D(L, E) = 4 lambda^4 |G_1L|^2 Im F_l Im F_r,
/// clipped to [0, 1].
double lb_transmittance(const TransportSetup& spec, double E);

struct TransportResult {
    std::vector<double> energies;
    std::vector<double> transmittance;
    double current = 0.0;
    std::string spec_hash;
    double eta = 0.0;
    std::size_t grid_nodes = 0;
    double clip_tol = 1e-8;
    double support_tol = 1e-8;
    std::vector<std::string> warnings;
};

struct SteadyOptions {
    double clip_tol = 1e-8;        ///< warn when D exceeds 1 by more than this
    double refine_tol = 1e-6;      ///< warn when halving the step moves the current
    bool check_refinement = false;
    double support_tol = 1e-8;
};

/// Landauer-Buttiker steady current (1/2pi) * integral of D over the window.
TransportResult steady_current(const TransportSetup& spec, const SteadyOptions& opts = {});

/// Linear-response conductance D(L, mu) / 2pi.
double linear_response(const TransportSetup& spec, double mu);

}  // namespace jtx

#pragma once

#include "jtx/grid.hpp"
#include "jtx/model.hpp"

namespace jtx {

struct IntegralResult {
    double value = 0.0;
    /// Set when doubling the grid moves the value by more than the tolerance.
    bool refinement_warning = false;
};

struct TmIntegralOptions {
    double refine_tol = 1e-4;
    bool check_refinement = true;
};

/// Quadrature approximation of the inverse-square transfer-norm integral
/// over [grid.lo, grid.hi] at a fixed step count L. Bounded by the interval
/// length since ||T|| >= 1.
IntegralResult tm_inverse_square_integral(const JacobiModel& model, std::size_t L,
                                          const EnergyGrid& grid,
                                          const TmIntegralOptions& opts = {});

struct SigmaAcNode {
    double energy = 0.0;
    double min_log_norm = 0.0;  ///< min over the L list of log ||T_E(L)||
    bool bounded = false;       ///< min norm below the threshold
};

/// Finite-L heuristic proxy for the essential support of the ac spectrum:
/// at each grid node, the minimum transfer norm over the supplied L list and
/// a bounded/growing verdict. The liminf of the underlying asymptotic set is
/// replaced by a minimum over the finite list.
std::vector<SigmaAcNode> sigma_ac_probe(const JacobiModel& model, const EnergyGrid& grid,
                                        const std::vector<std::size_t>& L_list,
                                        double threshold);

}  // namespace jtx

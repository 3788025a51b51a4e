#pragma once

#include <span>

#include "jtx/mat2.hpp"
#include "jtx/model.hpp"

namespace jtx {

enum class Side { Left, Right };

struct MFunctionResult {
    cdouble value;
    /// Set when the fixed point was ambiguous at eta = 0 (band edge) and the
    /// value was taken from an eta-regularized evaluation instead.
    bool regularized = false;
};

/// Attracting / Herglotz fixed point of the Moebius action of the one-period
/// continued-fraction map at complex energy z. The map for one site is
/// w -> 1 / (b - z - a^2 w); its period-L composition is the Moebius action of
/// M_1 ... M_L with M_k = [[0, 1], [-a_k^2, b_k - z]].
MFunctionResult half_line_fixed_point(std::span<const double> a, std::span<const double> b,
                                      cdouble z);

/// Weyl m-function of the periodic half-line operator: m_r anchors at the
/// first site of the period block, m_l at the block reversed.
MFunctionResult m_function(const PeriodicJacobi& per, Side side, double E, double eta);

/// |quadratic residual| of a candidate fixed point, normalized by the
/// coefficient scale (test hook).
double fixed_point_residual(std::span<const double> a, std::span<const double> b, cdouble z,
                            cdouble m);

}  // namespace jtx

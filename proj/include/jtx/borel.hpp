#pragma once

#include "jtx/mat2.hpp"
#include "jtx/model.hpp"

namespace jtx {

enum class TailStrategy {
    Auto,        ///< self-similar for models with known period, zero otherwise
    Zero,        ///< truncate the continued fraction
    SelfSimilar  ///< close the tail with the period fixed point
};

struct BorelOptions {
    std::size_t depth = 10000;
    TailStrategy tail = TailStrategy::Auto;
    /// Relative depth-halving discrepancy above which the result is flagged.
    double depth_check_tol = 1e-8;
    bool check_depth = true;
};

struct BorelResult {
    cdouble value;
    bool depth_warning = false;
};

/// Exact Borel transform sum(w_i / (x_i - z)) of a discrete measure. Real z
/// is allowed when it avoids the support.
BorelResult borel_transform(const DiscreteMeasure& nu, cdouble z);

/// Continued-fraction Borel transform F(z) = 1/(b_1 - z - a_1^2/(b_2 - z - ...))
/// of a half-line model; requires Im z > 0.
BorelResult borel_transform(const JacobiModel& model, cdouble z, const BorelOptions& opts = {});

/// (1/pi) Im F(E + i eta); approximates the ac density as eta drops to 0.
double ac_density(const JacobiModel& model, double E, double eta, const BorelOptions& opts = {});

/// Finite-n density surrogate (1/pi) / (u(n)^2 + a_n^2 u(n+1)^2) built from the
/// theta = 0 generalized eigenfunction.
double weak_density_approx(const JacobiModel& model, double E, std::size_t n);

}  // namespace jtx

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "jtx/mat2.hpp"
#include "jtx/model.hpp"

namespace jtx {

/// Thrown when a plain transfer product leaves double range; carries the
/// largest step count that was still representable.
class TransferOverflow : public std::overflow_error {
public:
    TransferOverflow(std::size_t largest_valid, std::size_t requested)
        : std::overflow_error("transfer product overflows double range past n = " +
                              std::to_string(largest_valid) + " (requested " +
                              std::to_string(requested) + "); use the scaled form"),
          largest_valid_n(largest_valid) {}

    std::size_t largest_valid_n;
};

/// One-step matrix A_E(x) = a_x^{-1} [[E - b_x, -1], [a_x^2, 0]]; unit determinant.
Matrix2 one_step_matrix(double E, double a_x, double b_x);

/// Ordered product A_E(n) ... A_E(1) with plain double accumulation.
Matrix2 transfer_matrix(const JacobiModel& model, double E, std::size_t n);
Matrix2 transfer_matrix(std::span<const double> a, std::span<const double> b, double E);

/// Same product with automatic rescaling once entries pass 1e150; exact up to
/// the stored log scale, never overflows.
ScaledMatrix2 transfer_matrix_scaled(const JacobiModel& model, double E, std::size_t n);
ScaledMatrix2 transfer_matrix_scaled(std::span<const double> a, std::span<const double> b, double E);

/// Generalized eigenfunction u(0..n_max+1) of the three-term recurrence with
/// u(0) = theta, u(1) = 1 (boundary convention a_0 = 1). Returned vector is
/// indexed by site, u[k] = u(k), size n_max + 2.
std::vector<double> eigenfunction(const JacobiModel& model, double E, std::size_t n_max,
                                  double theta = 0.0);

/// Trace of the one-period transfer matrix at energy E. The periodic spectrum
/// is {E : |disc| <= 2}. Saturates to +/-inf when the product leaves double
/// range (deep in a gap for long periods).
double discriminant(const PeriodicJacobi& per, double E);

}  // namespace jtx

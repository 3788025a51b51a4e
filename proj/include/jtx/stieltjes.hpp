#pragma once

#include "jtx/model.hpp"

namespace jtx {

/// Thrown when the orthogonalization loses positivity of a_k^2 (numerical
/// breakdown, e.g. nearly coincident support points).
class StieltjesBreakdown : public std::runtime_error {
public:
    StieltjesBreakdown(std::size_t index)
        : std::runtime_error("orthogonalization breakdown at recurrence index " +
                             std::to_string(index)),
          failing_index(index) {}

    std::size_t failing_index;
};

/// Recurrence coefficients of the orthonormal polynomials of a discrete
/// measure, by the Stieltjes inner-product procedure (with full
/// reorthogonalization against the stored polynomial values). Returns an
/// explicit-list model with n_max diagonal and n_max - 1 off-diagonal entries.
///
/// When n_max equals the number of support points, the resulting Jacobi
/// matrix has the support points as eigenvalues and the weights as squared
/// first eigenvector components.
JacobiModel measure_to_jacobi(const DiscreteMeasure& nu, std::size_t n_max);

}  // namespace jtx

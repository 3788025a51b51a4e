#pragma once

#include <Eigen/Dense>

#include "jtx/lead.hpp"
#include "jtx/model.hpp"

namespace jtx {

enum class SampleInit { Mixed, Empty };  ///< T_L = 1/L, or an empty sample

/// Finite Dirichlet truncation of the junction: M reservoir sites on each
/// side of the L-site sample, laid out left-lead (deepest first), sample,
/// right-lead. The full one-particle Hamiltonian is symmetric tridiagonal.
struct TruncatedEbb {
    std::size_t M = 0, L = 0;
    double lambda = 0.0;
    double mu_l = 0.0, mu_r = 0.0;

    Eigen::VectorXd diag, off;     ///< tridiagonal of the coupled Hamiltonian
    Eigen::VectorXd eigenvalues;   ///< of the coupled Hamiltonian
    Eigen::MatrixXd eigenvectors;  ///< columns
    Eigen::MatrixXd density_eig;   ///< initial one-particle density, eigenbasis
    Eigen::MatrixXd coupling_eig;  ///< psi_r/delta_L weighted density (current kernel)
    double trace_density = 0.0;
};

/// Symmetric tridiagonal eigendecomposition (LAPACK dstevd when available,
/// Eigen fallback otherwise).
void tridiag_eigh(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                  Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

/// Assemble and diagonalize the truncated junction. Reservoirs must admit a
/// finite truncation (free or periodic half-line).
TruncatedEbb build_truncated(const JacobiModel& sample, std::size_t L, const Lead& left,
                             const Lead& right, double lambda, double mu_l, double mu_r,
                             std::size_t M, SampleInit init = SampleInit::Mixed);

/// <J_L>_t = tr(T e^{itH} j e^{-itH}) with the rank-two current symbol
/// j = -i lambda (|dL><psi_r| - |psi_r><dL|).
double current_at_time(const TruncatedEbb& sys, double t);

struct CesaroResult {
    double value = 0.0;
    bool recurrence_warning = false;  ///< t_max beyond the reservoir round-trip guard
    std::vector<double> times;
    std::vector<double> currents;
};

/// (1/t_max) * integral of the current by trapezoid on uniform samples.
CesaroResult cesaro_current(const TruncatedEbb& sys, double t_max, std::size_t samples = 2000);

/// Same average evaluated in closed form in the eigenbasis (no time
/// quadrature); the trapezoid version converges to this as samples grow.
double cesaro_current_exact(const TruncatedEbb& sys, double t_max);

}  // namespace jtx

#include "jtx/dynamics.hpp"

#include <cmath>
#include <complex>

#ifdef JTX_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace jtx {

void tridiag_eigh(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                  Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    const auto n = diag.size();
    if (off.size() != n - 1) throw std::invalid_argument("off-diagonal size mismatch");
    values = diag;
    vectors.resize(n, n);
    if (n == 1) {
        vectors(0, 0) = 1.0;
        return;
    }
#ifdef JTX_HAVE_LAPACKE
    Eigen::VectorXd e = off;
    const lapack_int info =
        LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', static_cast<lapack_int>(n), values.data(),
                       e.data(), vectors.data(), static_cast<lapack_int>(n));
    if (info != 0) throw std::runtime_error("dstevd failed with info " + std::to_string(info));
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    values = es.eigenvalues();
    vectors = es.eigenvectors();
#endif
}

TruncatedEbb build_truncated(const JacobiModel& sample, std::size_t L, const Lead& left,
                             const Lead& right, double lambda, double mu_l, double mu_r,
                             std::size_t M, SampleInit init) {
    if (L < 1) throw std::invalid_argument("sample needs at least one site");
    if (M < 1) throw std::invalid_argument("need at least one reservoir site per side");
    if (!left.supports_truncation() || !right.supports_truncation())
        throw std::invalid_argument("reservoir kind does not admit a finite truncation");

    TruncatedEbb sys;
    sys.M = M;
    sys.L = L;
    sys.lambda = lambda;
    sys.mu_l = mu_l;
    sys.mu_r = mu_r;

    const JacobiSlice s = sample.slice(L);
    if (s.b.size() < L || (L > 1 && s.a.size() < L - 1))
        throw std::out_of_range("sample model shorter than L sites");
    const JacobiSlice lp = left.truncated_parameters(M);
    const JacobiSlice rp = right.truncated_parameters(M);

    const std::size_t n = 2 * M + L;
    sys.diag.resize(static_cast<Eigen::Index>(n));
    sys.off.resize(static_cast<Eigen::Index>(n - 1));
    // Left lead deepest-to-boundary, then sample, then right lead
    // boundary-to-deepest; the coupled Hamiltonian is tridiagonal.
    for (std::size_t k = 0; k < M; ++k) {
        sys.diag[static_cast<Eigen::Index>(k)] = lp.b[M - 1 - k];
        if (k + 1 < M) sys.off[static_cast<Eigen::Index>(k)] = lp.a[M - 2 - k];
    }
    sys.off[static_cast<Eigen::Index>(M - 1)] = lambda;
    for (std::size_t k = 0; k < L; ++k) {
        sys.diag[static_cast<Eigen::Index>(M + k)] = s.b[k];
        if (k + 1 < L) sys.off[static_cast<Eigen::Index>(M + k)] = s.a[k];
    }
    sys.off[static_cast<Eigen::Index>(M + L - 1)] = lambda;
    for (std::size_t k = 0; k < M; ++k) {
        sys.diag[static_cast<Eigen::Index>(M + L + k)] = rp.b[k];
        if (k + 1 < M) sys.off[static_cast<Eigen::Index>(M + L + k)] = rp.a[k];
    }

    tridiag_eigh(sys.diag, sys.off, sys.eigenvalues, sys.eigenvectors);

    // Reservoir occupations from the eigenbasis of each truncated lead block.
    const auto mi = static_cast<Eigen::Index>(M);
    const auto li = static_cast<Eigen::Index>(L);
    const auto ni = static_cast<Eigen::Index>(n);
    Eigen::VectorXd wl, wr;
    Eigen::MatrixXd Vl, Vr;
    tridiag_eigh(sys.diag.head(mi), sys.off.head(mi - 1), wl, Vl);
    tridiag_eigh(sys.diag.tail(mi), sys.off.tail(mi - 1), wr, Vr);

    auto occupied = [](const Eigen::VectorXd& w, double mu) {
        Eigen::Index k = 0;
        while (k < w.size() && w[k] <= mu) ++k;  // eigenvalues ascend
        return k;
    };
    const Eigen::Index kl = occupied(wl, mu_l);
    const Eigen::Index kr = occupied(wr, mu_r);

    const Eigen::MatrixXd& Q = sys.eigenvectors;
    sys.density_eig.setZero(ni, ni);
    if (kl > 0) {
        const Eigen::MatrixXd A = Q.topRows(mi).transpose() * Vl.leftCols(kl);
        sys.density_eig.noalias() += A * A.transpose();
    }
    if (kr > 0) {
        const Eigen::MatrixXd A = Q.bottomRows(mi).transpose() * Vr.leftCols(kr);
        sys.density_eig.noalias() += A * A.transpose();
    }
    if (init == SampleInit::Mixed) {
        const Eigen::MatrixXd S = Q.middleRows(mi, li).transpose();
        sys.density_eig.noalias() += (1.0 / static_cast<double>(L)) * (S * S.transpose());
    }
    sys.trace_density = static_cast<double>(kl + kr) +
                        (init == SampleInit::Mixed ? 1.0 : 0.0);

    const Eigen::VectorXd psi_r = Q.row(mi + li).transpose();   // right-lead boundary site
    const Eigen::VectorXd d_L = Q.row(mi + li - 1).transpose(); // last sample site
    sys.coupling_eig = psi_r.asDiagonal() * sys.density_eig * d_L.asDiagonal();
    return sys;
}

double current_at_time(const TruncatedEbb& sys, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("need t >= 0");
    const auto n = sys.eigenvalues.size();
    Eigen::VectorXd c(n), sn(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        c[i] = std::cos(t * sys.eigenvalues[i]);
        sn[i] = std::sin(t * sys.eigenvalues[i]);
    }
    // z = conj(p)^T K p with p = exp(i t lambda); current = 2 lambda Im z.
    const Eigen::VectorXd Kc = sys.coupling_eig * c;
    const Eigen::VectorXd Ks = sys.coupling_eig * sn;
    const double im = c.dot(Ks) - sn.dot(Kc);
    return 2.0 * sys.lambda * im;
}

CesaroResult cesaro_current(const TruncatedEbb& sys, double t_max, std::size_t samples) {
    if (!(t_max > 0.0)) throw std::invalid_argument("need t_max > 0");
    if (samples < 2) throw std::invalid_argument("need at least two time samples");
    CesaroResult res;
    res.recurrence_warning = t_max > 0.5 * static_cast<double>(sys.M);

    res.times.resize(samples + 1);
    res.currents.resize(samples + 1);
    const double h = t_max / static_cast<double>(samples);
    double acc = 0.0;
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) * h;
        res.times[i] = t;
        res.currents[i] = current_at_time(sys, t);
        const double w = (i == 0 || i == samples) ? 0.5 : 1.0;
        acc += w * res.currents[i];
    }
    res.value = acc * h / t_max;
    return res;
}

double cesaro_current_exact(const TruncatedEbb& sys, double t_max) {
    if (!(t_max > 0.0)) throw std::invalid_argument("need t_max > 0");
    // (1/T) int_0^T e^{it w} dt = (e^{iTw} - 1) / (iTw); sum against the kernel.
    const auto n = sys.eigenvalues.size();
    double im_total = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double K = sys.coupling_eig(m, k);
            if (K == 0.0) continue;
            const double x = t_max * (sys.eigenvalues[k] - sys.eigenvalues[m]);
            const double im_phi = std::abs(x) < 1e-8 ? 0.5 * x : (1.0 - std::cos(x)) / x;
            im_total += K * im_phi;
        }
    }
    return 2.0 * sys.lambda * im_total;
}

}  // namespace jtx

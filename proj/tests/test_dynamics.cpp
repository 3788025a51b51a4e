#include <numbers>

#include "doctest.h"
#include "jtx/dynamics.hpp"
#include "jtx/transport.hpp"

using namespace jtx;

TEST_CASE("assembly of the smallest junction") {
    const TruncatedEbb sys = build_truncated(JacobiModel::free_chain(), 1,
                                             Lead::free_half_line(), Lead::free_half_line(),
                                             1.0, -0.5, 0.5, 1);
    REQUIRE(sys.diag.size() == 3);
    CHECK(sys.diag.isZero(0.0));
    CHECK(sys.off[0] == 1.0);
    CHECK(sys.off[1] == 1.0);
    // single left lead site at energy 0 > mu_l = -0.5: unoccupied
    CHECK(sys.trace_density == doctest::Approx(2.0));  // right occupied + sample 1/L...

    CHECK_THROWS_AS(build_truncated(JacobiModel::free_chain(), 1, Lead::wide_band(1.0),
                                    Lead::free_half_line(), 1.0, -0.5, 0.5, 10),
                    std::invalid_argument);
}

TEST_CASE("half filling counts") {
    const TruncatedEbb sys = build_truncated(JacobiModel::free_chain(), 1,
                                             Lead::free_half_line(), Lead::free_half_line(),
                                             1.0, 0.0, 0.0, 100);
    CHECK(sys.trace_density == doctest::Approx(101.0));
    CHECK(sys.density_eig.trace() == doctest::Approx(101.0).epsilon(1e-9));
}

TEST_CASE("current vanishes at t = 0 and for decoupled junctions") {
    const TruncatedEbb sys = build_truncated(JacobiModel::free_chain(), 3,
                                             Lead::free_half_line(), Lead::free_half_line(),
                                             1.0, -0.7, 0.7, 60);
    CHECK(current_at_time(sys, 0.0) == doctest::Approx(0.0).epsilon(1e-12));

    const TruncatedEbb off = build_truncated(JacobiModel::free_chain(), 3,
                                             Lead::free_half_line(), Lead::free_half_line(),
                                             0.0, -0.7, 0.7, 60);
    for (double t : {0.0, 1.5, 10.0}) CHECK(current_at_time(off, t) == 0.0);
}

TEST_CASE("conservation laws under explicit evolution") {
    const TruncatedEbb sys = build_truncated(JacobiModel::anderson(1.0, 3), 4,
                                             Lead::free_half_line(), Lead::free_half_line(),
                                             0.8, -0.6, 0.9, 40);
    const auto n = sys.eigenvalues.size();
    // evolve the density explicitly: T(t) = e^{-itH} T e^{itH} in the eigenbasis
    for (double t : {0.7, 5.0, 31.0}) {
        Eigen::VectorXcd phase(n);
        for (Eigen::Index i = 0; i < n; ++i)
            phase[i] = std::exp(cdouble(0.0, -t * sys.eigenvalues[i]));
        const Eigen::MatrixXcd Tt = phase.asDiagonal() * sys.density_eig.cast<cdouble>() *
                                    phase.conjugate().asDiagonal();
        CHECK(std::abs(Tt.trace().real() - sys.trace_density) < 1e-9);
        CHECK(std::abs(Tt.trace().imag()) < 1e-12);
        const double e0 = (sys.eigenvalues.asDiagonal() * sys.density_eig).trace();
        const cdouble et = (sys.eigenvalues.cast<cdouble>().asDiagonal() * Tt).trace();
        CHECK(std::abs(et - cdouble(e0)) < 1e-9);
        // 0 <= T <= 1 as a quadratic form
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.density_eig);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
        CHECK(es.eigenvalues().maxCoeff() < 1.0 + 1e-10);
    }
}

TEST_CASE("reversing the bias flips the mean current") {
    const JacobiModel sample = JacobiModel::free_chain();
    const TruncatedEbb fwd = build_truncated(sample, 3, Lead::free_half_line(),
                                             Lead::free_half_line(), 1.0, -0.8, 0.8, 300);
    const TruncatedEbb bwd = build_truncated(sample, 3, Lead::free_half_line(),
                                             Lead::free_half_line(), 1.0, 0.8, -0.8, 300);
    // late-window averages cancel the initial equilibration charge, which is
    // even under bias reversal and masks the antisymmetry at short horizons
    auto late_window = [](const TruncatedEbb& sys) {
        return 2.0 * cesaro_current(sys, 140.0, 1400).value -
               cesaro_current(sys, 70.0, 700).value;
    };
    const double jf = late_window(fwd);
    const double jb = late_window(bwd);
    CHECK(jf > 0.0);
    CHECK(std::abs(jf + jb) < 1e-3);
}

TEST_CASE("no bias, no mean current") {
    const TruncatedEbb sys = build_truncated(JacobiModel::free_chain(), 5,
                                             Lead::free_half_line(), Lead::free_half_line(),
                                             1.0, 0.5, 0.5, 900);
    // The plain average carries the one-shot sample-equilibration charge,
    // which dies off like 1/t_max; the late-window average cancels it and
    // exposes the vanishing steady component.
    const double c200 = cesaro_current(sys, 200.0, 1500).value;
    const double c400 = cesaro_current(sys, 400.0, 2000).value;
    CHECK(std::abs(c400) < std::abs(c200));
    const double late_window = 2.0 * c400 - c200;
    CHECK(std::abs(late_window) < 1e-3);
}

TEST_CASE("trapezoid average approaches the closed-form average") {
    const TruncatedEbb sys = build_truncated(JacobiModel::free_chain(), 3,
                                             Lead::free_half_line(), Lead::free_half_line(),
                                             1.0, -0.6, 0.6, 200);
    const double exact = cesaro_current_exact(sys, 80.0);
    const double coarse = cesaro_current(sys, 80.0, 400).value;
    const double fine = cesaro_current(sys, 80.0, 6400).value;
    CHECK(std::abs(fine - exact) < std::abs(coarse - exact) + 1e-12);
    CHECK(std::abs(fine - exact) < 2e-4);
}

TEST_CASE("recurrence guard flags over-long averaging windows") {
    const TruncatedEbb sys = build_truncated(JacobiModel::free_chain(), 2,
                                             Lead::free_half_line(), Lead::free_half_line(),
                                             1.0, -0.5, 0.5, 40);
    CHECK_FALSE(cesaro_current(sys, 19.0, 100).recurrence_warning);
    CHECK(cesaro_current(sys, 30.0, 100).recurrence_warning);
}

TEST_CASE("oracle against the steady formula at small scale") {
    // moderate truncation: a few percent agreement is already expected
    const TruncatedEbb sys = build_truncated(JacobiModel::free_chain(), 5,
                                             Lead::free_half_line(), Lead::free_half_line(),
                                             1.0, -1.0, 1.0, 600);
    const double ces = cesaro_current_exact(sys, 250.0);
    CHECK(std::abs(ces - 1.0 / std::numbers::pi) / (1.0 / std::numbers::pi) < 0.05);
}

TEST_CASE("sample initialization does not move the late-time average") {
    for (SampleInit init : {SampleInit::Mixed, SampleInit::Empty}) {
        const TruncatedEbb sys = build_truncated(JacobiModel::free_chain(), 4,
                                                 Lead::free_half_line(),
                                                 Lead::free_half_line(), 1.0, -0.9, 0.9, 500,
                                                 init);
        const double ces = cesaro_current_exact(sys, 200.0);
        const double ref = 0.9 / std::numbers::pi;  // transparent window of width 1.8
        CHECK(std::abs(ces - ref) < 1e-2);
    }
}

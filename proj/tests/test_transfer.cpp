#include <random>

#include "doctest.h"
#include "jtx/transfer.hpp"

using namespace jtx;

namespace {

JacobiModel random_zoo_model(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (pick(rng)) {
        case 0: return JacobiModel::free_chain();
        case 1: return JacobiModel::anderson(3.0 * u(rng), rng());
        case 2:
            return JacobiModel::almost_mathieu(2.0 * u(rng), (std::sqrt(5.0) - 1.0) / 2.0,
                                               u(rng));
        default: return JacobiModel::fibonacci(2.0 * u(rng));
    }
}

}  // namespace

TEST_CASE("one-step matrix values") {
    const Matrix2 a = one_step_matrix(0.0, 1.0, 0.0);
    CHECK(a.m00 == 0.0);
    CHECK(a.m01 == -1.0);
    CHECK(a.m10 == 1.0);
    CHECK(a.m11 == 0.0);

    const Matrix2 b = one_step_matrix(2.0, 1.0, 0.0);
    CHECK(b.m00 == 2.0);
    CHECK(b.m01 == -1.0);
    CHECK(b.m10 == 1.0);
    CHECK(b.m11 == 0.0);

    CHECK(one_step_matrix(2.7, 0.3, -1.1).det() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(one_step_matrix(1.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(one_step_matrix(1.0, -2.0, 0.0), std::domain_error);
}

TEST_CASE("free-chain products rotate with period four") {
    const JacobiModel free = JacobiModel::free_chain();
    const Matrix2 t2 = transfer_matrix(free, 0.0, 2);
    CHECK(t2.m00 == doctest::Approx(-1.0));
    CHECK(t2.m01 == doctest::Approx(0.0));
    CHECK(t2.m10 == doctest::Approx(0.0));
    CHECK(t2.m11 == doctest::Approx(-1.0));
    for (std::size_t n = 1; n <= 100; ++n) {
        CHECK(transfer_matrix(free, 0.0, n).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Anderson transfer norms grow linearly in log scale") {
    const JacobiModel m = JacobiModel::anderson(3.0, 7);
    double prev = 0.0;
    std::vector<double> logs;
    for (std::size_t n : {25, 50, 100}) {
        const double ln = transfer_matrix_scaled(m, 0.0, n).log_norm();
        CHECK(ln > prev);
        logs.push_back(ln);
        prev = ln;
    }
    // roughly linear growth: doubling n roughly doubles log norm
    CHECK(logs[2] / logs[0] > 2.0);
    CHECK(logs[2] / logs[0] < 8.0);
}

TEST_CASE("determinant invariant under random draws") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uE(-3.0, 3.0);
    std::uniform_int_distribution<std::size_t> un(1, 100);
    for (int trial = 0; trial < 1000; ++trial) {
        const JacobiModel m = random_zoo_model(rng);
        const double E = uE(rng);
        const std::size_t n = un(rng);
        const ScaledMatrix2 t = transfer_matrix_scaled(m, E, n);
        const double tol = static_cast<double>(n) * 1e-14;
        // Subtracting the two entry products cancels at absolute scale
        // ||T||^2 eps, so the direct determinant is only resolvable while the
        // product stays moderate; past that the multiplicative form below is
        // the meaningful statement.
        if (2.0 * t.log_norm() < std::log(tol / (8.0 * 2.3e-16))) {
            CHECK(std::abs(t.value().det() - 1.0) <= tol + 1e-15);
        }
        const JacobiSlice s = m.slice(n);
        double step_det = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            step_det *= one_step_matrix(E, s.a[k], s.b[k]).det();
        }
        CHECK(std::abs(step_det - 1.0) <= tol);
    }
}

TEST_CASE("transfer overflow carries the largest valid step") {
    // localized family: norms grow like exp(0.69 n), overflow near n = 1020
    const JacobiModel m = JacobiModel::almost_mathieu(2.5, (std::sqrt(5.0) - 1.0) / 2.0, 0.37);
    try {
        (void)transfer_matrix(m, 2.2, 2000);
        FAIL("expected overflow");
    } catch (const TransferOverflow& e) {
        CHECK(e.largest_valid_n > 100);
        CHECK(e.largest_valid_n < 2000);
        // the scaled product keeps going past that point
        const ScaledMatrix2 t = transfer_matrix_scaled(m, 2.2, 2000);
        CHECK(t.log_norm() > 700.0);
    }
}

TEST_CASE("cocycle property over shifted models") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> uE(-2.5, 2.5);
    for (int trial = 0; trial < 50; ++trial) {
        const JacobiModel m = random_zoo_model(rng);
        const std::size_t n = 5 + trial % 7, extra = 3 + trial % 5;
        const double E = uE(rng);
        const JacobiSlice s = m.slice(n + extra);
        const JacobiModel shifted = JacobiModel::explicit_list(
            std::vector<double>(s.a.begin() + static_cast<long>(n), s.a.end()),
            std::vector<double>(s.b.begin() + static_cast<long>(n), s.b.end()));
        const Matrix2 whole = transfer_matrix(m, E, n + extra);
        const Matrix2 parts = transfer_matrix(shifted, E, extra) * transfer_matrix(m, E, n);
        CHECK(whole.m00 == doctest::Approx(parts.m00).epsilon(1e-12));
        CHECK(whole.m01 == doctest::Approx(parts.m01).epsilon(1e-12));
        CHECK(whole.m10 == doctest::Approx(parts.m10).epsilon(1e-12));
        CHECK(whole.m11 == doctest::Approx(parts.m11).epsilon(1e-12));
    }
}

TEST_CASE("eigenfunction matches the recursion and the transfer identity") {
    const JacobiModel free = JacobiModel::free_chain();
    const std::vector<double> u0 = eigenfunction(free, 0.0, 8, 0.0);
    const std::vector<double> want{0, 1, 0, -1, 0, 1, 0, -1, 0, 1};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(u0[i] == doctest::Approx(want[i]));

    const std::vector<double> u2 = eigenfunction(free, 2.0, 12, 0.0);
    for (std::size_t n = 0; n <= 13; ++n) CHECK(u2[n] == doctest::Approx(double(n)));

    // [u(n+1), a_n u(n)]^T = T_E(n) [1, theta]^T
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uE(-2.0, 2.0), uth(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const JacobiModel m = random_zoo_model(rng);
        const double E = trial == 0 ? 1.3 : uE(rng);
        const double theta = trial == 0 ? 0.0 : uth(rng);
        const std::size_t n = trial == 0 ? 37 : 1 + trial % 60;
        const std::vector<double> u = eigenfunction(m, E, n, theta);
        const Matrix2 T = transfer_matrix(m, E, n);
        const double top = T.m00 * 1.0 + T.m01 * theta;
        const double bot = T.m10 * 1.0 + T.m11 * theta;
        const double scale = std::max({1.0, std::abs(top), std::abs(bot)});
        CHECK(std::abs(u[n + 1] - top) / scale < 1e-10);
        CHECK(std::abs(m.a(n) * u[n] - bot) / scale < 1e-10);
    }
}

TEST_CASE("transfer norm never drops below one") {
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> uE(-3.0, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
        const JacobiModel m = random_zoo_model(rng);
        const ScaledMatrix2 t = transfer_matrix_scaled(m, uE(rng), 1 + trial % 40);
        CHECK(t.log_norm() >= -1e-12);
    }
}

TEST_CASE("discriminant closed forms") {
    const PeriodicJacobi p1 = periodize(JacobiModel::free_chain(), 1, 1.0);
    for (double E : {-2.0, -0.5, 0.0, 1.7, 2.0, 3.0}) {
        CHECK(discriminant(p1, E) == doctest::Approx(E).epsilon(1e-13));
    }
    const PeriodicJacobi phalf({0.5}, {0.0});
    CHECK(discriminant(phalf, 0.7) == doctest::Approx(1.4).epsilon(1e-13));

    const PeriodicJacobi p2({1.0, 1.0}, {1.0, -1.0});
    for (double E : {-2.0, -1.0, 0.0, 0.3, 1.0, 2.2}) {
        CHECK(discriminant(p2, E) == doctest::Approx(E * E - 3.0).epsilon(1e-12));
    }
}

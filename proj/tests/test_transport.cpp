#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <numbers>
#include <random>

#include "doctest.h"
#include "jtx/borel.hpp"
#include "jtx/transport.hpp"

using namespace jtx;

namespace {

/// Dense-system oracle: corner resolvent entry of the truncated junction
/// (M lead sites on each side, explicit sparse LU solve).
cdouble truncated_resolvent_entry(const JacobiSlice& sample, std::size_t L,
                                  const JacobiSlice& lead_l, const JacobiSlice& lead_r,
                                  double lambda, cdouble z, std::size_t M) {
    const std::size_t n = 2 * M + L;
    std::vector<Eigen::Triplet<cdouble>> trips;
    std::vector<double> diag(n), off(n - 1);
    for (std::size_t k = 0; k < M; ++k) {
        diag[k] = lead_l.b[M - 1 - k];
        if (k + 1 < M) off[k] = lead_l.a[M - 2 - k];
    }
    off[M - 1] = lambda;
    for (std::size_t k = 0; k < L; ++k) {
        diag[M + k] = sample.b[k];
        if (k + 1 < L) off[M + k] = sample.a[k];
    }
    off[M + L - 1] = lambda;
    for (std::size_t k = 0; k < M; ++k) {
        diag[M + L + k] = lead_r.b[k];
        if (k + 1 < M) off[M + L + k] = lead_r.a[k];
    }
    for (std::size_t i = 0; i < n; ++i) trips.emplace_back(int(i), int(i), cdouble(diag[i]) - z);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        trips.emplace_back(int(i), int(i + 1), cdouble(off[i]));
        trips.emplace_back(int(i + 1), int(i), cdouble(off[i]));
    }
    Eigen::SparseMatrix<cdouble> A(static_cast<int>(n), static_cast<int>(n));
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<cdouble>> lu(A);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(int(n));
    rhs[int(M + L - 1)] = 1.0;
    const Eigen::VectorXcd x = lu.solve(rhs);
    return x[int(M)];
}

}  // namespace

TEST_CASE("single-site junction closed form") {
    TransportSetup spec(JacobiModel::free_chain(), 1, Lead::free_half_line(),
                        Lead::free_half_line(), 1.0, -1.0, 1.0);
    const GreenResult g = effective_green(spec, 0.0, 0.0);
    CHECK(g.finite);
    // 1 / (b - z - 2F) with F = i: magnitude 1/2, Herglotz corner entry
    CHECK(std::abs(g.value) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.value.imag() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lb_transmittance(spec, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("transmittance vanishes outside the lead support and as lambda^4") {
    TransportSetup spec(JacobiModel::free_chain(), 4, Lead::free_half_line(),
                        Lead::free_half_line(), 1.0, -1.0, 1.0);
    CHECK(lb_transmittance(spec, 2.5) == 0.0);

    // D scales like lambda^4 for weak coupling
    TransportSetup weak1(JacobiModel::free_chain(), 4, Lead::free_half_line(),
                         Lead::free_half_line(), 1e-2, -1.0, 1.0);
    TransportSetup weak2(JacobiModel::free_chain(), 4, Lead::free_half_line(),
                         Lead::free_half_line(), 1e-3, -1.0, 1.0);
    const double r = lb_transmittance(weak1, 0.37) / lb_transmittance(weak2, 0.37);
    CHECK(r == doctest::Approx(1e4).epsilon(1e-3));

    TransportSetup off(JacobiModel::free_chain(), 4, Lead::free_half_line(),
                       Lead::free_half_line(), 0.0, -1.0, 1.0);
    CHECK(steady_current(off).current == 0.0);
}

TEST_CASE("free chain is transparent and carries 1/pi over (-1,1)") {
    for (std::size_t L : {1, 10, 100}) {
        TransportSetup spec(JacobiModel::free_chain(), L, Lead::free_half_line(),
                            Lead::free_half_line(), 1.0, -1.0, 1.0);
        const EnergyGrid probe(-2.0, 2.0, 500, QuadRule::Midpoint, 0.0);
        for (double E : probe.nodes()) {
            CHECK(lb_transmittance(spec, E) == doctest::Approx(1.0).epsilon(1e-8));
        }
        const TransportResult res = steady_current(spec);
        CHECK(res.current == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-6));
        CHECK(res.warnings.empty());
    }
}

TEST_CASE("window outside the lead support is flagged") {
    TransportSetup spec(JacobiModel::free_chain(), 3, Lead::free_half_line(),
                        Lead::free_half_line(), 1.0, 1.5, 2.5);
    const TransportResult res = steady_current(spec);
    CHECK(!res.warnings.empty());
}

TEST_CASE("Schur complement matches the dense truncated junction") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ub(-1.0, 1.0), ua(0.5, 1.5), uE(-1.5, 1.5);
    const std::size_t M = 400;
    const Lead free_lead = Lead::free_half_line();
    const JacobiSlice lp = free_lead.truncated_parameters(M);
    std::vector<double> a2(lp.a.begin(), lp.a.begin() + long(M) - 1);
    const JacobiModel lead_model = JacobiModel::explicit_list(a2, lp.b);

    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t L = 5;
        std::vector<double> b(L), a(L - 1);
        for (auto& v : b) v = ub(rng);
        for (auto& v : a) v = ua(rng);
        const JacobiModel sample = JacobiModel::explicit_list(a, b);
        const double lambda = 0.8;
        const cdouble z(uE(rng), 1e-3);

        const cdouble FM = borel_transform(lead_model, z, {.depth = M}).value;
        const JacobiSlice s = sample.slice(L);
        const GreenResult g = sample_green_corner(s.b, s.a, z, lambda * lambda * FM,
                                                  lambda * lambda * FM);
        const cdouble dense =
            truncated_resolvent_entry(s, L, lp, lp, lambda, z, M);
        CHECK(std::abs(g.value - dense) / std::abs(dense) < 1e-10);
    }
}

TEST_CASE("half-line self-energies are the large-M limit of truncated leads") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ub(-1.0, 1.0), ua(0.5, 1.5), uE(-1.5, 1.5);
    const std::size_t M = 2000;
    const Lead free_lead = Lead::free_half_line();
    const JacobiSlice lp = free_lead.truncated_parameters(M);
    for (int trial = 0; trial < 4; ++trial) {
        const std::size_t L = 5;
        std::vector<double> b(L), a(L - 1);
        for (auto& v : b) v = ub(rng);
        for (auto& v : a) v = ua(rng);
        const JacobiModel sample = JacobiModel::explicit_list(a, b);
        const cdouble z(uE(rng), 1e-2);
        const GreenResult g = [&] {
            TransportSetup spec(sample, L, free_lead, free_lead, 1.0, -1.0, 1.0);
            return effective_green(spec, z.real(), z.imag());
        }();
        const JacobiSlice s = sample.slice(L);
        const cdouble dense = truncated_resolvent_entry(s, L, lp, lp, 1.0, z, M);
        CHECK(std::abs(g.value - dense) / std::abs(dense) < 1e-3);
    }
}

TEST_CASE("left-right symmetry of the transmittance") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ub(-1.0, 1.0), ua(0.5, 1.5), uE(-1.8, 1.8);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t L = 2 + trial % 7;
        std::vector<double> b(L), a(L - 1);
        for (auto& v : b) v = ub(rng);
        for (auto& v : a) v = ua(rng);
        std::vector<double> br(b.rbegin(), b.rend()), ar(a.rbegin(), a.rend());
        const Lead wl = Lead::wide_band(0.8), wr = Lead::free_half_line();
        TransportSetup fwd(JacobiModel::explicit_list(a, b), L, wl, wr, 1.1, -1.0, 1.0);
        TransportSetup bwd(JacobiModel::explicit_list(ar, br), L, wr, wl, 1.1, -1.0, 1.0);
        const double E = uE(rng);
        CHECK(lb_transmittance(fwd, E) ==
              doctest::Approx(lb_transmittance(bwd, E)).epsilon(1e-10));
    }
}

TEST_CASE("window additivity of the steady current") {
    TransportSetup spec(JacobiModel::anderson(1.0, 11), 7, Lead::free_half_line(),
                        Lead::free_half_line(), 0.9, -1.0, 1.0);
    spec.grid = EnergyGrid(-1.0, 1.0, 4000, QuadRule::Midpoint, 0.0);
    const double whole = steady_current(spec).current;
    TransportSetup left(spec.sample, 7, spec.left, spec.right, 0.9, -1.0, 0.25);
    left.grid = EnergyGrid(-1.0, 0.25, 2500, QuadRule::Midpoint, 0.0);
    TransportSetup right(spec.sample, 7, spec.left, spec.right, 0.9, 0.25, 1.0);
    right.grid = EnergyGrid(0.25, 1.0, 1500, QuadRule::Midpoint, 0.0);
    const double split = steady_current(left).current + steady_current(right).current;
    CHECK(whole == doctest::Approx(split).epsilon(2e-4));
}

TEST_CASE("unitarity bound on random junctions") {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> ub(-1.5, 1.5), ua(0.3, 1.8), uE(-3.0, 3.0),
        ul(0.2, 1.6), ug(0.3, 2.5);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t L = 1 + trial % 9;
        std::vector<double> b(L), a(L > 0 ? L - 1 : 0);
        for (auto& v : b) v = ub(rng);
        for (auto& v : a) v = ua(rng);
        const Lead left = trial % 2 ? Lead::free_half_line() : Lead::wide_band(ug(rng));
        const Lead right = trial % 3 ? Lead::wide_band(ug(rng)) : Lead::free_half_line();
        TransportSetup spec(JacobiModel::explicit_list(a, b), L, left, right, ul(rng), -1.0,
                            1.0);
        const double D = lb_transmittance(spec, uE(rng));
        CHECK(D >= 0.0);
        CHECK(D <= 1.0 + 1e-8);
    }
}

TEST_CASE("linear response and its difference quotient") {
    // free 5-site sample with slightly mismatched leads: smooth D
    TransportSetup spec(JacobiModel::free_chain(), 5, Lead::wide_band(1.3),
                        Lead::wide_band(1.3), 1.0, -1.0, 1.0);
    const double mu = 0.3;
    const double lr = linear_response(spec, mu);
    TransportSetup tiny(spec.sample, 5, spec.left, spec.right, 1.0, mu, mu + 1e-4);
    tiny.grid = EnergyGrid(mu, mu + 1e-4, 200, QuadRule::Midpoint, 0.0);
    const double fd = steady_current(tiny).current / 1e-4;
    CHECK(fd == doctest::Approx(lr).epsilon(1e-3));

    TransportSetup gap(JacobiModel::free_chain(), 5, Lead::free_half_line(),
                       Lead::free_half_line(), 1.0, -1.0, 1.0);
    CHECK(linear_response(gap, 3.0) == 0.0);

    // transparent case: D = 1 so the conductance is 1/(2 pi)
    TransportSetup open5(JacobiModel::free_chain(), 5, Lead::free_half_line(),
                         Lead::free_half_line(), 1.0, -1.0, 1.0);
    CHECK(linear_response(open5, 0.0) ==
          doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-10));
}

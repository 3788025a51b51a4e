#include "jtx/crystalline.hpp"

#include <cmath>
#include <numbers>

#include "jtx/transfer.hpp"

namespace jtx {

namespace {

double mismatch_term(cdouble sample_m, cdouble lead_F, double lam_S2, double lam2) {
    const cdouble num = lam_S2 * sample_m - lam2 * lead_F;
    const double n2 = std::norm(num);
    if (n2 == 0.0) return 0.0;  // matched: no reflection from this contact
    const double im_m = lam_S2 * sample_m.imag();
    const double im_F = lam2 * lead_F.imag();
    if (!(im_m > 0.0) || !(im_F > 0.0))
        throw std::logic_error("nonpositive Im at an energy inside the transport set");
    return n2 / (im_m * im_F);
}

double transmittance_impl(const PeriodicJacobi& per, const Lead& left, const Lead& right,
                          double lambda, double E, const CrystallineOptions& opts,
                          bool assume_in_band) {
    if (lambda == 0.0) return 0.0;
    if (!assume_in_band && std::abs(discriminant(per, E)) > 2.0) return 0.0;

    cdouble Fl, Fr;
    try {
        Fl = left.borel_boundary(E);
        Fr = right.borel_boundary(E);
    } catch (const std::out_of_range&) {
        return 0.0;
    }
    const double lam2 = lambda * lambda;
    if (!(Fl.imag() * lam2 > opts.support_tol) || !(Fr.imag() * lam2 > opts.support_tol))
        return 0.0;

    const double lam_S2 = per.lambda_S * per.lambda_S;
    const cdouble mr = m_function(per, Side::Right, E, 0.0).value;
    const cdouble ml = m_function(per, Side::Left, E, 0.0).value;
    if (!(mr.imag() * lam_S2 > opts.support_tol) || !(ml.imag() * lam_S2 > opts.support_tol))
        return 0.0;  // band-edge rounding: treat as outside the set

    const double t_r = mismatch_term(mr, Fr, lam_S2, lam2);
    const double t_l = mismatch_term(ml, Fl, lam_S2, lam2);
    return 1.0 / (1.0 + 0.25 * (t_r + t_l));
}

}  // namespace

double crystalline_transmittance(const PeriodicJacobi& per, const Lead& left, const Lead& right,
                                 double lambda, double E, const CrystallineOptions& opts) {
    return transmittance_impl(per, left, right, lambda, E, opts, false);
}

double crystalline_current(const PeriodicJacobi& per, const Lead& left, const Lead& right,
                           double lambda, double mu_l, double mu_r,
                           const CrystallineOptions& opts) {
    if (!(mu_l < mu_r)) throw std::invalid_argument("window needs mu_l < mu_r");
    if (lambda == 0.0) return 0.0;
    const BandSegments bands = spectrum_in_window(per, mu_l, mu_r, opts.bands);
    const std::size_t n = std::max<std::size_t>(opts.nodes_per_segment, 4);

    double total = 0.0;
    std::vector<double> xs(n), ws(n);
    for (const auto& [a, b] : bands.segments) {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double wsum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double th = std::numbers::pi * (2.0 * static_cast<double>(k) + 1.0) /
                              (2.0 * static_cast<double>(n));
            xs[k] = mid + half * std::cos(th);
            ws[k] = std::sin(th);
            wsum += ws[k];
        }
        // Normalize so constants integrate to the exact segment length; a
        // matched junction then reproduces the band measure to rounding.
        const double scale = (b - a) / wsum;
        std::vector<double> terms(n);
        for (std::size_t k = 0; k < n; ++k) {
            terms[k] = ws[k] * scale *
                       transmittance_impl(per, left, right, lambda, xs[k], opts, true);
        }
        total += pairwise_sum(terms);
    }
    return total / (2.0 * std::numbers::pi);
}

double repeated_sample_current(const PeriodicJacobi& per, const Lead& left, const Lead& right,
                               double lambda, std::size_t N, double mu_l, double mu_r,
                               std::size_t grid_nodes) {
    if (N < 1) throw std::invalid_argument("need N >= 1");
    if (lambda == 0.0) return 0.0;
    TransportSetup spec(restrict_repeated(per, N), N * per.L, left, right, lambda, mu_l, mu_r);
    spec.grid = EnergyGrid(mu_l, mu_r, grid_nodes, QuadRule::Midpoint, 0.0);
    return steady_current(spec).current;
}

}  // namespace jtx

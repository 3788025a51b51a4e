#include "jtx/transport.hpp"

#include <cmath>
#include <numbers>

#include "jtx/serialize.hpp"

namespace jtx {

GreenResult sample_green_corner(std::span<const double> b_diag, std::span<const double> a_off,
                                cdouble z, cdouble sigma_l, cdouble sigma_r) {
    const std::size_t L = b_diag.size();
    if (L == 0) throw std::invalid_argument("empty sample");
    if (L > 1 && a_off.size() < L - 1) throw std::invalid_argument("missing off-diagonals");

    // Determinant continuants with rescaling; log of the off-diagonal product
    // accumulates alongside.
    double log_off = 0.0;
    double sign_off = 1.0;
    cdouble d_prev = 1.0;
    cdouble d_cur = cdouble(b_diag[0]) - z - sigma_l - (L == 1 ? sigma_r : cdouble(0.0));
    double log_det_scale = 0.0;
    for (std::size_t k = 1; k < L; ++k) {
        cdouble dk = cdouble(b_diag[k]) - z;
        if (k == L - 1) dk -= sigma_r;
        const double a = a_off[k - 1];
        const cdouble d_next = dk * d_cur - cdouble(a * a) * d_prev;
        d_prev = d_cur;
        d_cur = d_next;
        const double m = std::max(std::abs(d_cur), std::abs(d_prev));
        if (m > 1e150) {
            d_cur /= m;
            d_prev /= m;
            log_det_scale += std::log(m);
        }
        log_off += std::log(std::abs(a));
        if (a < 0.0) sign_off = -sign_off;
    }

    GreenResult res;
    if (d_cur == cdouble(0.0)) {
        res.finite = false;
        res.value = cdouble(HUGE_VAL, HUGE_VAL);
        return res;
    }
    const double parity = (L % 2 == 1) ? 1.0 : -1.0;  // (-1)^(L+1)
    // G = parity * sign_off * exp(log_off - log_det_scale) / d_cur
    const cdouble inv = 1.0 / d_cur;
    const double log_mag = log_off - log_det_scale + std::log(std::abs(inv));
    if (log_mag > 700.0) {
        res.finite = false;
        res.value = cdouble(HUGE_VAL, HUGE_VAL);
        return res;
    }
    res.value = parity * sign_off * std::exp(log_off - log_det_scale) * inv;
    if (!std::isfinite(res.value.real()) || !std::isfinite(res.value.imag())) res.finite = false;
    return res;
}

GreenResult effective_green(const TransportSetup& spec, double E, double eta) {
    if (!(eta >= 0.0)) throw std::invalid_argument("need eta >= 0");
    const cdouble z(E, eta);
    const cdouble sig_l = spec.lambda * spec.lambda * spec.left.borel(z);
    const cdouble sig_r = spec.lambda * spec.lambda * spec.right.borel(z);
    const JacobiSlice s = spec.sample.slice(spec.L);
    return sample_green_corner(std::span(s.b).first(spec.L),
                               std::span(s.a).first(spec.L > 1 ? spec.L - 1 : 0), z, sig_l,
                               sig_r);
}

namespace {

double transmittance_at(const TransportSetup& spec, double E, double eta, double clip_tol,
                        bool* clipped) {
    if (spec.lambda == 0.0) return 0.0;
    cdouble Fl, Fr;
    try {
        Fl = spec.left.borel(cdouble(E, eta));
        Fr = spec.right.borel(cdouble(E, eta));
    } catch (const std::out_of_range&) {
        return 0.0;  // outside a tabulated lead's range: no ac weight there
    }
    if (!(Fl.imag() > 0.0) || !(Fr.imag() > 0.0)) return 0.0;
    const cdouble z(E, eta);
    const double l2 = spec.lambda * spec.lambda;
    const JacobiSlice s = spec.sample.slice(spec.L);
    const GreenResult g =
        sample_green_corner(std::span(s.b).first(spec.L),
                            std::span(s.a).first(spec.L > 1 ? spec.L - 1 : 0), z, l2 * Fl,
                            l2 * Fr);
    if (!g.finite) return 0.0;
    double D = 4.0 * l2 * l2 * std::norm(g.value) * Fl.imag() * Fr.imag();
    if (D > 1.0) {
        if (clipped && D > 1.0 + clip_tol) *clipped = true;
        D = 1.0;
    }
    if (D < 0.0) D = 0.0;
    return D;
}

double integrate_current(const TransportSetup& spec, const EnergyGrid& grid, double clip_tol,
                         bool* clipped) {
    const auto [xs, ws] = grid.nodes_weights();
    std::vector<double> terms(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        terms[i] = ws[i] * transmittance_at(spec, xs[i], grid.eta, clip_tol, clipped);
    }
    return pairwise_sum(terms) / (2.0 * std::numbers::pi);
}

}  // namespace

double lb_transmittance(const TransportSetup& spec, double E) {
    return transmittance_at(spec, E, spec.grid.eta, 1e-8, nullptr);
}

TransportResult steady_current(const TransportSetup& spec, const SteadyOptions& opts) {
    spec.validate();
    TransportResult out;
    out.eta = spec.grid.eta;
    out.grid_nodes = spec.grid.n;
    out.clip_tol = opts.clip_tol;
    out.support_tol = opts.support_tol;
    out.spec_hash = transport_setup_hash(spec);

    if (!ac_support_contains(spec.left, spec.mu_l, spec.mu_r, spec.grid, opts.support_tol) ||
        !ac_support_contains(spec.right, spec.mu_l, spec.mu_r, spec.grid, opts.support_tol)) {
        out.warnings.push_back("lead ac support does not cover the whole window");
    }

    EnergyGrid grid = spec.grid;
    grid.lo = spec.mu_l;
    grid.hi = spec.mu_r;
    const auto [xs, ws] = grid.nodes_weights();
    out.energies = xs;
    out.transmittance.resize(xs.size());
    bool clipped = false;
    std::vector<double> terms(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out.transmittance[i] = transmittance_at(spec, xs[i], grid.eta, opts.clip_tol, &clipped);
        terms[i] = ws[i] * out.transmittance[i];
    }
    out.current = pairwise_sum(terms) / (2.0 * std::numbers::pi);
    if (clipped) out.warnings.push_back("transmittance exceeded 1 beyond tolerance; clipped");
    if (opts.check_refinement) {
        const double fine = integrate_current(spec, grid.refined(2), opts.clip_tol, nullptr);
        if (std::abs(fine - out.current) >
            opts.refine_tol * std::max(1.0, std::abs(out.current)))
            out.warnings.push_back("current unstable under grid refinement");
    }
    return out;
}

double linear_response(const TransportSetup& spec, double mu) {
    return lb_transmittance(spec, mu) / (2.0 * std::numbers::pi);
}

}  // namespace jtx

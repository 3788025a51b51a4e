#include "jtx/mfunction.hpp"

#include <cmath>

namespace jtx {

namespace {

constexpr double kRescale = 1e140;

Matrix2c cf_period_matrix(std::span<const double> a, std::span<const double> b, cdouble z) {
    // Composition order: the site-1 map is applied last.
    Matrix2c P = Matrix2c::identity();
    for (std::size_t k = 0; k < b.size(); ++k) {
        const Matrix2c Mk{cdouble(0.0), cdouble(1.0), cdouble(-a[k] * a[k]), cdouble(b[k]) - z};
        P = (k == 0) ? Mk : P * Mk;
        if (P.max_abs() > kRescale) P = P * cdouble(1.0 / P.max_abs());
    }
    return P;
}

struct Roots {
    cdouble r1, r2;
    bool parabolic = false;
    bool affine = false;
};

Roots fixed_point_roots(const Matrix2c& P) {
    const cdouble alpha = P.m00, beta = P.m01, gamma = P.m10, delta = P.m11;
    Roots out;
    const double coeff_scale = std::abs(alpha) + std::abs(beta) + std::abs(gamma) + std::abs(delta);
    if (std::abs(gamma) <= 1e-300 * std::max(1.0, coeff_scale)) {
        out.affine = true;
        if (std::abs(delta - alpha) <= 1e-15 * coeff_scale) {
            out.parabolic = true;
            return out;
        }
        out.r1 = out.r2 = beta / (delta - alpha);
        return out;
    }
    const cdouble p = alpha - delta;
    const cdouble disc = p * p + 4.0 * beta * gamma;
    const double disc_scale = std::norm(p) + 4.0 * std::abs(beta) * std::abs(gamma);
    if (std::abs(disc) < 1e-26 * std::max(disc_scale, 1e-300)) {
        out.parabolic = true;
        out.r1 = out.r2 = p / (2.0 * gamma);
        return out;
    }
    cdouble sq = std::sqrt(disc);
    // Avoid cancellation: align sq with p, derive the second root from the
    // product r1 r2 = -beta / gamma.
    if (std::real(std::conj(p) * sq) < 0.0) sq = -sq;
    out.r1 = (p + sq) / (2.0 * gamma);
    out.r2 = (std::abs(out.r1) > 0.0) ? (-beta / gamma) / out.r1 : (p - sq) / (2.0 * gamma);
    return out;
}

/// |gamma w + delta| decides attraction: the multiplier of the Moebius map at
/// a fixed point w is det(P) / (gamma w + delta)^2.
double attraction_weight(const Matrix2c& P, cdouble w) {
    return std::abs(P.m10 * w + P.m11);
}

MFunctionResult fixed_point_impl(std::span<const double> a, std::span<const double> b, cdouble z,
                                 bool allow_regularize) {
    const Matrix2c P = cf_period_matrix(a, b, z);
    const Roots roots = fixed_point_roots(P);
    MFunctionResult res;
    const double eta = z.imag();

    if (roots.parabolic) {
        if (!allow_regularize || eta > 0.0) {
            res.value = roots.r1;
            res.regularized = true;
            return res;
        }
        res = fixed_point_impl(a, b, cdouble(z.real(), 1e-8), false);
        res.regularized = true;
        return res;
    }
    if (roots.affine) {
        res.value = roots.r1;
        return res;
    }

    const double im1 = roots.r1.imag(), im2 = roots.r2.imag();
    if (eta > 0.0) {
        res.value = (im1 >= im2) ? roots.r1 : roots.r2;
        return res;
    }
    // Boundary value: inside a band the roots are conjugate, pick Im > 0;
    // in a gap both are real, pick the attracting one.
    const double im_tol = 1e-14 * (1.0 + std::max(std::abs(roots.r1), std::abs(roots.r2)));
    if (std::max(im1, im2) > im_tol) {
        res.value = (im1 >= im2) ? roots.r1 : roots.r2;
        return res;
    }
    const double w1 = attraction_weight(P, roots.r1), w2 = attraction_weight(P, roots.r2);
    if (allow_regularize && std::abs(w1 - w2) <= 1e-12 * (w1 + w2)) {
        res = fixed_point_impl(a, b, cdouble(z.real(), 1e-8), false);
        res.regularized = true;
        return res;
    }
    res.value = (w1 >= w2) ? roots.r1 : roots.r2;
    return res;
}

}  // namespace

MFunctionResult half_line_fixed_point(std::span<const double> a, std::span<const double> b,
                                      cdouble z) {
    if (b.empty() || a.size() != b.size())
        throw std::invalid_argument("fixed point needs one full period of parameters");
    return fixed_point_impl(a, b, z, true);
}

MFunctionResult m_function(const PeriodicJacobi& per, Side side, double E, double eta) {
    if (!(eta >= 0.0)) throw std::invalid_argument("need eta >= 0");
    const cdouble z(E, eta);
    if (side == Side::Right) return half_line_fixed_point(per.a, per.b, z);
    const PeriodicJacobi rev = per.reversed();
    return half_line_fixed_point(rev.a, rev.b, z);
}

double fixed_point_residual(std::span<const double> a, std::span<const double> b, cdouble z,
                            cdouble m) {
    const Matrix2c P = cf_period_matrix(a, b, z);
    const cdouble alpha = P.m00, beta = P.m01, gamma = P.m10, delta = P.m11;
    const cdouble r = gamma * m * m + (delta - alpha) * m - beta;
    const double scale = std::abs(gamma) * std::norm(m) + std::abs(delta - alpha) * std::abs(m) +
                         std::abs(beta) + 1e-300;
    return std::abs(r) / scale;
}

}  // namespace jtx

#include "jtx/borel.hpp"

#include <cmath>
#include <numbers>

#include "jtx/mfunction.hpp"
#include "jtx/transfer.hpp"

namespace jtx {

namespace {

/// Backward recurrence from level `depth` down to 1. a2[k-1] couples level k
/// to level k+1 and may be 0 at the last stored level of a finite list.
cdouble cf_backward(const std::vector<double>& b, const std::vector<double>& a2, cdouble z,
                    std::size_t depth, cdouble tail) {
    cdouble g = tail;
    for (std::size_t k = depth; k >= 1; --k) {
        g = 1.0 / (cdouble(b[k - 1]) - z - a2[k - 1] * g);
    }
    return g;
}

}  // namespace

BorelResult borel_transform(const DiscreteMeasure& nu, cdouble z) {
    if (z.imag() < 0.0) throw std::domain_error("Borel transform needs Im z >= 0");
    if (z.imag() == 0.0) {
        for (double x : nu.points) {
            if (x == z.real())
                throw std::domain_error("real evaluation point lies on the measure support");
        }
    }
    cdouble sum = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        sum += nu.weights[i] / (cdouble(nu.points[i]) - z);
    }
    return {sum, false};
}

BorelResult borel_transform(const JacobiModel& model, cdouble z, const BorelOptions& opts) {
    if (!(z.imag() > 0.0))
        throw std::domain_error("model Borel transform needs Im z > 0");
    TailStrategy tail = opts.tail;
    if (tail == TailStrategy::Auto)
        tail = model.period() ? TailStrategy::SelfSimilar : TailStrategy::Zero;

    if (tail == TailStrategy::SelfSimilar) {
        const auto p = model.period();
        if (!p) throw std::invalid_argument("self-similar tail needs a periodic model");
        const JacobiSlice s = model.slice(*p);
        return {half_line_fixed_point(s.a, s.b, z).value, false};
    }

    std::size_t depth = opts.depth;
    if (const auto len = model.length()) depth = std::min(depth, *len);
    if (depth == 0) throw std::invalid_argument("zero continued-fraction depth");
    const JacobiSlice s = model.slice(depth);
    std::vector<double> a2(depth, 0.0);
    for (std::size_t k = 0; k < depth && k < s.a.size(); ++k) a2[k] = s.a[k] * s.a[k];

    BorelResult r{cf_backward(s.b, a2, z, depth, cdouble(0.0)), false};
    const bool exact = model.length() && depth == *model.length();
    if (opts.check_depth && !exact && depth >= 2) {
        const cdouble half = cf_backward(s.b, a2, z, depth / 2, cdouble(0.0));
        if (std::abs(half - r.value) > opts.depth_check_tol * std::max(1.0, std::abs(r.value)))
            r.depth_warning = true;
    }
    return r;
}

double ac_density(const JacobiModel& model, double E, double eta, const BorelOptions& opts) {
    if (!(eta > 0.0)) throw std::domain_error("ac density probe needs eta > 0");
    const BorelResult F = borel_transform(model, cdouble(E, eta), opts);
    return F.value.imag() / std::numbers::pi;
}

double weak_density_approx(const JacobiModel& model, double E, std::size_t n) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    const std::vector<double> u = eigenfunction(model, E, n, 0.0);
    const double a_n = model.a(n);
    const double denom = u[n] * u[n] + a_n * a_n * u[n + 1] * u[n + 1];
    return 1.0 / (std::numbers::pi * denom);
}

}  // namespace jtx

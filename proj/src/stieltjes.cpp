#include "jtx/stieltjes.hpp"

#include <cmath>

namespace jtx {

namespace {

double dot(const std::vector<double>& w, const std::vector<double>& f,
           const std::vector<double>& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f[i] * g[i];
    return s;
}

double moment1(const std::vector<double>& w, const std::vector<double>& x,
               const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * x[i] * f[i] * f[i];
    return s;
}

}  // namespace

JacobiModel measure_to_jacobi(const DiscreteMeasure& nu, std::size_t n_max) {
    const std::size_t k = nu.size();
    if (n_max < 1) throw std::invalid_argument("need n_max >= 1");
    if (n_max > k)
        throw std::invalid_argument("rank deficiency: a " + std::to_string(k) +
                                    "-point measure supports at most " + std::to_string(k) +
                                    " recurrence steps");

    const auto& x = nu.points;
    const auto& w = nu.weights;
    double scale = 1.0;
    for (double xi : x) scale = std::max(scale, std::abs(xi));

    std::vector<double> b(n_max), a(n_max > 0 ? n_max - 1 : 0);
    std::vector<std::vector<double>> p;  // orthonormal polynomial values on the points
    p.emplace_back(k, 1.0);              // p_0 = 1 (the measure is normalized)

    b[0] = moment1(w, x, p[0]);
    std::vector<double> q(k);
    for (std::size_t j = 1; j < n_max; ++j) {
        const auto& pj = p[j - 1];
        const double aprev = j >= 2 ? a[j - 2] : 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            q[i] = (x[i] - b[j - 1]) * pj[i] - (j >= 2 ? aprev * p[j - 2][i] : 0.0);
        }
        // Two reorthogonalization sweeps keep the basis orthogonal even for
        // clustered support points.
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (const auto& pm : p) {
                const double c = dot(w, q, pm);
                for (std::size_t i = 0; i < k; ++i) q[i] -= c * pm[i];
            }
        }
        const double nrm2 = dot(w, q, q);
        if (!(nrm2 > k * 1e-28 * scale * scale)) throw StieltjesBreakdown(j);
        a[j - 1] = std::sqrt(nrm2);
        auto& pnew = p.emplace_back(k);
        for (std::size_t i = 0; i < k; ++i) pnew[i] = q[i] / a[j - 1];
        b[j] = moment1(w, x, pnew);
    }
    return JacobiModel::explicit_list(std::move(a), std::move(b));
}

}  // namespace jtx

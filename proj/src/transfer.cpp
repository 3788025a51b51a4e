#include "jtx/transfer.hpp"

#include <cmath>

namespace jtx {

namespace {

constexpr double kRescaleThreshold = 1e150;

ScaledMatrix2 scaled_product(std::span<const double> a, std::span<const double> b, double E,
                             std::size_t* largest_plain = nullptr) {
    ScaledMatrix2 acc{Matrix2::identity(), 0.0};
    const std::size_t n = b.size();
    if (largest_plain) *largest_plain = n;
    bool still_plain = true;
    for (std::size_t k = 0; k < n; ++k) {
        acc.mat = one_step_matrix(E, a[k], b[k]) * acc.mat;
        const double m = acc.mat.max_abs();
        if (m > kRescaleThreshold) {
            acc.mat = acc.mat * (1.0 / m);
            acc.log_scale += std::log(m);
        }
        if (largest_plain && still_plain && !acc.representable()) {
            *largest_plain = k;  // k factors applied at previous step
            still_plain = false;
        }
    }
    return acc;
}

}  // namespace

Matrix2 one_step_matrix(double E, double a_x, double b_x) {
    if (!(a_x > 0.0)) throw std::domain_error("one-step matrix needs a positive off-diagonal");
    const double inv = 1.0 / a_x;
    return {(E - b_x) * inv, -inv, a_x, 0.0};
}

Matrix2 transfer_matrix(std::span<const double> a, std::span<const double> b, double E) {
    std::size_t largest = 0;
    ScaledMatrix2 acc = scaled_product(a, b, E, &largest);
    if (!acc.representable()) throw TransferOverflow(largest, b.size());
    return acc.value();
}

Matrix2 transfer_matrix(const JacobiModel& model, double E, std::size_t n) {
    if (n < 1) throw std::invalid_argument("transfer product needs n >= 1");
    const JacobiSlice s = model.slice(n);
    if (s.a.size() < n) throw std::out_of_range("model too short for transfer product");
    return transfer_matrix(std::span(s.a).first(n), std::span(s.b).first(n), E);
}

ScaledMatrix2 transfer_matrix_scaled(std::span<const double> a, std::span<const double> b, double E) {
    return scaled_product(a, b, E);
}

ScaledMatrix2 transfer_matrix_scaled(const JacobiModel& model, double E, std::size_t n) {
    if (n < 1) throw std::invalid_argument("transfer product needs n >= 1");
    const JacobiSlice s = model.slice(n);
    if (s.a.size() < n) throw std::out_of_range("model too short for transfer product");
    return scaled_product(std::span(s.a).first(n), std::span(s.b).first(n), E);
}

std::vector<double> eigenfunction(const JacobiModel& model, double E, std::size_t n_max,
                                  double theta) {
    if (n_max < 1) throw std::invalid_argument("eigenfunction needs n_max >= 1");
    const JacobiSlice s = model.slice(n_max);
    if (s.a.size() < n_max) throw std::out_of_range("model too short for eigenfunction");
    std::vector<double> u(n_max + 2);
    u[0] = theta;
    u[1] = 1.0;
    double a_prev = 1.0;  // boundary convention
    for (std::size_t k = 1; k <= n_max; ++k) {
        const double a_k = s.a[k - 1];
        u[k + 1] = ((E - s.b[k - 1]) * u[k] - a_prev * u[k - 1]) / a_k;
        a_prev = a_k;
    }
    return u;
}

double discriminant(const PeriodicJacobi& per, double E) {
    // A negative internal coupling is gauge-equivalent to |lambda_S| up to the
    // sign of the trace; the band set {|disc| <= 2} is unchanged either way.
    std::vector<double> a_abs(per.a.size());
    for (std::size_t i = 0; i < per.a.size(); ++i) a_abs[i] = std::abs(per.a[i]);
    const ScaledMatrix2 acc = transfer_matrix_scaled(a_abs, per.b, E);
    const double tr = acc.mat.trace();
    const double log_mag = std::log(std::abs(tr)) + acc.log_scale;
    if (log_mag > 708.0) return tr > 0 ? HUGE_VAL : -HUGE_VAL;
    return tr * std::exp(acc.log_scale);
}

}  // namespace jtx

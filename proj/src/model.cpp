#include "jtx/model.hpp"

#include <cmath>
#include <numbers>

#include "jtx/rng.hpp"

namespace jtx {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::ExplicitList: return "explicit-list";
        case ModelKind::Free: return "free";
        case ModelKind::Anderson: return "anderson";
        case ModelKind::AlmostMathieu: return "almost-mathieu";
        case ModelKind::Fibonacci: return "fibonacci";
    }
    return "unknown";
}

JacobiModel JacobiModel::explicit_list(std::vector<double> a, std::vector<double> b) {
    if (b.empty()) throw std::invalid_argument("explicit model needs at least one diagonal entry");
    if (a.size() + 1 != b.size() && a.size() != b.size())
        throw std::invalid_argument("explicit model needs len(a) = len(b)-1 or len(b)");
    JacobiModel m;
    m.kind_ = ModelKind::ExplicitList;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0.0)) throw std::domain_error("off-diagonal a_" + std::to_string(i + 1) + " must be positive");
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double an = i < a.size() ? a[i] : 0.0;
        m.check_bound(an, b[i], i + 1);
    }
    m.a_ = std::move(a);
    m.b_ = std::move(b);
    return m;
}

JacobiModel JacobiModel::free_chain() {
    JacobiModel m;
    m.kind_ = ModelKind::Free;
    return m;
}

JacobiModel JacobiModel::anderson(double width, std::uint64_t seed) {
    if (!(width >= 0.0)) throw std::domain_error("disorder width must be nonnegative");
    JacobiModel m;
    m.kind_ = ModelKind::Anderson;
    m.anderson_ = {width, seed};
    return m;
}

JacobiModel JacobiModel::almost_mathieu(double coupling, double alpha, double theta) {
    JacobiModel m;
    m.kind_ = ModelKind::AlmostMathieu;
    m.mathieu_ = {coupling, alpha, theta};
    return m;
}

JacobiModel JacobiModel::fibonacci(double coupling) {
    JacobiModel m;
    m.kind_ = ModelKind::Fibonacci;
    m.fibonacci_ = {coupling, (std::sqrt(5.0) - 1.0) / 2.0};
    return m;
}

std::optional<std::size_t> JacobiModel::length() const {
    if (kind_ == ModelKind::ExplicitList) return b_.size();
    return std::nullopt;
}

std::optional<std::size_t> JacobiModel::period() const {
    if (kind_ == ModelKind::Free) return 1;
    return std::nullopt;
}

void JacobiModel::set_bound(double bound) {
    if (!(bound > 0.0)) throw std::domain_error("bound must be positive");
    bound_ = bound;
}

void JacobiModel::check_bound(double a_n, double b_n, std::size_t n) const {
    if (!(std::abs(a_n) + std::abs(b_n) <= bound_))
        throw std::domain_error("Jacobi parameters at site " + std::to_string(n) +
                                " exceed the boundedness cap " + std::to_string(bound_));
}

double JacobiModel::a(std::size_t n) const {
    if (n == 0) throw std::out_of_range("site indices are 1-based");
    switch (kind_) {
        case ModelKind::ExplicitList:
            if (n > a_.size()) throw std::out_of_range("off-diagonal index past end of explicit model");
            return a_[n - 1];
        default:
            return 1.0;  // every generated family has a_n = 1
    }
}

double JacobiModel::b(std::size_t n) const {
    if (n == 0) throw std::out_of_range("site indices are 1-based");
    switch (kind_) {
        case ModelKind::ExplicitList:
            if (n > b_.size()) throw std::out_of_range("diagonal index past end of explicit model");
            return b_[n - 1];
        case ModelKind::Free:
            return 0.0;
        case ModelKind::Anderson: {
            Xoshiro256pp rng(anderson_.seed);
            double v = 0.0;
            for (std::size_t k = 0; k < n; ++k) v = anderson_.width * (rng.uniform01() - 0.5);
            check_bound(1.0, v, n);
            return v;
        }
        case ModelKind::AlmostMathieu: {
            const double v = 2.0 * mathieu_.coupling *
                             std::cos(2.0 * std::numbers::pi * (mathieu_.alpha * static_cast<double>(n) + mathieu_.theta));
            check_bound(1.0, v, n);
            return v;
        }
        case ModelKind::Fibonacci: {
            const double frac = std::fmod(fibonacci_.alpha * static_cast<double>(n), 1.0);
            const double v = (frac >= 1.0 - fibonacci_.alpha) ? fibonacci_.coupling : 0.0;
            check_bound(1.0, v, n);
            return v;
        }
    }
    throw std::logic_error("unreachable");
}

JacobiSlice JacobiModel::slice(std::size_t n) const {
    JacobiSlice s;
    if (kind_ == ModelKind::ExplicitList) {
        if (n > b_.size()) throw std::out_of_range("slice past end of explicit model");
        s.a.assign(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(std::min(n, a_.size())));
        s.b.assign(b_.begin(), b_.begin() + static_cast<std::ptrdiff_t>(n));
        return s;
    }
    s.a.assign(n, 1.0);
    s.b.resize(n);
    switch (kind_) {
        case ModelKind::Free:
            for (auto& v : s.b) v = 0.0;
            break;
        case ModelKind::Anderson: {
            Xoshiro256pp rng(anderson_.seed);
            for (std::size_t k = 0; k < n; ++k) {
                s.b[k] = anderson_.width * (rng.uniform01() - 0.5);
                check_bound(1.0, s.b[k], k + 1);
            }
            break;
        }
        default:
            for (std::size_t k = 1; k <= n; ++k) s.b[k - 1] = b(k);
            break;
    }
    return s;
}

DiscreteMeasure::DiscreteMeasure(std::vector<double> pts, std::vector<double> wts)
    : points(std::move(pts)), weights(std::move(wts)) {
    if (points.empty()) throw std::invalid_argument("measure needs at least one point");
    if (points.size() != weights.size())
        throw std::invalid_argument("points and weights must have equal length");
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] < points[i + 1]))
            throw std::invalid_argument("support points must be strictly increasing");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("weights must sum to 1 within 1e-12");
}

PeriodicJacobi::PeriodicJacobi(std::vector<double> a_in, std::vector<double> b_in)
    : L(b_in.size()), a(std::move(a_in)), b(std::move(b_in)) {
    if (L == 0) throw std::invalid_argument("period must be at least 1");
    if (a.size() != L) throw std::invalid_argument("need exactly L off-diagonal entries");
    for (std::size_t i = 0; i + 1 < L; ++i) {
        if (!(a[i] > 0.0)) throw std::domain_error("interior off-diagonals must be positive");
    }
    lambda_S = a[L - 1];
    if (lambda_S == 0.0) throw std::domain_error("internal coupling lambda_S must be nonzero");
}

PeriodicJacobi PeriodicJacobi::reversed() const {
    // Left half-line block: diagonals reversed, interior couplings reversed,
    // the internal coupling stays in last position.
    std::vector<double> ra(L), rb(b.rbegin(), b.rend());
    for (std::size_t i = 0; i + 1 < L; ++i) ra[i] = a[L - 2 - i];
    ra[L - 1] = a[L - 1];
    return PeriodicJacobi(std::move(ra), std::move(rb));
}

PeriodicJacobi periodize(const JacobiModel& sample, std::size_t L, double lambda_S) {
    if (L < 1) throw std::invalid_argument("period must be at least 1");
    if (lambda_S == 0.0) throw std::domain_error("internal coupling lambda_S must be nonzero");
    JacobiSlice s = sample.slice(L);
    if (s.b.size() < L || s.a.size() + 1 < L)
        throw std::invalid_argument("sample too short for the requested period");
    std::vector<double> a(L), b(s.b.begin(), s.b.begin() + static_cast<std::ptrdiff_t>(L));
    for (std::size_t i = 0; i + 1 < L; ++i) a[i] = s.a[i];
    a[L - 1] = lambda_S;
    return PeriodicJacobi(std::move(a), std::move(b));
}

JacobiModel restrict_repeated(const PeriodicJacobi& per, std::size_t N) {
    if (N < 1) throw std::invalid_argument("need at least one repetition");
    const std::size_t n = N * per.L;
    std::vector<double> a, b;
    a.reserve(n - 1);
    b.reserve(n);
    for (std::size_t rep = 0; rep < N; ++rep) {
        for (std::size_t x = 0; x < per.L; ++x) {
            b.push_back(per.b[x]);
            if (rep * per.L + x + 1 < n) a.push_back(std::abs(per.a[x]));
        }
    }
    return JacobiModel::explicit_list(std::move(a), std::move(b));
}

}  // namespace jtx

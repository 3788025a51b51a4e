#include "jtx/lead.hpp"

#include <cmath>

namespace jtx {

namespace {

/// Shape-preserving (Fritsch-Carlson) slopes for cubic Hermite interpolation.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> m(n, 0.0);
    if (n == 1) return m;
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        m[0] = m[1] = d[0];
        return m;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) s = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) s = 3.0 * d0;
        return s;
    };
    m[0] = endpoint(h[0], h[1], d[0], d[1]);
    m[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    return m;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& m, double t) {
    std::size_t i = std::upper_bound(x.begin(), x.end(), t) - x.begin();
    if (i == 0) i = 1;
    if (i == x.size()) i = x.size() - 1;
    const std::size_t k = i - 1;
    const double h = x[k + 1] - x[k];
    const double s = (t - x[k]) / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * y[k] + h10 * h * m[k] + h01 * y[k + 1] + h11 * h * m[k + 1];
}

/// Herglotz branch of (-z + sqrt(z^2 - 4)) / 2 on the closed upper half plane.
cdouble free_half_line_F(cdouble z) {
    if (z.imag() > 0.0) {
        const cdouble s = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
        return 0.5 * (-z + s);
    }
    const double E = z.real();
    if (std::abs(E) <= 2.0) return cdouble(-E / 2.0, 0.5 * std::sqrt(4.0 - E * E));
    const double s = std::sqrt(E * E - 4.0);
    return cdouble(E > 2.0 ? 0.5 * (-E + s) : 0.5 * (-E - s), 0.0);
}

}  // namespace

std::string to_string(LeadKind kind) {
    switch (kind) {
        case LeadKind::FreeHalfLine: return "free-half-line";
        case LeadKind::WideBand: return "wide-band";
        case LeadKind::PeriodicHalfLine: return "periodic-half-line";
        case LeadKind::Table: return "table";
    }
    return "unknown";
}

Lead Lead::free_half_line() {
    Lead l;
    l.kind_ = LeadKind::FreeHalfLine;
    return l;
}

Lead Lead::wide_band(double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("wide-band lead needs gamma > 0");
    Lead l;
    l.kind_ = LeadKind::WideBand;
    l.gamma_ = gamma;
    return l;
}

Lead Lead::periodic_half_line(PeriodicJacobi per, Side side) {
    Lead l;
    l.kind_ = LeadKind::PeriodicHalfLine;
    l.per_ = std::move(per);
    l.side_ = side;
    return l;
}

Lead Lead::table(std::vector<double> energies, std::vector<cdouble> values) {
    if (energies.size() != values.size() || energies.size() < 2)
        throw std::invalid_argument("table lead needs at least two (E, F) samples");
    for (std::size_t i = 0; i + 1 < energies.size(); ++i) {
        if (!(energies[i] < energies[i + 1]))
            throw std::invalid_argument("table energies must be strictly increasing");
    }
    Lead l;
    l.kind_ = LeadKind::Table;
    l.tab_E_ = std::move(energies);
    l.tab_F_ = std::move(values);
    l.tabRe_.resize(l.tab_F_.size());
    l.tabIm_.resize(l.tab_F_.size());
    for (std::size_t i = 0; i < l.tab_F_.size(); ++i) {
        l.tabRe_[i] = l.tab_F_[i].real();
        l.tabIm_[i] = l.tab_F_[i].imag();
        if (l.tabIm_[i] < 0.0) throw std::domain_error("table lead needs Im F >= 0");
    }
    l.dRe_ = pchip_slopes(l.tab_E_, l.tabRe_);
    l.dIm_ = pchip_slopes(l.tab_E_, l.tabIm_);
    return l;
}

cdouble Lead::borel_boundary(double E) const {
    return borel(cdouble(E, 0.0));
}

cdouble Lead::borel(cdouble z) const {
    if (z.imag() < 0.0) throw std::domain_error("lead Borel transform needs Im z >= 0");
    switch (kind_) {
        case LeadKind::FreeHalfLine:
            return free_half_line_F(z);
        case LeadKind::WideBand:
            return cdouble(0.0, gamma_);
        case LeadKind::PeriodicHalfLine:
            return m_function(*per_, side_, z.real(), z.imag()).value;
        case LeadKind::Table: {
            const double E = z.real();
            if (E < tab_E_.front() || E > tab_E_.back())
                throw std::out_of_range("energy outside the tabulated lead range");
            const double vr = pchip_eval(tab_E_, tabRe_, dRe_, E);
            double vi = pchip_eval(tab_E_, tabIm_, dIm_, E);
            if (vi < 0.0) vi = 0.0;
            return cdouble(vr, vi);
        }
    }
    throw std::logic_error("unreachable");
}

JacobiSlice Lead::truncated_parameters(std::size_t depth) const {
    if (depth < 1) throw std::invalid_argument("need depth >= 1");
    JacobiSlice s;
    s.a.resize(depth);
    s.b.resize(depth);
    switch (kind_) {
        case LeadKind::FreeHalfLine:
            for (std::size_t k = 0; k < depth; ++k) {
                s.a[k] = 1.0;
                s.b[k] = 0.0;
            }
            return s;
        case LeadKind::PeriodicHalfLine: {
            const PeriodicJacobi block = side_ == Side::Right ? *per_ : per_->reversed();
            for (std::size_t k = 0; k < depth; ++k) {
                s.a[k] = block.a[k % block.L];
                s.b[k] = block.b[k % block.L];
            }
            return s;
        }
        default:
            throw std::invalid_argument(to_string(kind_) +
                                        " lead does not admit a finite truncation");
    }
}

bool ac_support_contains(const Lead& lead, double mu_l, double mu_r, const EnergyGrid& grid,
                         double tol) {
    if (!(mu_l < mu_r)) throw std::invalid_argument("window needs mu_l < mu_r");
    const EnergyGrid win(mu_l, mu_r, grid.n, QuadRule::Midpoint, grid.eta);
    for (double E : win.nodes()) {
        cdouble F;
        try {
            F = lead.borel_boundary(E);
        } catch (const std::out_of_range&) {
            return false;  // tabulated lead with no data here
        }
        if (!(F.imag() > tol)) return false;
    }
    return true;
}

}  // namespace jtx

#include "jtx/thouless.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jtx/transfer.hpp"

namespace jtx {

namespace {

double bisect_edge(const PeriodicJacobi& per, double level, double lo, double hi, double flo,
                   double tol) {
    // Root of disc(E) - level; flo is disc(lo) - level.
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = discriminant(per, mid) - level;
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

BandSegments pass(const PeriodicJacobi& per, double lo, double hi, std::size_t nodes,
                  double bisect_tol) {
    BandSegments out;
    out.nodes_used = nodes;
    const double h = (hi - lo) / static_cast<double>(nodes);
    std::vector<double> edges{lo, hi};
    double f_prev = discriminant(per, lo);
    for (std::size_t i = 1; i <= nodes; ++i) {
        const double E = (i == nodes) ? hi : lo + static_cast<double>(i) * h;
        const double f = discriminant(per, E);
        for (double level : {2.0, -2.0}) {
            const bool s_prev = (f_prev - level) <= 0.0;
            const bool s_cur = (f - level) <= 0.0;
            if (s_prev != s_cur)
                edges.push_back(bisect_edge(per, level, E - h, E, f_prev - level, bisect_tol));
        }
        f_prev = f;
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        if (b - a <= 0.0) continue;
        const double d = discriminant(per, 0.5 * (a + b));
        if (std::abs(d) <= 2.0) {
            if (!out.segments.empty() && out.segments.back().second >= a - 1e-14) {
                out.segments.back().second = b;  // merge touching bands
            } else {
                out.segments.emplace_back(a, b);
            }
            out.measure += b - a;
        }
    }
    return out;
}

}  // namespace

BandSegments spectrum_in_window(const PeriodicJacobi& per, double lo, double hi,
                                const BandOptions& opts) {
    if (!(lo < hi)) throw std::invalid_argument("window needs lo < hi");
    std::size_t nodes = opts.initial_nodes;
    if (nodes == 0) {
        // The discriminant is a degree-L polynomial: at least a few dozen
        // nodes per possible band.
        nodes = std::max<std::size_t>(1024, 64 * per.L);
        nodes = std::min(nodes, opts.max_nodes);
    }
    BandSegments cur = pass(per, lo, hi, nodes, opts.bisect_tol);
    while (true) {
        if (nodes >= opts.max_nodes) {
            cur.converged = false;
            return cur;
        }
        nodes = std::min(nodes * 2, opts.max_nodes);
        BandSegments next = pass(per, lo, hi, nodes, opts.bisect_tol);
        const bool stable = std::abs(next.measure - cur.measure) <= opts.stabilize_tol;
        cur = std::move(next);
        if (stable) return cur;
    }
}

double thouless_current(const PeriodicJacobi& per, double mu_l, double mu_r,
                        const BandOptions& opts) {
    if (!(mu_l < mu_r)) throw std::invalid_argument("window needs mu_l < mu_r");
    const BandSegments bands = spectrum_in_window(per, mu_l, mu_r, opts);
    return bands.measure / (2.0 * std::numbers::pi);
}

}  // namespace jtx

#pragma once

#include <utility>
#include <vector>

#include "jtx/model.hpp"

namespace jtx {

struct BandOptions {
    std::size_t initial_nodes = 0;   ///< 0: scaled with the period automatically
    std::size_t max_nodes = 1 << 21; ///< refinement cap for the bracketing grid
    double stabilize_tol = 1e-8;     ///< stop once the measure moves less than this
    double bisect_tol = 1e-10;       ///< edge location tolerance
};

struct BandSegments {
    std::vector<std::pair<double, double>> segments;  ///< in-band intervals, sorted
    double measure = 0.0;
    bool converged = true;      ///< false when the refinement cap was reached
    std::size_t nodes_used = 0;
};

/// Spectrum of the periodized operator inside a window, as the sublevel set
/// {|disc(E)| <= 2}. Edges are located by sign-change bracketing plus
/// bisection; the bracketing grid is refined until the total measure
/// stabilizes (bands narrower than the final grid step are lost, which only
/// underestimates exponentially small spectra).
BandSegments spectrum_in_window(const PeriodicJacobi& per, double lo, double hi,
                                const BandOptions& opts = {});

/// Thouless steady current: (1/2pi) * Lebesgue measure of the periodized
/// spectrum inside the window.
double thouless_current(const PeriodicJacobi& per, double mu_l, double mu_r,
                        const BandOptions& opts = {});

}  // namespace jtx

#pragma once

#include "jtx/lead.hpp"
#include "jtx/thouless.hpp"
#include "jtx/transport.hpp"

namespace jtx {

struct CrystallineOptions {
    std::size_t nodes_per_segment = 200;  ///< endpoint-avoiding nodes per band
    double support_tol = 1e-12;           ///< Im threshold for "inside the ac support"
    BandOptions bands{};
};

/// Crystalline transmittance D_Cr(E): 1 on nothing less than perfectly matched
/// reservoirs, 0 outside the periodized spectrum or the leads' ac supports,
/// otherwise the mismatch formula in the Weyl m-functions of the periodized
/// operator and the leads' boundary Borel transforms.
double crystalline_transmittance(const PeriodicJacobi& per, const Lead& left, const Lead& right,
                                 double lambda, double E,
                                 const CrystallineOptions& opts = {});

/// N -> infinity limit of the repeated-sample current: integral of D_Cr over
/// the periodized spectrum inside the window. Per-band Gauss-Chebyshev-type
/// quadrature (nodes clustered at, but avoiding, the band edges; weights
/// normalized to the exact segment length).
double crystalline_current(const PeriodicJacobi& per, const Lead& left, const Lead& right,
                           double lambda, double mu_l, double mu_r,
                           const CrystallineOptions& opts = {});

/// Landauer-Buttiker current of N repetitions of the periodized sample.
double repeated_sample_current(const PeriodicJacobi& per, const Lead& left, const Lead& right,
                               double lambda, std::size_t N, double mu_l, double mu_r,
                               std::size_t grid_nodes = 2000);

}  // namespace jtx

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "jtx/grid.hpp"
#include "jtx/mat2.hpp"
#include "jtx/mfunction.hpp"
#include "jtx/model.hpp"

namespace jtx {

enum class LeadKind { FreeHalfLine, WideBand, PeriodicHalfLine, Table };

std::string to_string(LeadKind kind);

/// Reservoir abstraction: exposes the boundary value F(E + i0) of its Borel
/// transform (Im F >= 0) and thereby its ac support {Im F > tol}.
class Lead {
public:
    static Lead free_half_line();
    static Lead wide_band(double gamma);
    static Lead periodic_half_line(PeriodicJacobi per, Side side);
    /// Tabulated boundary values; monotone-cubic interpolation in between,
    /// range error outside.
    static Lead table(std::vector<double> energies, std::vector<cdouble> values);

    LeadKind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    const std::optional<PeriodicJacobi>& periodic_block() const { return per_; }
    Side side() const { return side_; }
    const std::vector<double>& table_energies() const { return tab_E_; }
    const std::vector<cdouble>& table_values() const { return tab_F_; }

    /// Boundary value F(E + i0).
    cdouble borel_boundary(double E) const;
    /// F at complex z with Im z >= 0. Table leads fall back to boundary values
    /// at Re z (no analytic continuation of sampled data).
    cdouble borel(cdouble z) const;

    /// Whether a finite Dirichlet truncation of the reservoir exists (needed
    /// by the time-domain oracle).
    bool supports_truncation() const {
        return kind_ == LeadKind::FreeHalfLine || kind_ == LeadKind::PeriodicHalfLine;
    }
    /// Jacobi parameters of the first `depth` reservoir sites, boundary first.
    JacobiSlice truncated_parameters(std::size_t depth) const;

private:
    Lead() = default;

    LeadKind kind_ = LeadKind::FreeHalfLine;
    double gamma_ = 1.0;
    std::optional<PeriodicJacobi> per_;
    Side side_ = Side::Right;
    std::vector<double> tab_E_;
    std::vector<cdouble> tab_F_;
    std::vector<double> tabRe_, tabIm_;
    std::vector<double> dRe_, dIm_;  // pchip slopes
};

/// True iff Im F(E + i0) exceeds `tol` at every grid node inside the window.
bool ac_support_contains(const Lead& lead, double mu_l, double mu_r, const EnergyGrid& grid,
                         double tol = 1e-8);

}  // namespace jtx

#include "jtx/probes.hpp"

#include <cmath>

#include "jtx/transfer.hpp"

namespace jtx {

namespace {

double integral_on(const JacobiSlice& s, std::size_t L, const EnergyGrid& grid) {
    const auto [xs, ws] = grid.nodes_weights();
    std::vector<double> terms(xs.size());
    const std::span<const double> a(s.a.data(), L), b(s.b.data(), L);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const ScaledMatrix2 T = transfer_matrix_scaled(a, b, xs[i]);
        terms[i] = ws[i] * std::exp(-2.0 * T.log_norm());
    }
    return pairwise_sum(terms);
}

}  // namespace

IntegralResult tm_inverse_square_integral(const JacobiModel& model, std::size_t L,
                                          const EnergyGrid& grid,
                                          const TmIntegralOptions& opts) {
    if (L < 1) throw std::invalid_argument("need L >= 1");
    grid.validate();
    const JacobiSlice s = model.slice(L);
    if (s.a.size() < L) throw std::out_of_range("model too short for the requested L");

    IntegralResult res;
    res.value = integral_on(s, L, grid);
    if (opts.check_refinement) {
        const double fine = integral_on(s, L, grid.refined(2));
        if (std::abs(fine - res.value) >
            opts.refine_tol * std::max(std::abs(res.value), 1e-300)) {
            res.refinement_warning = true;
            res.value = fine;
        }
    }
    return res;
}

std::vector<SigmaAcNode> sigma_ac_probe(const JacobiModel& model, const EnergyGrid& grid,
                                        const std::vector<std::size_t>& L_list,
                                        double threshold) {
    if (L_list.empty()) throw std::invalid_argument("need at least one L");
    for (std::size_t i = 0; i + 1 < L_list.size(); ++i) {
        if (!(L_list[i] < L_list[i + 1]))
            throw std::invalid_argument("L list must be strictly increasing");
    }
    if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");

    const std::size_t L_max = L_list.back();
    const JacobiSlice s = model.slice(L_max);
    if (s.a.size() < L_max) throw std::out_of_range("model too short for the requested L list");
    const double log_thr = std::log(threshold);

    std::vector<SigmaAcNode> out;
    for (double E : grid.nodes()) {
        SigmaAcNode node;
        node.energy = E;
        double best = HUGE_VAL;
        ScaledMatrix2 acc{Matrix2::identity(), 0.0};
        std::size_t done = 0;
        for (std::size_t L : L_list) {
            for (std::size_t k = done; k < L; ++k) {
                acc.mat = one_step_matrix(E, s.a[k], s.b[k]) * acc.mat;
                const double m = acc.mat.max_abs();
                if (m > 1e150) {
                    acc.mat = acc.mat * (1.0 / m);
                    acc.log_scale += std::log(m);
                }
            }
            done = L;
            best = std::min(best, acc.log_norm());
        }
        node.min_log_norm = best;
        node.bounded = best < log_thr;
        out.push_back(node);
    }
    return out;
}

}  // namespace jtx

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace drpo {

/// Adaptive Top-P filter state driven by the variance feedback controller.
struct FilterState {
    double top_p = 0.5;
    double target_ratio = 0.5;
    double expand_rate = 1.02;
    double shrink_rate = 0.98;
    double top_p_min = 0.05;
    double top_p_max = 1.0;
    double last_threshold = 0.0;
    double last_sigma_subset = 0.0;
    double last_sigma_batch = 0.0;
};

/// Result of hard Top-K filtering over one batch of rewards. Selected
/// indices are ascending; every selected reward is >= nu_star and every
/// advantage is non-negative.
struct FilteredBatch {
    std::vector<std::size_t> selected;
    double nu_star = 0.0;
    std::vector<double> advantages;            // r_j - nu_star, aligned with selected
    std::vector<double> normalized_advantages; // advantages / (std(advantages) + eps)
    double sigma_subset = 0.0;                 // std of the selected rewards
    double sigma_batch = 0.0;                  // std of the whole batch
};

/// Dual objective nu + kappa^{-1} E[(R - nu)_+]. Exposed so tests can scan it.
double dual_objective(std::span<const double> rewards, double kappa, double nu);

/// Minimizer of the dual objective: the (1-kappa)-quantile of the empirical
/// reward distribution, realized as the minimum of the Top-ceil(kappa*N) set.
double solve_dual_threshold(std::span<const double> rewards, double kappa);

/// Exact solution of the bounded-density-ratio linear program
///   max (1/N) sum_i w_i r_i   s.t. 0 <= w_i <= 1/kappa, (1/N) sum_i w_i = 1
/// by greedy fill from the highest reward with a fractional weight on the
/// boundary sample. Small instances only (N <= 64); this is the oracle the
/// duality and hard-filter tests check against.
struct LpSolution {
    std::vector<double> weights;
    double value = 0.0;
};
LpSolution lp_oracle(std::span<const double> rewards, double kappa);

/// Top-K selection with K = max(1, floor(N * top_p)); ties broken by
/// ascending index. Advantages are normalized by (std + 1e-8).
FilteredBatch hard_filter(std::span<const double> rewards, const FilterState& state);

/// Multiplicative Top-P update: expand while the selected subset is more
/// homogeneous than target_ratio * sigma_batch, shrink otherwise (ties
/// shrink). Result clamped to [top_p_min, top_p_max].
FilterState variance_feedback_update(FilterState state, double sigma_subset,
                                     double sigma_batch);

/// Exponential tilt inside the filtered set: weights proportional to
/// exp((r_j - max r)/tau), normalized to mean one.
std::vector<double> exp_tilt_weights(const FilteredBatch& filtered, double tau);

}  // namespace drpo

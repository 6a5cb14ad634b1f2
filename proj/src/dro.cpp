#include "drpo/dro.hpp"

#include "drpo/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace drpo {

namespace {

// floor/ceil with a tolerance so that e.g. 0.15 * 320 (= 47.999...) counts 48.
std::size_t tolerant_floor(double x) {
    return static_cast<std::size_t>(std::floor(x + 1e-9));
}

std::size_t tolerant_ceil(double x) {
    return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

std::vector<std::size_t> top_k_indices(std::span<const double> rewards, std::size_t k) {
    std::vector<std::size_t> order(rewards.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Highest reward first; equal rewards keep ascending dataset index.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rewards[a] > rewards[b]; });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace

double dual_objective(std::span<const double> rewards, double kappa, double nu) {
    double acc = 0.0;
    for (double r : rewards) acc += std::max(r - nu, 0.0);
    return nu + acc / (kappa * static_cast<double>(rewards.size()));
}

double solve_dual_threshold(std::span<const double> rewards, double kappa) {
    if (rewards.empty()) throw std::invalid_argument("solve_dual_threshold: empty rewards");
    if (!(kappa > 0.0) || kappa > 1.0)
        throw std::invalid_argument("solve_dual_threshold: kappa must lie in (0, 1]");
    const std::size_t n = rewards.size();
    std::size_t k = std::clamp<std::size_t>(tolerant_ceil(kappa * static_cast<double>(n)), 1, n);
    const auto idx = top_k_indices(rewards, k);
    double nu = rewards[idx[0]];
    for (std::size_t i : idx) nu = std::min(nu, rewards[i]);
    return nu;
}

LpSolution lp_oracle(std::span<const double> rewards, double kappa) {
    if (rewards.empty()) throw std::invalid_argument("lp_oracle: empty rewards");
    if (rewards.size() > 64) throw std::invalid_argument("lp_oracle: N must be <= 64");
    if (!(kappa > 0.0) || kappa > 1.0)
        throw std::invalid_argument("lp_oracle: kappa must lie in (0, 1]");

    const std::size_t n = rewards.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rewards[a] > rewards[b]; });

    LpSolution sol;
    sol.weights.assign(n, 0.0);
    const double cap = 1.0 / kappa;
    double budget = static_cast<double>(n);  // total weight mass: sum w_i = N
    for (std::size_t i : order) {
        if (budget <= 0.0) break;
        const double w = std::min(cap, budget);
        sol.weights[i] = w;
        budget -= w;
    }
    for (std::size_t i = 0; i < n; ++i) sol.value += sol.weights[i] * rewards[i];
    sol.value /= static_cast<double>(n);
    return sol;
}

FilteredBatch hard_filter(std::span<const double> rewards, const FilterState& state) {
    if (rewards.empty()) throw std::invalid_argument("hard_filter: empty batch");
    const std::size_t n = rewards.size();
    const std::size_t k =
        std::max<std::size_t>(1, tolerant_floor(static_cast<double>(n) * state.top_p));

    FilteredBatch out;
    out.selected = top_k_indices(rewards, std::min(k, n));
    out.nu_star = rewards[out.selected[0]];
    for (std::size_t i : out.selected) out.nu_star = std::min(out.nu_star, rewards[i]);

    out.advantages.reserve(out.selected.size());
    std::vector<double> subset;
    subset.reserve(out.selected.size());
    for (std::size_t i : out.selected) {
        subset.push_back(rewards[i]);
        out.advantages.push_back(rewards[i] - out.nu_star);
    }
    const double sd = stddev(out.advantages);
    out.normalized_advantages.reserve(out.advantages.size());
    for (double a : out.advantages) out.normalized_advantages.push_back(a / (sd + 1e-8));

    out.sigma_subset = stddev(subset);
    out.sigma_batch = stddev(rewards);
    return out;
}

FilterState variance_feedback_update(FilterState state, double sigma_subset,
                                     double sigma_batch) {
    if (sigma_subset < state.target_ratio * sigma_batch)
        state.top_p = std::min(state.top_p_max, state.top_p * state.expand_rate);
    else
        state.top_p = std::max(state.top_p_min, state.top_p * state.shrink_rate);
    state.last_sigma_subset = sigma_subset;
    state.last_sigma_batch = sigma_batch;
    return state;
}

std::vector<double> exp_tilt_weights(const FilteredBatch& filtered, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("exp_tilt_weights: tau must be positive");
    if (filtered.advantages.empty())
        throw std::invalid_argument("exp_tilt_weights: empty filtered batch");
    // r_j - max r equals A_j - max A, so the tilt works off advantages.
    const double a_max = *std::max_element(filtered.advantages.begin(), filtered.advantages.end());
    std::vector<double> w;
    w.reserve(filtered.advantages.size());
    double total = 0.0;
    for (double a : filtered.advantages) {
        w.push_back(std::exp((a - a_max) / tau));
        total += w.back();
    }
    const double scale = static_cast<double>(w.size()) / total;
    for (double& x : w) x *= scale;
    return w;
}

}  // namespace drpo

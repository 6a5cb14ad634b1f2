#pragma once

#include "drpo/matrix.hpp"
#include "drpo/mlp.hpp"
#include "drpo/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace drpo {

/// Diagonal Gaussian policy: the mean comes from the MLP, the log standard
/// deviation is a state-independent learnable vector (one entry per action
/// dimension).
struct GaussianPolicy {
    MlpParams mean_net;
    std::vector<double> log_std;

    GaussianPolicy() = default;
    GaussianPolicy(int state_dim, int action_dim, int hidden, Rng& rng)
        : mean_net(MlpParams::glorot(state_dim, hidden, action_dim, rng)),
          log_std(action_dim, 0.0) {}

    int state_dim() const { return mean_net.in_dim; }
    int action_dim() const { return mean_net.out_dim; }
};

/// Closed-form per-dimension score of the Gaussian log density:
/// d_mu = (a - mu) / sigma^2, d_xi = (a - mu)^2 / sigma^2 - 1.
struct ScoreVector {
    std::vector<double> d_mu;
    std::vector<double> d_xi;
};

/// Gradients of a scalar loss with respect to every policy parameter.
struct PolicyGrads {
    MlpGrads mlp;
    std::vector<double> d_log_std;

    double squared_norm() const;
    bool all_finite() const;
};

/// Exact diagonal-Gaussian log density (normalization constant included),
/// summed over dimensions.
double log_prob(const GaussianPolicy& policy, std::span<const double> state,
                std::span<const double> action);

/// Log density given a precomputed mean (avoids re-running the net).
double log_prob_given_mean(std::span<const double> mean, std::span<const double> log_std,
                           std::span<const double> action);

ScoreVector score(const GaussianPolicy& policy, std::span<const double> state,
                  std::span<const double> action);

/// Gradient of log_prob with respect to all MLP parameters and log_std:
/// the ScoreVector chained through the mean network.
PolicyGrads full_score_backprop(const GaussianPolicy& policy, std::span<const double> state,
                                std::span<const double> action);

/// a = mu(s) + sigma .* z with z standard normal.
std::vector<double> sample(const GaussianPolicy& policy, std::span<const double> state,
                           Rng& rng);

/// Weighted negative log-likelihood over a batch:
///   L = -(1/divisor) * sum_i weights[i] * log pi(action_i | state_i).
/// This single objective, with weights chosen per algorithm, backs every
/// policy-extraction loss in the project except the PPO surrogate.
struct WeightedNllResult {
    double loss = 0.0;
    PolicyGrads grads;
};

double weighted_nll_loss(const GaussianPolicy& policy, const DenseMatrix& states,
                         const DenseMatrix& actions, std::span<const double> weights,
                         double divisor);

WeightedNllResult weighted_nll(const GaussianPolicy& policy, const DenseMatrix& states,
                               const DenseMatrix& actions, std::span<const double> weights,
                               double divisor);

/// Checkpoint format: magic, version, dims, then the flat parameter list in
/// the order layer weights/biases (W1 b1 W2 b2 W3 b3) followed by log_std.
void save_checkpoint(const GaussianPolicy& policy, const std::string& path);
GaussianPolicy load_checkpoint(const std::string& path);

}  // namespace drpo

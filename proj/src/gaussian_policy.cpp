#include "drpo/gaussian_policy.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace drpo {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;  // ln(2*pi)

void check_dims(const GaussianPolicy& policy, std::span<const double> state,
                std::span<const double> action) {
    if (static_cast<int>(state.size()) != policy.state_dim())
        throw std::invalid_argument("policy: state dimension mismatch");
    if (static_cast<int>(action.size()) != policy.action_dim())
        throw std::invalid_argument("policy: action dimension mismatch");
    if (policy.log_std.size() != static_cast<std::size_t>(policy.action_dim()))
        throw std::invalid_argument("policy: log_std dimension mismatch");
}

DenseMatrix one_row(std::span<const double> v) {
    DenseMatrix m(1, v.size());
    std::copy(v.begin(), v.end(), m.data.begin());
    return m;
}

}  // namespace

double PolicyGrads::squared_norm() const {
    double acc = 0.0;
    for (double g : mlp.flat) acc += g * g;
    for (double g : d_log_std) acc += g * g;
    return acc;
}

bool PolicyGrads::all_finite() const {
    for (double g : mlp.flat)
        if (!std::isfinite(g)) return false;
    for (double g : d_log_std)
        if (!std::isfinite(g)) return false;
    return true;
}

double log_prob_given_mean(std::span<const double> mean, std::span<const double> log_std,
                           std::span<const double> action) {
    double lp = 0.0;
    for (std::size_t k = 0; k < mean.size(); ++k) {
        const double xi = log_std[k];
        const double z = (action[k] - mean[k]) * std::exp(-xi);
        lp += -0.5 * kLogTwoPi - xi - 0.5 * z * z;
    }
    return lp;
}

double log_prob(const GaussianPolicy& policy, std::span<const double> state,
                std::span<const double> action) {
    check_dims(policy, state, action);
    const DenseMatrix mean = mlp_forward(policy.mean_net, one_row(state));
    return log_prob_given_mean(mean.row(0), policy.log_std, action);
}

ScoreVector score(const GaussianPolicy& policy, std::span<const double> state,
                  std::span<const double> action) {
    check_dims(policy, state, action);
    const DenseMatrix mean = mlp_forward(policy.mean_net, one_row(state));
    ScoreVector s;
    s.d_mu.resize(action.size());
    s.d_xi.resize(action.size());
    for (std::size_t k = 0; k < action.size(); ++k) {
        const double inv_var = std::exp(-2.0 * policy.log_std[k]);
        const double diff = action[k] - mean(0, k);
        s.d_mu[k] = diff * inv_var;
        s.d_xi[k] = diff * diff * inv_var - 1.0;
    }
    return s;
}

PolicyGrads full_score_backprop(const GaussianPolicy& policy, std::span<const double> state,
                                std::span<const double> action) {
    // log_prob is a weighted NLL with weight -1 and divisor 1.
    const double w[1] = {-1.0};
    WeightedNllResult r =
        weighted_nll(policy, one_row(state), one_row(action), std::span<const double>(w, 1), 1.0);
    return std::move(r.grads);
}

std::vector<double> sample(const GaussianPolicy& policy, std::span<const double> state,
                           Rng& rng) {
    const DenseMatrix mean = mlp_forward(policy.mean_net, one_row(state));
    std::vector<double> action(policy.action_dim());
    for (std::size_t k = 0; k < action.size(); ++k)
        action[k] = mean(0, k) + std::exp(policy.log_std[k]) * rng.normal();
    return action;
}

double weighted_nll_loss(const GaussianPolicy& policy, const DenseMatrix& states,
                         const DenseMatrix& actions, std::span<const double> weights,
                         double divisor) {
    if (states.rows != actions.rows || states.rows != weights.size())
        throw std::invalid_argument("weighted_nll: batch sizes differ");
    const DenseMatrix means = mlp_forward(policy.mean_net, states);
    double loss = 0.0;
    for (std::size_t i = 0; i < states.rows; ++i)
        loss -= weights[i] * log_prob_given_mean(means.row(i), policy.log_std, actions.row(i));
    return loss / divisor;
}

WeightedNllResult weighted_nll(const GaussianPolicy& policy, const DenseMatrix& states,
                               const DenseMatrix& actions, std::span<const double> weights,
                               double divisor) {
    if (states.rows != actions.rows || states.rows != weights.size())
        throw std::invalid_argument("weighted_nll: batch sizes differ");
    const std::size_t n = states.rows;
    const std::size_t d = actions.cols;

    ForwardCache cache;
    const DenseMatrix means = mlp_forward_cached(policy.mean_net, states, cache);

    WeightedNllResult out;
    out.grads.d_log_std.assign(d, 0.0);
    DenseMatrix upstream(n, d);  // dL/dmu
    const double inv_div = 1.0 / divisor;
    std::vector<double> inv_var(d);
    for (std::size_t k = 0; k < d; ++k) inv_var[k] = std::exp(-2.0 * policy.log_std[k]);

    for (std::size_t i = 0; i < n; ++i) {
        const double wi = weights[i];
        double lp = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double diff = actions(i, k) - means(i, k);
            const double u = diff * diff * inv_var[k];
            lp += -0.5 * kLogTwoPi - policy.log_std[k] - 0.5 * u;
            // d log pi / d mu = diff * inv_var ; d log pi / d xi = u - 1
            upstream(i, k) = -wi * inv_div * diff * inv_var[k];
            out.grads.d_log_std[k] -= wi * inv_div * (u - 1.0);
        }
        out.loss -= wi * inv_div * lp;
    }
    out.grads.mlp = mlp_backward(policy.mean_net, states, cache, upstream);
    return out;
}

void save_checkpoint(const GaussianPolicy& policy, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_checkpoint: cannot open " + path);
    const char magic[8] = {'D', 'R', 'P', 'O', 'P', 'O', 'L', '1'};
    f.write(magic, 8);
    const std::int64_t dims[3] = {policy.mean_net.in_dim, policy.mean_net.hidden_dim,
                                  policy.mean_net.out_dim};
    f.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    f.write(reinterpret_cast<const char*>(policy.mean_net.flat.data()),
            static_cast<std::streamsize>(policy.mean_net.flat.size() * sizeof(double)));
    f.write(reinterpret_cast<const char*>(policy.log_std.data()),
            static_cast<std::streamsize>(policy.log_std.size() * sizeof(double)));
    if (!f) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

GaussianPolicy load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_checkpoint: cannot open " + path);
    char magic[8];
    f.read(magic, 8);
    if (!f || std::memcmp(magic, "DRPOPOL1", 8) != 0)
        throw std::runtime_error("load_checkpoint: bad magic in " + path);
    std::int64_t dims[3];
    f.read(reinterpret_cast<char*>(dims), sizeof(dims));
    if (!f) throw std::runtime_error("load_checkpoint: truncated header in " + path);
    GaussianPolicy policy;
    policy.mean_net = MlpParams(static_cast<int>(dims[0]), static_cast<int>(dims[1]),
                                static_cast<int>(dims[2]));
    policy.log_std.assign(static_cast<std::size_t>(dims[2]), 0.0);
    f.read(reinterpret_cast<char*>(policy.mean_net.flat.data()),
           static_cast<std::streamsize>(policy.mean_net.flat.size() * sizeof(double)));
    f.read(reinterpret_cast<char*>(policy.log_std.data()),
           static_cast<std::streamsize>(policy.log_std.size() * sizeof(double)));
    if (!f) throw std::runtime_error("load_checkpoint: truncated payload in " + path);
    return policy;
}

}  // namespace drpo

#include "drpo/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace drpo {

namespace {

void apply_block(std::span<double> params, std::span<const double> grads, AdamState& state,
                 std::size_t offset, double lr, double bc1, double bc2) {
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        double& m = state.m[offset + i];
        double& v = state.v[offset + i];
        m = state.beta1 * m + (1.0 - state.beta1) * g;
        v = state.beta2 * v + (1.0 - state.beta2) * g * g;
        const double mhat = m / bc1;
        const double vhat = v / bc2;
        params[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
    }
}

}  // namespace

bool adam_step(std::span<std::span<double>> params, std::span<std::span<const double>> grads,
               AdamState& state, double lr) {
    if (!(lr > 0.0)) throw std::invalid_argument("adam_step: lr must be positive");
    if (params.size() != grads.size())
        throw std::invalid_argument("adam_step: block counts differ");
    std::size_t total = 0;
    for (std::size_t b = 0; b < params.size(); ++b) {
        if (params[b].size() != grads[b].size())
            throw std::invalid_argument("adam_step: block shapes differ");
        total += params[b].size();
    }
    if (total != state.m.size())
        throw std::invalid_argument("adam_step: state size does not match parameters");

    for (const auto& block : grads)
        for (double g : block)
            if (!std::isfinite(g)) return false;

    state.step += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    std::size_t offset = 0;
    for (std::size_t b = 0; b < params.size(); ++b) {
        apply_block(params[b], grads[b], state, offset, lr, bc1, bc2);
        offset += params[b].size();
    }
    return true;
}

bool adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr) {
    std::span<double> p[1] = {params};
    std::span<const double> g[1] = {grads};
    return adam_step(std::span<std::span<double>>(p, 1),
                     std::span<std::span<const double>>(g, 1), state, lr);
}

}  // namespace drpo

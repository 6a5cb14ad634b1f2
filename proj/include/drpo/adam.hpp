#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace drpo {

/// Adam moment accumulators over one flat parameter block (or several blocks
/// laid end to end, e.g. MLP weights followed by the policy log-std vector).
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    long long step = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

/// Standard Adam update with bias correction, applied in place.
/// A non-finite gradient entry aborts the whole update: parameters, moments
/// and the step counter stay untouched and the function returns false so the
/// caller can count the overflow instead of crashing.
bool adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr);

/// Multi-block variant; blocks map onto `state` in order.
bool adam_step(std::span<std::span<double>> params, std::span<std::span<const double>> grads,
               AdamState& state, double lr);

}  // namespace drpo

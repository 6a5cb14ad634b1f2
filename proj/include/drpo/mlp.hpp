#pragma once

#include "drpo/matrix.hpp"
#include "drpo/rng.hpp"

#include <span>
#include <vector>

namespace drpo {

/// Parameters of a two-hidden-layer ReLU perceptron
/// (input -> hidden -> hidden -> output). Stored as one flat vector in the
/// order W1, b1, W2, b2, W3, b3 so the optimizer and checkpoint writer can
/// treat the whole net as a single array of 64-bit reals.
struct MlpParams {
    int in_dim = 0;
    int hidden_dim = 0;
    int out_dim = 0;
    std::vector<double> flat;

    MlpParams() = default;
    MlpParams(int in, int hidden, int out);

    static MlpParams glorot(int in, int hidden, int out, Rng& rng);

    std::size_t size() const { return flat.size(); }

    // Offsets into `flat`. W1 is [in x hidden] row-major, W2 [hidden x hidden],
    // W3 [hidden x out]; biases follow their weight block.
    std::span<double> w1() { return {flat.data(), static_cast<std::size_t>(in_dim) * hidden_dim}; }
    std::span<double> b1() { return {flat.data() + off_b1(), static_cast<std::size_t>(hidden_dim)}; }
    std::span<double> w2() { return {flat.data() + off_w2(), static_cast<std::size_t>(hidden_dim) * hidden_dim}; }
    std::span<double> b2() { return {flat.data() + off_b2(), static_cast<std::size_t>(hidden_dim)}; }
    std::span<double> w3() { return {flat.data() + off_w3(), static_cast<std::size_t>(hidden_dim) * out_dim}; }
    std::span<double> b3() { return {flat.data() + off_b3(), static_cast<std::size_t>(out_dim)}; }

    std::span<const double> w1() const { return {flat.data(), static_cast<std::size_t>(in_dim) * hidden_dim}; }
    std::span<const double> b1() const { return {flat.data() + off_b1(), static_cast<std::size_t>(hidden_dim)}; }
    std::span<const double> w2() const { return {flat.data() + off_w2(), static_cast<std::size_t>(hidden_dim) * hidden_dim}; }
    std::span<const double> b2() const { return {flat.data() + off_b2(), static_cast<std::size_t>(hidden_dim)}; }
    std::span<const double> w3() const { return {flat.data() + off_w3(), static_cast<std::size_t>(hidden_dim) * out_dim}; }
    std::span<const double> b3() const { return {flat.data() + off_b3(), static_cast<std::size_t>(out_dim)}; }

    std::size_t off_b1() const { return static_cast<std::size_t>(in_dim) * hidden_dim; }
    std::size_t off_w2() const { return off_b1() + hidden_dim; }
    std::size_t off_b2() const { return off_w2() + static_cast<std::size_t>(hidden_dim) * hidden_dim; }
    std::size_t off_w3() const { return off_b2() + hidden_dim; }
    std::size_t off_b3() const { return off_w3() + static_cast<std::size_t>(hidden_dim) * out_dim; }
};

/// Gradients are stored with the exact layout of the parameters they
/// differentiate.
using MlpGrads = MlpParams;

/// Post-activation values kept from the forward pass for reverse mode.
struct ForwardCache {
    DenseMatrix h1;
    DenseMatrix h2;
};

/// Batched forward pass: one row of `states` per sample.
DenseMatrix mlp_forward(const MlpParams& params, const DenseMatrix& states);

DenseMatrix mlp_forward_cached(const MlpParams& params, const DenseMatrix& states,
                               ForwardCache& cache);

/// Exact reverse-mode gradients of the forward map contracted with
/// `upstream` (same shape as the forward output).
MlpGrads mlp_backward(const MlpParams& params, const DenseMatrix& states,
                      const ForwardCache& cache, const DenseMatrix& upstream);

}  // namespace drpo

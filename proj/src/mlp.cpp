#include "drpo/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace drpo {

namespace {

// y[rows x n] = x[rows x m] * W[m x n] + b[n]
void affine(const DenseMatrix& x, std::span<const double> w, std::span<const double> b,
            DenseMatrix& y) {
    const std::size_t rows = x.rows, m = x.cols, n = b.size();
    y = DenseMatrix(rows, n);
    for (std::size_t i = 0; i < rows; ++i) {
        double* yrow = y.data.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) yrow[j] = b[j];
        const double* xrow = x.data.data() + i * m;
        for (std::size_t k = 0; k < m; ++k) {
            const double xik = xrow[k];
            const double* wrow = w.data() + k * n;
            for (std::size_t j = 0; j < n; ++j) yrow[j] += xik * wrow[j];
        }
    }
}

void relu_inplace(DenseMatrix& y) {
    for (double& v : y.data)
        if (v < 0.0) v = 0.0;
}

// dW[m x n] += x^T[m x rows] * dy[rows x n]; db[n] += column sums of dy.
void accumulate_affine_grads(const DenseMatrix& x, const DenseMatrix& dy,
                             std::span<double> dw, std::span<double> db) {
    const std::size_t rows = x.rows, m = x.cols, n = dy.cols;
    for (std::size_t i = 0; i < rows; ++i) {
        const double* xrow = x.data.data() + i * m;
        const double* dyrow = dy.data.data() + i * n;
        for (std::size_t k = 0; k < m; ++k) {
            const double xik = xrow[k];
            double* dwrow = dw.data() + k * n;
            for (std::size_t j = 0; j < n; ++j) dwrow[j] += xik * dyrow[j];
        }
        for (std::size_t j = 0; j < n; ++j) db[j] += dyrow[j];
    }
}

// dx[rows x m] = dy[rows x n] * W^T[n x m], masked by ReLU activity of h.
void backprop_through_relu_affine(const DenseMatrix& dy, std::span<const double> w,
                                  const DenseMatrix& h, DenseMatrix& dx) {
    const std::size_t rows = dy.rows, n = dy.cols, m = h.cols;
    dx = DenseMatrix(rows, m);
    for (std::size_t i = 0; i < rows; ++i) {
        const double* dyrow = dy.data.data() + i * n;
        const double* hrow = h.data.data() + i * m;
        double* dxrow = dx.data.data() + i * m;
        for (std::size_t k = 0; k < m; ++k) {
            const double* wrow = w.data() + k * n;
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += dyrow[j] * wrow[j];
            dxrow[k] = hrow[k] > 0.0 ? acc : 0.0;
        }
    }
}

}  // namespace

MlpParams::MlpParams(int in, int hidden, int out)
    : in_dim(in), hidden_dim(hidden), out_dim(out) {
    if (in < 1 || hidden < 1 || out < 1)
        throw std::invalid_argument("MlpParams: dimensions must be positive");
    flat.assign(off_b3() + out, 0.0);
}

MlpParams MlpParams::glorot(int in, int hidden, int out, Rng& rng) {
    MlpParams p(in, hidden, out);
    auto init = [&rng](std::span<double> w, int fan_in, int fan_out) {
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        for (double& x : w) x = rng.uniform(-bound, bound);
    };
    init(p.w1(), in, hidden);
    init(p.w2(), hidden, hidden);
    init(p.w3(), hidden, out);
    return p;
}

DenseMatrix mlp_forward(const MlpParams& params, const DenseMatrix& states) {
    ForwardCache cache;
    return mlp_forward_cached(params, states, cache);
}

DenseMatrix mlp_forward_cached(const MlpParams& params, const DenseMatrix& states,
                               ForwardCache& cache) {
    if (static_cast<int>(states.cols) != params.in_dim)
        throw std::invalid_argument("mlp_forward: state dimension mismatch");
    affine(states, params.w1(), params.b1(), cache.h1);
    relu_inplace(cache.h1);
    affine(cache.h1, params.w2(), params.b2(), cache.h2);
    relu_inplace(cache.h2);
    DenseMatrix out;
    affine(cache.h2, params.w3(), params.b3(), out);
    return out;
}

MlpGrads mlp_backward(const MlpParams& params, const DenseMatrix& states,
                      const ForwardCache& cache, const DenseMatrix& upstream) {
    if (upstream.rows != states.rows || static_cast<int>(upstream.cols) != params.out_dim)
        throw std::invalid_argument("mlp_backward: upstream shape mismatch");
    MlpGrads grads(params.in_dim, params.hidden_dim, params.out_dim);

    accumulate_affine_grads(cache.h2, upstream, grads.w3(), grads.b3());
    DenseMatrix dh2;
    backprop_through_relu_affine(upstream, params.w3(), cache.h2, dh2);

    accumulate_affine_grads(cache.h1, dh2, grads.w2(), grads.b2());
    DenseMatrix dh1;
    backprop_through_relu_affine(dh2, params.w2(), cache.h1, dh1);

    accumulate_affine_grads(states, dh1, grads.w1(), grads.b1());
    return grads;
}

}  // namespace drpo

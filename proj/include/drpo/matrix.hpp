#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace drpo {

/// Row-major dense matrix of 64-bit reals. Plain value type; all training
/// arithmetic in this project runs through it.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

    bool all_finite() const;
};

/// C = A * B. Shapes must agree.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// C = A^T * B (A is [m x k] interpreted transposed to [k x m]).
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);

/// C = A * B^T.
DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double mean(std::span<const double> a);
/// Population standard deviation (divides by N).
double stddev(std::span<const double> a);

}  // namespace drpo

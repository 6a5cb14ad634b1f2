#include "drpo/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace drpo {

bool DenseMatrix::all_finite() const {
    for (double x : data)
        if (!std::isfinite(x)) return false;
    return true;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions differ");
    DenseMatrix c(a.rows, b.cols);
    // i-k-j order keeps the inner loop contiguous for the vectorizer.
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.data.data() + i * a.cols;
        double* crow = c.data.data() + i * c.cols;
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = arow[k];
            const double* brow = b.data.data() + k * b.cols;
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("matmul_at_b: row counts differ");
    DenseMatrix c(a.cols, b.cols);
    for (std::size_t r = 0; r < a.rows; ++r) {
        const double* arow = a.data.data() + r * a.cols;
        const double* brow = b.data.data() + r * b.cols;
        for (std::size_t i = 0; i < a.cols; ++i) {
            const double ari = arow[i];
            double* crow = c.data.data() + i * c.cols;
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += ari * brow[j];
        }
    }
    return c;
}

DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.cols) throw std::invalid_argument("matmul_a_bt: col counts differ");
    DenseMatrix c(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.data.data() + i * a.cols;
        for (std::size_t j = 0; j < b.rows; ++j) {
            const double* brow = b.data.data() + j * b.cols;
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) acc += arow[k] * brow[k];
            c(i, j) = acc;
        }
    }
    return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

double mean(std::span<const double> a) {
    if (a.empty()) return 0.0;
    double acc = 0.0;
    for (double x : a) acc += x;
    return acc / static_cast<double>(a.size());
}

double stddev(std::span<const double> a) {
    if (a.empty()) return 0.0;
    const double m = mean(a);
    double acc = 0.0;
    for (double x : a) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace drpo

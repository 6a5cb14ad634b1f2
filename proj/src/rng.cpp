#include "drpo/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace drpo {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t derive_seed(std::uint64_t parent, std::string_view label) {
    std::string key = std::to_string(parent);
    key += '|';
    key += label;
    return fnv1a64(key);
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

std::size_t Rng::uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    return static_cast<std::size_t>(engine_() % n);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double mul = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * mul;
    has_spare_ = true;
    return u * mul;
}

std::vector<double> Rng::normal_vec(std::size_t n, double stddev) {
    std::vector<double> out(n);
    for (auto& x : out) x = stddev * normal();
    return out;
}

std::vector<double> Rng::unit_sphere(std::size_t dim) {
    while (true) {
        std::vector<double> v = normal_vec(dim);
        double sq = 0.0;
        for (double x : v) sq += x * x;
        if (sq > 1e-24) {
            const double inv = 1.0 / std::sqrt(sq);
            for (double& x : v) x *= inv;
            return v;
        }
    }
}

}  // namespace drpo

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pvb/pvb.hpp"

namespace pvb::testing {

// Coefficientwise comparison on the common known range, scaled by the larger
// coefficient magnitude of the two series.
inline bool cwise_close(const TruncatedSeries& a, const TruncatedSeries& b, double tol) {
    const int lo = std::min(a.offset(), b.offset());
    const int hi = std::min(a.order(), b.order());
    double scale = 0.0;
    for (int j = lo; j < hi; ++j) scale = std::max({scale, std::abs(a.coeff(j)), std::abs(b.coeff(j))});
    if (scale == 0.0) return true;
    for (int j = lo; j < hi; ++j)
        if (std::abs(a.coeff(j) - b.coeff(j)) > tol * scale) return false;
    return true;
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1)); }
    Complex disk(double radius) { return std::polar(radius * std::sqrt(unit()), 2.0 * kPi * unit()); }
    Complex circle() { return std::polar(1.0, 2.0 * kPi * unit()); }
};

inline TruncatedSeries random_series(Rng& rng, int max_offset = 3, int min_len = 3, int max_len = 12) {
    const int offset = rng.integer(0, max_offset);
    const int len = rng.integer(min_len, max_len);
    std::vector<Complex> c(static_cast<std::size_t>(len));
    for (auto& v : c) v = Complex(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0));
    return {offset, offset + len, std::move(c)};
}

// Random valid class parameters. B may be forced negative (product regime
// more likely) or nonnegative (quotient regime certain).
inline ClassParams random_params(Rng& rng, int max_p = 3) {
    const int p = rng.integer(1, max_p);
    const double beta = rng.range(0.0, 0.95);
    const double B = rng.range(-1.0, 0.9);
    const double A = rng.range(B + 0.05, 1.0);
    return make_class_params(std::min(A, 1.0), B, beta, p);
}

}  // namespace pvb::testing

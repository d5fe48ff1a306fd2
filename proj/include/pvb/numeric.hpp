#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace pvb {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Relative closeness: |a - b| <= tol * max(|a|, |b|).
inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

inline bool rel_close(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

/// Unit complex number at `turns` revolutions, exp(2*pi*i*turns).
inline Complex unit_at_turns(double turns) {
    return std::polar(1.0, 2.0 * kPi * turns);
}

}  // namespace pvb

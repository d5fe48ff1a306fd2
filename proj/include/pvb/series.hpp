#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pvb/numeric.hpp"

namespace pvb {

/// Thrown by divide() when the divisor's leading stored coefficient vanishes.
struct DivisionByZeroLeadingCoefficient : std::domain_error {
    using std::domain_error::domain_error;
};

/// A power series known only up to a truncation order.
///
/// Coefficient semantics for z^j:
///   j < offset          exactly zero,
///   offset <= j < order stored in coeffs()[j - offset],
///   j >= order          unknown (NOT zero).
///
/// Orders propagate pessimistically through arithmetic so that unknown
/// coefficients can never contaminate a stored one. Values are immutable
/// after construction; every operation below is a pure function.
class TruncatedSeries {
public:
    TruncatedSeries(int offset, int order, std::vector<Complex> coeffs)
        : offset_(offset), order_(order), coeffs_(std::move(coeffs)) {
        if (offset_ < 0) throw std::invalid_argument("series offset must be nonnegative");
        if (order_ <= offset_) throw std::invalid_argument("series order must exceed offset");
        const auto len = static_cast<std::size_t>(order_ - offset_);
        if (coeffs_.size() > len)
            throw std::invalid_argument("more coefficients than the truncation order admits");
        coeffs_.resize(len, Complex(0.0));
    }

    static TruncatedSeries zero(int order) { return {0, order, {}}; }

    static TruncatedSeries constant(Complex value, int order) { return {0, order, {value}}; }

    static TruncatedSeries monomial(int power, Complex value, int order) {
        return {power, order, {value}};
    }

    int offset() const { return offset_; }
    int order() const { return order_; }
    int length() const { return order_ - offset_; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    /// Coefficient of z^power. Exactly zero below the offset; asking at or
    /// above the truncation order is a logic error, not a zero.
    Complex coeff(int power) const {
        if (power < offset_) return Complex(0.0);
        if (power >= order_)
            throw std::out_of_range("coefficient of z^" + std::to_string(power) +
                                    " lies beyond truncation order " + std::to_string(order_));
        return coeffs_[static_cast<std::size_t>(power - offset_)];
    }

    /// Horner evaluation of the stored part at a point.
    Complex evaluate(Complex z) const {
        Complex acc(0.0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        Complex lead(1.0);
        for (int i = 0; i < offset_; ++i) lead *= z;
        return lead * acc;
    }

private:
    int offset_;
    int order_;
    std::vector<Complex> coeffs_;
};

/// Multiplication by z^k.
inline TruncatedSeries shift(const TruncatedSeries& a, int k) {
    if (k < 0) throw std::invalid_argument("shift exponent must be nonnegative");
    return {a.offset() + k, a.order() + k, a.coeffs()};
}

/// Coefficientwise sum; operands align on the common known range.
inline TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int offset = std::min(a.offset(), b.offset());
    const int order = std::min(a.order(), b.order());
    std::vector<Complex> out(static_cast<std::size_t>(order - offset));
    for (int j = offset; j < order; ++j) {
        Complex v(0.0);
        if (j >= a.offset() && j < a.order()) v += a.coeff(j);
        if (j >= b.offset() && j < b.order()) v += b.coeff(j);
        out[static_cast<std::size_t>(j - offset)] = v;
    }
    return {offset, order, std::move(out)};
}

/// Cauchy product. Offsets add; the result's order is
/// min(a.order + b.offset, b.order + a.offset).
inline TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int offset = a.offset() + b.offset();
    const int len = std::min(a.length(), b.length());
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    std::vector<Complex> out(static_cast<std::size_t>(len));
    for (int t = 0; t < len; ++t) {
        Complex acc(0.0);
        for (int i = 0; i <= t; ++i) acc += ca[static_cast<std::size_t>(i)] * cb[static_cast<std::size_t>(t - i)];
        out[static_cast<std::size_t>(t)] = acc;
    }
    return {offset, offset + len, std::move(out)};
}

/// Termwise derivative. One coefficient of knowledge is lost at the top.
inline TruncatedSeries differentiate(const TruncatedSeries& a) {
    const auto& c = a.coeffs();
    if (a.offset() >= 1) {
        std::vector<Complex> out(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            out[i] = c[i] * static_cast<double>(a.offset() + static_cast<int>(i));
        return {a.offset() - 1, a.order() - 1, std::move(out)};
    }
    if (a.length() == 1) return TruncatedSeries::zero(std::max(a.order() - 1, 1));
    std::vector<Complex> out(c.size() - 1);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) out[i] = c[i + 1] * static_cast<double>(i + 1);
    return {0, a.order() - 1, std::move(out)};
}

namespace detail {

// Drop stored leading coefficients that are exact zeros; they carry exact
// knowledge, so the offset may move up without losing information.
inline std::pair<int, std::vector<Complex>> strip_exact_zeros(const TruncatedSeries& a) {
    std::vector<Complex> c = a.coeffs();
    int offset = a.offset();
    std::size_t skip = 0;
    while (skip + 1 < c.size() && c[skip] == Complex(0.0)) ++skip;
    offset += static_cast<int>(skip);
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(skip));
    return {offset, std::move(c)};
}

}  // namespace detail

/// Series quotient c with mul(b, c) = a on the common known range.
inline TruncatedSeries divide(const TruncatedSeries& a, const TruncatedSeries& b) {
    auto [aoff, ac] = detail::strip_exact_zeros(a);
    auto [boff, bc] = detail::strip_exact_zeros(b);
    if (bc[0] == Complex(0.0))
        throw DivisionByZeroLeadingCoefficient(
            "divisor's leading stored coefficient is zero (degenerate input function)");
    if (aoff < boff)
        throw std::domain_error("quotient would have a pole (dividend offset below divisor offset)");
    const int offset = aoff - boff;
    const int len = std::min(static_cast<int>(ac.size()), static_cast<int>(bc.size()));
    std::vector<Complex> out(static_cast<std::size_t>(len));
    for (int t = 0; t < len; ++t) {
        Complex acc = ac[static_cast<std::size_t>(t)];
        for (int j = 1; j <= t; ++j) acc -= bc[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(t - j)];
        out[static_cast<std::size_t>(t)] = acc / bc[0];
    }
    return {offset, offset + len, std::move(out)};
}

/// Expansion of (1 + u)^lambda with u = base * z, anchored at value 1 at z = 0.
/// The generalized binomial recurrence fixes the branch without any log/exp.
inline TruncatedSeries pow_binomial(Complex base, Complex lambda, int order) {
    if (order < 1) throw std::invalid_argument("order must be positive");
    std::vector<Complex> out(static_cast<std::size_t>(order));
    out[0] = Complex(1.0);
    for (int m = 1; m < order; ++m)
        out[static_cast<std::size_t>(m)] =
            out[static_cast<std::size_t>(m - 1)] * (lambda - static_cast<double>(m - 1)) * base /
            static_cast<double>(m);
    return {0, order, std::move(out)};
}

/// Expansion of exp(a z): coefficients a^m / m!.
inline TruncatedSeries exp_series(Complex a, int order) {
    if (order < 1) throw std::invalid_argument("order must be positive");
    std::vector<Complex> out(static_cast<std::size_t>(order));
    out[0] = Complex(1.0);
    for (int m = 1; m < order; ++m)
        out[static_cast<std::size_t>(m)] = out[static_cast<std::size_t>(m - 1)] * a / static_cast<double>(m);
    return {0, order, std::move(out)};
}

}  // namespace pvb

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "pvb/bounds.hpp"
#include "pvb/params.hpp"
#include "pvb/series.hpp"

namespace pvb {

/// The Moebius inversion hit the pole of the target map: the function under
/// test is not a class member, or the sample radius is too large.
struct DegenerateDenominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite description of a Schwarz function
///   phi(z) = u * z * prod_i (z - a_i)/(1 - conj(a_i) z),
/// a Blaschke product with an extra z factor so phi(0) = 0.
struct SchwarzSpec {
    std::vector<Complex> zeros;
    Complex unimodular{1.0, 0.0};
};

inline SchwarzSpec make_schwarz_spec(std::vector<Complex> zeros, Complex unimodular = {1.0, 0.0}) {
    for (const auto& a : zeros)
        if (!(std::abs(a) <= 1.0 - 1e-9))
            throw std::invalid_argument("Blaschke zero must satisfy |a| <= 1 - 1e-9");
    const double r = std::abs(unimodular);
    if (std::abs(r - 1.0) > 1e-12)
        throw std::invalid_argument("unimodular factor must have modulus 1");
    return {std::move(zeros), unimodular / r};
}

/// Direct evaluation of the Blaschke product; the exact reference against
/// which series-based recoveries are compared.
inline Complex schwarz_value(const SchwarzSpec& spec, Complex z) {
    Complex v = spec.unimodular * z;
    for (const auto& a : spec.zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

/// Taylor coefficients of the Blaschke product. Each factor has the closed
/// form -a + (1-|a|^2) * sum_{m>=1} conj(a)^{m-1} z^m.
inline TruncatedSeries schwarz_series(const SchwarzSpec& spec, int order) {
    if (order < 2) throw std::invalid_argument("order must be at least 2");
    TruncatedSeries phi = TruncatedSeries::monomial(1, spec.unimodular, order);
    for (const auto& a : spec.zeros) {
        std::vector<Complex> fac(static_cast<std::size_t>(order));
        fac[0] = -a;
        const Complex ac = std::conj(a);
        const double boundary = 1.0 - std::norm(a);
        Complex pw(1.0);
        for (int m = 1; m < order; ++m) {
            fac[static_cast<std::size_t>(m)] = boundary * pw;
            pw *= ac;
        }
        phi = mul(phi, TruncatedSeries(0, order, std::move(fac)));
    }
    return phi;
}

/// q = z f'(z) / f(z). For a monic member with leading power p the offsets
/// cancel and q(0) = p.
inline TruncatedSeries log_derivative_quotient(const TruncatedSeries& f) {
    return divide(shift(differentiate(f), 1), f);
}

/// Pointwise inversion of the subordination target: phi = (q - p)/(M - B q).
inline Complex moebius_recover(const ClassParams& cp, Complex q) {
    const Complex den = cp.M - cp.B * q;
    if (std::abs(den) < 1e-12)
        throw DegenerateDenominator("target map pole reached while recovering the Schwarz function");
    return (q - static_cast<double>(cp.p)) / den;
}

/// Geometric extrapolation of the truncation tail of `s` at radius r: the
/// last two windows of |coeff| r^power set a decay ratio, and the tail is the
/// corresponding geometric sum. A heuristic, deliberately conservative for
/// non-decaying terms (they produce a huge estimate and get the radius
/// excluded rather than silently evaluated).
inline double series_tail_estimate(const TruncatedSeries& s, double r) {
    const int len = s.length();
    if (len < 4) return std::numeric_limits<double>::infinity();
    const int w = std::min(16, len / 2);
    double recent = 0.0, prior = 0.0;
    const auto& c = s.coeffs();
    for (int i = len - w; i < len; ++i)
        recent = std::max(recent, std::abs(c[static_cast<std::size_t>(i)]) * std::pow(r, s.offset() + i));
    for (int i = len - 2 * w; i < len - w; ++i)
        prior = std::max(prior, std::abs(c[static_cast<std::size_t>(i)]) * std::pow(r, s.offset() + i));
    if (recent == 0.0) return 0.0;  // terminated series
    double ratio = prior > 0.0 ? std::pow(recent / prior, 1.0 / w) : 1.0;
    ratio = std::clamp(ratio, 0.0, 0.999);
    return recent * ratio / (1.0 - ratio);
}

struct SampleGrid {
    std::vector<double> radii{0.3, 0.6, 0.9, 0.99};
    int angles{256};
};

struct RadiusDiagnostics {
    double radius{};
    double tail_estimate{};
    bool included{};
    double max_ratio{};  // max |phi(z)| / |z| on this circle, when included
};

/// Result of the empirical membership test. Verdict means "consistent with
/// membership on the sampled grid", certified only up to grid resolution and
/// the per-radius truncation tails recorded alongside.
struct MembershipReport {
    double max_ratio{0.0};
    bool verdict{false};
    double tolerance{1e-6};
    SampleGrid grid{};
    std::vector<RadiusDiagnostics> radii;
};

inline constexpr double kTailTolerance = 1e-6;

/// Recovers the Schwarz function of f through the subordination identity and
/// samples |phi(z)|/|z| over circles. The Schwarz-lemma sharpening
/// |phi(z)| <= |z| makes this far more sensitive than a bare |phi| < 1 test.
/// Radii whose truncation tail cannot be certified below 1e-6 are excluded
/// and flagged in the report.
inline MembershipReport schwarz_from_function(const TruncatedSeries& f, const ClassParams& cp,
                                              SampleGrid grid = {}, double tol = 1e-6) {
    if (f.offset() != cp.p)
        throw std::invalid_argument("function must have leading power p");
    if (std::abs(f.coeff(cp.p) - 1.0) > 1e-12)
        throw std::invalid_argument("function must be monic at z^p");
    const TruncatedSeries q = log_derivative_quotient(f);
    MembershipReport rep;
    rep.grid = grid;
    rep.tolerance = tol;
    bool any = false;
    for (double r : grid.radii) {
        if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("grid radii must lie in (0, 1)");
        RadiusDiagnostics diag;
        diag.radius = r;
        diag.tail_estimate = series_tail_estimate(q, r);
        diag.included = diag.tail_estimate <= kTailTolerance;
        if (diag.included) {
            for (int i = 0; i < grid.angles; ++i) {
                const Complex z = std::polar(r, 2.0 * kPi * i / grid.angles);
                const double ratio = std::abs(moebius_recover(cp, q.evaluate(z))) / r;
                diag.max_ratio = std::max(diag.max_ratio, ratio);
            }
            rep.max_ratio = std::max(rep.max_ratio, diag.max_ratio);
            any = true;
        }
        rep.radii.push_back(diag);
    }
    rep.verdict = any && rep.max_ratio <= 1.0 + tol;
    return rep;
}

/// Solves the triangular recurrence obtained from the subordination identity,
///   n a_{p+n} = sum_{m=1..n} phi_m d_{n-m},
///   d_0 = c,  d_k = (A(p-beta) - B(k+p-beta)) a_{p+k},
/// turning any Schwarz-function series into a class member.
inline TruncatedSeries build_from_schwarz_series(const TruncatedSeries& phi, const ClassParams& cp,
                                                 int order) {
    if (order < cp.p + 2) throw std::invalid_argument("order must be at least p+2");
    if (phi.order() < order - cp.p)
        throw std::invalid_argument("Schwarz series too short for the requested order");
    const int len = order - cp.p;
    std::vector<Complex> a(static_cast<std::size_t>(len));
    std::vector<Complex> d(static_cast<std::size_t>(len));
    a[0] = Complex(1.0);
    d[0] = Complex(cp.c);
    for (int n = 1; n < len; ++n) {
        Complex acc(0.0);
        for (int m = 1; m <= n; ++m) acc += phi.coeff(m) * d[static_cast<std::size_t>(n - m)];
        a[static_cast<std::size_t>(n)] = acc / static_cast<double>(n);
        d[static_cast<std::size_t>(n)] =
            (cp.A * (cp.p - cp.beta) - cp.B * (n + cp.p - cp.beta)) * a[static_cast<std::size_t>(n)];
    }
    return {cp.p, order, std::move(a)};
}

inline TruncatedSeries build_function_from_schwarz(const SchwarzSpec& spec, const ClassParams& cp,
                                                   int order) {
    return build_from_schwarz_series(schwarz_series(spec, std::max(order - cp.p, 2)), cp, order);
}

// ---------------------------------------------------------------------------
// Randomized sweeps
// ---------------------------------------------------------------------------

namespace detail {

// splitmix64 finalizer; decorrelates (seed, index) pairs so every member has
// its own reproducible stream regardless of thread count.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

struct SplitRng {
    std::uint64_t state;
    explicit SplitRng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        // xorshift* keeps the generator self-contained and platform-stable
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 0x2545F4914F6CDD1DULL;
    }
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    int next_int(int bound) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(bound)); }
};

}  // namespace detail

/// Deterministic random Schwarz spec: 0-4 Blaschke zeros uniform in the disk
/// |a| <= 0.95, plus a uniform unimodular factor.
inline SchwarzSpec random_schwarz_spec(std::uint64_t seed, std::uint64_t index) {
    detail::SplitRng rng(detail::mix_seed(seed, index) | 1ULL);
    const int count = rng.next_int(5);
    std::vector<Complex> zeros;
    zeros.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double r = 0.95 * std::sqrt(rng.next_unit());
        zeros.push_back(std::polar(r, 2.0 * kPi * rng.next_unit()));
    }
    const Complex u = std::polar(1.0, 2.0 * kPi * rng.next_unit());
    return make_schwarz_spec(std::move(zeros), u);
}

struct SweepViolation {
    int member_index{};
    int n{};
    double modulus{};
    double bound{};
};

inline int resolve_thread_count(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Builds `count` random members and checks every coefficient up to max_n
/// against the sharp bound. The expected result is an empty list; anything
/// returned is a counterexample to the bound itself.
inline std::vector<SweepViolation> random_member_sweep(const ClassParams& cp, int count, int max_n,
                                                       std::uint64_t seed, int threads = 0,
                                                       double tol = 1e-9) {
    if (count < 0) throw std::invalid_argument("count must be nonnegative");
    if (count == 0) return {};
    if (max_n < cp.p + 1) throw std::invalid_argument("max_n must be at least p+1");
    if (max_n - cp.p > 32) throw std::invalid_argument("max_n - p must not exceed 32");
    const int order = cp.p + max_n + 8;
    std::vector<double> bounds(static_cast<std::size_t>(max_n) + 1, 0.0);
    for (int n = cp.p + 1; n <= max_n; ++n) bounds[static_cast<std::size_t>(n)] = theorem1_bound(cp, n);

    const auto scan = [&](int lo, int hi) {
        std::vector<SweepViolation> local;
        for (int idx = lo; idx < hi; ++idx) {
            const SchwarzSpec spec = random_schwarz_spec(seed, static_cast<std::uint64_t>(idx));
            const TruncatedSeries f = build_function_from_schwarz(spec, cp, order);
            for (int n = cp.p + 1; n <= max_n; ++n) {
                const double modulus = std::abs(f.coeff(n));
                const double bound = bounds[static_cast<std::size_t>(n)];
                if (modulus > bound * (1.0 + tol)) local.push_back({idx, n, modulus, bound});
            }
        }
        return local;
    };

    const int workers = std::min(resolve_thread_count(threads), count);
    if (workers <= 1) return scan(0, count);

    std::vector<std::future<std::vector<SweepViolation>>> parts;
    const int chunk = (count + workers - 1) / workers;
    for (int lo = 0; lo < count; lo += chunk)
        parts.push_back(std::async(std::launch::async, scan, lo, std::min(lo + chunk, count)));
    std::vector<SweepViolation> all;
    for (auto& part : parts) {
        auto v = part.get();
        all.insert(all.end(), v.begin(), v.end());
    }
    return all;  // chunks are contiguous, so ordering by member index is preserved
}

}  // namespace pvb

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pvb/params.hpp"

namespace pvb {

struct PreconditionViolated : std::logic_error {
    using std::logic_error::logic_error;
};

/// Sharp coefficient bound for |a_n| over S_p(A,B,beta):
///   n = p+1            (A-B)(p-beta)
///   NonPositiveTerms   (A-B)(p-beta) / (n-p)
///   PositiveTerms      prod_{j=1..n-p} (A(p-beta) - B(p-beta+j-1)) / j
/// Products keep numerator and denominator separate so integer-valued cases
/// (e.g. the Bieberbach chain) come out exact.
inline double theorem1_bound(const ClassParams& cp, int n) {
    switch (classify_case(cp, n)) {
        case CaseLabel::FirstCoefficient: return cp.c;
        case CaseLabel::NonPositiveTerms: return cp.c / static_cast<double>(n - cp.p);
        case CaseLabel::PositiveTerms: break;
    }
    double num = 1.0, den = 1.0;
    for (int j = 1; j <= n - cp.p; ++j) {
        num *= cp.A * (cp.p - cp.beta) - cp.B * (cp.p - cp.beta + j - 1);
        den *= static_cast<double>(j);
    }
    return num / den;
}

/// The 1987 product-form claim, implemented verbatim including the absolute
/// values:  prod_{j=0..n-p-1} |(B-A)(p-beta) + Bj| / (j+1).
/// It always equals the global extremal family's coefficient modulus, which
/// is why it undershoots the sharp bound whenever the quotient regime rules.
inline double aouf_bound(const ClassParams& cp, int n) {
    if (n < cp.p + 1) throw std::invalid_argument("bound index must be at least p+1");
    double num = 1.0, den = 1.0;
    for (int j = 0; j <= n - cp.p - 1; ++j) {
        num *= std::abs((cp.B - cp.A) * (cp.p - cp.beta) + cp.B * j);
        den *= static_cast<double>(j + 1);
    }
    return num / den;
}

/// Conservative bound from the squared Clunie recurrence with negative
/// summands dropped:
///   E_{p+1} = c,
///   E_{p+t}^2 = (c^2 + sum_{k=2..t, W_k>0} W_k E_{p+k-1}^2) / t^2.
/// Valid in every regime, including mixed-sign summands; coincides with the
/// sharp bound whenever the summands all share one sign.
inline double clunie_envelope(const ClassParams& cp, int n) {
    if (n < cp.p + 1) throw std::invalid_argument("bound index must be at least p+1");
    const int t_max = n - cp.p;
    std::vector<double> esq(static_cast<std::size_t>(t_max) + 1, 0.0);
    esq[1] = cp.c * cp.c;
    for (int t = 2; t <= t_max; ++t) {
        double acc = cp.c * cp.c;
        for (int k = 2; k <= t; ++k) {
            const double w = clunie_summand(cp, k);
            if (w > 0.0) acc += w * esq[static_cast<std::size_t>(k - 1)];
        }
        esq[static_cast<std::size_t>(t)] = acc / (static_cast<double>(t) * t);
    }
    return std::sqrt(esq[static_cast<std::size_t>(t_max)]);
}

/// LHS minus RHS of the product/weighted-sum identity that powers the
/// induction step in the product regime:
///   prod_{j=1..m-p} F_j^2/j^2
///     = ( c^2 + sum_{k=2..m-p} W_k prod_{j=1..k-1} F_j^2/j^2 ) / (m-p)^2
/// with F_j = A(p-beta) - B(p-beta+j-1). Must vanish up to roundoff.
inline double induction_identity_residual(const ClassParams& cp, int m) {
    if (m < cp.p + 2) throw PreconditionViolated("identity needs m >= p+2");
    if (classify_case(cp, m) != CaseLabel::PositiveTerms)
        throw PreconditionViolated("identity is audited only in the product regime");
    const int t = m - cp.p;
    std::vector<double> prod_sq(static_cast<std::size_t>(t) + 1, 1.0);
    for (int j = 1; j <= t; ++j) {
        const double f = (cp.A * (cp.p - cp.beta) - cp.B * (cp.p - cp.beta + j - 1)) / j;
        prod_sq[static_cast<std::size_t>(j)] = prod_sq[static_cast<std::size_t>(j - 1)] * f * f;
    }
    double sum = cp.c * cp.c;
    for (int k = 2; k <= t; ++k) sum += clunie_summand(cp, k) * prod_sq[static_cast<std::size_t>(k - 1)];
    return prod_sq[static_cast<std::size_t>(t)] - sum / (static_cast<double>(t) * t);
}

/// One row of bound data at index n.
struct BoundReport {
    int n{};
    CaseLabel label{CaseLabel::FirstCoefficient};
    double theorem1{};
    double aouf{};
    double envelope{};
    bool sharp{};  // sharpness is asserted except in the mixed-sign band
    bool mixed{};  // NonPositiveTerms label while low-k summands are positive
};

inline BoundReport bound_report(const ClassParams& cp, int n) {
    BoundReport rep;
    rep.n = n;
    rep.label = classify_case(cp, n);
    rep.theorem1 = theorem1_bound(cp, n);
    rep.aouf = aouf_bound(cp, n);
    rep.envelope = clunie_envelope(cp, n);
    rep.mixed = mixed_sign_summands(cp, n);
    rep.sharp = !rep.mixed;
    return rep;
}

}  // namespace pvb

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pvb {

struct InvalidParameters : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parameters of the class S_p(A,B,beta) of p-valent starlike functions of
/// order beta, together with the two derived constants used everywhere:
///   M = pB + (A-B)(p-beta)   numerator slope of the target Moebius map,
///   c = (A-B)(p-beta)        first extremal coefficient modulus (always > 0).
struct ClassParams {
    double A{};
    double B{};
    double beta{};
    int p{1};
    double M{};
    double c{};
};

/// Validates -1 <= B < A <= 1, 0 <= beta < 1, p >= 1 and fills the derived
/// constants. |B| below 1e-14 is normalized to exactly 0 so the B = 0
/// closed forms are selected instead of a nearly singular exponent.
inline ClassParams make_class_params(double A, double B, double beta, int p) {
    if (std::abs(B) < 1e-14) B = 0.0;
    if (!(B >= -1.0)) throw InvalidParameters("B must satisfy B >= -1");
    if (!(A > B)) throw InvalidParameters("A must be strictly greater than B");
    if (!(A <= 1.0)) throw InvalidParameters("A must satisfy A <= 1");
    if (!(beta >= 0.0 && beta < 1.0)) throw InvalidParameters("beta must lie in [0, 1)");
    if (p < 1) throw InvalidParameters("p must be a positive integer");
    ClassParams cp;
    cp.A = A;
    cp.B = B;
    cp.beta = beta;
    cp.p = p;
    cp.c = (A - B) * (p - beta);
    cp.M = p * B + cp.c;
    return cp;
}

/// Which branch of the sharp bound applies at coefficient index n.
enum class CaseLabel {
    FirstCoefficient,  // n = p+1
    NonPositiveTerms,  // n >= p+2 and A(p-b) - B(n-b-1) <= n-p-1
    PositiveTerms,     // n >= p+2 and A(p-b) - B(n-b-1) >  n-p-1
};

inline const char* to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::FirstCoefficient: return "FirstCoefficient";
        case CaseLabel::NonPositiveTerms: return "NonPositiveTerms";
        case CaseLabel::PositiveTerms: return "PositiveTerms";
    }
    return "?";
}

/// Signed slack of the product-regime inequality at index n:
///   A(p-beta) - B(n-beta-1) - (n-p-1).
/// Affine and non-increasing in n (slope -(B+1) <= 0).
inline double case_margin(const ClassParams& cp, int n) {
    return cp.A * (cp.p - cp.beta) - cp.B * (n - cp.beta - 1) - (n - cp.p - 1);
}

inline CaseLabel classify_case(const ClassParams& cp, int n) {
    if (n < cp.p + 1) throw std::invalid_argument("classification needs n >= p+1");
    if (n == cp.p + 1) return CaseLabel::FirstCoefficient;
    return case_margin(cp, n) > 0.0 ? CaseLabel::PositiveTerms : CaseLabel::NonPositiveTerms;
}

/// The k-th signed summand of the squared Clunie inequality,
///   W_k = (A(p-beta) - B(k+p-beta-1))^2 - (k-1)^2,  k >= 2.
/// Its sign decides whether the k-th lower coefficient can push |a_n| above
/// the quotient bound. W_k and case_margin(p+k) always share their sign.
inline double clunie_summand(const ClassParams& cp, int k) {
    if (k < 2) throw std::invalid_argument("summand index starts at k = 2");
    const double t = cp.A * (cp.p - cp.beta) - cp.B * (k + cp.p - cp.beta - 1);
    return t * t - static_cast<double>(k - 1) * (k - 1);
}

/// True when every Clunie summand is nonpositive, i.e. the quotient bound
/// c/(n-p) is justified at every index at once. Equivalent to the margin
/// test at the smallest eligible index because the margin is non-increasing.
inline bool uniformly_nonpositive_summands(const ClassParams& cp) {
    return case_margin(cp, cp.p + 2) <= 0.0;
}

/// The awkward band: index n is classified NonPositiveTerms, yet summands
/// with small k are still positive. The quotient formula is reported there
/// but no sharpness claim survives; the envelope is the safe bound.
inline bool mixed_sign_summands(const ClassParams& cp, int n) {
    return n >= cp.p + 2 && classify_case(cp, n) == CaseLabel::NonPositiveTerms &&
           !uniformly_nonpositive_summands(cp);
}

}  // namespace pvb

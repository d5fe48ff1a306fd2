#pragma once

#include <stdexcept>
#include <vector>

#include "pvb/bounds.hpp"
#include "pvb/extremal.hpp"
#include "pvb/params.hpp"
#include "pvb/verify.hpp"

namespace pvb {

/// The product-form bound coincides with the sharp bound at this index, so
/// there is nothing to falsify.
struct NotAFalsificationRegime : std::logic_error {
    using std::logic_error::logic_error;
};

struct AuditRow {
    int k{};
    int p{};
    double A{};
    double B{};
    double beta{};
    double W{};
};

/// The four fixed parameter choices demonstrating that the Clunie summands
/// take both signs. These are the repo's regression anchors.
inline std::vector<AuditRow> reproduce_table1() {
    struct Entry {
        int k, p;
        double A, B, beta;
    };
    constexpr Entry entries[] = {
        {2, 1, 0.8, 0.5, 0.0},
        {2, 1, -0.5, -0.8, 0.0},
        {3, 2, 0.5, 0.4, 0.5},
        {3, 2, -0.1, -0.7, 0.5},
    };
    std::vector<AuditRow> rows;
    rows.reserve(4);
    for (const auto& e : entries) {
        const ClassParams cp = make_class_params(e.A, e.B, e.beta, e.p);
        rows.push_back({e.k, e.p, e.A, e.B, e.beta, clunie_summand(cp, e.k)});
    }
    return rows;
}

/// Full demonstration package at one (params, n) point in the quotient
/// regime: both bound values, the witness member's actual coefficient, and
/// its membership verification.
struct FalsificationReport {
    ClassParams params;
    int n{};
    double aouf{};
    double theorem1{};
    double observed{};  // |a_n| of the per-n witness member
    bool violated{};    // observed exceeds the product-form bound AND membership holds
    MembershipReport membership;
};

/// Companion sweep against the historical product-form bound: the same random
/// members as random_member_sweep, plus one deterministic per-n witness member
/// for every index in the quotient regime (reported with member_index = -n).
/// There the witnesses are guaranteed counterexamples, so a nonempty result is
/// the expected demonstration, not a defect.
inline std::vector<SweepViolation> aouf_companion_sweep(const ClassParams& cp, int count,
                                                        int max_n, std::uint64_t seed,
                                                        double tol = 1e-9) {
    if (count < 0) throw std::invalid_argument("count must be nonnegative");
    if (max_n < cp.p + 1) throw std::invalid_argument("max_n must be at least p+1");
    if (max_n - cp.p > 32) throw std::invalid_argument("max_n - p must not exceed 32");
    const int order = cp.p + max_n + 8;
    std::vector<double> bounds(static_cast<std::size_t>(max_n) + 1, 0.0);
    for (int n = cp.p + 1; n <= max_n; ++n) bounds[static_cast<std::size_t>(n)] = aouf_bound(cp, n);

    std::vector<SweepViolation> all;
    for (int n = cp.p + 2; n <= max_n; ++n) {
        if (classify_case(cp, n) != CaseLabel::NonPositiveTerms) continue;
        const TruncatedSeries f = expand_per_n(make_per_n_witness(cp, n), order);
        const double modulus = std::abs(f.coeff(n));
        if (modulus > bounds[static_cast<std::size_t>(n)] * (1.0 + tol))
            all.push_back({-n, n, modulus, bounds[static_cast<std::size_t>(n)]});
    }
    for (int idx = 0; idx < count; ++idx) {
        const SchwarzSpec spec = random_schwarz_spec(seed, static_cast<std::uint64_t>(idx));
        const TruncatedSeries f = build_function_from_schwarz(spec, cp, order);
        for (int n = cp.p + 1; n <= max_n; ++n) {
            const double modulus = std::abs(f.coeff(n));
            const double bound = bounds[static_cast<std::size_t>(n)];
            if (modulus > bound * (1.0 + tol)) all.push_back({idx, n, modulus, bound});
        }
    }
    return all;
}

inline FalsificationReport aouf_falsification_report(const ClassParams& cp, int n,
                                                     Complex delta = {1.0, 0.0}, int order = 96) {
    switch (classify_case(cp, n)) {
        case CaseLabel::PositiveTerms:
            throw NotAFalsificationRegime(
                "the product-form bound coincides with the sharp bound in the product regime");
        case CaseLabel::FirstCoefficient:
            throw NotAFalsificationRegime("both bounds agree at n = p+1");
        case CaseLabel::NonPositiveTerms: break;
    }
    const ExtremalSpec witness = make_per_n_witness(cp, n, delta);
    const TruncatedSeries f = expand_per_n(witness, std::max(order, n + 1));
    FalsificationReport rep;
    rep.params = cp;
    rep.n = n;
    rep.aouf = aouf_bound(cp, n);
    rep.theorem1 = theorem1_bound(cp, n);
    rep.observed = std::abs(f.coeff(n));
    rep.membership = schwarz_from_function(f, cp);
    rep.violated = rep.membership.verdict && rep.observed > rep.aouf * (1.0 + 1e-9);
    return rep;
}

}  // namespace pvb

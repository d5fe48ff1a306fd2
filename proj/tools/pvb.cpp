// pvb — sharp coefficient bounds for p-valent starlike functions.
//
// Subcommands: bound, extremal, membership, sweep, audit, falsify,
// identity-check. Output formats: human (default), json, csv.
// Exit codes: 0 success, 1 violated invariant, 2 invalid input.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvb/pvb.hpp"

namespace {

using nlohmann::ordered_json;

enum class Format { Human, Json, Csv };

struct CommonOpts {
    double A{1.0};
    double B{-1.0};
    double beta{0.0};
    int p{1};
    Format format{Format::Human};
    std::string output;
    double tolerance{1e-9};
    double delta_turns{0.0};
};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

const char* yesno(bool b) { return b ? "yes" : "no"; }
const char* truefalse(bool b) { return b ? "true" : "false"; }

void add_params(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-A", o.A, "upper Janowski parameter (-1 <= B < A <= 1)")->required();
    cmd->add_option("-B", o.B, "lower Janowski parameter")->required();
    cmd->add_option("--beta", o.beta, "order of starlikeness, in [0,1)")->required();
    cmd->add_option("-p", o.p, "valence (leading power z^p)")->required();
}

void add_output(CLI::App* cmd, CommonOpts& o) {
    static const std::map<std::string, Format> names{
        {"human", Format::Human}, {"json", Format::Json}, {"csv", Format::Csv}};
    cmd->add_option("--format", o.format, "output format")
        ->transform(CLI::CheckedTransformer(names, CLI::ignore_case));
    cmd->add_option("--output", o.output, "write the report to this path instead of stdout");
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output path: " + o.output);
    f << text;
}

int env_threads() {
    const char* s = std::getenv("PVB_THREADS");
    if (s == nullptr) return 0;
    return std::max(0, std::atoi(s));
}

pvb::ClassParams params_of(const CommonOpts& o) {
    return pvb::make_class_params(o.A, o.B, o.beta, o.p);
}

// Product evaluation stays in direct form only up to this depth.
void check_index_depth(const pvb::ClassParams& cp, int n) {
    if (n - cp.p > 64) throw pvb::InvalidParameters("refusing n - p > 64 (product precision cliff)");
}

ordered_json params_json(const CommonOpts& o) {
    return {{"A", o.A}, {"B", o.B}, {"beta", o.beta}, {"p", o.p}};
}

ordered_json membership_json(const pvb::MembershipReport& m) {
    ordered_json radii = ordered_json::array();
    for (const auto& d : m.radii)
        radii.push_back({{"radius", d.radius},
                         {"included", d.included},
                         {"tail_estimate", d.tail_estimate},
                         {"max_ratio", d.max_ratio}});
    return {{"max_ratio", m.max_ratio},
            {"verdict", m.verdict},
            {"tolerance", m.tolerance},
            {"angles", m.grid.angles},
            {"radii", radii}};
}

std::string membership_human(const pvb::MembershipReport& m) {
    std::ostringstream out;
    out << "membership: verdict=" << yesno(m.verdict) << "  max|phi(z)|/|z|=" << fmtg(m.max_ratio)
        << "  (tolerance " << fmtg(m.tolerance) << ")\n";
    for (const auto& d : m.radii) {
        out << "  radius " << fmtg(d.radius);
        if (d.included)
            out << ": max ratio " << fmtg(d.max_ratio) << ", tail est " << fmtg(d.tail_estimate)
                << "\n";
        else
            out << ": excluded (truncation tail est " << fmtg(d.tail_estimate) << ")\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------- bound

struct BoundRow {
    pvb::BoundReport rep;
    bool attained{};
    double gap{};
};

BoundRow make_bound_row(const pvb::ClassParams& cp, int n, pvb::Complex delta, double tol) {
    BoundRow row;
    row.rep = pvb::bound_report(cp, n);
    const pvb::ExtremalSpec spec = row.rep.label == pvb::CaseLabel::NonPositiveTerms
                                       ? pvb::make_per_n_witness(cp, n, delta)
                                       : pvb::make_global_spec(cp, delta);
    row.attained = pvb::attainment_report(spec, n, tol).attained;
    row.gap = row.rep.theorem1 - row.rep.aouf;
    return row;
}

ordered_json bound_row_json(const BoundRow& row) {
    return {{"n", row.rep.n},
            {"case", pvb::to_string(row.rep.label)},
            {"theorem1", row.rep.theorem1},
            {"aouf", row.rep.aouf},
            {"envelope", row.rep.envelope},
            {"sharp", row.rep.sharp},
            {"attained", row.attained},
            {"gap", row.gap},
            {"mixed", row.rep.mixed}};
}

int run_bound(const CommonOpts& o, int n_single, const std::vector<int>& n_range) {
    const pvb::ClassParams cp = params_of(o);
    int lo = n_single, hi = n_single;
    if (!n_range.empty()) {
        lo = n_range[0];
        hi = n_range[1];
    }
    if (lo == 0) lo = hi = cp.p + 1;
    if (lo > hi || lo < cp.p + 1) throw pvb::InvalidParameters("need p+1 <= n (use -n or --n-range)");
    check_index_depth(cp, hi);
    const pvb::Complex delta = pvb::unit_at_turns(o.delta_turns);

    std::vector<BoundRow> rows;
    for (int n = lo; n <= hi; ++n) rows.push_back(make_bound_row(cp, n, delta, o.tolerance));

    std::ostringstream out;
    if (o.format == Format::Json) {
        if (rows.size() == 1) {
            out << bound_row_json(rows[0]).dump() << "\n";
        } else {
            ordered_json doc{{"command", "bound"}, {"params", params_json(o)}};
            ordered_json arr = ordered_json::array();
            for (const auto& r : rows) arr.push_back(bound_row_json(r));
            doc["rows"] = arr;
            out << doc.dump() << "\n";
        }
    } else if (o.format == Format::Csv) {
        out << "n,case,theorem1,aouf,envelope,attained,gap\n";
        for (const auto& r : rows)
            out << r.rep.n << ',' << pvb::to_string(r.rep.label) << ',' << fmt17(r.rep.theorem1)
                << ',' << fmt17(r.rep.aouf) << ',' << fmt17(r.rep.envelope) << ','
                << truefalse(r.attained) << ',' << fmt17(r.gap) << "\n";
    } else {
        for (const auto& r : rows) {
            out << "n=" << r.rep.n << "  case=" << pvb::to_string(r.rep.label)
                << "  theorem1=" << fmtg(r.rep.theorem1) << "  aouf=" << fmtg(r.rep.aouf)
                << "  envelope=" << fmtg(r.rep.envelope) << "  sharp=" << yesno(r.rep.sharp)
                << "  attained=" << yesno(r.attained) << "  gap=" << fmtg(r.gap);
            if (r.rep.mixed) out << "  [mixed-sign summands: envelope is the certified bound]";
            out << "\n";
        }
    }
    emit(o, out.str());
    for (const auto& r : rows)
        if (!r.attained) return 1;
    return 0;
}

// ------------------------------------------------------------------- extremal

pvb::ExtremalSpec resolve_spec(const pvb::ClassParams& cp, int n, const std::string& family,
                               int per_n_parameter, pvb::Complex delta) {
    if (family == "global") return pvb::make_global_spec(cp, delta);
    if (family == "per-n") {
        if (per_n_parameter > 0) return pvb::make_per_n_spec(cp, per_n_parameter, delta);
        return pvb::make_per_n_witness(cp, n, delta);
    }
    // auto: the family that witnesses the classified case
    return pvb::classify_case(cp, n) == pvb::CaseLabel::NonPositiveTerms
               ? pvb::make_per_n_witness(cp, n, delta)
               : pvb::make_global_spec(cp, delta);
}

int run_extremal(const CommonOpts& o, int n, const std::string& family, int per_n_parameter,
                 int order) {
    const pvb::ClassParams cp = params_of(o);
    check_index_depth(cp, n);
    const pvb::ExtremalSpec spec =
        resolve_spec(cp, n, family, per_n_parameter, pvb::unit_at_turns(o.delta_turns));
    const pvb::AttainmentReport rep = pvb::attainment_report(spec, n, o.tolerance, false, order);

    std::ostringstream out;
    if (o.format == Format::Json) {
        ordered_json doc{{"command", "extremal"},
                         {"params", params_json(o)},
                         {"n", n},
                         {"family", pvb::to_string(spec.family)},
                         {"delta_turns", o.delta_turns},
                         {"case", pvb::to_string(rep.bounds.label)},
                         {"theorem1", rep.bounds.theorem1},
                         {"observed", rep.observed},
                         {"attained", rep.attained},
                         {"case_mismatch", rep.case_mismatch},
                         {"witness_index_mismatch", rep.witness_index_mismatch},
                         {"first_nonzero_index", rep.first_nonzero_index},
                         {"membership", membership_json(rep.membership)}};
        out << doc.dump() << "\n";
    } else if (o.format == Format::Csv) {
        out << "n,case,theorem1,aouf,envelope,attained,gap,family,observed,first_nonzero_index,"
               "case_mismatch,witness_index_mismatch,membership_verdict\n";
        out << n << ',' << pvb::to_string(rep.bounds.label) << ',' << fmt17(rep.bounds.theorem1)
            << ',' << fmt17(rep.bounds.aouf) << ',' << fmt17(rep.bounds.envelope) << ','
            << truefalse(rep.attained) << ',' << fmt17(rep.bounds.theorem1 - rep.bounds.aouf)
            << ',' << pvb::to_string(spec.family) << ',' << fmt17(rep.observed) << ','
            << rep.first_nonzero_index << ',' << truefalse(rep.case_mismatch) << ','
            << truefalse(rep.witness_index_mismatch) << ','
            << truefalse(rep.membership.verdict) << "\n";
    } else {
        out << "family: " << pvb::to_string(spec.family) << " (delta " << fmtg(o.delta_turns)
            << " turns)\n";
        out << "n=" << n << "  case=" << pvb::to_string(rep.bounds.label) << "\n";
        out << "theorem1 bound: " << fmtg(rep.bounds.theorem1) << "\n";
        out << "observed |a_n|: " << fmtg(rep.observed) << "\n";
        out << "attained: " << yesno(rep.attained) << "\n";
        if (rep.case_mismatch) out << "note: this family does not witness the classified case\n";
        if (rep.witness_index_mismatch)
            out << "note: member's extremal power is z^" << rep.first_nonzero_index << ", not z^"
                << n << "\n";
        out << membership_human(rep.membership);
    }
    emit(o, out.str());
    return rep.attained || rep.case_mismatch || rep.witness_index_mismatch ? 0 : 1;
}

// ----------------------------------------------------------------- membership

int run_membership(const CommonOpts& o, int n, const std::string& family, int per_n_parameter,
                   int order) {
    const pvb::ClassParams cp = params_of(o);
    check_index_depth(cp, n);
    const pvb::ExtremalSpec spec =
        resolve_spec(cp, n, family, per_n_parameter, pvb::unit_at_turns(o.delta_turns));
    const pvb::TruncatedSeries f = pvb::expand_extremal(spec, std::max(order, n + 1));
    const pvb::MembershipReport rep = pvb::schwarz_from_function(f, cp);

    std::ostringstream out;
    if (o.format == Format::Json) {
        ordered_json doc{{"command", "membership"},
                         {"params", params_json(o)},
                         {"n", n},
                         {"family", pvb::to_string(spec.family)},
                         {"order", std::max(order, n + 1)}};
        doc.update(membership_json(rep));
        out << doc.dump() << "\n";
    } else if (o.format == Format::Csv) {
        out << "radius,included,tail_estimate,max_ratio\n";
        for (const auto& d : rep.radii)
            out << fmt17(d.radius) << ',' << truefalse(d.included) << ','
                << fmt17(d.tail_estimate) << ',' << fmt17(d.max_ratio) << "\n";
    } else {
        out << "family: " << pvb::to_string(spec.family) << ", expansion order "
            << std::max(order, n + 1) << "\n"
            << membership_human(rep);
    }
    emit(o, out.str());
    return rep.verdict ? 0 : 1;
}

// ---------------------------------------------------------------------- sweep

int run_sweep(const CommonOpts& o, int count, int max_n, std::uint64_t seed) {
    const pvb::ClassParams cp = params_of(o);
    if (max_n == 0) max_n = cp.p + 10;
    if (max_n - cp.p > 32) throw pvb::InvalidParameters("refusing max_n - p > 32");
    const auto violations =
        pvb::random_member_sweep(cp, count, max_n, seed, env_threads(), o.tolerance);

    std::ostringstream out;
    if (o.format == Format::Json) {
        ordered_json doc{{"command", "sweep"}, {"params", params_json(o)},
                         {"count", count},     {"max_n", max_n},
                         {"seed", seed},       {"violations", ordered_json::array()}};
        for (const auto& v : violations)
            doc["violations"].push_back({{"member", v.member_index},
                                         {"n", v.n},
                                         {"modulus", v.modulus},
                                         {"bound", v.bound},
                                         {"excess", v.modulus - v.bound}});
        out << doc.dump() << "\n";
    } else if (o.format == Format::Csv) {
        out << "member,n,modulus,bound,excess\n";
        for (const auto& v : violations)
            out << v.member_index << ',' << v.n << ',' << fmt17(v.modulus) << ','
                << fmt17(v.bound) << ',' << fmt17(v.modulus - v.bound) << "\n";
    } else {
        out << "sweep: count=" << count << " max_n=" << max_n << " seed=" << seed << " -> "
            << violations.size() << " violation(s)\n";
        for (const auto& v : violations)
            out << "  member " << v.member_index << ": |a_" << v.n << "| = " << fmtg(v.modulus)
                << " exceeds bound " << fmtg(v.bound) << "\n";
    }
    emit(o, out.str());
    return violations.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------- audit

int run_audit(const CommonOpts& o, bool table1) {
    if (!table1) throw pvb::InvalidParameters("audit requires --table1");
    const auto rows = pvb::reproduce_table1();

    std::ostringstream out;
    if (o.format == Format::Json) {
        ordered_json doc{{"command", "audit"}, {"table1", ordered_json::array()}};
        for (const auto& r : rows)
            doc["table1"].push_back({{"k", r.k},
                                     {"p", r.p},
                                     {"A", r.A},
                                     {"B", r.B},
                                     {"beta", r.beta},
                                     {"W", r.W}});
        out << doc.dump() << "\n";
    } else if (o.format == Format::Csv) {
        out << "k,p,A,B,beta,W\n";
        for (const auto& r : rows)
            out << r.k << ',' << r.p << ',' << fmt17(r.A) << ',' << fmt17(r.B) << ','
                << fmt17(r.beta) << ',' << fmt17(r.W) << "\n";
    } else {
        out << "  k  p      A      B   beta          W\n";
        for (const auto& r : rows) {
            char line[128];
            std::snprintf(line, sizeof line, "%3d %2d %6g %6g %6g %10g\n", r.k, r.p, r.A, r.B,
                          r.beta, r.W);
            out << line;
        }
    }
    emit(o, out.str());
    return 0;
}

// -------------------------------------------------------------------- falsify

int run_falsify(const CommonOpts& o, int n, int order) {
    const pvb::ClassParams cp = params_of(o);
    check_index_depth(cp, n);
    const pvb::FalsificationReport rep =
        pvb::aouf_falsification_report(cp, n, pvb::unit_at_turns(o.delta_turns), order);

    std::ostringstream out;
    if (o.format == Format::Json) {
        ordered_json doc{{"command", "falsify"},
                         {"params", params_json(o)},
                         {"n", n},
                         {"aouf", rep.aouf},
                         {"theorem1", rep.theorem1},
                         {"observed", rep.observed},
                         {"membership_verdict", rep.membership.verdict},
                         {"max_ratio", rep.membership.max_ratio},
                         {"violated", rep.violated}};
        out << doc.dump() << "\n";
    } else if (o.format == Format::Csv) {
        out << "n,aouf,theorem1,observed,membership_verdict,violated\n";
        out << n << ',' << fmt17(rep.aouf) << ',' << fmt17(rep.theorem1) << ','
            << fmt17(rep.observed) << ',' << truefalse(rep.membership.verdict) << ','
            << truefalse(rep.violated) << "\n";
    } else {
        if (rep.violated)
            out << "Theorem A violated: " << fmtg(rep.observed) << " > " << fmtg(rep.aouf) << "\n";
        else
            out << "Theorem A not violated here: " << fmtg(rep.observed)
                << " <= " << fmtg(rep.aouf) << "\n";
        out << "sharp bound at n=" << n << ": " << fmtg(rep.theorem1) << "; product-form claim: "
            << fmtg(rep.aouf) << "; witness |a_n|: " << fmtg(rep.observed) << "\n";
        out << membership_human(rep.membership);
    }
    emit(o, out.str());
    return rep.violated ? 0 : 1;
}

// --------------------------------------------------------------- identity-check

int run_identity_check(const CommonOpts& o, int m_single, int max_m) {
    const pvb::ClassParams cp = params_of(o);
    std::vector<int> targets;
    if (m_single > 0) {
        check_index_depth(cp, m_single);
        targets.push_back(m_single);
    } else {
        if (max_m == 0) max_m = cp.p + 12;
        check_index_depth(cp, max_m);
        for (int m = cp.p + 2; m <= max_m; ++m)
            if (pvb::classify_case(cp, m) == pvb::CaseLabel::PositiveTerms) targets.push_back(m);
    }

    struct Row {
        int m;
        double residual, relative;
    };
    std::vector<Row> rows;
    double worst = 0.0;
    for (int m : targets) {
        const double residual = pvb::induction_identity_residual(cp, m);
        const double lhs = pvb::theorem1_bound(cp, m);
        const double relative = std::abs(residual) / std::max(lhs * lhs, 1e-300);
        rows.push_back({m, residual, relative});
        worst = std::max(worst, relative);
    }

    std::ostringstream out;
    if (o.format == Format::Json) {
        ordered_json doc{{"command", "identity-check"}, {"params", params_json(o)},
                         {"rows", ordered_json::array()}};
        for (const auto& r : rows)
            doc["rows"].push_back({{"m", r.m}, {"residual", r.residual}, {"relative", r.relative}});
        doc["max_relative"] = worst;
        out << doc.dump() << "\n";
    } else if (o.format == Format::Csv) {
        out << "m,residual,relative\n";
        for (const auto& r : rows)
            out << r.m << ',' << fmt17(r.residual) << ',' << fmt17(r.relative) << "\n";
    } else {
        if (rows.empty())
            out << "no index in range lies in the product regime for these parameters\n";
        for (const auto& r : rows)
            out << "m=" << r.m << "  residual=" << fmtg(r.residual)
                << "  relative=" << fmtg(r.relative) << "\n";
        if (!rows.empty()) out << "max relative residual: " << fmtg(worst) << "\n";
    }
    emit(o, out.str());
    return worst <= o.tolerance ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coefficient-bound verification for p-valent starlike functions"};
    app.require_subcommand(1);

    CommonOpts o;
    int rc = 0;

    // bound
    auto* bound = app.add_subcommand("bound", "sharp bound, product-form claim, and envelope at n");
    int bound_n = 0;
    std::vector<int> bound_range;
    add_params(bound, o);
    bound->add_option("-n", bound_n, "coefficient index (>= p+1)");
    bound->add_option("--n-range", bound_range, "inclusive index range lo hi")->expected(2);
    bound->add_option("--tolerance", o.tolerance, "attainment tolerance");
    bound->add_option("--delta-turns", o.delta_turns, "extremal rotation, delta = exp(2*pi*i*t)");
    add_output(bound, o);
    bound->callback([&] { rc = run_bound(o, bound_n, bound_range); });

    // extremal
    auto* extremal = app.add_subcommand("extremal", "expand an extremal member and audit attainment");
    int ext_n = 0, ext_param = 0, ext_order = 96;
    std::string ext_family = "auto";
    add_params(extremal, o);
    extremal->add_option("-n", ext_n, "coefficient index to audit")->required();
    extremal->add_option("--family", ext_family, "auto | global | per-n")
        ->check(CLI::IsMember({"auto", "global", "per-n"}));
    extremal->add_option("--per-n-parameter", ext_param,
                         "per-n family parameter (default: the member targeting n)");
    extremal->add_option("--order", ext_order, "expansion order");
    extremal->add_option("--tolerance", o.tolerance, "attainment tolerance");
    extremal->add_option("--delta-turns", o.delta_turns, "delta = exp(2*pi*i*t)");
    add_output(extremal, o);
    extremal->callback([&] { rc = run_extremal(o, ext_n, ext_family, ext_param, ext_order); });

    // membership
    auto* membership =
        app.add_subcommand("membership", "empirical class-membership check of an extremal member");
    int mem_n = 0, mem_param = 0, mem_order = 256;
    std::string mem_family = "auto";
    add_params(membership, o);
    membership->add_option("-n", mem_n, "coefficient index selecting the member")->required();
    membership->add_option("--family", mem_family, "auto | global | per-n")
        ->check(CLI::IsMember({"auto", "global", "per-n"}));
    membership->add_option("--per-n-parameter", mem_param, "per-n family parameter");
    membership->add_option("--order", mem_order, "expansion order");
    membership->add_option("--delta-turns", o.delta_turns, "delta = exp(2*pi*i*t)");
    add_output(membership, o);
    membership->callback([&] { rc = run_membership(o, mem_n, mem_family, mem_param, mem_order); });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "random class members vs the sharp bounds");
    int sweep_count = 1000, sweep_max_n = 0;
    std::uint64_t sweep_seed = 0;
    add_params(sweep, o);
    sweep->add_option("--count", sweep_count, "number of random members");
    sweep->add_option("--max-n", sweep_max_n, "highest audited index (default p+10)");
    sweep->add_option("--seed", sweep_seed, "sweep seed");
    sweep->add_option("--tolerance", o.tolerance, "violation tolerance");
    add_output(sweep, o);
    sweep->callback([&] { rc = run_sweep(o, sweep_count, sweep_max_n, sweep_seed); });

    // audit
    auto* audit = app.add_subcommand("audit", "reproduce the fixed summand-sign table");
    bool audit_table1 = false;
    audit->add_flag("--table1", audit_table1, "emit the four-row summand table");
    add_output(audit, o);
    audit->callback([&] { rc = run_audit(o, audit_table1); });

    // falsify
    auto* falsify =
        app.add_subcommand("falsify", "demonstrate the product-form claim failing at (params, n)");
    int falsify_n = 0, falsify_order = 96;
    add_params(falsify, o);
    falsify->add_option("-n", falsify_n, "coefficient index (quotient regime)")->required();
    falsify->add_option("--order", falsify_order, "expansion order");
    falsify->add_option("--delta-turns", o.delta_turns, "delta = exp(2*pi*i*t)");
    add_output(falsify, o);
    falsify->callback([&] { rc = run_falsify(o, falsify_n, falsify_order); });

    // identity-check
    auto* identity = app.add_subcommand("identity-check",
                                        "product/weighted-sum identity residuals in the product regime");
    int id_m = 0, id_max_m = 0;
    add_params(identity, o);
    identity->add_option("-m", id_m, "single index to check");
    identity->add_option("--max-m", id_max_m, "check all eligible m up to this (default p+12)");
    identity->add_option("--tolerance", o.tolerance, "relative residual tolerance");
    add_output(identity, o);
    identity->callback([&] { rc = run_identity_check(o, id_m, id_max_m); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const pvb::DegenerateDenominator& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

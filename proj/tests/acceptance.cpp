// Acceptance suite: one pass/fail line per criterion.
// Usage: acceptance <path-to-pvb-cli>
//
//  1. fixed summand table reproduced through the CLI       (1e-12, < 1 s)
//  2. Bieberbach chain: bound n and Koebe attainment       (1e-12 / 1e-9, < 1 s)
//  3. reduction to the univalent three-case bounds         (1e-12, >= 100 pairs)
//  4. sharpness on randomized grids, both regimes          (1e-9, 200+200, < 10 s)
//  5. product-claim falsification at the showcase point    (CLI, < 2 s)
//  6. 20-point x 1000-member no-violation sweep, seed 42   (1e-9, < 60 s)
//  7. induction identity residuals, 500 product points     (1e-9 relative)
//  8. summand-sign / classification coherence, 1e4 triples (zero exceptions)
//  9. Schwarz round-trip for 500 random specs              (1e-6 at grid points)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvb/pvb.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using pvb::Complex;

int failures = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int index, const char* name, bool ok, const std::string& detail) {
    std::printf("%s  criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, name, detail.c_str());
    if (!ok) ++failures;
}

struct RunResult {
    int code{};
    std::string out;
};

RunResult run_cli(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr) {
        r.code = -1;
        return r;
    }
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed * 2654435761ULL + 1) {}
    std::uint64_t next() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 0x2545F4914F6CDD1DULL;
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int integer(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Complex circle() { return std::polar(1.0, 2.0 * pvb::kPi * unit()); }
};

pvb::ClassParams random_params(Rng& rng, int max_p = 3) {
    const int p = rng.integer(1, max_p);
    const double beta = rng.range(0.0, 0.95);
    const double B = rng.range(-1.0, 0.9);
    const double A = std::min(rng.range(B + 0.05, 1.0), 1.0);
    return pvb::make_class_params(A, B, beta, p);
}

// --------------------------------------------------------------- criterion 1

void criterion1(const std::string& pvb_bin) {
    const auto start = Clock::now();
    const auto r = run_cli(pvb_bin + " audit --table1 --format csv");
    const double elapsed = seconds_since(start);
    bool ok = r.code == 0;
    const double expected[] = {-0.96, 0.21, -3.5775, 1.29};
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);  // header
    int row = 0;
    double worst = 0.0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        if (row >= 4) {
            ok = false;
            break;
        }
        const auto pos = line.rfind(',');
        const double w = std::strtod(line.c_str() + pos + 1, nullptr);
        worst = std::max(worst, std::abs(w - expected[row]));
        ++row;
    }
    ok = ok && row == 4 && worst <= 1e-12 && elapsed < 1.0;
    std::ostringstream detail;
    detail << "4 rows, max |dW| = " << worst << ", " << elapsed << " s";
    report(1, "summand table reproduction", ok, detail.str());
}

// --------------------------------------------------------------- criterion 2

void criterion2() {
    const auto start = Clock::now();
    const auto cp = pvb::make_class_params(1.0, -1.0, 0.0, 1);
    bool ok = true;
    double worst = 0.0;
    for (int n = 2; n <= 30; ++n) {
        const double bound = pvb::theorem1_bound(cp, n);
        worst = std::max(worst, std::abs(bound - n) / n);
        const auto rep = pvb::attainment_report(pvb::make_global_spec(cp), n, 1e-9);
        ok = ok && rep.attained;
    }
    const double elapsed = seconds_since(start);
    ok = ok && worst <= 1e-12 && elapsed < 1.0;
    std::ostringstream detail;
    detail << "n = 2..30, max rel dev = " << worst << ", " << elapsed << " s";
    report(2, "Bieberbach chain with Koebe attainment", ok, detail.str());
}

// --------------------------------------------------------------- criterion 3

void criterion3() {
    bool ok = true;
    int pairs = 0;
    double worst = 0.0;
    for (double A = -0.9; A <= 1.0 + 1e-12; A += 0.17) {
        for (double B = -1.0; B < A - 0.01; B += 0.09) {
            ++pairs;
            const auto cp = pvb::make_class_params(std::min(A, 1.0), B, 0.0, 1);
            const auto dev = [&](double got, double want) {
                return std::abs(got - want) / std::max(std::abs(want), 1e-300);
            };
            worst = std::max(worst, dev(pvb::theorem1_bound(cp, 2), cp.A - cp.B));
            for (int n = 3; n <= 12; ++n) {
                if (cp.A - 2.0 * cp.B <= 1.0)
                    worst = std::max(worst, dev(pvb::theorem1_bound(cp, n), (cp.A - cp.B) / (n - 1)));
                if (cp.A - (n - 1) * cp.B > n - 2) {
                    double lemma = 1.0;
                    for (int j = 2; j <= n; ++j) lemma *= (cp.A - (j - 1) * cp.B) / (j - 1);
                    worst = std::max(worst, dev(pvb::theorem1_bound(cp, n), lemma));
                }
            }
        }
    }
    ok = pairs >= 100 && worst <= 1e-12;
    std::ostringstream detail;
    detail << pairs << " (A,B) pairs, n <= 12, max rel dev = " << worst;
    report(3, "reduction to the univalent three-case bounds", ok, detail.str());
}

// --------------------------------------------------------------- criterion 4

void criterion4() {
    const auto start = Clock::now();
    Rng rng(0xacce55);
    int case3 = 0, case2 = 0, attained = 0;
    while (case3 < 200 || case2 < 200) {
        const auto cp = random_params(rng);
        const int n = cp.p + rng.integer(2, 12);
        const auto label = pvb::classify_case(cp, n);
        if (label == pvb::CaseLabel::PositiveTerms && case3 < 200) {
            ++case3;
            if (pvb::attainment_report(pvb::make_global_spec(cp, rng.circle()), n, 1e-9).attained)
                ++attained;
        } else if (label == pvb::CaseLabel::NonPositiveTerms && case2 < 200) {
            ++case2;
            if (pvb::attainment_report(pvb::make_per_n_witness(cp, n, rng.circle()), n, 1e-9)
                    .attained)
                ++attained;
        }
    }
    const double elapsed = seconds_since(start);
    const bool ok = attained == case3 + case2 && elapsed < 10.0;
    std::ostringstream detail;
    detail << attained << "/" << case3 + case2 << " attained (200 product + 200 quotient), "
           << elapsed << " s";
    report(4, "sharpness on randomized grids", ok, detail.str());
}

// --------------------------------------------------------------- criterion 5

void criterion5(const std::string& pvb_bin) {
    const auto start = Clock::now();
    const auto human = run_cli(pvb_bin + " falsify -A 0.8 -B 0.5 --beta 0 -p 1 -n 3");
    const auto json = run_cli(pvb_bin + " falsify -A 0.8 -B 0.5 --beta 0 -p 1 -n 3 --format json");
    const double elapsed = seconds_since(start);
    bool ok = human.code == 0 && json.code == 0;
    ok = ok && human.out.find("Theorem A violated") != std::string::npos;
    double aouf = 0.0, theorem1 = 0.0, observed = 0.0, max_ratio = 2.0;
    bool membership = false;
    if (ok) {
        const auto doc = nlohmann::ordered_json::parse(json.out);
        aouf = doc["aouf"].get<double>();
        theorem1 = doc["theorem1"].get<double>();
        observed = doc["observed"].get<double>();
        membership = doc["membership_verdict"].get<bool>();
        max_ratio = doc["max_ratio"].get<double>();
        ok = ok && doc["violated"].get<bool>();
    }
    ok = ok && std::abs(aouf - 0.03) <= 1e-12 && std::abs(theorem1 - 0.15) <= 1e-12 &&
         std::abs(observed - 0.15) <= 1e-9 * 0.15 && membership && max_ratio <= 1.0 + 1e-6 &&
         elapsed < 2.0;
    std::ostringstream detail;
    detail << "exit " << human.code << ", " << observed << " > " << aouf
           << ", membership max ratio " << max_ratio << ", " << elapsed << " s";
    report(5, "product-claim falsification at (0.8, 0.5, 0, 1), n = 3", ok, detail.str());
}

// --------------------------------------------------------------- criterion 6

void criterion6() {
    const auto start = Clock::now();
    // ten product-regime points (margin positive through p+10) and ten
    // quotient-regime points (uniformly nonpositive summands)
    const double grid[20][4] = {
        {1.0, -1.0, 0.0, 1},   {1.0, -1.0, 0.5, 1},  {0.5, -1.0, 0.0, 1},
        {1.0, -1.0, 0.0, 2},   {0.8, -0.95, 0.25, 2}, {1.0, -0.8, 0.3, 3},
        {0.9, -0.9, 0.1, 1},   {0.3, -0.95, 0.0, 2}, {-0.1, -0.9, 0.5, 2},
        {-0.5, -1.0, 0.0, 1},  {0.8, 0.5, 0.0, 1},   {0.5, 0.4, 0.5, 2},
        {1.0, 0.5, 0.0, 1},    {0.6, 0.2, 0.3, 1},   {0.9, 0.7, 0.5, 3},
        {0.2, 0.0, 0.5, 1},    {0.5, 0.0, 0.0, 1},   {0.7, 0.6, 0.9, 1},
        {0.4, 0.1, 0.2, 2},    {0.95, 0.9, 0.0, 1},
    };
    std::size_t total_violations = 0;
    int points = 0;
    int product_points = 0, quotient_points = 0;
    for (const auto& g : grid) {
        const auto cp = pvb::make_class_params(g[0], g[1], g[2], static_cast<int>(g[3]));
        (pvb::classify_case(cp, cp.p + 2) == pvb::CaseLabel::PositiveTerms ? product_points
                                                                           : quotient_points)++;
        total_violations += pvb::random_member_sweep(cp, 1000, cp.p + 10, 42, 0, 1e-9).size();
        ++points;
    }
    const double elapsed = seconds_since(start);
    const bool ok = points == 20 && product_points == 10 && quotient_points == 10 &&
                    total_violations == 0 && elapsed < 60.0;
    std::ostringstream detail;
    detail << "20 points x 1000 members, max_n = p+10, seed 42, " << total_violations
           << " violations, " << elapsed << " s";
    report(6, "no-violation random member sweep", ok, detail.str());
}

// --------------------------------------------------------------- criterion 7

void criterion7() {
    Rng rng(0x1de27);
    int checked = 0;
    double worst = 0.0;
    while (checked < 500) {
        const auto cp = random_params(rng);
        const int m = cp.p + rng.integer(2, 20);
        if (pvb::classify_case(cp, m) != pvb::CaseLabel::PositiveTerms) continue;
        ++checked;
        const double lhs = std::pow(pvb::theorem1_bound(cp, m), 2);
        worst = std::max(worst, std::abs(pvb::induction_identity_residual(cp, m)) / lhs);
    }
    const bool ok = worst <= 1e-9;
    std::ostringstream detail;
    detail << checked << " product-regime (params, m) pairs, max rel residual = " << worst;
    report(7, "induction identity residuals", ok, detail.str());
}

// --------------------------------------------------------------- criterion 8

void criterion8() {
    Rng rng(0xc08e6);
    int triples = 0, exceptions = 0;
    while (triples < 10000) {
        const auto cp = random_params(rng);
        const int n = cp.p + rng.integer(2, 14);
        const int k = rng.integer(2, n - cp.p);
        ++triples;
        const auto label = pvb::classify_case(cp, n);
        const double w = pvb::clunie_summand(cp, k);
        // the summand's sign always matches the classification of index p+k
        if ((w > 0.0) != (pvb::classify_case(cp, cp.p + k) == pvb::CaseLabel::PositiveTerms))
            ++exceptions;
        // a product label at n forces every summand below it positive
        if (label == pvb::CaseLabel::PositiveTerms && !(w > 0.0)) ++exceptions;
        // a quotient label at n forces the regime-defining summand nonpositive
        if (label == pvb::CaseLabel::NonPositiveTerms &&
            pvb::clunie_summand(cp, n - cp.p) > 0.0)
            ++exceptions;
    }
    const bool ok = exceptions == 0;
    std::ostringstream detail;
    detail << triples << " (params, n, k) triples, " << exceptions << " exceptions";
    report(8, "summand-sign / classification coherence", ok, detail.str());
}

// --------------------------------------------------------------- criterion 9

void criterion9() {
    const pvb::ClassParams params[] = {
        pvb::make_class_params(1.0, -1.0, 0.0, 1),
        pvb::make_class_params(0.8, 0.5, 0.0, 1),
        pvb::make_class_params(0.5, 0.0, 0.25, 2),
        pvb::make_class_params(0.9, -0.6, 0.4, 3),
    };
    const pvb::SampleGrid grid{{0.3, 0.6, 0.9, 0.99}, 64};
    int specs = 0, matched = 0;
    double worst = 0.0;
    for (std::uint64_t index = 0; index < 500; ++index) {
        const auto spec = pvb::random_schwarz_spec(42, index);
        const auto& cp = params[index % 4];
        const auto f = pvb::build_function_from_schwarz(spec, cp, 384);
        const auto rep = pvb::schwarz_from_function(f, cp, grid);
        const auto q = pvb::log_derivative_quotient(f);
        double dev = 0.0;
        for (const auto& d : rep.radii) {
            if (!d.included) continue;
            for (int i = 0; i < grid.angles; ++i) {
                const Complex z = std::polar(d.radius, 2.0 * pvb::kPi * i / grid.angles);
                dev = std::max(dev, std::abs(pvb::moebius_recover(cp, q.evaluate(z)) -
                                             pvb::schwarz_value(spec, z)));
            }
        }
        ++specs;
        if (rep.verdict && dev <= 1e-6) ++matched;
        worst = std::max(worst, dev);
    }
    const bool ok = specs == 500 && matched == specs;
    std::ostringstream detail;
    detail << matched << "/" << specs << " specs matched, max |dphi| = " << worst;
    report(9, "Schwarz build/recover round trip", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-pvb-cli>\n");
        return 2;
    }
    const std::string pvb_bin = std::string("'") + argv[1] + "'";
    criterion1(pvb_bin);
    criterion2();
    criterion3();
    criterion4();
    criterion5(pvb_bin);
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures == 0)
        std::printf("all 9 acceptance criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}

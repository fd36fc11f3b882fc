// One PASS/FAIL line per acceptance criterion. Usage: acceptance [criterion numbers...]
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "d4/bounds.hpp"
#include "d4/pell.hpp"
#include "d4/reduction.hpp"
#include "d4/search.hpp"
#include "d4/tuples.hpp"
#include "reduction_oracle.hpp"
#include "support.hpp"

using namespace d4;

namespace {

const RealCtx kCtx(120);

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [FAILED]");
    }
};

bool rel(double got, double want, double tol) { return std::fabs(got - want) <= tol * std::fabs(want); }

std::string sci(double x, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

std::string run_cli(const std::string& args, int* code = nullptr) {
    std::string cmd = std::string(D4_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    if (!p) return out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    if (code) *code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

// ---------------------------------------------------------------- 1

void triple_algebra(Verdict& v) {
    v.require(d_plus(Int(1), Int(5), Int(12)) == 96, "d+(1,5,12) = 96");
    v.require(d_plus(Int(1), Int(12), Int(96)) == 1365, "d+(1,12,96) = 1365");
    std::mt19937_64 rng(1);
    long bad_identity = 0, bad_bound = 0, nonregular = 0;
    for (int i = 0; i < 10000; ++i) {
        D4Triple t = testing::random_triple(rng, 1000000);
        Int dp = d_plus(t);
        if (d_minus(D4Triple::make(t.b, t.c, dp)) != t.a || d_minus(D4Triple::make(t.a, t.c, dp)) != t.b ||
            d_minus(D4Triple::make(t.a, t.b, dp)) != t.c)
            ++bad_identity;
        Int dm = d_minus(t);
        if (dm != 0) {
            ++nonregular;
            if (d_plus(t.a, t.b, dm) != t.c) ++bad_identity;
        }
        Int abc = t.a * t.b * t.c;
        if (!(abc + t.c < dp && dp < abc + 4 * t.c)) ++bad_bound;
    }
    v.require(bad_identity == 0, "d-/d+ identities on 10^4 random triples (" + std::to_string(nonregular) +
                                     " non-regular)");
    v.require(bad_bound == 0, "abc+c < d+ < abc+4c");
}

// ---------------------------------------------------------------- 2

void pell_completeness(Verdict& v) {
    const uint64_t u_max = 1000000;
    long problems = 0, mismatched = 0, solutions = 0;
    for (uint64_t R = 3; R <= 200; ++R) {
        const uint64_t n = R * R - 4;
        for (uint64_t A = 1; A <= R; ++A) {
            if (n % A != 0 || A >= n / A) continue;
            const uint64_t B = n / A;
            ++problems;
            PellProblem p = PellProblem::make(Int(static_cast<unsigned long>(A)), Int(static_cast<unsigned long>(B)));
            std::set<std::pair<Int, Int>> walked;
            for (const auto& f : orbit_representatives(p))
                for (const auto& w : walk_until(p, f, Int(static_cast<unsigned long>(u_max)))) {
                    if (!satisfies(p, w)) ++mismatched;
                    walked.insert({w.U, abs(w.V)});
                }
            std::set<std::pair<Int, Int>> brute;
            for (uint64_t U = 0; U <= u_max; ++U) {
                __int128 num = static_cast<__int128>(B) * U * U - 4 * static_cast<__int128>(B - A);
                if (num < 0 || num % A != 0) continue;
                auto q = static_cast<uint64_t>(num / A);
                if (is_square_u64(q))
                    brute.insert({Int(static_cast<unsigned long>(U)), Int(static_cast<unsigned long>(isqrt_u64(q)))});
            }
            solutions += static_cast<long>(brute.size());
            if (walked != brute) ++mismatched;
        }
    }
    v.require(mismatched == 0, std::to_string(problems) + " Pell problems with R <= 200, " +
                                   std::to_string(solutions) + " solutions (U <= 10^6) match the scan");
}

// ---------------------------------------------------------------- 3

void gap_constant(Verdict& v) {
    PrecisionScope ps(kCtx);
    Interval a = gap_alpha(Interval(1L), Interval(100000L), Interval::exact(Int("10000000000")), Interval(1L), kCtx);
    double x = a.mid_d();
    v.require(std::round(x * 1e6) == 499997, "alpha = " + sci(x, 9));
}

// ---------------------------------------------------------------- 4

void aleksentsev(Verdict& v) {
    double k = aleksentsev_constant(kCtx).mid_d();
    BoundReport r = aleksentsev_initial_bounds(kCtx);
    v.require(rel(k, 6.005175e11, 1e-4), "constant " + sci(k, 8));
    v.require(rel(r.ceilings.ac_max, 1.08915e34, 1e-3), "ac_max " + sci(r.ceilings.ac_max));
    v.require(rel(r.ceilings.h_max, 6.95745e16, 1e-3), "h_max " + sci(r.ceilings.h_max));
}

// ---------------------------------------------------------------- 5

void waypoints(Verdict& v) {
    MignotteParams p = MignotteParams::make(11.5, 4.7, 1043);
    double gh = mignotte_Gh(p, kCtx).mid_d();
    v.require(rel(gh, 5.66642e9, 1e-4), "G(h) " + sci(gh));
    Ceilings first = aleksentsev_initial_bounds(kCtx).ceilings;
    double a2 = mignotte_a2_h_coefficient(p, LaurentParams{59, 63}, first, kCtx).mid_d();
    v.require(rel(a2, 4.85941e10, 1e-3), "(A2) coefficient " + sci(a2) + " vs 4.85941e10");
    BoundReport r = iterate_bounds(GridSpec::full(), 5, 1, kCtx);
    v.require(rel(r.ceilings.ac_max, 1.17732e28, 5e-3), "ac " + sci(r.ceilings.ac_max));
    v.require(rel(r.ceilings.h_max, 7.23357e13, 5e-3), "h " + sci(r.ceilings.h_max));
    v.require(rel(r.h_coeff, 3.46289e10, 5e-3), "h_coeff " + sci(r.h_coeff));
}

// ---------------------------------------------------------------- 6

void regular_table(Verdict& v) {
    const double want[4][6] = {{25.508, 7.537, 4.005, 1.07, 0.02276, 0.04696},
                               {22.736, 6.832, 4.006, 1.076, 0.02284, 0.04722},
                               {19.963, 6.126, 4.007, 1.085, 0.02294, 0.04753},
                               {17.191, 5.421, 4.0085, 1.097, 0.02307, 0.04792}};
    const int gs[4] = {1, 2, 4, 8};
    int bad = 0;
    double worst = 0;
    for (int i = 0; i < 4; ++i) {
        LaurentTableRow r = laurent_table_regular(gs[i], kCtx);
        const double got[6] = {r.hprime, r.H, r.omega, r.theta, r.C, r.Cp};
        for (int j = 0; j < 6; ++j) {
            double e = std::fabs(got[j] - want[i][j]) / want[i][j];
            worst = std::max(worst, e);
            if (e > 5e-3) ++bad;
        }
    }
    v.require(bad == 0, "24 table entries, worst relative error " + sci(worst, 3));
    const long s1[4] = {20610, 44324, 94814, 201884};
    bool s_ok = true;
    for (int i = 0; i < 4; ++i) s_ok = s_ok && lambda23_bounds_regular(gs[i], kCtx).s_ceiling == s1[i];
    v.require(s_ok, "S1 = {20610, 44324, 94814, 201884}");
    long t = self_log_ceiling(regular_log_coeff(kCtx), 8, 2, kCtx);
    v.require(t <= 127293, "t ceiling " + std::to_string(t) + " vs 127293");
    RegularRBounds rb = regular_r_bounds(3.46289e10, kCtx);
    v.require(rb.r_max < 9164950, "r ceiling " + std::to_string(rb.r_max));
}

// ---------------------------------------------------------------- 7

void reduction_soundness(Verdict& v) {
    std::mt19937_64 rng(7);
    RealCtx ctx(60);
    int reduced = 0, false_cert = 0, undecided = 0;
    for (int i = 0; i < 200; ++i) {
        long M = 20 + static_cast<long>(rng() % 481);
        auto in = testing::small_instance(rng, M, i % 2 == 0, ctx);
        ReductionOutcome o = baker_davenport(in.problem, ctx);
        if (!o.reduced()) continue;
        ++reduced;
        long truth = testing::largest_solution(in, M, RealCtx(200));
        if (truth < 0) ++undecided;
        else if (truth > o.J_max) ++false_cert;
    }
    v.require(false_cert == 0 && undecided == 0,
              std::to_string(reduced) + "/200 reduced, " + std::to_string(false_cert) + " false certifications");
}

// ---------------------------------------------------------------- 8 and 10

struct Slice {
    std::string name;
    SearchCase sc;
};

std::vector<Slice> desk_slices() {
    std::vector<Slice> out;
    SearchCase r = SearchCase::defaults(SearchKind::Regular);
    r.override_a_max(2);
    r.override_r_max(200);
    out.push_back({"regular a<=2 r<=200", r});
    SearchCase r2 = SearchCase::defaults(SearchKind::Regular);
    r2.override_a_max(2);
    r2.override_r_max(2000);
    out.push_back({"regular a<=2 r<=2000 (extra)", r2});
    SearchCase d = SearchCase::defaults(SearchKind::Degree1);
    d.override_a_max(5);
    d.override_r_max(500);
    out.push_back({"degree1 a<=5 r<=500", d});
    SearchCase c1 = SearchCase::defaults(SearchKind::CaseI);
    c1.override_R_max(200);
    out.push_back({"case1 R<=200", c1});
    SearchCase c4 = SearchCase::defaults(SearchKind::CaseIV);
    c4.override_a_max(20);
    out.push_back({"case4 a<=20", c4});
    return out;
}

struct SliceRun {
    std::string json;  // result lines and summary, as the CLI prints them
    SearchSummary summary;
    long invalid = 0;  // results failing independent re-validation
};

SliceRun run_slice(const Slice& s, int jobs) {
    SliceRun out;
    std::string lines;
    SearchOptions o;
    o.jobs = jobs;
    o.on_result = [&](const SearchResult& r) {
        lines += result_json(r) + "\n";
        bool ok = verify_dn_tuple({r.a, r.b, r.c});
        if (s.sc.kind == SearchKind::Regular) ok = ok && is_regular_triple(D4Triple::make(r.a, r.b, r.c));
        else if (s.sc.kind == SearchKind::CaseI) ok = ok && c_interval(r.a, r.b, r.c) == 1;
        else if (s.sc.kind == SearchKind::CaseIV) ok = ok && c_interval(r.a, r.b, r.c) == 4;
        if (!ok) ++out.invalid;
    };
    out.summary = run_search(s.sc, o);
    out.json = lines + summary_json(out.summary) + "\n";
    return out;
}

std::vector<std::string> g_slice_json;  // jobs=1 output of criterion 8, reused by criterion 10

void desk_searches(Verdict& v) {
    auto t0 = std::chrono::steady_clock::now();
    g_slice_json.clear();
    for (const Slice& s : desk_slices()) {
        auto s0 = std::chrono::steady_clock::now();
        SliceRun r = run_slice(s, 1);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
        const SearchCounts& c = r.summary.counts;
        bool ok = r.summary.complete && c.examined == c.reduced && c.examined == c.below5 && r.invalid == 0;
        v.require(ok, s.name + ": " + std::to_string(c.examined) + " triples, " + std::to_string(c.below5) +
                          " with J_max < 5, max J " + std::to_string(c.max_J) + ", " + sci(secs, 3) + " s");
        g_slice_json.push_back(std::move(r.json));
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(total < 1800, "total " + sci(total, 4) + " s (limit 1800)");
}

void determinism(Verdict& v) {
    int c1 = 0, c8 = 0;
    std::string b1 = run_cli("bounds iterate --grid full --jobs 1", &c1);
    std::string b8 = run_cli("bounds iterate --grid full --jobs 8", &c8);
    v.require(c1 == 0 && c8 == 0 && !b1.empty() && b1 == b8, "bounds iterate JSON identical under --jobs 1/8");
    auto slices = desk_slices();
    if (g_slice_json.size() != slices.size()) {
        g_slice_json.clear();
        for (const Slice& s : slices) g_slice_json.push_back(run_slice(s, 1).json);
    }
    for (size_t i = 0; i < slices.size(); ++i) {
        SliceRun r = run_slice(slices[i], 8);
        v.require(r.json == g_slice_json[i], slices[i].name + " JSON identical under jobs 1/8");
    }
    // the CLI stream as well, on the quick slices
    for (const char* args : {"--case case1 --r-max 200", "--case degree1 --a-max 5 --r-max 500"}) {
        std::string j1 = run_cli(std::string("search ") + args + " --jobs 1");
        std::string j8 = run_cli(std::string("search ") + args + " --jobs 8");
        v.require(!j1.empty() && j1 == j8, std::string("d4 search ") + args + " identical under --jobs 1/8");
    }
}

// ---------------------------------------------------------------- 9

void brute_oracle(Verdict& v) {
    auto quints = brute_force_tuples(100000, 5);
    v.require(quints.empty(), "no D(4)-quintuple with elements <= 10^5");
    auto quads = classify_quadruples(brute_force_tuples(100000, 4));
    long regular = 0;
    for (const auto& q : quads) {
        if (q.regular) ++regular;
        std::cout << "  quadruple {" << q.q[0] << ", " << q.q[1] << ", " << q.q[2] << ", " << q.q[3] << "} "
                  << (q.regular ? "regular" : "irregular") << '\n';
    }
    v.require(!quads.empty(), std::to_string(quads.size()) + " quadruples listed, " + std::to_string(regular) +
                                  " regular");
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<int, std::function<void(Verdict&)>>> all = {
        {1, triple_algebra}, {2, pell_completeness}, {3, gap_constant},   {4, aleksentsev},
        {5, waypoints},      {6, regular_table},     {7, reduction_soundness}, {8, desk_searches},
        {9, brute_oracle},   {10, determinism}};
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
    int failed = 0;
    for (const auto& [n, fn] : all) {
        if (!pick.empty() && !pick.count(n)) continue;
        Verdict v;
        auto t0 = std::chrono::steady_clock::now();
        try {
            fn(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!v.pass) ++failed;
        std::cout << "CRITERION " << n << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.detail.str() << "; "
                  << sci(secs, 3) << " s)" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}

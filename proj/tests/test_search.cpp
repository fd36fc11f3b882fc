#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <unistd.h>
#include <random>
#include <set>

#include "d4/errors.hpp"
#include "d4/search.hpp"

using namespace d4;

namespace {

Int ipow(const Int& x, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

std::vector<std::string> stream(const SearchCase& sc, SearchOptions o, SearchSummary* sum = nullptr) {
    std::vector<std::string> lines;
    o.on_result = [&](const SearchResult& r) { lines.push_back(result_json(r)); };
    SearchSummary s = run_search(sc, o);
    lines.push_back(summary_json(s));
    if (sum) *sum = s;
    return lines;
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / (std::string("d4_") + name + "_" + std::to_string(::getpid()))).string();
}

}  // namespace

TEST_CASE("case names") {
    for (const char* n : {"regular", "degree1", "case1", "case2", "case3", "case4"})
        CHECK(to_string(parse_search_kind(n)) == n);
    CHECK_THROWS_AS(parse_search_kind("case5"), InputError);
}

TEST_CASE("c intervals partition (ab, 237.952 b^3 / a]") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 3000; ++i) {
        Int a = Int(static_cast<long>(rng() % 400 + 1));
        Int b = a * 4 + Int(static_cast<long>(rng() % 1000000 + 1));
        // endpoints, squared where irrational: c^2 vs a b^3 and c^2 vs a^3 b^5
        Int e0 = a * b, e2 = a * b * b, top_num = 237952 * b * b * b;
        Int c = e0 + Int(static_cast<long>(rng() % 1000000000)) * (rng() % 2 ? b * b / 1000 + 1 : Int(1));
        int k = c_interval(a, b, c);
        bool above_top = Int(1000) * a * c > top_num;
        if (c <= e0 || above_top) {
            CHECK(k == 0);
            continue;
        }
        if (c * c <= a * b * b * b) CHECK(k == 1);
        else if (c <= e2) CHECK(k == 2);
        else if (c * c <= ipow(a, 3) * ipow(b, 5)) CHECK(k == 3);
        else CHECK(k == 4);
    }
    // exact endpoints fall in the lower interval
    CHECK(c_interval(1, 100, 100) == 0);
    CHECK(c_interval(1, 100, 1000) == 1);  // c^2 = a b^3 exactly
    CHECK(c_interval(1, 100, 10000) == 2);
    CHECK(c_interval(1, 100, 100000) == 3);
    CHECK(c_interval(1, 100, 100001) == 4);
    CHECK_THROWS_AS(c_interval(5, 5, 100), InputError);
}

TEST_CASE("global filters") {
    CHECK(passes_global_filters(1, 100001, 100002 * 5));
    CHECK_FALSE(passes_global_filters(1, 100000, 10000000));
    CHECK_FALSE(passes_global_filters(30000, 110000, Int("10000000000")));
    CHECK_FALSE(passes_global_filters(1, 200000, 200000));
}

TEST_CASE("defaults and overrides") {
    SearchCase r = SearchCase::defaults(SearchKind::Regular);
    CHECK(r.M == Int("37136400000000"));
    SearchCase c4 = SearchCase::defaults(SearchKind::CaseIV);
    CHECK(c4.M == Int("144671400000000"));
    CHECK(c4.limits.a_max == 460);
    c4.override_a_max(20);
    CHECK(c4.limits.a_max == 20);
    CHECK_THROWS_AS(c4.override_a_max(21), InputError);
    CHECK_THROWS_AS(c4.override_R_max(10), InputError);
    SearchCase c1 = SearchCase::defaults(SearchKind::CaseI);
    CHECK(c1.limits.R_max == 47696);
    c1.override_r_max(200);
    CHECK(c1.limits.R_max == 200);
    CHECK_THROWS_AS(c1.override_r_max(0), InputError);
    CHECK(SearchCase::defaults(SearchKind::CaseII).limits.R_max == 48000);
    CHECK(SearchCase::defaults(SearchKind::CaseIII).limits.R_max == 3227);
}

TEST_CASE("case ceilings follow from ac_max") {
    CaseCeilings c = case_ceilings(1.17732e28);
    CHECK(c.caseI_R == 47696);
    CHECK(c.caseII_ad2 == doctest::Approx(2.30408e9).epsilon(1e-5));
    CHECK(c.caseII_R == 48000);
    CHECK(c.caseIII_r == 10416543);
    CHECK(c.caseIII_R == 3227);
    CHECK(c.caseIV_a == 460);
    CHECK(c.caseIV_ab == doctest::Approx(1.69184e11).epsilon(1e-5));
    CHECK(c.caseIV_R_coeff == doctest::Approx(6344883).epsilon(1e-6));
    CHECK(c.degree1_ab == doctest::Approx(1.23033e14).epsilon(1e-5));
    CHECK(c.degree1_r == 11091997);
    CHECK(c.degree1_a == 135873);
}

TEST_CASE("regular candidates") {
    SearchCase sc = SearchCase::defaults(SearchKind::Regular);
    sc.override_a_max(2);
    sc.override_r_max(2000);
    for (long a : search_units(sc)) {
        for (const D4Triple& t : unit_candidates(sc, a)) {
            CHECK(is_regular_triple(t));
            CHECK(t.b > 100000);
            CHECK(t.a == a);
        }
    }
    sc.override_r_max(200);
    for (long a : search_units(sc)) CHECK(unit_candidates(sc, a).empty());
}

TEST_CASE("degree-one candidates") {
    SearchCase sc = SearchCase::defaults(SearchKind::Degree1);
    sc.override_a_max(3);
    sc.override_r_max(700);
    std::size_t n = 0;
    for (long a : search_units(sc)) {
        for (const D4Triple& t : unit_candidates(sc, a)) {
            ++n;
            CHECK(degree(t).degree == 1);
            CHECK(passes_global_filters(t.a, t.b, t.c));
            Int r = t.r;
            bool plus = t.c == r * (r + t.a) * (t.b + r), minus = t.c == r * (r - t.a) * (t.b - r);
            CHECK((plus || minus));
        }
    }
    CHECK(n > 0);
}

TEST_CASE("case I candidates match a direct scan") {
    SearchCase sc = SearchCase::defaults(SearchKind::CaseI);
    const Int b_cap("1000000000");
    for (long R = 3; R <= 14; ++R) {
        std::set<std::vector<Int>> got, want;
        for (const D4Triple& t : unit_candidates(sc, R)) {
            CHECK(c_interval(t.a, t.b, t.c) == 1);
            CHECK(passes_global_filters(t.a, t.b, t.c));
            CHECK(degree(t).degree >= 1);
            if (t.b <= b_cap) got.insert({t.a, t.b, t.c});
        }
        Int n = Int(R) * R - 4;
        for (long d = 1; d <= R; ++d) {
            if (n % d != 0 || Int(d) >= n / d) continue;
            Int A(d), B = n / d;
            long u_top = isqrt(A * b_cap + 4).get_si();
            for (long U = 3; U <= u_top; ++U) {
                Int m = Int(U) * U - 4;
                if (m % A != 0) continue;
                Int b = m / A;
                if (!is_square(B * b + 4)) continue;
                for (int sw = 0; sw < 2; ++sw) {
                    Int a = sw ? B : A, d1 = sw ? A : B;
                    if (a == b || b == d1) continue;
                    Int c = d_plus(a, b, d1);
                    if (a < b && passes_global_filters(a, b, c) && c_interval(a, b, c) == 1) want.insert({a, b, c});
                }
            }
        }
        CHECK(got == want);
    }
}

TEST_CASE("case IV candidates have degree at least two") {
    SearchCase sc = SearchCase::defaults(SearchKind::CaseIV);
    auto v = unit_candidates(sc, 20);
    CHECK(!v.empty());
    for (const D4Triple& t : v) {
        CHECK(c_interval(t.a, t.b, t.c) == 4);
        CHECK(passes_global_filters(t.a, t.b, t.c));
        CHECK(degree(t).degree >= 2);
        CHECK(t.a * t.b < Int("169184000000"));
    }
}

TEST_CASE("case II and III candidates land in their intervals") {
    SearchCase s2 = SearchCase::defaults(SearchKind::CaseII);
    SearchCase s3 = SearchCase::defaults(SearchKind::CaseIII);
    std::size_t n2 = 0, n3 = 0;
    for (long R = 3; R <= 12; ++R) {
        for (const D4Triple& t : unit_candidates(s2, R)) {
            ++n2;
            CHECK(c_interval(t.a, t.b, t.c) == 2);
            CHECK(degree(t).degree >= 2);
        }
        for (const D4Triple& t : unit_candidates(s3, R)) {
            ++n3;
            CHECK(c_interval(t.a, t.b, t.c) == 3);
            CHECK(degree(t).degree >= 2);
        }
    }
    CHECK(n2 > 0);
    CHECK(n3 > 0);
}

TEST_CASE("checkpoint round trip and validation") {
    SearchCase sc = SearchCase::defaults(SearchKind::CaseI);
    sc.override_r_max(30);
    Checkpoint c;
    c.kind = sc.kind;
    c.a_max = sc.limits.a_max.get_str();
    c.r_max = sc.limits.r_max.get_str();
    c.R_max = sc.limits.R_max.get_str();
    c.M = sc.M.get_str();
    c.digits = sc.digits;
    c.cursor = 5;
    c.units_total = 28;
    c.counts.examined = 7;
    c.failures.push_back({4, "1", "2", "3", "inconclusive", -1});
    Checkpoint back = Checkpoint::from_json(c.to_json());
    CHECK(back == c);
    CHECK(back.same_run(sc));
    SearchCase other = sc;
    other.override_r_max(20);
    CHECK_FALSE(back.same_run(other));

    std::string bumped = c.to_json();
    bumped.replace(bumped.find("\"version\": 1"), 12, "\"version\": 2");
    CHECK_THROWS_AS(Checkpoint::from_json(bumped), InputError);
    CHECK_THROWS_AS(Checkpoint::from_json("{not json"), InputError);
    CHECK_THROWS_AS(Checkpoint::from_json("{\"format\": \"d4-search-checkpoint\"}"), InputError);
    CHECK_THROWS_AS(Checkpoint::from_json("[]"), InputError);
}

TEST_CASE("resuming equals an uninterrupted run") {
    SearchCase sc = SearchCase::defaults(SearchKind::CaseI);
    sc.override_r_max(80);  // 78 units, two batches
    SearchOptions plain;
    std::vector<std::string> whole = stream(sc, plain);

    std::string path = temp_path("resume");
    SearchOptions first;
    first.checkpoint_path = path;
    first.stop_after_units = 64;
    SearchSummary part;
    std::vector<std::string> a = stream(sc, first, &part);
    CHECK_FALSE(part.complete);
    CHECK(Checkpoint::from_json([&] {
              std::ifstream f(path);
              return std::string(std::istreambuf_iterator<char>(f), {});
          }()).cursor == 64);
    SearchOptions second;
    second.checkpoint_path = path;
    second.resume = true;
    second.jobs = 2;
    std::vector<std::string> b = stream(sc, second);
    a.pop_back();  // partial summary
    a.insert(a.end(), b.begin(), b.end());
    CHECK(a == whole);

    SearchCase other = sc;
    other.override_r_max(70);
    SearchOptions mismatch;
    mismatch.checkpoint_path = path;
    mismatch.resume = true;
    CHECK_THROWS_AS(run_search(other, mismatch), InputError);
    std::remove(path.c_str());
    SearchOptions missing;
    missing.resume = true;
    CHECK_THROWS_AS(run_search(sc, missing), InputError);
}

TEST_CASE("worker count does not change the output") {
    SearchCase sc = SearchCase::defaults(SearchKind::CaseI);
    sc.override_r_max(40);
    SearchOptions one, four;
    four.jobs = 4;
    CHECK(stream(sc, one) == stream(sc, four));
    SearchCase c4 = SearchCase::defaults(SearchKind::CaseIV);
    c4.override_a_max(460);
    SearchCase tail = c4;
    CHECK(search_units(tail).size() == 460);
}

TEST_CASE("brute force oracle") {
    auto quads = brute_force_tuples(2000, 4);
    bool seen = false;
    for (const auto& q : quads) {
        CHECK(verify_dn_tuple(q));
        if (q == std::vector<Int>{1, 5, 12, 96}) seen = true;
    }
    CHECK(seen);
    for (const QuadrupleInfo& qi : classify_quadruples(quads)) {
        D4Triple t = D4Triple::make(qi.q[0], qi.q[1], qi.q[2]);
        CHECK(qi.regular == (d_plus(t) == qi.q[3]));
    }
    // every pair listed matches a direct scan
    auto pairs = brute_force_tuples(300, 2);
    std::size_t direct = 0;
    for (long a = 1; a <= 300; ++a)
        for (long b = a + 1; b <= 300; ++b)
            if (is_square(Int(a) * b + 4)) ++direct;
    CHECK(pairs.size() == direct);
    CHECK(brute_force_tuples(10000, 5).empty());
    CHECK_THROWS_AS(brute_force_tuples(kBruteLimitGuard + 1, 4), InputError);
    CHECK_THROWS_AS(brute_force_tuples(100, 1), InputError);
}

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "d4/bigint.hpp"
#include "d4/reduction.hpp"
#include "d4/tuples.hpp"

namespace d4 {

enum class SearchKind { Regular, Degree1, CaseI, CaseII, CaseIII, CaseIV };

std::string to_string(SearchKind k);
SearchKind parse_search_kind(const std::string& s);  // regular|degree1|case1..case4

// Outer-loop ceilings. Overrides may only shrink them.
struct SearchLimits {
    Int a_max;  // Regular, Degree1, CaseIV
    Int r_max;  // Regular, Degree1 (r of the pair {a, b})
    Int R_max;  // CaseI..CaseIII (r of the Pell pair)
};

struct SearchCase {
    SearchKind kind = SearchKind::Regular;
    SearchLimits limits;
    Int M;
    int digits = 120;

    static SearchCase defaults(SearchKind k);
    // Applies an override, refusing to raise a default.
    void override_a_max(const Int& v);
    void override_r_max(const Int& v);
    void override_R_max(const Int& v);
};

// Which of the four c-intervals of (ab, 237.952 b^3/a] holds c; 0 when c is outside.
// Endpoints: ab, a^{1/2} b^{3/2}, ab^2, a^{3/2} b^{5/2}, 237.952 b^3 / a.
int c_interval(const Int& a, const Int& b, const Int& c);

// b > 10^5, b > 4a, c > max{ab, 4b}
bool passes_global_filters(const Int& a, const Int& b, const Int& c);

struct SearchResult {
    SearchKind kind;
    long unit = 0;  // outer-loop value (a or R)
    Int a, b, c;
    ReductionOutcome outcome;
    double two_h_min = 0;  // lower bound of 2h from the index lower bounds
    bool pass = false;     // reduced and J_max < 2 h_min
    bool below5 = false;   // reduced and J_max < 5
};

struct SearchCounts {
    long units_done = 0;
    long examined = 0;
    long reduced = 0;
    long passed = 0;
    long below5 = 0;
    long max_J = -1;
    bool operator==(const SearchCounts&) const = default;
};

struct FailureRecord {
    long unit;
    std::string a, b, c;
    std::string status;
    long J_max;
    bool operator==(const FailureRecord&) const = default;
};

struct Checkpoint {
    static constexpr int kVersion = 1;
    int version = kVersion;
    SearchKind kind = SearchKind::Regular;
    std::string a_max, r_max, R_max, M;
    int digits = 120;
    long cursor = 0;  // index of the next unit to process
    long units_total = 0;
    SearchCounts counts;
    std::vector<FailureRecord> failures;

    std::string to_json() const;
    static Checkpoint from_json(const std::string& text);  // InputError on bad input or version
    bool same_run(const SearchCase& sc) const;
    bool operator==(const Checkpoint&) const = default;
};

struct SearchOptions {
    int jobs = 1;
    std::optional<std::string> checkpoint_path;
    bool resume = false;
    std::optional<long> stop_after_units;  // stop early (simulated interruption)
    std::function<void(const SearchResult&)> on_result;
};

struct SearchSummary {
    SearchKind kind;
    SearchCounts counts;
    std::vector<FailureRecord> failures;
    long units_total = 0;
    bool complete = false;
    std::vector<std::string> notes;
};

// Outer-loop values of the case, in processing order.
std::vector<long> search_units(const SearchCase& sc);

// Candidate triples of one outer-loop value, after all filters, in enumeration order.
std::vector<D4Triple> unit_candidates(const SearchCase& sc, long unit);

SearchSummary run_search(const SearchCase& sc, const SearchOptions& opt);

std::vector<SearchResult> run_regular(const SearchCase& sc, int jobs = 1);
std::vector<SearchResult> run_degree1(const SearchCase& sc, int jobs = 1);
std::vector<SearchResult> run_case(const SearchCase& sc, int jobs = 1);

std::string result_json(const SearchResult& r);
std::string summary_json(const SearchSummary& s);

// ---------------------------------------------------------------- ceilings used above

struct CaseCeilings {
    long caseI_R;          // sqrt((ac_max)^{1/3} + 4) rounded down, minus strictness
    double caseII_ad2;     // a d_{-2} ceiling
    long caseII_R;
    double caseII_d1;      // d_{-1} < ac_max^{2/3}
    long caseIII_r;        // sqrt(ab+4) ceiling
    long caseIII_R;
    long caseIV_a;         // a ceiling
    double caseIV_ab;      // ab ceiling
    double caseIV_R_coeff; // R < coeff / a^{3/2}
    double degree1_ab;     // ab ceiling
    long degree1_r;
    long degree1_a;
};
CaseCeilings case_ceilings(double ac_max);

// ---------------------------------------------------------------- brute force

constexpr long kBruteLimitGuard = 10000000;

// All D(4)-m-tuples with every element <= limit, each sorted, in lexicographic order.
std::vector<std::vector<Int>> brute_force_tuples(long limit, int size);

struct QuadrupleInfo {
    std::vector<Int> q;
    bool regular = false;  // largest element equals d+ of the other three
};
std::vector<QuadrupleInfo> classify_quadruples(const std::vector<std::vector<Int>>& quads);

}  // namespace d4

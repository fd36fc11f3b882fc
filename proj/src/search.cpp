#include "d4/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "d4/bounds.hpp"
#include "d4/constants.hpp"
#include "d4/errors.hpp"
#include "d4/pell.hpp"

namespace d4 {

using json = nlohmann::json;

std::string to_string(SearchKind k) {
    switch (k) {
        case SearchKind::Regular: return "regular";
        case SearchKind::Degree1: return "degree1";
        case SearchKind::CaseI: return "case1";
        case SearchKind::CaseII: return "case2";
        case SearchKind::CaseIII: return "case3";
        case SearchKind::CaseIV: return "case4";
    }
    return "?";
}

SearchKind parse_search_kind(const std::string& s) {
    for (SearchKind k : {SearchKind::Regular, SearchKind::Degree1, SearchKind::CaseI, SearchKind::CaseII,
                         SearchKind::CaseIII, SearchKind::CaseIV})
        if (to_string(k) == s) return k;
    throw InputError("unknown search case '" + s + "'");
}

// ---------------------------------------------------------------- ceilings

namespace {

const Int kAcMax("11773200000000000000000000000");
const Int kCaseIID1("35175240000000000000");  // d_{-1} ceiling, deliberately loose
const Int kCaseIIIr(10416543);
const Int kCaseIVab("169184000000000");         // ab < 1.69184e11, scaled by 1000
const Int kDeg1ab("123033000000000");           // ab < 1.23033e14
const Int kBMin(100000);

Int pow_int(const Int& x, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

struct RegularTables {
    long S1[9] = {0};  // indexed by gcd(s, 8)
    long T = 0;
    double X_max = 0;
    long r_max = 0;
};

const RegularTables& regular_tables() {
    static const RegularTables t = [] {
        RealCtx ctx(40);
        RegularTables r;
        for (int g : {1, 2, 4, 8}) r.S1[g] = lambda23_bounds_regular(g, ctx).s_ceiling;
        r.T = std::max(127293L, self_log_ceiling(regular_log_coeff(ctx), 8, 2, ctx));
        RegularRBounds rb = regular_r_bounds(std::strtod(k::kHCoeff, nullptr), ctx);
        r.X_max = rb.X_max;
        r.r_max = rb.r_max;
        return r;
    }();
    return t;
}

}  // namespace

CaseCeilings case_ceilings(double ac) {
    CaseCeilings c{};
    c.caseI_R = static_cast<long>(std::floor(std::sqrt(std::cbrt(ac) + 4)));
    // (x/1.01282)^2 (x - 4.05128)/1.01282 < ac
    double lo = 10, hi = 1e20;
    for (int i = 0; i < 300; ++i) {
        double mid = std::sqrt(lo * hi);
        double v = std::pow(mid / 1.01282, 2) * (mid - 4.05128) / 1.01282;
        (v < ac ? lo : hi) = mid;
    }
    c.caseII_ad2 = hi;
    c.caseII_R = static_cast<long>(std::ceil(std::sqrt(hi + 4))) - 1;
    c.caseII_d1 = std::pow(ac, 2.0 / 3.0);
    c.caseIII_r = static_cast<long>(std::floor(std::sqrt(std::sqrt(ac) + 4)));
    c.caseIII_R = static_cast<long>(std::floor(std::sqrt(static_cast<double>(c.caseIII_r) + 4)));
    c.caseIV_ab = std::pow(ac, 0.4);
    c.caseIV_a = static_cast<long>(std::floor(std::pow(c.caseIV_ab * 237.952 * 237.952, 1.0 / 6.0)));
    c.caseIV_R_coeff = std::sqrt(237.952 * c.caseIV_ab);
    c.degree1_ab = std::sqrt(ac * 9.0 / 7.0);
    c.degree1_r = static_cast<long>(std::floor(std::sqrt(c.degree1_ab + 4)));
    c.degree1_a = static_cast<long>(std::floor(std::pow(c.degree1_ab / 18.0793, 0.4)));
    return c;
}

SearchCase SearchCase::defaults(SearchKind k) {
    SearchCase sc;
    sc.kind = k;
    const Int regularM("37136400000000");   // 2 * 1.85682e13
    const Int generalM("144671400000000");  // 2 * 7.23357e13
    sc.M = k == SearchKind::Regular ? regularM : generalM;
    switch (k) {
        case SearchKind::Regular:
            sc.limits.a_max = 9164949;
            sc.limits.r_max = 9164949;
            break;
        case SearchKind::Degree1:
            sc.limits.a_max = 135873;
            sc.limits.r_max = 11091997;
            break;
        case SearchKind::CaseI: sc.limits.R_max = 47696; break;
        case SearchKind::CaseII: sc.limits.R_max = 48000; break;
        case SearchKind::CaseIII: sc.limits.R_max = 3227; break;
        case SearchKind::CaseIV: sc.limits.a_max = 460; break;
    }
    return sc;
}

namespace {
void shrink(Int& slot, const Int& v, const char* name) {
    if (v < 1) throw InputError(std::string(name) + " must be positive");
    if (slot == 0) throw InputError(std::string(name) + " does not apply to this case");
    if (v > slot) throw InputError(std::string(name) + " may not exceed the default " + slot.get_str());
    slot = v;
}
}  // namespace

void SearchCase::override_a_max(const Int& v) { shrink(limits.a_max, v, "a-max"); }
void SearchCase::override_r_max(const Int& v) {
    if (kind == SearchKind::CaseI || kind == SearchKind::CaseII || kind == SearchKind::CaseIII)
        shrink(limits.R_max, v, "r-max");
    else
        shrink(limits.r_max, v, "r-max");
}
void SearchCase::override_R_max(const Int& v) { shrink(limits.R_max, v, "R-max"); }

// ---------------------------------------------------------------- intervals and filters

int c_interval(const Int& a, const Int& b, const Int& c) {
    if (!(0 < a && a < b)) throw InputError("c_interval needs 0 < a < b");
    const Int ab = a * b;
    if (c <= ab) return 0;
    const Int c2 = c * c;
    if (c2 <= a * b * b * b) return 1;
    if (c <= ab * b) return 2;
    const bool within_top = Int(1000) * a * c <= Int(237952) * b * b * b;
    if (c2 <= a * a * a * pow_int(b, 5)) return within_top ? 3 : 0;
    return within_top ? 4 : 0;
}

bool passes_global_filters(const Int& a, const Int& b, const Int& c) {
    if (!(b > kBMin && b > 4 * a)) return false;
    const Int ab = a * b;
    return c > ab && c > 4 * b;
}

// ---------------------------------------------------------------- enumeration

namespace {

bool regular_in_range(long a, long r, const Int& b, const RegularTables& tb, long r_for_a) {
    long s = a + r;
    long g = std::gcd(s, 8L);
    if (s <= tb.S1[g]) return true;
    if (b + r <= tb.T) return true;
    return r <= r_for_a;
}

std::vector<D4Triple> regular_candidates(const SearchCase& sc, long a) {
    const RegularTables& tb = regular_tables();
    long r_for_a = std::min(regular_r_max_for_a(a, tb.X_max), tb.r_max);
    long r_hi = std::max({tb.S1[8] - a, r_for_a, 0L});
    // t = (r^2-4)/a + r <= T
    long r_t = static_cast<long>(std::sqrt(static_cast<double>(a) * static_cast<double>(tb.T))) + 2;
    r_hi = std::max(r_hi, r_t);
    r_hi = std::min<long>(r_hi, sc.limits.r_max.get_si());
    std::vector<D4Triple> out;
    const Int A(a);
    // b > 10^5 needs r^2 > 10^5 a + 4
    long r_lo = static_cast<long>(isqrt_u64(static_cast<uint64_t>(100000) * a + 4)) + 1;
    for (long r = std::max(3L, r_lo); r <= r_hi; ++r) {
        if ((static_cast<unsigned long long>(r) * r - 4) % a != 0) continue;
        Int R(r);
        Int b = (R * R - 4) / A;
        if (!(b > kBMin && b > A)) continue;
        if (!regular_in_range(a, r, b, tb, r_for_a)) continue;
        out.push_back(D4Triple::make(A, b, A + b + 2 * R));
    }
    return out;
}

std::vector<D4Triple> degree1_candidates(const SearchCase& sc, long a) {
    std::vector<D4Triple> out;
    const Int A(a);
    const long r_hi = sc.limits.r_max.get_si();
    const Int slope2 = Int(180793) * 180793;  // (18.0793 * 10^4)^2
    // b > max{10^5, 4a, 18.0793 a^{3/2}} bounds r from below; start just under it
    double b_floor = std::max({1e5, 4.0 * a, 18.0793 * std::pow(static_cast<double>(a), 1.5)});
    long r_lo = static_cast<long>(std::sqrt(b_floor * static_cast<double>(a))) - 2;
    for (long r = std::max(3L, r_lo); r <= r_hi; ++r) {
        if ((static_cast<unsigned long long>(r) * r - 4) % a != 0) continue;
        Int R(r);
        Int b = (R * R - 4) / A;
        if (!(A * b < kDeg1ab)) break;  // increasing in r
        // b > 18.0793 a^{3/2}  <=>  10^8 b^2 > 180793^2 a^3
        if (!(Int(100000000) * b * b > slope2 * A * A * A)) continue;
        for (int sign : {+1, -1}) {
            Int c = R * (R + sign * A) * (b + sign * R);
            if (c <= 0) continue;
            if (!passes_global_filters(A, b, c)) continue;
            if (!verify_dn_tuple({A, b, c})) continue;
            out.push_back(D4Triple::make(A, b, c));
        }
    }
    return out;
}

// Distinct U values of all solutions with 0 < U <= u_max, ascending.
std::vector<Int> pell_u_values(const Int& A, const Int& B, const Int& R, const Int& u_max) {
    PellProblem p = PellProblem::make(A, B);
    std::vector<PellSolution> reps;
    if (fits_u64(A) && fits_u64(B) && fits_u64(R) && B < Int("1000000000000000000")) {
        for (const SmallSolution& s : orbit_representatives_u64(to_u64(A), to_u64(B), to_u64(R)))
            reps.push_back({from_u64(s.U), Int(static_cast<long>(s.V))});
    } else {
        reps = orbit_representatives(p);
    }
    std::set<Int> us;
    for (const auto& f : reps)
        for (const auto& w : walk_until(p, f, u_max))
            if (w.U > 0) us.insert(w.U);
    return {us.begin(), us.end()};
}

// Pell pairs (A, B) with A B = R^2 - 4, A < B, A <= R, ascending A.
std::vector<std::pair<Int, Int>> pell_pairs(long R) {
    std::vector<std::pair<Int, Int>> out;
    const Int n = Int(R) * R - 4;
    for (long d = 1; d <= R; ++d) {
        if (n % d != 0) continue;
        Int B = n / d;
        if (Int(d) < B) out.emplace_back(Int(d), B);
    }
    return out;
}

void push_if(std::vector<D4Triple>& out, const Int& a, const Int& b, const Int& c, int want) {
    if (!(a < b) || !passes_global_filters(a, b, c)) return;
    if (c_interval(a, b, c) != want) return;
    out.push_back(D4Triple::make(a, b, c));
}

bool distinct3(const Int& x, const Int& y, const Int& z) { return x != y && y != z && x != z; }

std::vector<D4Triple> caseI_candidates(long R) {
    std::vector<D4Triple> out;
    for (const auto& [A, B] : pell_pairs(R)) {
        Int u_max = isqrt(kAcMax / A + 4);
        for (const Int& U : pell_u_values(A, B, Int(R), u_max)) {
            Int n = U * U - 4;
            if (n <= 0 || n % A != 0) continue;
            Int b = n / A;
            for (int sw = 0; sw < 2; ++sw) {
                const Int& a = sw ? B : A;
                const Int& d1 = sw ? A : B;
                if (!distinct3(a, b, d1)) continue;
                push_if(out, a, b, d_plus(a, b, d1), 1);
            }
        }
    }
    return out;
}

std::vector<D4Triple> caseII_candidates(long R) {
    std::vector<D4Triple> out;
    for (const auto& [A, B] : pell_pairs(R)) {
        Int u_max = isqrt(A * kCaseIID1 + 4);
        for (const Int& U : pell_u_values(A, B, Int(R), u_max)) {
            Int n = U * U - 4;
            if (n <= 0 || n % A != 0) continue;
            Int d1 = n / A;
            for (int sw = 0; sw < 2; ++sw) {
                const Int& a = sw ? B : A;
                const Int& d2 = sw ? A : B;
                if (!distinct3(a, d1, d2)) continue;
                Int b = d_plus(a, d1, d2);
                if (!distinct3(a, b, d1)) continue;
                push_if(out, a, b, d_plus(a, b, d1), 2);
            }
        }
    }
    return out;
}

std::vector<D4Triple> caseIII_candidates(long R) {
    std::vector<D4Triple> out;
    const Int r2max = kCaseIIIr * kCaseIIIr;
    for (const auto& [A, B] : pell_pairs(R)) {
        for (const Int& U : pell_u_values(A, B, Int(R), kCaseIIIr)) {
            Int n = U * U - 4;
            if (n <= 0 || n % A != 0) continue;
            Int b = n / A;
            for (int sw = 0; sw < 2; ++sw) {
                const Int& a = sw ? B : A;
                const Int& d2 = sw ? A : B;
                if (a * b + 4 > r2max) continue;
                if (!distinct3(a, b, d2)) continue;
                Int d1 = d_plus(a, b, d2);
                if (!distinct3(a, b, d1)) continue;
                push_if(out, a, b, d_plus(a, b, d1), 3);
            }
        }
    }
    return out;
}

std::vector<D4Triple> caseIV_candidates(long a) {
    std::vector<D4Triple> out;
    const Int A(a);
    // R^2 a^3 < 6344883^2
    const Int lim = Int(6344883) * 6344883;
    const Int a3 = A * A * A;
    for (long R = 3;; ++R) {
        Int RR(R);
        if (!(RR * RR * a3 < lim)) break;
        Int n = RR * RR - 4;
        if (n % A != 0) continue;
        Int d2 = n / A;
        if (d2 == A) continue;
        const Int& PA = A < d2 ? A : d2;
        const Int& PB = A < d2 ? d2 : A;
        // ab < 1.69184e11; c > a^2 b^2 d_{-2} with c <= 237.952 b^3/a gives b > a^3 d_{-2}/237.952;
        // c < 83 a^2 b^2 d_{-2} (d+(x,y,z) < 9.1 xyz) with c > a^{3/2} b^{5/2} gives b < 6889 a d_{-2}^2
        Int b_max = (kCaseIVab - 1) / (1000 * A);
        if (Int cap = Int(6889) * A * d2 * d2; cap < b_max) b_max = cap;
        const Int b_low_num = Int(1000) * a3 * d2;  // need 237952 b > this
        Int u_max = isqrt(PA * b_max + 4);
        for (const Int& U : pell_u_values(PA, PB, RR, u_max)) {
            Int m = U * U - 4;
            if (m <= 0 || m % PA != 0) continue;
            Int b = m / PA;
            if (b > b_max || !(b > kBMin && b > 4 * A)) continue;
            if (!(Int(237952) * b > b_low_num)) continue;
            if (!distinct3(A, b, d2)) continue;
            Int d1 = d_plus(A, b, d2);
            if (!distinct3(A, b, d1)) continue;
            push_if(out, A, b, d_plus(A, b, d1), 4);
        }
    }
    return out;
}

}  // namespace

std::vector<long> search_units(const SearchCase& sc) {
    std::vector<long> u;
    switch (sc.kind) {
        case SearchKind::Regular:
        case SearchKind::Degree1: {
            // b > a forces a < r; degree one also has b > 4a, so 2a < r
            long cap = sc.limits.r_max.get_si() / (sc.kind == SearchKind::Regular ? 1 : 2);
            for (long a = 1; a <= std::min(sc.limits.a_max.get_si(), cap); ++a) u.push_back(a);
            break;
        }
        case SearchKind::CaseIV:
            for (long a = 1; a <= sc.limits.a_max.get_si(); ++a) u.push_back(a);
            break;
        default:
            for (long R = 3; R <= sc.limits.R_max.get_si(); ++R) u.push_back(R);
    }
    return u;
}

std::vector<D4Triple> unit_candidates(const SearchCase& sc, long unit) {
    switch (sc.kind) {
        case SearchKind::Regular: return regular_candidates(sc, unit);
        case SearchKind::Degree1: return degree1_candidates(sc, unit);
        case SearchKind::CaseI: return caseI_candidates(unit);
        case SearchKind::CaseII: return caseII_candidates(unit);
        case SearchKind::CaseIII: return caseIII_candidates(unit);
        case SearchKind::CaseIV: return caseIV_candidates(unit);
    }
    return {};
}

// ---------------------------------------------------------------- checkpoint

namespace {

json counts_json(const SearchCounts& c) {
    return {{"units_done", c.units_done}, {"examined", c.examined}, {"reduced", c.reduced},
            {"passed", c.passed},         {"below5", c.below5},     {"max_J", c.max_J}};
}

SearchCounts counts_from(const json& j) {
    SearchCounts c;
    c.units_done = j.at("units_done").get<long>();
    c.examined = j.at("examined").get<long>();
    c.reduced = j.at("reduced").get<long>();
    c.passed = j.at("passed").get<long>();
    c.below5 = j.at("below5").get<long>();
    c.max_J = j.at("max_J").get<long>();
    return c;
}

json failure_json(const FailureRecord& f) {
    return {{"unit", f.unit}, {"a", f.a}, {"b", f.b}, {"c", f.c}, {"status", f.status}, {"J_max", f.J_max}};
}

}  // namespace

std::string Checkpoint::to_json() const {
    json j;
    j["format"] = "d4-search-checkpoint";
    j["version"] = version;
    j["case"] = to_string(kind);
    j["limits"] = {{"a_max", a_max}, {"r_max", r_max}, {"R_max", R_max}};
    j["M"] = M;
    j["digits"] = digits;
    j["cursor"] = cursor;
    j["units_total"] = units_total;
    j["counts"] = counts_json(counts);
    j["failures"] = json::array();
    for (const auto& f : failures) j["failures"].push_back(failure_json(f));
    return j.dump(2);
}

Checkpoint Checkpoint::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "d4-search-checkpoint") throw InputError("not a search checkpoint");
        Checkpoint c;
        c.version = j.at("version").get<int>();
        if (c.version != kVersion)
            throw InputError("checkpoint version " + std::to_string(c.version) + " is not supported (expected " +
                             std::to_string(kVersion) + ")");
        c.kind = parse_search_kind(j.at("case").get<std::string>());
        c.a_max = j.at("limits").at("a_max").get<std::string>();
        c.r_max = j.at("limits").at("r_max").get<std::string>();
        c.R_max = j.at("limits").at("R_max").get<std::string>();
        c.M = j.at("M").get<std::string>();
        c.digits = j.at("digits").get<int>();
        c.cursor = j.at("cursor").get<long>();
        c.units_total = j.at("units_total").get<long>();
        c.counts = counts_from(j.at("counts"));
        for (const auto& f : j.at("failures"))
            c.failures.push_back({f.at("unit").get<long>(), f.at("a").get<std::string>(), f.at("b").get<std::string>(),
                                  f.at("c").get<std::string>(), f.at("status").get<std::string>(),
                                  f.at("J_max").get<long>()});
        if (c.cursor < 0 || c.cursor > c.units_total) throw InputError("checkpoint cursor out of range");
        return c;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed checkpoint: ") + e.what());
    }
}

bool Checkpoint::same_run(const SearchCase& sc) const {
    return kind == sc.kind && a_max == sc.limits.a_max.get_str() && r_max == sc.limits.r_max.get_str() &&
           R_max == sc.limits.R_max.get_str() && M == sc.M.get_str() && digits == sc.digits;
}

// ---------------------------------------------------------------- runner

namespace {

SearchResult reduce_triple(const SearchCase& sc, long unit, const D4Triple& t, const RealCtx& ctx) {
    SearchResult r;
    r.kind = sc.kind;
    r.unit = unit;
    r.a = t.a;
    r.b = t.b;
    r.c = t.c;
    r.outcome = baker_davenport(lambda1_reduction_instance(t, sc.M), ctx);
    IndexLowerBounds ib = index_lower_bounds(t.a, t.b, t.c, ctx);
    PrecisionScope ps(ctx);
    Interval two_h = Interval(2) * ib.h_min;
    r.two_h_min = two_h.lo_d();
    if (r.outcome.reduced()) {
        r.pass = certainly_lt(Interval(r.outcome.J_max), two_h);
        r.below5 = r.outcome.J_max < 5;
    }
    return r;
}

std::vector<SearchResult> process_unit(const SearchCase& sc, long unit) {
    RealCtx ctx(sc.digits);
    std::vector<SearchResult> out;
    for (const D4Triple& t : unit_candidates(sc, unit)) out.push_back(reduce_triple(sc, unit, t, ctx));
    return out;
}

Checkpoint fresh_checkpoint(const SearchCase& sc, long total) {
    Checkpoint c;
    c.kind = sc.kind;
    c.a_max = sc.limits.a_max.get_str();
    c.r_max = sc.limits.r_max.get_str();
    c.R_max = sc.limits.R_max.get_str();
    c.M = sc.M.get_str();
    c.digits = sc.digits;
    c.units_total = total;
    return c;
}

void write_file(const std::string& path, const std::string& text) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InputError("cannot write checkpoint " + tmp);
        f << text << '\n';
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw InputError("cannot replace checkpoint " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot read checkpoint " + path);
    std::ostringstream o;
    o << f.rdbuf();
    return o.str();
}

}  // namespace

SearchSummary run_search(const SearchCase& sc, const SearchOptions& opt) {
    if (sc.M < 1) throw InputError("M must be positive");
    const std::vector<long> units = search_units(sc);
    const long total = static_cast<long>(units.size());
    Checkpoint cp = fresh_checkpoint(sc, total);
    if (opt.resume) {
        if (!opt.checkpoint_path) throw InputError("--resume needs --checkpoint");
        cp = Checkpoint::from_json(read_file(*opt.checkpoint_path));
        if (!cp.same_run(sc)) throw InputError("checkpoint belongs to a different run (case, limits, M or digits)");
        if (cp.units_total != total) throw InputError("checkpoint unit count does not match");
    }
    const long stop = opt.stop_after_units ? std::min(total, cp.cursor + *opt.stop_after_units) : total;
    const long batch = 64;
    const int jobs = std::max(1, opt.jobs);

    while (cp.cursor < stop) {
        const long lo = cp.cursor, hi = std::min(stop, lo + batch);
        std::vector<std::vector<SearchResult>> res(hi - lo);
        std::atomic<long> next{lo};
        std::exception_ptr err;
        std::mutex err_mu;
        auto worker = [&] {
            for (long i; (i = next.fetch_add(1)) < hi;) {
                try {
                    res[i - lo] = process_unit(sc, units[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> ts;
            for (int t = 0; t < std::min<long>(jobs, hi - lo); ++t) ts.emplace_back(worker);
            for (auto& t : ts) t.join();
        }
        if (err) std::rethrow_exception(err);
        for (const auto& v : res) {
            for (const SearchResult& r : v) {
                ++cp.counts.examined;
                if (r.outcome.reduced()) {
                    ++cp.counts.reduced;
                    cp.counts.max_J = std::max(cp.counts.max_J, r.outcome.J_max);
                }
                if (r.pass) ++cp.counts.passed;
                if (r.below5) ++cp.counts.below5;
                if (!r.pass)
                    cp.failures.push_back({r.unit, r.a.get_str(), r.b.get_str(), r.c.get_str(),
                                           r.outcome.reduced() ? "reduced" : "inconclusive", r.outcome.J_max});
                if (opt.on_result) opt.on_result(r);
            }
        }
        cp.counts.units_done += hi - lo;
        cp.cursor = hi;
        if (opt.checkpoint_path) write_file(*opt.checkpoint_path, cp.to_json());
    }

    SearchSummary s;
    s.kind = sc.kind;
    s.counts = cp.counts;
    s.failures = cp.failures;
    s.units_total = total;
    s.complete = cp.cursor == total;
    if (sc.kind == SearchKind::CaseIII || sc.kind == SearchKind::CaseIV)
        s.notes.push_back(
            "case III/IV boundary taken as a^{3/2} b^{5/2}, not a b^{5/2}");
    if (sc.kind == SearchKind::CaseII)
        s.notes.push_back("d_{-1} walk ceiling 35.17524e18, looser than (1.17732e28)^{2/3} = 5.17524e18");
    return s;
}

namespace {
std::vector<SearchResult> collect(const SearchCase& sc, int jobs) {
    std::vector<SearchResult> out;
    SearchOptions o;
    o.jobs = jobs;
    o.on_result = [&](const SearchResult& r) { out.push_back(r); };
    run_search(sc, o);
    return out;
}
}  // namespace

std::vector<SearchResult> run_regular(const SearchCase& sc, int jobs) {
    if (sc.kind != SearchKind::Regular) throw InputError("run_regular needs a regular case");
    return collect(sc, jobs);
}

std::vector<SearchResult> run_degree1(const SearchCase& sc, int jobs) {
    if (sc.kind != SearchKind::Degree1) throw InputError("run_degree1 needs a degree-1 case");
    return collect(sc, jobs);
}

std::vector<SearchResult> run_case(const SearchCase& sc, int jobs) {
    if (sc.kind == SearchKind::Regular || sc.kind == SearchKind::Degree1)
        throw InputError("run_case needs one of case1..case4");
    return collect(sc, jobs);
}

std::string result_json(const SearchResult& r) {
    json j;
    j["case"] = to_string(r.kind);
    j["unit"] = r.unit;
    j["a"] = r.a.get_str();
    j["b"] = r.b.get_str();
    j["c"] = r.c.get_str();
    j["status"] = r.outcome.reduced() ? "reduced" : "inconclusive";
    j["J_max"] = r.outcome.J_max;
    j["attempts"] = r.outcome.attempts;
    j["digits"] = r.outcome.digits;
    if (r.outcome.convergent) j["q"] = r.outcome.convergent->q.get_str();
    j["two_h_min"] = std::floor(r.two_h_min * 1000) / 1000;
    j["pass"] = r.pass;
    j["below5"] = r.below5;
    return j.dump();
}

std::string summary_json(const SearchSummary& s) {
    json j;
    j["summary"] = true;
    j["case"] = to_string(s.kind);
    j["units_total"] = s.units_total;
    j["complete"] = s.complete;
    j["counts"] = counts_json(s.counts);
    j["failures"] = json::array();
    for (const auto& f : s.failures) j["failures"].push_back(failure_json(f));
    j["notes"] = s.notes;
    return j.dump();
}

// ---------------------------------------------------------------- brute force

std::vector<std::vector<Int>> brute_force_tuples(long limit, int size) {
    if (limit > kBruteLimitGuard) throw InputError("limit above 10^7: use the case searches instead");
    if (limit < 1) throw InputError("limit must be positive");
    if (size < 2) throw InputError("size must be at least 2");
    // For each a, its partners b > a with ab + 4 square; b = (r^2-4)/a.
    std::vector<std::vector<long>> partners(limit + 1);
    for (long a = 1; a <= limit; ++a) {
        for (long r = isqrt_u64(static_cast<uint64_t>(a) * a + 4) + 1;; ++r) {
            // ab + 4 = r^2 with b > a
            unsigned long long n = static_cast<unsigned long long>(r) * r - 4;
            if (n / a > static_cast<unsigned long long>(limit)) break;
            if (n % a) continue;
            long b = static_cast<long>(n / a);
            if (b > a) partners[a].push_back(b);
        }
    }
    std::vector<std::vector<Int>> out;
    std::vector<long> cur;
    auto compatible = [](long x, long y) {
        unsigned long long p = static_cast<unsigned long long>(x) * y + 4;
        return is_square_u64(p);
    };
    std::function<void(const std::vector<long>&)> extend = [&](const std::vector<long>& cand) {
        if (static_cast<int>(cur.size()) == size) {
            std::vector<Int> t;
            for (long v : cur) t.emplace_back(v);
            out.push_back(std::move(t));
            return;
        }
        for (std::size_t i = 0; i < cand.size(); ++i) {
            long x = cand[i];
            std::vector<long> next;
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                if (compatible(x, cand[j])) next.push_back(cand[j]);
            if (static_cast<int>(cur.size() + 1 + next.size()) < size) continue;
            cur.push_back(x);
            extend(next);
            cur.pop_back();
        }
    };
    for (long a = 1; a <= limit; ++a) {
        if (static_cast<int>(partners[a].size()) + 1 < size) continue;
        cur = {a};
        extend(partners[a]);
    }
    return out;
}

std::vector<QuadrupleInfo> classify_quadruples(const std::vector<std::vector<Int>>& quads) {
    std::vector<QuadrupleInfo> out;
    for (const auto& q : quads) {
        if (q.size() != 4) throw InputError("classify_quadruples expects 4-element tuples");
        QuadrupleInfo qi;
        qi.q = q;
        D4Triple t = D4Triple::make(q[0], q[1], q[2]);
        qi.regular = d_plus(t) == q[3];
        out.push_back(qi);
    }
    return out;
}

}  // namespace d4

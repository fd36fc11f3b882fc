// d4: command-line front end for the tuple, Pell, bound, reduction and search modules.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "d4/bounds.hpp"
#include "d4/errors.hpp"
#include "d4/pell.hpp"
#include "d4/precision.hpp"
#include "d4/reduction.hpp"
#include "d4/search.hpp"
#include "d4/tuples.hpp"

using json = nlohmann::json;
using namespace d4;

namespace {

enum Exit { kOk = 0, kAnomaly = 1, kUsage = 2, kPrecision = 3 };

json ints(const std::vector<Int>& v) {
    json j = json::array();
    for (const Int& x : v) j.push_back(x.get_str());
    return j;
}

json iv(const Interval& x) { return {{"lo", x.lo().str(20, MPFR_RNDD)}, {"hi", x.hi().str(20, MPFR_RNDU)}}; }

json triple_json(const D4Triple& t) {
    return {{"a", t.a.get_str()}, {"b", t.b.get_str()}, {"c", t.c.get_str()},
            {"r", t.r.get_str()}, {"s", t.s.get_str()}, {"t", t.t.get_str()}};
}

json ceilings_json(const Ceilings& c) { return {{"ac_max", c.ac_max}, {"h_max", c.h_max}}; }

json report_json(const BoundReport& r) {
    json j;
    j["stage"] = r.stage;
    j["constant"] = r.constant;
    j["ceilings"] = ceilings_json(r.ceilings);
    j["h_coeff"] = r.h_coeff;
    j["digits"] = r.digits;
    j["trail"] = json::array();
    for (const TurnRecord& t : r.trail)
        j["trail"].push_back({{"turn", t.turn},
                              {"mignotte", t.mignotte.str()},
                              {"laurent", t.laurent.str()},
                              {"G_h", t.Gh},
                              {"a2_coeff", t.a2_coeff},
                              {"h_coeff", t.h_coeff},
                              {"after", ceilings_json(t.after)}});
    return j;
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

D4Triple parse_triple(const std::string& s) {
    std::vector<Int> v = parse_int_list(s);
    if (v.size() != 3) throw InputError("--triple needs exactly three integers");
    return D4Triple::make(v[0], v[1], v[2]);
}

// Flag value, else D4_DIGITS, else the library default.
RealCtx make_ctx(int digits_flag) {
    if (digits_flag > 0) return RealCtx(digits_flag);
    return RealCtx::from_env();
}

int jobs_default(int flag) {
    if (flag > 0) return flag;
    if (const char* s = std::getenv("D4_JOBS"); s && *s) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (*end != '\0' || v < 1 || v > 1024) throw InputError(std::string("bad D4_JOBS: ") + s);
        return static_cast<int>(v);
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"D(4)-tuple algebra, Pell enumeration, transcendence bounds, reduction and case searches"};
    app.require_subcommand(1);
    app.fallthrough();  // --digits may follow the subcommand
    int digits = 0;
    app.add_option("--digits", digits, "working precision in decimal digits (env D4_DIGITS)")->check(CLI::Range(30, 100000));

    // verify
    auto* verify = app.add_subcommand("verify", "check that every pairwise product plus n is a square");
    std::string tuple_s;
    long n_val = 4;
    verify->add_option("--tuple", tuple_s, "comma separated integers")->required();
    verify->add_option("--n", n_val, "the n of D(n)");

    // dplus / dminus / degree
    std::string triple_s;
    auto* dplus = app.add_subcommand("dplus", "regular extension d+ of a D(4)-triple");
    dplus->add_option("--triple", triple_s, "a,b,c")->required();
    auto* dminus = app.add_subcommand("dminus", "d- of a D(4)-triple");
    dminus->add_option("--triple", triple_s, "a,b,c")->required();
    auto* deg = app.add_subcommand("degree", "degree of a D(4)-triple with its descent trail");
    deg->add_option("--triple", triple_s, "a,b,c")->required();

    // pell
    auto* pell = app.add_subcommand("pell", "solutions of A V^2 - B U^2 = 4(A - B), one per line");
    std::string A_s, B_s, maxu_s;
    pell->add_option("--A", A_s, "smaller element")->required();
    pell->add_option("--B", B_s, "larger element, AB + 4 a square")->required();
    pell->add_option("--max-u", maxu_s, "also walk every orbit up to this U");

    // extend
    auto* extend = app.add_subcommand("extend", "all d <= limit extending a D(4)-triple, one per line");
    std::string limit_s;
    extend->add_option("--triple", triple_s, "a,b,c")->required();
    extend->add_option("--limit", limit_s, "largest d")->required();

    // bounds
    auto* bounds = app.add_subcommand("bounds", "evaluate the transcendence bounds");
    bounds->require_subcommand(1);
    bounds->fallthrough();
    auto* b_rickert = bounds->add_subcommand("rickert", "Rickert exponent and the b ceilings it gives");
    std::string rA, rB, rN;
    b_rickert->add_option("--A", rA, "first denominator");
    b_rickert->add_option("--B", rB, "second denominator");
    b_rickert->add_option("--N", rN, "common multiplier");
    auto* b_alpha = bounds->add_subcommand("alpha", "gap-principle constant");
    std::string A0 = "1", B0 = "100000", D0 = "10000000000", rho_s = "1";
    b_alpha->add_option("--A0", A0, "lower bound of a")->capture_default_str();
    b_alpha->add_option("--B0", B0, "lower bound of b")->capture_default_str();
    b_alpha->add_option("--D0", D0, "lower bound of d")->capture_default_str();
    b_alpha->add_option("--rho", rho_s, "exponent shift")->capture_default_str();
    auto* b_alek = bounds->add_subcommand("aleksentsev", "initial ac and h ceilings");
    MignotteParams mp;
    double m_rho = 11.5, m_M = 4.7;
    double ac_in = 0, h_in = 0;
    auto add_mignotte = [&](CLI::App* s) {
        s->add_option("--rho", m_rho, "Mignotte rho")->capture_default_str();
        s->add_option("--M", m_M, "Mignotte M")->capture_default_str();
        s->add_option("--L", mp.L, "Mignotte L")->capture_default_str();
        s->add_option("--chi", mp.chi, "Mignotte chi")->capture_default_str();
        s->add_option("--ac-max", ac_in, "ac ceiling (default: the Aleksentsev stage)");
        s->add_option("--h-max", h_in, "h ceiling (default: the Aleksentsev stage)");
    };
    auto* b_mig = bounds->add_subcommand("mignotte", "Mignotte three-logarithm stage at one parameter point");
    add_mignotte(b_mig);
    auto* b_lau = bounds->add_subcommand("laurent", "Laurent two-logarithm (A2) coefficient and the regular-case table");
    add_mignotte(b_lau);
    LaurentParams lp;
    double l_mu = 0.63;
    b_lau->add_option("--varrho", lp.varrho, "Laurent varrho")->capture_default_str();
    b_lau->add_option("--mu", l_mu, "Laurent mu")->capture_default_str();
    auto* b_iter = bounds->add_subcommand("iterate", "grid search over the Mignotte and Laurent parameters");
    std::string grid_s = "coarse";
    int turns = 5, jobs_flag = 0;
    b_iter->add_option("--grid", grid_s, "coarse|full")->check(CLI::IsMember({"coarse", "full"}))->capture_default_str();
    b_iter->add_option("--turns", turns, "turn limit")->check(CLI::Range(1, 50))->capture_default_str();
    b_iter->add_option("--jobs", jobs_flag, "worker threads (env D4_JOBS)")->check(CLI::Range(1, 1024));

    // reduce
    auto* reduce = app.add_subcommand("reduce", "Baker-Davenport reduction of the first linear form");
    std::string M_s;
    reduce->add_option("--triple", triple_s, "a,b,c")->required();
    reduce->add_option("--M", M_s, "ceiling of the index")->required();

    // search
    auto* search = app.add_subcommand("search", "replay one case search, streaming results");
    std::string case_s, rmax_s, amax_s, Rmax_s, ckpt;
    bool resume = false;
    long stop_after = 0;
    search->add_option("--case", case_s, "regular|degree1|case1|case2|case3|case4")
        ->required()
        ->check(CLI::IsMember({"regular", "degree1", "case1", "case2", "case3", "case4"}));
    search->add_option("--r-max", rmax_s, "shrink the r (or R) ceiling");
    search->add_option("--a-max", amax_s, "shrink the a ceiling");
    search->add_option("--R-max", Rmax_s, "shrink the Pell R ceiling");
    search->add_option("--M", M_s, "reduction ceiling (default from the bounds)");
    search->add_option("--jobs", jobs_flag, "worker threads (env D4_JOBS)")->check(CLI::Range(1, 1024));
    search->add_option("--checkpoint", ckpt, "checkpoint file, rewritten after every batch");
    search->add_flag("--resume", resume, "continue from --checkpoint");
    search->add_option("--stop-after", stop_after, "stop after this many outer units")->check(CLI::PositiveNumber);

    // brute
    auto* brute = app.add_subcommand("brute", "all D(4)-m-tuples with elements up to a limit");
    long limit = 0;
    int size = 4;
    brute->add_option("--limit", limit, "largest element")->required()->check(CLI::Range(1L, kBruteLimitGuard));
    brute->add_option("--size", size, "m")->check(CLI::Range(2, 6))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        const RealCtx ctx = make_ctx(digits);
        auto default_ceilings = [&] {
            if (ac_in > 0 && h_in > 0) return Ceilings{ac_in, h_in};
            if (ac_in > 0 || h_in > 0) throw InputError("--ac-max and --h-max go together");
            return aleksentsev_initial_bounds(ctx).ceilings;
        };

        if (*verify) {
            std::vector<Int> v = parse_int_list(tuple_s);
            bool ok = verify_dn_tuple(v, n_val);
            emit({{"tuple", ints(v)}, {"n", n_val}, {"valid", ok}});
        } else if (*dplus || *dminus) {
            D4Triple t = parse_triple(triple_s);
            json j = triple_json(t);
            if (*dplus) j["d_plus"] = d_plus(t).get_str();
            else j["d_minus"] = d_minus(t).get_str();
            emit(j);
        } else if (*deg) {
            D4Triple t = parse_triple(triple_s);
            DegreeResult r = degree(t);
            emit({{"triple", triple_json(t)}, {"degree", r.degree}, {"generator", triple_json(r.generator)},
                  {"trail", ints(r.trail)}, {"regular", is_regular_triple(t)}});
        } else if (*pell) {
            PellProblem p = PellProblem::make(parse_int(A_s), parse_int(B_s));
            auto reps = orbit_representatives(p);
            auto fund = fundamental_solutions(p);
            if (maxu_s.empty()) {
                for (const auto& f : fund) {
                    bool rep = std::find(reps.begin(), reps.end(), f) != reps.end();
                    emit({{"U", f.U.get_str()}, {"V", f.V.get_str()}, {"fundamental", true}, {"orbit_rep", rep}});
                }
            } else {
                Int u_max = parse_int(maxu_s);
                for (std::size_t i = 0; i < reps.size(); ++i)
                    for (const auto& w : walk_until(p, reps[i], u_max))
                        emit({{"U", w.U.get_str()}, {"V", w.V.get_str()}, {"orbit", i}});
            }
        } else if (*extend) {
            D4Triple t = parse_triple(triple_s);
            Int dp = d_plus(t);
            for (const Int& d : extend_triple_by_pell(t, parse_int(limit_s)))
                emit({{"d", d.get_str()}, {"regular", d == dp}});
        } else if (*bounds) {
            if (*b_rickert) {
                json j;
                if (!rA.empty() || !rB.empty() || !rN.empty()) {
                    RickertInput in{parse_int(rA), parse_int(rB), parse_int(rN)};
                    in.validate(ctx);
                    j["lambda"] = iv(rickert_lambda(in, ctx));
                }
                RickertCeiling p = prop34_b_ceiling(ctx), d = degree1_b_ceiling(ctx);
                j["prop_ceiling"] = {{"b_ceiling", p.b_ceiling}, {"fails_at_1e5", p.fails_at_1e5}};
                j["degree1_ceiling"] = {
                    {"b_ceiling", d.b_ceiling}, {"applicability", d.applicability}, {"fails_at_1e5", d.fails_at_1e5}};
                j["degree1_k_max"] = degree1_k_max();
                emit(j);
            } else if (*b_alpha) {
                PrecisionScope ps(ctx);
                Interval a = gap_alpha(Interval::decimal(A0), Interval::decimal(B0), Interval::decimal(D0),
                                       Interval::decimal(rho_s), ctx);
                emit({{"alpha", iv(a)}});
            } else if (*b_alek) {
                BoundReport r = aleksentsev_initial_bounds(ctx);
                emit(report_json(r));
            } else if (*b_mig || *b_lau) {
                MignotteParams p = MignotteParams::make(m_rho, m_M, mp.L, mp.chi);
                Ceilings cl = default_ceilings();
                json j;
                j["params"] = p.str();
                j["ceilings"] = ceilings_json(cl);
                if (*b_mig) {
                    FeasibilityDetail fd = mignotte_feasibility(p, cl, ctx);
                    A1Report a1 = mignotte_a1_c_bound(ctx);
                    j["G_h"] = iv(mignotte_Gh(p, ctx));
                    j["feasible"] = fd.feasible;
                    j["delta"] = {{"log_a1_log_a2_log_c", iv(fd.d1)}, {"log_a1_log_a2", iv(fd.d2)},
                                  {"constant", iv(fd.d0)}, {"combined", iv(fd.combined)}};
                    j["a1_case"] = {{"B1_coeff", iv(a1.B1_coeff)}, {"c_max", a1.c_max}};
                } else {
                    lp.mu100 = static_cast<int>(std::lround(l_mu * 100));
                    lp.validate();
                    A2Detail d = mignotte_a2_detail(p, lp, cl, ctx);
                    j["laurent"] = lp.str();
                    j["a2"] = {{"H", iv(d.H)}, {"C", iv(d.C)}, {"Cp", iv(d.Cp)}, {"G_h2", iv(d.Gh2)},
                               {"F1", iv(d.F1)}, {"coeff", iv(d.coeff)}};
                    json rows = json::array();
                    for (int g : {1, 2, 4, 8}) {
                        LaurentTableRow r = laurent_table_regular(g, ctx);
                        RegularSBounds s = lambda23_bounds_regular(g, ctx);
                        rows.push_back({{"gcd", g},      {"hprime", r.hprime},  {"H", r.H},  {"omega", r.omega},
                                        {"theta", r.theta}, {"C", r.C},         {"Cp", r.Cp}, {"s_ceiling", s.s_ceiling}});
                    }
                    j["regular_table"] = rows;
                    RegularRBounds rb = regular_r_bounds(3.46289e10, ctx);
                    j["regular_r"] = {{"X_max", rb.X_max}, {"r_max", rb.r_max}, {"h_max", rb.h_max}};
                }
                emit(j);
            } else if (*b_iter) {
                BoundReport r = iterate_bounds(GridSpec::named(grid_s), turns, jobs_default(jobs_flag), ctx);
                emit(report_json(r));
            }
        } else if (*reduce) {
            D4Triple t = parse_triple(triple_s);
            Int M = parse_int(M_s);
            ReductionOutcome o = baker_davenport(lambda1_reduction_instance(t, M), ctx);
            json j{{"triple", triple_json(t)},
                   {"M", M.get_str()},
                   {"status", o.reduced() ? "reduced" : "inconclusive"},
                   {"J_max", o.J_max},
                   {"attempts", o.attempts},
                   {"digits", o.digits}};
            if (o.convergent) j["convergent"] = {{"p", o.convergent->p.get_str()}, {"q", o.convergent->q.get_str()}};
            if (o.eta) j["eta"] = iv(*o.eta);
            emit(j);
            return o.reduced() ? kOk : kAnomaly;
        } else if (*search) {
            SearchCase sc = SearchCase::defaults(parse_search_kind(case_s));
            sc.digits = ctx.digits;
            if (!amax_s.empty()) sc.override_a_max(parse_int(amax_s));
            if (!rmax_s.empty()) sc.override_r_max(parse_int(rmax_s));
            if (!Rmax_s.empty()) sc.override_R_max(parse_int(Rmax_s));
            if (!M_s.empty()) {
                Int M = parse_int(M_s);
                if (M < sc.M) throw InputError("--M may not be lowered below " + sc.M.get_str());
                sc.M = M;
            }
            SearchOptions o;
            o.jobs = jobs_default(jobs_flag);
            if (!ckpt.empty()) o.checkpoint_path = ckpt;
            o.resume = resume;
            if (stop_after > 0) o.stop_after_units = stop_after;
            o.on_result = [](const SearchResult& r) { std::cout << result_json(r) << '\n'; };
            SearchSummary s = run_search(sc, o);
            std::cout << summary_json(s) << '\n';
            return s.failures.empty() ? kOk : kAnomaly;
        } else if (*brute) {
            auto tuples = brute_force_tuples(limit, size);
            if (size == 4) {
                for (const QuadrupleInfo& q : classify_quadruples(tuples))
                    emit({{"tuple", ints(q.q)}, {"regular", q.regular}});
            } else {
                for (const auto& t : tuples) emit({{"tuple", ints(t)}});
            }
            emit({{"summary", true}, {"limit", limit}, {"size", size}, {"count", tuples.size()}});
        }
    } catch (const PrecisionError& e) {
        std::cerr << "precision: " << e.what() << '\n';
        return kPrecision;
    } catch (const ApplicabilityError& e) {
        std::cerr << "applicability: " << e.what() << '\n';
        return kPrecision;
    } catch (const InputError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain: " << e.what() << '\n';
        return kUsage;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity: " << e.what() << '\n';
        return kAnomaly;
    }
    return kOk;
}

#include <doctest.h>

#include <cmath>

#include "d4/bounds.hpp"
#include "d4/errors.hpp"

using namespace d4;

namespace {

const RealCtx kCtx(60);

bool rel(double got, double want, double tol) { return std::fabs(got / want - 1) <= tol; }

}  // namespace

TEST_CASE("Rickert exponent and admissibility") {
    RickertInput in{1, 5, 380725};
    in.validate(kCtx);
    CHECK(in.A_prime() == 16);
    CHECK(in.g() == 1);
    Interval l = rickert_lambda(in, kCtx);
    CHECK(l.lo_d() > 1.99984);
    CHECK(l.hi_d() < 1.99985);
    CHECK_THROWS_AS((RickertInput{1, 5, 1000}.validate(kCtx)), InputError);
    CHECK_THROWS_AS((RickertInput{5, 1, 380725}.validate(kCtx)), InputError);
}

TEST_CASE("Rickert ceilings") {
    RickertCeiling p = prop34_b_ceiling(kCtx);
    CHECK(p.b_ceiling < 803);
    CHECK(p.b_ceiling > 802);
    CHECK(p.fails_at_1e5);
    RickertCeiling d = degree1_b_ceiling(kCtx);
    CHECK(d.applicability == doctest::Approx(98416).epsilon(1e-4));
    CHECK(d.b_ceiling < 100000);
    CHECK(d.fails_at_1e5);
    CHECK(degree1_k_max() == 81);
    mpq_class want(237952 * 1000, 2 * 1000);
    want.canonicalize();
    CHECK(c_upper_bound(2, 10) == want);
}

TEST_CASE("gap principle") {
    PrecisionScope ps(kCtx);
    Interval a = gap_alpha(Interval(1L), Interval(100000L), Interval::decimal("1e10"), Interval(1L), kCtx);
    CHECK(a.lo_d() > 0.4999965);
    CHECK(a.hi_d() < 0.4999975);
    IndexLowerBounds ib = index_lower_bounds(1, 100485, 101120, kCtx);
    CHECK(ib.h_min.lo_d() > 0);
    CHECK(certainly_le(ib.l_min, ib.h_min * Interval(2L)));
}

TEST_CASE("Aleksentsev stage") {
    PrecisionScope ps(kCtx);
    Interval k = aleksentsev_constant(kCtx);
    CHECK(rel(k.mid_d(), 6.005175e11, 1e-4));
    BoundReport r = aleksentsev_initial_bounds(kCtx);
    CHECK(rel(r.ceilings.ac_max, 1.08915e34, 1e-3));
    CHECK(rel(r.ceilings.h_max, 6.95745e16, 1e-3));
}

TEST_CASE("Mignotte coefficient and feasibility") {
    MignotteParams p = MignotteParams::make(11.5, 4.7, 1043);
    CHECK(p.rho2 == 23);
    CHECK(p.M10 == 47);
    CHECK(rel(mignotte_Gh(p, kCtx).mid_d(), 5.66642e9, 1e-4));
    CHECK(rel(mignotte_Gh_fast(p), 5.66642e9, 1e-4));
    Ceilings first = aleksentsev_initial_bounds(kCtx).ceilings;
    CHECK(mignotte_feasible(p, first, kCtx));
    CHECK(mignotte_feasible_fast(p, first));
    CHECK_FALSE(mignotte_feasible(MignotteParams::make(5.5, 3, 700), first, kCtx));
    CHECK_THROWS_AS(MignotteParams::make(11.3, 4.7, 1043), InputError);
    A1Report a1 = mignotte_a1_c_bound(kCtx);
    CHECK(rel(a1.B1_coeff.hi_d(), 979.86, 1e-3));  // worst case over 260 < c1 < 966
    CHECK(rel(a1.c_max, 1.9701e8, 1e-3));
    CHECK(sqrt_log_ceiling(500) < sqrt_log_ceiling(501));
}

TEST_CASE("(A2) coefficient: double and interval evaluations agree") {
    MignotteParams p = MignotteParams::make(11.5, 4.7, 1043);
    LaurentParams lp{59, 63};
    Ceilings first = aleksentsev_initial_bounds(kCtx).ceilings;
    Interval c = mignotte_a2_h_coefficient(p, lp, first, kCtx);
    CHECK(rel(a2_coeff_fast(p, lp, first), c.mid_d(), 1e-9));
    // Within 1% of the reference 4.85941e10; the 0.1% acceptance tolerance is checked separately.
    CHECK(rel(c.mid_d(), 4.85941e10, 1e-2));
    CHECK_THROWS_AS((LaurentParams{59, 20}.validate()), InputError);
}

TEST_CASE("ceilings_from_coeff") {
    Ceilings c = ceilings_from_coeff(4.85941e10, kCtx);
    CHECK(rel(c.ac_max, 2.42372e28, 1e-3));
    CHECK(rel(c.h_max, 1.03788e14, 1e-3));
    Ceilings lower = ceilings_from_coeff(3.46289e10, kCtx);
    CHECK(lower.ac_max < c.ac_max);
}

TEST_CASE("iterate_bounds on the coarse grid") {
    BoundReport a = iterate_bounds(GridSpec::coarse(), 5, 1, kCtx);
    BoundReport b = iterate_bounds(GridSpec::coarse(), 5, 3, kCtx);
    REQUIRE(!a.trail.empty());
    CHECK(a.ceilings.ac_max == b.ceilings.ac_max);
    CHECK(a.trail.size() == b.trail.size());
    for (std::size_t i = 1; i < a.trail.size(); ++i)
        CHECK(a.trail[i].after.ac_max < a.trail[i - 1].after.ac_max);
    CHECK(a.ceilings.ac_max < 1.25e28);
    CHECK_THROWS_AS(GridSpec::named("fine"), InputError);
}

TEST_CASE("regular-case Laurent table") {
    LaurentTableRow r1 = laurent_table_regular(1, kCtx);
    CHECK(rel(r1.hprime, 25.5089, 5e-3));
    CHECK(rel(r1.C, 0.02276, 5e-3));
    LaurentTableRow r8 = laurent_table_regular(8, kCtx);
    CHECK(rel(r8.C, 0.02307, 5e-3));
    CHECK(rel(r8.Cp, 0.04792, 5e-3));
    long expect[] = {20610, 44324, 94814, 201884};
    int i = 0;
    for (int g : {1, 2, 4, 8}) CHECK(lambda23_bounds_regular(g, kCtx).s_ceiling == expect[i++]);
    CHECK_THROWS_AS(laurent_table_regular(3, kCtx), InputError);
}

TEST_CASE("regular r ceilings") {
    RegularRBounds rb = regular_r_bounds(3.46289e10, kCtx);
    CHECK(rb.r_max < 9164950);
    CHECK(rel(rb.X_max, 1.57493e13, 1e-5));
    CHECK(regular_r_max_for_a(1, rb.X_max) == 63164);
    CHECK(regular_r_max_for_a(2, rb.X_max) > 63164);
}

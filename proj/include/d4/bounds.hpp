#pragma once

#include <optional>
#include <string>
#include <vector>

#include "d4/bigint.hpp"
#include "d4/precision.hpp"

namespace d4 {

// ---------------------------------------------------------------- Rickert

struct RickertInput {
    Int A, B, N;
    Int A_prime() const;  // max{4(B-A), 4A}
    Int g() const;        // gcd(A, B)

    // Throws InputError when the admissibility conditions fail.
    void validate(const RealCtx& ctx) const;
};

// Enclosure of the exponent lambda; ApplicabilityError unless certainly < 2.
Interval rickert_lambda(const RickertInput& in, const RealCtx& ctx);

// Right-hand side of the n-bound for the simultaneous approximation with
// denominators A < B < C; ApplicabilityError on a nonpositive log argument.
Interval rickert_n_bound(const Int& A, const Int& B, const Int& C, const RealCtx& ctx);

struct RickertCeiling {
    double b_ceiling;        // last b where the combined inequality still holds
    double applicability;    // smallest b where the closed form is defined (0 if always)
    bool fails_at_1e5;       // the inequality is false at b = 10^5
};

// 4.7668 b^{3/2} < n-bound with d >= 237.952 b^4 (the c < 237.952 b^3/a ceiling).
RickertCeiling prop34_b_ceiling(const RealCtx& ctx);
// 0.134046 b^{3/2} < n-bound from the degree-one case.
RickertCeiling degree1_b_ceiling(const RealCtx& ctx);
// Largest k with 10^10 > 237.952 k (k-1)^3.
long degree1_k_max();

// 237.952 b^3 / a, exact.
mpq_class c_upper_bound(const Int& a, const Int& b);

// ---------------------------------------------------------------- gap principle

// Largest alpha satisfying both quadratic constraints of the gap lemma.
Interval gap_alpha(const Interval& A0, const Interval& B0, const Interval& D0, const Interval& rho,
                   const RealCtx& ctx);

struct IndexLowerBounds {
    Interval l_min, m_min, j_min, h_min;
};
IndexLowerBounds index_lower_bounds(const Int& a, const Int& b, const Int& c, const RealCtx& ctx);

// alpha2^{-4j}
Interval lambda1_upper(long j, const Interval& alpha2);

// ---------------------------------------------------------------- three- and two-logarithm stages

struct Ceilings {
    double ac_max = 0;
    double h_max = 0;
};

struct MignotteParams {
    int rho2 = 23;   // rho = rho2 / 2
    int M10 = 47;    // M = M10 / 10
    int L = 1043;
    int chi = 2;

    double rho() const { return rho2 / 2.0; }
    double M() const { return M10 / 10.0; }
    static MignotteParams make(double rho, double M, int L, int chi = 2);
    void validate() const;
    std::string str() const;
    bool operator==(const MignotteParams&) const = default;
};

struct LaurentParams {
    int varrho = 59;
    int mu100 = 63;  // mu = mu100 / 100

    double mu() const { return mu100 / 100.0; }
    void validate() const;
    std::string str() const;
    bool operator==(const LaurentParams&) const = default;
};

struct TurnRecord {
    int turn = 0;
    MignotteParams mignotte;
    LaurentParams laurent;
    double Gh = 0;        // Mignotte coefficient G(h)
    double a2_coeff = 0;  // Laurent (A2) coefficient
    double h_coeff = 0;   // max of the two
    Ceilings after;
};

struct BoundReport {
    std::string stage;
    double constant = 0;  // stage-specific: the Aleksentsev constant or the final h coefficient
    Ceilings ceilings;
    double h_coeff = 0;
    std::vector<TurnRecord> trail;
    int digits = 0;
};

// Derived constant in h/(log 2h - log log sqrt(10^5)) < K log alpha2 log c.
Interval aleksentsev_constant(const RealCtx& ctx);
BoundReport aleksentsev_initial_bounds(const RealCtx& ctx);

struct FeasibilityDetail {
    bool feasible = false;
    Interval d1, d2, d0;  // left minus right, per coefficient class
    Interval combined;    // d1*m1 + d2*m2 + d0 at the smallest c
};
FeasibilityDetail mignotte_feasibility(const MignotteParams& p, const Ceilings& cl, const RealCtx& ctx);
bool mignotte_feasible(const MignotteParams& p, const Ceilings& cl, const RealCtx& ctx);
Interval mignotte_Gh(const MignotteParams& p, const RealCtx& ctx);

struct A1Report {
    Interval B1_coeff;  // B1 < coeff * log c
    double c_max = 0;
};
A1Report mignotte_a1_c_bound(const RealCtx& ctx);
// Largest c with sqrt(c) < k log c.
double sqrt_log_ceiling(double k);

struct LaurentEval {
    Interval sigma, lambda, H, omega, theta, C, Cp, lower_bound;
};
// Evaluates the two-logarithm lower bound for the given heights.
LaurentEval laurent_bound(const LaurentParams& p, const Interval& a1, const Interval& a2, const Interval& hprime,
                          const RealCtx& ctx);

struct A2Detail {
    Interval c1, GB1, GB2, GB3, Ga1, Ga2, GF, H, C, Cp, Gh2, F1, coeff;
};
A2Detail mignotte_a2_detail(const MignotteParams& p, const LaurentParams& lp, const Ceilings& cl, const RealCtx& ctx);
Interval mignotte_a2_h_coefficient(const MignotteParams& p, const LaurentParams& lp, const Ceilings& cl,
                                   const RealCtx& ctx);

// Double-precision versions used by the grid search.
double mignotte_Gh_fast(const MignotteParams& p);
bool mignotte_feasible_fast(const MignotteParams& p, const Ceilings& cl);
double a2_coeff_fast(const MignotteParams& p, const LaurentParams& lp, const Ceilings& cl);
double a2_Gh2_fast(const MignotteParams& p, const LaurentParams& lp, const Ceilings& cl);

// ac ceiling from 0.666662 sqrt(ac) < coeff log sqrt(ac+4) log ac, and the matching h ceiling.
Ceilings ceilings_from_coeff(double coeff, const RealCtx& ctx);

struct GridSpec {
    int rho2_lo = 11, rho2_hi = 28;
    int M10_lo = 30, M10_hi = 100, M10_step = 1;
    int L_lo = 700, L_hi = 1500, L_step = 1;
    int varrho_lo = 40, varrho_hi = 85;
    int mu100_lo = 44, mu100_hi = 76;

    static GridSpec full();
    static GridSpec coarse();
    static GridSpec named(const std::string& name);  // "full" | "coarse"
    std::size_t mignotte_size() const;
};

BoundReport iterate_bounds(const GridSpec& grid, int turns, int jobs, const RealCtx& ctx);

// ---------------------------------------------------------------- regular case instantiation

struct LaurentTableRow {
    int gcd = 1;
    double hprime, H, omega, theta, C, Cp;
};
// One column of the regular-case table: s = 10^4, s' = s/gcd, varrho = 61, mu = 0.7.
LaurentTableRow laurent_table_regular(int gcd_s8, const RealCtx& ctx);

struct RegularSBounds {
    double c_coeff;      // 16 max C
    double sqrt_coeff;   // 4 max sqrt(omega theta)
    double cp_coeff;     // 16 max C'
    double bprime_a;     // coefficient of (log b' + .)^2
    double bprime_max;   // b' ceiling, two decimals
    double s_coeff;      // (b' - 0.018)/2
    double log_coeff;    // 28 s_coeff
    long s_ceiling;      // S1 for this gcd class
};
RegularSBounds lambda23_bounds_regular(int gcd_s8, const RealCtx& ctx);

// 28 (b' - 0.018)/2 from the unrounded b' ceiling.
double regular_log_coeff(const RealCtx& ctx);

// Largest integer x with x/g < k log(1.264^3 (x^e + 2)).
long self_log_ceiling(double k, int g, int e, const RealCtx& ctx);

struct RegularRBounds {
    double X_max;   // c (r-8)/16 ceiling
    long r_max;     // from 3 r (r-8)/16 < X_max
    double h_max;   // h ceiling at r_max
};
RegularRBounds regular_r_bounds(double h_coeff, const RealCtx& ctx);
// Largest r with (a + (r^2-4)/a + 2r)(r-8)/16 < X_max.
long regular_r_max_for_a(long a, double X_max);

}  // namespace d4

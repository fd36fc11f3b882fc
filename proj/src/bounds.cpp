#include "d4/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>
#include <tuple>

#include "d4/constants.hpp"
#include "d4/errors.hpp"
#include "d4/tuples.hpp"

namespace d4 {

namespace {

template <class T>
struct Num;

template <>
struct Num<double> {
    static double dec(const char* s) { return std::strtod(s, nullptr); }
    static double q(long n, long d) { return static_cast<double>(n) / static_cast<double>(d); }
};

template <>
struct Num<Interval> {
    static Interval dec(const char* s) { return Interval::decimal(s); }
    static Interval q(long n, long d) { return Interval::rational(mpq_class(mpz_class(n), mpz_class(d))); }
};

inline double mx(double a, double b) { return std::max(a, b); }
inline Interval mx(const Interval& a, const Interval& b) { return max(a, b); }
inline double mn(double a, double b) { return std::min(a, b); }
inline Interval mn(const Interval& a, const Interval& b) { return min(a, b); }

inline bool lt(double a, double b) { return a < b; }
inline bool lt(const Interval& a, const Interval& b) { return certainly_lt(a, b); }

Interval dec(const char* s) { return Interval::decimal(s); }
Interval iv(const Int& z) { return Interval::exact(z); }

// Geometric bisection for the last x in [lo, hi] where `holds` is true;
// `holds` must be true at lo, false at hi, and switch once.
template <class F>
double last_true(F holds, double lo, double hi) {
    if (!holds(lo) || holds(hi)) throw IntegrityError("bisection bracket does not straddle the crossing");
    for (int i = 0; i < 400 && hi / lo - 1 > 1e-15; ++i) {
        double mid = std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi) break;
        (holds(mid) ? lo : hi) = mid;
    }
    return hi;
}

// Last point where lhs < rhs is not certainly false.
template <class F>
double interval_ceiling(F margin, double lo, double hi) {
    return last_true([&](double x) { return !certainly_lt(margin(Interval(x)), Interval(0)); }, lo, hi);
}

long last_true_int(const std::function<bool(long)>& holds, long lo, long hi) {
    if (!holds(lo) || holds(hi)) throw IntegrityError("integer bisection bracket does not straddle the crossing");
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        (holds(mid) ? lo : hi) = mid;
    }
    return lo;
}

template <class T>
struct Consts {
    T L5, L25;  // log 10^5, log 10^{5/2}
    Consts() {
        using std::log;
        L5 = log(T(100000));
        L25 = L5 / T(2);
    }
};

// ------------------------------------------------------------ Mignotte

template <class T>
T gh_core(const T& rho, const T& M, const T& L) {
    using std::log;
    Consts<T> k;
    using N = Num<T>;
    return T(2) * M * L * L * (rho + T(3)) * (rho + T(3)) * log(rho) * (T(1) + N::dec(k::kHeightSlack)) *
           (T(1) + N::dec(k::kA3Slope) / k.L5 * (rho - T(1)));
}

template <class T>
struct FeasT {
    T d1, d2, d0, combined;
};

template <class T>
FeasT<T> feas_core(const T& rho, const T& M, const T& L, const T& ac, const T& hm) {
    using std::log;
    using std::sqrt;
    using std::pow;
    using std::cbrt;
    using std::exp;
    using N = Num<T>;
    Consts<T> k;
    const T slope = N::dec(k::kA3Slope);
    const T lam = log(rho);
    const T D(4);
    const T A12 = (rho + T(3)) * k.L25;
    const T A3 = T(8) * (k.L5 + slope * (rho - T(1)));
    const T A = mn(A12, A3);
    const T two3 = N::q(2, 3);
    const T c1 = mx(pow(T(2) * M * L, two3), sqrt(T(2) * M * L / A));
    const T c2 = mx(cbrt(T(2)) * pow(M * L, two3), sqrt(M / A) * L);
    const T c3 = cbrt(T(6) * M * M) * L;
    const T c0 = (c1 + c2 + c3 + T(1)) / L;
    const T P = T(8) * M * L * (rho + T(3)) * (rho + T(3));
    const T kk = (L / T(2) - T(2) / (T(3) * L)) * lam;
    const T l1 = P * kk;
    const T l2 = l1 * slope * (rho - T(1));
    const T l0 = (L / T(4) - T(1)) * lam + T(2) * D * log(N::dec(k::kLog136)) - kk;
    const T bp = (T(4) * hm + T(2)) * (T(2) * hm + T(2)) / (T(8) * (rho + T(3)) * k.L25 * k.L5);
    const T logbt = log(c0 * c0 / T(4) * exp(T(3)) * L * L / ((M * L - T(1)) * (M * L - T(1))) * bp);
    const T r1 = N::q(3, 4) * L * L * c0 * T(8) * (rho + T(3)) * (rho + T(3)) + T(4) * P * logbt;
    const T r2 = r1 * slope * (rho - T(1));
    const T la2 = log(sqrt(ac + T(4)));
    const T r0 = T(5) * log(L) + T(2) * log(P * la2 * la2 * log(ac));
    FeasT<T> f{l1 - r1, l2 - r2, l0 - r0, T(0)};
    f.combined = f.d1 * k.L25 * k.L25 * k.L5 + f.d2 * k.L25 * k.L25 + f.d0;
    return f;
}

// ------------------------------------------------------------ Laurent core

template <class T>
struct LaurT {
    T sigma, lp, H, omega, theta, C, Cp;
};

template <class T>
LaurT<T> laurent_core(const T& sigma, const T& lp, const T& H, const T& mu, const T& a1, const T& a2) {
    using std::sqrt;
    using std::pow;
    using N = Num<T>;
    LaurT<T> r;
    r.sigma = sigma;
    r.lp = lp;
    r.H = H;
    const T q = sqrt(T(1) + T(1) / (T(4) * H * H));
    r.omega = T(2) * (T(1) + q);
    r.theta = q + T(1) / (T(2) * H);
    const T& om = r.omega;
    const T inner = om * om / T(9) +
                    T(8) * lp * pow(om, N::q(5, 4)) * pow(r.theta, N::q(1, 4)) / (T(3) * sqrt(a1 * a2) * sqrt(H)) +
                    N::q(4, 3) * (T(1) / a1 + T(1) / a2) * lp * om / H;
    const T br = om / T(6) + sqrt(inner) / T(2);
    r.C = mu / (lp * lp * lp * sigma) * br * br;
    r.Cp = sqrt(r.C * sigma * om * r.theta / (lp * lp * lp * mu));
    return r;
}

// ------------------------------------------------------------ (A2) pipeline

template <class T>
struct A2T {
    T c1, GB1, GB2, GB3, Ga1, Ga2, GF, H, C, Cp, Gh2, F1, coeff;
};

double fixed_point_double(double kf, double cst) {
    double F = 1e30;
    for (int i = 0; i < 400; ++i) {
        double next = kf * std::pow(4 * std::log(F) + cst, 2);
        if (std::fabs(next - F) <= 1e-15 * F) return next;
        F = next;
    }
    return F;
}

// Largest fixed point of F = k (4 log F + cst)^2, enclosed from above and below.
Interval fixed_point_interval(const Interval& kf, const Interval& cst) {
    auto g = [&](const Interval& F) { return kf * sqr(Interval(4) * log(F) + cst); };
    double guess = fixed_point_double(kf.mid_d(), cst.mid_d());
    double hi = guess * (1 + 1e-9);
    while (!certainly_le(g(Interval(hi)), Interval(hi))) hi *= 2;
    Interval up(hi);
    for (int i = 0; i < 200; ++i) {
        Interval n = g(up);
        Interval next(n.hi(), n.hi());
        if (!certainly_lt(next, up)) break;
        up = next;
    }
    double lo = guess * (1 - 1e-9);
    while (!certainly_ge(g(Interval(lo)), Interval(lo))) lo /= 2;
    Interval dn(lo);
    for (int i = 0; i < 200; ++i) {
        Interval n = g(dn);
        Interval next(n.lo(), n.lo());
        if (!certainly_gt(next, dn)) break;
        dn = next;
    }
    return Interval(dn.lo(), up.hi());
}

template <class T>
A2T<T> a2_core(const T& rho, const T& M, const T& L, const T& varrho, const T& mu, const T& ac, bool solve) {
    using std::log;
    using std::sqrt;
    using std::pow;
    using N = Num<T>;
    Consts<T> k;
    const T slope = N::dec(k::kA3Slope);
    const T A12 = (rho + T(3)) * k.L25;
    const T A3 = T(8) * (k.L5 + slope * (rho - T(1)));
    if (!lt(A12, A3)) throw InputError("A3 <= A12: rho outside the validated range");
    const T A = A12;
    A2T<T> r;
    r.c1 = mx(pow(T(2) * M * L, N::q(2, 3)), sqrt(T(2) * M * L / A));
    const T sc = sqrt(r.c1);
    const T f1 = (T(1) + T(1) / (r.c1 * A12 * A3)) / (T(1) - T(1) / (T(2) * sc * A12));
    const T f2 = (T(1) + T(1) / (r.c1 * A12 * A12)) / (T(1) - T(1) / (T(2) * sc * A3));
    r.GB1 = f1 * (sc / T(2) + T(1) / (T(2) * sc * A12 * A3)) * T(8) * (T(1) + slope / k.L5 * (rho - T(1)));
    const T GB21 = f1 * (sc / T(2) + T(1) / (T(2) * sc * A12 * A12)) * (rho + T(3));
    const T GB22 = f2 * (sc / T(2) + T(1) / (T(2) * sc * A12 * A3)) * (rho + T(3));
    r.GB2 = mx(GB21, GB22);
    r.GB3 = r.GB2;
    const T gh = gh_core(rho, M, L);
    const T Ghg1 = r.GB1 / T(2) + r.GB2;
    const T Ghg2 = r.GB3;
    const T Glg1 = r.GB1 + N::dec(k::kGamma1Log) * r.GB3 / k.L5;
    const T Glg2 = (r.GB2 / k.L5 + Glg1) / (T(2) * gh);
    r.Ga1 = Glg1 * (varrho + T(1)) + T(8) * Ghg1;
    r.Ga2 = Glg2 / (k.L25 * k.L25) * (varrho + T(1)) + T(8) * Ghg2;
    r.GF = T(2) / (N::dec(k::kHMinC) * r.Ga2) + T(2) / r.Ga1;
    const T sigma = (T(1) + T(2) * mu - mu * mu) / T(2);
    const T lp = sigma * log(varrho);
    r.H = T(4) * log(r.GF * gh) / lp + T(1) / sigma;
    const T a1 = r.Ga1 * k.L25 * k.L5;
    const T a2 = r.Ga2 * k.L25 * k.L25;
    LaurT<T> lt = laurent_core(sigma, lp, r.H, mu, a1, a2);
    r.C = lt.C;
    r.Cp = lt.Cp;
    const T la2 = log(sqrt(ac + T(4)));
    const T lb = log(r.GB3 * la2);
    r.Gh2 = N::dec(k::kLogRatio) / T(4) *
            (r.C * r.Ga1 * r.Ga2 * (N::dec(k::kC3Slack) + N::dec(k::kC3Tail) / r.C) + lb / (k.L5 * k.L25 * k.L25 * k.L25));
    if (solve) {
        const T kf = r.Gh2 * r.GF * la2;
        const T cst = T(4) * log(lp) + N::dec(k::kHprimeConst) + lp / sigma;
        if constexpr (std::is_same_v<T, double>) {
            r.F1 = fixed_point_double(kf, cst);
        } else {
            r.F1 = fixed_point_interval(kf, cst);
        }
        r.coeff = r.F1 / r.GF;
    }
    return r;
}

template <class T>
T rho_of(const MignotteParams& p) {
    return Num<T>::q(p.rho2, 2);
}
template <class T>
T M_of(const MignotteParams& p) {
    return Num<T>::q(p.M10, 10);
}
template <class T>
T mu_of(const LaurentParams& p) {
    return Num<T>::q(p.mu100, 100);
}

}  // namespace

// ================================================================ Rickert

Int RickertInput::A_prime() const {
    Int x = 4 * (B - A), y = 4 * A;
    return x > y ? x : y;
}

Int RickertInput::g() const {
    Int r;
    mpz_gcd(r.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
    return r;
}

void RickertInput::validate(const RealCtx&) const {
    if (A <= 0 || B <= 0 || N <= 0) throw InputError("A, B, N must be positive");
    Int gg = g();
    Int Ag = A / gg, Bg = B / gg;
    if (Ag > Bg - 4) throw InputError("need A/g <= B/g - 4");
    if (Bg < 5) throw InputError("need B/g >= 5");
    if (N % (A * B) != 0) throw InputError("N must be a multiple of AB");
    // N g^4 * 1000 >= 59488 A' B^2 (B-A)^2
    Int lhs = N * gg * gg * gg * gg * 1000;
    Int rhs = Int(59488) * A_prime() * B * B * (B - A) * (B - A);
    if (lhs < rhs) throw InputError("N below the applicability threshold 59.488 A' B^2 (B-A)^2 g^-4");
}

Interval rickert_lambda(const RickertInput& in, const RealCtx& ctx) {
    in.validate(ctx);
    PrecisionScope ps(ctx);
    Interval A = iv(in.A), B = iv(in.B), N = iv(in.N), Ap = iv(in.A_prime()), g = iv(in.g());
    Interval num = log(dec("2.500788") * Ap * B * N / (A * g * g));
    Interval den = log(dec("0.04216") * N * N * g * g / (A * B * sqr(B - A)));
    if (!certainly_gt(den, Interval(0))) throw ApplicabilityError("lambda denominator is not positive");
    Interval lam = Interval(1) + num / den;
    if (!certainly_lt(lam, Interval(2))) throw ApplicabilityError("lambda < 2 cannot be certified");
    return lam;
}

Interval rickert_n_bound(const Int& Ai, const Int& Bi, const Int& Ci, const RealCtx& ctx) {
    if (!(0 < Ai && Ai < Bi && Bi < Ci)) throw InputError("need 0 < A < B < C");
    PrecisionScope ps(ctx);
    RickertInput ri{Ai, Bi, Ai * Bi};
    Interval A = iv(Ai), B = iv(Bi), C = iv(Ci), Ap = iv(ri.A_prime()), g = iv(ri.g());
    auto positive_log = [](const Interval& x) {
        Interval l = log(x);
        if (!certainly_gt(l, Interval(0))) throw ApplicabilityError("nonpositive log in the n-bound");
        return l;
    };
    Interval n1 = positive_log(dec("8.40335e13") * sqrt(Ap) * sqrt(A) * B * B * C / g);
    Interval n2 = positive_log(dec("0.20533") * sqrt(A) * sqrt(B) * C / (B - A) * g);
    Interval d1 = positive_log(B * C);
    Interval d2 = positive_log(dec("0.016858") * A / Ap / B / sqr(B - A) * C * sqr(sqr(g)));
    return Interval(4) * n1 * n2 / (d1 * d2);
}

namespace {

RickertCeiling closed_form_ceiling(const char* lead, const char* n1, const char* n2, const char* d1, const char* d2,
                                   const RealCtx& ctx, bool d2_linear) {
    PrecisionScope ps(ctx);
    // d2 is log(d2 * b) when d2_linear, else a constant log(d2)
    double applic = 0;
    if (d2_linear) applic = (Interval(1) / dec(d2)).hi_d();
    auto margin = [&](const Interval& b) {
        Interval b5 = sqr(sqr(b)) * b;
        Interval rhs = Interval(4) * log(dec(n1) * b5 * sqr(b)) * log(dec(n2) * b5) /
                       (log(dec(d1) * b5) * log(d2_linear ? dec(d2) * b : dec(d2)));
        return rhs - dec(lead) * b * sqrt(b);
    };
    double lo = d2_linear ? applic * (1 + 1e-9) : 1.0;
    RickertCeiling rc;
    rc.applicability = applic;
    rc.b_ceiling = interval_ceiling(margin, lo, 1e9);
    rc.fails_at_1e5 = certainly_lt(margin(Interval(100000)), Interval(0));
    return rc;
}

}  // namespace

RickertCeiling prop34_b_ceiling(const RealCtx& ctx) {
    return closed_form_ceiling("4.7668", "1.9996e16", "8.14272", "237.952", "1.002848", ctx, false);
}

RickertCeiling degree1_b_ceiling(const RealCtx& ctx) {
    return closed_form_ceiling("0.134046", "1.571449e13", "0.006441", "0.1881676", "0.000010161", ctx, true);
}

long degree1_k_max() {
    // 10^10 > 237.952 k (k-1)^3, exact in integers scaled by 1000
    long k = 2;
    auto ok = [](long k) { return Int("10000000000000") > Int(237952) * k * Int(k - 1) * (k - 1) * (k - 1); };
    while (ok(k + 1)) ++k;
    return k;
}

mpq_class c_upper_bound(const Int& a, const Int& b) {
    if (a <= 0) throw InputError("a must be positive");
    if (!(a < b)) throw InputError("need a < b");
    mpq_class r(Int(237952) * b * b * b, Int(1000) * a);
    r.canonicalize();
    return r;
}

// ================================================================ gap principle

Interval gap_alpha(const Interval& A0, const Interval& B0, const Interval& D0, const Interval& rho, const RealCtx& ctx) {
    if (!certainly_ge(A0, Interval(1)) || !certainly_ge(B0, Interval(1)) || !certainly_ge(D0, Interval(1)) ||
        !certainly_ge(rho, Interval(1)))
        throw InputError("gap_alpha needs A0, B0, D0, rho >= 1");
    PrecisionScope ps(ctx);
    Interval lam = sqrt((A0 + Interval(4)) / (rho * A0 + Interval(4)));
    // positive root of p x^2 + q x - s
    auto root = [](const Interval& p, const Interval& q, const Interval& s) {
        return (sqrt(q * q + Interval(4) * p * s) - q) / (Interval(2) * p);
    };
    Interval r1 = root(Interval(1), Interval(1) + Interval(2) / (B0 * D0), Interval(1));
    Interval q2 = B0 * (lam + Interval(1) / sqrt(rho)) + Interval(2) / D0 * (lam + sqrt(rho));
    Interval r2 = root(Interval(20) / Interval(9), q2, B0);
    Interval a = min(r1, r2);
    if (!certainly_gt(a, Interval(0))) return Interval(0);
    return a;
}

IndexLowerBounds index_lower_bounds(const Int& a, const Int& b, const Int& c, const RealCtx& ctx) {
    D4Triple::make(a, b, c);
    PrecisionScope ps(ctx);
    Interval s = sqrt(iv(a * c));
    return {dec(k::kIndexL) * s, dec(k::kIndexM) * s, dec(k::kIndexM) * s, dec(k::kIndexH) * s};
}

Interval lambda1_upper(long j, const Interval& alpha2) {
    if (j < 1) throw InputError("j must be >= 1");
    if (!certainly_gt(alpha2, Interval(1))) throw InputError("alpha2 must exceed 1");
    return exp(Interval(-4 * j) * log(alpha2));
}

// ================================================================ Aleksentsev

Interval aleksentsev_constant(const RealCtx& ctx) {
    PrecisionScope ps(ctx);
    const long n = 3, d = 4;
    Interval nn(n);
    Interval K = dec("5.3") * pow(nn, Interval(1 - 2 * n) / Interval(2)) * pow(Interval(n + 1), Interval(n + 1)) *
                 Interval((n + 8) * (n + 8)) * Interval(n + 5) * pow(dec("31.44"), nn) * Interval(d * d) *
                 log(Interval(3 * n * d));
    // A1 A2 A3 = 16 log a1 log a2 log c, and the form is divided by 4 h-coefficient.
    return K * Interval(16) / Interval(4);
}

BoundReport aleksentsev_initial_bounds(const RealCtx& ctx) {
    PrecisionScope ps(ctx);
    Interval K = aleksentsev_constant(ctx);
    Interval Kh(K.hi(), K.hi());
    Interval llog = log(log(sqrt(Interval(100000))));
    Interval ih = dec(k::kIndexH);
    auto m_ac = [&](const Interval& X) {
        Interval h = ih * sqrt(X);
        return Kh * log(sqrt(X + Interval(4))) * log(X) - h / (log(Interval(2) * h) - llog);
    };
    double ac = interval_ceiling(m_ac, 1e2, 1e40);
    Interval acI(ac);
    Interval R = Kh * log(sqrt(acI + Interval(4))) * log(acI);
    auto m_h = [&](const Interval& h) { return R - h / (log(Interval(2) * h) - llog); };
    double h = interval_ceiling(m_h, 1e2, 1e40);
    BoundReport r;
    r.stage = "aleksentsev";
    r.constant = K.hi_d();
    r.ceilings = {ac, h};
    r.digits = ctx.digits;
    return r;
}

// ================================================================ Mignotte

MignotteParams MignotteParams::make(double rho, double M, int L, int chi) {
    MignotteParams p;
    p.rho2 = static_cast<int>(std::lround(rho * 2));
    p.M10 = static_cast<int>(std::lround(M * 10));
    if (std::fabs(rho * 2 - p.rho2) > 1e-9) throw InputError("rho must be a multiple of 0.5");
    if (std::fabs(M * 10 - p.M10) > 1e-9) throw InputError("M must be a multiple of 0.1");
    p.L = L;
    p.chi = chi;
    p.validate();
    return p;
}

void MignotteParams::validate() const {
    if (chi != 2) throw InputError("only chi = 2 is supported");
    if (rho2 < 11 || rho2 > 28) throw InputError("rho outside [5.5, 14]");
    if (M10 < 30 || M10 > 100) throw InputError("M outside [3, 10]");
    if (L < 700 || L > 1500) throw InputError("L outside [700, 1500]");
}

std::string MignotteParams::str() const {
    std::ostringstream o;
    o << "rho=" << rho() << " M=" << M() << " L=" << L;
    return o.str();
}

void LaurentParams::validate() const {
    if (varrho <= 1) throw InputError("varrho must exceed 1");
    if (mu100 * 3 < 100 || mu100 > 100) throw InputError("mu outside [1/3, 1]");
}

std::string LaurentParams::str() const {
    std::ostringstream o;
    o << "varrho=" << varrho << " mu=" << mu();
    return o.str();
}

FeasibilityDetail mignotte_feasibility(const MignotteParams& p, const Ceilings& cl, const RealCtx& ctx) {
    p.validate();
    PrecisionScope ps(ctx);
    auto f = feas_core<Interval>(rho_of<Interval>(p), M_of<Interval>(p), Interval(p.L), Interval(cl.ac_max),
                                 Interval(cl.h_max));
    FeasibilityDetail d;
    d.d1 = f.d1;
    d.d2 = f.d2;
    d.d0 = f.d0;
    d.combined = f.combined;
    d.feasible = certainly_ge(f.d1, Interval(0)) && certainly_ge(f.combined, Interval(0));
    return d;
}

bool mignotte_feasible(const MignotteParams& p, const Ceilings& cl, const RealCtx& ctx) {
    return mignotte_feasibility(p, cl, ctx).feasible;
}

Interval mignotte_Gh(const MignotteParams& p, const RealCtx& ctx) {
    p.validate();
    PrecisionScope ps(ctx);
    return gh_core<Interval>(rho_of<Interval>(p), M_of<Interval>(p), Interval(p.L));
}

double mignotte_Gh_fast(const MignotteParams& p) { return gh_core<double>(p.rho(), p.M(), p.L); }

bool mignotte_feasible_fast(const MignotteParams& p, const Ceilings& cl) {
    auto f = feas_core<double>(p.rho(), p.M(), p.L, cl.ac_max, cl.h_max);
    return f.d1 >= 0 && f.combined >= 0;
}

double sqrt_log_ceiling(double kc) {
    Interval K(kc);
    return interval_ceiling([&](const Interval& c) { return K * log(c) - sqrt(c); }, 100, 1e40);
}

A1Report mignotte_a1_c_bound(const RealCtx& ctx) {
    PrecisionScope ps(ctx);
    Consts<Interval> k;
    Interval c1(Real(260), Real(966));
    Interval A12 = dec("8.5") * k.L25;
    Interval A3 = Interval(8) * k.L5;
    Interval num = (c1 * A12 + Interval(1) / A3) * (c1 * A12 * A3 + Interval(1));
    Interval den = Interval(2) * pow(c1, dec("1.5")) * A12 * A12 * A3 - c1 * A12 * A3;
    Interval a3 = Interval(8) * (Interval(1) + dec(k::kA3Slope) * Interval(13) / k.L5);
    A1Report r;
    r.B1_coeff = num / den * a3;
    Interval kc = r.B1_coeff / (Interval(2) * dec(k::kIndexH));
    r.c_max = sqrt_log_ceiling(kc.hi_d());
    return r;
}

// ================================================================ Laurent

LaurentEval laurent_bound(const LaurentParams& p, const Interval& a1, const Interval& a2, const Interval& hprime,
                          const RealCtx& ctx) {
    p.validate();
    PrecisionScope ps(ctx);
    Interval mu = mu_of<Interval>(p);
    Interval sigma = (Interval(1) + Interval(2) * mu - mu * mu) / Interval(2);
    Interval lp = sigma * log(Interval(static_cast<long>(p.varrho)));
    if (!certainly_ge(a1 * a2, lp * lp)) throw ApplicabilityError("a1' a2' < lambda'^2");
    if (!certainly_ge(hprime, lp)) throw ApplicabilityError("h' < lambda'");
    Interval H = hprime / lp + Interval(1) / sigma;
    LaurT<Interval> t = laurent_core(sigma, lp, H, mu, a1, a2);
    LaurentEval e{t.sigma, t.lp, t.H, t.omega, t.theta, t.C, t.Cp, Interval(0)};
    Interval hh = hprime + lp / sigma;
    e.lower_bound = -(t.C * hh * hh * a1 * a2) - sqrt(t.omega * t.theta) * hh - log(t.Cp * hh * hh * a1 * a2);
    return e;
}

A2Detail mignotte_a2_detail(const MignotteParams& p, const LaurentParams& lp, const Ceilings& cl, const RealCtx& ctx) {
    p.validate();
    lp.validate();
    PrecisionScope ps(ctx);
    auto r = a2_core<Interval>(rho_of<Interval>(p), M_of<Interval>(p), Interval(p.L),
                               Interval(static_cast<long>(lp.varrho)), mu_of<Interval>(lp), Interval(cl.ac_max), true);
    return {r.c1, r.GB1, r.GB2, r.GB3, r.Ga1, r.Ga2, r.GF, r.H, r.C, r.Cp, r.Gh2, r.F1, r.coeff};
}

Interval mignotte_a2_h_coefficient(const MignotteParams& p, const LaurentParams& lp, const Ceilings& cl,
                                   const RealCtx& ctx) {
    return mignotte_a2_detail(p, lp, cl, ctx).coeff;
}

double a2_coeff_fast(const MignotteParams& p, const LaurentParams& lp, const Ceilings& cl) {
    return a2_core<double>(p.rho(), p.M(), p.L, lp.varrho, lp.mu(), cl.ac_max, true).coeff;
}

double a2_Gh2_fast(const MignotteParams& p, const LaurentParams& lp, const Ceilings& cl) {
    return a2_core<double>(p.rho(), p.M(), p.L, lp.varrho, lp.mu(), cl.ac_max, false).Gh2;
}

Ceilings ceilings_from_coeff(double coeff, const RealCtx& ctx) {
    PrecisionScope ps(ctx);
    Interval K(coeff), ih = dec(k::kIndexH);
    auto m = [&](const Interval& X) { return K * log(sqrt(X + Interval(4))) * log(X) - ih * sqrt(X); };
    Ceilings c;
    c.ac_max = interval_ceiling(m, 1e2, 1e40);
    Interval X(c.ac_max);
    c.h_max = (K * log(sqrt(X + Interval(4))) * log(X)).hi_d();
    return c;
}

// ================================================================ iteration

GridSpec GridSpec::full() { return GridSpec{}; }

GridSpec GridSpec::coarse() {
    GridSpec g;
    g.M10_step = 2;
    g.L_step = 10;
    return g;
}

GridSpec GridSpec::named(const std::string& name) {
    if (name == "full") return full();
    if (name == "coarse") return coarse();
    throw InputError("unknown grid '" + name + "' (expected full or coarse)");
}

std::size_t GridSpec::mignotte_size() const {
    std::size_t nr = rho2_hi - rho2_lo + 1;
    std::size_t nm = (M10_hi - M10_lo) / M10_step + 1;
    std::size_t nl = (L_hi - L_lo) / L_step + 1;
    return nr * nm * nl;
}

namespace {

struct Best {
    double value = INFINITY;
    MignotteParams p;
    bool found = false;

    auto key() const { return std::make_tuple(value, p.rho2, p.L, p.M10); }
    void offer(double v, const MignotteParams& q) {
        if (!found || std::make_tuple(v, q.rho2, q.L, q.M10) < key()) {
            value = v;
            p = q;
            found = true;
        }
    }
};

using Excluded = std::vector<MignotteParams>;

Best best_mignotte(const GridSpec& g, const LaurentParams& lp, const Ceilings& cl, int jobs, const Excluded& excl) {
    // work items: one per (rho, block of L values)
    const int Lblock = 50 * g.L_step;
    struct Item {
        int rho2, L0, L1;
    };
    std::vector<Item> items;
    for (int r2 = g.rho2_lo; r2 <= g.rho2_hi; ++r2)
        for (int L0 = g.L_lo; L0 <= g.L_hi; L0 += Lblock) items.push_back({r2, L0, std::min(g.L_hi, L0 + Lblock - 1)});
    std::vector<Best> results(items.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
            const Item& it = items[i];
            Best b;
            MignotteParams p;
            p.rho2 = it.rho2;
            for (int L = it.L0; L <= it.L1; L += g.L_step) {
                p.L = L;
                for (int m = g.M10_lo; m <= g.M10_hi; m += g.M10_step) {
                    p.M10 = m;
                    double gh = mignotte_Gh_fast(p);
                    if (b.found && gh > b.value) continue;
                    if (!mignotte_feasible_fast(p, cl)) continue;
                    if (std::find(excl.begin(), excl.end(), p) != excl.end()) continue;
                    b.offer(std::max(gh, a2_coeff_fast(p, lp, cl)), p);
                }
            }
            results[i] = b;
        }
    };
    int n = std::max(1, jobs);
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> ts;
        for (int t = 0; t < n; ++t) ts.emplace_back(worker);
        for (auto& t : ts) t.join();
    }
    Best all;
    for (const Best& b : results)
        if (b.found) all.offer(b.value, b.p);
    return all;
}

LaurentParams best_laurent(const GridSpec& g, const MignotteParams& p, const Ceilings& cl) {
    LaurentParams best;
    double bv = INFINITY;
    for (int v = g.varrho_lo; v <= g.varrho_hi; ++v)
        for (int m = g.mu100_lo; m <= g.mu100_hi; ++m) {
            LaurentParams lp{v, m};
            double x = a2_Gh2_fast(p, lp, cl);
            if (x < bv) {
                bv = x;
                best = lp;
            }
        }
    return best;
}

}  // namespace

BoundReport iterate_bounds(const GridSpec& grid, int turns, int jobs, const RealCtx& ctx) {
    if (turns < 1) throw InputError("turns must be >= 1");
    if (grid.rho2_lo < 11 || grid.rho2_hi > 28 || grid.M10_lo < 30 || grid.M10_hi > 100 || grid.L_lo < 700 ||
        grid.L_hi > 1500 || grid.M10_step < 1 || grid.L_step < 1 || grid.varrho_lo < 2 || grid.mu100_lo * 3 < 100 ||
        grid.mu100_hi > 100)
        throw InputError("grid outside the validated parameter ranges");
    BoundReport start = aleksentsev_initial_bounds(ctx);
    Ceilings cur = start.ceilings;
    LaurentParams lp{(grid.varrho_lo + grid.varrho_hi) / 2, (grid.mu100_lo + grid.mu100_hi) / 2};
    BoundReport rep;
    rep.stage = "iterate";
    rep.digits = ctx.digits;
    rep.ceilings = cur;
    for (int turn = 1; turn <= turns; ++turn) {
        Excluded excl;
        MignotteParams mp;
        Interval Gh, a2;
        for (;;) {
            Best b;
            for (int round = 0; round < 10; ++round) {
                b = best_mignotte(grid, lp, cur, jobs, excl);
                if (!b.found) throw ApplicabilityError("no feasible Mignotte parameters in the grid");
                LaurentParams next = best_laurent(grid, b.p, cur);
                if (next == lp) break;
                lp = next;
            }
            mp = b.p;
            if (mignotte_feasible(mp, cur, ctx)) break;
            excl.push_back(mp);  // feasible only in double precision
        }
        Gh = mignotte_Gh(mp, ctx);
        a2 = mignotte_a2_h_coefficient(mp, lp, cur, ctx);
        double coeff = max(Gh, a2).hi_d();
        Ceilings nc = ceilings_from_coeff(coeff, ctx);
        if (!(nc.ac_max < cur.ac_max)) break;
        TurnRecord tr;
        tr.turn = turn;
        tr.mignotte = mp;
        tr.laurent = lp;
        tr.Gh = Gh.hi_d();
        tr.a2_coeff = a2.hi_d();
        tr.h_coeff = coeff;
        tr.after = nc;
        rep.trail.push_back(tr);
        cur = nc;
        rep.h_coeff = coeff;
        rep.ceilings = cur;
    }
    rep.constant = rep.h_coeff;
    return rep;
}

// ================================================================ regular case

LaurentTableRow laurent_table_regular(int g, const RealCtx& ctx) {
    if (g != 1 && g != 2 && g != 4 && g != 8) throw InputError("gcd(s,8) must be 1, 2, 4 or 8");
    PrecisionScope ps(ctx);
    Interval s(10000);
    Interval base = dec(k::kRegA2Base);
    Interval hp = Interval(4) * log(s / Interval(g) / (Interval(14) * log(base * base * base * (s * s * s + Interval(2))))) +
                  dec("12.6");
    Interval mu = dec("0.7");
    Interval sigma = (Interval(1) + Interval(2) * mu - mu * mu) / Interval(2);
    Interval lp(Real(392) , Real(393));
    lp = lp / Interval(100);
    Interval H = hp / lp + Interval(1) / sigma;
    auto t = laurent_core(sigma, lp, H, mu, Interval(56), Interval(560));
    return {g, hp.mid_d(), H.lo_d(), t.omega.hi_d(), t.theta.hi_d(), t.C.hi_d(), t.Cp.hi_d()};
}

long self_log_ceiling(double kc, int g, int e, const RealCtx& ctx) {
    PrecisionScope ps(ctx);
    Interval K = Interval::decimal([&] {
        std::ostringstream o;
        o.precision(17);
        o << kc;
        return o.str();
    }());
    Interval b3 = dec(k::kRegA2Base);
    b3 = b3 * b3 * b3;
    auto holds = [&](long x) {
        Interval X(x);
        Interval p = X;
        for (int i = 1; i < e; ++i) p = p * X;
        return !certainly_ge(X / Interval(g), K * log(b3 * (p + Interval(2))));
    };
    return last_true_int(holds, 1, 1L << 40);
}

double regular_log_coeff(const RealCtx& ctx) {
    PrecisionScope ps(ctx);
    Interval A = dec(k::kRegBprimeA), B = dec(k::kRegBprimeB), Cc = dec(k::kRegBprimeC);
    double bp = interval_ceiling([&](const Interval& x) { return A * sqr(log(x) + B) + Cc - x; }, 1.0, 1e6);
    return (Interval(14) * (Interval(bp) - dec(k::kRegBprimeShift))).hi_d();
}

RegularSBounds lambda23_bounds_regular(int g, const RealCtx& ctx) {
    if (g != 1 && g != 2 && g != 4 && g != 8) throw InputError("gcd(s,8) must be 1, 2, 4 or 8");
    PrecisionScope ps(ctx);
    RegularSBounds r{};
    double Cmax = 0, Cpmax = 0, sq = 0;
    for (int gg : {1, 2, 4, 8}) {
        LaurentTableRow row = laurent_table_regular(gg, ctx);
        Cmax = std::max(Cmax, row.C);
        Cpmax = std::max(Cpmax, row.Cp);
        sq = std::max(sq, std::sqrt(row.omega * row.theta));
    }
    r.c_coeff = 16 * Cmax;
    r.cp_coeff = 16 * Cpmax;
    r.sqrt_coeff = 4 * sq;
    r.bprime_a = std::ceil(r.c_coeff * 1e4) / 1e4 * 2 / 0.9952;
    Interval A = dec(k::kRegBprimeA), B = dec(k::kRegBprimeB), Cc = dec(k::kRegBprimeC);
    double bp = interval_ceiling([&](const Interval& x) { return A * sqr(log(x) + B) + Cc - x; }, 1.0, 1e6);
    r.bprime_max = std::ceil(bp * 100 - 1e-9) / 100;
    r.s_coeff = std::ceil((r.bprime_max - 0.018) / 2 * 1000 - 1e-9) / 1000;
    r.log_coeff = std::round(28 * r.s_coeff * 1000) / 1000;
    // the table itself needs the unrounded b' ceiling; 675.668 admits one more s for gcd 8
    r.s_ceiling = self_log_ceiling(regular_log_coeff(ctx), g, 3, ctx);
    return r;
}

RegularRBounds regular_r_bounds(double h_coeff, const RealCtx& ctx) {
    PrecisionScope ps(ctx);
    Interval K(h_coeff);
    auto m = [&](const Interval& X) {
        return K * log(sqrt(Interval(16) * X + Interval(4))) * log(Interval(16) * X / Interval(308)) - X;
    };
    RegularRBounds r{};
    r.X_max = interval_ceiling(m, 1e3, 1e40);
    Interval X(r.X_max);
    r.r_max = last_true_int(
        [&](long x) {
            Interval R(x);
            return !certainly_ge(Interval(3) * R * (R - Interval(8)) / Interval(16), X);
        },
        9, 1L << 40);
    Interval R(r.r_max + 1);
    r.h_max = (K * log(Interval(2) * R) * log(R * R - Interval(3) + Interval(2) * R)).hi_d();
    return r;
}

long regular_r_max_for_a(long a, double X_max) {
    if (a < 1) throw InputError("a must be positive");
    auto holds = [&](long r) {
        long double R = r, A = a;
        return (A + (R * R - 4) / A + 2 * R) * (R - 8) / 16 < static_cast<long double>(X_max);
    };
    return last_true_int(holds, 9, 1L << 32);
}

}  // namespace d4

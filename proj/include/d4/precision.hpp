#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>
#include <vector>

#include "d4/errors.hpp"

namespace d4 {

enum class Rounding { nearest, up, down };

struct RealCtx {
    int digits = 120;
    Rounding rounding = Rounding::nearest;

    static constexpr int kDefaultDigits = 120;
    static constexpr int kMinDigits = 30;

    RealCtx() = default;
    explicit RealCtx(int d, Rounding r = Rounding::nearest);

    // Working precision in bits, with guard bits on top of `digits`.
    mpfr_prec_t bits() const;
    RealCtx with_digits(int d) const { return RealCtx(d, rounding); }

    // D4_DIGITS if set and valid, otherwise the default.
    static RealCtx from_env();
};

// Sets the thread-local working precision for the lifetime of the object.
class PrecisionScope {
public:
    explicit PrecisionScope(const RealCtx& ctx);
    explicit PrecisionScope(mpfr_prec_t bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    mpfr_prec_t saved_;
};

mpfr_prec_t working_bits();

// Owning mpfr value at the working precision current when it was created.
class Real {
public:
    Real();
    Real(long v);  // NOLINT: integers convert exactly
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real with_prec(mpfr_prec_t bits);
    static Real from_double(double v, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real from_mpz(const mpz_class& z, mpfr_rnd_t rnd);
    static Real from_string(const std::string& s, mpfr_rnd_t rnd);

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
    std::string str(int digits = 20, mpfr_rnd_t rnd = MPFR_RNDN) const;
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

private:
    mpfr_t v_;
};

// Closed enclosure [lo, hi]; every operation rounds outward.
class Interval {
public:
    Interval();
    Interval(int v) : Interval(static_cast<long>(v)) {}  // NOLINT: exact
    Interval(long v);    // NOLINT: exact
    Interval(double v);  // NOLINT: exact (doubles are dyadic)
    Interval(Real lo, Real hi);

    // Encloses the decimal literal `s` (e.g. "0.666662").
    static Interval decimal(const std::string& s);
    static Interval exact(const mpz_class& z);
    static Interval rational(const mpq_class& q);
    static Interval pi();

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    Real mid() const;
    Real width() const;
    double lo_d() const { return lo_.to_double(MPFR_RNDD); }
    double hi_d() const { return hi_.to_double(MPFR_RNDU); }
    double mid_d() const;
    bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool is_point() const { return lo_ == hi_; }

    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);

    friend Interval operator+(Interval a, const Interval& b) { return a += b; }
    friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
    friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
    friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
    Interval operator-() const;

private:
    Real lo_, hi_;
};

Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval sqrt(const Interval& x);
Interval cbrt(const Interval& x);
Interval pow(const Interval& x, const Interval& y);  // x > 0
Interval sqr(const Interval& x);
Interval abs(const Interval& x);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

// Certain comparisons: true only when the relation holds for every pair of points.
bool certainly_lt(const Interval& a, const Interval& b);
bool certainly_le(const Interval& a, const Interval& b);
bool certainly_gt(const Interval& a, const Interval& b);
bool certainly_ge(const Interval& a, const Interval& b);

// floor(x) when it is the same integer across the enclosure, else PrecisionError.
mpz_class certain_floor(const Interval& x);
// The nearest integer to every point of x, else PrecisionError.
mpz_class certain_round(const Interval& x);

// Enclosure of the distance from x to the nearest integer.
Interval nearest_int_distance(const Interval& x);

// The endpoint selected by the context's rounding mode (mid for nearest).
Real select(const Interval& x, Rounding r);

// (p + q*sqrt(D)) / m, kept exact.
struct Surd {
    mpz_class p{0}, q{0}, D{0}, m{1};

    Surd() = default;
    Surd(mpz_class p_, mpz_class q_, mpz_class D_, mpz_class m_);
    static Surd integer(const mpz_class& n) { return Surd(n, 0, 0, 1); }
    static Surd rational(const mpq_class& r) { return Surd(r.get_num(), 0, 0, r.get_den()); }

    // Exact sign of the value.
    int sign() const;
    // Exact test for value == 1.
    bool is_one() const;
};

Interval eval(const Surd& x, const RealCtx& ctx);
Interval eval_log(const Surd& x, const RealCtx& ctx);
Interval eval_log(const mpq_class& x, const RealCtx& ctx);

std::string to_string(const Interval& x, int digits = 20);

}  // namespace d4

#include "d4/precision.hpp"

#include <cmath>
#include <cstdlib>
#include <memory>
#include <sstream>

namespace d4 {

namespace {

thread_local mpfr_prec_t g_bits = RealCtx().bits();

mpfr_prec_t digits_to_bits(int digits) {
    // log2(10) = 3.3219..., plus guard bits so the last digits are safe.
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 24;
}

}  // namespace

RealCtx::RealCtx(int d, Rounding r) : digits(d), rounding(r) {
    if (d < kMinDigits) throw InputError("precision below " + std::to_string(kMinDigits) + " digits");
}

mpfr_prec_t RealCtx::bits() const { return digits_to_bits(digits); }

RealCtx RealCtx::from_env() {
    const char* s = std::getenv("D4_DIGITS");
    if (s == nullptr || *s == '\0') return RealCtx();
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end != '\0' || v < kMinDigits || v > 100000) throw InputError(std::string("bad D4_DIGITS: ") + s);
    return RealCtx(static_cast<int>(v));
}

PrecisionScope::PrecisionScope(const RealCtx& ctx) : PrecisionScope(ctx.bits()) {}
PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(g_bits) { g_bits = bits; }
PrecisionScope::~PrecisionScope() { g_bits = saved_; }

mpfr_prec_t working_bits() { return g_bits; }

// ---- Real ----

Real::Real() {
    mpfr_init2(v_, g_bits);
    mpfr_set_zero(v_, 1);
}

Real Real::with_prec(mpfr_prec_t bits) {
    Real r;
    mpfr_set_prec(r.v_, bits);
    mpfr_set_zero(r.v_, 1);
    return r;
}

Real::Real(long v) : Real() {
    if (mpfr_set_si(v_, v, MPFR_RNDN) != 0) throw IntegrityError("inexact integer conversion");
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    // Steal the limbs; leave `o` as a valid minimal value.
    *v_ = *o.v_;
    mpfr_init2(o.v_, MPFR_PREC_MIN);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) std::swap(*v_, *o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_double(double v, mpfr_rnd_t rnd) {
    Real r;
    mpfr_set_d(r.v_, v, rnd);
    return r;
}

Real Real::from_mpz(const mpz_class& z, mpfr_rnd_t rnd) {
    Real r;
    mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
    return r;
}

Real Real::from_string(const std::string& s, mpfr_rnd_t rnd) {
    Real r;
    char* end = nullptr;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, rnd);
    if (s.empty() || end != s.c_str() + s.size() || !mpfr_number_p(r.v_))
        throw InputError("not a number: " + s);
    return r;
}

double Real::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

std::string Real::str(int digits, mpfr_rnd_t rnd) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, ("%." + std::to_string(digits) + "R*g").c_str(), rnd, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

// ---- Interval ----

namespace {

using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

Real apply(BinOp op, const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    op(r.get(), a.get(), b.get(), rnd);
    return r;
}

using UnOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Real apply(UnOp op, const Real& a, mpfr_rnd_t rnd) {
    Real r;
    op(r.get(), a.get(), rnd);
    return r;
}

const Real& rmin(const Real& a, const Real& b) { return b < a ? b : a; }
const Real& rmax(const Real& a, const Real& b) { return a < b ? b : a; }

Interval monotone_up(UnOp op, const Interval& x) {
    if (x.is_point()) {
        // One call: the true value lies in [down, next representable above].
        Real d;
        int inexact = op(d.get(), x.lo().get(), MPFR_RNDD);
        Real u = d;
        if (inexact != 0) mpfr_nextabove(u.get());
        return Interval(std::move(d), std::move(u));
    }
    return Interval(apply(op, x.lo(), MPFR_RNDD), apply(op, x.hi(), MPFR_RNDU));
}

}  // namespace

Interval::Interval() : lo_(0L), hi_(0L) {}

Interval::Interval(long v) : lo_(v), hi_(v) {}

Interval::Interval(double v) : lo_(Real::from_double(v, MPFR_RNDD)), hi_(Real::from_double(v, MPFR_RNDU)) {
    if (!std::isfinite(v)) throw DomainError("non-finite value");
}

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!lo_.is_finite() || !hi_.is_finite()) throw DomainError("non-finite enclosure");
    if (hi_ < lo_) throw IntegrityError("inverted enclosure");
}

Interval Interval::decimal(const std::string& s) {
    return Interval(Real::from_string(s, MPFR_RNDD), Real::from_string(s, MPFR_RNDU));
}

Interval Interval::exact(const mpz_class& z) {
    return Interval(Real::from_mpz(z, MPFR_RNDD), Real::from_mpz(z, MPFR_RNDU));
}

Interval Interval::rational(const mpq_class& q) {
    Real lo, hi;
    mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Interval Interval::pi() {
    Real lo, hi;
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return Interval(std::move(lo), std::move(hi));
}

Real Interval::mid() const {
    Real r = apply(mpfr_add, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
    return r;
}

Real Interval::width() const { return apply(mpfr_sub, hi_, lo_, MPFR_RNDU); }

double Interval::mid_d() const { return mid().to_double(); }

Interval& Interval::operator+=(const Interval& o) {
    Real lo = apply(mpfr_add, lo_, o.lo_, MPFR_RNDD);
    Real hi = apply(mpfr_add, hi_, o.hi_, MPFR_RNDU);
    lo_ = std::move(lo);
    hi_ = std::move(hi);
    return *this;
}

Interval& Interval::operator-=(const Interval& o) {
    Real lo = apply(mpfr_sub, lo_, o.hi_, MPFR_RNDD);
    Real hi = apply(mpfr_sub, hi_, o.lo_, MPFR_RNDU);
    lo_ = std::move(lo);
    hi_ = std::move(hi);
    return *this;
}

Interval& Interval::operator*=(const Interval& o) {
    if (lo_.sign() >= 0 && o.lo_.sign() >= 0) {
        Real lo = apply(mpfr_mul, lo_, o.lo_, MPFR_RNDD);
        hi_ = apply(mpfr_mul, hi_, o.hi_, MPFR_RNDU);
        lo_ = std::move(lo);
        return *this;
    }
    const Real* a[2] = {&lo_, &hi_};
    const Real* b[2] = {&o.lo_, &o.hi_};
    Real lo, hi;
    bool first = true;
    for (auto* x : a) {
        for (auto* y : b) {
            Real d = apply(mpfr_mul, *x, *y, MPFR_RNDD);
            Real u = apply(mpfr_mul, *x, *y, MPFR_RNDU);
            if (first || d < lo) lo = std::move(d);
            if (first || hi < u) hi = std::move(u);
            first = false;
        }
    }
    lo_ = std::move(lo);
    hi_ = std::move(hi);
    return *this;
}

Interval& Interval::operator/=(const Interval& o) {
    if (o.contains_zero()) throw DomainError("division by an enclosure containing zero");
    if (lo_.sign() >= 0 && o.lo_.sign() > 0) {
        Real lo = apply(mpfr_div, lo_, o.hi_, MPFR_RNDD);
        hi_ = apply(mpfr_div, hi_, o.lo_, MPFR_RNDU);
        lo_ = std::move(lo);
        return *this;
    }
    const Real* a[2] = {&lo_, &hi_};
    const Real* b[2] = {&o.lo_, &o.hi_};
    Real lo, hi;
    bool first = true;
    for (auto* x : a) {
        for (auto* y : b) {
            Real d = apply(mpfr_div, *x, *y, MPFR_RNDD);
            Real u = apply(mpfr_div, *x, *y, MPFR_RNDU);
            if (first || d < lo) lo = std::move(d);
            if (first || hi < u) hi = std::move(u);
            first = false;
        }
    }
    lo_ = std::move(lo);
    hi_ = std::move(hi);
    return *this;
}

Interval Interval::operator-() const {
    return Interval(apply(mpfr_neg, hi_, MPFR_RNDD), apply(mpfr_neg, lo_, MPFR_RNDU));
}

Interval log(const Interval& x) {
    if (x.lo().sign() <= 0) throw DomainError("log of a nonpositive value");
    if (x.is_point()) return monotone_up(mpfr_log, x);
    // log(hi) <= log(lo) + (hi - lo)/lo saves the second log on narrow enclosures
    Real d;
    int inexact = mpfr_log(d.get(), x.lo().get(), MPFR_RNDD);
    Real u = d;
    if (inexact != 0) mpfr_nextabove(u.get());
    Real w = apply(mpfr_sub, x.hi(), x.lo(), MPFR_RNDU);
    mpfr_div(w.get(), w.get(), x.lo().get(), MPFR_RNDU);
    mpfr_add(u.get(), u.get(), w.get(), MPFR_RNDU);
    return Interval(std::move(d), std::move(u));
}

Interval exp(const Interval& x) { return monotone_up(mpfr_exp, x); }

Interval sqrt(const Interval& x) {
    if (x.lo().sign() < 0) throw DomainError("sqrt of a negative value");
    return monotone_up(mpfr_sqrt, x);
}

Interval cbrt(const Interval& x) { return monotone_up(mpfr_cbrt, x); }

Interval pow(const Interval& x, const Interval& y) {
    if (x.lo().sign() <= 0) throw DomainError("pow with nonpositive base");
    return exp(y * log(x));
}

Interval sqr(const Interval& x) { return abs(x) * abs(x); }

Interval abs(const Interval& x) {
    if (x.lo().sign() >= 0) return x;
    if (x.hi().sign() <= 0) return -x;
    Real m = rmax(apply(mpfr_neg, x.lo(), MPFR_RNDU), x.hi());
    return Interval(Real(0L), std::move(m));
}

Interval max(const Interval& a, const Interval& b) {
    return Interval(rmax(a.lo(), b.lo()), rmax(a.hi(), b.hi()));
}

Interval min(const Interval& a, const Interval& b) {
    return Interval(rmin(a.lo(), b.lo()), rmin(a.hi(), b.hi()));
}

Interval hull(const Interval& a, const Interval& b) {
    return Interval(rmin(a.lo(), b.lo()), rmax(a.hi(), b.hi()));
}

bool certainly_lt(const Interval& a, const Interval& b) { return a.hi() < b.lo(); }
bool certainly_le(const Interval& a, const Interval& b) { return a.hi() <= b.lo(); }
bool certainly_gt(const Interval& a, const Interval& b) { return b.hi() < a.lo(); }
bool certainly_ge(const Interval& a, const Interval& b) { return b.hi() <= a.lo(); }

namespace {

mpz_class floor_of(const Real& x) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDD);
    return z;
}

}  // namespace

mpz_class certain_floor(const Interval& x) {
    mpz_class a = floor_of(x.lo()), b = floor_of(x.hi());
    if (a != b) throw PrecisionError("floor undetermined at this precision");
    return a;
}

mpz_class certain_round(const Interval& x) {
    // round(x) = floor(x + 1/2); both ends must agree and no end may sit on a half.
    Interval shifted = x + Interval(0.5);
    mpz_class a = floor_of(shifted.lo()), b = floor_of(shifted.hi());
    if (a != b) throw PrecisionError("nearest integer undetermined at this precision");
    return a;
}

Interval nearest_int_distance(const Interval& x) {
    if (!(x.width() < Real::from_double(0.25))) throw PrecisionError("enclosure too wide for nearest-integer distance");
    mpz_class k = certain_round(x);
    Interval d = x - Interval::exact(k);
    Interval r = abs(d);
    // |x - k| <= 1/2 by construction; clamp rounding spill.
    Real half = Real::from_double(0.5);
    if (half < r.hi()) r = Interval(r.lo() < half ? r.lo() : half, half);
    return r;
}

Real select(const Interval& x, Rounding r) {
    switch (r) {
        case Rounding::up: return x.hi();
        case Rounding::down: return x.lo();
        case Rounding::nearest: break;
    }
    return x.mid();
}

// ---- Surd ----

Surd::Surd(mpz_class p_, mpz_class q_, mpz_class D_, mpz_class m_)
    : p(std::move(p_)), q(std::move(q_)), D(std::move(D_)), m(std::move(m_)) {
    if (D < 0) throw InputError("surd radicand must be nonnegative");
    if (m == 0) throw InputError("surd denominator must be nonzero");
    if (m < 0) {
        p = -p;
        q = -q;
        m = -m;
    }
}

int Surd::sign() const {
    // sign of p + q*sqrt(D)
    if (q == 0 || D == 0) return sgn(p);
    int sp = sgn(p), sq = sgn(q);
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // opposite signs: compare p^2 with q^2 D
    mpz_class lhs = p * p, rhs = q * q * D;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sp : sq;
}

bool Surd::is_one() const {
    Surd shifted(p - m, q, D, m);
    return shifted.sign() == 0;
}

Interval eval(const Surd& x, const RealCtx& ctx) {
    PrecisionScope scope(ctx);
    Interval root = sqrt(Interval::exact(x.D));
    return (Interval::exact(x.p) + Interval::exact(x.q) * root) / Interval::exact(x.m);
}

Interval eval_log(const Surd& x, const RealCtx& ctx) {
    if (x.sign() <= 0) throw DomainError("log of a nonpositive surd");
    if (x.is_one()) {
        PrecisionScope scope(ctx);
        return Interval(0L);
    }
    PrecisionScope scope(ctx);
    return log(eval(x, ctx));
}

Interval eval_log(const mpq_class& x, const RealCtx& ctx) {
    return eval_log(Surd::rational(x), ctx);
}

std::string to_string(const Interval& x, int digits) {
    return "[" + x.lo().str(digits, MPFR_RNDD) + ", " + x.hi().str(digits, MPFR_RNDU) + "]";
}

}  // namespace d4

#include "d4/reduction.hpp"

#include <memory>
#include <mutex>

#include "d4/errors.hpp"

namespace d4 {

namespace {

void push_convergent(ContinuedFraction& cf, const Int& a) {
    cf.quotients.push_back(a);
    const size_t n = cf.convergents.size();
    Int p, q;
    if (n == 0) {
        p = a;
        q = 1;
    } else if (n == 1) {
        p = a * cf.convergents[0].p + 1;
        q = a;
    } else {
        p = a * cf.convergents[n - 1].p + cf.convergents[n - 2].p;
        q = a * cf.convergents[n - 1].q + cf.convergents[n - 2].q;
    }
    cf.convergents.push_back({p, q});
}

}  // namespace

namespace {

mpq_class exact_value(const Real& x) {
    if (x.is_zero()) return 0;
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.get());
    mpq_class q(m);
    if (e >= 0) mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return q;
}

}  // namespace

// Runs Euclid on both endpoints at once; a partial quotient is certain when both agree,
// since the reals sharing a continued-fraction prefix form an interval.
ContinuedFraction continued_fraction(const Interval& x, const Int& q_target, size_t extra) {
    mpq_class lo = exact_value(x.lo()), hi = exact_value(x.hi());
    Int n1 = lo.get_num(), d1 = lo.get_den(), n2 = hi.get_num(), d2 = hi.get_den();
    ContinuedFraction cf;
    size_t past = 0;
    Int a1, a2, r1, r2;
    while (true) {
        mpz_fdiv_qr(a1.get_mpz_t(), r1.get_mpz_t(), n1.get_mpz_t(), d1.get_mpz_t());
        mpz_fdiv_qr(a2.get_mpz_t(), r2.get_mpz_t(), n2.get_mpz_t(), d2.get_mpz_t());
        if (a1 != a2) throw PrecisionError("continued fraction: enclosure too wide for the next quotient");
        push_convergent(cf, a1);
        if (cf.convergents.back().q > q_target) {
            cf.reached = true;
            if (past++ >= extra) break;
        }
        if (r1 == 0 || r2 == 0) throw PrecisionError("continued fraction: enclosure reaches a rational");
        n1.swap(d1);
        d1.swap(r1);
        n2.swap(d2);
        d2.swap(r2);
    }
    return cf;
}

ContinuedFraction continued_fraction(const mpq_class& x, const Int& q_target) {
    ContinuedFraction cf;
    Int num = x.get_num(), den = x.get_den();
    while (den != 0) {
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        push_convergent(cf, a);
        if (cf.convergents.back().q > q_target) {
            cf.reached = true;
            break;
        }
        Int r = num - a * den;
        num = den;
        den = r;
    }
    return cf;
}

ReductionProblem ReductionProblem::constant(Interval kappa, Interval mu, Interval A, Interval B, Int M) {
    ReductionProblem p;
    p.kappa = [kappa](const RealCtx&) { return kappa; };
    p.mu = [mu](const RealCtx&) { return mu; };
    p.A = [A](const RealCtx&) { return A; };
    p.B = [B](const RealCtx&) { return B; };
    p.M = std::move(M);
    return p;
}

ReductionOutcome baker_davenport(const ReductionProblem& p, const RealCtx& ctx, ReductionPolicy policy) {
    if (p.M <= 0) throw InputError("reduction needs M >= 1");
    if (p.kappa_exact) throw InputError("kappa is rational; the reduction does not apply");
    ReductionOutcome out;
    RealCtx cur = ctx;
    const Int q_min = 6 * p.M;
    while (out.attempts < policy.max_attempts) {
        PrecisionScope scope(cur);
        out.digits = cur.digits;
        Interval kappa = p.kappa(cur), mu = p.mu(cur), A = p.A(cur), B = p.B(cur);
        if (!certainly_gt(A, Interval(0L)) || !certainly_gt(B, Interval(1L)))
            throw InputError("reduction needs A > 0 and B > 1");
        ContinuedFraction cf;
        try {
            cf = continued_fraction(kappa, q_min, static_cast<size_t>(policy.per_precision - 1));
        } catch (const PrecisionError&) {
            // Keep whatever convergents were determined; retry deeper ones at higher precision.
        }
        int tried_here = 0;
        for (const auto& c : cf.convergents) {
            if (c.q <= q_min) continue;
            if (tried_here >= policy.per_precision || out.attempts >= policy.max_attempts) break;
            ++tried_here;
            ++out.attempts;
            Interval qi = Interval::exact(c.q);
            Interval eta;
            try {
                eta = nearest_int_distance(mu * qi) - Interval::exact(p.M) * nearest_int_distance(kappa * qi);
            } catch (const PrecisionError&) {
                break;
            }
            out.convergent = c;
            out.eta = eta;
            if (eta.lo().sign() <= 0) continue;
            // J_max = floor(log(A q / eta) / log B), with the adversarial ends.
            Interval x = log(A * qi / eta) / log(B);
            Int j = certain_floor(Interval(x.hi(), x.hi()));
            if (j < 0) j = 0;
            out.status = ReductionStatus::Reduced;
            out.J_max = j.get_si();
            return out;
        }
        if (tried_here == 0) ++out.attempts;  // precision exhausted before any usable convergent
        cur = cur.with_digits(cur.digits * 2);
    }
    out.status = ReductionStatus::Inconclusive;
    return out;
}

Interval log_alpha1(const D4Triple& t, const RealCtx& ctx) { return eval_log(Surd(t.r, 1, t.a * t.b, 2), ctx); }

Interval log_alpha2(const D4Triple& t, const RealCtx& ctx) { return eval_log(Surd(t.s, 1, t.a * t.c, 2), ctx); }

Interval log_alpha3(const D4Triple& t, const RealCtx& ctx) {
    // alpha3 = sqrt(c)(sqrt a + sqrt b) / (sqrt(b)(sqrt a + sqrt c)); square it to stay with surds.
    PrecisionScope scope(ctx);
    Interval lc = eval_log(mpq_class(t.c, t.b), ctx);
    Interval lab = eval_log(Surd(t.a + t.b, 2, t.a * t.b, 1), ctx);
    Interval lac = eval_log(Surd(t.a + t.c, 2, t.a * t.c, 1), ctx);
    return (lc + lab - lac) / Interval(2L);
}

namespace {

// log alpha1, log alpha2, log alpha3 at the last precision asked for.
struct Lambda1Logs {
    std::mutex mu;
    int digits = 0;
    Interval l1, l2, l3;

    void at(const D4Triple& t, const RealCtx& ctx, Interval& o1, Interval& o2, Interval& o3) {
        std::lock_guard<std::mutex> g(mu);
        if (digits != ctx.digits) {
            PrecisionScope s(ctx);
            l1 = log_alpha1(t, ctx);
            l2 = log_alpha2(t, ctx);
            // alpha3^2 = (c/b)(a + b + 2 sqrt(ab)) / (a + c + 2 sqrt(ac)), one log instead of three
            Interval num = Interval::exact(t.c) * eval(Surd(t.a + t.b, 2, t.a * t.b, 1), ctx);
            Interval den = Interval::exact(t.b) * eval(Surd(t.a + t.c, 2, t.a * t.c, 1), ctx);
            l3 = log(num / den) / Interval(2L);
            digits = ctx.digits;
        }
        o1 = l1;
        o2 = l2;
        o3 = l3;
    }
};

}  // namespace

ReductionProblem lambda1_reduction_instance(const D4Triple& t, const Int& M) {
    ReductionProblem p;
    auto logs = std::make_shared<Lambda1Logs>();
    p.kappa = [t, logs](const RealCtx& ctx) {
        Interval l1, l2, l3;
        logs->at(t, ctx, l1, l2, l3);
        PrecisionScope s(ctx);
        return l1 / l2;
    };
    p.mu = [t, logs](const RealCtx& ctx) {
        Interval l1, l2, l3;
        logs->at(t, ctx, l1, l2, l3);
        PrecisionScope s(ctx);
        return l3 / l2;
    };
    p.A = [t, logs](const RealCtx& ctx) {
        Interval l1, l2, l3;
        logs->at(t, ctx, l1, l2, l3);
        PrecisionScope s(ctx);
        return Interval(1L) / l2;
    };
    p.B = [t, logs](const RealCtx& ctx) {
        Interval l1, l2, l3;
        logs->at(t, ctx, l1, l2, l3);
        PrecisionScope s(ctx);
        return exp(Interval(2L) * l1);
    };
    p.M = M;
    p.derivation =
        "Lambda1 = 2h log a1 - 2j log a2 + log a3 with 0 < Lambda1 < a2^(-4j). Dividing by log a2: "
        "0 < J kappa - K + mu < a2^(-4j)/log a2 with J=2h, K=2j, kappa=log a1/log a2, mu=log a3/log a2. "
        "Lambda1 < log a3 forces 2j log a2 > 2h log a1, so a2^(-4j) < a1^(-4h) = B^(-J) with B=a1^2, A=1/log a2.";
    return p;
}

}  // namespace d4

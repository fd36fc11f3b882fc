#pragma once

#include <random>

#include "d4/precision.hpp"
#include "d4/reduction.hpp"

namespace d4::testing {

struct SmallInstance {
    ReductionProblem problem;
    Interval kappa, mu, A, B;
    long planted_J = -1;  // a J known to solve the inequality, or -1
};

// kappa = log p / log q, mu = log s / log q; A in [1, 50], B in [2, 12]. When `plant` is set,
// mu is moved so that J0 solves 0 < J kappa - K + mu < A B^{-J}.
inline SmallInstance small_instance(std::mt19937_64& rng, long M, bool plant, const RealCtx& ctx) {
    PrecisionScope ps(ctx);
    // distinct primes keep kappa irrational
    static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    std::uniform_int_distribution<int> prime_pick(0, 24);
    std::uniform_int_distribution<long> aa(1, 50), bb(2, 12);
    long p, q;
    do {
        p = primes[prime_pick(rng)];
        q = primes[prime_pick(rng)];
    } while (p == q);
    long s = primes[prime_pick(rng)];
    SmallInstance out;
    out.kappa = log(Interval(p)) / log(Interval(q));
    out.mu = log(Interval(s)) / log(Interval(q));
    out.A = Interval(aa(rng));
    out.B = Interval(bb(rng));
    if (plant) {
        std::uniform_int_distribution<long> jpick(1, std::min<long>(M, 6));
        long J0 = jpick(rng);
        Interval x = Interval(J0) * out.kappa;
        Int K0 = certain_floor(x) + 1;
        // J0 kappa - K0 + mu = A B^{-J0} / 3
        Interval target = out.A / pow(out.B, Interval(J0)) / Interval(3L);
        out.mu = Interval::exact(K0) - x + target;
        out.planted_J = J0;
    }
    out.problem = ReductionProblem::constant(out.kappa, out.mu, out.A, out.B, Int(M));
    return out;
}

// Largest J in [1, M] that solves the inequality for some K, by direct scan; 0 when none.
// Returns -1 when the enclosures are too wide to decide some J.
inline long largest_solution(const SmallInstance& in, long M, const RealCtx& ctx) {
    PrecisionScope ps(ctx);
    long best = 0;
    for (long J = 1; J <= M; ++J) {
        Interval v = Interval(J) * in.kappa + in.mu;
        Interval frac = v - Interval::exact(certain_floor(v));
        Interval bound = in.A / pow(in.B, Interval(J));
        if (certainly_lt(frac, bound) && frac.lo().sign() > 0) best = J;
        else if (!certainly_ge(frac, bound) && !(frac.hi().sign() <= 0)) return -1;
    }
    return best;
}

}  // namespace d4::testing

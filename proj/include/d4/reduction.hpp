#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "d4/bigint.hpp"
#include "d4/precision.hpp"
#include "d4/tuples.hpp"

namespace d4 {

struct Convergent {
    Int p, q;
};

struct ContinuedFraction {
    std::vector<Int> quotients;
    std::vector<Convergent> convergents;
    bool reached = false;  // some q exceeded the target
};

// Convergents of an enclosed real until q > q_target, plus `extra` more.
// Throws PrecisionError when the enclosure stops determining partial quotients first.
ContinuedFraction continued_fraction(const Interval& x, const Int& q_target, size_t extra = 0);
// Exact rational: terminates; `reached` tells whether q_target was passed.
ContinuedFraction continued_fraction(const mpq_class& x, const Int& q_target);

using Evaluator = std::function<Interval(const RealCtx&)>;

// 0 < J kappa - K + mu < A B^{-J}, J <= M.
struct ReductionProblem {
    Evaluator kappa, mu, A, B;
    Int M;
    std::optional<mpq_class> kappa_exact;  // set when kappa is known rational (rejected)
    std::string derivation;

    static ReductionProblem constant(Interval kappa, Interval mu, Interval A, Interval B, Int M);
};

enum class ReductionStatus { Reduced, Inconclusive };

struct ReductionOutcome {
    ReductionStatus status = ReductionStatus::Inconclusive;
    long J_max = -1;
    int attempts = 0;
    int digits = 0;
    std::optional<Convergent> convergent;
    std::optional<Interval> eta;
    bool reduced() const { return status == ReductionStatus::Reduced; }
};

struct ReductionPolicy {
    int per_precision = 10;  // convergents past 6M before doubling digits
    int max_attempts = 20;
};

ReductionOutcome baker_davenport(const ReductionProblem& p, const RealCtx& ctx, ReductionPolicy policy = {});

// Standard form for Lambda1 with J = 2h, K = 2j.
ReductionProblem lambda1_reduction_instance(const D4Triple& t, const Int& M);

// log alpha1, log alpha2, log alpha3 of a triple.
Interval log_alpha1(const D4Triple& t, const RealCtx& ctx);
Interval log_alpha2(const D4Triple& t, const RealCtx& ctx);
Interval log_alpha3(const D4Triple& t, const RealCtx& ctx);

}  // namespace d4

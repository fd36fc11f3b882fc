#pragma once

#include <cstdint>
#include <vector>

#include "d4/bigint.hpp"
#include "d4/tuples.hpp"

namespace d4 {

// A V^2 - B U^2 = 4(A - B), with A B + 4 = R^2.
struct PellProblem {
    Int A, B, R;
    static PellProblem make(const Int& A, const Int& B);
};

struct PellSolution {
    Int U, V;
    friend bool operator==(const PellSolution& x, const PellSolution& y) { return x.U == y.U && x.V == y.V; }
};

enum class PellBox {
    Search,   // 0 <= U0 and 0 <= |V0|, used by the case searches
    Positive,  // 1 <= U0 and 1 <= |V0|
};

bool satisfies(const PellProblem& p, const PellSolution& s);

// Every solution inside the fundamental box, ordered by (U0, |V0|, sign) with negative sign first.
std::vector<PellSolution> fundamental_solutions(const PellProblem& p, PellBox box = PellBox::Search);

// One representative per orbit of the recurrence.
std::vector<PellSolution> orbit_representatives(const PellProblem& p, PellBox box = PellBox::Search);

// f followed by `count` successive solutions.
std::vector<PellSolution> walk(const PellProblem& p, const PellSolution& f, size_t count);

// f and its successors with 0 <= U <= u_max.
std::vector<PellSolution> walk_until(const PellProblem& p, const PellSolution& f, const Int& u_max);

// All d <= d_limit, d >= 1, extending t, found through the z-values of the two Pell equations.
std::vector<Int> extend_triple_by_pell(const D4Triple& t, const Int& d_limit);

// ---- machine-word fast path used by the searches ----

struct SmallSolution {
    uint64_t U;
    int64_t V;  // |V| fits when A V^2 stays within 128 bits
};

// Fundamental box scan for A, B, R fitting 64 bits; results as fundamental_solutions.
std::vector<SmallSolution> fundamental_solutions_u64(uint64_t A, uint64_t B, uint64_t R);

// Orbit representatives of the u64 scan (same rule as orbit_representatives).
std::vector<SmallSolution> orbit_representatives_u64(uint64_t A, uint64_t B, uint64_t R);

}  // namespace d4

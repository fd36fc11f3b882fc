#pragma once

#include <vector>

#include "d4/bigint.hpp"

namespace d4 {

struct D4Triple {
    Int a, b, c;
    Int r, s, t;  // r^2 = ab+4, s^2 = ac+4, t^2 = bc+4

    // Validates and sorts; throws InputError if not a D(4)-triple.
    static D4Triple make(const Int& x, const Int& y, const Int& z);
    std::vector<Int> elements() const { return {a, b, c}; }
};

struct D4Quadruple {
    D4Triple triple;
    Int d;
    Int x, y, z;  // x^2 = ad+4, y^2 = bd+4, z^2 = cd+4
};

struct DegreeResult {
    unsigned degree = 0;
    D4Triple generator;
    std::vector<Int> trail;  // d_{-1}, d_{-2}, ... (one per step)
};

// All pairwise products plus n are squares. Throws on duplicates or nonpositive entries.
bool verify_dn_tuple(std::vector<Int> elements, long n = 4);

Int d_plus(const D4Triple& t);
Int d_minus(const D4Triple& t);
// d+ of any three positive integers forming a D(4)-triple, in any order.
Int d_plus(const Int& a, const Int& b, const Int& c);

bool is_regular_triple(const D4Triple& t);
D4Triple apply_partial(const D4Triple& t);
DegreeResult degree(const D4Triple& t);
D4Quadruple quadruple_with_xyz(const D4Triple& t);

}  // namespace d4

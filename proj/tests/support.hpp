#pragma once

#include <random>

#include "d4/tuples.hpp"

namespace d4::testing {

// Random D(4)-triple with every element <= limit: a random pair {a, b} with ab + 4 = r^2, then
// c taken from the chain a + b - 2r, a + b + 2r, d+(a, b, .), ... of triples over that pair.
inline D4Triple random_triple(std::mt19937_64& rng, long limit) {
    std::uniform_int_distribution<long> pick_a(1, 1000);
    while (true) {
        long a = pick_a(rng);
        long r_hi = static_cast<long>(std::sqrt(static_cast<double>(a) * limit));
        if (r_hi < 3) continue;
        std::uniform_int_distribution<long> pick_r(3, r_hi);
        long r = pick_r(rng);
        if ((r * r - 4) % a != 0) continue;
        long b = (r * r - 4) / a;
        if (b == a || b > limit) continue;
        std::vector<Int> cs;
        if (a + b - 2 * r > 0) cs.emplace_back(a + b - 2 * r);
        Int c = a + b + 2 * r;
        for (int k = 0; k < 4 && c <= limit; ++k) {
            cs.push_back(c);
            c = d_plus(Int(a), Int(b), c);
        }
        std::vector<Int> ok;
        for (const Int& x : cs)
            if (x != a && x != b && x <= limit) ok.push_back(x);
        if (ok.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick_c(0, ok.size() - 1);
        return D4Triple::make(Int(a), Int(b), ok[pick_c(rng)]);
    }
}

}  // namespace d4::testing

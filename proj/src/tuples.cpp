#include "d4/tuples.hpp"

#include <algorithm>
#include <cmath>

#include "d4/errors.hpp"

namespace d4 {

namespace {

Int root_of(const Int& v, const char* what) {
    auto r = exact_sqrt(v);
    if (!r) throw InputError(std::string("not a D(4)-triple: ") + what + " is not a square");
    return *r;
}

// rst, asserted to be the exact square root of (ab+4)(ac+4)(bc+4); squaring is cheaper than a root.
Int rst_of(const D4Triple& t) {
    Int rst = t.r * t.s * t.t;
    if (rst * rst != (t.a * t.b + 4) * (t.a * t.c + 4) * (t.b * t.c + 4))
        throw IntegrityError("(ab+4)(ac+4)(bc+4) is not the square of rst");
    return rst;
}

}  // namespace

D4Triple D4Triple::make(const Int& x, const Int& y, const Int& z) {
    std::vector<Int> v{x, y, z};
    std::sort(v.begin(), v.end());
    if (v[0] <= 0) throw InputError("triple elements must be positive");
    if (v[0] == v[1] || v[1] == v[2]) throw InputError("triple elements must be distinct");
    D4Triple t;
    t.a = v[0];
    t.b = v[1];
    t.c = v[2];
    t.r = root_of(t.a * t.b + 4, "ab+4");
    t.s = root_of(t.a * t.c + 4, "ac+4");
    t.t = root_of(t.b * t.c + 4, "bc+4");
    return t;
}

bool verify_dn_tuple(std::vector<Int> elements, long n) {
    if (elements.empty()) throw InputError("empty tuple");
    std::sort(elements.begin(), elements.end());
    if (elements.front() <= 0) throw InputError("tuple elements must be positive");
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
        throw InputError("tuple elements must be distinct");
    for (size_t i = 0; i < elements.size(); ++i)
        for (size_t j = i + 1; j < elements.size(); ++j)
            if (!is_square(elements[i] * elements[j] + n)) return false;
    return true;
}

Int d_plus(const D4Triple& t) {
    Int twice = t.a * t.b * t.c + rst_of(t);
    if (twice % 2 != 0) throw IntegrityError("abc + rst is odd");
    return t.a + t.b + t.c + twice / 2;
}

Int d_minus(const D4Triple& t) {
    Int twice = t.a * t.b * t.c - rst_of(t);
    if (twice % 2 != 0) throw IntegrityError("abc - rst is odd");
    Int d = t.a + t.b + t.c + twice / 2;
    if (d < 0) throw IntegrityError("negative d_-");
    return d;
}

Int d_plus(const Int& a, const Int& b, const Int& c) { return d_plus(D4Triple::make(a, b, c)); }

bool is_regular_triple(const D4Triple& t) {
    bool reg = t.c == t.a + t.b + 2 * t.r;
    if (reg != (d_minus(t) == 0)) throw IntegrityError("regularity test disagrees with d_-");
    return reg;
}

D4Triple apply_partial(const D4Triple& t) {
    Int d = d_minus(t);
    if (d == 0) return t;
    return D4Triple::make(t.a, t.b, d);
}

DegreeResult degree(const D4Triple& t) {
    DegreeResult res;
    D4Triple cur = t;
    // D < log(abc)/log 5 bounds the loop.
    const double limit = std::log(mpz_get_d(Int(t.a * t.b * t.c).get_mpz_t())) / std::log(5.0) + 1;
    while (true) {
        Int d = d_minus(cur);
        if (d == 0) break;
        res.trail.push_back(d);
        cur = D4Triple::make(cur.a, cur.b, d);
        if (res.trail.size() > limit) throw IntegrityError("degree exceeds log(abc)/log 5");
    }
    res.degree = static_cast<unsigned>(res.trail.size());
    res.generator = cur;
    return res;
}

D4Quadruple quadruple_with_xyz(const D4Triple& t) {
    D4Quadruple q;
    q.triple = t;
    q.d = d_plus(t);
    Int x2 = t.a * t.t + t.r * t.s, y2 = t.b * t.s + t.r * t.t, z2 = t.c * t.r + t.s * t.t;
    if (x2 % 2 != 0 || y2 % 2 != 0 || z2 % 2 != 0) throw IntegrityError("odd x, y or z numerator");
    q.x = x2 / 2;
    q.y = y2 / 2;
    q.z = z2 / 2;
    if (q.x * q.x != t.a * q.d + 4 || q.y * q.y != t.b * q.d + 4 || q.z * q.z != t.c * q.d + 4)
        throw IntegrityError("x, y, z do not match d+");
    if (t.c == t.a + t.b + 2 * t.r) {
        if (q.d != t.r * t.s * t.t || q.x != t.r * t.s - 2 || q.y != t.r * t.t - 2 || q.z != t.s * t.t + 2)
            throw IntegrityError("regular-triple shortcut violated");
    }
    return q;
}

}  // namespace d4

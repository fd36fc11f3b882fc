#include "d4/pell.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "d4/errors.hpp"

namespace d4 {

namespace {

using u128 = unsigned __int128;

// Largest u >= 0 with u^2 * den <= num.
Int floor_sqrt_ratio(const Int& num, const Int& den) {
    if (num < 0) return -1;
    Int q = num / den;
    return isqrt(q);  // floor(sqrt(floor(n/d))) == floor(sqrt(n/d))
}

bool sol_less(const Int& u1, const Int& v1, const Int& u2, const Int& v2) {
    if (u1 != u2) return u1 < u2;
    Int a1 = abs(v1), a2 = abs(v2);
    if (a1 != a2) return a1 < a2;
    return v1 < v2;  // negative sign first
}

std::pair<Int, Int> step_once(const PellProblem& p, const Int& U0, const Int& V0) {
    Int nu = U0 * p.R + V0 * p.A;
    Int nv = V0 * p.R + U0 * p.B;
    if (nu % 2 != 0 || nv % 2 != 0)
        throw IntegrityError("parity violation: U0 R + V0 A is odd for A=" + p.A.get_str() + " B=" + p.B.get_str());
    return {nu / 2, nv / 2};
}

}  // namespace

PellProblem PellProblem::make(const Int& A, const Int& B) {
    if (A <= 0 || B <= 0) throw InputError("Pell coefficients must be positive");
    if (A >= B) throw InputError("Pell problem needs A < B");
    auto R = exact_sqrt(A * B + 4);
    if (!R) throw InputError("AB + 4 is not a square");
    if (*R <= 2) throw DomainError("degenerate Pell problem (R = 2)");
    return PellProblem{A, B, *R};
}

bool satisfies(const PellProblem& p, const PellSolution& s) {
    return p.A * s.V * s.V - p.B * s.U * s.U == 4 * (p.A - p.B);
}

std::vector<PellSolution> fundamental_solutions(const PellProblem& p, PellBox box) {
    if (p.R <= 2) throw DomainError("degenerate Pell problem (R = 2)");
    const Int u_max = floor_sqrt_ratio(p.A * (p.B - p.A), p.R - 2);
    const Int v_max = floor_sqrt_ratio((p.R - 2) * (p.B - p.A), p.A);
    std::vector<PellSolution> out;
    for (Int U = (box == PellBox::Search ? 0 : 1); U <= u_max; ++U) {
        Int num = p.B * U * U + 4 * (p.A - p.B);
        if (num < 0 || num % p.A != 0) continue;
        auto V = exact_sqrt(num / p.A);
        // V0 = 0 occurs when 3B = 4A and starts an orbit of its own, so the search box keeps it.
        if (!V || *V > v_max || (*V == 0 && box != PellBox::Search)) continue;
        if (*V != 0) out.push_back({U, -*V});
        out.push_back({U, *V});
    }
    return out;
}

std::vector<PellSolution> walk(const PellProblem& p, const PellSolution& f, size_t count) {
    std::vector<PellSolution> out{f};
    if (count == 0) return out;
    auto [U1, V1] = step_once(p, f.U, f.V);
    out.push_back({U1, V1});
    while (out.size() < count + 1) {
        const auto& a = out[out.size() - 2];
        const auto& b = out[out.size() - 1];
        out.push_back({p.R * b.U - a.U, p.R * b.V - a.V});
    }
    return out;
}

std::vector<PellSolution> walk_until(const PellProblem& p, const PellSolution& f, const Int& u_max) {
    std::vector<PellSolution> out;
    Int pu = f.U, pv = f.V;
    if (pu >= 0 && pu <= u_max) out.push_back(f);
    auto [cu, cv] = step_once(p, pu, pv);
    // U is nondecreasing from the first step on; a few extra steps cover a leading dip.
    int non_growth = 0;
    while (true) {
        if (cu > u_max) break;
        if (cu >= 0) out.push_back({cu, cv});
        Int nu = p.R * cu - pu, nv = p.R * cv - pv;
        if (nu <= cu && ++non_growth > 64) throw IntegrityError("Pell walk does not grow");
        pu = std::move(cu);
        pv = std::move(cv);
        cu = std::move(nu);
        cv = std::move(nv);
    }
    return out;
}

std::vector<PellSolution> orbit_representatives(const PellProblem& p, PellBox box) {
    auto sols = fundamental_solutions(p, box);
    std::sort(sols.begin(), sols.end(),
              [](const PellSolution& x, const PellSolution& y) { return sol_less(x.U, x.V, y.U, y.V); });
    const size_t n = sols.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    Int u_box = 0;
    for (const auto& s : sols) u_box = std::max(u_box, s.U);
    for (size_t i = 0; i < n; ++i) {
        for (const auto& w : walk_until(p, sols[i], u_box)) {
            for (size_t j = 0; j < n; ++j) {
                if (j != i && sols[j] == w) {
                    size_t a = find(i), b = find(j);
                    if (a != b) parent[std::max(a, b)] = std::min(a, b);
                }
            }
        }
    }
    std::vector<PellSolution> reps;
    for (size_t i = 0; i < n; ++i)
        if (find(i) == i) reps.push_back(sols[i]);
    return reps;
}

std::vector<Int> extend_triple_by_pell(const D4Triple& t, const Int& d_limit) {
    if (d_limit < 1) throw InputError("d_limit must be at least 1");
    // a z^2 - c x^2 = 4(a - c) and b z^2 - c y^2 = 4(b - c): z is the V-value of both.
    auto z_values = [&](const Int& small, const Int& u_max) {
        PellProblem p = PellProblem::make(small, t.c);
        std::set<Int> zs;
        for (const auto& f : fundamental_solutions(p))
            for (const auto& s : walk_until(p, f, u_max)) zs.insert(abs(s.V));
        return zs;
    };
    auto z1 = z_values(t.a, isqrt(t.a * d_limit + 4));
    auto z2 = z_values(t.b, isqrt(t.b * d_limit + 4));
    std::vector<Int> out;
    for (const auto& z : z1) {
        if (!z2.count(z)) continue;
        Int num = z * z - 4;
        if (num <= 0 || num % t.c != 0) continue;
        Int d = num / t.c;
        if (d < 1 || d > d_limit) continue;
        if (is_square(t.a * d + 4) && is_square(t.b * d + 4)) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- u64 fast path ----

namespace {

struct ResidueWalk {
    // Tracks (B U^2 + k) mod m as U increments by one.
    uint32_t m, val, step, inc;
    ResidueWalk(uint32_t mod, uint64_t B, u128 start_num, uint64_t U0) : m(mod) {
        uint64_t b = B % m;
        val = static_cast<uint32_t>(start_num % m);
        step = static_cast<uint32_t>((b * ((2 * U0 + 1) % m)) % m);
        inc = static_cast<uint32_t>((2 * b) % m);
    }
    void advance() {
        val += step;
        if (val >= m) val -= m;
        step += inc;
        if (step >= m) step -= m;
    }
};

constexpr uint64_t kMask64 = 0x0202021202030213ULL;

template <uint32_t M>
struct QrTable {
    std::array<bool, M> is_qr{};
    QrTable() {
        for (uint32_t x = 0; x < M; ++x) is_qr[(x * x) % M] = true;
    }
};

const QrTable<63> kQr63;
const QrTable<65> kQr65;
const QrTable<11> kQr11;

}  // namespace

std::vector<SmallSolution> fundamental_solutions_u64(uint64_t A, uint64_t B, uint64_t R) {
    if (R <= 2) throw DomainError("degenerate Pell problem (R = 2)");
    if (A >= B) throw InputError("Pell problem needs A < B");
    if (static_cast<u128>(A) * B + 4 != static_cast<u128>(R) * R) throw InputError("AB + 4 is not R^2");
    const u128 lim_u = static_cast<u128>(A) * (B - A) / (R - 2);
    const uint64_t u_max = static_cast<uint64_t>(isqrt_u128(lim_u));
    const u128 v_max = isqrt_u128(static_cast<u128>(R - 2) * (B - A) / A);
    std::vector<SmallSolution> out;
    // num(U) = B U^2 - 4(B - A), tracked incrementally as a signed 128-bit value.
    __int128 num = -4 * static_cast<__int128>(B - A);
    __int128 step = B;  // B (2U + 1) at U = 0
    const __int128 inc = 2 * static_cast<__int128>(B);
    const u128 bias = static_cast<u128>(4) * (B - A);
    // Residue trackers see num + bias*(multiple of modulus) so they stay nonnegative.
    auto start = [&](uint32_t m) {
        u128 shift = (bias / m + 1) * m;
        return static_cast<u128>(num + static_cast<__int128>(shift));
    };
    ResidueWalk r63(63, B, start(63), 0), r65(65, B, start(65), 0), r11(11, B, start(11), 0);
    // num mod A when A > 1.
    uint64_t ra = 0, sa = 0, ia = 0;
    if (A > 1) {
        u128 shift = (bias / A + 1) * A;
        ra = static_cast<uint64_t>(static_cast<u128>(num + static_cast<__int128>(shift)) % A);
        sa = B % A;
        ia = static_cast<uint64_t>((static_cast<u128>(2) * (B % A)) % A);
    }
    for (uint64_t U = 0; U <= u_max; ++U) {
        if (num >= 0) {
            bool candidate;
            if (A == 1) {
                candidate = ((kMask64 >> (static_cast<uint64_t>(num) & 63)) & 1) && kQr63.is_qr[r63.val] &&
                            kQr65.is_qr[r65.val] && kQr11.is_qr[r11.val];
            } else {
                candidate = ra == 0;
            }
            if (candidate) {
                u128 v2 = static_cast<u128>(num) / A;
                if ((kMask64 >> (static_cast<uint64_t>(v2) & 63)) & 1) {
                    u128 v = isqrt_u128(v2);
                    if (v * v == v2 && v <= v_max) {
                        if (v > static_cast<u128>(INT64_MAX)) throw IntegrityError("V0 exceeds 63 bits");
                        if (v != 0) out.push_back({U, -static_cast<int64_t>(v)});
                        out.push_back({U, static_cast<int64_t>(v)});
                    }
                }
            }
        }
        num += step;
        step += inc;
        if (A == 1) {
            r63.advance();
            r65.advance();
            r11.advance();
        } else {
            ra += sa;
            if (ra >= A) ra -= A;
            sa += ia;
            if (sa >= A) sa -= A;
        }
    }
    return out;
}

std::vector<SmallSolution> orbit_representatives_u64(uint64_t A, uint64_t B, uint64_t R) {
    auto sols = fundamental_solutions_u64(A, B, R);
    const size_t n = sols.size();
    if (n <= 1) return sols;
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    __int128 u_box = 0;
    for (const auto& s : sols) u_box = std::max<__int128>(u_box, s.U);
    const __int128 a = A, b = B, r = R;
    for (size_t i = 0; i < n; ++i) {
        __int128 pu = sols[i].U, pv = sols[i].V;
        __int128 nu = pu * r + pv * a, nv = pv * r + pu * b;
        if ((nu & 1) || (nv & 1)) throw IntegrityError("parity violation in Pell walk");
        __int128 cu = nu / 2, cv = nv / 2;
        for (int guard = 0; cu <= u_box; ++guard) {
            if (guard > 256) throw IntegrityError("Pell walk does not grow");
            for (size_t j = 0; j < n; ++j) {
                if (j != i && sols[j].U == cu && sols[j].V == cv) {
                    size_t x = find(i), y = find(j);
                    if (x != y) parent[std::max(x, y)] = std::min(x, y);
                }
            }
            __int128 tu = r * cu - pu, tv = r * cv - pv;
            pu = cu;
            pv = cv;
            cu = tu;
            cv = tv;
        }
    }
    std::vector<SmallSolution> reps;
    for (size_t i = 0; i < n; ++i)
        if (find(i) == i) reps.push_back(sols[i]);
    return reps;
}

}  // namespace d4

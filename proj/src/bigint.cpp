#include "d4/bigint.hpp"

#include <cmath>

#include "d4/errors.hpp"

namespace d4 {

Int isqrt(const Int& n) {
    if (n < 0) throw DomainError("isqrt of a negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Int> exact_sqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (rem != 0) return std::nullopt;
    return r;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (r > UINT32_MAX || r * r > n)) --r;
    while (r + 1 <= UINT32_MAX && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

unsigned __int128 isqrt_u128(unsigned __int128 n) {
    if (n < (static_cast<unsigned __int128>(1) << 64)) return isqrt_u64(static_cast<uint64_t>(n));
    auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(n)));
    // Newton steps from the float estimate; converges in a couple of rounds.
    for (int i = 0; i < 4 && r > 0; ++i) r = (r + n / r) / 2;
    constexpr unsigned __int128 kTop = UINT64_MAX;  // sqrt of any u128 fits here
    if (r > kTop) r = kTop;
    while (r * r > n) --r;
    while (r < kTop && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square_u64(uint64_t n) {
    // Quadratic residues mod 64 reject most non-squares cheaply.
    constexpr uint64_t kMask = 0x0202021202030213ULL;
    if (((kMask >> (n & 63)) & 1) == 0) return false;
    uint64_t r = isqrt_u64(n);
    return r * r == n;
}

Int parse_int(const std::string& s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) throw InputError("expected an integer, got '" + s + "'");
    for (size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9')
            throw InputError("expected an exact decimal integer, got '" + s + "'");
    }
    return Int(s[0] == '+' ? s.substr(1) : s, 10);
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t comma = s.find(',', start);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(parse_int(s.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

bool fits_u64(const Int& z) { return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64; }

uint64_t to_u64(const Int& z) {
    if (!fits_u64(z)) throw InputError("integer does not fit 64 bits");
    uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof(v), 0, 0, z.get_mpz_t());
    return v;
}

Int from_u64(uint64_t v) {
    Int z;
    mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return z;
}

Int from_u128(unsigned __int128 v) {
    uint64_t parts[2] = {static_cast<uint64_t>(v), static_cast<uint64_t>(v >> 64)};
    Int z;
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(uint64_t), 0, 0, parts);
    return z;
}

std::string to_string(unsigned __int128 v) { return from_u128(v).get_str(); }

}  // namespace d4

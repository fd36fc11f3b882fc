#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace d4 {

using Int = mpz_class;

// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);
// sqrt(n) when n is a perfect square.
std::optional<Int> exact_sqrt(const Int& n);
bool is_square(const Int& n);

uint64_t isqrt_u64(uint64_t n);
unsigned __int128 isqrt_u128(unsigned __int128 n);
bool is_square_u64(uint64_t n);

// Strict decimal integer: optional sign, digits only. "2e13" and "1.0" are rejected.
Int parse_int(const std::string& s);
std::vector<Int> parse_int_list(const std::string& s);

bool fits_u64(const Int& z);
uint64_t to_u64(const Int& z);
Int from_u64(uint64_t v);
Int from_u128(unsigned __int128 v);
std::string to_string(unsigned __int128 v);

}  // namespace d4

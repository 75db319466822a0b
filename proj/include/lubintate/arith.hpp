#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace lubintate {

/// b^e, throwing TooLarge when the result does not fit in 63 bits.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

/// b^e mod m for m >= 1.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

bool is_prime(std::uint64_t n);

/// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Divisors in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

struct PrimePower {
  std::uint32_t p;
  unsigned k;
};

/// Decomposes q = p^k with p prime, k >= 1.
std::optional<PrimePower> as_prime_power(std::uint64_t q);

/// Floor division and non-negative remainder for a positive divisor.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}
inline std::int64_t pos_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

}  // namespace lubintate

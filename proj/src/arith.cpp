#include "lubintate/arith.hpp"

#include <limits>

#include "lubintate/errors.hpp"

namespace lubintate {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > (kLimit - 1) / base) throw Error(ErrorCode::TooLarge, "integer power overflows");
    r *= base;
  }
  return r;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  if (mod == 1) return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1U) result = (result * b) % mod;
    b = (b * b) % mod;
    exp >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::optional<PrimePower> as_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto factors = prime_factors(q);
  if (factors.size() != 1) return std::nullopt;
  PrimePower pp{static_cast<std::uint32_t>(factors[0]), 0};
  while (q > 1) {
    q /= factors[0];
    ++pp.k;
  }
  return pp;
}

}  // namespace lubintate

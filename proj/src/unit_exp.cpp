#include "lubintate/unit_exp.hpp"

#include <numeric>

#include "lubintate/arith.hpp"
#include "lubintate/errors.hpp"

namespace lubintate {

PExponent PExponent::make(std::int64_t num, std::int64_t den, std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "exponent prime must be prime");
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den % p == 0) throw Error(ErrorCode::DenominatorDivisibleByP, "denominator divisible by p");
  return PExponent{num, den, p};
}

PExponent PExponent::operator+(const PExponent& o) const {
  if (p != o.p) throw Error(ErrorCode::InvalidInput, "exponents for different primes");
  const __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
  const __int128 d = static_cast<__int128>(den) * o.den;
  // reduce through 128-bit gcd
  __int128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    const __int128 r = a % b;
    a = b;
    b = r;
  }
  const __int128 rn = n / a, rd = d / a;
  if (rn > INT64_MAX || rn < INT64_MIN || rd > INT64_MAX) throw Error(ErrorCode::TooLarge, "exponent sum overflows");
  return make(static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd), p);
}

std::vector<std::uint32_t> padic_digits(const PExponent& s, std::size_t count) {
  if (s.den % s.p == 0) throw Error(ErrorCode::DenominatorDivisibleByP, "denominator divisible by p");
  const std::int64_t p = s.p;
  const std::int64_t den_inv = static_cast<std::int64_t>(mod_pow(static_cast<std::uint64_t>(pos_mod(s.den, p)), static_cast<std::uint64_t>(p - 2), static_cast<std::uint64_t>(p)));
  std::vector<std::uint32_t> out;
  out.reserve(count);
  // a / den = d + p (a - d den) / (p den); the numerators stay bounded by max(|num|, den)
  __int128 a = s.num;
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t a_mod = pos_mod(static_cast<std::int64_t>(a % p), p);
    const std::int64_t d = a_mod * den_inv % p;
    out.push_back(static_cast<std::uint32_t>(d));
    a = (a - static_cast<__int128>(d) * s.den) / p;
  }
  return out;
}

TSeries one_unit_pow(const TSeries& f, const PExponent& s, std::int64_t n) {
  const auto& k = *f.field();
  if (s.p != k.characteristic()) throw Error(ErrorCode::InvalidInput, "exponent prime differs from the characteristic");
  if (f.is_zero() || f.val() != 0 || f.coeffs()[0] != 1) throw Error(ErrorCode::NotAOneUnit, "series is not a 1-unit");
  const std::int64_t prec = std::min(n, f.prec());
  std::size_t count = 0;
  for (std::int64_t pi = 1; pi < prec; pi *= s.p) ++count;
  const auto digits = padic_digits(s, count);
  TSeries result = TSeries::one(f.field(), prec);
  const TSeries base = f.with_precision(prec);
  std::uint64_t pi = 1;
  for (std::size_t i = 0; i < count; ++i, pi *= s.p) {
    if (digits[i] == 0) continue;
    // f^(p^i) by the characteristic-p power law
    const TSeries fp = pi == 1 ? base : frobenius_subst(base, pi, 1).with_precision(prec);
    result = (result * fp.pow(digits[i], prec)).with_precision(prec);
  }
  return result;
}

}  // namespace lubintate

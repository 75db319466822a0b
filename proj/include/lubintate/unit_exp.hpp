#pragma once

#include <cstdint>
#include <vector>

#include "lubintate/series.hpp"

namespace lubintate {

/// p-integral rational num/den in lowest terms with den > 0 and p not
/// dividing den.
struct PExponent {
  std::int64_t num = 0;
  std::int64_t den = 1;
  std::uint32_t p = 2;

  static PExponent make(std::int64_t num, std::int64_t den, std::uint32_t p);
  static PExponent integer(std::int64_t v, std::uint32_t p) { return make(v, 1, p); }
  PExponent operator+(const PExponent& o) const;
  bool operator==(const PExponent& o) const = default;
};

/// Base-p digits d_0..d_{count-1} with num = den * sum d_i p^i mod p^count.
std::vector<std::uint32_t> padic_digits(const PExponent& s, std::size_t count);

/// f^s for a 1-unit f over a field of characteristic p, as the product of
/// (f^(p^i))^(d_i) over p^i < N. Precision min(N, prec_f).
TSeries one_unit_pow(const TSeries& f, const PExponent& s, std::int64_t n);

}  // namespace lubintate

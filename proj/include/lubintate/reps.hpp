#pragma once

#include <cstdint>
#include <vector>

#include "lubintate/ffield.hpp"

namespace lubintate {

/// True iff no d < n with d | n has (q^n - 1)/(q^d - 1) dividing h.
/// Throws OutOfRange unless 1 <= h <= q^n - 2.
bool is_q_primitive(std::int64_t h, std::uint64_t q, unsigned n);

/// Same answer through the orbit size; used to cross-check the divisor test.
bool is_q_primitive_by_orbit(std::int64_t h, std::uint64_t q, unsigned n);

/// {h q^j mod (q^n - 1) : 0 <= j < n}, sorted and deduplicated.
std::vector<std::uint64_t> orbit(std::int64_t h, std::uint64_t q, unsigned n);

/// Reduced label of ind(omega^h) (x) omega_f^s: the exponent
/// H = h + s (q^n-1)/(q-1) is moved to the minimum of its orbit and split
/// as h + s (q^n-1)/(q-1) with 0 <= h < (q^n-1)/(q-1) and 1 <= s <= q-1.
/// For n = 1 the whole character sits in h and s = q - 1.
struct CanonicalLabel {
  std::uint64_t h = 0;
  std::uint64_t s = 0;
  bool operator==(const CanonicalLabel&) const = default;
};
CanonicalLabel canonical_label(std::int64_t h, std::int64_t s, std::uint64_t q, unsigned n);

/// Isomorphism class of ind(omega_{nf}^h) (x) omega_f^s (x) mu_lambda.
struct RepClass {
  std::uint64_t q = 0;
  unsigned n = 0;
  std::int64_t h = 0;
  std::int64_t s = 0;
  FFElem lambda;
  FFElem lambda_pow_n;
  /// Degree over F_p of the coefficient field that must contain lambda^n.
  unsigned k_degree = 0;

  /// Validates primitivity, 1 <= s <= q-1, lambda != 0 and lambda^n in
  /// F_{p^k_degree}. k_degree = 0 means the residue field F_q.
  static RepClass make(std::uint64_t q, unsigned n, std::int64_t h, std::int64_t s, const FFElem& lambda,
                       unsigned k_degree = 0);
  CanonicalLabel label() const { return canonical_label(h, s, q, n); }
};

/// Same orbit of the folded exponent and equal lambda^n.
bool is_isomorphic(const RepClass& a, const RepClass& b);

struct OrbitClass {
  std::vector<std::uint64_t> orbit;
  std::uint64_t h_min = 0;
};

/// Orbits of q-primitive exponents in [1, q^n - 2], ordered by minimum.
/// Throws TooLarge when q^n > 2^20.
std::vector<OrbitClass> enumerate_classes(std::uint64_t q, unsigned n);

}  // namespace lubintate

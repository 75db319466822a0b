#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lubintate/padic.hpp"
#include "lubintate/series.hpp"

namespace lubintate {

/// Frobenius power series phi(t) = sum_k coeffs[k] t^k, a polynomial with
/// phi = pi t mod t^2 and phi = t^q mod pi.
struct FrobeniusSeries {
  LocalFieldPtr field;
  std::vector<PiadicInteger> coeffs;

  /// pi t + t^q at the field's full storage precision.
  static FrobeniusSeries standard(LocalFieldPtr field);
  /// Checks both Lubin-Tate conditions; throws InvalidInput otherwise.
  void validate() const;
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  /// Smallest coefficient precision.
  int precision() const;
};

/// Working p-adic precision for a target t-precision N: ceil(log_q N) + 8.
int working_precision(std::uint64_t q, std::int64_t n);

/// Coefficients c_0 = 0, c_1 = a, ..., c_{N-1} of [a](t) mod t^N, each
/// tagged with the precision that the recursion guarantees. Starts at the
/// working precision and doubles it (at most 3 times) when a coefficient
/// would lose all precision.
std::vector<PiadicInteger> lt_multiplication(const PiadicInteger& a, const FrobeniusSeries& phi, std::int64_t n);

/// Single attempt at a fixed working precision k.
std::vector<PiadicInteger> lt_multiplication_at(const PiadicInteger& a, const FrobeniusSeries& phi, std::int64_t n,
                                                int k);

/// Residues of the coefficients as a series over F_q known mod t^N.
TSeries reduce_mod_pi(const std::vector<PiadicInteger>& coeffs, std::int64_t n);

/// [u](t) mod pi, the substitution series of gamma with chi(gamma) = u.
TSeries gamma_series(const PiadicInteger& u, const FrobeniusSeries& phi, std::int64_t n);

/// ubar t / ([u](t) mod pi), a 1-unit known mod t^N.
TSeries fbar(const PiadicInteger& u, const FrobeniusSeries& phi, std::int64_t n);

}  // namespace lubintate

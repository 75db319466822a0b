#include "lubintate/reps.hpp"

#include <algorithm>
#include <numeric>

#include "lubintate/arith.hpp"
#include "lubintate/errors.hpp"

namespace lubintate {
namespace {

using u128 = unsigned __int128;

std::uint64_t modulus_of(std::uint64_t q, unsigned n) {
  if (q < 2 || !as_prime_power(q)) throw Error(ErrorCode::InvalidInput, "q must be a prime power");
  if (n == 0) throw Error(ErrorCode::InvalidInput, "dimension must be positive");
  return checked_pow(q, n) - 1;
}

void check_range(std::int64_t h, std::uint64_t m) {
  if (h < 1 || static_cast<std::uint64_t>(h) + 1 > m) {
    throw Error(ErrorCode::OutOfRange, "exponent " + std::to_string(h) + " outside [1, " + std::to_string(m - 1) + "]");
  }
}

unsigned field_degree(std::uint64_t q) { return as_prime_power(q)->k; }

}  // namespace

bool is_q_primitive(std::int64_t h, std::uint64_t q, unsigned n) {
  const std::uint64_t m = modulus_of(q, n);
  check_range(h, m);
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    if (static_cast<std::uint64_t>(h) % (m / (checked_pow(q, d) - 1)) == 0) return false;
  }
  return true;
}

bool is_q_primitive_by_orbit(std::int64_t h, std::uint64_t q, unsigned n) {
  return orbit(h, q, n).size() == n;
}

std::vector<std::uint64_t> orbit(std::int64_t h, std::uint64_t q, unsigned n) {
  const std::uint64_t m = modulus_of(q, n);
  check_range(h, m);
  std::vector<std::uint64_t> out;
  std::uint64_t x = static_cast<std::uint64_t>(h);
  for (unsigned j = 0; j < n; ++j) {
    out.push_back(x);
    x = static_cast<std::uint64_t>(u128{x} * q % m);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CanonicalLabel canonical_label(std::int64_t h, std::int64_t s, std::uint64_t q, unsigned n) {
  const std::uint64_t m = modulus_of(q, n);
  const std::uint64_t d = m / (q - 1);
  const auto mi = static_cast<std::int64_t>(m);
  // omega_{nf}^d = omega_f, so the twist by omega_f^s shifts the exponent by s d
  const std::uint64_t big = static_cast<std::uint64_t>(
      pos_mod(static_cast<std::int64_t>((static_cast<__int128>(pos_mod(h, mi)) + static_cast<__int128>(pos_mod(s, mi)) * d) % mi), mi));
  std::uint64_t best = big, x = big;
  for (unsigned j = 1; j < n; ++j) {
    x = static_cast<std::uint64_t>(u128{x} * q % m);
    best = std::min(best, x);
  }
  if (n == 1) return CanonicalLabel{best, q - 1};
  const std::uint64_t sh = best / d;
  return CanonicalLabel{best % d, sh == 0 ? q - 1 : sh};
}

RepClass RepClass::make(std::uint64_t q, unsigned n, std::int64_t h, std::int64_t s, const FFElem& lambda,
                        unsigned k_degree) {
  if (!is_q_primitive(h, q, n)) throw Error(ErrorCode::NotPrimitive, "exponent " + std::to_string(h) + " is not q-primitive");
  if (s < 1 || static_cast<std::uint64_t>(s) > q - 1) throw Error(ErrorCode::OutOfRange, "s must lie in [1, q-1]");
  if (!lambda.field()) throw Error(ErrorCode::InvalidInput, "lambda has no field");
  if (lambda.is_zero()) throw Error(ErrorCode::ZeroLambda, "lambda must be nonzero");
  if (lambda.field()->characteristic() != as_prime_power(q)->p) throw Error(ErrorCode::FieldMismatch, "lambda has the wrong characteristic");
  if (k_degree == 0) k_degree = field_degree(q);
  if (k_degree % field_degree(q) != 0) throw Error(ErrorCode::InvalidInput, "coefficient field must contain F_q");
  const FFElem pn = lambda.pow(n);
  if (lambda.field()->degree() % k_degree != 0 || !in_subfield(pn, k_degree)) {
    throw Error(ErrorCode::InvalidInput, "lambda^n does not lie in the coefficient field");
  }
  return RepClass{q, n, h, s, lambda, pn, k_degree};
}

bool is_isomorphic(const RepClass& a, const RepClass& b) {
  if (a.q != b.q || a.n != b.n) throw Error(ErrorCode::DimensionMismatch, "classes differ in q or dimension");
  if (a.label() != b.label()) return false;
  const FieldPtr& fa = a.lambda_pow_n.field();
  const FieldPtr& fb = b.lambda_pow_n.field();
  if (fa->same_as(*fb)) return a.lambda_pow_n == b.lambda_pow_n;
  // both values lie in F_{p^k}; compare them after embedding there
  const unsigned k = std::max(a.k_degree, b.k_degree);
  if (!in_subfield(a.lambda_pow_n, k) || !in_subfield(b.lambda_pow_n, k)) return false;
  const FieldPtr common = FiniteField::get(fa->characteristic(), std::lcm(fa->degree(), fb->degree()));
  return embed(a.lambda_pow_n, common) == embed(b.lambda_pow_n, common);
}

std::vector<OrbitClass> enumerate_classes(std::uint64_t q, unsigned n) {
  const std::uint64_t m = modulus_of(q, n);
  if (m + 1 > (std::uint64_t{1} << 20)) throw Error(ErrorCode::TooLarge, "q^n exceeds the enumeration limit 2^20");
  std::vector<char> seen(m, 0);
  std::vector<OrbitClass> out;
  for (std::uint64_t h = 1; h + 1 <= m; ++h) {
    if (seen[h] || !is_q_primitive(static_cast<std::int64_t>(h), q, n)) continue;
    auto orb = orbit(static_cast<std::int64_t>(h), q, n);
    for (auto x : orb) seen[x] = 1;
    out.push_back(OrbitClass{std::move(orb), h});
  }
  return out;
}

}  // namespace lubintate

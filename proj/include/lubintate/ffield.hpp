#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lubintate/matrix.hpp"

namespace lubintate {

/// Polynomial over F_p, lowest degree first.
using FpPoly = std::vector<std::uint32_t>;

/// Rabin's irreducibility test for a monic polynomial over F_p.
bool is_irreducible(const FpPoly& f, std::uint32_t p);

/// The monic irreducible polynomial of degree m over F_p whose coefficient
/// vector (c_0, ..., c_{m-1}) read as the base-p integer sum c_i p^i is
/// smallest. This is the one modulus convention used everywhere.
FpPoly find_irreducible(std::uint32_t p, unsigned m);

/// Table-backed model of F_{p^m} = F_p[x]/(modulus). Elements are encoded as
/// the integer sum c_i p^i of their coefficient vector, so element order is
/// the lexicographic order used by every deterministic search.
class FiniteField {
 public:
  using Raw = std::uint32_t;
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 22;

  /// Shared, immutable field for (p, m); repeated calls return the same
  /// instance.
  static std::shared_ptr<const FiniteField> get(std::uint32_t p, unsigned m);

  FiniteField(std::uint32_t p, unsigned m);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  std::uint32_t size() const noexcept { return size_; }
  const FpPoly& modulus() const noexcept { return modulus_; }
  bool same_as(const FiniteField& other) const noexcept { return p_ == other.p_ && m_ == other.m_; }

  Raw add(Raw a, Raw b) const;
  Raw sub(Raw a, Raw b) const { return add(a, neg(b)); }
  Raw neg(Raw a) const;
  Raw mul(Raw a, Raw b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Raw inv(Raw a) const;
  Raw pow(Raw a, std::int64_t e) const;
  /// a^(p^k)
  Raw frobenius(Raw a, unsigned k) const;

  Raw from_int(std::int64_t v) const;
  Raw from_coeffs(std::span<const std::uint32_t> coeffs) const;
  std::vector<std::uint32_t> coeffs(Raw a) const;

  Raw generator() const noexcept { return generator_; }
  std::uint32_t log(Raw a) const;
  Raw exp(std::uint64_t i) const noexcept { return exp_[i % (size_ - 1)]; }

  /// Multiplicative order of a nonzero element.
  std::uint64_t order(Raw a) const;

 private:
  Raw slow_mul(Raw a, Raw b) const;

  std::uint32_t p_;
  unsigned m_;
  std::uint32_t size_;
  FpPoly modulus_;
  Raw generator_ = 1;
  std::vector<Raw> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Raw> neg_;
  std::vector<Raw> add_;  // full table for small odd-characteristic fields
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Element of a FiniteField with value semantics.
class FFElem {
 public:
  FFElem() = default;
  FFElem(FieldPtr field, FiniteField::Raw raw);

  static FFElem zero(FieldPtr field) { return FFElem(std::move(field), 0); }
  static FFElem one(FieldPtr field) { return FFElem(std::move(field), 1); }
  static FFElem from_int(FieldPtr field, std::int64_t v);
  static FFElem from_coeffs(FieldPtr field, std::span<const std::uint32_t> coeffs);

  const FieldPtr& field() const noexcept { return field_; }
  FiniteField::Raw raw() const noexcept { return raw_; }
  bool is_zero() const noexcept { return raw_ == 0; }
  bool is_one() const noexcept { return raw_ == 1; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(raw_); }

  FFElem operator+(const FFElem& o) const;
  FFElem operator-(const FFElem& o) const;
  FFElem operator-() const;
  FFElem operator*(const FFElem& o) const;
  FFElem operator/(const FFElem& o) const;
  FFElem inv() const;
  FFElem pow(std::int64_t e) const;

  bool operator==(const FFElem& o) const;
  bool operator!=(const FFElem& o) const { return !(*this == o); }

 private:
  void check_same(const FFElem& o) const;

  FieldPtr field_;
  FiniteField::Raw raw_ = 0;
};

/// Ring embedding F_{p^a} -> F_{p^b} for a | b, sending the class of x to
/// the smallest root of the source modulus in the target.
class Embedding {
 public:
  static std::shared_ptr<const Embedding> get(const FieldPtr& source, const FieldPtr& target);
  Embedding(FieldPtr source, FieldPtr target);

  FiniteField::Raw operator()(FiniteField::Raw a) const;
  FFElem operator()(const FFElem& a) const;
  const FieldPtr& source() const noexcept { return source_; }
  const FieldPtr& target() const noexcept { return target_; }

 private:
  FieldPtr source_;
  FieldPtr target_;
  FiniteField::Raw image_of_generator_ = 1;
};

/// x^(q^j); q must be a power of the characteristic.
FFElem frobenius_power(const FFElem& x, std::int64_t j, std::uint64_t q);

/// Image of x in a field whose degree is a multiple of x's field degree.
FFElem embed(const FFElem& x, const FieldPtr& target);

/// Is x in the subfield of size p^sub_degree?
bool in_subfield(const FFElem& x, unsigned sub_degree);

/// Smallest alpha with alpha^(q^n - 1) = (-1)^(n-1), in F_{q^n} when the sign
/// is 1 in F_p and in F_{q^{2n}} otherwise.
FFElem solve_root_of_sign(unsigned n, std::uint64_t q);

/// Are the given elements of F_{q^n} linearly independent over F_q?
bool fq_independent(std::span<const FFElem> xs, std::uint64_t q);

/// First x in F_{q^n} (element order) whose q-power conjugates form an
/// F_q-basis.
FFElem normal_basis_element(unsigned n, std::uint64_t q);

// ---------------------------------------------------------------------------
// Linear algebra over F_p.

using FpMatrix = std::vector<std::vector<std::uint32_t>>;

std::size_t fp_rank(FpMatrix rows, std::uint32_t p);

/// Basis of {x : A x = 0} where A is given as rows, ncols columns.
FpMatrix fp_kernel(FpMatrix a, std::size_t ncols, std::uint32_t p);

// ---------------------------------------------------------------------------
// Large extensions for fixed-point problems whose solutions live far above
// the table-backed range.

/// Polynomial-arithmetic model of F_{p^m} with the same modulus convention
/// as FiniteField.
class PolyField {
 public:
  using Elem = std::vector<std::uint32_t>;

  static std::shared_ptr<const PolyField> get(std::uint32_t p, unsigned m);
  PolyField(std::uint32_t p, unsigned m);

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  const FpPoly& modulus() const noexcept { return modulus_; }

  Elem zero() const { return Elem(m_, 0); }
  Elem one() const;
  bool is_zero(const Elem& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem scale(const Elem& a, std::uint32_t c) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, std::uint64_t e) const;
  /// a^(p^k)
  Elem frobenius(const Elem& a, unsigned k) const;
  Elem inv(const Elem& a) const;

  /// Embeds an element of a table-backed subfield (degree dividing m).
  Elem embed(const FFElem& x) const;

 private:
  std::uint32_t p_;
  unsigned m_;
  FpPoly modulus_;
};

using PolyFieldPtr = std::shared_ptr<const PolyField>;

/// F_Q-basis of {v in Fbar^n : M * sigma(v) = v}, sigma the coordinatewise
/// Q-power map, realized inside F_{p^field_degree}.
struct FixedBasis {
  PolyFieldPtr field;
  std::uint64_t q = 0;
  std::vector<std::vector<PolyField::Elem>> basis;
};

/// Degree over F_p of the smallest field F_{Q^k} containing the entries of M
/// and all solutions of M * sigma(v) = v.
unsigned splitting_degree(const Matrix<FFElem>& m, std::uint64_t q);

/// Solves M * sigma(v) = v through its F_p-linearization. field_degree = 0
/// selects splitting_degree; otherwise it must be a multiple of it.
FixedBasis semilinear_fixed_basis(const Matrix<FFElem>& m, std::uint64_t q, unsigned field_degree = 0);

}  // namespace lubintate

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lubintate/ffield.hpp"

namespace lubintate {

/// Truncated Laurent series sum c_i t^i over a finite field, known modulo
/// t^prec. Exact series (polynomials) carry prec = kExact.
class TSeries {
 public:
  using Raw = FiniteField::Raw;
  static constexpr std::int64_t kExact = std::int64_t{1} << 40;

  TSeries() = default;
  /// Coefficients start at t^val; entries at or beyond prec are dropped.
  TSeries(FieldPtr field, std::int64_t val, std::vector<Raw> coeffs, std::int64_t prec = kExact);

  static TSeries zero(FieldPtr field, std::int64_t prec = kExact);
  static TSeries constant(const FFElem& c, std::int64_t prec = kExact);
  static TSeries monomial(const FFElem& c, std::int64_t k, std::int64_t prec = kExact);
  static TSeries one(FieldPtr field, std::int64_t prec = kExact);
  /// The variable t.
  static TSeries t(FieldPtr field);

  const FieldPtr& field() const noexcept { return field_; }
  /// Valuation; equals prec for a series that is zero to its precision.
  std::int64_t val() const noexcept { return val_; }
  std::int64_t prec() const noexcept { return prec_; }
  bool is_exact() const noexcept { return prec_ >= kExact; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_monomial() const noexcept { return c_.size() == 1; }
  /// Coefficient of t^i; throws PrecisionExhausted when i >= prec.
  Raw coeff(std::int64_t i) const;
  FFElem coeff_elem(std::int64_t i) const { return FFElem(field_, coeff(i)); }
  FFElem leading() const;
  /// Stored coefficients starting at t^val.
  const std::vector<Raw>& coeffs() const noexcept { return c_; }
  /// Number of coefficients known beyond the valuation.
  std::int64_t relative_precision() const;

  TSeries with_precision(std::int64_t n) const;
  TSeries operator+(const TSeries& o) const;
  TSeries operator-(const TSeries& o) const;
  TSeries operator-() const;
  TSeries operator*(const TSeries& o) const;
  TSeries scale(const FFElem& c) const;
  /// Multiplication by t^k.
  TSeries shift(std::int64_t k) const;
  /// Integer power; negative exponents go through invert_unit.
  TSeries pow(std::int64_t k, std::optional<std::int64_t> cap = std::nullopt) const;
  /// Image under an embedding of the coefficient field.
  TSeries embed(const FieldPtr& target) const;
  /// Applies a coefficientwise map that fixes 0.
  template <class F>
  TSeries map_coeffs(F&& fn) const {
    std::vector<Raw> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = fn(c_[i]);
    return TSeries(field_, val_, std::move(out), prec_);
  }

  /// Same field, valuation, coefficients and precision.
  bool operator==(const TSeries& o) const;

 private:
  void check_same(const TSeries& o) const;
  void normalize();

  FieldPtr field_;
  std::int64_t val_ = kExact;
  std::vector<Raw> c_;
  std::int64_t prec_ = kExact;
};

/// a^{-1}: valuation -val_a, precision prec_a - 2 val_a. An exact input that
/// is not a monomial has an infinite inverse, so a cap is required.
TSeries invert_unit(const TSeries& a, std::optional<std::int64_t> cap = std::nullopt);

/// f(g(t)) for val_g >= 1. Precision is min(prec_f val_g, prec_g + (v - 1) val_g)
/// with v = val_f, or v = 1 when val_f = 0, further limited by cap.
TSeries compose(const TSeries& f, const TSeries& g, std::optional<std::int64_t> cap = std::nullopt);

/// t -> t^q with each coefficient c replaced by c^(q^twist).
TSeries frobenius_subst(const TSeries& f, std::uint64_t q, int twist);

/// Both known and equal modulo t^n.
bool equal_mod(const TSeries& a, const TSeries& b, std::int64_t n);

/// Equal modulo t^(min(val_a, val_b) + rel); false when either side is not
/// known that far.
bool agree_relative(const TSeries& a, const TSeries& b, std::int64_t rel);

/// Equal modulo the smaller of the two precisions.
bool congruent(const TSeries& a, const TSeries& b);

}  // namespace lubintate

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lubintate/ffield.hpp"

namespace lubintate {

/// User-facing description of F/Q_p. Each Eisenstein coefficient is a
/// polynomial over Z (lowest degree first) in the generator of the
/// unramified ring of integers. An empty eis list means e = 1 and pi = p.
struct LocalFieldSpec {
  std::uint32_t p = 2;
  unsigned f = 1;
  unsigned e = 1;
  std::vector<std::vector<std::int64_t>> eis;
};

/// Validated local field data: o_F = W[pi] with W = W(F_q) truncated at p^M
/// and pi^e = -(c_{e-1} pi^{e-1} + ... + c_0).
class LocalField {
 public:
  using Coeffs = std::vector<std::uint64_t>;  // element of W, f coordinates mod p^M

  static std::shared_ptr<const LocalField> make(const LocalFieldSpec& spec);
  explicit LocalField(const LocalFieldSpec& spec);

  const LocalFieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t p() const noexcept { return spec_.p; }
  unsigned f() const noexcept { return spec_.f; }
  unsigned e() const noexcept { return spec_.e; }
  std::uint64_t q() const noexcept { return q_; }
  /// Storage exponent M: coordinates of W live mod p^M.
  unsigned storage_digits() const noexcept { return digits_; }
  std::uint64_t storage_modulus() const noexcept { return pm_; }
  /// p^k for k <= M.
  std::uint64_t p_power(unsigned k) const { return ppow_.at(k); }
  /// Largest representable precision e * M.
  int max_precision() const noexcept { return static_cast<int>(spec_.e * digits_); }
  const FieldPtr& residue_field() const noexcept { return residue_; }
  const FpPoly& unramified_modulus() const noexcept { return residue_->modulus(); }
  bool same_as(const LocalField& o) const;
  std::string describe() const;

  // Arithmetic in W mod p^M.
  Coeffs w_zero() const { return Coeffs(spec_.f, 0); }
  Coeffs w_from_int(std::int64_t v) const;
  Coeffs w_add(const Coeffs& a, const Coeffs& b) const;
  Coeffs w_sub(const Coeffs& a, const Coeffs& b) const;
  Coeffs w_neg(const Coeffs& a) const;
  Coeffs w_mul(const Coeffs& a, const Coeffs& b) const;
  /// Inverse of a p-adic unit of W.
  Coeffs w_inv(const Coeffs& a) const;
  /// Minimal p-adic valuation over coordinates, capped at M.
  unsigned w_valuation(const Coeffs& a) const;

  /// Eisenstein coefficients c_0..c_{e-1}.
  const std::vector<Coeffs>& eisenstein() const noexcept { return eis_; }
  /// w^{-1} where c_0 = p w.
  const Coeffs& c0_unit_inverse() const noexcept { return c0_unit_inv_; }

 private:
  LocalFieldSpec spec_;
  std::uint64_t q_ = 0;
  unsigned digits_ = 0;
  std::uint64_t pm_ = 0;
  std::vector<std::uint64_t> ppow_;
  FieldPtr residue_;
  std::vector<Coeffs> eis_;
  Coeffs c0_unit_inv_;
};

using LocalFieldPtr = std::shared_ptr<const LocalField>;

/// Element of o_F known modulo pi^prec, stored as sum_{i<e} a_i pi^i with
/// a_i in W reduced to the digits that the precision determines.
class PiadicInteger {
 public:
  PiadicInteger() = default;

  static PiadicInteger zero(LocalFieldPtr field, int prec);
  static PiadicInteger one(LocalFieldPtr field, int prec);
  static PiadicInteger from_int(LocalFieldPtr field, std::int64_t v, int prec);
  /// pi^1 with the given precision.
  static PiadicInteger uniformizer(LocalFieldPtr field, int prec);
  /// Element sum_i coeffs[i] pi^i with coeffs[i] given as W-polynomials over Z.
  static PiadicInteger from_pi_basis(LocalFieldPtr field, const std::vector<std::vector<std::int64_t>>& coeffs,
                                     int prec);
  static PiadicInteger teichmuller(LocalFieldPtr field, const FFElem& a, int prec);

  const LocalFieldPtr& field() const noexcept { return field_; }
  int prec() const noexcept { return prec_; }
  /// pi-adic valuation, equal to prec when the element is zero to precision.
  int valuation() const;
  bool is_zero() const { return valuation() >= prec_; }
  bool is_unit() const { return prec_ >= 1 && valuation() == 0; }

  PiadicInteger operator+(const PiadicInteger& o) const;
  PiadicInteger operator-(const PiadicInteger& o) const;
  PiadicInteger operator-() const;
  PiadicInteger operator*(const PiadicInteger& o) const;
  PiadicInteger pow(std::uint64_t e) const;
  /// Inverse of a unit; precision is kept.
  PiadicInteger inverse() const;
  /// r with pi r = this; precision drops by one.
  PiadicInteger divide_by_pi_exact() const;
  /// this * pi; precision grows by one (multiplication by pi is injective).
  PiadicInteger times_pi() const;
  FFElem residue() const;
  /// First k Teichmuller digits d_i with this = sum tau(d_i) pi^i mod pi^k.
  std::vector<FFElem> digits() const;

  PiadicInteger with_precision(int k) const;
  /// Declares a precision established by an argument outside the local
  /// arithmetic (used by the Lubin-Tate recursion); never exceeds the cap.
  PiadicInteger assume_precision(int k) const;

  /// Same value modulo pi^min(prec, o.prec).
  bool congruent(const PiadicInteger& o) const;
  /// Same precision and same value.
  bool operator==(const PiadicInteger& o) const;

  /// Coordinates a_i (as W elements) of the pi-basis representation.
  std::vector<LocalField::Coeffs> pi_coordinates() const;

 private:
  PiadicInteger(LocalFieldPtr field, std::vector<std::uint64_t> a, int prec);
  void check_same(const PiadicInteger& o) const;
  void normalize();

  LocalFieldPtr field_;
  std::vector<std::uint64_t> a_;  // e blocks of f coordinates
  int prec_ = 0;
};

}  // namespace lubintate

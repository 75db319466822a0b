#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "lubintate/lubin_tate.hpp"
#include "lubintate/matrix.hpp"
#include "lubintate/unit_exp.hpp"

namespace lubintate {

using SeriesMatrix = Matrix<TSeries>;
using SeriesVector = std::vector<TSeries>;

/// Lubin-Tate data shared by all modules over one local field: the
/// Frobenius series, the series precision used for construction and
/// memoized gamma series and f-bar series per unit.
class GammaContext {
 public:
  GammaContext(FrobeniusSeries phi, std::int64_t prec);
  static std::shared_ptr<const GammaContext> make(FrobeniusSeries phi, std::int64_t prec) {
    return std::make_shared<const GammaContext>(std::move(phi), prec);
  }

  const LocalFieldPtr& field() const noexcept { return phi_.field; }
  const FrobeniusSeries& frobenius() const noexcept { return phi_; }
  std::int64_t prec() const noexcept { return prec_; }
  std::uint64_t q() const { return phi_.field->q(); }

  /// [u](t) mod pi, known mod t^prec.
  TSeries gamma_series(const PiadicInteger& u) const;
  /// u-bar t / ([u](t) mod pi), known mod t^prec.
  TSeries fbar(const PiadicInteger& u) const;

 private:
  struct Entry {
    TSeries gamma;
    TSeries fbar;
  };
  const Entry& lookup(const PiadicInteger& u) const;

  FrobeniusSeries phi_;
  std::int64_t prec_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<std::uint64_t>, Entry> memo_;
};
using GammaContextPtr = std::shared_ptr<const GammaContext>;

/// Parameters of the module shapes that the constructors produce; used by
/// the determinant identity.
struct ModuleLabel {
  std::int64_t h = 0;
  std::int64_t s = 0;
  FFElem lambda;
};

/// Etale (phi, Gamma)-module of rank n over k((t)) given in a basis: the
/// matrix of phi (column j is phi(e_j)) and a generator u -> matrix of
/// gamma_u. Immutable after construction.
class PhiGammaModule {
 public:
  using GammaFn = std::function<SeriesMatrix(const PiadicInteger&)>;

  PhiGammaModule(GammaContextPtr ctx, FieldPtr coeff_field, SeriesMatrix phi, GammaFn gamma,
                 std::optional<ModuleLabel> label = std::nullopt);

  std::size_t rank() const noexcept { return phi_.rows(); }
  const FieldPtr& coeff_field() const noexcept { return k_; }
  const GammaContextPtr& context() const noexcept { return ctx_; }
  const SeriesMatrix& phi_matrix() const noexcept { return phi_; }
  const std::optional<ModuleLabel>& label() const noexcept { return label_; }
  /// Matrix of gamma_u, memoized per unit.
  SeriesMatrix gamma(const PiadicInteger& u) const;
  /// gamma_series(u) over the coefficient field.
  TSeries substitution(const PiadicInteger& u) const;
  /// Standard basis vector e_j.
  SeriesVector basis_vector(std::size_t j) const;

 private:
  GammaContextPtr ctx_;
  FieldPtr k_;
  SeriesMatrix phi_;
  GammaFn gamma_;
  std::optional<ModuleLabel> label_;
  struct Memo {
    std::mutex mu;
    std::map<std::vector<std::uint64_t>, SeriesMatrix> cache;
  };
  std::shared_ptr<Memo> memo_;
};

/// hq^j(q-1)/(q^n-1) as a reduced p-integral exponent.
PExponent gamma_exponent(std::int64_t h, std::uint64_t q, unsigned n, unsigned j);

/// phi(e_j) = e_{j+1}, phi(e_{n-1}) = (-1)^{n-1} t^{-h(q-1)} e_0 and
/// gamma_u(e_j) = fbar_u^{hq^j(q-1)/(q^n-1)} e_j. Throws NotPrimitive.
PhiGammaModule construct_ind(std::int64_t h, unsigned n, const GammaContextPtr& ctx);

/// Rank one: phi(e) = lambda e, gamma_u(e) = u-bar^s e. Throws ZeroLambda.
PhiGammaModule construct_char(std::int64_t s, const FFElem& lambda, const GammaContextPtr& ctx);

/// construct_ind(h) with phi scaled by lambda and gamma_u by u-bar^s.
PhiGammaModule construct_twisted(std::int64_t h, std::int64_t s, const FFElem& lambda, unsigned n,
                                 const GammaContextPtr& ctx);

/// Phi * frobenius_subst(v). Throws DimensionMismatch.
SeriesVector apply_phi(const PhiGammaModule& m, const SeriesVector& v);
/// Gamma(u) * (v o [u](t)). Throws DimensionMismatch.
SeriesVector apply_gamma(const PhiGammaModule& m, const PiadicInteger& u, const SeriesVector& v);

struct CheckReport {
  bool ok = true;
  /// Basis index (or matrix row) of the first discrepancy.
  std::int64_t index = -1;
  std::int64_t component = -1;
  std::string detail;
};

/// Vectors agree modulo t^(v + n), v the smallest valuation of either.
bool vectors_agree(const SeriesVector& a, const SeriesVector& b, std::int64_t n);

/// gamma_u(phi(e_j)) against phi(gamma_u(e_j)) for every j, relative precision n.
CheckReport check_commutation(const PhiGammaModule& m, const PiadicInteger& u, std::int64_t n);

/// Gamma(uv) against Gamma(u) (Gamma(v) o [u](t)), row by row.
CheckReport check_cocycle(const PhiGammaModule& m, const PiadicInteger& u, const PiadicInteger& v, std::int64_t n);

/// Top exterior power: phi-scalar det(Phi), gamma-scalar det(Gamma(u)).
PhiGammaModule det_module(const PhiGammaModule& m);

/// After rescaling the determinant basis by t^h: phi-scalar lambda^n and
/// gamma-scalar u-bar^(h + n s). Needs a labelled module.
CheckReport check_det_identity(const PhiGammaModule& m, const PiadicInteger& u, std::int64_t n);

/// New basis e' = P e: Phi' = P^-1 Phi frob(P), Gamma' = P^-1 Gamma (P o [u](t)).
/// Throws NotInvertible when det P is zero to its precision.
PhiGammaModule base_change(const PhiGammaModule& m, const SeriesMatrix& p);

/// Deliberate defects for negative controls.
enum class Corruption { GammaExponent, PhiSign, GammaSign };
/// GammaExponent multiplies gamma entry j by fbar_u (exponent + 1), PhiSign
/// negates the wrap-around entry of Phi, GammaSign negates gamma entry j.
PhiGammaModule corrupt(const PhiGammaModule& m, Corruption kind, std::size_t j = 0);

}  // namespace lubintate

#pragma once

#include <cstdint>
#include <vector>

#include "lubintate/phigamma.hpp"

namespace lubintate {

/// F'((y)) with y^d = t, d = (q^n - 1)/(q - 1). F' = F_{q^2n} when p is odd
/// and n even (so that alpha^(q^n - 1) = -1 is solvable), else F_{q^n}.
/// y-series are TSeries over F' in the variable y.
struct TameRing {
  GammaContextPtr ctx;
  unsigned n = 0;
  std::uint64_t q = 0;
  std::uint64_t d = 0;
  FieldPtr coeff;  ///< F'
  FieldPtr fqn;    ///< F_{q^n}
  FFElem alpha;    ///< alpha^(q^n - 1) = (-1)^(n-1), in F'

  static TameRing make(GammaContextPtr ctx, unsigned n);
};

/// Substitution t = y^d; valuation and precision scale by d.
TSeries lift_to_y(const TameRing& r, const TSeries& f);

/// Inertia element through chi(g) = u and omega_{nf}(g) = zeta in F_{q^n}.
struct InertiaElem {
  PiadicInteger u;
  FFElem zeta;
  InertiaElem operator*(const InertiaElem& o) const { return {u * o.u, zeta * o.zeta}; }
};

/// zeta^d = u-bar.
bool is_compatible(const TameRing& r, const InertiaElem& g);

/// A zeta with zeta^d = u-bar: g^(l + q - 1) where u-bar = g^(d l), g the
/// generator of F_{q^n}.
InertiaElem compatible_element(const TameRing& r, const PiadicInteger& u);

/// g(y) = y zeta^q fbar_u^(-(q-1)/(q^n-1)) as a y-series. Throws IncompatiblePair.
TSeries image_of_y(const TameRing& r, const InertiaElem& g);

/// The ring endomorphism of F'((y)) fixing F' with y -> g(y).
TSeries inertia_act(const TameRing& r, const InertiaElem& g, const TSeries& x);

/// (g1 g2)(x) against g1(g2(x)) on y and on a few lifted t-series; also
/// checks g(y)^d = lift([u](t)). Comparison at relative y-precision n d.
CheckReport check_action_group_law(const TameRing& r, const InertiaElem& g1, const InertiaElem& g2, std::int64_t n);

/// x[c][i]: component c of the product ring, coefficient of e_i.
using ProductVector = std::vector<std::vector<TSeries>>;

/// v_0..v_{n-1}: v_j has alpha^(q^i) y^(q^i h) in component (j + i) mod n
/// against e_i. M must be an induced module of the ring's rank; throws
/// ShapeMismatch otherwise.
std::vector<ProductVector> build_vj(const TameRing& r, const PhiGammaModule& m, const FFElem& alpha);

/// phi(x)[c] = Phi phi_q(x[c-1]), phi_q raising coefficients to the q-th
/// power and y -> y^q.
ProductVector product_phi(const TameRing& r, const PhiGammaModule& m, const ProductVector& x);

/// g(x)[c] = Gamma(u) g(x[c]).
ProductVector product_gamma(const TameRing& r, const PhiGammaModule& m, const InertiaElem& g, const ProductVector& x);

/// a . x with a in F_{q^n} acting on component c by a^(q^c).
ProductVector left_scale(const TameRing& r, const FFElem& a, const ProductVector& x);

/// phi(v) = v at relative y-precision n d.
CheckReport check_phi_fixed(const TameRing& r, const PhiGammaModule& m, const ProductVector& v, std::int64_t n);

/// g(v_j) = zeta^(q^(1-j) h) . v_j at relative y-precision n d.
CheckReport check_inertia_eigen(const TameRing& r, const PhiGammaModule& m, const ProductVector& v, unsigned j,
                                const InertiaElem& g, std::int64_t n);

/// Descent of mu_lambda for lambda in F_{q^n}: all elements live in one
/// F_{p^D}. Components are indexed like the product ring.
struct DescentResult {
  PolyFieldPtr field;
  PolyField::Elem beta;           ///< beta^(q^n - 1) = lambda^n
  PolyField::Elem x;              ///< normal basis element of F_{q^n}
  std::vector<PolyField::Elem> e; ///< e = sum_j Fr^j(v), v = (beta x, 0, ..., 0)
  FFElem scalar;                  ///< e = scalar . (first fixed basis vector)
  bool nonzero = false;
  bool galois_fixed = false;      ///< Fr(e) = e
  bool phi_eigen = false;         ///< phi(e) = lambda . e
  bool beta_equation = false;     ///< e_0^(q^n - 1) = lambda^n
  bool matches_fixed_basis = false;
  bool ok() const { return nonzero && galois_fixed && phi_eigen && beta_equation && matches_fixed_basis; }
};

/// Throws SearchFailed when no beta is found and FieldMismatch when lambda
/// is not in F_{q^n}.
DescentResult unramified_descent(const FFElem& lambda, unsigned n, std::uint64_t q);

}  // namespace lubintate

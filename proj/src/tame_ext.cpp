#include "lubintate/tame_ext.hpp"

#include <numeric>

#include "lubintate/arith.hpp"
#include "lubintate/errors.hpp"

namespace lubintate {
namespace {

FFElem to_field(const FFElem& x, const FieldPtr& k) { return x.field()->same_as(*k) ? x : embed(x, k); }
TSeries to_field(const TSeries& s, const FieldPtr& k) { return s.field()->same_as(*k) ? s : s.embed(k); }

// x^m for a y-series of valuation 1; p-power factors go through the
// Frobenius substitution, which is exact in characteristic p.
TSeries series_power(const TSeries& x, std::int64_t m, std::uint32_t p) {
  if (m < 0) return invert_unit(series_power(x, -m, p));
  std::uint64_t pk = 1;
  while (m > 0 && m % p == 0) {
    m /= p;
    pk *= p;
  }
  TSeries r = x.pow(m);
  return pk == 1 ? r : frobenius_subst(r, pk, 1);
}

std::vector<TSeries> flatten(const ProductVector& x) {
  std::vector<TSeries> out;
  for (const auto& comp : x) out.insert(out.end(), comp.begin(), comp.end());
  return out;
}

CheckReport compare_products(const ProductVector& a, const ProductVector& b, std::int64_t rel, std::int64_t index,
                             const std::string& what) {
  if (vectors_agree(flatten(a), flatten(b), rel)) return {};
  CheckReport r{false, index, -1, what};
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (!vectors_agree(a[c], b[c], rel)) {
      r.component = static_cast<std::int64_t>(c);
      break;
    }
  }
  r.detail += " differs in component " + std::to_string(r.component);
  return r;
}

}  // namespace

TameRing TameRing::make(GammaContextPtr ctx, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "rank must be positive");
  TameRing r;
  r.q = ctx->q();
  r.n = n;
  r.d = (checked_pow(r.q, n) - 1) / (r.q - 1);
  const auto& F = *ctx->field();
  r.fqn = FiniteField::get(F.p(), n * F.f());
  r.alpha = solve_root_of_sign(n, r.q);
  r.coeff = r.alpha.field();
  r.ctx = std::move(ctx);
  return r;
}

TSeries lift_to_y(const TameRing& r, const TSeries& f) {
  return compose(to_field(f, r.coeff), TSeries::monomial(FFElem::one(r.coeff), static_cast<std::int64_t>(r.d)));
}

bool is_compatible(const TameRing& r, const InertiaElem& g) {
  if (!g.zeta.field() || !g.zeta.field()->same_as(*r.fqn)) return false;
  return g.zeta.pow(static_cast<std::int64_t>(r.d)) == to_field(g.u.residue(), r.fqn);
}

InertiaElem compatible_element(const TameRing& r, const PiadicInteger& u) {
  const FFElem ubar = to_field(u.residue(), r.fqn);
  if (ubar.is_zero()) throw Error(ErrorCode::NotAUnit, "inertia element needs a unit");
  const std::uint64_t l = r.fqn->log(ubar.raw()) / r.d;
  return InertiaElem{u, FFElem(r.fqn, r.fqn->exp(l + r.q - 1))};
}

TSeries image_of_y(const TameRing& r, const InertiaElem& g) {
  if (!is_compatible(r, g)) throw Error(ErrorCode::IncompatiblePair, "zeta^d differs from the residue of u");
  const auto& F = *r.ctx->field();
  const auto e = PExponent::make(-static_cast<std::int64_t>(r.q - 1), static_cast<std::int64_t>(r.d * (r.q - 1)), F.p());
  const TSeries c = one_unit_pow(r.ctx->fbar(g.u), e, r.ctx->prec());
  return lift_to_y(r, c).shift(1).scale(to_field(g.zeta.pow(static_cast<std::int64_t>(r.q)), r.coeff));
}

TSeries inertia_act(const TameRing& r, const InertiaElem& g, const TSeries& x) {
  const TSeries y = image_of_y(r, g);
  const TSeries xs = to_field(x, r.coeff);
  if (xs.is_monomial()) {
    const TSeries img = series_power(y, xs.val(), r.coeff->characteristic()).scale(xs.leading());
    return img.with_precision(xs.prec());
  }
  return compose(xs, y);
}

CheckReport check_action_group_law(const TameRing& r, const InertiaElem& g1, const InertiaElem& g2, std::int64_t n) {
  const std::int64_t rel = n * static_cast<std::int64_t>(r.d);
  const InertiaElem g12 = g1 * g2;
  const TSeries y = TSeries::t(r.coeff);
  auto cmp = [&](const TSeries& a, const TSeries& b, std::int64_t idx, const char* what) {
    return vectors_agree({a}, {b}, rel) ? CheckReport{} : CheckReport{false, idx, 0, what};
  };
  auto rep = cmp(inertia_act(r, g12, y), inertia_act(r, g1, inertia_act(r, g2, y)), 0, "(g1 g2)(y) vs g1(g2(y))");
  if (!rep.ok) return rep;
  int idx = 1;
  for (const auto* g : {&g1, &g2, &g12}) {
    const TSeries lhs = series_power(image_of_y(r, *g), static_cast<std::int64_t>(r.d), r.coeff->characteristic());
    rep = cmp(lhs, lift_to_y(r, r.ctx->gamma_series(g->u)), idx++, "g(y)^d vs lifted [u](t)");
    if (!rep.ok) return rep;
  }
  const FieldPtr& k = r.ctx->field()->residue_field();
  // t^-1 (1 + t) + t^3
  const TSeries f = TSeries(k, -1, {1, 1, 0, 0, 1});
  const TSeries lf = lift_to_y(r, f);
  const TSeries lhs = inertia_act(r, g12, lf);
  rep = cmp(lhs, inertia_act(r, g1, inertia_act(r, g2, lf)), idx++, "(g1 g2)(f) vs g1(g2(f))");
  if (!rep.ok) return rep;
  return cmp(lhs, lift_to_y(r, compose(f, r.ctx->gamma_series(g12.u))), idx, "g(f) vs lifted f o [u](t)");
}

std::vector<ProductVector> build_vj(const TameRing& r, const PhiGammaModule& m, const FFElem& alpha) {
  if (m.rank() != r.n || !m.label() || m.label()->s != 0) {
    throw Error(ErrorCode::ShapeMismatch, "expected an induced module of rank " + std::to_string(r.n));
  }
  const std::int64_t h = m.label()->h;
  const FFElem a = to_field(alpha, r.coeff);
  const unsigned n = r.n;
  std::vector<ProductVector> out;
  for (unsigned j = 0; j < n; ++j) {
    ProductVector v(n, std::vector<TSeries>(n, TSeries::zero(r.coeff)));
    std::int64_t qi = 1;
    for (unsigned i = 0; i < n; ++i, qi *= static_cast<std::int64_t>(r.q)) {
      v[(j + i) % n][i] = TSeries::monomial(frobenius_power(a, i, r.q), qi * h);
    }
    out.push_back(std::move(v));
  }
  return out;
}

ProductVector product_phi(const TameRing& r, const PhiGammaModule& m, const ProductVector& x) {
  const unsigned n = r.n;
  if (x.size() != n || m.rank() != n) throw Error(ErrorCode::DimensionMismatch, "product vector shape");
  const SeriesMatrix phi = m.phi_matrix().map([&](const TSeries& s) { return lift_to_y(r, s); });
  ProductVector out;
  for (unsigned c = 0; c < n; ++c) {
    std::vector<TSeries> shifted;
    for (const auto& s : x[(c + n - 1) % n]) shifted.push_back(frobenius_subst(to_field(s, r.coeff), r.q, 1));
    out.push_back(phi * shifted);
  }
  return out;
}

ProductVector product_gamma(const TameRing& r, const PhiGammaModule& m, const InertiaElem& g, const ProductVector& x) {
  const unsigned n = r.n;
  if (x.size() != n || m.rank() != n) throw Error(ErrorCode::DimensionMismatch, "product vector shape");
  const SeriesMatrix gm = m.gamma(g.u).map([&](const TSeries& s) { return lift_to_y(r, s); });
  ProductVector out;
  for (const auto& comp : x) {
    std::vector<TSeries> acted;
    for (const auto& s : comp) acted.push_back(s.is_zero() ? to_field(s, r.coeff) : inertia_act(r, g, s));
    out.push_back(gm * acted);
  }
  return out;
}

ProductVector left_scale(const TameRing& r, const FFElem& a, const ProductVector& x) {
  ProductVector out = x;
  for (unsigned c = 0; c < out.size(); ++c) {
    const FFElem ac = to_field(frobenius_power(to_field(a, r.fqn), c, r.q), r.coeff);
    for (auto& s : out[c]) s = to_field(s, r.coeff).scale(ac);
  }
  return out;
}

CheckReport check_phi_fixed(const TameRing& r, const PhiGammaModule& m, const ProductVector& v, std::int64_t n) {
  return compare_products(product_phi(r, m, v), v, n * static_cast<std::int64_t>(r.d), 0, "phi(v) vs v");
}

CheckReport check_inertia_eigen(const TameRing& r, const PhiGammaModule& m, const ProductVector& v, unsigned j,
                                const InertiaElem& g, std::int64_t n) {
  if (!m.label()) throw Error(ErrorCode::ShapeMismatch, "eigenvalue check needs an induced module");
  const std::int64_t h = m.label()->h;
  // q^(1-j) h, reduced with q^n = 1 on F_{q^n}
  const unsigned shift = static_cast<unsigned>((1 + r.n - j % r.n) % r.n);
  const std::uint64_t m_exp = checked_pow(r.q, r.n) - 1;
  const auto e = static_cast<std::int64_t>(static_cast<unsigned __int128>(checked_pow(r.q, shift)) * static_cast<std::uint64_t>(h) % m_exp);
  const FFElem eigen = g.zeta.pow(e);
  return compare_products(product_gamma(r, m, g, v), left_scale(r, eigen, v), n * static_cast<std::int64_t>(r.d),
                          static_cast<std::int64_t>(j), "g(v_j) vs eigenvalue times v_j");
}

DescentResult unramified_descent(const FFElem& lambda, unsigned n, std::uint64_t q) {
  const auto pp = as_prime_power(q);
  if (!pp || n == 0) throw Error(ErrorCode::InvalidInput, "need a prime power q and positive n");
  if (!lambda.field()) throw Error(ErrorCode::InvalidInput, "lambda has no field");
  if (lambda.is_zero()) throw Error(ErrorCode::ZeroLambda, "lambda must be nonzero");
  const std::uint32_t p = pp->p;
  const unsigned f = pp->k;
  const FieldPtr kq = FiniteField::get(p, n * f);
  if (lambda.field()->characteristic() != p || (n * f) % lambda.field()->degree() != 0) {
    throw Error(ErrorCode::FieldMismatch, "lambda does not lie in F_{q^n}");
  }
  const FFElem lam = to_field(lambda, kq);
  const std::uint64_t qn = checked_pow(q, n);

  // beta^(q^n - 1) = lambda^n  <=>  beta = lambda^-n sigma_{q^n}(beta)
  Matrix<FFElem> m1(1, 1, lam.pow(-static_cast<std::int64_t>(n)));
  // Galois Frobenius on the product: w_c -> lambda^(-q^c) w_{c-1}^q
  Matrix<FFElem> m2(n, n, FFElem::zero(kq));
  for (unsigned c = 0; c < n; ++c) m2(c, (c + n - 1) % n) = frobenius_power(lam, c, q).inv();
  const unsigned degree = std::lcm(splitting_degree(m1, qn), splitting_degree(m2, q));
  const FixedBasis fb1 = semilinear_fixed_basis(m1, qn, degree);
  const FixedBasis fb2 = semilinear_fixed_basis(m2, q, degree);
  if (fb1.basis.empty() || fb2.basis.size() != n) throw Error(ErrorCode::SearchFailed, "no solution of the descent equations");

  DescentResult res;
  res.field = fb1.field;
  const PolyField& P = *res.field;
  auto qpow = [&](const PolyField::Elem& a) { return P.frobenius(a, f); };
  res.beta = fb1.basis[0][0];
  res.x = P.embed(normal_basis_element(n, q));
  std::vector<PolyField::Elem> lam_q(n), lam_q_inv(n);
  for (unsigned c = 0; c < n; ++c) {
    lam_q[c] = P.embed(frobenius_power(lam, c, q));
    lam_q_inv[c] = P.inv(lam_q[c]);
  }
  auto galois = [&](const std::vector<PolyField::Elem>& w) {
    std::vector<PolyField::Elem> out(n);
    for (unsigned c = 0; c < n; ++c) out[c] = P.mul(lam_q_inv[c], qpow(w[(c + n - 1) % n]));
    return out;
  };

  // v = (beta x, 0, ..., 0) is fixed by Fr^n; e is its additive norm
  std::vector<PolyField::Elem> v(n, P.zero());
  v[0] = P.mul(res.beta, res.x);
  res.e.assign(n, P.zero());
  for (unsigned j = 0; j < n; ++j) {
    for (unsigned c = 0; c < n; ++c) res.e[c] = P.add(res.e[c], v[c]);
    v = galois(v);
  }
  res.nonzero = false;
  for (const auto& c : res.e) res.nonzero = res.nonzero || !P.is_zero(c);
  res.galois_fixed = galois(res.e) == res.e;
  res.phi_eigen = true;
  for (unsigned c = 0; c < n; ++c) {
    res.phi_eigen = res.phi_eigen && qpow(res.e[(c + n - 1) % n]) == P.mul(lam_q[c], res.e[c]);
  }
  res.beta_equation = P.pow(res.e[0], qn - 1) == P.embed(lam.pow(n));

  // the fixed space is one-dimensional over F_{q^n}: e = a . b with a in F_{q^n}
  const auto& b = fb2.basis[0];
  res.matches_fixed_basis = false;
  if (!P.is_zero(b[0]) && res.nonzero) {
    const PolyField::Elem a = P.mul(res.e[0], P.inv(b[0]));
    bool ok = true;
    PolyField::Elem ac = a;
    for (unsigned c = 0; c < n && ok; ++c, ac = qpow(ac)) ok = res.e[c] == P.mul(ac, b[c]);
    ok = ok && ac == a;  // a^(q^n) = a
    for (FiniteField::Raw raw = 0; ok && raw < kq->size(); ++raw) {
      if (P.embed(FFElem(kq, raw)) == a) {
        res.scalar = FFElem(kq, raw);
        res.matches_fixed_basis = true;
        break;
      }
    }
  }
  return res;
}

}  // namespace lubintate

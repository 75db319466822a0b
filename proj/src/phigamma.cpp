#include "lubintate/phigamma.hpp"

#include <numeric>

#include "lubintate/arith.hpp"
#include "lubintate/errors.hpp"
#include "lubintate/reps.hpp"

namespace lubintate {
namespace {

std::vector<std::uint64_t> unit_key(const PiadicInteger& u, std::int64_t prec) {
  std::vector<std::uint64_t> key{static_cast<std::uint64_t>(u.prec()), static_cast<std::uint64_t>(prec)};
  for (const auto& c : u.pi_coordinates()) key.insert(key.end(), c.begin(), c.end());
  return key;
}

TSeries to_field(const TSeries& s, const FieldPtr& k) { return s.field()->same_as(*k) ? s : s.embed(k); }
FFElem to_field(const FFElem& x, const FieldPtr& k) { return x.field()->same_as(*k) ? x : embed(x, k); }

// Smallest field containing both F_q and the field of x.
FieldPtr field_with(const FFElem& x, const LocalField& F) {
  const auto& k = *x.field();
  if (k.characteristic() != F.p()) throw Error(ErrorCode::FieldMismatch, "coefficient has the wrong characteristic");
  return FiniteField::get(F.p(), std::lcm(k.degree(), F.f()));
}

SeriesMatrix zero_matrix(const FieldPtr& k, std::size_t n) { return SeriesMatrix(n, n, TSeries::zero(k)); }

SeriesMatrix scalar_matrix(const FFElem& c) {
  SeriesMatrix m(1, 1, TSeries::constant(c));
  return m;
}

void check_dim(const PhiGammaModule& m, const SeriesVector& v) {
  if (v.size() != m.rank()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(v.size()) + " for a module of rank " + std::to_string(m.rank()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GammaContext

GammaContext::GammaContext(FrobeniusSeries phi, std::int64_t prec) : phi_(std::move(phi)), prec_(prec) {
  phi_.validate();
  if (prec_ < 1) throw Error(ErrorCode::InvalidInput, "series precision must be positive");
}

const GammaContext::Entry& GammaContext::lookup(const PiadicInteger& u) const {
  auto key = unit_key(u, prec_);
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  // one extra coefficient so that fbar is known mod t^prec
  const TSeries g = lubintate::gamma_series(u, phi_, prec_ + 1);
  Entry e{g.with_precision(prec_), invert_unit(g.shift(-1).scale(u.residue().inv()))};
  std::lock_guard lock(mu_);
  return memo_.emplace(std::move(key), std::move(e)).first->second;
}

TSeries GammaContext::gamma_series(const PiadicInteger& u) const { return lookup(u).gamma; }
TSeries GammaContext::fbar(const PiadicInteger& u) const { return lookup(u).fbar; }

// ---------------------------------------------------------------------------
// PhiGammaModule

PhiGammaModule::PhiGammaModule(GammaContextPtr ctx, FieldPtr coeff_field, SeriesMatrix phi, GammaFn gamma,
                               std::optional<ModuleLabel> label)
    : ctx_(std::move(ctx)), k_(std::move(coeff_field)), phi_(std::move(phi)), gamma_(std::move(gamma)),
      label_(std::move(label)), memo_(std::make_shared<Memo>()) {
  if (!phi_.square() || phi_.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "phi matrix must be square");
}

SeriesMatrix PhiGammaModule::gamma(const PiadicInteger& u) const {
  auto key = unit_key(u, ctx_->prec());
  {
    std::lock_guard lock(memo_->mu);
    if (auto it = memo_->cache.find(key); it != memo_->cache.end()) return it->second;
  }
  SeriesMatrix g = gamma_(u);
  std::lock_guard lock(memo_->mu);
  return memo_->cache.emplace(std::move(key), std::move(g)).first->second;
}

TSeries PhiGammaModule::substitution(const PiadicInteger& u) const { return to_field(ctx_->gamma_series(u), k_); }

SeriesVector PhiGammaModule::basis_vector(std::size_t j) const {
  SeriesVector v(rank(), TSeries::zero(k_));
  v.at(j) = TSeries::one(k_);
  return v;
}

// ---------------------------------------------------------------------------
// constructions

PExponent gamma_exponent(std::int64_t h, std::uint64_t q, unsigned n, unsigned j) {
  const std::uint64_t m = checked_pow(q, n) - 1;
  const __int128 num = static_cast<__int128>(h) * checked_pow(q, j) * (q - 1);
  if (num > INT64_MAX || num < INT64_MIN) throw Error(ErrorCode::TooLarge, "gamma exponent overflows");
  return PExponent::make(static_cast<std::int64_t>(num), static_cast<std::int64_t>(m), as_prime_power(q)->p);
}

PhiGammaModule construct_ind(std::int64_t h, unsigned n, const GammaContextPtr& ctx) {
  const std::uint64_t q = ctx->q();
  if (!is_q_primitive(h, q, n)) throw Error(ErrorCode::NotPrimitive, "exponent " + std::to_string(h) + " is not q-primitive");
  const FieldPtr k = ctx->field()->residue_field();
  SeriesMatrix phi = zero_matrix(k, n);
  for (unsigned j = 0; j + 1 < n; ++j) phi(j + 1, j) = TSeries::one(k);
  // the sign lives in the prime field, so it disappears in characteristic 2
  const FFElem sign = FFElem::from_int(k, n % 2 == 1 ? 1 : -1);
  phi(0, n - 1) = TSeries::monomial(sign, -h * static_cast<std::int64_t>(q - 1));
  std::vector<PExponent> exps;
  for (unsigned j = 0; j < n; ++j) exps.push_back(gamma_exponent(h, q, n, j));
  auto gamma = [ctx, k, n, exps](const PiadicInteger& u) {
    const TSeries f = ctx->fbar(u);
    SeriesMatrix g = zero_matrix(k, n);
    for (unsigned j = 0; j < n; ++j) g(j, j) = one_unit_pow(f, exps[j], ctx->prec());
    return g;
  };
  return PhiGammaModule(ctx, k, std::move(phi), std::move(gamma), ModuleLabel{h, 0, FFElem::one(k)});
}

PhiGammaModule construct_char(std::int64_t s, const FFElem& lambda, const GammaContextPtr& ctx) {
  if (!lambda.field()) throw Error(ErrorCode::InvalidInput, "lambda has no field");
  if (lambda.is_zero()) throw Error(ErrorCode::ZeroLambda, "lambda must be nonzero");
  const FieldPtr k = field_with(lambda, *ctx->field());
  const FFElem lam = to_field(lambda, k);
  auto gamma = [k, s](const PiadicInteger& u) { return scalar_matrix(to_field(u.residue(), k).pow(s)); };
  return PhiGammaModule(ctx, k, scalar_matrix(lam), std::move(gamma), ModuleLabel{0, s, lam});
}

PhiGammaModule construct_twisted(std::int64_t h, std::int64_t s, const FFElem& lambda, unsigned n,
                                 const GammaContextPtr& ctx) {
  if (!lambda.field()) throw Error(ErrorCode::InvalidInput, "lambda has no field");
  if (lambda.is_zero()) throw Error(ErrorCode::ZeroLambda, "lambda must be nonzero");
  const PhiGammaModule ind = construct_ind(h, n, ctx);
  const FieldPtr k = field_with(lambda, *ctx->field());
  const FFElem lam = to_field(lambda, k);
  SeriesMatrix phi = ind.phi_matrix().map([&](const TSeries& x) { return to_field(x, k).scale(lam); });
  auto gamma = [ind, k, s](const PiadicInteger& u) {
    const FFElem c = to_field(u.residue(), k).pow(s);
    return ind.gamma(u).map([&](const TSeries& x) { return to_field(x, k).scale(c); });
  };
  return PhiGammaModule(ctx, k, std::move(phi), std::move(gamma), ModuleLabel{h, s, lam});
}

// ---------------------------------------------------------------------------
// semilinear action

SeriesVector apply_phi(const PhiGammaModule& m, const SeriesVector& v) {
  check_dim(m, v);
  const std::uint64_t q = m.context()->q();
  SeriesVector fv;
  fv.reserve(v.size());
  for (const auto& x : v) fv.push_back(frobenius_subst(to_field(x, m.coeff_field()), q, 0));
  return m.phi_matrix() * fv;
}

SeriesVector apply_gamma(const PhiGammaModule& m, const PiadicInteger& u, const SeriesVector& v) {
  check_dim(m, v);
  const TSeries g = m.substitution(u);
  SeriesVector w;
  w.reserve(v.size());
  for (const auto& x : v) w.push_back(compose(to_field(x, m.coeff_field()), g));
  return m.gamma(u) * w;
}

// ---------------------------------------------------------------------------
// checks

bool vectors_agree(const SeriesVector& a, const SeriesVector& b, std::int64_t n) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vectors of different length");
  std::int64_t v = TSeries::kExact;
  for (const auto* side : {&a, &b}) {
    for (const auto& x : *side) {
      if (!x.is_zero()) v = std::min(v, x.val());
    }
  }
  if (v == TSeries::kExact) v = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal_mod(a[i], b[i], v + n)) return false;
  }
  return true;
}

namespace {

CheckReport compare(const SeriesVector& a, const SeriesVector& b, std::int64_t n, std::int64_t index,
                    const std::string& what) {
  if (vectors_agree(a, b, n)) return {};
  CheckReport r{false, index, -1, what};
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (!vectors_agree({a[c]}, {b[c]}, n)) {
      r.component = static_cast<std::int64_t>(c);
      break;
    }
  }
  r.detail += " differs at index " + std::to_string(index) + ", component " + std::to_string(r.component);
  return r;
}

SeriesVector row(const SeriesMatrix& m, std::size_t i) {
  SeriesVector out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m(i, c));
  return out;
}

}  // namespace

CheckReport check_commutation(const PhiGammaModule& m, const PiadicInteger& u, std::int64_t n) {
  for (std::size_t j = 0; j < m.rank(); ++j) {
    const SeriesVector e = m.basis_vector(j);
    const auto lhs = apply_gamma(m, u, apply_phi(m, e));
    const auto rhs = apply_phi(m, apply_gamma(m, u, e));
    auto r = compare(lhs, rhs, n, static_cast<std::int64_t>(j), "gamma(phi(e_j)) vs phi(gamma(e_j))");
    if (!r.ok) return r;
  }
  return {};
}

CheckReport check_cocycle(const PhiGammaModule& m, const PiadicInteger& u, const PiadicInteger& v, std::int64_t n) {
  const SeriesMatrix guv = m.gamma(u * v);
  const TSeries g = m.substitution(u);
  const SeriesMatrix rhs = m.gamma(u) * m.gamma(v).map([&](const TSeries& x) { return compose(x, g); });
  for (std::size_t i = 0; i < m.rank(); ++i) {
    auto r = compare(row(guv, i), row(rhs, i), n, static_cast<std::int64_t>(i), "Gamma(uv) vs Gamma(u) Gamma(v)^u row");
    if (!r.ok) return r;
  }
  return {};
}

PhiGammaModule det_module(const PhiGammaModule& m) {
  if (m.rank() == 1) return m;
  SeriesMatrix phi(1, 1, determinant(m.phi_matrix()));
  auto gamma = [m](const PiadicInteger& u) { return SeriesMatrix(1, 1, determinant(m.gamma(u))); };
  return PhiGammaModule(m.context(), m.coeff_field(), std::move(phi), std::move(gamma));
}

CheckReport check_det_identity(const PhiGammaModule& m, const PiadicInteger& u, std::int64_t n) {
  if (!m.label()) throw Error(ErrorCode::InvalidInput, "determinant identity needs a labelled module");
  const ModuleLabel& lab = *m.label();
  const FieldPtr& k = m.coeff_field();
  const auto rank = static_cast<std::int64_t>(m.rank());
  // x = t^h e_0 ^ ... ^ e_{n-1}
  const PhiGammaModule d = base_change(det_module(m), SeriesMatrix(1, 1, TSeries::monomial(FFElem::one(k), lab.h)));
  const TSeries phi_expected = TSeries::constant(to_field(lab.lambda, k).pow(rank));
  auto r = compare({d.phi_matrix()(0, 0)}, {phi_expected}, n, 0, "phi on the determinant");
  if (!r.ok) return r;
  const TSeries gamma_expected = TSeries::constant(to_field(u.residue(), k).pow(lab.h + rank * lab.s));
  return compare({d.gamma(u)(0, 0)}, {gamma_expected}, n, 0, "gamma on the determinant");
}

PhiGammaModule base_change(const PhiGammaModule& m, const SeriesMatrix& p) {
  if (!p.square() || p.rows() != m.rank()) throw Error(ErrorCode::DimensionMismatch, "change of basis has the wrong shape");
  const FieldPtr k = m.coeff_field();
  const SeriesMatrix pk = p.map([&](const TSeries& x) { return to_field(x, k); });
  const TSeries det = determinant(pk);
  if (det.is_zero()) throw Error(ErrorCode::NotInvertible, "change of basis has zero determinant");
  // an exact polynomial determinant gets the module's relative precision
  const TSeries det_inv = det.is_exact() && !det.is_monomial() ? invert_unit(det, m.context()->prec() - det.val()) : invert_unit(det);
  const SeriesMatrix pinv = adjugate(pk, TSeries::one(k)).map([&](const TSeries& x) { return x * det_inv; });
  const std::uint64_t q = m.context()->q();
  SeriesMatrix phi = pinv * m.phi_matrix() * pk.map([&](const TSeries& x) { return frobenius_subst(x, q, 0); });
  auto gamma = [m, pk, pinv](const PiadicInteger& u) {
    const TSeries g = m.substitution(u);
    return pinv * m.gamma(u) * pk.map([&](const TSeries& x) { return compose(x, g); });
  };
  return PhiGammaModule(m.context(), k, std::move(phi), std::move(gamma));
}

PhiGammaModule corrupt(const PhiGammaModule& m, Corruption kind, std::size_t j) {
  if (j >= m.rank()) throw Error(ErrorCode::OutOfRange, "corruption index beyond the rank");
  SeriesMatrix phi = m.phi_matrix();
  PhiGammaModule::GammaFn gamma;
  switch (kind) {
    case Corruption::PhiSign:
      phi(0, m.rank() - 1) = -phi(0, m.rank() - 1);
      gamma = [m](const PiadicInteger& u) { return m.gamma(u); };
      break;
    case Corruption::GammaExponent:
      gamma = [m, j](const PiadicInteger& u) {
        SeriesMatrix g = m.gamma(u);
        g(j, j) = g(j, j) * to_field(m.context()->fbar(u), m.coeff_field());
        return g;
      };
      break;
    case Corruption::GammaSign:
      gamma = [m, j](const PiadicInteger& u) {
        SeriesMatrix g = m.gamma(u);
        g(j, j) = -g(j, j);
        return g;
      };
      break;
  }
  return PhiGammaModule(m.context(), m.coeff_field(), std::move(phi), std::move(gamma), m.label());
}

}  // namespace lubintate

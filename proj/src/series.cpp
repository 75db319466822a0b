#include "lubintate/series.hpp"

#include <algorithm>

#include "lubintate/arith.hpp"
#include "lubintate/errors.hpp"

namespace lubintate {
namespace {

using Raw = FiniteField::Raw;
constexpr std::int64_t kExact = TSeries::kExact;

std::int64_t sat(std::int64_t x) { return x >= kExact / 2 ? kExact : x; }

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
  if (a >= kExact / 2) return kExact;
  const __int128 r = static_cast<__int128>(a) * b;
  return r >= kExact / 2 ? kExact : static_cast<std::int64_t>(r);
}

// Product of power series given from t^0, truncated to n terms.
std::vector<Raw> mul_trunc(const FiniteField& k, const std::vector<Raw>& a, const std::vector<Raw>& b, std::size_t n) {
  std::vector<Raw> out(std::min(n, a.empty() || b.empty() ? 0 : a.size() + b.size() - 1), 0);
  for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
    if (a[i] == 0) continue;
    const std::size_t lim = std::min(b.size(), out.size() - i);
    for (std::size_t j = 0; j < lim; ++j) {
      if (b[j] != 0) out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
    }
  }
  return out;
}

// Inverse of a power series with nonzero constant term, n terms.
std::vector<Raw> inv_trunc(const FiniteField& k, const std::vector<Raw>& a, std::size_t n) {
  std::vector<Raw> b(n, 0);
  if (n == 0) return b;
  const Raw c0inv = k.inv(a[0]);
  b[0] = c0inv;
  for (std::size_t m = 1; m < n; ++m) {
    Raw acc = 0;
    const std::size_t lim = std::min(m, a.size() - 1);
    for (std::size_t j = 1; j <= lim; ++j) {
      if (a[j] != 0 && b[m - j] != 0) acc = k.add(acc, k.mul(a[j], b[m - j]));
    }
    b[m] = k.neg(k.mul(acc, c0inv));
  }
  return b;
}

std::vector<Raw> pow_trunc(const FiniteField& k, std::vector<Raw> a, std::uint64_t e, std::size_t n) {
  std::vector<Raw> r{1};
  r.resize(std::min<std::size_t>(1, n));
  while (e > 0) {
    if (e & 1U) r = mul_trunc(k, r, a, n);
    e >>= 1U;
    if (e > 0) a = mul_trunc(k, a, a, n);
  }
  return r;
}

}  // namespace

TSeries::TSeries(FieldPtr field, std::int64_t val, std::vector<Raw> coeffs, std::int64_t prec)
    : field_(std::move(field)), val_(val), c_(std::move(coeffs)), prec_(prec) {
  if (!field_) throw Error(ErrorCode::InvalidInput, "series without coefficient field");
  for (auto c : c_) {
    if (c >= field_->size()) throw Error(ErrorCode::InvalidInput, "series coefficient out of range");
  }
  normalize();
}

void TSeries::normalize() {
  prec_ = sat(prec_);
  if (val_ >= prec_) {
    c_.clear();
  } else if (static_cast<std::int64_t>(c_.size()) > prec_ - val_) {
    c_.resize(static_cast<std::size_t>(prec_ - val_));
  }
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    val_ = prec_;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<std::int64_t>(lead);
  }
  while (c_.back() == 0) c_.pop_back();
}

void TSeries::check_same(const TSeries& o) const {
  if (!field_ || !o.field_ || !field_->same_as(*o.field_)) {
    throw Error(ErrorCode::FieldMismatch, "series over different coefficient fields");
  }
}

TSeries TSeries::zero(FieldPtr field, std::int64_t prec) { return TSeries(std::move(field), prec, {}, prec); }

TSeries TSeries::constant(const FFElem& c, std::int64_t prec) { return TSeries(c.field(), 0, {c.raw()}, prec); }

TSeries TSeries::monomial(const FFElem& c, std::int64_t k, std::int64_t prec) {
  return TSeries(c.field(), k, {c.raw()}, prec);
}

TSeries TSeries::one(FieldPtr field, std::int64_t prec) { return TSeries(std::move(field), 0, {1}, prec); }

TSeries TSeries::t(FieldPtr field) { return TSeries(std::move(field), 1, {1}, kExact); }

TSeries::Raw TSeries::coeff(std::int64_t i) const {
  if (i >= prec_) throw Error(ErrorCode::PrecisionExhausted, "coefficient of t^" + std::to_string(i) + " is beyond the precision");
  if (c_.empty() || i < val_ || i >= val_ + static_cast<std::int64_t>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i - val_)];
}

FFElem TSeries::leading() const {
  if (c_.empty()) throw Error(ErrorCode::NotAUnit, "series is zero to its precision");
  return FFElem(field_, c_[0]);
}

std::int64_t TSeries::relative_precision() const { return is_exact() ? kExact : prec_ - val_; }

TSeries TSeries::with_precision(std::int64_t n) const {
  TSeries r = *this;
  r.prec_ = std::min(prec_, n);
  r.normalize();
  return r;
}

TSeries TSeries::operator+(const TSeries& o) const {
  check_same(o);
  const std::int64_t prec = std::min(prec_, o.prec_);
  if (c_.empty()) return o.with_precision(prec);
  if (o.c_.empty()) return with_precision(prec);
  const std::int64_t lo = std::min(val_, o.val_);
  const std::int64_t hi = std::min(prec, std::max(val_ + static_cast<std::int64_t>(c_.size()),
                                                  o.val_ + static_cast<std::int64_t>(o.c_.size())));
  std::vector<Raw> out(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo)), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const std::int64_t pos = val_ + static_cast<std::int64_t>(i) - lo;
    if (pos < static_cast<std::int64_t>(out.size())) out[static_cast<std::size_t>(pos)] = c_[i];
  }
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    const std::int64_t pos = o.val_ + static_cast<std::int64_t>(i) - lo;
    if (pos < static_cast<std::int64_t>(out.size())) {
      out[static_cast<std::size_t>(pos)] = field_->add(out[static_cast<std::size_t>(pos)], o.c_[i]);
    }
  }
  return TSeries(field_, lo, std::move(out), prec);
}

TSeries TSeries::operator-() const {
  return map_coeffs([&](Raw c) { return field_->neg(c); });
}

TSeries TSeries::operator-(const TSeries& o) const { return *this + (-o); }

TSeries TSeries::operator*(const TSeries& o) const {
  check_same(o);
  const std::int64_t prec = std::min(sat(prec_ + o.val_), sat(o.prec_ + val_));
  if (c_.empty() || o.c_.empty()) return zero(field_, prec);
  const std::int64_t v = val_ + o.val_;
  const std::int64_t window = prec - v;
  if (window <= 0) return zero(field_, prec);
  auto out = mul_trunc(*field_, c_, o.c_, static_cast<std::size_t>(std::min<std::int64_t>(window, kExact / 4)));
  return TSeries(field_, v, std::move(out), prec);
}

TSeries TSeries::scale(const FFElem& c) const {
  if (!c.field()->same_as(*field_)) throw Error(ErrorCode::FieldMismatch, "scalar from a different field");
  if (c.is_zero()) return zero(field_, prec_);
  return map_coeffs([&](Raw x) { return field_->mul(x, c.raw()); });
}

TSeries TSeries::shift(std::int64_t k) const {
  return TSeries(field_, c_.empty() ? sat(prec_ + k) : val_ + k, c_, sat(prec_ + k));
}

TSeries TSeries::pow(std::int64_t k, std::optional<std::int64_t> cap) const {
  if (k < 0) {
    std::optional<std::int64_t> inner;
    if (cap) inner = *cap + (-k - 1) * val_;
    TSeries r = invert_unit(*this, inner).pow(-k);
    return cap ? r.with_precision(*cap) : r;
  }
  TSeries result = one(field_, kExact);
  TSeries base = *this;
  if (cap && k >= 1 && !c_.empty()) base = base.with_precision(*cap - (k - 1) * val_);
  std::uint64_t e = static_cast<std::uint64_t>(k);
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return cap ? result.with_precision(*cap) : result;
}

TSeries TSeries::embed(const FieldPtr& target) const {
  if (field_->same_as(*target)) return TSeries(target, val_, c_, prec_);
  const auto emb = Embedding::get(field_, target);
  std::vector<Raw> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = (*emb)(c_[i]);
  return TSeries(target, val_, std::move(out), prec_);
}

bool TSeries::operator==(const TSeries& o) const {
  return field_ && o.field_ && field_->same_as(*o.field_) && val_ == o.val_ && prec_ == o.prec_ && c_ == o.c_;
}

// ---------------------------------------------------------------------------

TSeries invert_unit(const TSeries& a, std::optional<std::int64_t> cap) {
  if (a.is_zero()) throw Error(ErrorCode::NotAUnit, "leading coefficient is zero or unknown");
  const auto& k = *a.field();
  const std::int64_t va = a.val();
  if (a.is_monomial() && a.is_exact()) {
    TSeries r(a.field(), -va, {k.inv(a.coeffs()[0])});
    return cap ? r.with_precision(*cap) : r;
  }
  std::int64_t prec;
  if (a.is_exact()) {
    if (!cap) throw Error(ErrorCode::PrecisionExhausted, "inverse of an exact non-monomial series needs a precision cap");
    prec = *cap;
  } else {
    prec = a.prec() - 2 * va;
    if (cap) prec = std::min(prec, *cap);
  }
  const std::int64_t terms = prec + va;
  if (terms <= 0) return TSeries::zero(a.field(), prec);
  auto inv = inv_trunc(k, a.coeffs(), static_cast<std::size_t>(terms));
  return TSeries(a.field(), -va, std::move(inv), prec);
}

TSeries compose(const TSeries& f, const TSeries& g, std::optional<std::int64_t> cap) {
  if (!f.field()->same_as(*g.field())) throw Error(ErrorCode::FieldMismatch, "series over different coefficient fields");
  if (g.is_zero()) throw Error(ErrorCode::CompositionDiverges, "inner series is zero to its precision");
  const std::int64_t vg = g.val();
  if (vg <= 0) throw Error(ErrorCode::CompositionDiverges, "inner series must have positive valuation");
  const auto& k = *f.field();
  const std::int64_t vf = f.val();

  // an error of valuation prec_g in g moves a_i g^i (i != 0) by valuation (i - 1) vg + prec_g
  const std::int64_t inner_loss = vf == 0 ? 0 : (vf - 1) * vg;
  std::int64_t prec = std::min(sat_mul(f.prec(), vg), sat(g.prec() + inner_loss));
  if (cap) prec = std::min(prec, *cap);
  if (f.is_zero()) return TSeries::zero(f.field(), prec);

  if (g.is_monomial() && g.is_exact()) {
    // direct substitution t -> c t^vg
    const Raw c = g.coeffs()[0];
    std::vector<Raw> out((f.coeffs().size() - 1) * static_cast<std::size_t>(vg) + 1, 0);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
      out[i * static_cast<std::size_t>(vg)] = k.mul(f.coeffs()[i], k.pow(c, vf + static_cast<std::int64_t>(i)));
    }
    return TSeries(f.field(), vf * vg, std::move(out), prec);
  }

  std::int64_t window;  // number of terms of the unit part to compute
  const std::int64_t deg_f = vf + static_cast<std::int64_t>(f.coeffs().size()) - 1;
  const std::int64_t deg_g = vg + static_cast<std::int64_t>(g.coeffs().size()) - 1;
  if (prec >= kExact) {
    if (vf < 0) throw Error(ErrorCode::PrecisionExhausted, "exact composition with a Laurent tail needs a precision cap");
    window = deg_f * deg_g - vf * vg + 1;
  } else {
    window = prec - vf * vg;
  }
  if (window <= 0) return TSeries::zero(f.field(), prec);
  const auto n = static_cast<std::size_t>(window);

  // g = t^vg U with U a unit; f o g = t^(vf vg) U^vf S, S = sum_j a_j g^j
  std::vector<Raw> gv(static_cast<std::size_t>(std::min<std::int64_t>(vg + static_cast<std::int64_t>(g.coeffs().size()), window)), 0);
  for (std::size_t i = 0; i < g.coeffs().size() && static_cast<std::int64_t>(i) + vg < window; ++i) {
    gv[i + static_cast<std::size_t>(vg)] = g.coeffs()[i];
  }
  std::vector<Raw> u(g.coeffs().begin(), g.coeffs().begin() + static_cast<std::ptrdiff_t>(std::min(n, g.coeffs().size())));
  const auto& a = f.coeffs();
  const std::size_t last = std::min(a.size() - 1, static_cast<std::size_t>((window - 1) / vg));
  std::vector<Raw> s{a[last]};
  for (std::size_t j = last; j-- > 0;) {
    s = mul_trunc(k, s, gv, n);
    if (s.empty()) s.push_back(0);
    s[0] = k.add(s[0], a[j]);
  }
  std::vector<Raw> uf;
  if (vf >= 0) {
    uf = pow_trunc(k, u, static_cast<std::uint64_t>(vf), n);
  } else {
    uf = pow_trunc(k, inv_trunc(k, u, n), static_cast<std::uint64_t>(-vf), n);
  }
  auto out = mul_trunc(k, s, uf, n);
  return TSeries(f.field(), vf * vg, std::move(out), prec);
}

TSeries frobenius_subst(const TSeries& f, std::uint64_t q, int twist) {
  const auto pp = as_prime_power(q);
  const auto& k = *f.field();
  if (!pp || pp->p != k.characteristic()) throw Error(ErrorCode::InvalidInput, "q must be a power of the characteristic");
  const auto shift = static_cast<unsigned>(pos_mod(static_cast<std::int64_t>(pp->k) * twist, k.degree()));
  const auto qq = static_cast<std::int64_t>(q);
  const std::int64_t prec = sat_mul(f.prec(), qq);
  if (f.is_zero()) return TSeries::zero(f.field(), prec);
  std::vector<Raw> out((f.coeffs().size() - 1) * q + 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) out[i * q] = k.frobenius(f.coeffs()[i], shift);
  return TSeries(f.field(), f.val() * qq, std::move(out), prec);
}

bool equal_mod(const TSeries& a, const TSeries& b, std::int64_t n) {
  if (!a.field()->same_as(*b.field())) throw Error(ErrorCode::FieldMismatch, "series over different coefficient fields");
  if (a.prec() < n || b.prec() < n) return false;
  auto stored_end = [](const TSeries& s) { return s.is_zero() ? s.val() : s.val() + static_cast<std::int64_t>(s.coeffs().size()); };
  const std::int64_t lo = std::min(a.is_zero() ? n : a.val(), b.is_zero() ? n : b.val());
  const std::int64_t hi = std::min(n, std::max(stored_end(a), stored_end(b)));
  for (std::int64_t i = lo; i < hi; ++i) {
    if (a.coeff(i) != b.coeff(i)) return false;
  }
  return true;
}

bool agree_relative(const TSeries& a, const TSeries& b, std::int64_t rel) {
  if (a.is_exact() && b.is_exact()) return a == b;
  const std::int64_t m = std::min(a.val(), b.val());
  return equal_mod(a, b, sat(m + rel));
}

bool congruent(const TSeries& a, const TSeries& b) { return equal_mod(a, b, std::min(a.prec(), b.prec())); }

}  // namespace lubintate

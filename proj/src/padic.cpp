#include "lubintate/padic.hpp"

#include <algorithm>
#include <sstream>

#include "lubintate/arith.hpp"
#include "lubintate/errors.hpp"

namespace lubintate {
namespace {

using u128 = unsigned __int128;

unsigned vp(std::uint64_t x, std::uint32_t p, unsigned cap) {
  if (x == 0) return cap;
  unsigned v = 0;
  while (x % p == 0 && v < cap) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// LocalField

std::shared_ptr<const LocalField> LocalField::make(const LocalFieldSpec& spec) {
  return std::make_shared<const LocalField>(spec);
}

LocalField::LocalField(const LocalFieldSpec& spec) : spec_(spec) {
  if (!is_prime(spec.p)) throw Error(ErrorCode::InvalidSpec, "p must be prime");
  if (spec.f == 0 || spec.e == 0) throw Error(ErrorCode::InvalidSpec, "f and e must be positive");
  q_ = checked_pow(spec.p, spec.f);
  if (q_ > FiniteField::kMaxSize) throw Error(ErrorCode::TooLarge, "residue field too large");
  residue_ = FiniteField::get(spec.p, spec.f);

  ppow_.push_back(1);
  while (ppow_.back() <= ((std::uint64_t{1} << 62) - 1) / spec.p) ppow_.push_back(ppow_.back() * spec.p);
  digits_ = static_cast<unsigned>(ppow_.size() - 1);
  pm_ = ppow_.back();

  if (spec.eis.empty()) {
    if (spec.e != 1) throw Error(ErrorCode::InvalidSpec, "Eisenstein coefficients required for e > 1");
    eis_.push_back(w_from_int(-static_cast<std::int64_t>(spec.p)));
  } else {
    if (spec.eis.size() != spec.e) throw Error(ErrorCode::InvalidSpec, "need exactly e Eisenstein coefficients");
    for (const auto& poly : spec.eis) {
      if (poly.size() > spec.f) throw Error(ErrorCode::InvalidSpec, "Eisenstein coefficient has too many coordinates");
      Coeffs c = w_zero();
      for (std::size_t i = 0; i < poly.size(); ++i) c[i] = static_cast<std::uint64_t>(pos_mod(poly[i], static_cast<std::int64_t>(pm_)));
      eis_.push_back(std::move(c));
    }
  }
  if (w_valuation(eis_[0]) != 1) throw Error(ErrorCode::InvalidSpec, "constant Eisenstein coefficient must have p-valuation 1");
  for (std::size_t i = 1; i < eis_.size(); ++i) {
    if (w_valuation(eis_[i]) < 1) throw Error(ErrorCode::InvalidSpec, "Eisenstein coefficients must be divisible by p");
  }
  Coeffs w = eis_[0];
  for (auto& x : w) x /= spec.p;
  c0_unit_inv_ = w_inv(w);
}

bool LocalField::same_as(const LocalField& o) const {
  return spec_.p == o.spec_.p && spec_.f == o.spec_.f && spec_.e == o.spec_.e && eis_ == o.eis_;
}

std::string LocalField::describe() const {
  std::ostringstream os;
  os << "p=" << spec_.p << " f=" << spec_.f << " e=" << spec_.e;
  return os.str();
}

LocalField::Coeffs LocalField::w_from_int(std::int64_t v) const {
  Coeffs c = w_zero();
  c[0] = static_cast<std::uint64_t>(pos_mod(v, static_cast<std::int64_t>(pm_)));
  return c;
}

LocalField::Coeffs LocalField::w_add(const Coeffs& a, const Coeffs& b) const {
  Coeffs c(spec_.f);
  for (unsigned i = 0; i < spec_.f; ++i) c[i] = (a[i] + b[i]) % pm_;
  return c;
}

LocalField::Coeffs LocalField::w_sub(const Coeffs& a, const Coeffs& b) const {
  Coeffs c(spec_.f);
  for (unsigned i = 0; i < spec_.f; ++i) c[i] = (a[i] + pm_ - b[i]) % pm_;
  return c;
}

LocalField::Coeffs LocalField::w_neg(const Coeffs& a) const {
  Coeffs c(spec_.f);
  for (unsigned i = 0; i < spec_.f; ++i) c[i] = (pm_ - a[i]) % pm_;
  return c;
}

LocalField::Coeffs LocalField::w_mul(const Coeffs& a, const Coeffs& b) const {
  const unsigned f = spec_.f;
  if (f == 1) return Coeffs{static_cast<std::uint64_t>(u128{a[0]} * b[0] % pm_)};
  std::vector<std::uint64_t> prod(2 * f - 1, 0);
  for (unsigned i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < f; ++j) prod[i + j] = static_cast<std::uint64_t>((u128{a[i]} * b[j] + prod[i + j]) % pm_);
  }
  const auto& mod = unramified_modulus();
  for (unsigned d = 2 * f - 2; d >= f; --d) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    for (unsigned k = 0; k < f; ++k) {
      const std::uint64_t sub = static_cast<std::uint64_t>(u128{c} * mod[k] % pm_);
      prod[d - f + k] = (prod[d - f + k] + pm_ - sub) % pm_;
    }
    prod[d] = 0;
  }
  prod.resize(f);
  return prod;
}

LocalField::Coeffs LocalField::w_inv(const Coeffs& a) const {
  std::vector<std::uint32_t> res(spec_.f);
  for (unsigned i = 0; i < spec_.f; ++i) res[i] = static_cast<std::uint32_t>(a[i] % spec_.p);
  const auto r = residue_->from_coeffs(res);
  if (r == 0) throw Error(ErrorCode::NotAUnit, "element of W is not a unit");
  const auto rc = residue_->coeffs(residue_->inv(r));
  Coeffs x(rc.begin(), rc.end());
  // Newton: x <- x (2 - a x), doubling the number of correct digits
  const Coeffs two = w_from_int(2);
  for (unsigned correct = 1; correct < digits_; correct *= 2) x = w_mul(x, w_sub(two, w_mul(a, x)));
  return x;
}

unsigned LocalField::w_valuation(const Coeffs& a) const {
  unsigned v = digits_;
  for (auto x : a) v = std::min(v, vp(x, spec_.p, digits_));
  return v;
}

// ---------------------------------------------------------------------------
// PiadicInteger

PiadicInteger::PiadicInteger(LocalFieldPtr field, std::vector<std::uint64_t> a, int prec)
    : field_(std::move(field)), a_(std::move(a)), prec_(prec) {
  if (prec_ < 0) throw Error(ErrorCode::InvalidInput, "negative precision");
  if (prec_ > field_->max_precision()) {
    throw Error(ErrorCode::TooLarge, "precision exceeds storage capacity of " + std::to_string(field_->max_precision()));
  }
  normalize();
}

void PiadicInteger::normalize() {
  const unsigned e = field_->e(), f = field_->f();
  for (unsigned i = 0; i < e; ++i) {
    // a_i pi^i is zero mod pi^prec once p^d | a_i with e d + i >= prec
    const int need = prec_ - static_cast<int>(i);
    const unsigned d = need <= 0 ? 0 : static_cast<unsigned>((need + static_cast<int>(e) - 1) / static_cast<int>(e));
    const std::uint64_t mod = field_->p_power(std::min(d, field_->storage_digits()));
    for (unsigned j = 0; j < f; ++j) a_[i * f + j] %= mod;
  }
}

void PiadicInteger::check_same(const PiadicInteger& o) const {
  if (!field_ || !o.field_ || (field_ != o.field_ && !field_->same_as(*o.field_))) {
    throw Error(ErrorCode::SpecMismatch, "p-adic operands belong to different local fields");
  }
}

PiadicInteger PiadicInteger::zero(LocalFieldPtr field, int prec) {
  const std::size_t n = std::size_t{field->e()} * field->f();
  return PiadicInteger(std::move(field), std::vector<std::uint64_t>(n, 0), prec);
}

PiadicInteger PiadicInteger::one(LocalFieldPtr field, int prec) { return from_int(std::move(field), 1, prec); }

PiadicInteger PiadicInteger::from_int(LocalFieldPtr field, std::int64_t v, int prec) {
  std::vector<std::uint64_t> a(std::size_t{field->e()} * field->f(), 0);
  a[0] = static_cast<std::uint64_t>(pos_mod(v, static_cast<std::int64_t>(field->storage_modulus())));
  return PiadicInteger(std::move(field), std::move(a), prec);
}

PiadicInteger PiadicInteger::uniformizer(LocalFieldPtr field, int prec) {
  const unsigned f = field->f();
  std::vector<std::uint64_t> a(std::size_t{field->e()} * f, 0);
  if (field->e() >= 2) {
    a[f] = 1;
  } else {
    const auto pi = field->w_neg(field->eisenstein()[0]);
    std::copy(pi.begin(), pi.end(), a.begin());
  }
  return PiadicInteger(std::move(field), std::move(a), prec);
}

PiadicInteger PiadicInteger::from_pi_basis(LocalFieldPtr field, const std::vector<std::vector<std::int64_t>>& coeffs,
                                           int prec) {
  const unsigned e = field->e(), f = field->f();
  const auto pm = static_cast<std::int64_t>(field->storage_modulus());
  // accumulate with pi^i for i >= e folded back through the Eisenstein relation
  PiadicInteger acc = zero(field, field->max_precision());
  PiadicInteger pi_power = one(field, field->max_precision());
  const PiadicInteger pi = uniformizer(field, field->max_precision());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].size() > f) throw Error(ErrorCode::InvalidInput, "coefficient has too many coordinates");
    std::vector<std::uint64_t> a(std::size_t{e} * f, 0);
    for (std::size_t j = 0; j < coeffs[i].size(); ++j) a[j] = static_cast<std::uint64_t>(pos_mod(coeffs[i][j], pm));
    acc = acc + PiadicInteger(field, std::move(a), field->max_precision()) * pi_power;
    pi_power = pi_power * pi;
  }
  return acc.with_precision(prec);
}

PiadicInteger PiadicInteger::teichmuller(LocalFieldPtr field, const FFElem& a, int prec) {
  if (!a.field()->same_as(*field->residue_field())) throw Error(ErrorCode::FieldMismatch, "digit not in residue field");
  if (prec < 1) throw Error(ErrorCode::PrecisionExhausted, "Teichmuller lift needs precision at least 1");
  const auto c = a.coeffs();
  std::vector<std::uint64_t> v(std::size_t{field->e()} * field->f(), 0);
  std::copy(c.begin(), c.end(), v.begin());
  PiadicInteger x(field, std::move(v), prec);
  // x -> x^q contracts toward the unique q-power-fixed lift
  for (int iter = 0; iter <= prec + 2; ++iter) {
    PiadicInteger next = x.pow(field->q());
    if (next == x) return x;
    x = std::move(next);
  }
  throw Error(ErrorCode::SearchFailed, "Teichmuller iteration did not stabilize");
}

int PiadicInteger::valuation() const {
  const unsigned e = field_->e(), f = field_->f();
  int v = prec_;
  for (unsigned i = 0; i < e; ++i) {
    unsigned w = field_->storage_digits();
    for (unsigned j = 0; j < f; ++j) w = std::min(w, vp(a_[i * f + j], field_->p(), field_->storage_digits()));
    if (w < field_->storage_digits()) v = std::min(v, static_cast<int>(e * w + i));
  }
  return v;
}

PiadicInteger PiadicInteger::operator+(const PiadicInteger& o) const {
  check_same(o);
  const std::uint64_t pm = field_->storage_modulus();
  std::vector<std::uint64_t> c(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) c[i] = (a_[i] + o.a_[i]) % pm;
  return PiadicInteger(field_, std::move(c), std::min(prec_, o.prec_));
}

PiadicInteger PiadicInteger::operator-(const PiadicInteger& o) const {
  check_same(o);
  const std::uint64_t pm = field_->storage_modulus();
  std::vector<std::uint64_t> c(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) c[i] = (a_[i] + pm - o.a_[i]) % pm;
  return PiadicInteger(field_, std::move(c), std::min(prec_, o.prec_));
}

PiadicInteger PiadicInteger::operator-() const {
  const std::uint64_t pm = field_->storage_modulus();
  std::vector<std::uint64_t> c(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) c[i] = (pm - a_[i]) % pm;
  return PiadicInteger(field_, std::move(c), prec_);
}

std::vector<LocalField::Coeffs> PiadicInteger::pi_coordinates() const {
  const unsigned e = field_->e(), f = field_->f();
  std::vector<LocalField::Coeffs> out(e);
  for (unsigned i = 0; i < e; ++i) out[i].assign(a_.begin() + i * f, a_.begin() + (i + 1) * f);
  return out;
}

PiadicInteger PiadicInteger::operator*(const PiadicInteger& o) const {
  check_same(o);
  const LocalField& F = *field_;
  const unsigned e = F.e(), f = F.f();
  const auto x = pi_coordinates(), y = o.pi_coordinates();
  std::vector<LocalField::Coeffs> prod(2 * e - 1, F.w_zero());
  for (unsigned i = 0; i < e; ++i) {
    for (unsigned j = 0; j < e; ++j) prod[i + j] = F.w_add(prod[i + j], F.w_mul(x[i], y[j]));
  }
  // pi^k = -pi^{k-e} sum_j c_j pi^j for k >= e, folded from the top
  for (unsigned k = 2 * e - 2; k >= e; --k) {
    for (unsigned j = 0; j < e; ++j) {
      prod[k - e + j] = F.w_sub(prod[k - e + j], F.w_mul(prod[k], F.eisenstein()[j]));
    }
  }
  std::vector<std::uint64_t> c(std::size_t{e} * f);
  for (unsigned i = 0; i < e; ++i) std::copy(prod[i].begin(), prod[i].end(), c.begin() + i * f);
  return PiadicInteger(field_, std::move(c), std::min(prec_, o.prec_));
}

PiadicInteger PiadicInteger::pow(std::uint64_t e) const {
  PiadicInteger result = one(field_, prec_);
  PiadicInteger base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

PiadicInteger PiadicInteger::inverse() const {
  if (!is_unit()) throw Error(ErrorCode::NotAUnit, "inverse of a non-unit");
  const auto r = residue().inv().coeffs();
  std::vector<std::uint64_t> v(a_.size(), 0);
  std::copy(r.begin(), r.end(), v.begin());
  PiadicInteger y(field_, std::move(v), prec_);
  const PiadicInteger two = from_int(field_, 2, prec_);
  for (int correct = 1; correct < prec_; correct *= 2) y = y * (two - *this * y);
  return y;
}

PiadicInteger PiadicInteger::divide_by_pi_exact() const {
  if (prec_ < 1) throw Error(ErrorCode::PrecisionExhausted, "cannot divide an element of precision 0 by pi");
  if (valuation() < 1) throw Error(ErrorCode::NotDivisible, "element is not divisible by pi");
  const LocalField& F = *field_;
  const unsigned e = F.e(), f = F.f();
  const auto x = pi_coordinates();
  std::vector<LocalField::Coeffs> out(e, F.w_zero());
  for (unsigned i = 0; i + 1 < e; ++i) out[i] = x[i + 1];
  // a_0 / pi = (a_0 / p) (p / pi),  p / pi = -w^{-1} (pi^{e-1} + c_{e-1} pi^{e-2} + ... + c_1)
  LocalField::Coeffs a0p = x[0];
  for (auto& c : a0p) c /= F.p();
  const LocalField::Coeffs scale = F.w_neg(F.w_mul(a0p, F.c0_unit_inverse()));
  out[e - 1] = F.w_add(out[e - 1], scale);
  for (unsigned j = 0; j + 1 < e; ++j) out[j] = F.w_add(out[j], F.w_mul(scale, F.eisenstein()[j + 1]));
  std::vector<std::uint64_t> c(std::size_t{e} * f);
  for (unsigned i = 0; i < e; ++i) std::copy(out[i].begin(), out[i].end(), c.begin() + i * f);
  return PiadicInteger(field_, std::move(c), prec_ - 1);
}

PiadicInteger PiadicInteger::times_pi() const {
  const int cap = field_->max_precision();
  // the stored representative is exact mod pi^prec, so its product with pi
  // is exact mod pi^(prec+1)
  const int k = std::min(prec_ + 1, cap);
  return assume_precision(k) * uniformizer(field_, k);
}

FFElem PiadicInteger::residue() const {
  if (prec_ < 1) throw Error(ErrorCode::PrecisionExhausted, "residue of an element of precision 0");
  const unsigned f = field_->f();
  std::vector<std::uint32_t> c(f);
  for (unsigned j = 0; j < f; ++j) c[j] = static_cast<std::uint32_t>(a_[j] % field_->p());
  return FFElem::from_coeffs(field_->residue_field(), c);
}

std::vector<FFElem> PiadicInteger::digits() const {
  std::vector<FFElem> out;
  PiadicInteger x = *this;
  for (int i = 0; i < prec_; ++i) {
    const FFElem d = x.residue();
    out.push_back(d);
    if (i + 1 == prec_) break;
    x = (x - teichmuller(field_, d, x.prec())).divide_by_pi_exact();
  }
  return out;
}

PiadicInteger PiadicInteger::with_precision(int k) const {
  if (k < 0) throw Error(ErrorCode::InvalidInput, "negative precision");
  return PiadicInteger(field_, a_, std::min(k, prec_));
}

PiadicInteger PiadicInteger::assume_precision(int k) const {
  if (k < 0) throw Error(ErrorCode::InvalidInput, "negative precision");
  return PiadicInteger(field_, a_, std::min(k, field_->max_precision()));
}

bool PiadicInteger::congruent(const PiadicInteger& o) const {
  check_same(o);
  const int k = std::min(prec_, o.prec_);
  return with_precision(k).a_ == o.with_precision(k).a_;
}

bool PiadicInteger::operator==(const PiadicInteger& o) const {
  check_same(o);
  return prec_ == o.prec_ && a_ == o.a_;
}

}  // namespace lubintate

#include "lubintate/ffield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "lubintate/arith.hpp"
#include "lubintate/errors.hpp"

namespace lubintate {
namespace {

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(mod_pow(a, p - 2, p));
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly poly_mod(FpPoly a, const FpPoly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint32_t lead_inv = inv_mod_p(f.back(), p);
  while (a.size() > df) {
    const std::size_t shift = a.size() - 1 - df;
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * f[i]) % p);
    }
    trim(a);
  }
  return a;
}

FpPoly poly_mul(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += std::uint64_t{a[i]} * b[j];
    if ((i & 63U) == 63U) {
      for (auto& x : acc) x %= p;
    }
  }
  FpPoly out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p);
  trim(out);
  return out;
}

FpPoly poly_powmod(FpPoly base, std::uint64_t e, const FpPoly& f, std::uint32_t p) {
  FpPoly result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1U) result = poly_mod(poly_mul(result, base, p), f, p);
    e >>= 1U;
    if (e > 0) base = poly_mod(poly_mul(base, base, p), f, p);
  }
  return result;
}

FpPoly poly_sub(FpPoly a, const FpPoly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Solves in place; returns pivot columns.
std::vector<std::size_t> rref(FpMatrix& rows, std::size_t ncols, std::uint32_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const std::uint64_t inv = inv_mod_p(rows[r][c], p);
    for (auto& x : rows[r]) x = static_cast<std::uint32_t>(x * inv % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint64_t f = rows[i][c];
      for (std::size_t k = 0; k < ncols; ++k) {
        rows[i][k] = static_cast<std::uint32_t>((rows[i][k] + (p - f) * rows[r][k]) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

template <class T, class Make>
std::shared_ptr<const T> cached(std::map<std::tuple<std::uint32_t, unsigned>, std::shared_ptr<const T>>& cache,
                                std::mutex& mu, std::uint32_t p, unsigned m, Make make) {
  {
    std::lock_guard lock(mu);
    auto it = cache.find({p, m});
    if (it != cache.end()) return it->second;
  }
  auto built = make();
  std::lock_guard lock(mu);
  return cache.emplace(std::make_tuple(p, m), std::move(built)).first->second;
}

}  // namespace

bool is_irreducible(const FpPoly& f_in, std::uint32_t p) {
  FpPoly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  if (m == 1) return true;
  if (f[0] == 0) return false;
  // x^(p^i) mod f for i = 1..m
  std::vector<FpPoly> frob(m + 1);
  frob[0] = FpPoly{0, 1};
  for (unsigned i = 1; i <= m; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
  const FpPoly x = poly_mod(FpPoly{0, 1}, f, p);
  if (poly_sub(frob[m], x, p).size() != 0) return false;
  for (auto r : prime_factors(m)) {
    FpPoly g = poly_gcd(f, poly_sub(frob[m / r], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

FpPoly find_irreducible(std::uint32_t p, unsigned m) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidInput, "characteristic must be prime");
  if (m == 0) throw Error(ErrorCode::InvalidInput, "field degree must be positive");
  FpPoly f(m + 1, 0);
  f[m] = 1;
  while (true) {
    if (is_irreducible(f, p)) return f;
    // increment (c_0, ..., c_{m-1}) as a base-p integer
    unsigned i = 0;
    while (i < m) {
      if (++f[i] < p) break;
      f[i] = 0;
      ++i;
    }
    if (i == m) throw Error(ErrorCode::SearchFailed, "no irreducible polynomial found");
  }
}

// ---------------------------------------------------------------------------

std::shared_ptr<const FiniteField> FiniteField::get(std::uint32_t p, unsigned m) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, unsigned>, std::shared_ptr<const FiniteField>> cache;
  return cached<FiniteField>(cache, mu, p, m, [&] { return std::make_shared<const FiniteField>(p, m); });
}

FiniteField::FiniteField(std::uint32_t p, unsigned m) : p_(p), m_(m) {
  const std::uint64_t size = checked_pow(p, m);
  if (size > kMaxSize) throw Error(ErrorCode::TooLarge, "field too large for table arithmetic");
  size_ = static_cast<std::uint32_t>(size);
  modulus_ = find_irreducible(p, m);

  neg_.resize(size_);
  for (Raw a = 0; a < size_; ++a) {
    auto c = coeffs(a);
    for (auto& x : c) x = (p_ - x) % p_;
    neg_[a] = from_coeffs(c);
  }

  const std::uint64_t group = size_ - 1;
  const auto factors = prime_factors(group);
  auto slow_pow = [&](Raw a, std::uint64_t e) {
    Raw r = 1;
    while (e > 0) {
      if (e & 1U) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1U;
    }
    return r;
  };
  generator_ = 0;
  for (Raw c = 1; c < size_; ++c) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(c, group / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = c;
      break;
    }
  }
  if (generator_ == 0) throw Error(ErrorCode::SearchFailed, "no primitive element");

  exp_.resize(2 * group);
  log_.assign(size_, 0);
  Raw x = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = x;
    exp_[i + group] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, generator_);
  }

  if (p_ != 2 && size_ <= 1024) {
    add_.resize(std::size_t{size_} * size_);
    for (Raw a = 0; a < size_; ++a) {
      auto ca = coeffs(a);
      for (Raw b = 0; b < size_; ++b) {
        auto cb = coeffs(b);
        for (unsigned i = 0; i < m_; ++i) cb[i] = (ca[i] + cb[i]) % p_;
        add_[std::size_t{a} * size_ + b] = from_coeffs(cb);
      }
    }
  }
}

FiniteField::Raw FiniteField::slow_mul(Raw a, Raw b) const {
  FpPoly pa = coeffs(a), pb = coeffs(b);
  trim(pa);
  trim(pb);
  FpPoly r = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
  r.resize(m_, 0);
  return from_coeffs(r);
}

FiniteField::Raw FiniteField::add(Raw a, Raw b) const {
  if (p_ == 2) return a ^ b;
  if (!add_.empty()) return add_[std::size_t{a} * size_ + b];
  Raw out = 0, scale = 1;
  for (unsigned i = 0; i < m_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

FiniteField::Raw FiniteField::neg(Raw a) const { return neg_[a]; }

FiniteField::Raw FiniteField::inv(Raw a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t group = size_ - 1;
  return exp_[(group - log_[a]) % group];
}

FiniteField::Raw FiniteField::pow(Raw a, std::int64_t e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return 0;
  }
  const std::int64_t group = size_ - 1;
  const __int128 prod = static_cast<__int128>(log_[a]) * (e % group);
  const std::int64_t idx = static_cast<std::int64_t>(((prod % group) + group) % group);
  return exp_[static_cast<std::size_t>(idx)];
}

FiniteField::Raw FiniteField::frobenius(Raw a, unsigned k) const {
  if (a == 0) return 0;
  const std::uint64_t group = size_ - 1;
  return exp_[static_cast<std::size_t>(mod_pow(p_, k, group) * log_[a] % group)];
}

FiniteField::Raw FiniteField::from_int(std::int64_t v) const {
  return static_cast<Raw>(pos_mod(v, p_));
}

FiniteField::Raw FiniteField::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() > m_) throw Error(ErrorCode::InvalidInput, "too many coefficients for field degree");
  Raw out = 0, scale = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= p_) throw Error(ErrorCode::InvalidInput, "coefficient out of range");
    out += c[i] * scale;
    scale *= p_;
  }
  return out;
}

std::vector<std::uint32_t> FiniteField::coeffs(Raw a) const {
  std::vector<std::uint32_t> out(m_);
  for (unsigned i = 0; i < m_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

std::uint32_t FiniteField::log(Raw a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "log of zero");
  return log_[a];
}

std::uint64_t FiniteField::order(Raw a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "order of zero");
  const std::uint64_t group = size_ - 1;
  return group / std::gcd<std::uint64_t>(log_[a], group);
}

// ---------------------------------------------------------------------------

FFElem::FFElem(FieldPtr field, FiniteField::Raw raw) : field_(std::move(field)), raw_(raw) {
  if (!field_) throw Error(ErrorCode::InvalidInput, "element without field");
  if (raw_ >= field_->size()) throw Error(ErrorCode::InvalidInput, "raw element out of range");
}

FFElem FFElem::from_int(FieldPtr field, std::int64_t v) {
  auto raw = field->from_int(v);
  return FFElem(std::move(field), raw);
}

FFElem FFElem::from_coeffs(FieldPtr field, std::span<const std::uint32_t> coeffs) {
  auto raw = field->from_coeffs(coeffs);
  return FFElem(std::move(field), raw);
}

void FFElem::check_same(const FFElem& o) const {
  if (!field_ || !o.field_ || !field_->same_as(*o.field_)) {
    throw Error(ErrorCode::FieldMismatch, "operands live in different fields");
  }
}

FFElem FFElem::operator+(const FFElem& o) const {
  check_same(o);
  return FFElem(field_, field_->add(raw_, o.raw_));
}
FFElem FFElem::operator-(const FFElem& o) const {
  check_same(o);
  return FFElem(field_, field_->sub(raw_, o.raw_));
}
FFElem FFElem::operator-() const { return FFElem(field_, field_->neg(raw_)); }
FFElem FFElem::operator*(const FFElem& o) const {
  check_same(o);
  return FFElem(field_, field_->mul(raw_, o.raw_));
}
FFElem FFElem::operator/(const FFElem& o) const {
  check_same(o);
  return FFElem(field_, field_->mul(raw_, field_->inv(o.raw_)));
}
FFElem FFElem::inv() const { return FFElem(field_, field_->inv(raw_)); }
FFElem FFElem::pow(std::int64_t e) const { return FFElem(field_, field_->pow(raw_, e)); }

bool FFElem::operator==(const FFElem& o) const {
  check_same(o);
  return raw_ == o.raw_;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Embedding> Embedding::get(const FieldPtr& source, const FieldPtr& target) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, unsigned, unsigned>, std::shared_ptr<const Embedding>> cache;
  const auto key = std::make_tuple(source->characteristic(), source->degree(), target->degree());
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const Embedding>(source, target);
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(built)).first->second;
}

Embedding::Embedding(FieldPtr source, FieldPtr target) : source_(std::move(source)), target_(std::move(target)) {
  if (source_->characteristic() != target_->characteristic() || target_->degree() % source_->degree() != 0) {
    throw Error(ErrorCode::NoEmbedding, "source degree does not divide target degree");
  }
  if (source_->same_as(*target_)) {
    image_of_generator_ = source_->generator();
    return;
  }
  const auto& mod = source_->modulus();
  auto eval = [&](const std::vector<std::uint32_t>& poly, FiniteField::Raw x) {
    FiniteField::Raw acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) {
      acc = target_->add(target_->mul(acc, x), target_->from_int(poly[i]));
    }
    return acc;
  };
  FiniteField::Raw root = 0;
  bool found = false;
  for (FiniteField::Raw r = 0; r < target_->size(); ++r) {
    if (eval(mod, r) == 0) {
      root = r;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::NoEmbedding, "source modulus has no root in target");
  image_of_generator_ = eval(source_->coeffs(source_->generator()), root);
}

FiniteField::Raw Embedding::operator()(FiniteField::Raw a) const {
  if (a == 0) return 0;
  if (source_->same_as(*target_)) return a;
  return target_->pow(image_of_generator_, source_->log(a));
}

FFElem Embedding::operator()(const FFElem& a) const {
  if (!a.field()->same_as(*source_)) throw Error(ErrorCode::FieldMismatch, "element not in embedding source");
  return FFElem(target_, (*this)(a.raw()));
}

FFElem embed(const FFElem& x, const FieldPtr& target) {
  if (x.field()->same_as(*target)) return FFElem(target, x.raw());
  return (*Embedding::get(x.field(), target))(x);
}

FFElem frobenius_power(const FFElem& x, std::int64_t j, std::uint64_t q) {
  const auto pp = as_prime_power(q);
  if (!pp || pp->p != x.field()->characteristic()) {
    throw Error(ErrorCode::InvalidInput, "q must be a power of the characteristic");
  }
  const unsigned m = x.field()->degree();
  // sigma_q^j = x -> x^(p^(k j)), periodic with period m in the exponent of p
  const std::int64_t shift = pos_mod(static_cast<std::int64_t>(pp->k) * j, m);
  return FFElem(x.field(), x.field()->frobenius(x.raw(), static_cast<unsigned>(shift)));
}

bool in_subfield(const FFElem& x, unsigned sub_degree) {
  return x.field()->frobenius(x.raw(), sub_degree) == x.raw();
}

FFElem solve_root_of_sign(unsigned n, std::uint64_t q) {
  const auto pp = as_prime_power(q);
  if (!pp || n == 0) throw Error(ErrorCode::InvalidInput, "q must be a prime power and n positive");
  const bool sign_is_one = (pp->p == 2) || (n % 2 == 1);
  if (sign_is_one) return FFElem::one(FiniteField::get(pp->p, pp->k * n));
  auto field = FiniteField::get(pp->p, 2 * pp->k * n);
  const std::int64_t e = static_cast<std::int64_t>(checked_pow(q, n) - 1);
  const auto minus_one = field->neg(1);
  for (FiniteField::Raw x = 1; x < field->size(); ++x) {
    if (field->pow(x, e) == minus_one) return FFElem(field, x);
  }
  throw Error(ErrorCode::SearchFailed, "no root of the sign equation");
}

bool fq_independent(std::span<const FFElem> xs, std::uint64_t q) {
  if (xs.empty()) return true;
  const auto pp = as_prime_power(q);
  const auto& field = xs[0].field();
  if (!pp || pp->p != field->characteristic() || field->degree() % pp->k != 0) {
    throw Error(ErrorCode::InvalidInput, "F_q is not a subfield");
  }
  const FFElem theta = embed(FFElem(FiniteField::get(pp->p, pp->k), FiniteField::get(pp->p, pp->k)->generator()), field);
  FpMatrix rows;
  for (const auto& x : xs) {
    FFElem scaled = x;
    for (unsigned i = 0; i < pp->k; ++i) {
      rows.push_back(scaled.coeffs());
      scaled = scaled * theta;
    }
  }
  return fp_rank(rows, pp->p) == xs.size() * pp->k;
}

FFElem normal_basis_element(unsigned n, std::uint64_t q) {
  const auto pp = as_prime_power(q);
  if (!pp || n == 0) throw Error(ErrorCode::InvalidInput, "q must be a prime power and n positive");
  auto field = FiniteField::get(pp->p, pp->k * n);
  for (FiniteField::Raw raw = 1; raw < field->size(); ++raw) {
    std::vector<FFElem> conj;
    FFElem x(field, raw);
    for (unsigned j = 0; j < n; ++j) conj.push_back(frobenius_power(x, j, q));
    if (fq_independent(conj, q)) return x;
  }
  throw Error(ErrorCode::SearchFailed, "no normal basis element");
}

// ---------------------------------------------------------------------------

std::size_t fp_rank(FpMatrix rows, std::uint32_t p) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  return rref(rows, ncols, p).size();
}

FpMatrix fp_kernel(FpMatrix a, std::size_t ncols, std::uint32_t p) {
  const auto pivots = rref(a, ncols, p);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  FpMatrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(ncols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - a[r][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const PolyField> PolyField::get(std::uint32_t p, unsigned m) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, unsigned>, std::shared_ptr<const PolyField>> cache;
  return cached<PolyField>(cache, mu, p, m, [&] { return std::make_shared<const PolyField>(p, m); });
}

PolyField::PolyField(std::uint32_t p, unsigned m) : p_(p), m_(m), modulus_(find_irreducible(p, m)) {}

PolyField::Elem PolyField::one() const {
  Elem e(m_, 0);
  e[0] = 1;
  return e;
}

bool PolyField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

PolyField::Elem PolyField::add(const Elem& a, const Elem& b) const {
  Elem out(m_);
  for (unsigned i = 0; i < m_; ++i) out[i] = (a[i] + b[i]) % p_;
  return out;
}

PolyField::Elem PolyField::sub(const Elem& a, const Elem& b) const {
  Elem out(m_);
  for (unsigned i = 0; i < m_; ++i) out[i] = (a[i] + p_ - b[i]) % p_;
  return out;
}

PolyField::Elem PolyField::neg(const Elem& a) const {
  Elem out(m_);
  for (unsigned i = 0; i < m_; ++i) out[i] = (p_ - a[i]) % p_;
  return out;
}

PolyField::Elem PolyField::scale(const Elem& a, std::uint32_t c) const {
  Elem out(m_);
  for (unsigned i = 0; i < m_; ++i) out[i] = static_cast<std::uint32_t>(std::uint64_t{a[i]} * (c % p_) % p_);
  return out;
}

PolyField::Elem PolyField::mul(const Elem& a, const Elem& b) const {
  FpPoly r = poly_mod(poly_mul(a, b, p_), modulus_, p_);
  r.resize(m_, 0);
  return r;
}

PolyField::Elem PolyField::pow(const Elem& a, std::uint64_t e) const {
  Elem result = one(), base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

PolyField::Elem PolyField::frobenius(const Elem& a, unsigned k) const {
  Elem out = a;
  for (unsigned i = 0; i < k % m_; ++i) out = pow(out, p_);
  return out;
}

PolyField::Elem PolyField::inv(const Elem& a) const {
  if (is_zero(a)) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  // extended Euclid on (modulus, a)
  FpPoly r0 = modulus_, r1 = a;
  trim(r1);
  FpPoly s0{}, s1{1};
  while (!r1.empty()) {
    // quotient of r0 by r1
    FpPoly q, r = r0;
    const std::uint32_t lead_inv = inv_mod_p(r1.back(), p_);
    while (r.size() >= r1.size() && !r.empty()) {
      const std::size_t shift = r.size() - r1.size();
      const std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t{r.back()} * lead_inv % p_);
      if (q.size() <= shift) q.resize(shift + 1, 0);
      q[shift] = c;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        r[shift + i] = static_cast<std::uint32_t>((r[shift + i] + std::uint64_t{p_ - c} * r1[i]) % p_);
      }
      trim(r);
    }
    FpPoly s2 = poly_sub(s0, poly_mul(q, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant
  const std::uint32_t c = inv_mod_p(r0[0], p_);
  Elem out = poly_mod(s0, modulus_, p_);
  out.resize(m_, 0);
  return scale(out, c);
}

PolyField::Elem PolyField::embed(const FFElem& x) const {
  const auto& src = *x.field();
  const unsigned a = src.degree();
  if (src.characteristic() != p_ || m_ % a != 0) throw Error(ErrorCode::NoEmbedding, "degree does not divide");
  // subfield of size p^a: kernel of z -> z^(p^a) - z
  FpMatrix cols;
  for (unsigned i = 0; i < m_; ++i) {
    Elem basis(m_, 0);
    basis[i] = 1;
    cols.push_back(sub(frobenius(basis, a), basis));
  }
  FpMatrix rows(m_, std::vector<std::uint32_t>(m_));
  for (unsigned r = 0; r < m_; ++r) {
    for (unsigned c = 0; c < m_; ++c) rows[r][c] = cols[c][r];
  }
  const FpMatrix sub_basis = fp_kernel(rows, m_, p_);
  const auto& mod = src.modulus();
  auto eval = [&](const std::vector<std::uint32_t>& poly, const Elem& z) {
    Elem acc = zero();
    for (std::size_t i = poly.size(); i-- > 0;) {
      acc = mul(acc, z);
      acc[0] = (acc[0] + poly[i]) % p_;
    }
    return acc;
  };
  // enumerate the subfield in a fixed order until a root appears
  std::vector<std::uint32_t> digits(sub_basis.size(), 0);
  const std::uint64_t count = checked_pow(p_, static_cast<unsigned>(sub_basis.size()));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t t = idx;
    Elem z = zero();
    for (std::size_t i = 0; i < sub_basis.size(); ++i) {
      z = add(z, scale(sub_basis[i], static_cast<std::uint32_t>(t % p_)));
      t /= p_;
    }
    if (is_zero(eval(mod, z))) return eval(x.coeffs(), z);
  }
  throw Error(ErrorCode::NoEmbedding, "no root of subfield modulus");
}

// ---------------------------------------------------------------------------

unsigned splitting_degree(const Matrix<FFElem>& m, std::uint64_t q) {
  if (!m.square() || m.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "fixed-point matrix must be square");
  const auto pp = as_prime_power(q);
  const auto& field = m(0, 0).field();
  if (!pp || pp->p != field->characteristic()) throw Error(ErrorCode::InvalidInput, "q must be a power of p");
  if (determinant(m).is_zero()) throw Error(ErrorCode::SingularMatrix, "fixed-point matrix is singular");
  const std::size_t n = m.rows();
  const unsigned a = field->degree();
  auto sigma_pow = [&](const Matrix<FFElem>& x, std::int64_t k) {
    return x.map([&](const FFElem& e) { return frobenius_power(e, k, q); });
  };
  Matrix<FFElem> norm = m;
  constexpr unsigned kMaxSteps = 200000;
  for (unsigned k = 1; k <= kMaxSteps; ++k) {
    if ((pp->k * k) % a == 0) {
      bool identity = true;
      for (std::size_t i = 0; i < n && identity; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (norm(i, j).raw() != (i == j ? 1U : 0U)) {
            identity = false;
            break;
          }
        }
      }
      if (identity) return pp->k * k;
    }
    norm = norm * sigma_pow(m, k);
  }
  throw Error(ErrorCode::TooLarge, "splitting field degree exceeds search bound");
}

FixedBasis semilinear_fixed_basis(const Matrix<FFElem>& m, std::uint64_t q, unsigned field_degree) {
  const unsigned minimal = splitting_degree(m, q);
  if (field_degree == 0) field_degree = minimal;
  if (field_degree % minimal != 0) throw Error(ErrorCode::InvalidInput, "field degree must be a multiple of the splitting degree");
  const auto pp = *as_prime_power(q);
  const std::uint32_t p = pp.p;
  const std::size_t n = m.rows();
  auto big = PolyField::get(p, field_degree);
  const unsigned D = field_degree;

  Matrix<PolyField::Elem> mb = m.map([&](const FFElem& e) { return big->embed(e); });
  // columns of v -> M sigma(v) - v over F_p^(n D)
  const std::size_t dim = n * D;
  FpMatrix rows(dim, std::vector<std::uint32_t>(dim, 0));
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<PolyField::Elem> v(n, big->zero());
    v[col / D][col % D] = 1;
    std::vector<PolyField::Elem> sv;
    for (const auto& x : v) sv.push_back(big->frobenius(x, pp.k));
    for (std::size_t i = 0; i < n; ++i) {
      PolyField::Elem acc = big->neg(v[i]);
      for (std::size_t k = 0; k < n; ++k) acc = big->add(acc, big->mul(mb(i, k), sv[k]));
      for (unsigned c = 0; c < D; ++c) rows[i * D + c][col] = acc[c];
    }
  }
  const FpMatrix kernel = fp_kernel(rows, dim, p);
  if (kernel.size() != n * pp.k) {
    throw Error(ErrorCode::SearchFailed, "fixed space has wrong dimension over F_p");
  }

  const PolyField::Elem theta = big->embed(FFElem(FiniteField::get(p, pp.k), FiniteField::get(p, pp.k)->generator()));
  FixedBasis out{big, q, {}};
  FpMatrix span;
  for (const auto& w : kernel) {
    std::vector<PolyField::Elem> vec(n);
    for (std::size_t i = 0; i < n; ++i) vec[i].assign(w.begin() + static_cast<std::ptrdiff_t>(i * D), w.begin() + static_cast<std::ptrdiff_t>((i + 1) * D));
    FpMatrix trial = span;
    std::vector<PolyField::Elem> scaled = vec;
    for (unsigned s = 0; s < pp.k; ++s) {
      std::vector<std::uint32_t> flat;
      for (const auto& x : scaled) flat.insert(flat.end(), x.begin(), x.end());
      trial.push_back(std::move(flat));
      for (auto& x : scaled) x = big->mul(x, theta);
    }
    if (fp_rank(trial, p) == span.size() + pp.k) {
      span = std::move(trial);
      out.basis.push_back(std::move(vec));
      if (out.basis.size() == n) break;
    }
  }
  if (out.basis.size() != n) throw Error(ErrorCode::SearchFailed, "could not extract an F_q-basis");
  return out;
}

}  // namespace lubintate

#include "lubintate/lubin_tate.hpp"

#include <algorithm>

#include "lubintate/errors.hpp"

namespace lubintate {

FrobeniusSeries FrobeniusSeries::standard(LocalFieldPtr field) {
  const int k = field->max_precision();
  const auto q = static_cast<std::size_t>(field->q());
  FrobeniusSeries phi{field, std::vector<PiadicInteger>(q + 1, PiadicInteger::zero(field, k))};
  phi.coeffs[1] = PiadicInteger::uniformizer(field, k);
  phi.coeffs[q] = phi.coeffs[q] + PiadicInteger::one(field, k);
  return phi;
}

void FrobeniusSeries::validate() const {
  if (!field) throw Error(ErrorCode::InvalidInput, "Frobenius series without local field");
  const auto q = field->q();
  if (coeffs.size() < 2 || coeffs.size() <= q) throw Error(ErrorCode::InvalidInput, "Frobenius series has degree below q");
  if (precision() < 1) throw Error(ErrorCode::PrecisionExhausted, "Frobenius series coefficients carry no precision");
  if (!coeffs[0].is_zero()) throw Error(ErrorCode::InvalidInput, "Frobenius series must have zero constant term");
  if (!coeffs[1].congruent(PiadicInteger::uniformizer(field, field->max_precision()))) {
    throw Error(ErrorCode::InvalidInput, "linear coefficient of the Frobenius series must be pi");
  }
  for (std::size_t k = 2; k < coeffs.size(); ++k) {
    const auto r = coeffs[k].residue();
    if (k == q ? !r.is_one() : !r.is_zero()) throw Error(ErrorCode::InvalidInput, "Frobenius series is not t^q mod pi");
  }
}

int FrobeniusSeries::precision() const {
  int p = field ? field->max_precision() : 0;
  for (const auto& c : coeffs) p = std::min(p, c.prec());
  return p;
}

int working_precision(std::uint64_t q, std::int64_t n) {
  int log = 0;
  for (std::uint64_t v = 1; static_cast<std::int64_t>(std::min<std::uint64_t>(v, std::uint64_t{1} << 62)) < n; v *= q) ++log;
  return log + 8;
}

std::vector<PiadicInteger> lt_multiplication_at(const PiadicInteger& a, const FrobeniusSeries& phi, std::int64_t n,
                                                int k) {
  const LocalFieldPtr& F = phi.field;
  if (!a.field() || !a.field()->same_as(*F)) throw Error(ErrorCode::SpecMismatch, "element and Frobenius series differ in field");
  if (n < 1) throw Error(ErrorCode::InvalidInput, "series precision must be positive");
  k = std::min(k, F->max_precision());
  const auto N = static_cast<std::size_t>(n);
  const std::size_t D = phi.degree();
  const int phi_prec = phi.precision();
  const PiadicInteger zero = PiadicInteger::zero(F, k);

  // All arithmetic runs on representatives at precision k; each coefficient
  // carries its own guaranteed precision g[m] separately.
  std::vector<PiadicInteger> ph(D + 1, zero);
  for (std::size_t i = 0; i <= D; ++i) ph[i] = phi.coeffs[i].assume_precision(k);

  // phipow[j][m] = [t^m] phi^j for j < N, m < N
  std::vector<std::vector<PiadicInteger>> phipow(N, std::vector<PiadicInteger>(N, zero));
  if (N > 1) {
    for (std::size_t m = 1; m <= std::min(D, N - 1); ++m) phipow[1][m] = ph[m];
  }
  for (std::size_t j = 2; j < N; ++j) {
    for (std::size_t m = j; m < N; ++m) {
      PiadicInteger acc = zero;
      for (std::size_t i = 1; i <= D && i < m; ++i) {
        if (m - i < j - 1) break;
        acc = acc + ph[i] * phipow[j - 1][m - i];
      }
      phipow[j][m] = acc;
    }
  }

  std::vector<PiadicInteger> c(N, zero);
  std::vector<int> g(N, k);
  if (N > 1) {
    g[1] = std::min(k, a.prec());
    c[1] = a.with_precision(g[1]).assume_precision(k);
  }
  // pw[kk][m] = [t^m] A^kk for 2 <= kk <= D, where A = [a](t)
  std::vector<std::vector<PiadicInteger>> pw(D + 1, std::vector<PiadicInteger>(N, zero));
  const PiadicInteger pi = PiadicInteger::uniformizer(F, k);
  const PiadicInteger one = PiadicInteger::one(F, k);
  PiadicInteger pi_pow = one;
  for (std::size_t m = 2; m < N; ++m) {
    // (pi^m - pi) c_m = sum_{kk >= 2} phi_kk [t^m] A^kk - sum_{j < m} c_j [t^m] phi^j
    PiadicInteger lhs = zero;
    for (std::size_t kk = 2; kk <= D && kk <= m; ++kk) {
      PiadicInteger acc = zero;
      for (std::size_t i = 1; i + kk - 1 <= m; ++i) acc = acc + c[i] * (kk == 2 ? c[m - i] : pw[kk - 1][m - i]);
      pw[kk][m] = acc;
      lhs = lhs + ph[kk] * acc;
    }
    PiadicInteger rhs = zero;
    // errors in c_j enter with valuation g_j + 1 through phi(A) (phi' = 0 mod pi)
    // and g_j + v([t^m] phi^j) through A(phi)
    int bound = std::min(k, phi_prec);
    for (std::size_t j = 1; j < m; ++j) {
      const PiadicInteger& coef = phipow[j][m];
      rhs = rhs + c[j] * coef;
      bound = std::min(bound, g[j] + std::min(1, coef.valuation()));
    }
    pi_pow = pi_pow * pi;
    const int gm = bound - 1;
    if (gm < 1) {
      throw Error(ErrorCode::PrecisionExhausted, "coefficient " + std::to_string(m) +
                                                     " of [a](t) lost all precision at working precision " +
                                                     std::to_string(k));
    }
    const PiadicInteger quotient = (lhs - rhs).divide_by_pi_exact().assume_precision(k);
    c[m] = (quotient * (pi_pow - one).inverse()).with_precision(gm).assume_precision(k);
    g[m] = gm;
  }
  std::vector<PiadicInteger> out(N, PiadicInteger::zero(F, k));
  for (std::size_t m = 1; m < N; ++m) out[m] = c[m].with_precision(g[m]);
  return out;
}

std::vector<PiadicInteger> lt_multiplication(const PiadicInteger& a, const FrobeniusSeries& phi, std::int64_t n) {
  const int cap = phi.field->max_precision();
  int k = std::min(working_precision(phi.field->q(), n), cap);
  for (int attempt = 0;; ++attempt) {
    try {
      return lt_multiplication_at(a, phi, n, k);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::PrecisionExhausted || attempt == 3 || k >= cap) throw;
      k = std::min(2 * k, cap);
    }
  }
}

TSeries reduce_mod_pi(const std::vector<PiadicInteger>& coeffs, std::int64_t n) {
  if (coeffs.empty()) throw Error(ErrorCode::InvalidInput, "no coefficients to reduce");
  const auto& k = coeffs[0].field()->residue_field();
  const std::size_t len = std::min<std::size_t>(coeffs.size(), static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  if (static_cast<std::int64_t>(coeffs.size()) < n) {
    throw Error(ErrorCode::PrecisionExhausted, "only " + std::to_string(coeffs.size()) + " coefficients for precision " + std::to_string(n));
  }
  std::vector<FiniteField::Raw> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (coeffs[i].prec() < 1) {
      throw Error(ErrorCode::PrecisionExhausted, "coefficient " + std::to_string(i) + " is not known mod pi");
    }
    out[i] = coeffs[i].residue().raw();
  }
  return TSeries(k, 0, std::move(out), n);
}

TSeries gamma_series(const PiadicInteger& u, const FrobeniusSeries& phi, std::int64_t n) {
  if (u.prec() < 1 || u.residue().is_zero()) throw Error(ErrorCode::NotAUnit, "gamma needs a unit");
  return reduce_mod_pi(lt_multiplication(u, phi, n), n);
}

TSeries fbar(const PiadicInteger& u, const FrobeniusSeries& phi, std::int64_t n) {
  const TSeries g = gamma_series(u, phi, n + 1);
  // g / (ubar t) is a 1-unit known mod t^n
  const TSeries unit = g.shift(-1).scale(u.residue().inv());
  return invert_unit(unit);
}

}  // namespace lubintate

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lubintate/errors.hpp"
#include "lubintate/lubin_tate.hpp"

using namespace lubintate;

namespace {

LocalFieldPtr spec(std::uint32_t p, unsigned f, unsigned e) {
  if (e == 1) return LocalField::make({p, f, 1, {}});
  return LocalField::make({p, f, e, {{-static_cast<std::int64_t>(p)}, {0}}});
}

PiadicInteger random_unit(const LocalFieldPtr& F, std::mt19937_64& rng, int prec) {
  while (true) {
    std::vector<std::vector<std::int64_t>> c(F->e(), std::vector<std::int64_t>(F->f()));
    for (auto& v : c)
      for (auto& x : v) x = static_cast<std::int64_t>(rng() % 100000);
    auto u = PiadicInteger::from_pi_basis(F, c, prec);
    if (u.is_unit()) return u;
  }
}

// Binomial expansion (1+t)^a - 1 over Z/2^62 for small a >= 0, and for a = -1.
std::vector<std::int64_t> binomial_minus_one(std::int64_t a, std::size_t n) {
  std::vector<std::int64_t> out(n, 0);
  if (a < 0) {
    for (std::size_t m = 1; m < n; ++m) out[m] = (m % 2 == 0) ? 1 : -1;
    return out;
  }
  std::vector<std::int64_t> row{1};
  for (std::int64_t i = 0; i < a; ++i) {
    std::vector<std::int64_t> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = next;
  }
  for (std::size_t m = 1; m < n && m < row.size(); ++m) out[m] = row[m];
  return out;
}

}  // namespace

TEST_CASE("working precision") {
  CHECK(working_precision(2, 128) == 15);
  CHECK(working_precision(3, 1) == 8);
  CHECK(working_precision(4, 64) == 11);
}

TEST_CASE("Frobenius series validation") {
  auto F = spec(3, 1, 1);
  auto phi = FrobeniusSeries::standard(F);
  CHECK_NOTHROW(phi.validate());
  CHECK(phi.degree() == 3);
  auto bad = phi;
  bad.coeffs[2] = PiadicInteger::one(F, 20);
  CHECK_THROWS_AS(bad.validate(), Error);
  auto bad2 = phi;
  bad2.coeffs[1] = PiadicInteger::from_int(F, 6, 20);
  CHECK_THROWS_AS(bad2.validate(), Error);
  auto alt = phi;
  alt.coeffs[2] = PiadicInteger::from_int(F, 3, 30);
  CHECK_NOTHROW(alt.validate());
}

TEST_CASE("closed form for Q_2 with phi = 2t + t^2") {
  auto F = spec(2, 1, 1);
  auto phi = FrobeniusSeries::standard(F);
  for (std::int64_t a : {3, 5, 7, -1}) {
    auto c = lt_multiplication(PiadicInteger::from_int(F, a, 40), phi, 128);
    auto oracle = binomial_minus_one(a, 128);
    REQUIRE(c.size() == 128);
    for (std::size_t m = 1; m < 128; ++m) {
      CHECK(c[m].prec() >= 1);
      CHECK(c[m].congruent(PiadicInteger::from_int(F, oracle[m], F->max_precision())));
    }
  }
  auto g3 = reduce_mod_pi(lt_multiplication(PiadicInteger::from_int(F, 3, 20), phi, 10), 10);
  auto k = F->residue_field();
  CHECK(g3 == TSeries(k, 1, {1, 1, 1}, 10));
}

TEST_CASE("[pi] is phi and Teichmuller lifts act linearly") {
  for (auto F : {spec(2, 1, 1), spec(3, 1, 1), spec(3, 2, 1), spec(2, 1, 2), spec(2, 2, 1)}) {
    auto phi = FrobeniusSeries::standard(F);
    const int N = 40;
    auto c = lt_multiplication(PiadicInteger::uniformizer(F, F->max_precision()), phi, N);
    for (std::size_t m = 1; m < static_cast<std::size_t>(N); ++m) {
      const auto expected = m <= phi.degree() ? phi.coeffs[m] : PiadicInteger::zero(F, F->max_precision());
      CHECK(c[m].congruent(expected));
      CHECK(c[m].prec() >= 1);
    }
    CHECK(reduce_mod_pi(phi.coeffs, static_cast<std::int64_t>(phi.degree() + 1)) ==
          TSeries(F->residue_field(), static_cast<std::int64_t>(F->q()), {1}, static_cast<std::int64_t>(phi.degree() + 1)));
    const auto& k = F->residue_field();
    for (FiniteField::Raw r = 1; r < k->size(); ++r) {
      FFElem a(k, r);
      auto tau = PiadicInteger::teichmuller(F, a, 20);
      auto ct = lt_multiplication(tau, phi, N);
      CHECK(ct[1].congruent(tau));
      for (std::size_t m = 2; m < static_cast<std::size_t>(N); ++m) CHECK(ct[m].is_zero());
      CHECK(gamma_series(tau, phi, N) == TSeries::monomial(a, 1, N));
      auto fb = fbar(tau, phi, N);
      CHECK(fb == TSeries::one(k, N));
    }
  }
}

TEST_CASE("precision loss stays logarithmic and is sound") {
  auto F = spec(3, 1, 1);
  auto phi = FrobeniusSeries::standard(F);
  std::mt19937_64 rng(3);
  auto u = random_unit(F, rng, 30);
  auto lo = lt_multiplication_at(u, phi, 100, 12);
  auto hi = lt_multiplication_at(u, phi, 100, 30);
  for (std::size_t m = 1; m < 100; ++m) {
    CHECK(lo[m].prec() >= 12 - 5);
    CHECK(lo[m].congruent(hi[m]));
  }
}

TEST_CASE("fbar example over Q_2") {
  auto F = spec(2, 1, 1);
  auto phi = FrobeniusSeries::standard(F);
  auto f = fbar(PiadicInteger::from_int(F, 3, 30), phi, 30);
  CHECK(f.prec() == 30);
  // t / (t + t^2 + t^3) = 1 / (1 + t + t^2)
  for (int i = 0; i < 30; ++i) CHECK(f.coeff(i) == (i % 3 == 2 ? 0u : 1u));
  CHECK(fbar(PiadicInteger::one(F, 30), phi, 30) == TSeries::one(F->residue_field(), 30));
  CHECK(gamma_series(PiadicInteger::one(F, 30), phi, 30) == TSeries(F->residue_field(), 1, {1}, 30));
  CHECK_THROWS_AS(gamma_series(PiadicInteger::from_int(F, 2, 30), phi, 10), Error);
}

TEST_CASE("homomorphism, inverse and commutation with Frobenius") {
  std::mt19937_64 rng(42);
  for (auto F : {spec(2, 1, 1), spec(3, 1, 1), spec(3, 2, 1), spec(2, 1, 2)}) {
    auto phi = FrobeniusSeries::standard(F);
    const std::int64_t N = 48;
    for (int i = 0; i < 4; ++i) {
      auto u = random_unit(F, rng, F->max_precision());
      auto v = random_unit(F, rng, F->max_precision());
      auto gu = gamma_series(u, phi, N), gv = gamma_series(v, phi, N);
      CHECK(equal_mod(compose(gu, gv), gamma_series(u * v, phi, N), N));
      CHECK(equal_mod(compose(gu, gamma_series(u.inverse(), phi, N)), TSeries::t(F->residue_field()), N));
      const auto q = F->q();
      auto lhs = compose(gu, TSeries::monomial(FFElem::one(F->residue_field()), static_cast<std::int64_t>(q)));
      auto rhs = gu.pow(static_cast<std::int64_t>(q));
      CHECK(equal_mod(lhs, rhs, N));
      // cocycle
      auto fu = fbar(u, phi, N), fv = fbar(v, phi, N);
      CHECK(equal_mod(fbar(u * v, phi, N), fu * compose(fv, gu), N));
    }
  }
}

TEST_CASE("alternative Frobenius series") {
  auto F = spec(3, 1, 1);
  auto phi = FrobeniusSeries::standard(F);
  phi.coeffs[2] = PiadicInteger::from_int(F, 3, F->max_precision());
  phi.validate();
  std::mt19937_64 rng(8);
  auto u = random_unit(F, rng, F->max_precision());
  auto v = random_unit(F, rng, F->max_precision());
  const std::int64_t N = 40;
  auto gu = gamma_series(u, phi, N), gv = gamma_series(v, phi, N);
  CHECK(equal_mod(compose(gu, gv), gamma_series(u * v, phi, N), N));
  // [u] commutes with phi itself
  auto cu = lt_multiplication(u, phi, N);
  auto cpi = lt_multiplication(PiadicInteger::uniformizer(F, F->max_precision()), phi, N);
  for (std::size_t m = 1; m <= phi.degree(); ++m) CHECK(cpi[m].congruent(phi.coeffs[m]));
}

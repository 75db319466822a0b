#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lubintate/errors.hpp"
#include "lubintate/series.hpp"

using namespace lubintate;

namespace {

using Raw = FiniteField::Raw;

TSeries poly(const FieldPtr& k, std::int64_t val, std::vector<Raw> c, std::int64_t prec = TSeries::kExact) {
  return TSeries(k, val, std::move(c), prec);
}

TSeries random_series(const FieldPtr& k, std::mt19937_64& rng, std::int64_t val, std::int64_t prec, bool unit_lead = true) {
  std::vector<Raw> c(static_cast<std::size_t>(prec - val));
  for (auto& x : c) x = static_cast<Raw>(rng() % k->size());
  if (unit_lead && c[0] == 0) c[0] = 1;
  return TSeries(k, val, std::move(c), prec);
}

// Dense schoolbook product without any precision bookkeeping.
std::vector<Raw> dense_mul(const FiniteField& k, const std::vector<Raw>& a, const std::vector<Raw>& b) {
  std::vector<Raw> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = k.add(out[i + j], k.mul(a[i], b[j]));
  return out;
}

}  // namespace

TEST_CASE("arithmetic examples") {
  auto f3 = FiniteField::get(3, 1);
  auto a = poly(f3, 0, {1, 1}) * poly(f3, 0, {1, 2});
  CHECK(a == poly(f3, 0, {1, 0, 2}));
  auto tinv = poly(f3, -1, {1});
  CHECK(tinv * TSeries::t(f3) == TSeries::one(f3));
  auto f2 = FiniteField::get(2, 1);
  auto s = poly(f2, 0, {1, 1});
  CHECK(s * s == poly(f2, 0, {1, 0, 1}));
  CHECK_THROWS_AS(s + TSeries::one(f3), Error);
}

TEST_CASE("precision propagation") {
  auto k = FiniteField::get(3, 1);
  auto a = poly(k, 2, {1, 2}, 10);
  auto b = poly(k, -1, {2, 1, 1}, 7);
  CHECK((a + b).prec() == 7);
  CHECK((a * b).prec() == std::min(10 - 1, 7 + 2));
  CHECK((a * b).val() == 1);
  auto z = TSeries::zero(k, 5) * a;
  CHECK(z.is_zero());
  CHECK(z.prec() == 7);
  CHECK_THROWS_AS(a.coeff(10), Error);
  CHECK(a.coeff(9) == 0);
}

TEST_CASE("invert unit") {
  auto f2 = FiniteField::get(2, 1);
  auto a = poly(f2, 0, {1, 1}, 40);
  auto inv = invert_unit(a);
  CHECK(inv.prec() == 40);
  CHECK(equal_mod(a * inv, TSeries::one(f2), 40));
  for (int i = 0; i < 40; ++i) CHECK(inv.coeff(i) == 1);
  auto c = TSeries::constant(FFElem(FiniteField::get(5, 1), 3));
  CHECK(invert_unit(c) == TSeries::constant(FFElem(FiniteField::get(5, 1), 2)));
  auto b = poly(f2, 0, {1, 1, 1}, 30);
  auto binv = invert_unit(b);
  // (1 + t + t^2)^{-1} = (1 + t) sum t^{3i}
  for (int i = 0; i < 30; ++i) CHECK(binv.coeff(i) == (i % 3 == 2 ? 0u : 1u));
  CHECK_THROWS_AS(invert_unit(TSeries::zero(f2, 5)), Error);
  CHECK_THROWS_AS(invert_unit(poly(f2, 0, {1, 1})), Error);
  auto capped = invert_unit(poly(f2, 0, {1, 1}), 12);
  CHECK(capped.prec() == 12);
  // Laurent valuations
  auto l = poly(f2, 2, {1, 1}, 20);
  auto linv = invert_unit(l);
  CHECK(linv.val() == -2);
  CHECK(linv.prec() == 16);
  CHECK(equal_mod(l * linv, TSeries::one(f2), 18));
}

TEST_CASE("invert is an involution up to precision") {
  std::mt19937_64 rng(31);
  for (auto k : {FiniteField::get(2, 2), FiniteField::get(3, 2), FiniteField::get(5, 1)}) {
    for (int i = 0; i < 20; ++i) {
      auto f = random_series(k, rng, static_cast<std::int64_t>(rng() % 5) - 2, 30);
      auto g = invert_unit(invert_unit(f));
      CHECK(congruent(f, g));
      CHECK(g.prec() == f.prec());
    }
  }
}

TEST_CASE("composition examples") {
  auto f2 = FiniteField::get(2, 1);
  std::mt19937_64 rng(1);
  auto f = random_series(f2, rng, -3, 25);
  CHECK(compose(f, TSeries::t(f2)) == f);
  auto f5 = FiniteField::get(5, 1);
  FFElem c(f5, 3);
  auto r = compose(poly(f5, -1, {1}), TSeries::monomial(c, 1));
  CHECK(r == TSeries::monomial(c.inv(), -1));
  CHECK(compose(poly(f2, 0, {1, 1}), poly(f2, 2, {1})) == poly(f2, 0, {1, 0, 1}));
  CHECK_THROWS_AS(compose(f, TSeries::one(f2)), Error);
  // val_g = 1: precision min(prec_f, prec_g)
  auto g = poly(f2, 1, {1, 1, 0, 1}, 20);
  auto h = poly(f2, 0, {1, 0, 1, 1}, 30);
  CHECK(compose(h, g).prec() == 20);
  // exact polynomial composition against direct expansion
  auto e = compose(poly(f2, 0, {1, 1, 1}), poly(f2, 1, {1, 1}));
  // 1 + (t+t^2) + (t+t^2)^2 = 1 + t + t^2 + t^2 + t^4 = 1 + t + t^4
  CHECK(e == poly(f2, 0, {1, 1, 0, 0, 1}));
}

TEST_CASE("composition is associative") {
  std::mt19937_64 rng(77);
  for (auto k : {FiniteField::get(2, 2), FiniteField::get(3, 1), FiniteField::get(3, 2)}) {
    for (int i = 0; i < 15; ++i) {
      auto f = random_series(k, rng, static_cast<std::int64_t>(rng() % 4) - 1, 20);
      auto g = random_series(k, rng, 1 + static_cast<std::int64_t>(rng() % 2), 22);
      auto h = random_series(k, rng, 1, 21);
      auto lhs = compose(compose(f, g), h);
      auto rhs = compose(f, compose(g, h));
      const auto n = std::min(lhs.prec(), rhs.prec());
      CHECK(n > f.val() * g.val());
      CHECK(equal_mod(lhs, rhs, n));
    }
  }
}

TEST_CASE("composition against naive substitution") {
  std::mt19937_64 rng(5);
  auto k = FiniteField::get(3, 1);
  for (int i = 0; i < 10; ++i) {
    auto f = random_series(k, rng, 0, 12);
    auto g = random_series(k, rng, 1, 15);
    auto r = compose(f, g);
    // naive: sum a_i g^i with dense products truncated at 12
    std::vector<Raw> acc(12, 0);
    std::vector<Raw> gp{1};
    std::vector<Raw> gd(15, 0);
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) gd[j + 1] = g.coeffs()[j];
    for (std::int64_t j = 0; j < 12; ++j) {
      for (std::size_t m = 0; m < gp.size() && m < 12; ++m) acc[m] = k->add(acc[m], k->mul(f.coeff(j), gp[m]));
      gp = dense_mul(*k, gp, gd);
      if (gp.size() > 12) gp.resize(12);
    }
    CHECK(r.prec() == 12);
    CHECK(equal_mod(r, TSeries(k, 0, acc, 12), 12));
  }
}

TEST_CASE("frobenius substitution") {
  auto f3 = FiniteField::get(3, 1);
  CHECK(frobenius_subst(TSeries::t(f3), 9, 0) == poly(f3, 9, {1}));
  auto f2 = FiniteField::get(2, 1);
  auto s = poly(f2, 0, {1, 1});
  CHECK(frobenius_subst(s, 2, 1) == s * s);
  auto f4 = FiniteField::get(2, 2);
  FFElem a(f4, 2);
  auto r = frobenius_subst(TSeries::constant(a), 2, 1);
  CHECK(r.coeff(0) == (a * a).raw());
  CHECK(frobenius_subst(TSeries::constant(a), 2, 0).coeff(0) == a.raw());
  std::mt19937_64 rng(13);
  for (auto [k, q] : {std::pair{f4, 2ull}, {f4, 4ull}, {FiniteField::get(3, 2), 3ull}, {FiniteField::get(3, 2), 9ull}}) {
    for (int i = 0; i < 20; ++i) {
      auto f = random_series(k, rng, 0, 64);
      auto g = random_series(k, rng, 0, 64);
      auto phi = frobenius_subst(f, q, 1);
      CHECK(phi.prec() == static_cast<std::int64_t>(64 * q));
      CHECK(congruent(phi, f.pow(static_cast<std::int64_t>(q))));
      CHECK(congruent(frobenius_subst(f * g, q, 1), phi * frobenius_subst(g, q, 1)));
      CHECK(congruent(frobenius_subst(f * g, q, 0), frobenius_subst(f, q, 0) * frobenius_subst(g, q, 0)));
    }
  }
}

TEST_CASE("recomputation at doubled precision truncates to the same result") {
  std::mt19937_64 rng(101);
  auto k = FiniteField::get(3, 2);
  for (int i = 0; i < 10; ++i) {
    auto f2 = random_series(k, rng, -2, 80);
    auto g2 = random_series(k, rng, 1, 80);
    auto f1 = f2.with_precision(40), g1 = g2.with_precision(40);
    auto pipeline = [&](const TSeries& f, const TSeries& g) { return invert_unit(compose(f * f, g)) * f; };
    auto lo = pipeline(f1, g1), hi = pipeline(f2, g2);
    CHECK(hi.with_precision(lo.prec()) == lo);
  }
}

TEST_CASE("relative agreement") {
  auto k = FiniteField::get(2, 1);
  auto a = poly(k, -6, {1, 1, 0, 1}, 4);
  auto b = poly(k, -6, {1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1}, 9);
  CHECK(agree_relative(a, b, 10));
  CHECK_FALSE(agree_relative(a, b, 11));
  CHECK_FALSE(agree_relative(poly(k, 0, {1}, 3), poly(k, 0, {1, 1}, 3), 3));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lubintate/errors.hpp"
#include "lubintate/unit_exp.hpp"

using namespace lubintate;

namespace {

using Raw = FiniteField::Raw;

TSeries random_one_unit(const FieldPtr& k, std::mt19937_64& rng, std::int64_t prec) {
  std::vector<Raw> c(static_cast<std::size_t>(prec));
  for (auto& x : c) x = static_cast<Raw>(rng() % k->size());
  c[0] = 1;
  return TSeries(k, 0, std::move(c), prec);
}

// Integer power by repeated multiplication only.
TSeries naive_pow(const TSeries& f, std::int64_t a, std::int64_t n) {
  TSeries r = TSeries::one(f.field(), n);
  for (std::int64_t i = 0; i < a; ++i) r = (r * f).with_precision(n);
  return r;
}

}  // namespace

TEST_CASE("exponent normalization") {
  auto s = PExponent::make(6, -4, 5);
  CHECK(s.num == -3);
  CHECK(s.den == 2);
  CHECK_THROWS_AS(PExponent::make(1, 3, 3), Error);
  try {
    PExponent::make(1, 6, 2);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DenominatorDivisibleByP);
  }
  CHECK(PExponent::make(1, 3, 2) + PExponent::make(2, 3, 2) == PExponent::integer(1, 2));
}

TEST_CASE("digit examples") {
  CHECK(padic_digits(PExponent::integer(5, 2), 6) == std::vector<std::uint32_t>{1, 0, 1, 0, 0, 0});
  CHECK(padic_digits(PExponent::integer(-1, 3), 5) == std::vector<std::uint32_t>{2, 2, 2, 2, 2});
  CHECK(padic_digits(PExponent::make(1, 3, 2), 4) == std::vector<std::uint32_t>{1, 1, 0, 1});
}

TEST_CASE("digits satisfy den * value = num mod p^count") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto num = static_cast<std::int64_t>(rng() % 2001) - 1000;
      auto den = static_cast<std::int64_t>(rng() % 300) + 1;
      if (den % p == 0) ++den;
      const auto s = PExponent::make(num, den, p);
      const auto d = padic_digits(s, 12);
      __int128 value = 0, pp = 1;
      for (auto x : d) {
        value += pp * x;
        pp *= p;
      }
      const __int128 lhs = (static_cast<__int128>(s.den) * value - s.num) % pp;
      CHECK(lhs == 0);
    }
  }
}

TEST_CASE("trivial exponents") {
  auto k = FiniteField::get(3, 2);
  std::mt19937_64 rng(3);
  const auto f = random_one_unit(k, rng, 20);
  CHECK(one_unit_pow(f, PExponent::integer(0, 3), 20) == TSeries::one(k, 20));
  CHECK(one_unit_pow(f, PExponent::integer(1, 3), 20) == f);
  CHECK_THROWS_AS(one_unit_pow(f.shift(1), PExponent::integer(1, 3), 20), Error);
  CHECK_THROWS_AS(one_unit_pow(f.scale(FFElem::from_int(k, 2)), PExponent::integer(1, 3), 20), Error);
}

TEST_CASE("inverse of 1+t over F_2") {
  auto k = FiniteField::get(2, 1);
  const TSeries f(k, 0, {1, 1});
  const auto g = one_unit_pow(f, PExponent::integer(-1, 2), 32);
  CHECK(g == invert_unit(f, 32));
  for (std::int64_t i = 0; i < 32; ++i) CHECK(g.coeff(i) == 1);
}

TEST_CASE("cube root of 1+t over F_2") {
  auto k = FiniteField::get(2, 1);
  const TSeries f(k, 0, {1, 1});
  const auto g = one_unit_pow(f, PExponent::make(1, 3, 2), 8);
  CHECK(equal_mod(naive_pow(g, 3, 8), f.with_precision(8), 8));
}

TEST_CASE("denominator clearing against repeated multiplication") {
  std::mt19937_64 rng(19);
  for (auto [p, m] : {std::pair{2u, 1u}, {2u, 2u}, {3u, 1u}, {5u, 1u}}) {
    auto k = FiniteField::get(p, m);
    for (int trial = 0; trial < 10; ++trial) {
      const std::int64_t n = 40;
      const auto f = random_one_unit(k, rng, n);
      auto b = static_cast<std::int64_t>(rng() % 9) + 1;
      if (b % p == 0) ++b;
      const auto a = static_cast<std::int64_t>(rng() % 13);
      const auto g = one_unit_pow(f, PExponent::make(a, b, p), n);
      CHECK(congruent(naive_pow(g, b, n), naive_pow(f, a, n)));
    }
  }
}

TEST_CASE("homomorphism in exponent and base") {
  std::mt19937_64 rng(23);
  auto k = FiniteField::get(3, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t n = 50;
    const auto f = random_one_unit(k, rng, n);
    const auto g = random_one_unit(k, rng, n);
    const auto s1 = PExponent::make(static_cast<std::int64_t>(rng() % 50) - 25, rng() % 2 ? 1 : 2, 3);
    const auto s2 = PExponent::make(static_cast<std::int64_t>(rng() % 50) - 25, 4, 3);
    CHECK(congruent(one_unit_pow(f, s1 + s2, n), one_unit_pow(f, s1, n) * one_unit_pow(f, s2, n)));
    CHECK(congruent(one_unit_pow(f * g, s1, n), one_unit_pow(f, s1, n) * one_unit_pow(g, s1, n)));
  }
}

TEST_CASE("precision is min of target and input") {
  auto k = FiniteField::get(2, 1);
  std::mt19937_64 rng(5);
  const auto f = random_one_unit(k, rng, 10);
  CHECK(one_unit_pow(f, PExponent::make(1, 3, 2), 30).prec() == 10);
  CHECK(one_unit_pow(f, PExponent::make(1, 3, 2), 7).prec() == 7);
  // the low part only depends on f mod t^N
  CHECK(congruent(one_unit_pow(f, PExponent::make(5, 7, 2), 10), one_unit_pow(f.with_precision(6), PExponent::make(5, 7, 2), 10)));
}

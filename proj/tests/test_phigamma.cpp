#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "lubintate/errors.hpp"
#include "lubintate/phigamma.hpp"
#include "lubintate/reps.hpp"

using namespace lubintate;

namespace {

LocalFieldPtr spec(std::uint32_t p, unsigned f, unsigned e) {
  if (e == 1) return LocalField::make({p, f, 1, {}});
  return LocalField::make({p, f, e, {{-static_cast<std::int64_t>(p)}, {0}}});
}

GammaContextPtr context(const LocalFieldPtr& F, std::int64_t prec) {
  return GammaContext::make(FrobeniusSeries::standard(F), prec);
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

PiadicInteger one_plus_pi(const LocalFieldPtr& F, int prec) {
  return PiadicInteger::one(F, prec) + PiadicInteger::uniformizer(F, prec);
}

std::vector<std::int64_t> canonical_hs(std::uint64_t q, unsigned n) {
  std::vector<std::int64_t> out;
  if (n == 1) {
    for (std::uint64_t h = 1; h + 2 <= q; ++h) out.push_back(static_cast<std::int64_t>(h));
    return out;
  }
  for (const auto& c : enumerate_classes(q, n)) out.push_back(static_cast<std::int64_t>(c.h_min));
  return out;
}

TSeries naive_pow(const TSeries& f, int a) {
  TSeries r = TSeries::one(f.field(), f.prec());
  for (int i = 0; i < a; ++i) r = r * f;
  return r;
}

}  // namespace

TEST_CASE("gamma exponents") {
  CHECK(gamma_exponent(1, 2, 2, 0) == PExponent::make(1, 3, 2));
  CHECK(gamma_exponent(1, 2, 2, 1) == PExponent::make(2, 3, 2));
  CHECK(gamma_exponent(4, 3, 2, 0) == PExponent::integer(1, 3));
  CHECK(gamma_exponent(1, 4, 3, 2) == PExponent::make(48, 63, 2));
}

TEST_CASE("induced module over Q_2, q=2, n=2, h=1") {
  auto F = spec(2, 1, 1);
  auto ctx = context(F, 40);
  auto m = construct_ind(1, 2, ctx);
  auto k = F->residue_field();
  const auto& phi = m.phi_matrix();
  CHECK(phi(0, 0).is_zero());
  CHECK(phi(1, 0) == TSeries::one(k));
  CHECK(phi(0, 1) == TSeries::monomial(FFElem::one(k), -1));
  CHECK(phi(1, 1).is_zero());
  // gamma entry 0 is fbar(3)^(1/3): its cube is fbar(3)
  const auto u = PiadicInteger::from_int(F, 3, 30);
  const auto g = m.gamma(u);
  const auto f = ctx->fbar(u);
  CHECK(congruent(naive_pow(g(0, 0), 3), f));
  CHECK(congruent(naive_pow(g(1, 1), 3), f * f));
  CHECK(g(0, 1).is_zero());
  CHECK_THROWS_AS(construct_ind(3, 2, ctx), Error);
}

TEST_CASE("Teichmuller units act by the identity matrix") {
  for (auto F : {spec(3, 1, 1), spec(2, 2, 1)}) {
    auto ctx = context(F, 24);
    const auto& k = F->residue_field();
    for (auto h : canonical_hs(F->q(), 2)) {
      auto m = construct_ind(h, 2, ctx);
      for (FiniteField::Raw r = 1; r < k->size(); ++r) {
        const auto tau = PiadicInteger::teichmuller(F, FFElem(k, r), 20);
        const auto g = m.gamma(tau);
        CHECK(g(0, 0) == TSeries::one(k, 24));
        CHECK(g(1, 1) == TSeries::one(k, 24));
        for (std::size_t j = 0; j < 2; ++j) CHECK(vectors_agree(apply_gamma(m, tau, m.basis_vector(j)), m.basis_vector(j), 24));
      }
    }
  }
}

TEST_CASE("character modules") {
  auto F = spec(3, 1, 1);
  auto ctx = context(F, 20);
  auto k = F->residue_field();
  const auto u = PiadicInteger::from_int(F, 5, 20);
  auto triv = construct_char(2, FFElem::one(k), ctx);
  CHECK(triv.phi_matrix()(0, 0) == TSeries::one(k));
  CHECK(triv.gamma(u)(0, 0) == TSeries::one(k));
  auto omega = construct_char(1, FFElem::one(k), ctx);
  CHECK(omega.gamma(u)(0, 0) == TSeries::constant(FFElem::from_int(k, 2)));
  auto neg = construct_char(1, FFElem::from_int(k, -1), ctx);
  CHECK(neg.phi_matrix()(0, 0) == TSeries::constant(FFElem::from_int(k, 2)));
  CHECK_THROWS_AS(construct_char(1, FFElem::zero(k), ctx), Error);
  CHECK(det_module(neg).phi_matrix()(0, 0) == neg.phi_matrix()(0, 0));
}

TEST_CASE("twisted modules") {
  auto F = spec(3, 1, 1);
  auto ctx = context(F, 30);
  auto k = F->residue_field();
  const auto u = PiadicInteger::from_int(F, 4, 30);
  auto ind = construct_ind(1, 2, ctx);
  auto plain = construct_twisted(1, 2, FFElem::one(k), 2, ctx);
  CHECK(plain.phi_matrix().data() == ind.phi_matrix().data());
  CHECK(plain.gamma(u).data() == ind.gamma(u).data());
  auto tw = construct_twisted(1, 1, FFElem::from_int(k, -1), 2, ctx);
  CHECK(tw.phi_matrix()(1, 0) == TSeries::constant(FFElem::from_int(k, -1)));
  CHECK(tw.phi_matrix()(0, 1) == TSeries::monomial(FFElem::one(k), -2));
  // lambda in a larger field moves the coefficients there
  auto f9 = FiniteField::get(3, 2);
  auto big = construct_twisted(1, 1, FFElem(f9, f9->generator()), 2, ctx);
  CHECK(big.coeff_field()->degree() == 2);
  CHECK(check_commutation(big, u, 20).ok);
  CHECK(check_det_identity(big, u, 20).ok);
}

TEST_CASE("semilinear application") {
  auto F = spec(3, 1, 1);
  auto ctx = context(F, 30);
  auto k = F->residue_field();
  auto m = construct_ind(1, 2, ctx);
  for (std::size_t j = 0; j < 2; ++j) CHECK(apply_phi(m, m.basis_vector(j)) == m.phi_matrix().column(j));
  const auto t = TSeries::t(k);
  const SeriesVector te0{t, TSeries::zero(k)};
  auto col = m.phi_matrix().column(0);
  auto img = apply_phi(m, te0);
  CHECK(img[1] == TSeries::monomial(FFElem::one(k), 3));
  CHECK(img[0].is_zero());
  const SeriesVector zero{TSeries::zero(k), TSeries::zero(k)};
  for (const auto& x : apply_phi(m, zero)) CHECK(x.is_zero());

  const auto one = PiadicInteger::one(F, 30);
  const SeriesVector v{TSeries(k, -1, {1, 2, 0, 1}), TSeries(k, 0, {2, 2})};
  CHECK(vectors_agree(apply_gamma(m, one, v), v, 25));
  const auto u = PiadicInteger::from_int(F, 7, 30);
  auto gte0 = apply_gamma(m, u, te0);
  CHECK(congruent(gte0[0], m.substitution(u) * m.gamma(u)(0, 0)));
  CHECK_THROWS_AS(apply_phi(m, SeriesVector{t}), Error);
  CHECK_THROWS_AS(apply_gamma(m, u, SeriesVector{t, t, t}), Error);
}

TEST_CASE("commutation and determinant identity over a grid") {
  std::mt19937_64 rng(41);
  const std::int64_t N = 32;
  for (auto F : {spec(2, 1, 1), spec(3, 1, 1), spec(2, 2, 1), spec(2, 1, 2)}) {
    auto ctx = context(F, N + 8);
    const int P = 30;
    std::vector<PiadicInteger> units{
        PiadicInteger::teichmuller(F, FFElem(F->residue_field(), F->residue_field()->generator()), P),
        one_plus_pi(F, P),
        one_plus_pi(F, P) + PiadicInteger::uniformizer(F, P) * PiadicInteger::uniformizer(F, P),
        random_unit(F, rng, P)};
    for (unsigned n : {1u, 2u, 3u}) {
      for (auto h : canonical_hs(F->q(), n)) {
        auto m = construct_ind(h, n, ctx);
        for (const auto& u : units) {
          auto r = check_commutation(m, u, N);
          INFO("q=", F->q(), " n=", n, " h=", h, " ", r.detail);
          CHECK(r.ok);
          CHECK(check_det_identity(m, u, N).ok);
        }
      }
    }
  }
}

TEST_CASE("cocycle identity") {
  auto F = spec(3, 1, 1);
  auto ctx = context(F, 72);
  auto m = construct_ind(1, 2, ctx);
  const auto u = PiadicInteger::from_int(F, 4, 30), v = PiadicInteger::from_int(F, -2, 30);
  CHECK(check_cocycle(m, u, v, 64).ok);
  CHECK(check_cocycle(m, u, PiadicInteger::one(F, 30), 64).ok);
  std::mt19937_64 rng(43);
  for (auto G : {spec(2, 1, 1), spec(2, 2, 1), spec(2, 1, 2)}) {
    auto c = context(G, 40);
    for (unsigned n : {2u, 3u}) {
      auto mm = construct_twisted(canonical_hs(G->q(), n).back(), 1, FFElem::one(G->residue_field()), n, c);
      for (int trial = 0; trial < 3; ++trial) CHECK(check_cocycle(mm, random_unit(G, rng, 30), random_unit(G, rng, 30), 32).ok);
    }
  }
}

TEST_CASE("determinant of the basic induced module") {
  auto F = spec(2, 1, 1);
  auto ctx = context(F, 30);
  auto k = F->residue_field();
  auto d = det_module(construct_ind(1, 2, ctx));
  CHECK(d.phi_matrix()(0, 0) == TSeries::monomial(FFElem::one(k), -1));
  // after rescaling by t the determinant is phi-fixed
  auto x = base_change(d, SeriesMatrix(1, 1, TSeries::t(k)));
  CHECK(x.phi_matrix()(0, 0) == TSeries::one(k));
  auto F3 = spec(3, 1, 1);
  auto ctx3 = context(F3, 30);
  const auto tau = PiadicInteger::teichmuller(F3, FFElem::from_int(F3->residue_field(), 2), 20);
  auto d3 = det_module(construct_ind(1, 2, ctx3));
  CHECK(d3.phi_matrix()(0, 0) == TSeries::monomial(FFElem::one(F3->residue_field()), -2));
  // Teichmuller gamma on t^h e_0 ^ e_1 is abar^h
  auto x3 = base_change(d3, SeriesMatrix(1, 1, TSeries::t(F3->residue_field())));
  CHECK(vectors_agree({x3.gamma(tau)(0, 0)}, {TSeries::constant(FFElem::from_int(F3->residue_field(), 2))}, 25));
}

TEST_CASE("base change") {
  auto F = spec(3, 1, 1);
  auto ctx = context(F, 40);
  auto k = F->residue_field();
  auto m = construct_ind(1, 2, ctx);
  const auto u = PiadicInteger::from_int(F, 4, 30);
  SeriesMatrix id(2, 2, TSeries::zero(k));
  id(0, 0) = id(1, 1) = TSeries::one(k);
  auto same = base_change(m, id);
  CHECK(same.phi_matrix().data() == m.phi_matrix().data());
  for (std::size_t i = 0; i < 2; ++i) CHECK(vectors_agree(same.gamma(u).column(i), m.gamma(u).column(i), 32));

  SeriesMatrix p(2, 2, TSeries::zero(k));
  p(0, 0) = TSeries(k, 0, {1, 1});
  p(0, 1) = TSeries::t(k);
  p(1, 1) = TSeries::constant(FFElem::from_int(k, 2));
  auto moved = base_change(m, p);
  CHECK(check_commutation(moved, u, 30).ok);
  SeriesMatrix pinv = adjugate(p, TSeries::one(k)).map([&](const TSeries& x) { return x * invert_unit(determinant(p), 60); });
  auto back = base_change(moved, pinv);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(vectors_agree(back.phi_matrix().column(i), m.phi_matrix().column(i), 30));
    CHECK(vectors_agree(back.gamma(u).column(i), m.gamma(u).column(i), 30));
  }
  CHECK_THROWS_AS(base_change(m, SeriesMatrix(2, 2, TSeries::zero(k))), Error);
  CHECK_THROWS_AS(base_change(m, SeriesMatrix(1, 1, TSeries::one(k))), Error);
}

TEST_CASE("rank one induced modules are characters") {
  for (auto F : {spec(3, 1, 1), spec(2, 2, 1), spec(5, 1, 1)}) {
    auto ctx = context(F, 40);
    auto k = F->residue_field();
    const auto u = one_plus_pi(F, 20) * PiadicInteger::teichmuller(F, FFElem(k, k->generator()), 20);
    for (auto h : canonical_hs(F->q(), 1)) {
      auto m = base_change(construct_ind(h, 1, ctx), SeriesMatrix(1, 1, TSeries::monomial(FFElem::one(k), h)));
      auto c = construct_char(h, FFElem::one(k), ctx);
      CHECK(m.phi_matrix()(0, 0) == c.phi_matrix()(0, 0));
      CHECK(vectors_agree({m.gamma(u)(0, 0)}, {c.gamma(u)(0, 0)}, 32));
    }
  }
}

TEST_CASE("negative controls") {
  auto F = spec(3, 1, 1);
  auto ctx = context(F, 40);
  const auto u = one_plus_pi(F, 30);
  auto m = construct_ind(1, 2, ctx);
  REQUIRE(check_commutation(m, u, 32).ok);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK_FALSE(check_commutation(corrupt(m, Corruption::GammaExponent, j), u, 32).ok);
    auto r = check_commutation(corrupt(m, Corruption::GammaSign, j), u, 32);
    CHECK_FALSE(r.ok);
    // the flipped entry shows up in gamma(e_j) or in the image of phi(e_{j-1})
    CHECK((r.component == static_cast<std::int64_t>(j) || r.component == static_cast<std::int64_t>((j + 1) % 2)));
    CHECK(r.detail.find("differs") != std::string::npos);
  }
  auto flipped = corrupt(m, Corruption::PhiSign);
  CHECK(check_commutation(flipped, u, 32).ok);
  CHECK_FALSE(check_det_identity(flipped, u, 32).ok);
  // in characteristic 2 the sign flip is invisible
  auto F2 = spec(2, 1, 1);
  auto m2 = construct_ind(1, 2, context(F2, 40));
  CHECK(check_det_identity(corrupt(m2, Corruption::PhiSign), one_plus_pi(F2, 30), 32).ok);
}

TEST_CASE("gamma memo under concurrent use") {
  auto F = spec(2, 2, 1);
  auto ctx = context(F, 40);
  auto m = construct_ind(1, 3, ctx);
  std::mt19937_64 rng(47);
  std::vector<PiadicInteger> units;
  for (int i = 0; i < 4; ++i) units.push_back(random_unit(F, rng, 30));
  std::vector<SeriesMatrix> serial;
  for (const auto& u : units) serial.push_back(construct_ind(1, 3, ctx).gamma(u));
  std::vector<std::thread> pool;
  std::vector<int> ok(8, 0);
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&, t] {
      const auto& u = units[static_cast<std::size_t>(t) % units.size()];
      ok[static_cast<std::size_t>(t)] = m.gamma(u).data() == serial[static_cast<std::size_t>(t) % units.size()].data();
    });
  }
  for (auto& th : pool) th.join();
  for (int v : ok) CHECK(v == 1);
}

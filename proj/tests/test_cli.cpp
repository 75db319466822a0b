#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "lubintate/cli.hpp"

using namespace lubintate;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("lubintate_cli_" + name)).string();
}

}  // namespace

TEST_CASE("classify") {
  auto r = run({"classify", "--q", "3", "--n", "2"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  REQUIRE(j["classes"].size() == 3);
  CHECK(j["classes"][0]["orbit"] == Json({1, 3}));
  CHECK(j["classes"][1]["orbit"] == Json({2, 6}));
  CHECK(j["classes"][2]["orbit"] == Json({5, 7}));
  CHECK(Json::parse(run({"classify", "--q", "2", "--n", "2"}).out)["classes"].size() == 1);
  CHECK(Json::parse(run({"classify", "--q", "2", "--n", "1"}).out)["classes"].empty());
  CHECK(run({"classify", "--q", "6", "--n", "2"}).code == 2);
}

TEST_CASE("construct over Q_2") {
  auto r = run({"construct", "--p", "2", "--n", "2", "--h", "1", "--lambda", "1", "--unit", "3", "--prec", "32"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  auto phi = matrix_from_json(j["phi"]);
  const auto k = phi(0, 0).field();
  CHECK(phi(1, 0) == TSeries::one(k));
  CHECK(phi(0, 1) == TSeries::monomial(FFElem::one(k), -1));
  CHECK(phi(0, 0).is_zero());
  // unit 3 is first; its gamma entries are fbar^(1/3), fbar^(2/3) with fbar = 1/(1+t+t^2)
  auto gamma = matrix_from_json(j["gamma"][0]["matrix"]);
  const TSeries denom(k, 0, {1, 1, 1});
  CHECK(equal_mod(gamma(0, 0).pow(3) * denom, TSeries::one(k), 32));
  CHECK(equal_mod(gamma(1, 1).pow(3) * denom.pow(2), TSeries::one(k), 32));
  CHECK(gamma(0, 1).is_zero());
}

TEST_CASE("usage errors") {
  CHECK(run({"construct", "--lambda", "0"}).code == 2);
  CHECK(run({"construct", "--prec", "0"}).code == 2);
  CHECK(run({"verify", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"construct", "--h", "3", "--n", "2"}).code == 2);
  CHECK(run({"construct", "--lambda", "[1,"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("precision exhaustion exits with 3") {
  auto r = run({"construct", "--unit", "{\"prec\":1,\"coords\":[[3]]}"});
  CHECK(r.code == 3);
}

TEST_CASE("verify passes and names injected defects") {
  auto ok = run({"verify", "--p", "2", "--n", "2", "--h", "1"});
  REQUIRE(ok.code == 0);
  auto j = Json::parse(ok.out);
  CHECK(j["ok"] == true);
  CHECK(j["first_failure"].is_null());
  std::set<std::string> names;
  for (const auto& c : j["checks"]) names.insert(c["check"]);
  CHECK(names == std::set<std::string>{"commutation", "cocycle", "det_identity", "phi_fixed", "inertia_eigen"});

  auto bad = run({"verify", "--p", "2", "--n", "2", "--h", "1", "--corrupt", "gamma-exponent"});
  CHECK(bad.code == 1);
  CHECK(Json::parse(bad.out)["first_failure"]["check"] == "commutation");

  auto sign = run({"verify", "--p", "3", "--n", "2", "--h", "1", "--corrupt", "phi-sign"});
  CHECK(sign.code == 1);
  CHECK(Json::parse(sign.out)["first_failure"]["check"] == "det_identity");

  CHECK(run({"verify", "--p", "3", "--n", "1", "--h", "1", "--s", "2", "--lambda", "2"}).code == 0);
  CHECK(run({"verify", "--p", "2", "--f", "2", "--n", "2", "--h", "1", "--lambda", "[0,1,1]", "--prec", "16"}).code == 0);
}

TEST_CASE("construct output round-trips through verify") {
  const std::string path = temp_path("module.json");
  const std::vector<std::string> base{"--p", "3", "--n", "2", "--h", "2", "--prec", "24", "--seed", "5"};
  auto args = base;
  args.insert(args.begin(), "construct");
  args.insert(args.end(), {"--out", path});
  REQUIRE(run(args).code == 0);
  auto loaded = run({"verify", "--from", path});
  args = base;
  args.insert(args.begin(), "verify");
  auto direct = run(args);
  CHECK(loaded.code == 0);
  CHECK(loaded.out == direct.out);

  JobConfig cfg;
  cfg.field = {3, 1, 1, {}};
  cfg.n = 2;
  cfg.h = 2;
  cfg.prec = 24;
  cfg.seed = 5;
  CHECK(Json::parse(loaded.out) == cmd_verify(cfg).report);
  std::remove(path.c_str());
}

TEST_CASE("identical config and seed give identical output") {
  const std::vector<std::string> args{"construct", "--p", "2", "--e", "2", "--eis", "[[-2],[0]]", "--n", "1",
                                      "--h", "0", "--s", "1", "--seed", "11", "--prec", "16"};
  CHECK(run(args).code == 2);  // h = 0 is not primitive
  const std::vector<std::string> good{"construct", "--p", "3", "--n", "3", "--h", "1", "--seed", "11", "--prec", "16"};
  auto a = run(good), b = run(good);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto other = good;
  other[8] = "12";
  CHECK(run(other).out != a.out);
}

TEST_CASE("act") {
  const std::string e0 = R"([{"val":0,"prec":null,"coeffs":[[1]]},{"val":null,"prec":null,"coeffs":[]}])";
  auto r = run({"act", "--p", "2", "--n", "2", "--h", "1", "--op", "phi", "--vector", e0});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  auto k = FiniteField::get(2, 1);
  auto v = vector_from_json(k, j["vector"]);
  REQUIRE(v.size() == 2);
  CHECK(v[0].is_zero());
  CHECK(v[1] == TSeries::one(k));

  auto g = run({"act", "--p", "2", "--n", "2", "--h", "1", "--op", "gamma", "--unit", "3", "--vector", e0});
  REQUIRE(g.code == 0);
  auto w = vector_from_json(k, Json::parse(g.out)["vector"]);
  const TSeries denom(k, 0, {1, 1, 1});
  CHECK(equal_mod(w[0].pow(3) * denom, TSeries::one(k), 32));
  CHECK(run({"act", "--op", "psi", "--vector", e0}).code == 2);
  CHECK(run({"act", "--vector", "[]"}).code == 2);
}

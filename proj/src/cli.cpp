#include "lubintate/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "lubintate/errors.hpp"

namespace lubintate {

namespace {

constexpr std::int64_t kMargin = 8;

const std::map<std::string, Corruption>& corruption_names() {
  static const std::map<std::string, Corruption> names{
      {"gamma-exponent", Corruption::GammaExponent},
      {"phi-sign", Corruption::PhiSign},
      {"gamma-sign", Corruption::GammaSign},
  };
  return names;
}

std::string corruption_name(Corruption c) {
  for (const auto& [name, kind] : corruption_names())
    if (kind == c) return name;
  return "unknown";
}

std::vector<std::uint64_t> unit_key(const PiadicInteger& u) {
  std::vector<std::uint64_t> key{static_cast<std::uint64_t>(u.prec())};
  for (const auto& c : u.pi_coordinates()) key.insert(key.end(), c.begin(), c.end());
  return key;
}

PiadicInteger seeded_unit(const LocalFieldPtr& F, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::vector<std::int64_t>> c(F->e(), std::vector<std::int64_t>(F->f()));
    for (auto& row : c)
      for (auto& x : row) x = static_cast<std::int64_t>(rng() % 100000);
    auto u = PiadicInteger::from_pi_basis(F, c, F->max_precision());
    if (u.is_unit()) return u;
  }
}

std::vector<PiadicInteger> resolve_units(const JobConfig& cfg, const LocalFieldPtr& F) {
  std::vector<PiadicInteger> out;
  if (cfg.units.empty()) {
    const int k = F->max_precision();
    out.push_back(PiadicInteger::one(F, k) + PiadicInteger::uniformizer(F, k));
    std::mt19937_64 rng(cfg.seed);
    out.push_back(seeded_unit(F, rng));
    out.push_back(seeded_unit(F, rng));
  }
  for (const auto& j : cfg.units) out.push_back(unit_from_json(F, j));
  for (const auto& u : out)
    if (!u.is_unit()) throw Error(ErrorCode::NotAUnit, "every --unit must be a unit");
  return out;
}

FFElem resolve_lambda(const JobConfig& cfg, const LocalFieldPtr& F) {
  if (cfg.lambda.is_number_integer()) return ffelem_from_json(F->residue_field(), cfg.lambda);
  return ffelem_from_json(FiniteField::get(F->p(), F->f() * cfg.n), cfg.lambda);
}

Json label_to_json(const ModuleLabel& l) {
  return {{"h", l.h}, {"s", l.s}, {"lambda", to_json(l.lambda)}, {"lambda_field", field_to_json(l.lambda.field())}};
}

ModuleLabel label_from_json(const Json& j) {
  const auto field = field_from_json(j.at("lambda_field"));
  return ModuleLabel{j.at("h").get<std::int64_t>(), j.at("s").get<std::int64_t>(),
                     ffelem_from_json(field, j.at("lambda"))};
}

// Module whose matrices come from construct output; gamma is only known
// for the units stored there.
Job load_job(const Json& doc) {
  try {
    const auto F = LocalField::make(spec_from_json(doc.at("field")));
    Job job;
    job.ctx = GammaContext::make(FrobeniusSeries::standard(F), doc.at("module_prec").get<std::int64_t>());
    job.params = doc.at("params");
    for (const auto& u : doc.at("units")) job.units.push_back(unit_from_json(F, u));
    auto table = std::make_shared<std::map<std::vector<std::uint64_t>, SeriesMatrix>>();
    for (const auto& g : doc.at("gamma")) {
      table->emplace(unit_key(unit_from_json(F, g.at("unit"))), matrix_from_json(g.at("matrix")));
    }
    SeriesMatrix phi = matrix_from_json(doc.at("phi"));
    const FieldPtr k = phi(0, 0).field();
    std::optional<ModuleLabel> label;
    if (doc.contains("label") && !doc.at("label").is_null()) label = label_from_json(doc.at("label"));
    auto gamma = [table](const PiadicInteger& u) {
      auto it = table->find(unit_key(u));
      if (it == table->end()) throw Error(ErrorCode::InvalidInput, "input has no gamma matrix for this unit");
      return it->second;
    };
    job.module = std::make_shared<const PhiGammaModule>(job.ctx, k, std::move(phi), gamma, label);
    return job;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed module document: ") + ex.what());
  }
}

}  // namespace

void JobConfig::validate() const {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "--n must be at least 1");
  if (prec < 1) throw Error(ErrorCode::InvalidInput, "--prec must be at least 1");
  if (!lambda.is_number_integer() && !lambda.is_array()) {
    throw Error(ErrorCode::InvalidInput, "--lambda must be an integer or a coefficient array");
  }
}

Job make_job(const JobConfig& cfg) {
  cfg.validate();
  Job job;
  if (cfg.from) {
    job = load_job(*cfg.from);
  } else {
    const auto F = LocalField::make(cfg.field);
    job.ctx = GammaContext::make(FrobeniusSeries::standard(F), cfg.prec + kMargin);
    job.units = resolve_units(cfg, F);
    const FFElem lambda = resolve_lambda(cfg, F);
    job.module = std::make_shared<const PhiGammaModule>(construct_twisted(cfg.h, cfg.s, lambda, cfg.n, job.ctx));
    job.params = {{"field", spec_to_json(cfg.field)}, {"n", cfg.n},       {"h", cfg.h},
                  {"s", cfg.s},                       {"lambda", to_json(lambda)}, {"prec", cfg.prec},
                  {"seed", cfg.seed}};
  }
  if (cfg.corruption) {
    if (cfg.corrupt_index >= job.module->rank()) throw Error(ErrorCode::OutOfRange, "--corrupt-index beyond rank");
    job.module = std::make_shared<const PhiGammaModule>(corrupt(*job.module, *cfg.corruption, cfg.corrupt_index));
    job.params["corruption"] = {{"kind", corruption_name(*cfg.corruption)}, {"index", cfg.corrupt_index}};
  }
  return job;
}

Json cmd_classify(std::uint64_t q, unsigned n) {
  if (q < 2 || n < 1) throw Error(ErrorCode::InvalidInput, "--q must be at least 2 and --n at least 1");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint64_t r = q;
  while (r % p == 0) r /= p;
  if (r != 1) throw Error(ErrorCode::InvalidInput, "--q must be a prime power");
  Json classes = Json::array();
  for (const auto& c : enumerate_classes(q, n)) classes.push_back({{"orbit", c.orbit}, {"h_min", c.h_min}});
  return {{"q", q}, {"n", n}, {"classes", classes}};
}

Json cmd_construct(const JobConfig& cfg) {
  const Job job = make_job(cfg);
  const auto& m = *job.module;
  Json units = Json::array();
  Json gammas = Json::array();
  auto emit = [&](const PiadicInteger& u) { gammas.push_back({{"unit", to_json(u)}, {"matrix", to_json(m.gamma(u))}}); };
  for (std::size_t i = 0; i < job.units.size(); ++i) {
    units.push_back(to_json(job.units[i]));
    emit(job.units[i]);
    if (i + 1 < job.units.size()) emit(job.units[i] * job.units[i + 1]);
  }
  Json out{{"field", spec_to_json(job.ctx->field()->spec())},
           {"module_prec", job.ctx->prec()},
           {"params", job.params},
           {"units", units},
           {"phi", to_json(m.phi_matrix())},
           {"gamma", gammas}};
  out["label"] = m.label() ? label_to_json(*m.label()) : Json(nullptr);
  return out;
}

Json cmd_act(const JobConfig& cfg, const std::string& op, const Json& vector) {
  const Job job = make_job(cfg);
  const auto& m = *job.module;
  const SeriesVector v = vector_from_json(m.coeff_field(), vector);
  Json out{{"op", op}, {"params", job.params}};
  if (op == "phi") {
    out["vector"] = vector_to_json(apply_phi(m, v));
  } else if (op == "gamma") {
    out["unit"] = to_json(job.units.at(0));
    out["vector"] = vector_to_json(apply_gamma(m, job.units.at(0), v));
  } else {
    throw Error(ErrorCode::InvalidInput, "--op must be phi or gamma");
  }
  return out;
}

VerifyResult verify_job(const Job& job, std::int64_t prec) {
  const auto& m = *job.module;
  const auto& units = job.units;
  Json checks = Json::array();
  Json first = nullptr;
  auto add = [&](const std::string& name, const Json& params, const CheckReport& r) {
    Json rep = report_to_json(name, params, r);
    if (!r.ok && first.is_null()) {
      first = rep["first_failure"];
      first["check"] = name;
      first["params"] = params;
    }
    checks.push_back(std::move(rep));
  };
  for (std::size_t i = 0; i < units.size(); ++i) add("commutation", {{"unit", i}}, check_commutation(m, units[i], prec));
  for (std::size_t i = 0; i + 1 < units.size(); ++i) {
    add("cocycle", {{"units", {i, i + 1}}}, check_cocycle(m, units[i], units[i + 1], prec));
  }
  const auto& label = m.label();
  if (label) {
    for (std::size_t i = 0; i < units.size(); ++i) add("det_identity", {{"unit", i}}, check_det_identity(m, units[i], prec));
  }
  if (label && label->s == 0 && label->lambda.is_one()) {
    const TameRing r = TameRing::make(job.ctx, static_cast<unsigned>(m.rank()));
    const auto vs = build_vj(r, m, r.alpha);
    for (unsigned j = 0; j < vs.size(); ++j) add("phi_fixed", {{"j", j}}, check_phi_fixed(r, m, vs[j], prec));
    for (std::size_t i = 0; i < units.size(); ++i) {
      const InertiaElem g = compatible_element(r, units[i]);
      for (unsigned j = 0; j < vs.size(); ++j) {
        add("inertia_eigen", {{"unit", i}, {"j", j}}, check_inertia_eigen(r, m, vs[j], j, g, prec));
      }
    }
  }
  VerifyResult out;
  out.report = {{"check", "verify"}, {"params", job.params}, {"ok", first.is_null()}, {"first_failure", first},
                {"checks", checks}};
  out.exit_code = first.is_null() ? 0 : 1;
  return out;
}

VerifyResult cmd_verify(const JobConfig& cfg) {
  const Job job = make_job(cfg);
  const std::int64_t prec = cfg.from ? job.params.at("prec").get<std::int64_t>() : cfg.prec;
  return verify_job(job, prec);
}

namespace {

Json parse_json_arg(const std::string& flag, const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::InvalidInput, flag + " is not valid JSON: " + text);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::InvalidInput, path + " is not valid JSON");
  }
}

void write_output(const Json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lubin-Tate (phi, Gamma)-modules of tame Galois representations"};
  app.set_help_flag("--help", "print this help");
  app.fallthrough();
  app.require_subcommand(1);

  JobConfig cfg;
  std::string eis, lambda = "1", vector, from, out_path, op = "phi", corruption;
  std::vector<std::string> units;
  std::uint64_t q = 2;

  app.add_option("--p", cfg.field.p, "residue characteristic");
  app.add_option("--f", cfg.field.f, "inertia degree");
  app.add_option("--e", cfg.field.e, "ramification index");
  app.add_option("--eis", eis, "Eisenstein coefficients as JSON");
  app.add_option("--n", cfg.n, "induction degree");
  app.add_option("--h", cfg.h, "exponent of the level-nf character");
  app.add_option("--s", cfg.s, "exponent of the level-f twist");
  app.add_option("--lambda", lambda, "unramified twist: integer or JSON coefficient array");
  app.add_option("--prec", cfg.prec, "t-adic precision of the checks");
  app.add_option("--unit", units, "unit for gamma (integer or JSON object), repeatable");
  app.add_option("--seed", cfg.seed, "seed for random units");
  app.add_option("--out", out_path, "write JSON here instead of stdout");
  app.add_option("--corrupt", corruption, "inject a defect")->check(CLI::IsMember({"gamma-exponent", "phi-sign", "gamma-sign"}));
  app.add_option("--corrupt-index", cfg.corrupt_index, "basis index of the injected defect");
  app.add_option("--from", from, "construct output to load the module from");

  auto* classify = app.add_subcommand("classify", "list q-primitive orbits");
  classify->add_option("--q", q, "residue field size");
  app.add_subcommand("construct", "phi and gamma matrices");
  auto* act = app.add_subcommand("act", "apply phi or gamma to a vector");
  act->add_option("--op", op, "phi or gamma")->check(CLI::IsMember({"phi", "gamma"}));
  act->add_option("--vector", vector, "JSON array of series")->required();
  app.add_subcommand("verify", "run the identity checks");

  std::vector<std::string> full{"lubintate"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : full) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (!eis.empty()) cfg.field.eis = parse_json_arg("--eis", eis).get<std::vector<std::vector<std::int64_t>>>();
    cfg.lambda = parse_json_arg("--lambda", lambda);
    for (const auto& u : units) cfg.units.push_back(parse_json_arg("--unit", u));
    if (!corruption.empty()) cfg.corruption = corruption_names().at(corruption);
    if (!from.empty()) cfg.from = read_json_file(from);

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "classify") {
      if (app.count("--n") == 0) cfg.n = 1;
      write_output(cmd_classify(q, cfg.n), out_path, out);
      return 0;
    }
    if (cmd == "construct") {
      write_output(cmd_construct(cfg), out_path, out);
      return 0;
    }
    if (cmd == "act") {
      write_output(cmd_act(cfg, op, parse_json_arg("--vector", vector)), out_path, out);
      return 0;
    }
    const VerifyResult res = cmd_verify(cfg);
    write_output(res.report, out_path, out);
    return res.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::PrecisionExhausted ? 3 : 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lubintate

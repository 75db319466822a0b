#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lubintate/json_io.hpp"
#include "lubintate/tame_ext.hpp"

namespace lubintate {

/// Everything a construct/act/verify job needs. Identical configs give
/// identical output; the seed is the only source of randomness.
struct JobConfig {
  LocalFieldSpec field;
  unsigned n = 2;
  std::int64_t h = 1;
  std::int64_t s = 0;
  /// Integer (taken in F_q) or coefficient array (taken in F_{q^n}).
  Json lambda = 1;
  std::int64_t prec = 32;
  /// Integers or {"prec":, "coords":} objects; empty means 1 + pi plus two
  /// seeded random units.
  std::vector<Json> units;
  std::uint64_t seed = 0;
  std::optional<Corruption> corruption;
  std::size_t corrupt_index = 0;
  /// construct output to load the module from instead of building it.
  std::optional<Json> from;

  /// Throws InvalidInput for values no module accepts.
  void validate() const;
};

/// A module together with the units its checks run over.
struct Job {
  GammaContextPtr ctx;
  std::shared_ptr<const PhiGammaModule> module;
  std::vector<PiadicInteger> units;
  Json params;
};

/// Builds the module described by the flags, or loads it from cfg.from.
Job make_job(const JobConfig& cfg);

/// {"q":, "n":, "classes": [{"orbit": [...], "h_min":}]}.
Json cmd_classify(std::uint64_t q, unsigned n);

/// Phi matrix and the gamma matrices of every unit and of each product of
/// consecutive units (needed by the cocycle check), plus the parameters.
Json cmd_construct(const JobConfig& cfg);

/// phi or gamma_{u_0} applied to a vector of series over the coefficient field.
Json cmd_act(const JobConfig& cfg, const std::string& op, const Json& vector);

struct VerifyResult {
  Json report;
  int exit_code = 0;
};

/// Commutation, cocycle and determinant identities for each unit; for
/// untwisted induced modules also the phi-fixed and inertia-eigenvector
/// checks in the tame extension.
VerifyResult verify_job(const Job& job, std::int64_t prec);
VerifyResult cmd_verify(const JobConfig& cfg);

/// Full command line: 0 pass, 1 failed identity, 2 usage or invalid input,
/// 3 precision exhausted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lubintate

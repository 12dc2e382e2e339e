#ifndef MINMOD_FUNCTION_SPEC_HPP
#define MINMOD_FUNCTION_SPEC_HPP

// Serializable description of a workbench function ("spec file"), plus the
// result-bundle envelope persisted by the CLI. Specs round-trip through JSON
// losslessly and carry a content digest used as the cache key.

#include <optional>
#include <string>

#include "json.hpp"

#include "minmod/constructors.hpp"
#include "minmod/settings.hpp"
#include "minmod/zeros.hpp"

namespace minmod {

inline constexpr const char* kSpecSchema = "minmod-spec-v1";
inline constexpr const char* kBundleSchema = "minmod-bundle-v1";
inline constexpr const char* kToolVersion = "0.1.0";

struct FunctionSpec {
  std::string kind;  // explicit | regular | bands-minimal-type | bands-lower-half
  double log_c = 0.0;
  std::optional<EvalSettings> eval_overrides;

  // kind == explicit
  std::vector<double> zeros_log_t;
  std::vector<int> zeros_mult;

  // kind == regular
  EpsSpec eps_spec;
  double max_log_r = 40.0;
  bool analytic_representation = true;  // false: explicit truncation

  // kind == bands-*
  DeltaSpec delta_spec;
  double seed_log_a0 = 1.0;
  double seed_log_b0 = 2.0;
  int n_bands = 3;
  double moderation_p = 10.0;
  DensityRule density;

  static FunctionSpec from_json(const nlohmann::json& j);
  static FunctionSpec from_file(const std::string& path);
  nlohmann::json to_json() const;

  // FNV-1a 64 of the canonical serialization (hex)
  std::string digest() const;

  EvalSettings settings() const {
    return eval_overrides ? *eval_overrides : EvalSettings{};
  }

  // materialize the function; band kinds construct their sequence first
  EntireProductFunction build() const;
  std::optional<BandSequence> build_bands() const;
};

struct ResultBundle {
  std::string spec_digest;
  std::string command;
  nlohmann::json args;
  nlohmann::json outputs;
  std::string timestamp;

  nlohmann::json to_json() const;
  // serialization without the timestamp: the reproducible envelope
  std::string reproducible_dump() const;
};

std::string fnv1a64_hex(const std::string& bytes);

}  // namespace minmod

#endif

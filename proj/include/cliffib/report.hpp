#pragma once

#include "cliffib/quadratic_form.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace cliffib {

using Json = nlohmann::ordered_json;

struct Config {
  Index degree_cap = 8;
  Index trials = 3;
  long random_bound = 10000;
  std::uint64_t seed = 0;
  bool pretty = false;
  double tensor_cap = 1e8;
};

/// Parse the form wire schema {"n":…, "base_vars":[…], "gram":[[poly,…],…]}.
QuadraticForm form_from_json(const Json& j);
QuadraticForm load_form(const std::string& path);

/// FNV-1a over the canonical serialization of the form; embedded in every
/// report so outputs are traceable to their input.
std::string canonical_hash(const QuadraticForm& f);

/// Dispatch one CLI subcommand; `sections` only affects `sod`/`analyze`.
Json run_command(const std::string& command, const QuadraticForm& form,
                 const Config& config, const std::string& input_path,
                 Index sections = 0);

/// Exit-code mapping shared by the CLI and the tests: 0 ok, 1 input error,
/// 2 violated mathematical invariant, 3 resource cap.
int exit_code_for_current_exception();

}  // namespace cliffib

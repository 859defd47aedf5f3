#pragma once
#include <json.hpp>
#include <stdexcept>
#include <string>

#include "rsg/arith.hpp"
#include "suites.hpp"

// The command layer behind the CLI and the Python module: a validated
// configuration in, a JSON report with a fixed top-level schema out.
namespace rsg::cli {

constexpr int kSchemaVersion = 1;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;  // gamma, pole-scan, parameter, q2, verify, oracle
  u64 p = 3;
  int l = 2;
  i64 alpha = 1;
  int omega = 1;
  int psi_sign = 1;
  u64 tau_root_order = 1;  // tau(varpi) = rational * zeta_order^exp
  i64 tau_root_exp = 0;
  std::string tau_rational = "1";
  i64 tau_residue = 0;
  int depth = 0;
  u64 seed = suites::kDefaultSeed;
  std::string format = "text";
  std::string xi_reading = "monomial";
  std::string suite = "all";
  bool timing = false;
};

struct Outcome {
  // {schema_version, inputs, exact, float, tokens, timing, suite_results}
  // plus first_counterexample on a mismatch
  nlohmann::json doc;
  std::string text;
  int status = 0;  // 0 success, 1 mismatch
};

// throws InputError on invalid configurations and std::domain_error on
// inputs outside what the closed forms cover
Outcome execute(Config c);

}  // namespace rsg::cli

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "defseq/classifier.hpp"
#include "defseq/linalg.hpp"
#include "defseq/tuple.hpp"

namespace defseq {

struct PropertyOutcome {
  PropertyOutcome() = default;
  explicit PropertyOutcome(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::optional<std::string> first_failure;

  void record(bool ok, const std::string& context);
  void skip() { ++skipped; }
  bool ok() const noexcept { return failed == 0; }
};

/// A reported (not asserted) measurement.
struct Experiment {
  std::string name;
  nlohmann::ordered_json data;
};

struct SuiteOutcome {
  std::string suite;
  std::vector<PropertyOutcome> properties;
  std::vector<Experiment> experiments;

  bool all_passed() const noexcept;
  std::size_t total_failed() const noexcept;
  const PropertyOutcome* find(const std::string& name) const;
};

struct VerifyOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  RankTolerance tol;
  PurityOptions purity;
  SizeLimits limits;
};

/// Suite names accepted by run_suite, "all" last.
const std::vector<std::string>& suite_names();

/// Throws PreconditionError for an unknown name. "all" runs every suite in
/// order and prefixes each property with its suite name.
SuiteOutcome run_suite(const std::string& name, const VerifyOptions& options = {});

// Seeded ensembles shared by the suites and the tests. Sample idx of seed s is
// built from derive_seed(s, idx) alone.

struct EnsembleSample {
  OperatorTuple tuple;
  std::string description;  // generator parameters, enough to rebuild the sample
};

/// random_contractive with d in {1,2,3}, h in [3,8], defect rank in {1,2,3};
/// every fourth sample is a direct sum with a coisometric block, so its
/// defect sequence stabilizes below h.
EnsembleSample contractive_sample(std::uint64_t seed, std::size_t idx);
/// random_coinvariant_compression with (d, L) in {(2,2), (2,3), (3,2)} and 1 or 2 generators.
EnsembleSample coinvariant_sample(std::uint64_t seed, std::size_t idx);

}  // namespace defseq

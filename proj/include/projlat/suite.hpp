#pragma once

// Theorem suites and their JSON report. Reports are a pure function of the
// configuration: every suite draws from substreams of the configured seed,
// runs single-threaded, and the records are sorted by check_id.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projlat/serialize.hpp"

namespace projlat {

std::string library_version();

struct SuiteConfig {
  std::uint64_t seed = 42;
  /// Unset: each suite samples algebras of the sizes its check needs.
  std::optional<Algebra> algebra;
  /// Empty: every known suite.
  std::vector<std::string> suites;
  int samples = 200;
  /// Multiplies every numerical tolerance; thresholds of expected failures
  /// are not scaled.
  double tol_scale = 1.0;
  /// Not part of the report.
  std::string out;
};

const std::vector<std::string>& known_suites();
/// The anchors a record's paper_ref may take.
const std::vector<std::string>& paper_anchors();

/// Keys: seed, algebra (inline spec string, list, or {"block_dims"}),
/// suites, samples, tol_scale, out. Unknown keys are a Parse error.
SuiteConfig config_from_json(const Json& j);
Json config_echo(const SuiteConfig& config);

struct CheckRecord {
  std::string check_id;
  std::string paper_ref;
  int n_trials = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  /// Expected failure: the check passes when the residual exceeds the
  /// tolerance, and worst_residual is then the smallest value seen.
  bool expect_above = false;
  std::vector<Element> witness;
  std::string note;

  bool pass() const { return expect_above ? worst_residual > tolerance : worst_residual <= tolerance; }
};

struct Report {
  Json config;
  std::vector<CheckRecord> records;

  bool all_pass() const;
  Json to_json() const;
  /// Serialized form, two-space indent, trailing newline.
  std::string dump() const;
};

/// Throws Usage for unknown suites or an algebra a suite cannot use.
Report run_suite(const SuiteConfig& config);

struct GeneratedFile {
  std::string name;
  Json content;
};

/// Specs: "halmos-pair a=0.75 n=2", "random-proj n=5 rank=3",
/// "density n=3", "tracial n=3", "m2-nonlinear", "unitary-morphism n=3
/// transpose=1", "fault-morphism n=3". Every spec also emits algebra.json.
/// Throws Usage for an empty or unknown spec.
std::vector<GeneratedFile> gen_instance(std::uint64_t seed, const std::string& spec);

}  // namespace projlat

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hugeobj/distinguishers.hpp"
#include "hugeobj/multiaccuracy.hpp"
#include "hugeobj/objects.hpp"

namespace hugeobj {

// Config-driven experiment runner. A config names a registered target
// generator, a learner, a distinguisher-class generator, and an evaluation
// budget; run() executes generate -> learn -> evaluate -> truthcheck and
// verify() compares the report against thresholds.
struct TargetConfig {
  std::string generator;     // random-support-k, planted-union, bitstring-random, ...
  std::uint64_t n_bits = 8;  // bitstring domains
  std::uint64_t cardinality = 0;  // indexed domains (0 -> 2^n_bits)
  std::uint64_t k = 0;
  std::uint64_t d = 0;
  double avg_degree = 0.0;
  std::uint64_t clique = 0;
  std::vector<std::uint64_t> part_sizes;
  std::vector<std::vector<double>> probs;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> intervals;  // planted-union
};

struct LearnerConfig {
  std::string kind;  // multiaccuracy, fixed_weight, support, bitstring,
                     // outdegree, dense_graph, fixed_edges, fixed_outdegree,
                     // sparse_reduction, uniform_degree
  double epsilon = 0.1;
  double gamma = 0.05;
  double delta = 0.02;
  double alpha = 0.25;
  double density_ratio = 4.0;
  std::uint64_t k = 0;
  std::uint64_t d = 0;
};

struct ClassConfig {
  std::string generator = "random-sets";  // dyadic-intervals,
                                          // coordinate-tests, random-cuts,
                                          // partition-cells
  std::uint64_t count = 8;
  double density = 0.5;
  std::uint64_t class_seed = 7;
};

struct EvalConfig {
  std::uint64_t samples = 20000;
  double delta = 0.02;
  std::uint64_t truth_samples = 50;
};

struct Thresholds {
  std::optional<double> max_gap;
  std::optional<std::uint64_t> max_updates;
  bool require_truthful = true;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::uint64_t master_seed = 1;
  TargetConfig target;
  LearnerConfig learner;
  ClassConfig distinguishers;
  EvalConfig evaluation;
  Thresholds thresholds;
  std::string out_dir;

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
  std::string to_json_text() const;
};

struct TruthCheck {
  std::string property;  // e.g. "support-size=128"
  std::uint64_t samples_checked = 0;
  std::uint64_t violations = 0;
  bool ok() const { return violations == 0; }
};

// Diagnostics attached by the sparse-reduction pipeline: the sampled
// uniformity check and, when the generator recorded a planted set, the
// no-dense-model witness outcome.
struct SparseDiagnostics {
  bool upper_uniform_holds = true;
  bool witness_triggered = false;
  double worst_ratio = 0.0;
};

struct RunReport {
  std::string config_json;  // canonical echo
  LearnTrace trace;
  GapReport gaps;
  std::vector<TruthCheck> truth;
  std::optional<SparseDiagnostics> sparse;
  double learn_seconds = 0.0;
  double eval_seconds = 0.0;

  // Deterministic content (excludes timings).
  std::string canonical_json() const;
  std::string gaps_csv() const;

  static RunReport from_canonical_json(const std::string& text);
};

RunReport run(const ExperimentConfig& config);

struct VerifyResult {
  bool pass = true;
  std::vector<std::string> failures;
};

VerifyResult verify(const RunReport& report, const Thresholds& thresholds);

}  // namespace hugeobj

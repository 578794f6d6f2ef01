#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "hugeobj/multiaccuracy.hpp"
#include "hugeobj/objects.hpp"
#include "hugeobj/permutation.hpp"
#include "hugeobj/predictor.hpp"

namespace hugeobj {

using BinaryVector = std::vector<std::uint8_t>;

// Exactly k ones at the k largest weights, ties broken by ascending index.
// For every p in [0,1]^N with sum(p) = k the output f maximizes <w,f>,
// hence <w,f> >= <w,p>.
BinaryVector greedy_topk(std::span<const double> w, std::uint64_t k);

// Multiplicative-weights schedule for max-coordinate error eps over a
// doubled domain of size 2N.
struct MwSchedule {
  std::uint64_t iterations;  // T = ceil(4 ln(2N) / eps^2)
  double step;               // alpha = sqrt(ln(2N) / T)
  std::uint64_t domain_size;

  static MwSchedule for_accuracy(std::uint64_t n, double eps);
};

// T binary weight-k vectors whose average matches p to
// 2 sqrt(ln(2N)/T) <= eps in every coordinate; the bound is checkable on
// the output itself. Requires sum(p) = k up to 1e-9.
std::vector<BinaryVector> mw_fixed_weight(std::span<const double> p, std::uint64_t k,
                                          double eps);

// max_x |mean_i f_i(x) - p(x)| over a produced list.
double mw_max_marginal_deviation(const std::vector<BinaryVector>& fs,
                                 std::span<const double> p);

// Exact-marginal test oracle (N <= 12): a distribution over weight-k binary
// vectors with marginals equal to p, found by iterated greedy peeling.
struct MarginalAtom {
  BinaryVector f;
  double prob;
};
std::vector<MarginalAtom> exact_marginal_distribution(std::span<const double> p,
                                                      std::uint64_t k);

// Lazily evaluable sampler over one domain slice: every seeded function has
// exactly k ones, per-coordinate marginals within eps of p. Buckets p into
// ceil(2/eps) value intervals, rounds bucket masses with one shared MW run
// over the fractional parts, then picks uniform subsets inside buckets.
class BucketedSampler {
 public:
  BucketedSampler(std::vector<double> p, std::uint64_t k, double eps);

  std::uint64_t size() const { return p_.size(); }
  std::uint64_t weight() const { return k_; }

  // f_seed(idx) for idx in [0, size).
  bool eval(const OracleSeed& seed, std::uint64_t idx) const;

  BinaryVector materialize(const OracleSeed& seed) const;

 private:
  std::vector<double> p_;
  std::uint64_t k_;
  std::vector<int> bucket_of_;
  std::vector<std::uint64_t> rank_in_bucket_;
  std::vector<std::uint64_t> bucket_size_;
  std::vector<std::uint64_t> bucket_floor_;       // floor(s(i))
  std::vector<int> mw_slot_of_bucket_;            // -1 when t(i) = 0
  std::vector<BinaryVector> mw_vectors_;          // over the nonzero-t buckets
};

// One-shot convenience: a single weight-k sample from the bucketed
// construction under the given seed.
BinaryVector bucketed_fixed_weight(std::span<const double> p, std::uint64_t k,
                                   double eps, const OracleSeed& seed);

enum class SplitMode {
  automatic,  // exact slice sums when the slice is no larger than the
              // sample count m (never worse than estimating), else sampled
  sampled,    // always the m-sample estimate
  exact,      // always exact slice sums (test mode isolating tree logic)
};

struct BudgetTreeParams {
  int n = 1;                       // domain bits
  int leaf_depth = 0;              // n' = largest with 2^(n-n') >= 8/eps
  std::uint64_t split_samples = 1; // m = ceil(C n^2 / eps^2)
  double eps = 0.1;
  double split_constant = 16.0;

  static BudgetTreeParams make(int n, double eps, double split_constant = 16.0);

  std::uint64_t slice_size(int depth) const { return 1ULL << (n - depth); }
  std::uint64_t leaves() const { return 1ULL << leaf_depth; }
};

// Budget split of one tree node: estimates the p-mass of the left child
// slice (ell), floors it, and clamps so both children stay feasible and
// sum to k_z. Deterministic per (seed, depth, node_index).
std::pair<std::uint64_t, std::uint64_t> split_budget(
    const BudgetTreeParams& tree, SplitMode mode,
    const std::function<double(Element)>& p, const OracleSeed& seed, int depth,
    std::uint64_t node_index, std::uint64_t k_z);

// Rescale a leaf predictor so it sums to k_z exactly: slack-proportional
// fill upward, multiplicative scaling downward. Stays in [0,1] and moves
// total variation by exactly |k_z - sum(p)|.
std::vector<double> adjust_leaf_predictor(std::span<const double> p, std::uint64_t k_z);

// Truthful fixed-support-size model: per seed, f is produced by walking
// budget splits from the root to an eps-sized leaf slice and sampling the
// leaf with a BucketedSampler. Every seeded function has exactly k ones.
class FixedWeightModel {
 public:
  FixedWeightModel(CappedPredictor p, std::uint64_t k, double eps,
                   SplitMode mode = SplitMode::automatic, double split_constant = 16.0);

  const BudgetTreeParams& tree() const { return tree_; }
  std::uint64_t support_size() const { return k_; }
  double epsilon() const { return eps_; }
  const CappedPredictor& predictor() const { return *p_; }

  bool eval(const OracleSeed& seed, Element x) const;
  BinaryVector materialize(const OracleSeed& seed) const;
  std::uint64_t node_budget(const OracleSeed& seed, int depth, std::uint64_t index) const;

  ImplementationHandle handle() const;

 private:
  std::pair<std::uint64_t, std::uint64_t> node_split(const OracleSeed& seed, int depth,
                                                     std::uint64_t index,
                                                     std::uint64_t k_z) const;
  std::shared_ptr<const BucketedSampler> leaf_sampler(std::uint64_t leaf_idx,
                                                      std::uint64_t k_z) const;

  std::shared_ptr<const CappedPredictor> p_;
  std::function<double(Element)> p_fn_;
  std::uint64_t k_ = 0;
  double eps_ = 0.1;
  SplitMode mode_ = SplitMode::automatic;
  BudgetTreeParams tree_;
  bool splits_seed_independent_ = false;

  struct Cache {
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> splits;
    std::unordered_map<std::uint64_t, std::shared_ptr<const BucketedSampler>> leaves;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// End-to-end learner of Thm "fixed-weight": multiaccuracy to eps/4 over the
// class augmented with the constant-1 test, wrapped in a FixedWeightModel
// at eps/2. The model is exactly-k truthful by construction.
struct FixedWeightLearnResult {
  CappedPredictor predictor;
  std::shared_ptr<FixedWeightModel> model;
  LearnTrace trace;
};

FixedWeightLearnResult learn_fixed_weight(const ObjectSampler& target,
                                          const DomainSpec& domain, std::uint64_t k,
                                          const DistinguisherClass& cls,
                                          const AuditorParams& auditor, double eps,
                                          Rng& rng,
                                          SplitMode mode = SplitMode::automatic);

}  // namespace hugeobj

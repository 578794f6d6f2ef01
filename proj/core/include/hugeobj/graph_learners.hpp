#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hugeobj/fixed_weight.hpp"
#include "hugeobj/multiaccuracy.hpp"
#include "hugeobj/objects.hpp"
#include "hugeobj/support_boost.hpp"

namespace hugeobj {

// Materialized graph for the desk-scale diagnostics (edges as ordered
// pairs; undirected graphs carry both orientations).
struct EdgeList {
  std::uint64_t vertex_count = 0;
  std::vector<std::pair<Element, Element>> edges;

  double density() const {  // rho_G over ordered pairs
    double n = static_cast<double>(vertex_count);
    return static_cast<double>(edges.size()) / (n * n);
  }
  std::uint64_t count_between(const std::vector<char>& in_u,
                              const std::vector<char>& in_v) const;
};

struct DenseGraphLearnResult {
  CappedPredictor predictor;
  ImplementationHandle model;  // sample view over the pair domain
  LearnTrace trace;
};

// Dense-graph learner: the adjacency matrix as a binary function over the
// pair domain, cuts rewritten as product sets, then plain multiaccuracy.
DenseGraphLearnResult learn_dense_graph(const ObjectSampler& target,
                                        const DomainSpec& pair_domain,
                                        const DistinguisherClass& cut_cls,
                                        const AuditorParams& params, Rng& rng);

// Fixed-edge-count variant: the fixed-weight sampler over the pair domain,
// so every generated graph has exactly m_edges ones in its adjacency
// matrix. Vertex count must be a power of two (budget-tree addressing).
struct FixedEdgesLearnResult {
  CappedPredictor predictor;
  std::shared_ptr<FixedWeightModel> model;
  ImplementationHandle handle;  // pair-domain sample view
  LearnTrace trace;
};

FixedEdgesLearnResult learn_fixed_edges(const ObjectSampler& target,
                                        const DomainSpec& pair_domain,
                                        std::uint64_t m_edges,
                                        const DistinguisherClass& cut_cls,
                                        const AuditorParams& params, double eps, Rng& rng);

// Fixed out-degree d: one fixed-weight sampler per adjacency row, budgets
// all equal to d, rows keyed by row-scoped oracle seeds.
class FixedOutDegreeModel {
 public:
  FixedOutDegreeModel(CappedPredictor pair_predictor, std::uint64_t vertex_count,
                      std::uint64_t d, double eps);

  std::uint64_t out_degree() const { return d_; }

  bool edge(const OracleSeed& seed, Element u, Element v) const;
  BinaryVector materialize_row(const OracleSeed& seed, Element u) const;

  ImplementationHandle handle() const;  // pair-domain sample view

 private:
  std::shared_ptr<const FixedWeightModel> row_model(Element u) const;

  std::shared_ptr<const CappedPredictor> pair_predictor_;
  std::uint64_t n_vertices_;
  std::uint64_t d_;
  double eps_;
  int row_bits_;
  struct RowCache;
  std::shared_ptr<RowCache> rows_;
};

struct FixedOutDegreeLearnResult {
  CappedPredictor predictor;
  std::shared_ptr<FixedOutDegreeModel> model;
  LearnTrace trace;
};

FixedOutDegreeLearnResult learn_fixed_outdegree_dense(const ObjectSampler& target,
                                                      const DomainSpec& pair_domain,
                                                      std::uint64_t d,
                                                      const DistinguisherClass& cut_cls,
                                                      const AuditorParams& params,
                                                      double eps, Rng& rng);

// Sparse-to-dense reduction of Thm "sparse-graph": run the support-access
// learner over the pair domain at density 1/gamma, auditing directly
// against the sparse target's edge view. Returns the dense rejection model.
struct SparseReductionParams {
  double density_ratio = 4.0;  // gamma > 1; dense model density 1/gamma
  AuditorParams audit;         // epsilon is the per-cut detection level
  double beta_constant = 0.1;
  double budget_constant = 40.0;

  void validate() const;
};

struct SparseReductionResult {
  SupportBoostState state;
  ImplementationHandle model;  // support view over the pair domain
  LearnTrace trace;
};

SparseReductionResult learn_sparse_dense_model(const ObjectSampler& target_edges,
                                               const DomainSpec& pair_domain,
                                               const SparseReductionParams& params,
                                               const DistinguisherClass& cut_cls,
                                               Rng& rng);

// Upper-uniformity diagnostics.
struct UniformityWitness {
  std::vector<Element> u, v;
  double ratio = 0.0;   // density ratio against the failed clause's bound
  bool small_set_clause = false;
};

struct UniformityReport {
  bool holds = true;
  UniformityWitness worst;
};

// Exact mode enumerates every ordered pair of disjoint vertex subsets
// (3^N assignments; N <= 12). Sampled mode tries random linear-size pairs,
// degree-ranked candidate sets, and any caller-provided candidates.
UniformityReport upper_uniform_check_exact(const EdgeList& g, double eta, double gamma);
UniformityReport upper_uniform_check_sampled(
    const EdgeList& g, double eta, double gamma, std::uint64_t trials, Rng& rng,
    const std::vector<std::pair<std::vector<Element>, std::vector<Element>>>& candidates =
        {});

// Claim "no-dense-graph": true iff rho_G(U,V)/rho_G > gamma + 2 delta /
// eps^2 (strict), certifying that no graph of density 1/gamma can be
// delta-indistinguishable from G on the (U,V) cut.
bool no_dense_model_witness(const EdgeList& g, const std::vector<Element>& u,
                            const std::vector<Element>& v, double gamma, double delta,
                            double eps);

}  // namespace hugeobj

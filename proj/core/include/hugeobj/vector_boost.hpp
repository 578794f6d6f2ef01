#pragma once

#include <memory>
#include <vector>

#include "hugeobj/auditors.hpp"
#include "hugeobj/multiaccuracy.hpp"
#include "hugeobj/objects.hpp"
#include "hugeobj/predictor.hpp"

namespace hugeobj {

// One predictor per output coordinate of a bit-string function, all with
// base 1/2.
struct CoordinatePredictors {
  DomainSpec domain = DomainSpec::indexed(1);
  int out_bits = 1;
  std::vector<CappedPredictor> coords;

  static CoordinatePredictors uniform(const DomainSpec& domain, int out_bits);

  double eval(int j, Element x) const { return coords.at(static_cast<std::size_t>(j)).eval(x); }
};

// Finite-class audit over (S, j) tests: v = E[(bit_j(v) - p_j(x)) 1(x in S)]
// under the target's (x, v) law.
std::optional<AuditFinding> audit_coord_class(const DistinguisherClass& coord_cls,
                                              const ObjectSampler& target,
                                              const CoordinatePredictors& preds,
                                              const AuditorParams& params, Rng& rng);

// Learner of Thm "func": per-coordinate boosting against (S, j) tests from
// samples (x, f(x)). Update cap ceil(n/gamma^2) plus slack.
CoordinatePredictors learn_bitstring(const ObjectSampler& target, const DomainSpec& domain,
                                     int out_bits, const DistinguisherClass& coord_cls,
                                     const AuditorParams& params, Rng& rng,
                                     LearnTrace* trace = nullptr);

// Model: v_j ~ Ber(p_j(x)) independently per coordinate, keyed by (x, j).
// Answers are (x, v) with x uniform.
ImplementationHandle bitstring_impl(const CoordinatePredictors& preds);

// Learner of Thm "out-d": identical boosting with the target statistic
// averaged over the d unlabeled outgoing edges.
CoordinatePredictors learn_outdegree_d(const ObjectSampler& target_edges,
                                       const DomainSpec& domain, int d,
                                       const DistinguisherClass& coord_cls,
                                       const AuditorParams& params, Rng& rng,
                                       LearnTrace* trace = nullptr);

// Truthful out-degree-d model: per (seed, x), d coordinate-wise draws,
// redrawn wholesale with an incremented retry label on collision; the
// per-seed out-neighborhood is a fixed set of d distinct vertices.
class OutDegreeModel {
 public:
  OutDegreeModel(CoordinatePredictors preds, int d, int max_retries = 64);

  int out_degree() const { return d_; }
  const CoordinatePredictors& predictors() const { return *preds_; }

  std::vector<Element> neighbors(const OracleSeed& seed, Element x) const;

  // Support view of edges: answers (x, v) with x uniform and v a uniform
  // out-neighbor of x.
  ImplementationHandle handle() const;

 private:
  std::shared_ptr<const CoordinatePredictors> preds_;
  int d_;
  int max_retries_;
};

}  // namespace hugeobj

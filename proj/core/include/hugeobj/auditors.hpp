#pragma once

#include <functional>
#include <optional>

#include "hugeobj/distinguishers.hpp"
#include "hugeobj/predictor.hpp"

namespace hugeobj {

// Parameters of a weak agnostic audit: detect violations at level epsilon,
// guarantee returned witnesses at level gamma, fail with probability at
// most delta.
struct AuditorParams {
  double epsilon = 0.1;
  double gamma = 0.05;
  double delta = 0.02;
  std::optional<std::uint64_t> sample_budget;

  void validate() const;

  // Finite-class sample count: ceil(8 ln(4t/delta) / (epsilon-gamma)^2),
  // or the explicit budget override.
  std::uint64_t samples(std::size_t class_size) const;

  double threshold() const { return (epsilon + gamma) / 2.0; }
};

struct AuditFinding {
  Distinguisher witness;
  int sign = +1;  // direction of the violation
  double estimated_advantage = 0.0;
};

// Finite-class sampling auditor over one answer stream: estimates
// v_D = E[score(D, answer)] for every class member from a shared sample
// and returns the max-|v| witness when it clears (epsilon+gamma)/2.
// `score` receives the class index of D.
std::optional<AuditFinding> finite_class_audit(
    const DistinguisherClass& cls,
    const std::function<double(std::size_t, const Answer&)>& score,
    const ObjectSampler& target, const AuditorParams& params, Rng& rng);

// Sample-access audit of a predictor against set-kind distinguishers:
// v_D = E[(f*(x) - p(x)) g_D(x)] estimated from labeled samples.
std::optional<AuditFinding> audit_sample_access(const DistinguisherClass& cls,
                                                const ObjectSampler& target,
                                                const CappedPredictor& p,
                                                const AuditorParams& params, Rng& rng);

// Support-access audit: compares the target's support distribution with the
// predictor-normalized distribution, Pr_{x~p}[x in S] estimated by fresh
// rejection draws from p.  rounds_cap = 0 derives a cap from the predictor
// base.
std::optional<AuditFinding> audit_support_access(const DistinguisherClass& set_cls,
                                                 const ObjectSampler& target_support,
                                                 const CappedPredictor& p,
                                                 const AuditorParams& params, Rng& rng,
                                                 std::uint64_t rounds_cap = 0);

// Same audit over a raw evaluation function (used by learners that keep an
// incrementally maintained value table).
std::optional<AuditFinding> audit_support_access_fn(
    const DistinguisherClass& set_cls, const ObjectSampler& target_support,
    const std::function<double(Element)>& p_eval, const DomainSpec& domain,
    const AuditorParams& params, Rng& rng, std::uint64_t rounds_cap);

// Statistical-query conversion from sample access to support access:
// approximates E_x[phi(x, f*(x))] for phi(x,y) = phi1(x) y + phi2(x)(1-y)
// using only uniform domain draws, support draws, and the support size m.
double sq_support_oracle(const std::function<double(Element)>& phi1,
                         const std::function<double(Element)>& phi2,
                         const ObjectSampler& support_view, const DomainSpec& domain,
                         std::uint64_t m, double eps, Rng& rng);

}  // namespace hugeobj

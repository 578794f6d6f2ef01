#pragma once

#include <optional>

#include "hugeobj/auditors.hpp"
#include "hugeobj/multiaccuracy.hpp"
#include "hugeobj/objects.hpp"
#include "hugeobj/predictor.hpp"

namespace hugeobj {

// Knobs of the support-access learner. beta = beta_constant * gamma *
// alpha^2 is the calibration window; the total update budget is
// ceil(budget_constant / (gamma^2 alpha^4)).
struct SupportBoostOptions {
  double alpha = 0.25;  // target density E_x[f*]
  AuditorParams audit;
  double beta_constant = 0.1;
  double budget_constant = 40.0;
  bool exact_calibration = true;  // enumerate E[p] when |X| <= 2^20
  std::uint64_t rejection_rounds_cap = 0;  // 0 -> derived from alpha

  double beta() const { return beta_constant * audit.gamma * alpha * alpha; }
  std::uint64_t update_budget() const;
  void validate(const DomainSpec& domain) const;
};

struct SupportBoostState {
  CappedPredictor predictor;
  double alpha = 0.25;
  double beta = 0.0;
  std::uint64_t set_updates = 0;
  std::uint64_t calibration_updates = 0;
  std::uint64_t budget = 0;

  std::uint64_t total_updates() const { return set_updates + calibration_updates; }
};

// Mass calibration: estimate E_x[p(x)]; while it strays from alpha by more
// than beta, push the whole domain by +-beta. Counts against the shared
// update budget.
void calibrate_mass(SupportBoostState& state, const SupportBoostOptions& opt, Rng& rng);

// Learner of Thm "rand-one": alternates support-access audits (appending
// (S, b gamma alpha |X|/|S|)) with mass calibration until both pass.
SupportBoostState learn_support_access(const ObjectSampler& target_support,
                                       const DomainSpec& domain,
                                       const DistinguisherClass& set_cls,
                                       const SupportBoostOptions& opt, Rng& rng,
                                       LearnTrace* trace = nullptr);

// Support-access model: rejection sampling with the accept bit keyed by x
// only, so each seed fixes one function and the returned law is
// p-normalized. max_rounds = 0 derives ceil((10/mean_hint) ln(1/1e-6)).
ImplementationHandle rejection_sampler_impl(const CappedPredictor& p,
                                            std::uint64_t max_rounds = 0);

}  // namespace hugeobj

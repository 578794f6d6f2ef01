#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hugeobj/auditors.hpp"
#include "hugeobj/objects.hpp"
#include "hugeobj/predictor.hpp"

namespace hugeobj {

// Per-run bookkeeping. Potentials are recomputable from the returned
// predictor's term prefixes, so only counters and names are traced.
struct LearnTrace {
  std::uint64_t updates = 0;
  std::uint64_t audit_calls = 0;
  std::uint64_t calibrations = 0;
  std::vector<std::string> update_names;
};

// Boost a predictor until the auditor finds no violation: every finding
// (g, b) appends the term (g, b*gamma). The iteration cap is
// ceil(4/gamma^2) plus slack; exceeding it means the auditor broke its
// contract and is reported as non-convergence.
CappedPredictor learn_multiaccurate(const ObjectSampler& target,
                                    const DistinguisherClass& cls,
                                    const DomainSpec& domain, const AuditorParams& params,
                                    Rng& rng, LearnTrace* trace = nullptr,
                                    std::optional<double> base = std::nullopt);

// Model of Thm "sample-function": per seed, f(x) ~ Ber(p(x)) independently
// across x, sampled lazily and consistently from the seed.
ImplementationHandle bernoulli_model_impl(const CappedPredictor& p);

}  // namespace hugeobj

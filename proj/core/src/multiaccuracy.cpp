#include "hugeobj/multiaccuracy.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace hugeobj {

CappedPredictor learn_multiaccurate(const ObjectSampler& target,
                                    const DistinguisherClass& cls,
                                    const DomainSpec& domain, const AuditorParams& params,
                                    Rng& rng, LearnTrace* trace,
                                    std::optional<double> base) {
  params.validate();
  if (target.kind() != AccessKind::sample)
    throw std::invalid_argument("learn_multiaccurate: target must be a sample view");

  CappedPredictor p;
  p.domain = domain;
  p.base = base.value_or(0.5);

  const double gamma = params.gamma;
  const std::uint64_t cap =
      static_cast<std::uint64_t>(std::ceil(4.0 / (gamma * gamma))) + 8;

  bool confirmed_clean = false;
  while (!confirmed_clean) {
    auto finding = audit_sample_access(cls, target, p, params, rng);
    if (trace) ++trace->audit_calls;
    if (!finding) {
      // Second audit with fresh randomness before trusting convergence.
      finding = audit_sample_access(cls, target, p, params, rng);
      if (trace) ++trace->audit_calls;
      if (!finding) {
        confirmed_clean = true;
        break;
      }
    }
    if (p.terms.size() >= cap)
      throw std::runtime_error(
          "learn_multiaccurate: update cap exceeded (auditor contract violation?)");
    SignedTest g = to_signed_test(finding->witness);
    PredictorTerm term{g.g, finding->sign * gamma, g.name};
    p.append(std::move(term));
    if (trace) {
      ++trace->updates;
      trace->update_names.push_back(g.name);
    }
  }
  return p;
}

ImplementationHandle bernoulli_model_impl(const CappedPredictor& p) {
  ImplementationHandle impl;
  impl.kind = AccessKind::sample;
  impl.domain = p.domain;
  impl.description = "bernoulli-product(" + std::to_string(p.terms.size()) + " terms)";
  auto pred = std::make_shared<const CappedPredictor>(p);
  impl.entry = [pred](const OracleSeed& seed, Element x) -> std::uint64_t {
    return oracle_bernoulli(seed, Label("ber", x), pred->eval(x)) ? 1 : 0;
  };
  auto entry = impl.entry;
  const std::uint64_t n = p.domain.cardinality();
  impl.answer = [entry, n](const OracleSeed& seed, Rng& rng, Element) -> Answer {
    Element x = rng.next_below(n);
    return {x, entry(seed, x)};
  };
  return impl;
}

}  // namespace hugeobj

#include "hugeobj/auditors.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hugeobj/stats.hpp"

namespace hugeobj {

void AuditorParams::validate() const {
  if (!(gamma > 0.0 && gamma <= epsilon && epsilon < 1.0))
    throw std::invalid_argument("AuditorParams: need 0 < gamma <= epsilon < 1");
  if (gamma == epsilon && !sample_budget)
    throw std::invalid_argument("AuditorParams: gamma = epsilon needs an explicit budget");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("AuditorParams: delta outside (0,1)");
}

std::uint64_t AuditorParams::samples(std::size_t class_size) const {
  if (sample_budget) return *sample_budget;
  double t = static_cast<double>(std::max<std::size_t>(class_size, 1));
  double k = 8.0 * std::log(4.0 * t / delta) / ((epsilon - gamma) * (epsilon - gamma));
  return static_cast<std::uint64_t>(std::ceil(k));
}

std::optional<AuditFinding> finite_class_audit(
    const DistinguisherClass& cls,
    const std::function<double(std::size_t, const Answer&)>& score,
    const ObjectSampler& target, const AuditorParams& params, Rng& rng) {
  params.validate();
  if (cls.empty()) return std::nullopt;
  const std::uint64_t k = params.samples(cls.size());
  std::vector<double> sums(cls.size(), 0.0);
  for (std::uint64_t i = 0; i < k; ++i) {
    Answer a = target.draw(rng);
    for (std::size_t d = 0; d < cls.size(); ++d) sums[d] += score(d, a);
  }
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t d = 0; d < cls.size(); ++d) {
    double v = std::abs(sums[d]) / static_cast<double>(k);
    if (v > best_abs) {
      best_abs = v;
      best = d;
    }
  }
  if (best_abs <= params.threshold()) return std::nullopt;
  AuditFinding f;
  f.witness = cls[best];
  f.sign = sums[best] >= 0.0 ? +1 : -1;
  f.estimated_advantage = best_abs;
  return f;
}

std::optional<AuditFinding> audit_sample_access(const DistinguisherClass& cls,
                                                const ObjectSampler& target,
                                                const CappedPredictor& p,
                                                const AuditorParams& params, Rng& rng) {
  if (target.kind() != AccessKind::sample)
    throw std::invalid_argument("audit_sample_access: target is not a sample view");
  // Cache the signed tests once; the score touches every class member per draw.
  std::vector<SignedTest> tests;
  tests.reserve(cls.size());
  for (const auto& d : cls) tests.push_back(to_signed_test(d));

  const std::uint64_t n_card = target.domain().cardinality();
  if (n_card <= kEnumerableMax && !cls.empty()) {
    // Tabulated fast path: the sample budget usually dwarfs the domain.
    std::vector<double> pt(n_card);
    for (Element x = 0; x < n_card; ++x) pt[x] = p.eval(x);
    std::vector<std::vector<double>> gt(cls.size(), std::vector<double>(n_card));
    for (std::size_t d = 0; d < cls.size(); ++d)
      for (Element x = 0; x < n_card; ++x) gt[d][x] = tests[d].g(x);
    auto score = [&pt, &gt](std::size_t idx, const Answer& a) -> double {
      double y = static_cast<double>(a.y & 1ULL);
      return (y - pt[a.x]) * gt[idx][a.x];
    };
    return finite_class_audit(cls, score, target, params, rng);
  }
  auto score = [&](std::size_t idx, const Answer& a) -> double {
    double y = static_cast<double>(a.y & 1ULL);
    return (y - p.eval(a.x)) * tests[idx].g(a.x);
  };
  return finite_class_audit(cls, score, target, params, rng);
}

std::optional<AuditFinding> audit_support_access_fn(
    const DistinguisherClass& set_cls, const ObjectSampler& target_support,
    const std::function<double(Element)>& p_eval, const DomainSpec& domain,
    const AuditorParams& params, Rng& rng, std::uint64_t rounds_cap) {
  params.validate();
  if (target_support.kind() != AccessKind::support)
    throw std::invalid_argument("audit_support_access: target is not a support view");
  if (set_cls.empty()) return std::nullopt;
  for (const auto& d : set_cls)
    if (d.kind != Distinguisher::Kind::set)
      throw std::invalid_argument("audit_support_access: class must be set-kind");
  if (rounds_cap == 0)
    rounds_cap = static_cast<std::uint64_t>(std::ceil(1024.0 * std::log(1e6)));

  const std::uint64_t n_card = domain.cardinality();
  const std::uint64_t k = params.samples(set_cls.size());
  std::vector<double> target_hits(set_cls.size(), 0.0);
  std::vector<double> model_hits(set_cls.size(), 0.0);
  auto count = [&](Element x, std::vector<double>& hits) {
    for (std::size_t d = 0; d < set_cls.size(); ++d)
      if (set_cls[d].set.contains(x)) hits[d] += 1.0;
  };
  for (std::uint64_t i = 0; i < k; ++i) {
    Answer a = target_support.draw(rng);
    count(a.x, target_hits);
    bool accepted = false;
    for (std::uint64_t round = 0; round < rounds_cap; ++round) {
      Element x = rng.next_below(n_card);
      if (rng.next_bernoulli(p_eval(x))) {
        count(x, model_hits);
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw std::runtime_error("rejection sampling from predictor exhausted its round cap");
  }
  std::size_t best = 0;
  double best_abs = -1.0;
  double best_signed = 0.0;
  for (std::size_t d = 0; d < set_cls.size(); ++d) {
    double v = (target_hits[d] - model_hits[d]) / static_cast<double>(k);
    if (std::abs(v) > best_abs) {
      best_abs = std::abs(v);
      best_signed = v;
      best = d;
    }
  }
  if (best_abs <= params.threshold()) return std::nullopt;
  AuditFinding f;
  f.witness = set_cls[best];
  f.sign = best_signed >= 0.0 ? +1 : -1;
  f.estimated_advantage = best_abs;
  return f;
}

std::optional<AuditFinding> audit_support_access(const DistinguisherClass& set_cls,
                                                 const ObjectSampler& target_support,
                                                 const CappedPredictor& p,
                                                 const AuditorParams& params, Rng& rng,
                                                 std::uint64_t rounds_cap) {
  if (rounds_cap == 0) {
    double hint = std::max(p.base, 1.0 / 1024.0);  // dense-only guard elsewhere
    rounds_cap = static_cast<std::uint64_t>(std::ceil((10.0 / hint) * std::log(1e6)));
  }
  const std::uint64_t n_card = p.domain.cardinality();
  if (n_card <= kEnumerableMax) {
    auto table = std::make_shared<std::vector<double>>(n_card);
    for (Element x = 0; x < n_card; ++x) (*table)[x] = p.eval(x);
    return audit_support_access_fn(
        set_cls, target_support, [table](Element x) { return (*table)[x]; }, p.domain,
        params, rng, rounds_cap);
  }
  return audit_support_access_fn(
      set_cls, target_support, [&p](Element x) { return p.eval(x); }, p.domain, params,
      rng, rounds_cap);
}

double sq_support_oracle(const std::function<double(Element)>& phi1,
                         const std::function<double(Element)>& phi2,
                         const ObjectSampler& support_view, const DomainSpec& domain,
                         std::uint64_t m, double eps, Rng& rng) {
  if (support_view.kind() != AccessKind::support)
    throw std::invalid_argument("sq_support_oracle: need a support view");
  if (m > domain.cardinality())
    throw std::invalid_argument("sq_support_oracle: m exceeds |X|");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("sq_support_oracle: eps");
  const double n = static_cast<double>(domain.cardinality());
  const double log_term = std::log(2.0 * n * n);

  // v1: E_x[phi2(x)] from uniform draws, to +-eps/2 w.p. 1 - |X|^-2.
  const std::uint64_t n1 =
      static_cast<std::uint64_t>(std::ceil(2.0 * log_term / (eps * eps)));
  double v1 = 0.0;
  for (std::uint64_t i = 0; i < n1; ++i) v1 += phi2(rng.next_below(domain.cardinality()));
  v1 /= static_cast<double>(n1);

  // v2: E_{x~supp}[phi1(x) - phi2(x)] from support draws (range 2).
  const std::uint64_t n2 =
      static_cast<std::uint64_t>(std::ceil(8.0 * log_term / (eps * eps)));
  double v2 = 0.0;
  for (std::uint64_t i = 0; i < n2; ++i) {
    Element x = support_view.draw(rng).x;
    v2 += phi1(x) - phi2(x);
  }
  v2 /= static_cast<double>(n2);

  return v1 + (static_cast<double>(m) / n) * v2;
}

}  // namespace hugeobj

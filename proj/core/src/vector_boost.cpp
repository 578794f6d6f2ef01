#include "hugeobj/vector_boost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hugeobj {

CoordinatePredictors CoordinatePredictors::uniform(const DomainSpec& domain,
                                                   int out_bits) {
  if (out_bits < 1 || out_bits > 62)
    throw std::invalid_argument("CoordinatePredictors: out_bits");
  CoordinatePredictors cp;
  cp.domain = domain;
  cp.out_bits = out_bits;
  cp.coords.assign(static_cast<std::size_t>(out_bits),
                   CappedPredictor::constant(domain, 0.5));
  return cp;
}

std::optional<AuditFinding> audit_coord_class(const DistinguisherClass& coord_cls,
                                              const ObjectSampler& target,
                                              const CoordinatePredictors& preds,
                                              const AuditorParams& params, Rng& rng) {
  for (const auto& d : coord_cls) {
    if (d.kind != Distinguisher::Kind::coord_set)
      throw std::invalid_argument("audit_coord_class: class must be coord_set-kind");
    if (d.coord < 0 || d.coord >= preds.out_bits)
      throw std::invalid_argument("audit_coord_class: coordinate out of range");
  }
  auto score = [&](std::size_t idx, const Answer& a) -> double {
    const Distinguisher& d = coord_cls[idx];
    if (!d.set.contains(a.x)) return 0.0;
    double bit = static_cast<double>((a.y >> d.coord) & 1ULL);
    return bit - preds.eval(d.coord, a.x);
  };
  return finite_class_audit(coord_cls, score, target, params, rng);
}

namespace {

CoordinatePredictors boost_coords(const ObjectSampler& target, const DomainSpec& domain,
                                  int out_bits, const DistinguisherClass& coord_cls,
                                  const AuditorParams& params, Rng& rng,
                                  LearnTrace* trace) {
  params.validate();
  CoordinatePredictors preds = CoordinatePredictors::uniform(domain, out_bits);
  const double gamma = params.gamma;
  const std::uint64_t cap =
      static_cast<std::uint64_t>(
          std::ceil(static_cast<double>(out_bits) / (gamma * gamma))) + 8;
  std::uint64_t updates = 0;
  while (true) {
    auto finding = audit_coord_class(coord_cls, target, preds, params, rng);
    if (trace) ++trace->audit_calls;
    if (!finding) {
      finding = audit_coord_class(coord_cls, target, preds, params, rng);
      if (trace) ++trace->audit_calls;
      if (!finding) break;
    }
    if (updates >= cap)
      throw std::runtime_error("coordinate boosting: update cap exceeded");
    const int j = finding->witness.coord;
    preds.coords[static_cast<std::size_t>(j)].append(
        PredictorTerm::from_set(finding->witness.set, finding->sign * gamma));
    ++updates;
    if (trace) {
      ++trace->updates;
      trace->update_names.push_back(finding->witness.name);
    }
  }
  return preds;
}

}  // namespace

CoordinatePredictors learn_bitstring(const ObjectSampler& target, const DomainSpec& domain,
                                     int out_bits, const DistinguisherClass& coord_cls,
                                     const AuditorParams& params, Rng& rng,
                                     LearnTrace* trace) {
  if (target.kind() != AccessKind::sample)
    throw std::invalid_argument("learn_bitstring: target must be a sample view");
  return boost_coords(target, domain, out_bits, coord_cls, params, rng, trace);
}

CoordinatePredictors learn_outdegree_d(const ObjectSampler& target_edges,
                                       const DomainSpec& domain, int d,
                                       const DistinguisherClass& coord_cls,
                                       const AuditorParams& params, Rng& rng,
                                       LearnTrace* trace) {
  if (d < 1) throw std::invalid_argument("learn_outdegree_d: d < 1");
  if (target_edges.kind() != AccessKind::support)
    throw std::invalid_argument("learn_outdegree_d: target must be an edge view");
  // Edges arrive unlabeled; averaging over the d outgoing edges is exactly
  // what the empirical per-sample statistic estimates.
  return boost_coords(target_edges, domain,
                      domain.kind() == DomainSpec::Kind::bitstrings ? domain.bits() : 1,
                      coord_cls, params, rng, trace);
}

ImplementationHandle bitstring_impl(const CoordinatePredictors& preds) {
  auto p = std::make_shared<const CoordinatePredictors>(preds);
  ImplementationHandle impl;
  impl.kind = AccessKind::sample;
  impl.domain = preds.domain;
  impl.description = "bitstring-product(" + std::to_string(preds.out_bits) + " bits)";
  impl.entry = [p](const OracleSeed& seed, Element x) -> std::uint64_t {
    std::uint64_t v = 0;
    for (int j = 0; j < p->out_bits; ++j)
      if (oracle_bernoulli(seed, Label("bit", x, static_cast<std::uint64_t>(j)),
                           p->eval(j, x)))
        v |= (1ULL << j);
    return v;
  };
  auto entry = impl.entry;
  const std::uint64_t n_card = preds.domain.cardinality();
  impl.answer = [entry, n_card](const OracleSeed& seed, Rng& rng, Element) -> Answer {
    Element x = rng.next_below(n_card);
    return {x, entry(seed, x)};
  };
  return impl;
}

OutDegreeModel::OutDegreeModel(CoordinatePredictors preds, int d, int max_retries)
    : preds_(std::make_shared<const CoordinatePredictors>(std::move(preds))),
      d_(d),
      max_retries_(max_retries) {
  if (d_ < 1) throw std::invalid_argument("OutDegreeModel: d < 1");
  if (preds_->domain.cardinality() < static_cast<std::uint64_t>(d_))
    throw std::invalid_argument("OutDegreeModel: domain smaller than d");
}

namespace {

std::vector<Element> draw_neighbors(const CoordinatePredictors& preds, int d,
                                    int max_retries, const OracleSeed& seed, Element x) {
  const int nb = preds.out_bits;
  std::vector<Element> vs(static_cast<std::size_t>(d));
  for (int retry = 0; retry < max_retries; ++retry) {
    for (int t = 0; t < d; ++t) {
      std::uint64_t v = 0;
      for (int j = 0; j < nb; ++j) {
        Label l("out", x, static_cast<std::uint64_t>(retry),
                static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(j));
        if (oracle_bernoulli(seed, l, preds.eval(j, x))) v |= (1ULL << j);
      }
      vs[static_cast<std::size_t>(t)] = v;
    }
    std::vector<Element> sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return vs;
  }
  throw std::runtime_error(
      "OutDegreeModel: retry cap hit; predictors too degenerate for distinct draws");
}

}  // namespace

std::vector<Element> OutDegreeModel::neighbors(const OracleSeed& seed, Element x) const {
  return draw_neighbors(*preds_, d_, max_retries_, seed, x);
}

ImplementationHandle OutDegreeModel::handle() const {
  auto preds = preds_;
  const int d = d_;
  const int retries = max_retries_;
  ImplementationHandle impl;
  impl.kind = AccessKind::support;
  impl.domain = preds_->domain;
  impl.description = "out-degree(" + std::to_string(d_) + ")";
  const std::uint64_t n_card = preds_->domain.cardinality();
  impl.answer = [preds, d, retries, n_card](const OracleSeed& seed, Rng& rng,
                                            Element) -> Answer {
    Element x = rng.next_below(n_card);
    std::vector<Element> vs = draw_neighbors(*preds, d, retries, seed, x);
    Element v = vs[rng.next_below(vs.size())];
    return {x, v};
  };
  return impl;
}

}  // namespace hugeobj

#include "hugeobj/support_boost.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "hugeobj/stats.hpp"

namespace hugeobj {

std::uint64_t SupportBoostOptions::update_budget() const {
  double g = audit.gamma;
  return static_cast<std::uint64_t>(
      std::ceil(budget_constant / (g * g * alpha * alpha * alpha * alpha)));
}

void SupportBoostOptions::validate(const DomainSpec&) const {
  audit.validate();
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("SupportBoostOptions: alpha outside (0,1]");
  // The method degrades below constant density; sparse objects route
  // through the graph reduction instead.
  if (alpha < std::pow(2.0, -10.0))
    throw std::invalid_argument("SupportBoostOptions: alpha < 2^-10 (sparse target)");
}

namespace {

double estimate_mean(const CappedPredictor& p, const SupportBoostOptions& opt, Rng& rng) {
  const std::uint64_t n_card = p.domain.cardinality();
  if (opt.exact_calibration && n_card <= kEnumerableMax)
    return p.exact_sum() / static_cast<double>(n_card);
  // Hoeffding-sized to accuracy beta/100 at confidence 1 - delta/budget.
  const double acc = opt.beta() / 100.0;
  const double delta = opt.audit.delta / static_cast<double>(opt.update_budget());
  const std::uint64_t m = hoeffding_samples(acc, delta);
  double s = 0.0;
  for (std::uint64_t i = 0; i < m; ++i) s += p.eval(rng.next_below(n_card));
  return s / static_cast<double>(m);
}

}  // namespace

void calibrate_mass(SupportBoostState& state, const SupportBoostOptions& opt, Rng& rng) {
  const double beta = state.beta;
  const std::uint64_t round_cap =
      static_cast<std::uint64_t>(std::ceil(10.0 / (beta * beta)));
  for (std::uint64_t round = 0; round <= round_cap; ++round) {
    double est = estimate_mean(state.predictor, opt, rng);
    if (std::abs(est - state.alpha) <= beta) return;
    if (state.total_updates() >= state.budget)
      throw std::runtime_error("support learner: update budget exhausted in calibration");
    double w = (state.alpha > est) ? beta : -beta;
    state.predictor.append(
        PredictorTerm::from_set(SetSpec::whole_domain(state.predictor.domain), w));
    ++state.calibration_updates;
  }
  throw std::runtime_error("calibrate_mass: round cap exceeded");
}

namespace {

// Incrementally maintained predictor values over an enumerable domain.
// Lcap is a left fold, so appending a term updates every entry in place.
struct ValueCache {
  std::vector<double> vals;

  void append(const PredictorTerm& term) {
    for (Element x = 0; x < vals.size(); ++x)
      vals[x] = cap01(vals[x] + term.weight * term.test(x));
  }
  void append_uniform(double w) {
    for (double& v : vals) v = cap01(v + w);
  }
  double mean() const {
    double s = 0.0;
    for (double v : vals) s += v;
    return s / static_cast<double>(vals.size());
  }
};

// Calibration against a live value cache.
void calibrate_cached(SupportBoostState& state, ValueCache& cache) {
  const double beta = state.beta;
  const std::uint64_t round_cap =
      static_cast<std::uint64_t>(std::ceil(10.0 / (beta * beta)));
  for (std::uint64_t round = 0; round <= round_cap; ++round) {
    double est = cache.mean();
    if (std::abs(est - state.alpha) <= beta) return;
    if (state.total_updates() >= state.budget)
      throw std::runtime_error("support learner: update budget exhausted in calibration");
    double w = (state.alpha > est) ? beta : -beta;
    state.predictor.append(
        PredictorTerm::from_set(SetSpec::whole_domain(state.predictor.domain), w));
    cache.append_uniform(w);
    ++state.calibration_updates;
  }
  throw std::runtime_error("calibrate_mass: round cap exceeded");
}

}  // namespace

SupportBoostState learn_support_access(const ObjectSampler& target_support,
                                       const DomainSpec& domain,
                                       const DistinguisherClass& set_cls,
                                       const SupportBoostOptions& opt, Rng& rng,
                                       LearnTrace* trace) {
  opt.validate(domain);
  if (target_support.kind() != AccessKind::support)
    throw std::invalid_argument("learn_support_access: target must be a support view");

  SupportBoostState state;
  state.predictor = CappedPredictor::constant(domain, opt.alpha);
  state.alpha = opt.alpha;
  state.beta = opt.beta();
  state.budget = opt.update_budget();

  const double n_real = static_cast<double>(domain.cardinality());
  std::uint64_t rounds_cap = opt.rejection_rounds_cap;
  if (rounds_cap == 0)
    rounds_cap =
        static_cast<std::uint64_t>(std::ceil((10.0 / opt.alpha) * std::log(1e6)));

  const bool cached = opt.exact_calibration && domain.cardinality() <= kEnumerableMax;
  ValueCache cache;
  if (cached) cache.vals.assign(domain.cardinality(), cap01(opt.alpha));
  auto p_fn = [&](Element x) {
    return cached ? cache.vals[x] : state.predictor.eval(x);
  };

  while (true) {
    auto finding = audit_support_access_fn(set_cls, target_support, p_fn, domain,
                                           opt.audit, rng, rounds_cap);
    if (trace) ++trace->audit_calls;
    if (!finding) break;
    if (state.total_updates() >= state.budget)
      throw std::runtime_error("support learner: update budget exhausted");
    const SetSpec& s = finding->witness.set;
    std::uint64_t set_size = s.size ? *s.size : s.exact_size(domain);
    if (set_size == 0) throw std::logic_error("support learner: witness with empty set");
    double w = finding->sign * opt.audit.gamma * opt.alpha * n_real /
               static_cast<double>(set_size);
    PredictorTerm term = PredictorTerm::from_set(s, w);
    if (cached) cache.append(term);
    state.predictor.append(std::move(term));
    ++state.set_updates;
    if (trace) {
      ++trace->updates;
      trace->update_names.push_back(s.name);
    }
    if (cached) calibrate_cached(state, cache);
    else calibrate_mass(state, opt, rng);
    if (trace) trace->calibrations = state.calibration_updates;
  }
  // Converged: one last calibration confirmation keeps the exit invariant
  // |E[p] - alpha| <= beta.
  if (cached) calibrate_cached(state, cache);
  else calibrate_mass(state, opt, rng);
  if (trace) trace->calibrations = state.calibration_updates;
  return state;
}

ImplementationHandle rejection_sampler_impl(const CappedPredictor& p,
                                            std::uint64_t max_rounds) {
  auto pred = std::make_shared<const CappedPredictor>(p);
  const std::uint64_t n_card = p.domain.cardinality();
  // Tabulated values at enumerable scale (the model-internal analogue of a
  // test fixture); programs only beyond 2^20.
  std::shared_ptr<const std::vector<double>> table;
  if (n_card <= kEnumerableMax) {
    auto t = std::make_shared<std::vector<double>>(n_card);
    double total = 0.0;
    for (Element x = 0; x < n_card; ++x) total += (*t)[x] = pred->eval(x);
    if (total <= 0.0)
      throw std::domain_error("rejection_sampler_impl: predictor has zero mass");
    table = std::move(t);
  }
  if (max_rounds == 0) {
    double hint = std::max(p.base, 1.0 / 1024.0);
    max_rounds = static_cast<std::uint64_t>(std::ceil((10.0 / hint) * std::log(1e6)));
  }

  ImplementationHandle impl;
  impl.kind = AccessKind::support;
  impl.domain = p.domain;
  impl.description = "rejection-sampler(" + std::to_string(p.terms.size()) + " terms)";
  impl.entry = [pred, table](const OracleSeed& seed, Element x) -> std::uint64_t {
    double v = table ? (*table)[x] : pred->eval(x);
    return oracle_bernoulli(seed, Label("rs.acc", x), v) ? 1 : 0;
  };
  auto entry = impl.entry;
  impl.answer = [entry, n_card, max_rounds](const OracleSeed& seed, Rng& rng,
                                            Element) -> Answer {
    for (std::uint64_t round = 0; round < max_rounds; ++round) {
      Element x = rng.next_below(n_card);
      if (entry(seed, x)) return {x, 1};
    }
    throw std::runtime_error("rejection_sampler_impl: round cap exhausted");
  };
  return impl;
}

}  // namespace hugeobj

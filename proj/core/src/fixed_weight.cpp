#include "hugeobj/fixed_weight.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hugeobj {

BinaryVector greedy_topk(std::span<const double> w, std::uint64_t k) {
  const std::uint64_t n = w.size();
  if (k > n) throw std::invalid_argument("greedy_topk: k out of range");
  std::vector<std::uint64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return w[a] > w[b]; });
  BinaryVector f(n, 0);
  for (std::uint64_t i = 0; i < k; ++i) f[order[i]] = 1;
  return f;
}

MwSchedule MwSchedule::for_accuracy(std::uint64_t n, double eps) {
  if (n < 1) throw std::invalid_argument("MwSchedule: empty domain");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("MwSchedule: eps");
  MwSchedule s;
  s.domain_size = n;
  double ln2n = std::log(2.0 * static_cast<double>(n));
  s.iterations = static_cast<std::uint64_t>(std::ceil(4.0 * ln2n / (eps * eps)));
  s.step = std::sqrt(ln2n / static_cast<double>(s.iterations));
  return s;
}

std::vector<BinaryVector> mw_fixed_weight(std::span<const double> p, std::uint64_t k,
                                          double eps) {
  const std::uint64_t n = p.size();
  if (n == 0) throw std::invalid_argument("mw_fixed_weight: empty p");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
      throw std::invalid_argument("mw_fixed_weight: p outside [0,1]");
    total += v;
  }
  if (std::abs(total - static_cast<double>(k)) > 1e-9)
    throw std::invalid_argument("mw_fixed_weight: sum(p) != k");

  const MwSchedule sched = MwSchedule::for_accuracy(n, eps);
  const double alpha = sched.step;

  // Weights over the doubled domain, kept in log space with per-round
  // max-subtraction; greedy only needs the sign pattern of w+ - w-, which
  // positive rescaling preserves.
  std::vector<double> logw(2 * n, 0.0);
  std::vector<double> diff(n, 0.0);
  std::vector<BinaryVector> out;
  out.reserve(sched.iterations);
  for (std::uint64_t it = 0; it < sched.iterations; ++it) {
    double mx = *std::max_element(logw.begin(), logw.end());
    for (std::uint64_t x = 0; x < n; ++x)
      diff[x] = std::exp(logw[x] - mx) - std::exp(logw[n + x] - mx);
    BinaryVector f = greedy_topk(diff, k);
    for (std::uint64_t x = 0; x < n; ++x) {
      double r = static_cast<double>(f[x]) - p[x];
      logw[x] -= alpha * r;
      logw[n + x] += alpha * r;
    }
    out.push_back(std::move(f));
  }
  return out;
}

double mw_max_marginal_deviation(const std::vector<BinaryVector>& fs,
                                 std::span<const double> p) {
  if (fs.empty()) throw std::invalid_argument("mw_max_marginal_deviation: empty list");
  const std::uint64_t n = p.size();
  double worst = 0.0;
  for (std::uint64_t x = 0; x < n; ++x) {
    double s = 0.0;
    for (const auto& f : fs) s += static_cast<double>(f[x]);
    worst = std::max(worst, std::abs(s / static_cast<double>(fs.size()) - p[x]));
  }
  return worst;
}

std::vector<MarginalAtom> exact_marginal_distribution(std::span<const double> p,
                                                      std::uint64_t k) {
  const std::uint64_t n = p.size();
  if (n == 0 || n > 24) throw std::invalid_argument("exact_marginal_distribution: N");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= -1e-9 && v <= 1.0 + 1e-9))
      throw std::invalid_argument("exact_marginal_distribution: p outside [0,1]");
    total += v;
  }
  if (std::abs(total - static_cast<double>(k)) > 1e-9)
    throw std::invalid_argument("exact_marginal_distribution: sum(p) != k");

  // Iterated greedy peeling: take the top-k of the residual marginals,
  // subtract the largest coefficient keeping 0 <= r <= remaining mass.
  std::vector<double> r(p.begin(), p.end());
  double mass = 1.0;
  std::vector<MarginalAtom> atoms;
  const std::size_t atom_cap = static_cast<std::size_t>(n) * n + 1;
  while (mass > 1e-12) {
    BinaryVector f = greedy_topk(r, k);
    double c = mass;
    for (std::uint64_t x = 0; x < n; ++x) {
      if (f[x]) c = std::min(c, r[x]);
      else c = std::min(c, mass - r[x]);
    }
    if (c <= 1e-15)
      throw std::runtime_error("exact_marginal_distribution: stalled decomposition");
    for (std::uint64_t x = 0; x < n; ++x)
      if (f[x]) r[x] -= c;
    mass -= c;
    atoms.push_back({std::move(f), c});
    if (atoms.size() > atom_cap)
      throw std::runtime_error("exact_marginal_distribution: atom cap exceeded");
  }
  // Fold the residual mass (<= 1e-12) into the last atom.
  if (!atoms.empty()) atoms.back().prob += mass;
  return atoms;
}

BucketedSampler::BucketedSampler(std::vector<double> p, std::uint64_t k, double eps)
    : p_(std::move(p)), k_(k) {
  const std::uint64_t n = p_.size();
  if (n == 0) throw std::invalid_argument("BucketedSampler: empty slice");
  if (k_ > n) throw std::invalid_argument("BucketedSampler: k out of range");
  if (!(eps > 1e-4 && eps < 1.0)) throw std::invalid_argument("BucketedSampler: eps");
  double total = 0.0;
  for (double& v : p_) {
    v = cap01(v);
    total += v;
  }
  if (std::abs(total - static_cast<double>(k_)) > 1e-6)
    throw std::invalid_argument("BucketedSampler: sum(p) != k");

  const int u = static_cast<int>(std::ceil(2.0 / eps));
  bucket_of_.resize(n);
  rank_in_bucket_.resize(n);
  bucket_size_.assign(static_cast<std::size_t>(u), 0);
  std::vector<double> s(static_cast<std::size_t>(u), 0.0);
  for (std::uint64_t i = 0; i < n; ++i) {
    int b = std::min(u - 1, static_cast<int>(p_[i] * u));
    bucket_of_[i] = b;
    rank_in_bucket_[i] = bucket_size_[static_cast<std::size_t>(b)]++;
    s[static_cast<std::size_t>(b)] += p_[i];
  }

  bucket_floor_.assign(static_cast<std::size_t>(u), 0);
  mw_slot_of_bucket_.assign(static_cast<std::size_t>(u), -1);
  std::vector<double> t;
  std::uint64_t floor_total = 0;
  for (int b = 0; b < u; ++b) {
    double fl = std::floor(s[static_cast<std::size_t>(b)]);
    std::uint64_t flu = static_cast<std::uint64_t>(fl);
    flu = std::min(flu, bucket_size_[static_cast<std::size_t>(b)]);
    bucket_floor_[static_cast<std::size_t>(b)] = flu;
    floor_total += flu;
    double frac = s[static_cast<std::size_t>(b)] - static_cast<double>(flu);
    if (frac > 1e-12 && bucket_size_[static_cast<std::size_t>(b)] > flu) {
      mw_slot_of_bucket_[static_cast<std::size_t>(b)] = static_cast<int>(t.size());
      t.push_back(std::min(frac, 1.0));
    }
  }
  if (floor_total > k_) throw std::logic_error("BucketedSampler: floors exceed budget");
  const std::uint64_t k_frac = k_ - floor_total;
  if (k_frac > 0 || !t.empty()) {
    if (t.empty()) throw std::logic_error("BucketedSampler: leftover budget, no buckets");
    // Absorb floating drift so the fractional masses sum to k_frac exactly.
    double drift = static_cast<double>(k_frac) - std::accumulate(t.begin(), t.end(), 0.0);
    double adj = drift / static_cast<double>(t.size());
    for (double& v : t) v = std::clamp(v + adj, 0.0, 1.0);
    // Half the error budget goes to the bucket width, half to the rounding
    // of the fractional masses.
    mw_vectors_ = mw_fixed_weight(t, k_frac, eps / 2.0);
  }
}

bool BucketedSampler::eval(const OracleSeed& seed, std::uint64_t idx) const {
  if (idx >= p_.size()) throw std::out_of_range("BucketedSampler::eval");
  const std::size_t b = static_cast<std::size_t>(bucket_of_[idx]);
  std::uint64_t shat = bucket_floor_[b];
  const int slot = mw_slot_of_bucket_[b];
  if (slot >= 0 && !mw_vectors_.empty()) {
    std::uint64_t pick = oracle_below(seed, Label("fw.pick"), mw_vectors_.size());
    shat += mw_vectors_[pick][static_cast<std::size_t>(slot)];
  }
  const std::uint64_t bsz = bucket_size_[b];
  if (shat == 0) return false;
  if (shat >= bsz) return true;
  SeededPermutation perm(bsz, seed, Label("fw.bkt", static_cast<std::uint64_t>(b)));
  return perm.inverse(rank_in_bucket_[idx]) < shat;
}

BinaryVector BucketedSampler::materialize(const OracleSeed& seed) const {
  BinaryVector f(p_.size(), 0);
  for (std::uint64_t i = 0; i < p_.size(); ++i) f[i] = eval(seed, i) ? 1 : 0;
  return f;
}

BinaryVector bucketed_fixed_weight(std::span<const double> p, std::uint64_t k,
                                   double eps, const OracleSeed& seed) {
  BucketedSampler sampler(std::vector<double>(p.begin(), p.end()), k, eps);
  return sampler.materialize(seed);
}

BudgetTreeParams BudgetTreeParams::make(int n, double eps, double split_constant) {
  if (n < 1 || n > 62) throw std::invalid_argument("BudgetTreeParams: n out of range");
  if (!(eps > 1e-4 && eps < 1.0)) throw std::invalid_argument("BudgetTreeParams: eps");
  if (!(split_constant >= 1.0)) throw std::invalid_argument("BudgetTreeParams: C < 1");
  BudgetTreeParams t;
  t.n = n;
  t.eps = eps;
  t.split_constant = split_constant;
  int depth = 0;
  while (depth + 1 <= n &&
         std::pow(2.0, n - (depth + 1)) >= 8.0 / eps)
    ++depth;
  t.leaf_depth = depth;
  t.split_samples = static_cast<std::uint64_t>(
      std::ceil(split_constant * static_cast<double>(n) * static_cast<double>(n) /
                (eps * eps)));
  return t;
}

std::pair<std::uint64_t, std::uint64_t> split_budget(
    const BudgetTreeParams& tree, SplitMode mode,
    const std::function<double(Element)>& p, const OracleSeed& seed, int depth,
    std::uint64_t node_index, std::uint64_t k_z) {
  if (depth < 0 || depth >= tree.leaf_depth)
    throw std::invalid_argument("split_budget: node below leaf level");
  const std::uint64_t child_size = tree.slice_size(depth + 1);
  const std::uint64_t left_index = 2 * node_index;
  const std::uint64_t lo = left_index * child_size;
  if (k_z > tree.slice_size(depth)) throw std::invalid_argument("split_budget: k_z too big");

  const bool exact = (mode == SplitMode::exact) ||
                     (mode == SplitMode::automatic && child_size <= tree.split_samples);
  double ell;
  if (exact) {
    ell = 0.0;
    for (std::uint64_t i = 0; i < child_size; ++i) ell += p(lo + i);
  } else {
    const std::uint64_t m = tree.split_samples;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < m; ++i) {
      Element x = lo + oracle_below(
                           seed, Label("fw.split", static_cast<std::uint64_t>(depth + 1),
                                       left_index, i),
                           child_size);
      sum += p(x);
    }
    ell = static_cast<double>(child_size) * sum / static_cast<double>(m);
  }
  ell = std::clamp(ell, 0.0, static_cast<double>(child_size));

  const std::int64_t k0_hat = static_cast<std::int64_t>(std::floor(ell));
  const std::int64_t k1_hat = static_cast<std::int64_t>(k_z) - k0_hat;
  const std::int64_t cap = static_cast<std::int64_t>(child_size);
  std::uint64_t k0, k1;
  if (k1_hat < 0) {
    k0 = k_z;
    k1 = 0;
  } else if (k1_hat > cap) {
    k0 = k_z - child_size;
    k1 = child_size;
  } else {
    k0 = static_cast<std::uint64_t>(k0_hat);
    k1 = static_cast<std::uint64_t>(k1_hat);
  }
  if (k0 > child_size || k1 > child_size || k0 + k1 != k_z)
    throw std::logic_error("split_budget: clamp produced an infeasible split");
  return {k0, k1};
}

std::vector<double> adjust_leaf_predictor(std::span<const double> p, std::uint64_t k_z) {
  const std::uint64_t n = p.size();
  if (k_z > n) throw std::invalid_argument("adjust_leaf_predictor: k_z out of range");
  double s = 0.0;
  for (double v : p) s += v;
  std::vector<double> out(p.begin(), p.end());
  const double target = static_cast<double>(k_z);
  if (std::abs(s - target) < 1e-15) return out;
  if (target > s) {
    const double slack = static_cast<double>(n) - s;
    const double c = (target - s) / slack;  // slack > 0 since k_z <= n and s < target <= n
    for (double& v : out) v = v + c * (1.0 - v);
  } else {
    const double c = target / s;  // s > 0 since s > target >= 0
    for (double& v : out) v = v * c;
  }
  return out;
}

FixedWeightModel::FixedWeightModel(CappedPredictor p, std::uint64_t k, double eps,
                                   SplitMode mode, double split_constant)
    : p_(std::make_shared<const CappedPredictor>(std::move(p))), k_(k), eps_(eps),
      mode_(mode) {
  if (p_->domain.kind() != DomainSpec::Kind::bitstrings)
    throw std::invalid_argument("FixedWeightModel: domain must be bitstrings(n)");
  if (k_ > p_->domain.cardinality())
    throw std::invalid_argument("FixedWeightModel: k exceeds |X|");
  tree_ = BudgetTreeParams::make(p_->domain.bits(), eps, split_constant);
  auto pref = p_;
  p_fn_ = [pref](Element x) { return pref->eval(x); };
  splits_seed_independent_ =
      (mode_ == SplitMode::exact) ||
      (mode_ == SplitMode::automatic &&
       (tree_.leaf_depth == 0 || tree_.slice_size(1) <= tree_.split_samples));
}

std::pair<std::uint64_t, std::uint64_t> FixedWeightModel::node_split(
    const OracleSeed& seed, int depth, std::uint64_t index, std::uint64_t k_z) const {
  if (splits_seed_independent_) {
    const std::uint64_t key = (static_cast<std::uint64_t>(depth) << 56) | index;
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->splits.find(key);
    if (it != cache_->splits.end()) return it->second;
    auto split = split_budget(tree_, mode_, p_fn_, seed, depth, index, k_z);
    cache_->splits.emplace(key, split);
    return split;
  }
  return split_budget(tree_, mode_, p_fn_, seed, depth, index, k_z);
}

std::shared_ptr<const BucketedSampler> FixedWeightModel::leaf_sampler(
    std::uint64_t leaf_idx, std::uint64_t k_z) const {
  const std::uint64_t slice = tree_.slice_size(tree_.leaf_depth);
  const std::uint64_t key = leaf_idx * (slice + 1) + k_z;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->leaves.find(key);
    if (it != cache_->leaves.end()) return it->second;
  }
  const std::uint64_t lo = leaf_idx * slice;
  std::vector<double> pvals(slice);
  for (std::uint64_t i = 0; i < slice; ++i) pvals[i] = p_fn_(lo + i);
  std::vector<double> adjusted = adjust_leaf_predictor(pvals, k_z);
  // Leaf sampling carries half the marginal-error budget (the tree carries
  // the other half), so the leaf sampler runs at eps/2.
  auto sampler = std::make_shared<const BucketedSampler>(std::move(adjusted), k_z,
                                                         eps_ / 2.0);
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->leaves.emplace(key, sampler);
  return cache_->leaves.at(key);
}

bool FixedWeightModel::eval(const OracleSeed& seed, Element x) const {
  if (x >= p_->domain.cardinality()) throw std::out_of_range("FixedWeightModel::eval");
  const int n = tree_.n;
  std::uint64_t kz = k_;
  for (int d = 0; d < tree_.leaf_depth; ++d) {
    const std::uint64_t idx = x >> (n - d);
    auto [k0, k1] = node_split(seed, d, idx, kz);
    const bool right = ((x >> (n - d - 1)) & 1ULL) != 0;
    kz = right ? k1 : k0;
  }
  const std::uint64_t slice = tree_.slice_size(tree_.leaf_depth);
  const std::uint64_t leaf_idx = x >> (n - tree_.leaf_depth);
  auto sampler = leaf_sampler(leaf_idx, kz);
  OracleSeed leaf_seed = seed.sub(Label("fw.leaf", leaf_idx));
  return sampler->eval(leaf_seed, x - leaf_idx * slice);
}

BinaryVector FixedWeightModel::materialize(const OracleSeed& seed) const {
  const std::uint64_t n_card = p_->domain.cardinality();
  if (n_card > kEnumerableMax)
    throw std::invalid_argument("FixedWeightModel::materialize: domain too large");
  // Budgets level by level, sharing every split.
  std::vector<std::uint64_t> budgets{k_};
  for (int d = 0; d < tree_.leaf_depth; ++d) {
    std::vector<std::uint64_t> next(budgets.size() * 2);
    for (std::uint64_t idx = 0; idx < budgets.size(); ++idx) {
      auto [k0, k1] = node_split(seed, d, idx, budgets[idx]);
      next[2 * idx] = k0;
      next[2 * idx + 1] = k1;
    }
    budgets = std::move(next);
  }
  const std::uint64_t slice = tree_.slice_size(tree_.leaf_depth);
  BinaryVector f(n_card, 0);
  for (std::uint64_t leaf = 0; leaf < budgets.size(); ++leaf) {
    auto sampler = leaf_sampler(leaf, budgets[leaf]);
    OracleSeed leaf_seed = seed.sub(Label("fw.leaf", leaf));
    for (std::uint64_t i = 0; i < slice; ++i)
      f[leaf * slice + i] = sampler->eval(leaf_seed, i) ? 1 : 0;
  }
  return f;
}

std::uint64_t FixedWeightModel::node_budget(const OracleSeed& seed, int depth,
                                            std::uint64_t index) const {
  if (depth < 0 || depth > tree_.leaf_depth)
    throw std::invalid_argument("node_budget: depth out of range");
  std::uint64_t kz = k_;
  for (int d = 0; d < depth; ++d) {
    const std::uint64_t anc = index >> (depth - d);
    auto [k0, k1] = node_split(seed, d, anc, kz);
    const bool right = ((index >> (depth - d - 1)) & 1ULL) != 0;
    kz = right ? k1 : k0;
  }
  return kz;
}

ImplementationHandle FixedWeightModel::handle() const {
  auto model = std::make_shared<const FixedWeightModel>(*this);
  ImplementationHandle impl;
  impl.kind = AccessKind::sample;
  impl.domain = p_->domain;
  impl.description = "fixed-weight(k=" + std::to_string(k_) + ")";
  impl.entry = [model](const OracleSeed& seed, Element x) -> std::uint64_t {
    return model->eval(seed, x) ? 1 : 0;
  };
  const std::uint64_t n_card = p_->domain.cardinality();
  impl.answer = [model, n_card](const OracleSeed& seed, Rng& rng, Element) -> Answer {
    Element x = rng.next_below(n_card);
    return {x, model->eval(seed, x) ? 1ULL : 0ULL};
  };
  return impl;
}

FixedWeightLearnResult learn_fixed_weight(const ObjectSampler& target,
                                          const DomainSpec& domain, std::uint64_t k,
                                          const DistinguisherClass& cls,
                                          const AuditorParams& auditor, double eps,
                                          Rng& rng, SplitMode mode) {
  if (domain.kind() != DomainSpec::Kind::bitstrings)
    throw std::invalid_argument("learn_fixed_weight: domain must be bitstrings(n)");
  DistinguisherClass augmented = cls;
  augmented.push_back(Distinguisher::for_set(SetSpec::whole_domain(domain)));

  AuditorParams ap = auditor;
  ap.epsilon = eps / 4.0;
  ap.gamma = std::min(auditor.gamma, eps / 8.0);

  FixedWeightLearnResult result;
  double base = static_cast<double>(k) / static_cast<double>(domain.cardinality());
  result.predictor = learn_multiaccurate(target, augmented, domain, ap, rng,
                                         &result.trace, base);
  result.model =
      std::make_shared<FixedWeightModel>(result.predictor, k, eps / 2.0, mode);
  return result;
}

}  // namespace hugeobj

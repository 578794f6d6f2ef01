#include "hugeobj/graph_learners.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace hugeobj {

std::uint64_t EdgeList::count_between(const std::vector<char>& in_u,
                                      const std::vector<char>& in_v) const {
  std::uint64_t c = 0;
  for (const auto& [a, b] : edges)
    if (in_u[a] && in_v[b]) ++c;
  return c;
}

namespace {

DistinguisherClass cuts_to_sets(const DistinguisherClass& cut_cls,
                                const DomainSpec& pair_domain) {
  DistinguisherClass out;
  out.reserve(cut_cls.size());
  for (const auto& d : cut_cls) {
    if (d.kind == Distinguisher::Kind::cut) out.push_back(cut_as_set(d, pair_domain));
    else if (d.kind == Distinguisher::Kind::set) out.push_back(d);
    else throw std::invalid_argument("graph learner: class must be cuts");
  }
  return out;
}

int log2_exact(std::uint64_t v, const char* what) {
  int b = 0;
  while ((1ULL << b) < v) ++b;
  if ((1ULL << b) != v) throw std::invalid_argument(std::string(what) + ": not a power of two");
  return b;
}

}  // namespace

DenseGraphLearnResult learn_dense_graph(const ObjectSampler& target,
                                        const DomainSpec& pair_domain,
                                        const DistinguisherClass& cut_cls,
                                        const AuditorParams& params, Rng& rng) {
  DenseGraphLearnResult res;
  DistinguisherClass sets = cuts_to_sets(cut_cls, pair_domain);
  res.predictor =
      learn_multiaccurate(target, sets, pair_domain, params, rng, &res.trace);
  res.model = bernoulli_model_impl(res.predictor);
  res.model.domain = pair_domain;  // keep pair decode for cut distinguishers
  return res;
}

FixedEdgesLearnResult learn_fixed_edges(const ObjectSampler& target,
                                        const DomainSpec& pair_domain,
                                        std::uint64_t m_edges,
                                        const DistinguisherClass& cut_cls,
                                        const AuditorParams& params, double eps,
                                        Rng& rng) {
  const std::uint64_t n_pairs = pair_domain.cardinality();
  int bits = log2_exact(n_pairs, "learn_fixed_edges: pair domain");
  DomainSpec bit_dom = DomainSpec::bitstrings(bits);
  DistinguisherClass sets = cuts_to_sets(cut_cls, pair_domain);

  FixedEdgesLearnResult res;
  FixedWeightLearnResult fw =
      learn_fixed_weight(target, bit_dom, m_edges, sets, params, eps, rng);
  res.predictor = std::move(fw.predictor);
  res.model = std::move(fw.model);
  res.trace = std::move(fw.trace);
  res.handle = res.model->handle();
  res.handle.domain = pair_domain;
  return res;
}

struct FixedOutDegreeModel::RowCache {
  std::mutex mu;
  std::unordered_map<Element, std::shared_ptr<const FixedWeightModel>> rows;
};

FixedOutDegreeModel::FixedOutDegreeModel(CappedPredictor pair_predictor,
                                         std::uint64_t vertex_count, std::uint64_t d,
                                         double eps)
    : pair_predictor_(std::make_shared<const CappedPredictor>(std::move(pair_predictor))),
      n_vertices_(vertex_count),
      d_(d),
      eps_(eps),
      rows_(std::make_shared<RowCache>()) {
  if (d_ > n_vertices_) throw std::invalid_argument("FixedOutDegreeModel: d > N");
  row_bits_ = log2_exact(n_vertices_, "FixedOutDegreeModel: vertex count");
}

std::shared_ptr<const FixedWeightModel> FixedOutDegreeModel::row_model(Element u) const {
  {
    std::lock_guard<std::mutex> lock(rows_->mu);
    auto it = rows_->rows.find(u);
    if (it != rows_->rows.end()) return it->second;
  }
  // Row slice of the pair predictor: p_u(v) = p(u*N + v).
  CappedPredictor row;
  row.domain = DomainSpec::bitstrings(row_bits_);
  row.base = pair_predictor_->base;
  const std::uint64_t n = n_vertices_;
  for (const auto& term : pair_predictor_->terms) {
    auto test = term.test;
    row.terms.push_back(
        {[test, u, n](Element v) { return test(u * n + v); }, term.weight, term.name});
  }
  auto model = std::make_shared<const FixedWeightModel>(std::move(row), d_, eps_);
  std::lock_guard<std::mutex> lock(rows_->mu);
  rows_->rows.emplace(u, model);
  return rows_->rows.at(u);
}

bool FixedOutDegreeModel::edge(const OracleSeed& seed, Element u, Element v) const {
  return row_model(u)->eval(seed.sub(Label("row", u)), v);
}

BinaryVector FixedOutDegreeModel::materialize_row(const OracleSeed& seed, Element u) const {
  return row_model(u)->materialize(seed.sub(Label("row", u)));
}

ImplementationHandle FixedOutDegreeModel::handle() const {
  auto self = std::make_shared<const FixedOutDegreeModel>(*this);
  ImplementationHandle impl;
  impl.kind = AccessKind::sample;
  impl.domain = DomainSpec::pairs(DomainSpec::indexed(n_vertices_));
  impl.description = "fixed-out-degree(" + std::to_string(d_) + ")";
  DomainSpec dom = impl.domain;
  const std::uint64_t n = n_vertices_;
  impl.entry = [self, dom](const OracleSeed& seed, Element e) -> std::uint64_t {
    auto [u, v] = dom.pair_decode(e);
    return self->edge(seed, u, v) ? 1 : 0;
  };
  auto entry = impl.entry;
  impl.answer = [entry, n, dom](const OracleSeed& seed, Rng& rng, Element) -> Answer {
    Element u = rng.next_below(n);
    Element v = rng.next_below(n);
    Element e = dom.pair_encode(u, v);
    return {e, entry(seed, e)};
  };
  return impl;
}

FixedOutDegreeLearnResult learn_fixed_outdegree_dense(const ObjectSampler& target,
                                                      const DomainSpec& pair_domain,
                                                      std::uint64_t d,
                                                      const DistinguisherClass& cut_cls,
                                                      const AuditorParams& params,
                                                      double eps, Rng& rng) {
  const std::uint64_t n_vertices = pair_domain.inner().cardinality();
  DistinguisherClass sets = cuts_to_sets(cut_cls, pair_domain);
  sets.push_back(Distinguisher::for_set(SetSpec::whole_domain(pair_domain)));

  AuditorParams ap = params;
  ap.epsilon = eps / 4.0;
  ap.gamma = std::min(params.gamma, eps / 8.0);

  FixedOutDegreeLearnResult res;
  double base = static_cast<double>(d) / static_cast<double>(n_vertices);
  // Predictor over the pair domain; per-row samplers enforce row weight d.
  CappedPredictor p = learn_multiaccurate(target, sets,
                                          DomainSpec::bitstrings(log2_exact(
                                              pair_domain.cardinality(), "pair domain")),
                                          ap, rng, &res.trace, base);
  res.predictor = p;
  res.model = std::make_shared<FixedOutDegreeModel>(p, n_vertices, d, eps / 2.0);
  return res;
}

void SparseReductionParams::validate() const {
  audit.validate();
  if (!(density_ratio > 1.0))
    throw std::invalid_argument("SparseReductionParams: gamma must exceed 1");
}

SparseReductionResult learn_sparse_dense_model(const ObjectSampler& target_edges,
                                               const DomainSpec& pair_domain,
                                               const SparseReductionParams& params,
                                               const DistinguisherClass& cut_cls,
                                               Rng& rng) {
  params.validate();
  if (target_edges.kind() != AccessKind::support)
    throw std::invalid_argument("learn_sparse_dense_model: target must be an edge view");
  DistinguisherClass sets = cuts_to_sets(cut_cls, pair_domain);

  SupportBoostOptions opt;
  opt.alpha = 1.0 / params.density_ratio;
  opt.audit = params.audit;
  opt.beta_constant = params.beta_constant;
  opt.budget_constant = params.budget_constant;

  SparseReductionResult res;
  // Audit queries go straight to the sparse target's edge view; the dense
  // graph H of the reduction is never constructed.
  res.state = learn_support_access(target_edges, pair_domain, sets, opt, rng, &res.trace);
  res.model = rejection_sampler_impl(res.state.predictor);
  res.model.domain = pair_domain;
  return res;
}

namespace {

struct RatioCheck {
  double ratio;
  bool small_clause;
  bool ok;
};

RatioCheck check_pair(const EdgeList& g, const std::vector<char>& in_u,
                      std::uint64_t cu, const std::vector<char>& in_v, std::uint64_t cv,
                      double eta, double gamma, double rho) {
  const double n = static_cast<double>(g.vertex_count);
  const std::uint64_t e_uv = g.count_between(in_u, in_v);
  if (std::min(cu, cv) >= static_cast<std::uint64_t>(std::ceil(eta * n))) {
    double density = static_cast<double>(e_uv) / (static_cast<double>(cu) * static_cast<double>(cv));
    double bound = gamma * rho;
    return {bound > 0.0 ? density / bound : (e_uv == 0 ? 0.0 : 1e300), false,
            density <= bound};
  }
  double bound = gamma * eta * rho * n * n;
  return {bound > 0.0 ? static_cast<double>(e_uv) / bound : (e_uv == 0 ? 0.0 : 1e300),
          true, static_cast<double>(e_uv) <= bound};
}

std::vector<Element> members_of(const std::vector<char>& mask) {
  std::vector<Element> out;
  for (Element i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

}  // namespace

UniformityReport upper_uniform_check_exact(const EdgeList& g, double eta, double gamma) {
  const std::uint64_t n = g.vertex_count;
  if (n > 12) throw std::invalid_argument("upper_uniform_check_exact: N > 12");
  const double rho = g.density();
  UniformityReport rep;
  rep.worst.ratio = 0.0;
  // Ternary masks: each vertex in U, in V, or in neither.
  std::vector<char> in_u(n, 0), in_v(n, 0);
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    std::uint64_t cu = 0, cv = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      int digit = static_cast<int>(c % 3);
      c /= 3;
      in_u[i] = digit == 1;
      in_v[i] = digit == 2;
      cu += in_u[i];
      cv += in_v[i];
    }
    if (cu == 0 || cv == 0) continue;
    RatioCheck rc = check_pair(g, in_u, cu, in_v, cv, eta, gamma, rho);
    if (rc.ratio > rep.worst.ratio) {
      rep.worst.ratio = rc.ratio;
      rep.worst.small_set_clause = rc.small_clause;
      rep.worst.u = members_of(in_u);
      rep.worst.v = members_of(in_v);
    }
    if (!rc.ok) rep.holds = false;
  }
  return rep;
}

UniformityReport upper_uniform_check_sampled(
    const EdgeList& g, double eta, double gamma, std::uint64_t trials, Rng& rng,
    const std::vector<std::pair<std::vector<Element>, std::vector<Element>>>& candidates) {
  const std::uint64_t n = g.vertex_count;
  const double rho = g.density();
  UniformityReport rep;
  rep.worst.ratio = 0.0;

  auto consider = [&](const std::vector<char>& in_u, std::uint64_t cu,
                      const std::vector<char>& in_v, std::uint64_t cv) {
    if (cu == 0 || cv == 0) return;
    RatioCheck rc = check_pair(g, in_u, cu, in_v, cv, eta, gamma, rho);
    if (rc.ratio > rep.worst.ratio) {
      rep.worst.ratio = rc.ratio;
      rep.worst.small_set_clause = rc.small_clause;
      rep.worst.u = members_of(in_u);
      rep.worst.v = members_of(in_v);
    }
    if (!rc.ok) rep.holds = false;
  };

  // Random disjoint linear-size pairs.
  std::vector<char> in_u(n), in_v(n);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t cu = 0, cv = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      double r = rng.next_real();
      in_u[i] = r < 0.4;
      in_v[i] = r >= 0.4 && r < 0.8;
      cu += in_u[i];
      cv += in_v[i];
    }
    consider(in_u, cu, in_v, cv);
  }

  // Degree-ranked candidates: top-m vertices by degree against themselves,
  // at the eta threshold and a few multiples.
  std::vector<std::uint64_t> degree(n, 0);
  for (const auto& [a, b] : g.edges) {
    ++degree[a];
    (void)b;
  }
  std::vector<Element> by_degree(n);
  for (Element i = 0; i < n; ++i) by_degree[i] = i;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](Element a, Element b) { return degree[a] > degree[b]; });
  for (double mult : {1.0, 2.0, 4.0}) {
    std::uint64_t m = static_cast<std::uint64_t>(std::ceil(eta * mult * static_cast<double>(n)));
    m = std::min<std::uint64_t>(std::max<std::uint64_t>(m, 2), n);
    std::fill(in_u.begin(), in_u.end(), 0);
    for (std::uint64_t i = 0; i < m; ++i) in_u[by_degree[i]] = 1;
    consider(in_u, m, in_u, m);
  }

  for (const auto& [cu_list, cv_list] : candidates) {
    std::fill(in_u.begin(), in_u.end(), 0);
    std::fill(in_v.begin(), in_v.end(), 0);
    for (Element e : cu_list) in_u[e] = 1;
    for (Element e : cv_list) in_v[e] = 1;
    consider(in_u, cu_list.size(), in_v, cv_list.size());
  }
  return rep;
}

bool no_dense_model_witness(const EdgeList& g, const std::vector<Element>& u,
                            const std::vector<Element>& v, double gamma, double delta,
                            double eps) {
  const std::uint64_t n = g.vertex_count;
  const double min_size = eps * static_cast<double>(n);
  if (static_cast<double>(u.size()) < min_size || static_cast<double>(v.size()) < min_size)
    throw std::invalid_argument("no_dense_model_witness: sets below eps N");
  const double rho = g.density();
  if (rho <= 0.0) throw std::domain_error("no_dense_model_witness: empty graph");
  std::vector<char> in_u(n, 0), in_v(n, 0);
  for (Element e : u) in_u[e] = 1;
  for (Element e : v) in_v[e] = 1;
  double cut_density = static_cast<double>(g.count_between(in_u, in_v)) /
                       (static_cast<double>(u.size()) * static_cast<double>(v.size()));
  return cut_density / rho > gamma + 2.0 * delta / (eps * eps);
}

}  // namespace hugeobj

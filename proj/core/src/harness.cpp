#include "hugeobj/harness.hpp"

#include <chrono>
#include <set>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hugeobj/fixed_weight.hpp"
#include "hugeobj/generators.hpp"
#include "hugeobj/graph_learners.hpp"
#include "hugeobj/regular_graphs.hpp"
#include "hugeobj/support_boost.hpp"
#include "hugeobj/vector_boost.hpp"

namespace hugeobj {

using nlohmann::json;

namespace {

json target_to_json(const TargetConfig& t) {
  json j;
  j["generator"] = t.generator;
  j["n_bits"] = t.n_bits;
  if (t.cardinality) j["cardinality"] = t.cardinality;
  if (t.k) j["k"] = t.k;
  if (t.d) j["d"] = t.d;
  if (t.avg_degree > 0) j["avg_degree"] = t.avg_degree;
  if (t.clique) j["clique"] = t.clique;
  if (!t.part_sizes.empty()) j["part_sizes"] = t.part_sizes;
  if (!t.probs.empty()) j["probs"] = t.probs;
  if (!t.intervals.empty()) j["intervals"] = t.intervals;
  return j;
}

TargetConfig target_from_json(const json& j) {
  TargetConfig t;
  t.generator = j.at("generator").get<std::string>();
  t.n_bits = j.value("n_bits", std::uint64_t{8});
  t.cardinality = j.value("cardinality", std::uint64_t{0});
  t.k = j.value("k", std::uint64_t{0});
  t.d = j.value("d", std::uint64_t{0});
  t.avg_degree = j.value("avg_degree", 0.0);
  t.clique = j.value("clique", std::uint64_t{0});
  if (j.contains("part_sizes")) t.part_sizes = j["part_sizes"].get<std::vector<std::uint64_t>>();
  if (j.contains("probs")) t.probs = j["probs"].get<std::vector<std::vector<double>>>();
  if (j.contains("intervals"))
    t.intervals =
        j["intervals"].get<std::vector<std::pair<std::uint64_t, std::uint64_t>>>();
  return t;
}

GeneratedFunction build_function_target(const TargetConfig& t, const DomainSpec& dom,
                                        Rng& rng) {
  if (t.generator == "random-support-k") {
    GeneratedFunction f = gen_random_support_k(dom.cardinality(), t.k, rng);
    f.spec.domain = dom;
    return f;
  }
  if (t.generator == "planted-union") {
    std::vector<SetSpec> sets;
    for (std::size_t i = 0; i < t.intervals.size(); ++i)
      sets.push_back(SetSpec::interval("I" + std::to_string(i), t.intervals[i].first,
                                       t.intervals[i].second));
    GeneratedFunction f = gen_planted_union(dom, sets);
    f.spec.domain = dom;
    return f;
  }
  throw std::invalid_argument("unknown function generator: " + t.generator);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig c;
  c.name = j.value("name", std::string("experiment"));
  c.master_seed = j.value("seed", std::uint64_t{1});
  c.target = target_from_json(j.at("target"));
  const json& l = j.at("learner");
  c.learner.kind = l.at("kind").get<std::string>();
  c.learner.epsilon = l.value("epsilon", 0.1);
  c.learner.gamma = l.value("gamma", 0.05);
  c.learner.delta = l.value("delta", 0.02);
  c.learner.alpha = l.value("alpha", 0.25);
  c.learner.density_ratio = l.value("density_ratio", 4.0);
  c.learner.k = l.value("k", std::uint64_t{0});
  c.learner.d = l.value("d", std::uint64_t{0});
  if (j.contains("distinguishers")) {
    const json& d = j["distinguishers"];
    c.distinguishers.generator = d.value("generator", std::string("random-sets"));
    c.distinguishers.count = d.value("count", std::uint64_t{8});
    c.distinguishers.density = d.value("density", 0.5);
    c.distinguishers.class_seed = d.value("class_seed", std::uint64_t{7});
  }
  if (j.contains("evaluation")) {
    const json& e = j["evaluation"];
    c.evaluation.samples = e.value("samples", std::uint64_t{20000});
    c.evaluation.delta = e.value("delta", 0.02);
    c.evaluation.truth_samples = e.value("truth_samples", std::uint64_t{50});
  }
  if (j.contains("thresholds")) {
    const json& t = j["thresholds"];
    if (t.contains("max_gap")) c.thresholds.max_gap = t["max_gap"].get<double>();
    if (t.contains("max_updates"))
      c.thresholds.max_updates = t["max_updates"].get<std::uint64_t>();
    c.thresholds.require_truthful = t.value("require_truthful", true);
  }
  c.out_dir = j.value("out", std::string());
  return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["name"] = name;
  j["seed"] = master_seed;
  j["target"] = target_to_json(target);
  j["learner"] = {{"kind", learner.kind},       {"epsilon", learner.epsilon},
                  {"gamma", learner.gamma},     {"delta", learner.delta},
                  {"alpha", learner.alpha},     {"density_ratio", learner.density_ratio},
                  {"k", learner.k},             {"d", learner.d}};
  j["distinguishers"] = {{"generator", distinguishers.generator},
                         {"count", distinguishers.count},
                         {"density", distinguishers.density},
                         {"class_seed", distinguishers.class_seed}};
  j["evaluation"] = {{"samples", evaluation.samples},
                     {"delta", evaluation.delta},
                     {"truth_samples", evaluation.truth_samples}};
  json th;
  if (thresholds.max_gap) th["max_gap"] = *thresholds.max_gap;
  if (thresholds.max_updates) th["max_updates"] = *thresholds.max_updates;
  th["require_truthful"] = thresholds.require_truthful;
  j["thresholds"] = th;
  if (!out_dir.empty()) j["out"] = out_dir;
  return j.dump(2);
}

namespace {

DistinguisherClass make_set_class(const ClassConfig& cc, const DomainSpec& domain) {
  DistinguisherClass cls;
  Rng seed_rng(cc.class_seed);
  OracleSeed class_seed = OracleSeed::random(seed_rng, 16);
  if (cc.generator == "random-sets") {
    for (std::uint64_t i = 0; i < cc.count; ++i)
      cls.push_back(Distinguisher::for_set(SetSpec::random_density(
          "S" + std::to_string(i), domain, cc.density, class_seed)));
  } else if (cc.generator == "dyadic-intervals") {
    std::uint64_t n = domain.cardinality();
    std::uint64_t len = n / 2;
    std::uint64_t lo = 0;
    for (std::uint64_t i = 0; i < cc.count; ++i) {
      cls.push_back(Distinguisher::for_set(
          SetSpec::interval("I" + std::to_string(i), lo, std::max<std::uint64_t>(len, 1))));
      lo += len;
      if (lo >= n) {
        len = std::max<std::uint64_t>(len / 2, 1);
        lo = 0;
      }
    }
  } else {
    throw std::invalid_argument("unknown set-class generator: " + cc.generator);
  }
  return cls;
}

DistinguisherClass make_coord_class(const ClassConfig& cc, const DomainSpec& domain,
                                    int out_bits) {
  if (cc.generator != "coordinate-tests" && cc.generator != "random-sets")
    throw std::invalid_argument("coordinate learners need the coordinate-tests class");
  DistinguisherClass cls;
  Rng seed_rng(cc.class_seed);
  OracleSeed class_seed = OracleSeed::random(seed_rng, 16);
  for (std::uint64_t i = 0; i < cc.count; ++i) {
    SetSpec s = SetSpec::random_density("S" + std::to_string(i), domain, cc.density,
                                        class_seed);
    cls.push_back(Distinguisher::for_coord_set(
        s, static_cast<int>(i % static_cast<std::uint64_t>(out_bits))));
  }
  return cls;
}

DistinguisherClass make_cut_class(const ClassConfig& cc, const DomainSpec& vertex_dom) {
  if (cc.generator != "random-cuts" && cc.generator != "random-sets")
    throw std::invalid_argument("graph learners need the random-cuts class");
  DistinguisherClass cls;
  Rng seed_rng(cc.class_seed);
  OracleSeed class_seed = OracleSeed::random(seed_rng, 16);
  for (std::uint64_t i = 0; i < cc.count; ++i) {
    SetSpec u = SetSpec::random_density("U" + std::to_string(i), vertex_dom, cc.density,
                                        class_seed);
    SetSpec v = SetSpec::random_density("V" + std::to_string(i), vertex_dom, cc.density,
                                        class_seed);
    cls.push_back(Distinguisher::for_cut(u, v));
  }
  return cls;
}

DistinguisherClass make_partition_class(const std::shared_ptr<const Partition>& part) {
  DistinguisherClass cls;
  for (int i = 0; i < part->parts(); ++i)
    for (int j = 0; j < part->parts(); ++j)
      cls.push_back(Distinguisher::for_partition_cell(part, i, j));
  return cls;
}

GapReport maybe_gaps(const DistinguisherClass& cls, const ObjectSampler& target,
                     const ObjectSampler& model, const EvalConfig& ev, Rng& rng) {
  if (ev.samples == 0) {
    GapReport empty;
    empty.delta = ev.delta;
    return empty;
  }
  return gap_report(cls, target, model, ev.samples, ev.delta, rng);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

RunReport run(const ExperimentConfig& config) {
  RunReport report;
  report.config_json = config.to_json_text();
  Rng master(config.master_seed);
  Rng gen_rng = master.split();
  Rng learn_rng = master.split();
  Rng eval_rng = master.split();
  Rng truth_rng = master.split();

  AuditorParams ap;
  ap.epsilon = config.learner.epsilon;
  ap.gamma = config.learner.gamma;
  ap.delta = config.learner.delta;

  const std::string& kind = config.learner.kind;
  auto expect_generator = [&](std::initializer_list<const char*> allowed) {
    for (const char* g : allowed)
      if (config.target.generator == g) return;
    throw std::invalid_argument("learner kind '" + kind + "' cannot use target generator '" +
                                config.target.generator + "'");
  };
  auto t0 = std::chrono::steady_clock::now();

  if (kind == "multiaccuracy" || kind == "fixed_weight") {
    expect_generator({"random-support-k", "planted-union"});
    DomainSpec dom = DomainSpec::bitstrings(static_cast<int>(config.target.n_bits));
    // carry the bitstring domain so fixed-weight addressing works
    GeneratedFunction f = build_function_target(config.target, dom, gen_rng);
    std::uint64_t k = f.support_size;
    ObjectSampler target = function_sample_view(f);
    DistinguisherClass cls = make_set_class(config.distinguishers, dom);

    ImplementationHandle model;
    std::shared_ptr<FixedWeightModel> fw;
    if (kind == "multiaccuracy") {
      CappedPredictor p = learn_multiaccurate(target, cls, dom, ap, learn_rng,
                                              &report.trace);
      model = bernoulli_model_impl(p);
    } else {
      FixedWeightLearnResult res = learn_fixed_weight(
          target, dom, config.learner.k ? config.learner.k : k, cls, ap,
          config.learner.epsilon, learn_rng);
      report.trace = res.trace;
      fw = res.model;
      model = fw->handle();
    }
    report.learn_seconds = seconds_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    report.gaps = maybe_gaps(cls, target, ObjectSampler::from_model(model),
                             config.evaluation, eval_rng);
    report.eval_seconds = seconds_since(t1);

    if (fw) {
      TruthCheck tc;
      tc.property = "support-size=" + std::to_string(fw->support_size());
      for (std::uint64_t s = 0; s < config.evaluation.truth_samples; ++s) {
        OracleSeed seed = OracleSeed::random(truth_rng, 16);
        BinaryVector fvec = fw->materialize(seed);
        std::uint64_t w = 0;
        for (auto b : fvec) w += b;
        ++tc.samples_checked;
        if (w != fw->support_size()) ++tc.violations;
      }
      report.truth.push_back(tc);
    }
  } else if (kind == "support") {
    expect_generator({"random-support-k", "planted-union"});
    DomainSpec dom = DomainSpec::indexed(config.target.cardinality
                                             ? config.target.cardinality
                                             : (1ULL << config.target.n_bits));
    GeneratedFunction f = build_function_target(config.target, dom, gen_rng);
    ObjectSampler target = function_support_view(f);
    DistinguisherClass cls = make_set_class(config.distinguishers, dom);

    SupportBoostOptions opt;
    opt.alpha = static_cast<double>(f.support_size) /
                static_cast<double>(dom.cardinality());
    opt.audit = ap;
    SupportBoostState st = learn_support_access(target, dom, cls, opt, learn_rng,
                                                &report.trace);
    ImplementationHandle model = rejection_sampler_impl(st.predictor);
    report.learn_seconds = seconds_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    report.gaps = maybe_gaps(cls, target, ObjectSampler::from_model(model),
                             config.evaluation, eval_rng);
    report.eval_seconds = seconds_since(t1);
  } else if (kind == "bitstring") {
    expect_generator({"bitstring-random"});
    GeneratedVectorFunction f =
        gen_bitstring_function(static_cast<int>(config.target.n_bits), gen_rng);
    ObjectSampler target = f.sample_view();
    DistinguisherClass cls =
        make_coord_class(config.distinguishers, f.domain, f.out_bits);
    CoordinatePredictors preds = learn_bitstring(target, f.domain, f.out_bits, cls, ap,
                                                 learn_rng, &report.trace);
    ImplementationHandle model = bitstring_impl(preds);
    report.learn_seconds = seconds_since(t0);
    auto t1 = std::chrono::steady_clock::now();
    report.gaps = maybe_gaps(cls, target, ObjectSampler::from_model(model),
                             config.evaluation, eval_rng);
    report.eval_seconds = seconds_since(t1);
  } else if (kind == "outdegree") {
    expect_generator({"outdegree-random"});
    GeneratedOutDegreeGraph g = gen_outdegree_functions(
        static_cast<int>(config.target.n_bits), static_cast<int>(config.target.d),
        gen_rng);
    ObjectSampler target = g.edge_view();
    DistinguisherClass cls =
        make_coord_class(config.distinguishers, g.domain, static_cast<int>(config.target.n_bits));
    CoordinatePredictors preds =
        learn_outdegree_d(target, g.domain, g.d, cls, ap, learn_rng, &report.trace);
    OutDegreeModel model(preds, g.d);
    report.learn_seconds = seconds_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    report.gaps = gap_report(cls, target, ObjectSampler::from_model(model.handle()),
                             config.evaluation.samples, config.evaluation.delta,
                             eval_rng);
    report.eval_seconds = seconds_since(t1);

    TruthCheck tc;
    tc.property = "out-degree=" + std::to_string(g.d) + " distinct";
    for (std::uint64_t s = 0; s < config.evaluation.truth_samples; ++s) {
      OracleSeed seed = OracleSeed::random(truth_rng, 16);
      Element x = truth_rng.next_below(g.domain.cardinality());
      auto vs = model.neighbors(seed, x);
      std::set<Element> uniq(vs.begin(), vs.end());
      ++tc.samples_checked;
      if (uniq.size() != vs.size()) ++tc.violations;
    }
    report.truth.push_back(tc);
  } else if (kind == "dense_graph" || kind == "fixed_edges" || kind == "fixed_outdegree") {
    if (kind == "fixed_outdegree") expect_generator({"row-subsets"});
    else expect_generator({"block-model"});
    std::uint64_t n_vert = config.target.cardinality ? config.target.cardinality
                                                     : (1ULL << config.target.n_bits);
    DomainSpec vdom = DomainSpec::indexed(n_vert);
    DomainSpec pdom = DomainSpec::pairs(vdom);
    DistinguisherClass cls = make_cut_class(config.distinguishers, vdom);

    GeneratedGraph g = [&]() {
      if (kind == "fixed_outdegree") {
        // target with exact out-degree d: block-regular is undirected; use
        // random d-subsets per row instead
        auto edges = std::make_shared<EdgeList>();
        edges->vertex_count = n_vert;
        for (Element u = 0; u < n_vert; ++u) {
          std::set<Element> row;
          while (row.size() < config.target.d)
            row.insert(gen_rng.next_below(n_vert));
          for (Element v : row) edges->edges.emplace_back(u, v);
        }
        GeneratedGraph gg;
        gg.vertex_count = n_vert;
        gg.edges = edges;
        GraphSpec spec;
        spec.vertices = vdom;
        spec.directed = true;
        auto list = edges;
        auto adj = std::make_shared<std::set<std::pair<Element, Element>>>(
            edges->edges.begin(), edges->edges.end());
        spec.edge_evaluator = [adj](Element u, Element v) { return adj->count({u, v}) > 0; };
        spec.edge_sampler = [list](Rng& rng) {
          return list->edges[rng.next_below(list->edges.size())];
        };
        spec.edge_count_hint = edges->edges.size();
        gg.spec = spec;
        return gg;
      }
      std::vector<std::uint64_t> sizes{n_vert / 2, n_vert - n_vert / 2};
      std::vector<std::vector<double>> probs{{0.6, 0.15}, {0.15, 0.4}};
      return gen_block_model(sizes, probs, gen_rng);
    }();
    ObjectSampler target = graph_sample_view(g);

    ImplementationHandle model;
    std::shared_ptr<FixedWeightModel> fw;
    std::shared_ptr<FixedOutDegreeModel> fo;
    if (kind == "dense_graph") {
      DenseGraphLearnResult res = learn_dense_graph(target, pdom, cls, ap, learn_rng);
      report.trace = res.trace;
      model = res.model;
    } else if (kind == "fixed_edges") {
      std::uint64_t m = config.learner.k ? config.learner.k : g.edges->edges.size();
      if (m != g.edges->edges.size())
        throw std::invalid_argument("fixed_edges: learner k must match target edges");
      FixedEdgesLearnResult res = learn_fixed_edges(target, pdom, m, cls, ap,
                                                    config.learner.epsilon, learn_rng);
      report.trace = res.trace;
      fw = res.model;
      model = res.handle;
    } else {
      FixedOutDegreeLearnResult res = learn_fixed_outdegree_dense(
          target, pdom, config.target.d, cls, ap, config.learner.epsilon, learn_rng);
      report.trace = res.trace;
      fo = res.model;
      model = fo->handle();
    }
    report.learn_seconds = seconds_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    report.gaps = maybe_gaps(cls, target, ObjectSampler::from_model(model),
                             config.evaluation, eval_rng);
    report.eval_seconds = seconds_since(t1);

    if (fw) {
      TruthCheck tc;
      tc.property = "edge-count=" + std::to_string(fw->support_size());
      for (std::uint64_t s = 0; s < config.evaluation.truth_samples; ++s) {
        OracleSeed seed = OracleSeed::random(truth_rng, 16);
        BinaryVector fvec = fw->materialize(seed);
        std::uint64_t w = 0;
        for (auto b : fvec) w += b;
        ++tc.samples_checked;
        if (w != fw->support_size()) ++tc.violations;
      }
      report.truth.push_back(tc);
    }
    if (fo) {
      TruthCheck tc;
      tc.property = "out-degree=" + std::to_string(config.target.d);
      for (std::uint64_t s = 0; s < config.evaluation.truth_samples; ++s) {
        OracleSeed seed = OracleSeed::random(truth_rng, 16);
        Element u = truth_rng.next_below(n_vert);
        BinaryVector row = fo->materialize_row(seed, u);
        std::uint64_t w = 0;
        for (auto b : row) w += b;
        ++tc.samples_checked;
        if (w != config.target.d) ++tc.violations;
      }
      report.truth.push_back(tc);
    }
  } else if (kind == "sparse_reduction") {
    expect_generator({"sparse-uniform", "planted-dense-subgraph"});
    std::uint64_t n_vert = config.target.cardinality;
    GeneratedGraph g =
        config.target.clique > 0
            ? gen_planted_dense_subgraph(n_vert, config.target.avg_degree,
                                         config.target.clique, gen_rng)
            : gen_sparse_uniform(n_vert, config.target.avg_degree, gen_rng);
    DomainSpec vdom = DomainSpec::indexed(n_vert);
    DomainSpec pdom = DomainSpec::pairs(vdom);
    ObjectSampler target = graph_edge_view(g);
    DistinguisherClass cls = make_cut_class(config.distinguishers, vdom);

    SparseDiagnostics diag;
    double gamma_density = config.learner.density_ratio;
    UniformityReport uni = upper_uniform_check_sampled(
        *g.edges, 1.0 / 16.0, gamma_density, 64, eval_rng,
        g.planted_set ? std::vector<std::pair<std::vector<Element>, std::vector<Element>>>{
                            {*g.planted_set, *g.planted_set}}
                      : std::vector<std::pair<std::vector<Element>, std::vector<Element>>>{});
    diag.upper_uniform_holds = uni.holds;
    diag.worst_ratio = uni.worst.ratio;
    if (g.planted_set) {
      double eps_w = static_cast<double>(g.planted_set->size()) / static_cast<double>(n_vert);
      diag.witness_triggered = no_dense_model_witness(*g.edges, *g.planted_set,
                                                      *g.planted_set, gamma_density,
                                                      0.01, eps_w);
    }
    report.sparse = diag;

    SparseReductionParams srp;
    srp.density_ratio = gamma_density;
    srp.audit = ap;
    SparseReductionResult res =
        learn_sparse_dense_model(target, pdom, srp, cls, learn_rng);
    report.trace = res.trace;
    report.learn_seconds = seconds_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    report.gaps = maybe_gaps(cls, target, ObjectSampler::from_model(res.model),
                             config.evaluation, eval_rng);
    report.eval_seconds = seconds_since(t1);
  } else if (kind == "uniform_degree") {
    expect_generator({"block-regular"});
    GeneratedGraph g = gen_block_regular(config.target.part_sizes,
                                         static_cast<int>(config.target.d), gen_rng);
    ObjectSampler target = graph_edge_view(g);
    DistinguisherClass cls = make_partition_class(g.partition);

    UniformDegreeLearnStats stats;
    EdgeCountTable k =
        learn_uniform_degree(target, g.partition, static_cast<int>(config.target.d),
                             config.learner.epsilon, config.learner.delta, learn_rng,
                             &stats);
    UniformDegreeModel model(g.partition, k, static_cast<int>(config.target.d));
    report.trace.updates = stats.transfers;
    report.learn_seconds = seconds_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    report.gaps = gap_report(cls, target, ObjectSampler::from_model(model.handle()),
                             config.evaluation.samples, config.evaluation.delta,
                             eval_rng);
    report.eval_seconds = seconds_since(t1);

    TruthCheck tc;
    tc.property = "degree=" + std::to_string(config.target.d) + " simple";
    for (std::uint64_t s = 0; s < config.evaluation.truth_samples; ++s) {
      OracleSeed seed = OracleSeed::random(truth_rng, 16);
      auto adj = model.materialize(seed);
      ++tc.samples_checked;
      bool bad = false;
      for (Element u = 0; u < adj.size() && !bad; ++u) {
        if (adj[u].size() != config.target.d) bad = true;
        for (Element v : adj[u])
          if (v == u) bad = true;
      }
      if (bad) ++tc.violations;
    }
    report.truth.push_back(tc);
  } else {
    throw std::invalid_argument("unknown learner kind: " + kind);
  }

  return report;
}

std::string RunReport::canonical_json() const {
  json j;
  j["config"] = json::parse(config_json);
  j["trace"] = {{"updates", trace.updates},
                {"audit_calls", trace.audit_calls},
                {"calibrations", trace.calibrations}};
  json rows = json::array();
  for (const auto& r : gaps.rows)
    rows.push_back({{"name", r.name},
                    {"target", r.accept_target},
                    {"model", r.accept_model},
                    {"gap", r.gap},
                    {"radius", r.radius}});
  j["gaps"] = {{"rows", rows},
               {"max_gap", gaps.max_gap},
               {"samples", gaps.samples},
               {"delta", gaps.delta}};
  json truths = json::array();
  for (const auto& t : truth)
    truths.push_back({{"property", t.property},
                      {"samples", t.samples_checked},
                      {"violations", t.violations}});
  j["truth"] = truths;
  if (sparse)
    j["sparse"] = {{"upper_uniform_holds", sparse->upper_uniform_holds},
                   {"witness_triggered", sparse->witness_triggered},
                   {"worst_ratio", sparse->worst_ratio}};
  return j.dump(2);
}

std::string RunReport::gaps_csv() const {
  std::ostringstream out;
  out << "distinguisher,accept_target,accept_model,gap,radius\n";
  for (const auto& r : gaps.rows)
    out << r.name << ',' << r.accept_target << ',' << r.accept_model << ',' << r.gap
        << ',' << r.radius << '\n';
  return out.str();
}

RunReport RunReport::from_canonical_json(const std::string& text) {
  json j = json::parse(text);
  RunReport r;
  r.config_json = j.at("config").dump(2);
  r.trace.updates = j.at("trace").value("updates", std::uint64_t{0});
  r.trace.audit_calls = j.at("trace").value("audit_calls", std::uint64_t{0});
  r.trace.calibrations = j.at("trace").value("calibrations", std::uint64_t{0});
  const json& g = j.at("gaps");
  r.gaps.max_gap = g.value("max_gap", 0.0);
  r.gaps.samples = g.value("samples", std::uint64_t{0});
  r.gaps.delta = g.value("delta", 0.0);
  for (const auto& row : g.value("rows", json::array())) {
    GapRow gr;
    gr.name = row.value("name", std::string());
    gr.accept_target = row.value("target", 0.0);
    gr.accept_model = row.value("model", 0.0);
    gr.gap = row.value("gap", 0.0);
    gr.radius = row.value("radius", 0.0);
    r.gaps.rows.push_back(gr);
  }
  for (const auto& t : j.value("truth", json::array())) {
    TruthCheck tc;
    tc.property = t.value("property", std::string());
    tc.samples_checked = t.value("samples", std::uint64_t{0});
    tc.violations = t.value("violations", std::uint64_t{0});
    r.truth.push_back(tc);
  }
  if (j.contains("sparse")) {
    SparseDiagnostics d;
    d.upper_uniform_holds = j["sparse"].value("upper_uniform_holds", true);
    d.witness_triggered = j["sparse"].value("witness_triggered", false);
    d.worst_ratio = j["sparse"].value("worst_ratio", 0.0);
    r.sparse = d;
  }
  return r;
}

VerifyResult verify(const RunReport& report, const Thresholds& thresholds) {
  VerifyResult v;
  if (thresholds.max_gap && report.gaps.max_gap > *thresholds.max_gap) {
    const GapRow* w = report.gaps.worst();
    v.pass = false;
    v.failures.push_back("max_gap " + std::to_string(report.gaps.max_gap) + " > " +
                         std::to_string(*thresholds.max_gap) +
                         (w ? (" (" + w->name + ")") : ""));
  }
  if (thresholds.max_updates && report.trace.updates > *thresholds.max_updates) {
    v.pass = false;
    v.failures.push_back("updates " + std::to_string(report.trace.updates) + " > " +
                         std::to_string(*thresholds.max_updates));
  }
  if (thresholds.require_truthful)
    for (const auto& t : report.truth)
      if (!t.ok()) {
        v.pass = false;
        v.failures.push_back("truth check failed: " + t.property);
      }
  return v;
}

}  // namespace hugeobj

#include "hugeobj/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hugeobj {

namespace {

FunctionSpec table_function(std::shared_ptr<const std::vector<std::uint8_t>> table,
                            std::string name) {
  FunctionSpec f;
  f.domain = DomainSpec::indexed(table->size());
  f.range = RangeSpec::binary();
  f.evaluator = [table](Element x) -> std::uint64_t { return (*table)[x]; };
  f.name = std::move(name);
  return f;
}

GraphSpec edge_list_graph(std::shared_ptr<const EdgeList> edges, bool directed,
                          std::string name) {
  GraphSpec g;
  g.vertices = DomainSpec::indexed(edges->vertex_count);
  g.directed = directed;
  auto adj = std::make_shared<std::set<std::pair<Element, Element>>>(
      edges->edges.begin(), edges->edges.end());
  g.edge_evaluator = [adj](Element u, Element v) { return adj->count({u, v}) > 0; };
  auto list = edges;
  g.edge_sampler = [list](Rng& rng) {
    return list->edges[rng.next_below(list->edges.size())];
  };
  g.edge_count_hint = edges->edges.size();
  g.name = std::move(name);
  return g;
}

}  // namespace

GeneratedFunction gen_random_support_k(std::uint64_t n_card, std::uint64_t k, Rng& rng) {
  if (n_card > kEnumerableMax)
    throw std::invalid_argument("gen_random_support_k: domain too large to materialize");
  if (k > n_card) throw std::invalid_argument("gen_random_support_k: k > N");
  std::vector<Element> idx(n_card);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::uint64_t i = 0; i < k; ++i) {
    std::uint64_t j = i + rng.next_below(n_card - i);
    std::swap(idx[i], idx[j]);
  }
  auto table = std::make_shared<std::vector<std::uint8_t>>(n_card, 0);
  for (std::uint64_t i = 0; i < k; ++i) (*table)[idx[i]] = 1;
  std::uint64_t audit = std::accumulate(table->begin(), table->end(), std::uint64_t{0});
  if (audit != k) throw std::logic_error("gen_random_support_k: support audit failed");
  GeneratedFunction out;
  out.table = table;
  out.support_size = k;
  out.spec = table_function(table, "random-support-k");
  out.spec.support_size_hint = k;
  return out;
}

GeneratedFunction gen_planted_union(const DomainSpec& domain,
                                    const std::vector<SetSpec>& sets) {
  if (domain.cardinality() > kEnumerableMax)
    throw std::invalid_argument("gen_planted_union: domain too large to materialize");
  auto table =
      std::make_shared<std::vector<std::uint8_t>>(domain.cardinality(), 0);
  for (Element x = 0; x < domain.cardinality(); ++x)
    for (const auto& s : sets)
      if (s.contains(x)) {
        (*table)[x] = 1;
        break;
      }
  GeneratedFunction out;
  out.table = table;
  out.support_size = std::accumulate(table->begin(), table->end(), std::uint64_t{0});
  out.spec = table_function(table, "planted-union");
  out.spec.support_size_hint = out.support_size;
  return out;
}

ObjectSampler GeneratedVectorFunction::sample_view() const {
  auto tbl = table;
  const std::uint64_t n = domain.cardinality();
  return ObjectSampler::from_draw(AccessKind::sample, domain, [tbl, n](Rng& rng) -> Answer {
    Element x = rng.next_below(n);
    return {x, (*tbl)[x]};
  });
}

GeneratedVectorFunction gen_bitstring_function(int n_bits, Rng& rng) {
  DomainSpec dom = DomainSpec::bitstrings(n_bits);
  auto table = std::make_shared<std::vector<std::uint64_t>>(dom.cardinality());
  for (auto& v : *table) v = rng.next_below(dom.cardinality());
  GeneratedVectorFunction out;
  out.domain = dom;
  out.out_bits = n_bits;
  out.table = table;
  return out;
}

ObjectSampler GeneratedOutDegreeGraph::edge_view() const {
  auto nb = neighbors;
  const std::uint64_t n = domain.cardinality();
  return ObjectSampler::from_draw(AccessKind::support, domain, [nb, n](Rng& rng) -> Answer {
    Element x = rng.next_below(n);
    const auto& vs = (*nb)[x];
    return {x, vs[rng.next_below(vs.size())]};
  });
}

GeneratedOutDegreeGraph gen_outdegree_functions(int n_bits, int d, Rng& rng) {
  DomainSpec dom = DomainSpec::bitstrings(n_bits);
  if (static_cast<std::uint64_t>(d) > dom.cardinality())
    throw std::invalid_argument("gen_outdegree_functions: d > N");
  auto nb = std::make_shared<std::vector<std::vector<Element>>>(dom.cardinality());
  for (Element x = 0; x < dom.cardinality(); ++x) {
    std::set<Element> picked;
    while (picked.size() < static_cast<std::size_t>(d))
      picked.insert(rng.next_below(dom.cardinality()));
    (*nb)[x].assign(picked.begin(), picked.end());
    // shuffle so neighbor order carries no bias
    for (std::size_t i = 0; i + 1 < (*nb)[x].size(); ++i) {
      std::size_t j = i + rng.next_below((*nb)[x].size() - i);
      std::swap((*nb)[x][i], (*nb)[x][j]);
    }
  }
  GeneratedOutDegreeGraph out;
  out.domain = dom;
  out.d = d;
  out.neighbors = nb;
  return out;
}

GeneratedGraph gen_block_model(const std::vector<std::uint64_t>& part_sizes,
                               const std::vector<std::vector<double>>& probs, Rng& rng) {
  std::uint64_t n = std::accumulate(part_sizes.begin(), part_sizes.end(), std::uint64_t{0});
  auto part = std::make_shared<const Partition>(Partition::contiguous(n, part_sizes));
  auto edges = std::make_shared<EdgeList>();
  edges->vertex_count = n;
  for (Element u = 0; u < n; ++u)
    for (Element v = 0; v < n; ++v) {
      if (u == v) continue;
      double pr = probs.at(static_cast<std::size_t>(part->part_of(u)))
                      .at(static_cast<std::size_t>(part->part_of(v)));
      if (rng.next_bernoulli(pr)) edges->edges.emplace_back(u, v);
    }
  GeneratedGraph out;
  out.vertex_count = n;
  out.edges = edges;
  out.partition = part;
  out.spec = edge_list_graph(edges, true, "block-model");
  return out;
}

GeneratedGraph gen_d_regular(std::uint64_t n_vertices, int d, Rng& rng,
                             int max_attempts) {
  if ((n_vertices * static_cast<std::uint64_t>(d)) % 2 != 0)
    throw std::invalid_argument("gen_d_regular: dN must be even");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // Configuration model: shuffle the dN ports, pair consecutively.
    std::vector<Element> ports(n_vertices * static_cast<std::uint64_t>(d));
    for (std::uint64_t i = 0; i < ports.size(); ++i)
      ports[i] = i / static_cast<std::uint64_t>(d);
    for (std::uint64_t i = 0; i + 1 < ports.size(); ++i) {
      std::uint64_t j = i + rng.next_below(ports.size() - i);
      std::swap(ports[i], ports[j]);
    }
    std::set<std::pair<Element, Element>> seen;
    bool ok = true;
    for (std::uint64_t i = 0; i + 1 < ports.size() && ok; i += 2) {
      Element a = ports[i], b = ports[i + 1];
      if (a == b || seen.count({a, b})) ok = false;
      seen.insert({a, b});
      seen.insert({b, a});
    }
    if (!ok) continue;
    auto edges = std::make_shared<EdgeList>();
    edges->vertex_count = n_vertices;
    edges->edges.assign(seen.begin(), seen.end());
    // Degree audit.
    std::vector<int> deg(n_vertices, 0);
    for (const auto& [a, b] : edges->edges) {
      ++deg[a];
      (void)b;
    }
    for (int dv : deg)
      if (dv != d) throw std::logic_error("gen_d_regular: degree audit failed");
    GeneratedGraph out;
    out.vertex_count = n_vertices;
    out.edges = edges;
    out.spec = edge_list_graph(edges, false, "d-regular");
    return out;
  }
  throw std::runtime_error("gen_d_regular: pairing retry cap exceeded");
}

GeneratedGraph gen_block_regular(const std::vector<std::uint64_t>& part_sizes, int d,
                                 Rng& rng) {
  std::uint64_t n = std::accumulate(part_sizes.begin(), part_sizes.end(), std::uint64_t{0});
  auto part = std::make_shared<const Partition>(Partition::contiguous(n, part_sizes));
  const int t = part->parts();
  // Bias toward cross-part edges: start from the canonical feasible table
  // and shift diagonal mass to the cross cells in a fixed pattern.
  EdgeCountTable k = canonical_feasible_table(*part, d);
  const std::uint64_t headroom = 2ULL * static_cast<std::uint64_t>(d);
  if (t > 1) {
    for (int j = 0; j < t; ++j) {
      std::uint64_t step = k.at(j, j) / (4 * static_cast<std::uint64_t>(t));
      for (int i = 0; i < t; ++i) {
        if (i == j || step == 0) continue;
        // one unit of cross mass costs one port on each side; diagonals
        // keep the 2d headroom the pairing needs
        auto room = [&](int c) {
          std::uint64_t v = k.at(c, c);
          return v > headroom ? (v - headroom) / 2 : 0;
        };
        std::uint64_t give = std::min({step, room(j), room(i)});
        if (give == 0) continue;
        k.add(j, j, -2 * static_cast<std::int64_t>(give));
        k.add(i, i, -2 * static_cast<std::int64_t>(give));
        k.add(i, j, 2 * static_cast<std::int64_t>(give));
      }
    }
  }
  k.validate(*part, d);
  UniformDegreeModel model(part, k, d);
  OracleSeed seed = OracleSeed::random(rng, 16);
  auto adj = model.materialize(seed);

  auto edges = std::make_shared<EdgeList>();
  edges->vertex_count = n;
  for (Element u = 0; u < n; ++u)
    for (Element v : adj[u]) edges->edges.emplace_back(u, v);
  // Degree / loop / involution audits (parallel edges are legal; degree
  // counts ports).
  for (Element u = 0; u < n; ++u) {
    if (adj[u].size() != static_cast<std::size_t>(d))
      throw std::logic_error("gen_block_regular: degree audit failed");
    for (Element v : adj[u])
      if (v == u) throw std::logic_error("gen_block_regular: self-loop");
    for (int l = 0; l < d; ++l) {
      auto [v, lv] = model.mate_port(seed, u, l);
      auto [u2, l2] = model.mate_port(seed, v, lv);
      if (u2 != u || l2 != l)
        throw std::logic_error("gen_block_regular: matching not involutive");
    }
  }

  GeneratedGraph out;
  out.vertex_count = n;
  out.edges = edges;
  out.partition = part;
  out.cell_counts = std::make_shared<const EdgeCountTable>(k);
  out.spec = edge_list_graph(edges, false, "block-regular");
  return out;
}

GeneratedGraph gen_sparse_uniform(std::uint64_t n_vertices, double avg_degree, Rng& rng) {
  auto edges = std::make_shared<EdgeList>();
  edges->vertex_count = n_vertices;
  const double pr = avg_degree / static_cast<double>(n_vertices);
  for (Element u = 0; u < n_vertices; ++u)
    for (Element v = u + 1; v < n_vertices; ++v)
      if (rng.next_bernoulli(pr)) {
        edges->edges.emplace_back(u, v);
        edges->edges.emplace_back(v, u);
      }
  if (edges->edges.empty()) throw std::runtime_error("gen_sparse_uniform: empty graph");
  GeneratedGraph out;
  out.vertex_count = n_vertices;
  out.edges = edges;
  out.spec = edge_list_graph(edges, false, "sparse-uniform");
  return out;
}

GeneratedGraph gen_planted_dense_subgraph(std::uint64_t n_vertices, double avg_degree,
                                          std::uint64_t clique_size, Rng& rng) {
  GeneratedGraph out = gen_sparse_uniform(n_vertices, avg_degree, rng);
  std::vector<Element> planted(clique_size);
  std::iota(planted.begin(), planted.end(), 0);  // fixed prefix; recorded below
  auto edges = std::make_shared<EdgeList>(*out.edges);
  std::set<std::pair<Element, Element>> seen(edges->edges.begin(), edges->edges.end());
  for (Element a : planted)
    for (Element b : planted) {
      if (a == b) continue;
      if (seen.insert({a, b}).second) edges->edges.emplace_back(a, b);
    }
  out.edges = edges;
  out.planted_set = planted;
  out.spec = edge_list_graph(edges, false, "planted-dense-subgraph");
  return out;
}

ObjectSampler function_sample_view(const GeneratedFunction& f) {
  return ObjectSampler::from_view(AccessView::induce(f.spec, AccessKind::sample));
}
ObjectSampler function_support_view(const GeneratedFunction& f) {
  return ObjectSampler::from_view(AccessView::induce(f.spec, AccessKind::support));
}
ObjectSampler graph_sample_view(const GeneratedGraph& g) {
  return ObjectSampler::from_view(AccessView::induce(g.spec, AccessKind::sample));
}
ObjectSampler graph_edge_view(const GeneratedGraph& g) {
  return ObjectSampler::from_view(AccessView::induce(g.spec, AccessKind::support));
}

}  // namespace hugeobj

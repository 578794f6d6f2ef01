#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hugeobj/graph_learners.hpp"
#include "hugeobj/objects.hpp"
#include "hugeobj/partition.hpp"
#include "hugeobj/regular_graphs.hpp"

namespace hugeobj {

// Ground-truth fixtures. Every generator re-audits the structural property
// it promises (support size, degree, simplicity) before returning.
struct GeneratedFunction {
  FunctionSpec spec;
  std::shared_ptr<const std::vector<std::uint8_t>> table;  // materialized truth
  std::uint64_t support_size = 0;
};

struct GeneratedGraph {
  GraphSpec spec;
  std::shared_ptr<const EdgeList> edges;
  std::uint64_t vertex_count = 0;
  std::optional<std::vector<Element>> planted_set;  // dense-subgraph fixtures
  std::shared_ptr<const Partition> partition;       // block fixtures
  std::shared_ptr<const EdgeCountTable> cell_counts;
};

// Binary function with exactly k ones at seeded positions.
GeneratedFunction gen_random_support_k(std::uint64_t n_card, std::uint64_t k, Rng& rng);

// Indicator of a union of sets.
GeneratedFunction gen_planted_union(const DomainSpec& domain,
                                    const std::vector<SetSpec>& sets);

// Bit-string function f: {0,1}^n -> {0,1}^n with seeded values.
struct GeneratedVectorFunction {
  DomainSpec domain;
  int out_bits = 1;
  std::shared_ptr<const std::vector<std::uint64_t>> table;

  std::uint64_t eval(Element x) const { return (*table)[x]; }
  ObjectSampler sample_view() const;  // (x, f(x))
};
GeneratedVectorFunction gen_bitstring_function(int n_bits, Rng& rng);

// d distinct-neighbor out-functions over {0,1}^n plus the induced edge view.
struct GeneratedOutDegreeGraph {
  DomainSpec domain;
  int d = 1;
  std::shared_ptr<const std::vector<std::vector<Element>>> neighbors;

  ObjectSampler edge_view() const;  // (x, v) with x uniform, v uniform neighbor
};
GeneratedOutDegreeGraph gen_outdegree_functions(int n_bits, int d, Rng& rng);

// Stochastic block model over an explicit partition (directed adjacency
// with loops excluded).
GeneratedGraph gen_block_model(const std::vector<std::uint64_t>& part_sizes,
                               const std::vector<std::vector<double>>& probs, Rng& rng);

// Simple d-regular graph by configuration-model pairing with retries.
GeneratedGraph gen_d_regular(std::uint64_t n_vertices, int d, Rng& rng,
                             int max_attempts = 200);

// d-regular simple graph with block structure: a seeded port-matching
// realization of a feasible cell table biased toward cross-part edges.
GeneratedGraph gen_block_regular(const std::vector<std::uint64_t>& part_sizes, int d,
                                 Rng& rng);

// Sparse Erdos-Renyi-style graph with expected out-degree `avg_degree`
// (upper-uniform with high probability).
GeneratedGraph gen_sparse_uniform(std::uint64_t n_vertices, double avg_degree, Rng& rng);

// The same with a planted clique; the planted vertex set is recorded.
GeneratedGraph gen_planted_dense_subgraph(std::uint64_t n_vertices, double avg_degree,
                                          std::uint64_t clique_size, Rng& rng);

ObjectSampler function_sample_view(const GeneratedFunction& f);
ObjectSampler function_support_view(const GeneratedFunction& f);
ObjectSampler graph_sample_view(const GeneratedGraph& g);
ObjectSampler graph_edge_view(const GeneratedGraph& g);

}  // namespace hugeobj

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hugeobj/objects.hpp"
#include "hugeobj/partition.hpp"
#include "hugeobj/permutation.hpp"

namespace hugeobj {

// Symmetric table of port counts between partition cells. k({i,j}) for
// i != j counts the edges (= ports on each side) between parts i and j;
// k({j,j}) counts ports inside part j, two per internal edge, so it is
// always even. Row sums satisfy sum_i k({i,j}) = d |U_j|.
class EdgeCountTable {
 public:
  EdgeCountTable() = default;
  explicit EdgeCountTable(int parts) : t_(parts), k_(cell_count(parts), 0) {}

  int parts() const { return t_; }
  std::uint64_t at(int i, int j) const { return k_[idx(i, j)]; }
  void set(int i, int j, std::uint64_t v) { k_[idx(i, j)] = v; }
  void add(int i, int j, std::int64_t delta);

  std::uint64_t row_ports(int j) const;  // sum_i k({i,j})
  void validate(const Partition& part, int d) const;

 private:
  static std::size_t cell_count(int t) {
    return static_cast<std::size_t>(t) * (t + 1) / 2;
  }
  std::size_t idx(int i, int j) const;

  int t_ = 0;
  std::vector<std::uint64_t> k_;
};

struct UniformDegreeLearnStats {
  std::uint64_t samples = 0;
  bool aborted_to_feasible = false;  // residuals exceeded d eps |U_i| / 2
  std::uint64_t transfers = 0;       // correction-loop moves
  std::vector<double> raw_residuals;
};

// A feasible table with zero residuals (and diagonal parity), used as the
// abort fallback and as a building block for generators.
EdgeCountTable canonical_feasible_table(const Partition& part, int d);

// Lemma "uni-deg" learning algorithm: estimate cell masses from sampled
// edges, round, then move ports between cells until every residual is zero.
EdgeCountTable learn_uniform_degree(const ObjectSampler& target_edges,
                                    const std::shared_ptr<const Partition>& part, int d,
                                    double eps, double delta, Rng& rng,
                                    UniformDegreeLearnStats* stats = nullptr);

// Port-matching implementation: each vertex owns d ports mapped through the
// per-part cell layout; cross-cell ports pair through a seeded permutation,
// same-part ports pair inside blocks of the permuted order with same-vertex
// mates impossible by the block construction. Every seeded graph is
// d-regular and simple, and the matching is an involution.
class UniformDegreeModel {
 public:
  UniformDegreeModel(std::shared_ptr<const Partition> part, EdgeCountTable k, int d);

  int degree() const { return d_; }
  const EdgeCountTable& table() const { return k_; }
  const Partition& partition() const { return *part_; }

  // Matched endpoint of port `port` of vertex u under the seed.
  Element mate(const OracleSeed& seed, Element u, int port) const;

  // Reverse lookup used by the involution tests: the (vertex, port) whose
  // mate is (u, port).
  std::pair<Element, int> mate_port(const OracleSeed& seed, Element u, int port) const;

  std::vector<std::vector<Element>> materialize(const OracleSeed& seed) const;

  // Support view over ordered edges: uniform vertex, uniform port, matched
  // endpoint.
  ImplementationHandle handle() const;

 private:
  struct PortRef {
    int part;
    int cell;               // counterpart part index
    std::uint64_t offset;   // within-cell port index
  };
  PortRef locate(Element u, int port) const;
  Element port_vertex(int part, std::uint64_t pos, int* port_out) const;
  Element same_part_mate(const OracleSeed& seed, int j, std::uint64_t c,
                         std::pair<Element, int>* mate_ref) const;

  std::shared_ptr<const Partition> part_;
  EdgeCountTable k_;
  int d_;
  std::vector<std::vector<std::uint64_t>> cell_offsets_;  // per part, prefix sums
};

}  // namespace hugeobj

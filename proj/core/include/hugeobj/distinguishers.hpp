#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hugeobj/objects.hpp"
#include "hugeobj/partition.hpp"
#include "hugeobj/sets.hpp"

namespace hugeobj {

// A single-draw distinguisher. Acceptance semantics depend on the access
// kind of the object it reads:
//   set(S):            sample (x,y): x in S and y = 1;  support x: x in S
//   coord_set(S,j):    sample (x,v): x in S and bit j of v is 1 (also the
//                      edge law of out-degree models, v = neighbor)
//   cut(U,V):          graph sample ((u,v),y): u in U, v in V, y = 1;
//                      edge (u,v): u in U and v in V
//   partition_cell(i,j): edge (u,v): part(u) = i and part(v) = j
struct Distinguisher {
  enum class Kind { set, coord_set, cut, partition_cell };

  Kind kind = Kind::set;
  std::string name;
  SetSpec set;            // set and coord_set
  int coord = -1;         // coord_set
  SetSpec left, right;    // cut
  int cell_i = -1, cell_j = -1;
  std::shared_ptr<const Partition> partition;

  static Distinguisher for_set(SetSpec s);
  static Distinguisher for_coord_set(SetSpec s, int coord);
  static Distinguisher for_cut(SetSpec left, SetSpec right);
  static Distinguisher for_partition_cell(std::shared_ptr<const Partition> partition,
                                          int i, int j);

  bool accepts(AccessKind access, const DomainSpec& domain, const Answer& a) const;
};

using DistinguisherClass = std::vector<Distinguisher>;

// g_D(x) = Pr[D(x,1)=accept] - Pr[D(x,0)=accept], the signed test a
// sample-access distinguisher induces on the domain.
struct SignedTest {
  std::function<double(Element)> g;
  std::string name;
};

SignedTest to_signed_test(const Distinguisher& d);

// A cut over a pair domain, rewritten as the equivalent product-set
// distinguisher of the adjacency function.
Distinguisher cut_as_set(const Distinguisher& cut, const DomainSpec& pair_domain);

struct AcceptEstimate {
  double probability = 0.0;
  double radius = 0.0;  // Hoeffding, at the report's delta
  std::uint64_t samples = 0;
};

// Monte-Carlo acceptance probability. Model samplers draw a fresh seed per
// sample (outer expectation over the model), see ObjectSampler.
AcceptEstimate estimate_accept(const Distinguisher& d, const ObjectSampler& sampler,
                               std::uint64_t samples, double delta, Rng& rng);

struct GapRow {
  std::string name;
  double accept_target = 0.0;
  double accept_model = 0.0;
  double gap = 0.0;
  double radius = 0.0;
};

struct GapReport {
  std::vector<GapRow> rows;
  double max_gap = 0.0;
  std::uint64_t samples = 0;
  double delta = 0.0;

  const GapRow* worst() const;
};

// Per-distinguisher acceptance gaps between a target and a model, each
// estimated with the shared per-side sample budget.
GapReport gap_report(const DistinguisherClass& cls, const ObjectSampler& target,
                     const ObjectSampler& model, std::uint64_t samples, double delta,
                     Rng& rng);

}  // namespace hugeobj

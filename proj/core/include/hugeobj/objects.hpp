#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hugeobj/domain.hpp"
#include "hugeobj/oracle.hpp"
#include "hugeobj/rng.hpp"

namespace hugeobj {

enum class AccessKind { sample, support, entry };

const char* to_string(AccessKind k);

struct RangeSpec {
  enum class Kind { binary, bitstring };
  Kind kind = Kind::binary;
  int bits = 1;

  static RangeSpec binary() { return {Kind::binary, 1}; }
  static RangeSpec bitstring(int n) { return {Kind::bitstring, n}; }
};

// A huge function given as an evaluable program, never as a table. Explicit
// tables are only ever built by test fixtures and generators at N <= 2^20.
struct FunctionSpec {
  DomainSpec domain = DomainSpec::indexed(1);
  RangeSpec range = RangeSpec::binary();
  std::function<std::uint64_t(Element)> evaluator;
  std::optional<std::uint64_t> support_size_hint;
  // Optional: draws a uniform support element; required for support views
  // over domains too large to enumerate.
  std::function<Element(Rng&)> support_sampler;
  std::string name = "f";
};

// A huge graph as an edge predicate plus an optional uniform edge sampler.
// Edges are ordered pairs; an undirected graph carries both orientations
// and no loops.
struct GraphSpec {
  DomainSpec vertices = DomainSpec::indexed(1);
  bool directed = true;
  std::function<bool(Element, Element)> edge_evaluator;
  std::function<std::pair<Element, Element>(Rng&)> edge_sampler;
  std::optional<std::uint64_t> edge_count_hint;  // ordered-pair count
  std::string name = "G";

  DomainSpec pair_domain() const { return DomainSpec::pairs(vertices); }

  // Adjacency matrix viewed as a binary function over the pair domain.
  FunctionSpec as_function() const;
};

// One answer from an object. `x` is the domain element (pair-encoded for
// graphs), `y` the label: f(x) for sample access, 1 for support access.
struct Answer {
  Element x = 0;
  std::uint64_t y = 0;
};

constexpr std::uint64_t kEnumerableMax = 1ULL << 20;

// Access discipline over a ground-truth object.
class AccessView {
 public:
  static AccessView induce(FunctionSpec f, AccessKind kind);
  static AccessView induce(GraphSpec g, AccessKind kind);

  AccessKind kind() const { return kind_; }
  const DomainSpec& domain() const { return domain_; }

  bool is_graph() const { return std::holds_alternative<GraphSpec>(source_); }
  const FunctionSpec& function() const { return std::get<FunctionSpec>(source_); }
  const GraphSpec& graph() const { return std::get<GraphSpec>(source_); }

  // Sample or support draw.
  Answer draw(Rng& rng) const;

  // Entry access (functions only).
  std::uint64_t entry(Element x) const;

 private:
  AccessView() = default;

  std::variant<FunctionSpec, GraphSpec> source_;
  AccessKind kind_ = AccessKind::sample;
  DomainSpec domain_ = DomainSpec::indexed(1);
  std::shared_ptr<const std::vector<Element>> support_;  // enumerated fallback
};

// An efficient implementation of a model. The seed selects the object, the
// rng drives the object's per-query answer distribution: fixing the seed
// and repeating a query re-samples the same underlying object.
struct ImplementationHandle {
  AccessKind kind = AccessKind::sample;
  DomainSpec domain = DomainSpec::indexed(1);
  std::string description;
  std::size_t seed_bytes = 16;
  std::function<Answer(const OracleSeed&, Rng&, Element query)> answer;
  // Optional pointwise probe of the per-seed object, f_seed(x). Null when
  // the implementation does not expose one.
  std::function<std::uint64_t(const OracleSeed&, Element)> entry;

  OracleSeed fresh_seed(Rng& rng) const { return OracleSeed::random(rng, seed_bytes); }
};

// Random-oracle -> ordinary transform: serves the wrapped implementation's
// oracle from a keyed pseudorandom stream expanded out of a short seed of
// ceil(security_bits/8) bytes. Per-seed consistency and truthfulness carry
// over exactly since each short seed maps to one inner object.
ImplementationHandle to_ordinary(const ImplementationHandle& impl, int security_bits);

// Uniform front-end for estimation: a stream of answer draws from either a
// ground-truth view, a model (fresh seed per draw), or one seeded object.
class ObjectSampler {
 public:
  static ObjectSampler from_view(const AccessView& view);
  static ObjectSampler from_model(const ImplementationHandle& impl);
  static ObjectSampler from_seeded_object(const ImplementationHandle& impl, OracleSeed seed);
  static ObjectSampler from_draw(AccessKind kind, DomainSpec domain,
                                 std::function<Answer(Rng&)> draw);

  AccessKind kind() const { return kind_; }
  const DomainSpec& domain() const { return domain_; }
  Answer draw(Rng& rng) const { return draw_(rng); }

 private:
  AccessKind kind_ = AccessKind::sample;
  DomainSpec domain_ = DomainSpec::indexed(1);
  std::function<Answer(Rng&)> draw_;
};

}  // namespace hugeobj

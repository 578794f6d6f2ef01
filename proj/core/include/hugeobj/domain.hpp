#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace hugeobj {

using Element = std::uint64_t;

// Finite query domain. Elements are indices in [0, cardinality); the pairs
// kind packs (u,v) over an inner domain as u*inner_card + v, which is the
// adjacency-matrix-as-function encoding used by the graph learners.
class DomainSpec {
 public:
  enum class Kind { bitstrings, indexed, pairs };

  static DomainSpec bitstrings(int n_bits) {
    if (n_bits < 1 || n_bits > 62) throw std::invalid_argument("bitstrings: n out of range");
    DomainSpec d;
    d.kind_ = Kind::bitstrings;
    d.bits_ = n_bits;
    d.cardinality_ = 1ULL << n_bits;
    return d;
  }

  static DomainSpec indexed(std::uint64_t cardinality) {
    if (cardinality < 1) throw std::invalid_argument("indexed: empty domain");
    DomainSpec d;
    d.kind_ = Kind::indexed;
    d.cardinality_ = cardinality;
    return d;
  }

  static DomainSpec pairs(const DomainSpec& inner) {
    if (inner.cardinality() > (1ULL << 31))
      throw std::invalid_argument("pairs: inner domain too large to pack");
    DomainSpec d;
    d.kind_ = Kind::pairs;
    d.inner_ = std::make_shared<DomainSpec>(inner);
    d.cardinality_ = inner.cardinality() * inner.cardinality();
    return d;
  }

  Kind kind() const { return kind_; }
  std::uint64_t cardinality() const { return cardinality_; }

  // bitstrings only
  int bits() const {
    if (kind_ != Kind::bitstrings) throw std::logic_error("bits(): not a bitstring domain");
    return bits_;
  }

  const DomainSpec& inner() const {
    if (kind_ != Kind::pairs) throw std::logic_error("inner(): not a pair domain");
    return *inner_;
  }

  Element pair_encode(Element u, Element v) const {
    const std::uint64_t m = inner().cardinality();
    if (u >= m || v >= m) throw std::out_of_range("pair_encode");
    return u * m + v;
  }
  std::pair<Element, Element> pair_decode(Element e) const {
    const std::uint64_t m = inner().cardinality();
    return {e / m, e % m};
  }

  bool operator==(const DomainSpec& o) const {
    return kind_ == o.kind_ && cardinality_ == o.cardinality_;
  }

 private:
  Kind kind_ = Kind::indexed;
  int bits_ = 0;
  std::uint64_t cardinality_ = 1;
  std::shared_ptr<DomainSpec> inner_;
};

}  // namespace hugeobj

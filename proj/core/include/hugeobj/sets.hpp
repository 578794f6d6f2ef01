#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hugeobj/domain.hpp"
#include "hugeobj/oracle.hpp"

namespace hugeobj {

// A subset of a domain given by a pure membership program. `size` is filled
// when known exactly (enumerated or by construction); several learners need
// it for update weights.
struct SetSpec {
  std::string name = "S";
  std::function<bool(Element)> contains;
  std::optional<std::uint64_t> size;

  static SetSpec whole_domain(const DomainSpec& dom) {
    SetSpec s;
    s.name = "X";
    s.contains = [](Element) { return true; };
    s.size = dom.cardinality();
    return s;
  }

  static SetSpec from_elements(std::string name, std::vector<Element> elems);

  // Pseudorandom set of the given density, membership decided per element
  // by a keyed draw. Exact size filled by enumeration when the domain is
  // small enough.
  static SetSpec random_density(std::string name, const DomainSpec& dom, double density,
                                const OracleSeed& seed);

  // Dyadic interval [lo, lo + len) of the domain index space.
  static SetSpec interval(std::string name, Element lo, Element len);

  // Complement (size filled when both sides known).
  static SetSpec complement(const SetSpec& s, const DomainSpec& dom);

  // Product set U x V over a pair domain: the cut distinguisher's carrier.
  static SetSpec cut_product(const DomainSpec& pair_dom, const SetSpec& left,
                             const SetSpec& right);

  std::uint64_t exact_size(const DomainSpec& dom) const;
};

}  // namespace hugeobj

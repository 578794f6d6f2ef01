#include "hugeobj/sets.hpp"

#include <algorithm>
#include <stdexcept>

#include "hugeobj/objects.hpp"

namespace hugeobj {

SetSpec SetSpec::from_elements(std::string name, std::vector<Element> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  auto holder = std::make_shared<std::vector<Element>>(std::move(elems));
  SetSpec s;
  s.name = std::move(name);
  s.size = holder->size();
  s.contains = [holder](Element x) {
    return std::binary_search(holder->begin(), holder->end(), x);
  };
  return s;
}

SetSpec SetSpec::random_density(std::string name, const DomainSpec& dom, double density,
                                const OracleSeed& seed) {
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("random_density: density outside [0,1]");
  OracleSeed scoped = seed.sub(Label(name));
  SetSpec s;
  s.name = std::move(name);
  s.contains = [scoped, density](Element x) {
    return oracle_bernoulli(scoped, Label("set.member", x), density);
  };
  if (dom.cardinality() <= kEnumerableMax) s.size = s.exact_size(dom);
  return s;
}

SetSpec SetSpec::interval(std::string name, Element lo, Element len) {
  SetSpec s;
  s.name = std::move(name);
  s.size = len;
  s.contains = [lo, len](Element x) { return x >= lo && x - lo < len; };
  return s;
}

SetSpec SetSpec::complement(const SetSpec& in, const DomainSpec& dom) {
  SetSpec s;
  s.name = "~" + in.name;
  auto c = in.contains;
  s.contains = [c](Element x) { return !c(x); };
  if (in.size) s.size = dom.cardinality() - *in.size;
  return s;
}

SetSpec SetSpec::cut_product(const DomainSpec& pair_dom, const SetSpec& left,
                             const SetSpec& right) {
  SetSpec s;
  s.name = left.name + "x" + right.name;
  auto lc = left.contains;
  auto rc = right.contains;
  DomainSpec pd = pair_dom;
  s.contains = [pd, lc, rc](Element e) {
    auto [u, v] = pd.pair_decode(e);
    return lc(u) && rc(v);
  };
  if (left.size && right.size) s.size = *left.size * *right.size;
  return s;
}

std::uint64_t SetSpec::exact_size(const DomainSpec& dom) const {
  if (dom.cardinality() > kEnumerableMax)
    throw std::invalid_argument("exact_size: domain too large to enumerate");
  std::uint64_t n = 0;
  for (Element x = 0; x < dom.cardinality(); ++x)
    if (contains(x)) ++n;
  return n;
}

}  // namespace hugeobj

#include <doctest.h>

#include <array>
#include <vector>

#include "hugeobj/objects.hpp"
#include "hugeobj/stats.hpp"

using namespace hugeobj;

namespace {

FunctionSpec table_fn(std::vector<std::uint8_t> t) {
  auto tbl = std::make_shared<const std::vector<std::uint8_t>>(std::move(t));
  FunctionSpec f;
  f.domain = DomainSpec::indexed(tbl->size());
  f.evaluator = [tbl](Element x) -> std::uint64_t { return (*tbl)[x]; };
  return f;
}

}  // namespace

TEST_CASE("pair domains pack and unpack") {
  DomainSpec pd = DomainSpec::pairs(DomainSpec::indexed(37));
  CHECK(pd.cardinality() == 37ULL * 37ULL);
  for (Element u : std::vector<Element>{0, 1, 17, 36})
    for (Element v : std::vector<Element>{0, 5, 36}) {
      auto [a, b] = pd.pair_decode(pd.pair_encode(u, v));
      CHECK(a == u);
      CHECK(b == v);
    }
}

TEST_CASE("support view of the all-ones function is uniform") {
  FunctionSpec f = table_fn({1, 1, 1, 1});
  AccessView view = AccessView::induce(f, AccessKind::support);
  Rng rng(42);
  std::array<std::uint64_t, 4> counts{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) ++counts[view.draw(rng).x];
  std::vector<double> expected(4, n / 4.0);
  std::vector<std::uint64_t> obs(counts.begin(), counts.end());
  CHECK(chi2_statistic(obs, expected) < chi2_critical(3, 0.01));
}

TEST_CASE("entry view answers pointwise") {
  FunctionSpec f;
  f.domain = DomainSpec::indexed(8);
  f.evaluator = [](Element x) -> std::uint64_t { return x % 2; };
  AccessView view = AccessView::induce(f, AccessKind::entry);
  CHECK(view.entry(3) == 1);
  CHECK(view.entry(4) == 0);
}

TEST_CASE("sample view label frequency matches support fraction") {
  FunctionSpec f = table_fn({1, 0, 0, 1, 0, 1, 0, 0});  // N=8, support 3
  AccessView view = AccessView::induce(f, AccessKind::sample);
  Rng rng(7);
  int ones = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i)
    if (view.draw(rng).y == 1) ++ones;
  CHECK(std::abs(ones / static_cast<double>(n) - 3.0 / 8.0) < 0.02);
}

TEST_CASE("empty support is rejected") {
  FunctionSpec f = table_fn({0, 0, 0, 0});
  CHECK_THROWS_AS(AccessView::induce(f, AccessKind::support), std::domain_error);
}

TEST_CASE("graph views use the pair encoding") {
  GraphSpec g;
  g.vertices = DomainSpec::indexed(4);
  g.directed = false;
  g.edge_evaluator = [](Element u, Element v) { return u != v; };  // K4
  AccessView sup = AccessView::induce(g, AccessKind::support);
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    Answer a = sup.draw(rng);
    auto [u, v] = sup.domain().pair_decode(a.x);
    CHECK(u != v);
  }
  AccessView samp = AccessView::induce(g, AccessKind::sample);
  Answer a = samp.draw(rng);
  auto [u, v] = samp.domain().pair_decode(a.x);
  CHECK(a.y == (u != v ? 1 : 0));
  CHECK_THROWS_AS(AccessView::induce(g, AccessKind::entry), std::invalid_argument);
}

TEST_CASE("to_ordinary preserves per-seed consistency") {
  FunctionSpec f = table_fn({1, 0, 1, 0});
  ImplementationHandle impl;
  impl.kind = AccessKind::sample;
  impl.domain = f.domain;
  impl.answer = [](const OracleSeed& seed, Rng& rng, Element) -> Answer {
    Element x = rng.next_below(4);
    return {x, oracle_bernoulli(seed, Label("y", x), 0.5) ? 1ULL : 0ULL};
  };
  impl.entry = [](const OracleSeed& seed, Element x) -> std::uint64_t {
    return oracle_bernoulli(seed, Label("y", x), 0.5) ? 1 : 0;
  };
  ImplementationHandle ord = to_ordinary(impl, 128);
  CHECK(ord.seed_bytes == 16);
  Rng rng(3);
  OracleSeed seed = ord.fresh_seed(rng);
  for (Element x = 0; x < 4; ++x) CHECK(ord.entry(seed, x) == ord.entry(seed, x));
  // sample answers agree with the entry probe under the same seed
  for (int i = 0; i < 100; ++i) {
    Answer a = ord.answer(seed, rng, 0);
    CHECK(a.y == ord.entry(seed, a.x));
  }
}

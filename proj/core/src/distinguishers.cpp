#include "hugeobj/distinguishers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "hugeobj/stats.hpp"

namespace hugeobj {

Distinguisher Distinguisher::for_set(SetSpec s) {
  Distinguisher d;
  d.kind = Kind::set;
  d.name = "set:" + s.name;
  d.set = std::move(s);
  return d;
}

Distinguisher Distinguisher::for_coord_set(SetSpec s, int coord) {
  if (coord < 0) throw std::invalid_argument("coord_set: negative coordinate");
  Distinguisher d;
  d.kind = Kind::coord_set;
  d.name = "coord:" + s.name + "@" + std::to_string(coord);
  d.set = std::move(s);
  d.coord = coord;
  return d;
}

Distinguisher Distinguisher::for_cut(SetSpec left, SetSpec right) {
  Distinguisher d;
  d.kind = Kind::cut;
  d.name = "cut:" + left.name + "|" + right.name;
  d.left = std::move(left);
  d.right = std::move(right);
  return d;
}

Distinguisher Distinguisher::for_partition_cell(std::shared_ptr<const Partition> partition,
                                                int i, int j) {
  if (!partition) throw std::invalid_argument("partition_cell: null partition");
  if (i < 0 || j < 0 || i >= partition->parts() || j >= partition->parts())
    throw std::invalid_argument("partition_cell: bad part indices");
  Distinguisher d;
  d.kind = Kind::partition_cell;
  d.name = "cell:" + std::to_string(i) + "," + std::to_string(j);
  d.cell_i = i;
  d.cell_j = j;
  d.partition = std::move(partition);
  return d;
}

bool Distinguisher::accepts(AccessKind access, const DomainSpec& domain,
                            const Answer& a) const {
  switch (kind) {
    case Kind::set:
      if (access == AccessKind::support) return set.contains(a.x);
      return set.contains(a.x) && a.y == 1;
    case Kind::coord_set: {
      bool bit = ((a.y >> coord) & 1ULL) != 0;
      return set.contains(a.x) && bit;
    }
    case Kind::cut: {
      auto [u, v] = domain.pair_decode(a.x);
      bool in_cut = left.contains(u) && right.contains(v);
      if (access == AccessKind::support) return in_cut;
      return in_cut && a.y == 1;
    }
    case Kind::partition_cell: {
      auto [u, v] = domain.pair_decode(a.x);
      return partition->part_of(u) == cell_i && partition->part_of(v) == cell_j;
    }
  }
  throw std::logic_error("unreachable");
}

SignedTest to_signed_test(const Distinguisher& d) {
  switch (d.kind) {
    case Distinguisher::Kind::set: {
      // accepts (x,1) iff x in S, never accepts (x,0): g = indicator of S.
      auto c = d.set.contains;
      return {[c](Element x) { return c(x) ? 1.0 : 0.0; }, d.name};
    }
    case Distinguisher::Kind::coord_set: {
      // Accept-difference in the j-th output bit is again the indicator.
      auto c = d.set.contains;
      return {[c](Element x) { return c(x) ? 1.0 : 0.0; }, d.name};
    }
    case Distinguisher::Kind::cut:
      throw std::invalid_argument("to_signed_test: convert cuts with cut_as_set first");
    case Distinguisher::Kind::partition_cell:
      throw std::invalid_argument("to_signed_test: partition cells act on edges only");
  }
  throw std::logic_error("unreachable");
}

Distinguisher cut_as_set(const Distinguisher& cut, const DomainSpec& pair_domain) {
  if (cut.kind != Distinguisher::Kind::cut)
    throw std::invalid_argument("cut_as_set: not a cut distinguisher");
  return Distinguisher::for_set(SetSpec::cut_product(pair_domain, cut.left, cut.right));
}

AcceptEstimate estimate_accept(const Distinguisher& d, const ObjectSampler& sampler,
                               std::uint64_t samples, double delta, Rng& rng) {
  if (samples < 1) throw std::invalid_argument("estimate_accept: samples < 1");
  if (d.kind == Distinguisher::Kind::coord_set && sampler.kind() == AccessKind::entry)
    throw std::invalid_argument("estimate_accept: entry access not supported");
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Answer a = sampler.draw(rng);
    if (d.accepts(sampler.kind(), sampler.domain(), a)) ++hits;
  }
  AcceptEstimate e;
  e.probability = static_cast<double>(hits) / static_cast<double>(samples);
  e.radius = hoeffding_radius(samples, delta);
  e.samples = samples;
  return e;
}

const GapRow* GapReport::worst() const {
  const GapRow* w = nullptr;
  for (const auto& r : rows)
    if (!w || r.gap > w->gap) w = &r;
  return w;
}

namespace {

int worker_count() {
  const char* env = std::getenv("HUGEOBJ_WORKERS");
  if (!env) return 1;
  int n = std::atoi(env);
  return std::clamp(n, 1, 64);
}

}  // namespace

GapReport gap_report(const DistinguisherClass& cls, const ObjectSampler& target,
                     const ObjectSampler& model, std::uint64_t samples, double delta,
                     Rng& rng) {
  GapReport rep;
  rep.samples = samples;
  rep.delta = delta;
  rep.rows.resize(cls.size());

  // One pre-split stream per (distinguisher, side): the report is identical
  // for every worker count.
  std::vector<Rng> streams;
  streams.reserve(cls.size() * 2);
  for (std::size_t i = 0; i < cls.size(); ++i) {
    streams.push_back(rng.split());
    streams.push_back(rng.split());
  }

  auto eval_row = [&](std::size_t i) {
    Rng trng = streams[2 * i];
    Rng mrng = streams[2 * i + 1];
    AcceptEstimate pt = estimate_accept(cls[i], target, samples, delta, trng);
    AcceptEstimate pm = estimate_accept(cls[i], model, samples, delta, mrng);
    GapRow& row = rep.rows[i];
    row.name = cls[i].name;
    row.accept_target = pt.probability;
    row.accept_model = pm.probability;
    row.gap = std::abs(pt.probability - pm.probability);
    row.radius = pt.radius;
  };

  const int workers = std::min<int>(worker_count(), static_cast<int>(cls.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < cls.size(); ++i) eval_row(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < cls.size(); i = next.fetch_add(1))
          eval_row(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& row : rep.rows) rep.max_gap = std::max(rep.max_gap, row.gap);
  return rep;
}

}  // namespace hugeobj

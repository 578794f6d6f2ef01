#include "hugeobj/regular_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hugeobj/stats.hpp"

namespace hugeobj {

std::size_t EdgeCountTable::idx(int i, int j) const {
  if (i < 0 || j < 0 || i >= t_ || j >= t_) throw std::out_of_range("EdgeCountTable");
  if (i > j) std::swap(i, j);
  // upper-triangle row-major
  return static_cast<std::size_t>(i) * t_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
         static_cast<std::size_t>(j - i);
}

void EdgeCountTable::add(int i, int j, std::int64_t delta) {
  std::uint64_t& v = k_[idx(i, j)];
  std::int64_t r = static_cast<std::int64_t>(v) + delta;
  if (r < 0) throw std::logic_error("EdgeCountTable: negative cell");
  v = static_cast<std::uint64_t>(r);
}

std::uint64_t EdgeCountTable::row_ports(int j) const {
  std::uint64_t s = 0;
  for (int i = 0; i < t_; ++i) s += at(i, j);
  return s;
}

void EdgeCountTable::validate(const Partition& part, int d) const {
  if (t_ != part.parts()) throw std::invalid_argument("EdgeCountTable: part mismatch");
  for (int j = 0; j < t_; ++j) {
    if (at(j, j) % 2 != 0) throw std::invalid_argument("EdgeCountTable: odd diagonal");
    if (row_ports(j) != static_cast<std::uint64_t>(d) * part.part_size(j))
      throw std::invalid_argument("EdgeCountTable: row sum != d |U_j|");
  }
}

namespace {

std::vector<std::int64_t> residuals(const EdgeCountTable& k, const Partition& part,
                                    int d) {
  std::vector<std::int64_t> e(static_cast<std::size_t>(k.parts()));
  for (int i = 0; i < k.parts(); ++i)
    e[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(k.row_ports(i)) -
                                     static_cast<std::int64_t>(d) *
                                         static_cast<std::int64_t>(part.part_size(i));
  return e;
}

// Drives every residual to zero by moving single ports between cells.
// Phase A fixes the global port total (|sum e| shrinks by 2 per move),
// phase B transfers between a positive and a negative part.
std::uint64_t fix_residuals(EdgeCountTable& k, const Partition& part, int d) {
  const int t = k.parts();
  std::vector<std::int64_t> e = residuals(k, part, d);
  auto sum_e = [&]() {
    std::int64_t s = 0;
    for (auto v : e) s += v;
    return s;
  };
  std::uint64_t moves = 0;
  auto guard = [&]() {
    if (++moves > (1ULL << 24)) throw std::logic_error("fix_residuals: runaway loop");
  };

  while (sum_e() > 0) {
    guard();
    int i = 0;
    for (int c = 1; c < t; ++c)
      if (e[c] > e[i]) i = c;
    int j = -1;
    for (int c = 0; c < t && j < 0; ++c)
      if (c != i && e[c] > 0 && k.at(i, c) >= 1) j = c;
    for (int c = 0; c < t && j < 0; ++c)
      if (c != i && k.at(i, c) >= 1) j = c;
    if (j >= 0) {
      k.add(i, j, -1);
      --e[i];
      --e[j];
    } else if (k.at(i, i) >= 2) {
      k.add(i, i, -2);
      e[i] -= 2;
    } else {
      throw std::logic_error("fix_residuals: positive residual with empty row");
    }
  }
  while (sum_e() < 0) {
    guard();
    int i = 0;
    for (int c = 1; c < t; ++c)
      if (e[c] < e[i]) i = c;
    int j = -1;
    for (int c = 0; c < t && j < 0; ++c)
      if (c != i && e[c] < 0) j = c;
    if (j >= 0) {
      k.add(i, j, 1);
      ++e[i];
      ++e[j];
    } else {
      k.add(i, i, 2);
      e[i] += 2;
    }
  }
  while (true) {
    int pos = -1, neg = -1;
    for (int c = 0; c < t; ++c) {
      if (pos < 0 && e[c] > 0) pos = c;
      if (neg < 0 && e[c] < 0) neg = c;
    }
    if (pos < 0 && neg < 0) break;
    if (pos < 0 || neg < 0) throw std::logic_error("fix_residuals: unbalanced residuals");
    guard();
    int j = -1;
    for (int c = 0; c < t && j < 0; ++c)
      if (c != pos && c != neg && k.at(pos, c) >= 1) j = c;
    if (j >= 0) {
      k.add(pos, j, -1);
      k.add(neg, j, 1);
    } else if (k.at(pos, pos) >= 2) {
      k.add(pos, pos, -2);
      k.add(pos, neg, 1);
    } else if (k.at(pos, neg) >= 1) {
      k.add(pos, neg, -1);
      k.add(neg, neg, 2);
    } else {
      throw std::logic_error("fix_residuals: no transferable port");
    }
    --e[static_cast<std::size_t>(pos)];
    ++e[static_cast<std::size_t>(neg)];
  }
  return moves;
}

// Every nonzero diagonal must hold at least 2d ports so the same-part
// pairing can always separate one vertex's ports.
void repair_small_diagonals(EdgeCountTable& k, int d) {
  const int t = k.parts();
  const std::uint64_t min_diag = 2ULL * static_cast<std::uint64_t>(d);
  for (int j = 0; j < t; ++j) {
    while (k.at(j, j) > 0 && k.at(j, j) < min_diag) {
      bool moved = false;
      for (int i = 0; i < t && !moved; ++i) {
        if (i == j) continue;
        if (k.at(i, i) >= min_diag + 2) {
          k.add(j, j, -2);
          k.add(j, i, 2);
          k.add(i, i, -2);
          moved = true;
        }
      }
      for (int i = 0; i < t && !moved; ++i) {
        if (i == j) continue;
        for (int i2 = i; i2 < t && !moved; ++i2) {
          if (i2 == j || (i2 == i)) continue;
          if (k.at(i, i2) >= 1) {
            k.add(j, j, -2);
            k.add(j, i, 1);
            k.add(j, i2, 1);
            k.add(i, i2, -1);
            moved = true;
          }
        }
      }
      if (!moved)
        throw std::runtime_error(
            "uniform-degree table: cannot clear an undersized diagonal cell");
    }
  }
}

}  // namespace

EdgeCountTable canonical_feasible_table(const Partition& part, int d) {
  const int t = part.parts();
  std::uint64_t total = 0;
  for (int j = 0; j < t; ++j) total += static_cast<std::uint64_t>(d) * part.part_size(j);
  if (total % 2 != 0)
    throw std::invalid_argument("canonical_feasible_table: d N must be even");
  EdgeCountTable k(t);
  std::vector<std::uint64_t> ports(static_cast<std::size_t>(t));
  for (int j = 0; j < t; ++j)
    ports[static_cast<std::size_t>(j)] = static_cast<std::uint64_t>(d) * part.part_size(j);
  int pending_odd = -1;
  for (int j = 0; j < t; ++j) {
    if (ports[static_cast<std::size_t>(j)] % 2 == 1) {
      if (pending_odd < 0) {
        pending_odd = j;
      } else {
        k.add(pending_odd, j, 1);
        --ports[static_cast<std::size_t>(pending_odd)];
        --ports[static_cast<std::size_t>(j)];
        pending_odd = -1;
      }
    }
  }
  for (int j = 0; j < t; ++j) k.add(j, j, static_cast<std::int64_t>(ports[static_cast<std::size_t>(j)]));
  repair_small_diagonals(k, d);
  k.validate(part, d);
  return k;
}

EdgeCountTable learn_uniform_degree(const ObjectSampler& target_edges,
                                    const std::shared_ptr<const Partition>& part, int d,
                                    double eps, double delta, Rng& rng,
                                    UniformDegreeLearnStats* stats) {
  if (!part) throw std::invalid_argument("learn_uniform_degree: null partition");
  if (d < 1) throw std::invalid_argument("learn_uniform_degree: d < 1");
  if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("learn_uniform_degree: bad eps/delta");
  if (target_edges.kind() != AccessKind::support)
    throw std::invalid_argument("learn_uniform_degree: target must be an edge view");

  const int t = part->parts();
  const std::uint64_t n_vert = part->vertex_count();
  std::uint64_t min_part = part->part_size(0);
  for (int i = 1; i < t; ++i) min_part = std::min(min_part, part->part_size(i));
  const double dn = static_cast<double>(d) * static_cast<double>(n_vert);

  const std::uint64_t samples = static_cast<std::uint64_t>(std::ceil(
      32.0 * std::log(2.0 * t * t / delta) / (eps * eps) *
      (static_cast<double>(n_vert) / static_cast<double>(min_part))));
  if (stats) stats->samples = samples;

  std::vector<std::vector<std::uint64_t>> counts(
      static_cast<std::size_t>(t), std::vector<std::uint64_t>(static_cast<std::size_t>(t), 0));
  for (std::uint64_t s = 0; s < samples; ++s) {
    Answer a = target_edges.draw(rng);
    auto [u, v] = target_edges.domain().pair_decode(a.x);
    ++counts[static_cast<std::size_t>(part->part_of(u))]
            [static_cast<std::size_t>(part->part_of(v))];
  }

  // Real-valued estimates; ordered counts are symmetrized off-diagonal.
  std::vector<std::vector<double>> kt(static_cast<std::size_t>(t),
                                      std::vector<double>(static_cast<std::size_t>(t), 0.0));
  for (int i = 0; i < t; ++i)
    for (int j = i; j < t; ++j) {
      double c = (i == j)
                     ? static_cast<double>(counts[static_cast<std::size_t>(i)]
                                                 [static_cast<std::size_t>(j)])
                     : (static_cast<double>(counts[static_cast<std::size_t>(i)]
                                                  [static_cast<std::size_t>(j)]) +
                        static_cast<double>(counts[static_cast<std::size_t>(j)]
                                                  [static_cast<std::size_t>(i)])) /
                           2.0;
      kt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          c / static_cast<double>(samples) * dn;
    }

  // Abort clause: |e_i| >= d eps |U_i| / 2 on the raw estimates.
  bool abort = false;
  if (stats) stats->raw_residuals.assign(static_cast<std::size_t>(t), 0.0);
  for (int i = 0; i < t && !abort; ++i) {
    double row = 0.0;
    for (int j = 0; j < t; ++j)
      row += kt[static_cast<std::size_t>(std::min(i, j))][static_cast<std::size_t>(std::max(i, j))];
    double e = row - static_cast<double>(d) * static_cast<double>(part->part_size(i));
    if (stats) stats->raw_residuals[static_cast<std::size_t>(i)] = e;
    if (std::abs(e) >= static_cast<double>(d) * eps * static_cast<double>(part->part_size(i)) / 2.0)
      abort = true;
  }
  if (abort) {
    if (stats) stats->aborted_to_feasible = true;
    return canonical_feasible_table(*part, d);
  }

  EdgeCountTable k(t);
  for (int i = 0; i < t; ++i)
    for (int j = i; j < t; ++j) {
      std::int64_t r = std::llround(kt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      if (r < 0) r = 0;
      if (i == j && r % 2 != 0) r -= 1;  // parity fix; the residual loop absorbs it
      k.set(i, j, static_cast<std::uint64_t>(r));
    }
  std::uint64_t transfers = fix_residuals(k, *part, d);
  repair_small_diagonals(k, d);
  transfers += fix_residuals(k, *part, d);  // repair preserves residuals; cheap recheck
  if (stats) stats->transfers = transfers;
  k.validate(*part, d);
  return k;
}

UniformDegreeModel::UniformDegreeModel(std::shared_ptr<const Partition> part,
                                       EdgeCountTable k, int d)
    : part_(std::move(part)), k_(std::move(k)), d_(d) {
  if (!part_) throw std::invalid_argument("UniformDegreeModel: null partition");
  k_.validate(*part_, d_);
  const int t = k_.parts();
  for (int j = 0; j < t; ++j) {
    std::uint64_t diag = k_.at(j, j);
    if (diag != 0 && diag < 2ULL * static_cast<std::uint64_t>(d_))
      throw std::invalid_argument(
          "UniformDegreeModel: diagonal cell below 2d ports (self-loop-free pairing "
          "needs headroom)");
  }
  cell_offsets_.assign(static_cast<std::size_t>(t),
                       std::vector<std::uint64_t>(static_cast<std::size_t>(t) + 1, 0));
  for (int j = 0; j < t; ++j)
    for (int i = 0; i < t; ++i)
      cell_offsets_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) + 1] =
          cell_offsets_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] +
          k_.at(i, j);
}

UniformDegreeModel::PortRef UniformDegreeModel::locate(Element u, int port) const {
  if (port < 0 || port >= d_) throw std::out_of_range("UniformDegreeModel: port");
  const int j = part_->part_of(u);
  const std::uint64_t pos =
      static_cast<std::uint64_t>(port) * part_->part_size(j) + part_->rank_in_part(u);
  const auto& off = cell_offsets_[static_cast<std::size_t>(j)];
  auto it = std::upper_bound(off.begin(), off.end(), pos);
  int cell = static_cast<int>(it - off.begin()) - 1;
  return {j, cell, pos - off[static_cast<std::size_t>(cell)]};
}

Element UniformDegreeModel::port_vertex(int part, std::uint64_t pos, int* port_out) const {
  const std::uint64_t sz = part_->part_size(part);
  if (port_out) *port_out = static_cast<int>(pos / sz);
  return part_->nth_of_part(part, pos % sz);
}

Element UniformDegreeModel::same_part_mate(const OracleSeed& seed, int j, std::uint64_t c,
                                           std::pair<Element, int>* mate_ref) const {
  const std::uint64_t kc = k_.at(j, j);
  SeededPermutation sigma(kc, seed, Label("ud.sd", static_cast<std::uint64_t>(j)));
  const std::uint64_t q = sigma.inverse(c);
  const std::uint64_t block = 2ULL * static_cast<std::uint64_t>(d_);
  const std::uint64_t nblocks = kc / block;  // >= 1 by the 2d construction check
  const std::uint64_t m = std::min(q / block, nblocks - 1);
  const std::uint64_t start = m * block;
  const std::uint64_t bsz = (m == nblocks - 1) ? kc - start : block;

  // Sort the block's ports by (vertex, port index): same-vertex ports sit
  // contiguously, and a group never spans half the block, so the half-shift
  // pairing cannot match a vertex to itself.
  const std::uint64_t base = cell_offsets_[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
  std::vector<std::pair<Element, std::uint64_t>> ports;
  ports.reserve(bsz);
  for (std::uint64_t qq = start; qq < start + bsz; ++qq) {
    std::uint64_t pc = sigma.forward(qq);
    Element w = port_vertex(j, base + pc, nullptr);
    ports.emplace_back(w, pc);
  }
  std::sort(ports.begin(), ports.end());
  std::uint64_t r = 0;
  while (ports[r].second != c) ++r;
  const std::uint64_t rmate = (r + bsz / 2) % bsz;
  const auto& mate = ports[rmate];
  if (mate_ref) {
    int l = 0;
    Element v = port_vertex(j, base + mate.second, &l);
    *mate_ref = {v, l};
  }
  return mate.first;
}

Element UniformDegreeModel::mate(const OracleSeed& seed, Element u, int port) const {
  return mate_port(seed, u, port).first;
}

std::pair<Element, int> UniformDegreeModel::mate_port(const OracleSeed& seed, Element u,
                                                      int port) const {
  PortRef ref = locate(u, port);
  const int j = ref.part;
  const int i = ref.cell;
  if (i == j) {
    std::pair<Element, int> out;
    same_part_mate(seed, j, ref.offset, &out);
    return out;
  }
  const std::uint64_t kc = k_.at(i, j);
  SeededPermutation pi(kc, seed,
                       Label("ud.x", static_cast<std::uint64_t>(std::min(i, j)),
                             static_cast<std::uint64_t>(std::max(i, j))));
  const std::uint64_t partner = (j < i) ? pi.forward(ref.offset) : pi.inverse(ref.offset);
  const std::uint64_t pos =
      cell_offsets_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + partner;
  int l = 0;
  Element v = port_vertex(i, pos, &l);
  return {v, l};
}

std::vector<std::vector<Element>> UniformDegreeModel::materialize(
    const OracleSeed& seed) const {
  const std::uint64_t n = part_->vertex_count();
  std::vector<std::vector<Element>> adj(n);
  for (Element u = 0; u < n; ++u) {
    adj[u].reserve(static_cast<std::size_t>(d_));
    for (int l = 0; l < d_; ++l) adj[u].push_back(mate(seed, u, l));
  }
  return adj;
}

ImplementationHandle UniformDegreeModel::handle() const {
  auto model = std::make_shared<const UniformDegreeModel>(*this);
  ImplementationHandle impl;
  impl.kind = AccessKind::support;
  impl.domain = DomainSpec::pairs(DomainSpec::indexed(part_->vertex_count()));
  impl.description = "uniform-degree(" + std::to_string(d_) + ")";
  const std::uint64_t n = part_->vertex_count();
  const int d = d_;
  DomainSpec dom = impl.domain;
  impl.answer = [model, n, d, dom](const OracleSeed& seed, Rng& rng, Element) -> Answer {
    Element u = rng.next_below(n);
    int port = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(d)));
    Element v = model->mate(seed, u, port);
    return {dom.pair_encode(u, v), 1};
  };
  return impl;
}

}  // namespace hugeobj

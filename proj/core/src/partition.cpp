#include "hugeobj/partition.hpp"

#include <algorithm>

namespace hugeobj {

Partition Partition::contiguous(std::uint64_t vertex_count,
                                std::vector<std::uint64_t> sizes) {
  std::uint64_t total = 0;
  for (std::uint64_t s : sizes) {
    if (s == 0) throw std::invalid_argument("Partition: empty part");
    total += s;
  }
  if (total != vertex_count) throw std::invalid_argument("Partition: sizes do not sum to N");
  Partition p;
  p.n_ = vertex_count;
  p.offsets_.reserve(sizes.size() + 1);
  p.offsets_.push_back(0);
  for (std::uint64_t s : sizes) p.offsets_.push_back(p.offsets_.back() + s);
  p.sizes_ = std::move(sizes);
  return p;
}

Partition Partition::from_assignment(const std::vector<int>& part_of, int parts) {
  if (parts < 1) throw std::invalid_argument("Partition: parts < 1");
  Partition p;
  p.n_ = part_of.size();
  auto rank = std::make_shared<std::vector<std::uint64_t>>(part_of.size(), 0);
  auto members = std::make_shared<std::vector<std::vector<Element>>>(parts);
  for (Element v = 0; v < part_of.size(); ++v) {
    int i = part_of[v];
    if (i < 0 || i >= parts) throw std::invalid_argument("Partition: bad part index");
    (*rank)[v] = (*members)[static_cast<std::size_t>(i)].size();
    (*members)[static_cast<std::size_t>(i)].push_back(v);
  }
  p.sizes_.resize(static_cast<std::size_t>(parts));
  for (int i = 0; i < parts; ++i) {
    p.sizes_[static_cast<std::size_t>(i)] = (*members)[static_cast<std::size_t>(i)].size();
    if (p.sizes_[static_cast<std::size_t>(i)] == 0)
      throw std::invalid_argument("Partition: empty part");
  }
  p.assign_ = std::make_shared<const std::vector<int>>(part_of);
  p.rank_ = std::move(rank);
  p.members_ = std::move(members);
  return p;
}

int Partition::part_of(Element v) const {
  if (v >= n_) throw std::out_of_range("Partition::part_of");
  if (assign_) return (*assign_)[v];
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

std::uint64_t Partition::rank_in_part(Element v) const {
  if (v >= n_) throw std::out_of_range("Partition::rank_in_part");
  if (rank_) return (*rank_)[v];
  return v - offsets_[static_cast<std::size_t>(part_of(v))];
}

Element Partition::nth_of_part(int i, std::uint64_t rank) const {
  if (i < 0 || i >= parts() || rank >= part_size(i))
    throw std::out_of_range("Partition::nth_of_part");
  if (members_) return (*members_)[static_cast<std::size_t>(i)][rank];
  return offsets_[static_cast<std::size_t>(i)] + rank;
}

}  // namespace hugeobj

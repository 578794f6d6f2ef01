#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "hugeobj/domain.hpp"

namespace hugeobj {

// Partition of a vertex set into t parts, with rank/unrank inside each part
// (the port-matching implementation addresses vertices by their in-part
// position). Contiguous-range partitions answer everything in O(log t);
// explicit assignments keep index tables.
class Partition {
 public:
  static Partition contiguous(std::uint64_t vertex_count, std::vector<std::uint64_t> sizes);
  static Partition from_assignment(const std::vector<int>& part_of, int parts);

  int parts() const { return static_cast<int>(sizes_.size()); }
  std::uint64_t vertex_count() const { return n_; }
  std::uint64_t part_size(int i) const { return sizes_.at(static_cast<std::size_t>(i)); }
  bool is_contiguous() const { return assign_ == nullptr; }

  int part_of(Element v) const;
  std::uint64_t rank_in_part(Element v) const;
  Element nth_of_part(int i, std::uint64_t rank) const;

 private:
  Partition() = default;

  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint64_t> offsets_;  // contiguous mode
  // explicit mode
  std::shared_ptr<const std::vector<int>> assign_;
  std::shared_ptr<const std::vector<std::uint64_t>> rank_;
  std::shared_ptr<const std::vector<std::vector<Element>>> members_;
};

}  // namespace hugeobj

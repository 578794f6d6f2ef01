#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hugeobj/oracle.hpp"

namespace hugeobj {

// Seeded pseudorandom permutation of [0, size), evaluable in both
// directions without materializing the permutation: a Feistel network over
// the smallest even-bit power of two >= size, cycle-walked back into range.
// Each evaluation costs O(1) expected oracle calls. Domains of size <= 32
// are shuffled outright (Fisher-Yates on oracle draws) since short Feistel
// networks mix poorly there.
class SeededPermutation {
 public:
  SeededPermutation(std::uint64_t size, const OracleSeed& seed, const Label& scope);

  std::uint64_t size() const { return size_; }

  std::uint64_t forward(std::uint64_t x) const;
  std::uint64_t inverse(std::uint64_t y) const;

 private:
  std::uint64_t encrypt_once(std::uint64_t v) const;
  std::uint64_t decrypt_once(std::uint64_t v) const;
  std::uint64_t round_value(int round, std::uint64_t half) const;

  static constexpr int kRounds = 6;
  static constexpr std::uint64_t kSmall = 32;

  std::uint64_t size_;
  int half_bits_ = 1;        // each Feistel half is half_bits_ wide
  std::uint64_t half_mask_ = 1;
  OracleSeed scoped_seed_;
  std::vector<std::uint32_t> small_fwd_, small_inv_;
};

}  // namespace hugeobj

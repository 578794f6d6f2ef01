#include "hugeobj/permutation.hpp"

namespace hugeobj {

SeededPermutation::SeededPermutation(std::uint64_t size, const OracleSeed& seed,
                                     const Label& scope)
    : size_(size), scoped_seed_(seed.sub(scope)) {
  if (size == 0) throw std::invalid_argument("SeededPermutation: empty domain");
  if (size <= kSmall) {
    // Inside-out Fisher-Yates driven by oracle draws.
    small_fwd_.resize(size);
    for (std::uint64_t i = 0; i < size; ++i) {
      std::uint64_t j = oracle_below(scoped_seed_, Label("perm.fy", i), i + 1);
      small_fwd_[i] = small_fwd_[j];
      small_fwd_[j] = static_cast<std::uint32_t>(i);
    }
    small_inv_.resize(size);
    for (std::uint64_t i = 0; i < size; ++i) small_inv_[small_fwd_[i]] = static_cast<std::uint32_t>(i);
    return;
  }
  int bits = 0;
  while ((1ULL << bits) < size) ++bits;
  if (bits % 2) ++bits;
  half_bits_ = bits / 2;
  half_mask_ = (1ULL << half_bits_) - 1;
}

std::uint64_t SeededPermutation::round_value(int round, std::uint64_t half) const {
  return scoped_seed_.value(Label("perm.round", static_cast<std::uint64_t>(round), half)) &
         half_mask_;
}

std::uint64_t SeededPermutation::encrypt_once(std::uint64_t v) const {
  std::uint64_t left = v >> half_bits_;
  std::uint64_t right = v & half_mask_;
  for (int r = 0; r < kRounds; ++r) {
    std::uint64_t next = left ^ round_value(r, right);
    left = right;
    right = next & half_mask_;
  }
  return (left << half_bits_) | right;
}

std::uint64_t SeededPermutation::decrypt_once(std::uint64_t v) const {
  std::uint64_t left = v >> half_bits_;
  std::uint64_t right = v & half_mask_;
  for (int r = kRounds - 1; r >= 0; --r) {
    std::uint64_t prev = right ^ round_value(r, left);
    right = left;
    left = prev & half_mask_;
  }
  return (left << half_bits_) | right;
}

std::uint64_t SeededPermutation::forward(std::uint64_t x) const {
  if (x >= size_) throw std::out_of_range("SeededPermutation::forward");
  if (!small_fwd_.empty()) return small_fwd_[x];
  std::uint64_t v = x;
  do {
    v = encrypt_once(v);
  } while (v >= size_);  // padded domain < 4*size, expected <4 walks
  return v;
}

std::uint64_t SeededPermutation::inverse(std::uint64_t y) const {
  if (y >= size_) throw std::out_of_range("SeededPermutation::inverse");
  if (!small_inv_.empty()) return small_inv_[y];
  std::uint64_t v = y;
  do {
    v = decrypt_once(v);
  } while (v >= size_);
  return v;
}

}  // namespace hugeobj

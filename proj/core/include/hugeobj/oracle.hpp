#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hugeobj/rng.hpp"

namespace hugeobj {

// SipHash-2-4 with a 128-bit key. Not used for security here; it is the
// keyed pseudorandom stream backing every per-seed object.
std::uint64_t siphash24(std::uint64_t k0, std::uint64_t k1, const void* data,
                        std::size_t len);

// Canonical label encoding (bit-exact wire format):
//   UTF-8 context string, 0x00 separator, big-endian 8-byte integers
//   per component.
// Labels identify oracle draws within one seeded object; distinct labels
// give independent values, equal labels always repeat the same value.
class Label {
 public:
  explicit Label(std::string_view context) {
    append_bytes(context.data(), context.size());
    push_byte(0x00);
  }

  Label(std::string_view context, std::uint64_t a) : Label(context) { push_u64(a); }
  Label(std::string_view context, std::uint64_t a, std::uint64_t b) : Label(context, a) {
    push_u64(b);
  }
  Label(std::string_view context, std::uint64_t a, std::uint64_t b, std::uint64_t c)
      : Label(context, a, b) {
    push_u64(c);
  }
  Label(std::string_view context, std::uint64_t a, std::uint64_t b, std::uint64_t c,
        std::uint64_t d)
      : Label(context, a, b, c) {
    push_u64(d);
  }

  Label& push_u64(std::uint64_t v) {
    for (int i = 7; i >= 0; --i) push_byte(static_cast<unsigned char>(v >> (8 * i)));
    return *this;
  }

  const unsigned char* data() const { return buf_; }
  std::size_t size() const { return len_; }

 private:
  void push_byte(unsigned char b) {
    if (len_ >= sizeof(buf_)) throw std::length_error("oracle label too long");
    buf_[len_++] = b;
  }
  void append_bytes(const void* p, std::size_t n) {
    if (len_ + n > sizeof(buf_)) throw std::length_error("oracle label too long");
    std::memcpy(buf_ + len_, p, n);
    len_ += n;
  }

  unsigned char buf_[96];
  std::size_t len_ = 0;
};

// Seed of a per-object randomness source. Equal (seed bytes, scheme_version,
// label) triples always produce identical values; that is the consistency
// contract making each seeded object a single well-defined individual.
class OracleSeed {
 public:
  static constexpr std::uint32_t kSchemeVersion = 1;

  explicit OracleSeed(std::string bytes, std::uint32_t scheme_version = kSchemeVersion);

  static OracleSeed random(Rng& rng, std::size_t num_bytes = 16);

  const std::string& bytes() const { return bytes_; }
  std::uint32_t scheme_version() const { return version_; }

  // Raw 64-bit PRF value for a label.
  std::uint64_t value(const Label& label) const {
    return siphash24(k0_, k1_, label.data(), label.size());
  }

  // Derived sub-seed: an independent randomness source scoped by `label`.
  // Used to namespace a module's draws (e.g. one sub-seed per tree leaf)
  // so composed implementations cannot collide on labels.
  OracleSeed sub(const Label& label) const;

  bool operator==(const OracleSeed& o) const {
    return bytes_ == o.bytes_ && version_ == o.version_;
  }

 private:
  OracleSeed() = default;

  std::string bytes_;
  std::uint32_t version_ = kSchemeVersion;
  std::uint64_t k0_ = 0, k1_ = 0;  // key derived from (bytes, version)
};

// Deterministic uniform draw on the 53-bit grid in [0,1).
inline double oracle_uniform(const OracleSeed& seed, const Label& label) {
  return static_cast<double>(seed.value(label) >> 11) * 0x1.0p-53;
}

// Bernoulli(p) bit: 1 iff oracle_uniform < p (strict, so p=0 is never 1
// and p=1 is always 1 on the 53-bit grid).
inline bool oracle_bernoulli(const OracleSeed& seed, const Label& label, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli p outside [0,1]");
  return oracle_uniform(seed, label) < p;
}

// Uniform integer in [0, n) keyed by (seed, label).
std::uint64_t oracle_below(const OracleSeed& seed, const Label& label, std::uint64_t n);

// Pseudorandom byte string expanded from a seed; the ordinary-implementation
// transform uses this to serve oracle calls from a short seed.
std::string oracle_stream(const OracleSeed& seed, const Label& label, std::size_t num_bytes);

}  // namespace hugeobj

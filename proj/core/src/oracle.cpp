#include "hugeobj/oracle.hpp"

namespace hugeobj {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int b) { return (x << b) | (x >> (64 - b)); }

inline void sipround(std::uint64_t& v0, std::uint64_t& v1, std::uint64_t& v2,
                     std::uint64_t& v3) {
  v0 += v1;
  v1 = rotl(v1, 13);
  v1 ^= v0;
  v0 = rotl(v0, 32);
  v2 += v3;
  v3 = rotl(v3, 16);
  v3 ^= v2;
  v0 += v3;
  v3 = rotl(v3, 21);
  v3 ^= v0;
  v2 += v1;
  v1 = rotl(v1, 17);
  v1 ^= v2;
  v2 = rotl(v2, 32);
}

inline std::uint64_t load_le64(const unsigned char* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  return v;  // little-endian host assumed; documented in README build notes
}

}  // namespace

std::uint64_t siphash24(std::uint64_t k0, std::uint64_t k1, const void* data,
                        std::size_t len) {
  const unsigned char* in = static_cast<const unsigned char*>(data);
  std::uint64_t v0 = k0 ^ 0x736f6d6570736575ULL;
  std::uint64_t v1 = k1 ^ 0x646f72616e646f6dULL;
  std::uint64_t v2 = k0 ^ 0x6c7967656e657261ULL;
  std::uint64_t v3 = k1 ^ 0x7465646279746573ULL;

  const std::size_t end = len - (len % 8);
  for (std::size_t i = 0; i < end; i += 8) {
    std::uint64_t m = load_le64(in + i);
    v3 ^= m;
    sipround(v0, v1, v2, v3);
    sipround(v0, v1, v2, v3);
    v0 ^= m;
  }

  std::uint64_t b = static_cast<std::uint64_t>(len) << 56;
  switch (len & 7) {
    case 7: b |= static_cast<std::uint64_t>(in[end + 6]) << 48; [[fallthrough]];
    case 6: b |= static_cast<std::uint64_t>(in[end + 5]) << 40; [[fallthrough]];
    case 5: b |= static_cast<std::uint64_t>(in[end + 4]) << 32; [[fallthrough]];
    case 4: b |= static_cast<std::uint64_t>(in[end + 3]) << 24; [[fallthrough]];
    case 3: b |= static_cast<std::uint64_t>(in[end + 2]) << 16; [[fallthrough]];
    case 2: b |= static_cast<std::uint64_t>(in[end + 1]) << 8; [[fallthrough]];
    case 1: b |= static_cast<std::uint64_t>(in[end + 0]); break;
    case 0: break;
  }
  v3 ^= b;
  sipround(v0, v1, v2, v3);
  sipround(v0, v1, v2, v3);
  v0 ^= b;

  v2 ^= 0xff;
  sipround(v0, v1, v2, v3);
  sipround(v0, v1, v2, v3);
  sipround(v0, v1, v2, v3);
  sipround(v0, v1, v2, v3);
  return v0 ^ v1 ^ v2 ^ v3;
}

namespace {

// Fixed key-derivation constants; changing them is a scheme_version bump.
constexpr std::uint64_t kDeriveK0 = 0x9ae16a3b2f90404fULL;
constexpr std::uint64_t kDeriveK1 = 0xc3a5c85c97cb3127ULL;

std::string keyed_input(const std::string& bytes, std::uint32_t version,
                        unsigned char tag) {
  std::string in;
  in.reserve(bytes.size() + 5);
  in.append(bytes);
  for (int i = 3; i >= 0; --i) in.push_back(static_cast<char>((version >> (8 * i)) & 0xff));
  in.push_back(static_cast<char>(tag));
  return in;
}

}  // namespace

OracleSeed::OracleSeed(std::string bytes, std::uint32_t scheme_version)
    : bytes_(std::move(bytes)), version_(scheme_version) {
  std::string in0 = keyed_input(bytes_, version_, 0x00);
  std::string in1 = keyed_input(bytes_, version_, 0x01);
  k0_ = siphash24(kDeriveK0, kDeriveK1, in0.data(), in0.size());
  k1_ = siphash24(kDeriveK1, kDeriveK0, in1.data(), in1.size());
}

OracleSeed OracleSeed::random(Rng& rng, std::size_t num_bytes) {
  std::string bytes(num_bytes, '\0');
  for (std::size_t i = 0; i < num_bytes; ++i)
    bytes[i] = static_cast<char>(rng.next_u64() & 0xff);
  return OracleSeed(std::move(bytes));
}

OracleSeed OracleSeed::sub(const Label& label) const {
  OracleSeed child;
  child.version_ = version_;
  child.bytes_ = bytes_;  // provenance only; the derived key drives the PRF
  child.bytes_.push_back('/');
  child.bytes_.append(reinterpret_cast<const char*>(label.data()), label.size());
  child.k0_ = siphash24(k0_ ^ 0x5bd1e995u, k1_, label.data(), label.size());
  child.k1_ = siphash24(k0_, k1_ ^ 0x1b873593u, label.data(), label.size());
  return child;
}

std::uint64_t oracle_below(const OracleSeed& seed, const Label& label, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("oracle_below: n must be positive");
  if (n == 1) return 0;
  // Fixed-precision multiply-shift on the 53-bit grid; bias < 2^-40 for the
  // domain sizes in scope, and deterministic per (seed,label,n).
  __uint128_t m = static_cast<__uint128_t>(seed.value(label)) * n;
  return static_cast<std::uint64_t>(m >> 64);
}

std::string oracle_stream(const OracleSeed& seed, const Label& label,
                          std::size_t num_bytes) {
  std::string out;
  out.reserve(num_bytes);
  for (std::uint64_t block = 0; out.size() < num_bytes; ++block) {
    Label l = label;
    l.push_u64(block);
    std::uint64_t v = seed.value(l);
    for (int i = 0; i < 8 && out.size() < num_bytes; ++i)
      out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  return out;
}

}  // namespace hugeobj

#include "meshbcast/rng.hpp"

namespace meshbcast {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += kGamma;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t trial,
                         std::uint64_t node, std::uint64_t round,
                         StreamPurpose purpose) {
  std::uint64_t k = splitmix64(seed ^ 0x243f6a8885a308d3ull);
  k = splitmix64(k ^ trial * 0x13198a2e03707344ull);
  k = splitmix64(k ^ node * 0xa4093822299f31d0ull);
  k = splitmix64(k ^ round * 0x082efa98ec4e6c89ull);
  k = splitmix64(k ^ static_cast<std::uint64_t>(purpose) * 0x452821e638d01377ull);
  return k;
}

std::uint64_t RngStream::next_u64() {
  return splitmix64(key_ + counter_++ * kGamma);
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint8_t RngStream::next_byte() {
  return static_cast<std::uint8_t>(next_u64() >> 56);
}

bool RngStream::bernoulli(double p) {
  if (p <= 0.0) {
    return false;
  }
  if (p >= 1.0) {
    return true;
  }
  return next_unit() < p;
}

std::uint32_t RngStream::next_below(std::uint32_t bound) {
  return static_cast<std::uint32_t>(next_u64() % bound);
}

}  // namespace meshbcast

#pragma once

#include <cstdint>

namespace meshbcast {

// Labels for independent random streams. Every random decision in the
// simulator draws from a stream keyed by (seed, trial, node, round, purpose),
// so trials can run in any order (or concurrently) and still reproduce
// bit-identical results.
enum class StreamPurpose : std::uint64_t {
  SenderFault = 1,
  ReceiverFault = 2,
  DecayCoin = 3,
  RlncCoef = 4,
  Generator = 5,
  TreeRepair = 6,
  Test = 7,
};

std::uint64_t splitmix64(std::uint64_t z);

// Collapses the stream coordinates into one 64-bit key.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t trial,
                         std::uint64_t node, std::uint64_t round,
                         StreamPurpose purpose);

// Stateless-by-construction generator: output i is a hash of (key, i).
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1), 53-bit mantissa.
  double next_unit();
  std::uint8_t next_byte();
  bool bernoulli(double p);
  // Uniform in [0, bound); bound > 0. Rejection-free modulo fold is fine
  // for the small bounds used here (graph sizes, field elements).
  std::uint32_t next_below(std::uint32_t bound);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

inline RngStream stream_for(std::uint64_t seed, std::uint64_t trial,
                            std::uint64_t node, std::uint64_t round,
                            StreamPurpose purpose) {
  return RngStream(derive_key(seed, trial, node, round, purpose));
}

}  // namespace meshbcast

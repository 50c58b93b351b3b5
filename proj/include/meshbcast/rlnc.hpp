#pragma once

#include <cstdint>
#include <vector>

#include "meshbcast/rng.hpp"

namespace meshbcast {

// Fixed payload size: every message is 32 field symbols, and every coded
// packet carries one 32-symbol linear combination.
constexpr int kPayloadSymbols = 32;

struct CodedPacket {
  std::vector<std::uint8_t> coeffs;   // length k
  std::vector<std::uint8_t> payload;  // length kPayloadSymbols
};

// Incremental Gaussian elimination over GF(2^8), kept in reduced row echelon
// form so decoding is a read-off once the matrix is full rank.
class DecoderState {
 public:
  explicit DecoderState(int k);

  // The source view: identity coefficients over the original messages.
  // Each message must have kPayloadSymbols bytes.
  static DecoderState source(const std::vector<std::vector<std::uint8_t>>& messages);

  int k() const { return k_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool complete() const { return rank() == k_; }

  // Row-reduces the packet into the basis; returns true iff it was innovative.
  bool absorb(const CodedPacket& pkt);

  bool in_span(const std::vector<std::uint8_t>& coeffs) const;

  // Fresh combination of the current basis with uniform random coefficients.
  // Requires rank >= 1.
  CodedPacket encode(RngStream& rng) const;

  // Requires complete(). Returns the k original messages.
  std::vector<std::vector<std::uint8_t>> decode() const;

 private:
  int k_;
  std::vector<CodedPacket> rows_;  // sorted by pivot column
  std::vector<int> pivot_;         // pivot column of each row

  // Reduces pkt by the current rows; returns the leading column or -1.
  int reduce(CodedPacket& pkt) const;
};

}  // namespace meshbcast

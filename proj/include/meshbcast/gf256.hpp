#pragma once

#include <cstdint>

namespace meshbcast::gf256 {

// GF(2^8) with the AES reduction polynomial x^8 + x^4 + x^3 + x + 1 (0x11b).
// Multiplication goes through a full 256x256 table built from log/antilog
// tables at startup; addition is XOR.

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) {
  return static_cast<std::uint8_t>(a ^ b);
}

std::uint8_t mul(std::uint8_t a, std::uint8_t b);

// Multiplicative inverse; inv(0) throws std::domain_error.
std::uint8_t inv(std::uint8_t a);

// Raw row pointer into the multiplication table, for tight loops:
// mul_row(a)[b] == mul(a, b).
const std::uint8_t* mul_row(std::uint8_t a);

}  // namespace meshbcast::gf256

#include "meshbcast/gf256.hpp"

#include <stdexcept>

namespace meshbcast::gf256 {

namespace {

constexpr unsigned kPoly = 0x11b;

struct Tables {
  std::uint8_t log[256];
  std::uint8_t alog[256];
  std::uint8_t product[256][256];
  std::uint8_t inverse[256];

  Tables() {
    // 0x03 generates the multiplicative group for the AES polynomial.
    unsigned b = 1;
    for (int i = 0; i < 255; ++i) {
      alog[i] = static_cast<std::uint8_t>(b);
      log[b] = static_cast<std::uint8_t>(i);
      unsigned doubled = b << 1;
      if (doubled & 0x100) {
        doubled ^= kPoly;
      }
      b = doubled ^ b;  // b *= 3
    }
    alog[255] = alog[0];
    log[0] = 0;  // never consulted
    for (int a = 0; a < 256; ++a) {
      for (int c = 0; c < 256; ++c) {
        if (a == 0 || c == 0) {
          product[a][c] = 0;
        } else {
          product[a][c] = alog[(log[a] + log[c]) % 255];
        }
      }
    }
    inverse[0] = 0;
    for (int a = 1; a < 256; ++a) {
      inverse[a] = alog[(255 - log[a]) % 255];
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  return tables().product[a][b];
}

std::uint8_t inv(std::uint8_t a) {
  if (a == 0) {
    throw std::domain_error("gf256: zero has no inverse");
  }
  return tables().inverse[a];
}

const std::uint8_t* mul_row(std::uint8_t a) {
  return tables().product[a];
}

}  // namespace meshbcast::gf256

#include "meshbcast/rlnc.hpp"

#include <algorithm>
#include <stdexcept>

#include "meshbcast/gf256.hpp"

namespace meshbcast {

namespace {

// dst += c * src over GF(2^8), elementwise.
void axpy(std::vector<std::uint8_t>& dst, std::uint8_t c,
          const std::vector<std::uint8_t>& src) {
  if (c == 0) {
    return;
  }
  const std::uint8_t* row = gf256::mul_row(c);
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<std::uint8_t>(dst[i] ^ row[src[i]]);
  }
}

void scale(std::vector<std::uint8_t>& v, std::uint8_t c) {
  const std::uint8_t* row = gf256::mul_row(c);
  for (auto& b : v) {
    b = row[b];
  }
}

}  // namespace

DecoderState::DecoderState(int k) : k_(k) {
  if (k < 1) {
    throw std::invalid_argument("decoder needs k >= 1");
  }
}

DecoderState DecoderState::source(const std::vector<std::vector<std::uint8_t>>& messages) {
  DecoderState st(static_cast<int>(messages.size()));
  for (int i = 0; i < st.k_; ++i) {
    if (static_cast<int>(messages[i].size()) != kPayloadSymbols) {
      throw std::invalid_argument("message payload must have 32 symbols");
    }
    CodedPacket row;
    row.coeffs.assign(st.k_, 0);
    row.coeffs[i] = 1;
    row.payload = messages[i];
    st.rows_.push_back(std::move(row));
    st.pivot_.push_back(i);
  }
  return st;
}

int DecoderState::reduce(CodedPacket& pkt) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint8_t c = pkt.coeffs[pivot_[r]];
    if (c != 0) {
      axpy(pkt.coeffs, c, rows_[r].coeffs);
      axpy(pkt.payload, c, rows_[r].payload);
    }
  }
  for (int col = 0; col < k_; ++col) {
    if (pkt.coeffs[col] != 0) {
      return col;
    }
  }
  return -1;
}

bool DecoderState::absorb(const CodedPacket& pkt) {
  if (static_cast<int>(pkt.coeffs.size()) != k_ ||
      static_cast<int>(pkt.payload.size()) != kPayloadSymbols) {
    throw std::invalid_argument("coded packet has wrong shape");
  }
  CodedPacket work = pkt;
  int col = reduce(work);
  if (col < 0) {
    return false;
  }
  std::uint8_t lead_inv = gf256::inv(work.coeffs[col]);
  scale(work.coeffs, lead_inv);
  scale(work.payload, lead_inv);
  // Clear the new pivot column from the existing rows to stay in RREF.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint8_t c = rows_[r].coeffs[col];
    if (c != 0) {
      axpy(rows_[r].coeffs, c, work.coeffs);
      axpy(rows_[r].payload, c, work.payload);
    }
  }
  auto at = std::upper_bound(pivot_.begin(), pivot_.end(), col);
  std::size_t idx = static_cast<std::size_t>(at - pivot_.begin());
  pivot_.insert(at, col);
  rows_.insert(rows_.begin() + idx, std::move(work));
  return true;
}

bool DecoderState::in_span(const std::vector<std::uint8_t>& coeffs) const {
  CodedPacket probe;
  probe.coeffs = coeffs;
  probe.payload.assign(kPayloadSymbols, 0);
  return reduce(probe) < 0;
}

CodedPacket DecoderState::encode(RngStream& rng) const {
  if (rows_.empty()) {
    throw std::logic_error("cannot encode from an empty span");
  }
  // The rows are linearly independent, so any nonzero combination carries
  // information; an all-zero draw would waste the transmission. Re-draw it.
  std::vector<std::uint8_t> mix(rows_.size());
  bool nonzero = false;
  while (!nonzero) {
    for (auto& c : mix) {
      c = rng.next_byte();
      nonzero = nonzero || c != 0;
    }
  }
  CodedPacket out;
  out.coeffs.assign(k_, 0);
  out.payload.assign(kPayloadSymbols, 0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    axpy(out.coeffs, mix[r], rows_[r].coeffs);
    axpy(out.payload, mix[r], rows_[r].payload);
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> DecoderState::decode() const {
  if (!complete()) {
    throw std::logic_error("decode requires a full-rank basis");
  }
  // Full rank in RREF is the identity, with pivots in column order.
  std::vector<std::vector<std::uint8_t>> out(k_);
  for (int i = 0; i < k_; ++i) {
    out[i] = rows_[i].payload;
  }
  return out;
}

}  // namespace meshbcast

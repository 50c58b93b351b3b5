#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "meshbcast/graph.hpp"

namespace meshbcast {

enum class FaultMode { Both, SenderOnly, ReceiverOnly };

struct SimConfig {
  double p = 0.0;       // independent per-round fault probability
  double delta = 0.1;   // target failure probability (sizes decay phases)
  int x = 0;            // ranking threshold; 0 picks max(2, ceil(log2 n))
  int k = 1;            // message count (multi-message protocol only)
  int c_mult = 6;       // superround length multiplier c in c*S
  std::uint64_t seed = 1;
  int trial = 0;
  std::int64_t max_rounds = 0;  // 0 picks the default budget
  FaultMode fault_mode = FaultMode::Both;
  // When p == 0, count deterministic-slot receivers that hear noise.
  bool assert_deterministic_slots = false;
  bool record_events = false;
};

std::int64_t default_max_rounds(int n, int diam, int k);
int default_x(int n);

enum class RxKind : std::uint8_t { Silence, Noise, Message };

struct Transmission {
  int node;
  std::uint32_t tag;  // protocol-defined payload id
};

class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Resolves one synchronous round of the radio model. Half-duplex: a
// transmitter hears nothing. A listener with two or more transmitting
// neighbors hears noise. With exactly one, the sender-fault coin (probability
// p) can turn the transmission into noise; otherwise the receiver-fault coin
// (probability p) is drawn and the message is delivered iff it comes up
// clean. Scratch buffers persist across rounds, so reuse one engine per run.
class RadioEngine {
 public:
  explicit RadioEngine(const MeshGraph& g);

  void resolve(const std::vector<Transmission>& txs, double p, FaultMode mode,
               std::uint64_t seed, int trial, std::int64_t round);
  // Classic collision-only model, no randomness. Oracle for the p = 0 case.
  void resolve_faultless(const std::vector<Transmission>& txs);

  RxKind rx_kind(int v) const {
    return stamp_[v] == cur_ ? kind_[v] : RxKind::Silence;
  }
  std::uint32_t rx_tag(int v) const { return tag_[v]; }
  // Listeners with at least one transmitting neighbor this round.
  const std::vector<int>& hot() const { return hot_; }
  const std::vector<Transmission>& txs() const { return txs_; }
  const std::vector<std::uint8_t>& sender_faulted() const { return faulted_; }

 private:
  void scatter(const std::vector<Transmission>& txs);

  const MeshGraph& g_;
  std::uint32_t cur_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> tx_stamp_;
  std::vector<int> count_;          // transmitting neighbors seen this round
  std::vector<int> first_tx_;       // index into txs_ of the first one
  std::vector<RxKind> kind_;
  std::vector<std::uint32_t> tag_;
  std::vector<int> hot_;
  std::vector<Transmission> txs_;
  std::vector<std::uint8_t> faulted_;
};

// Round-synchronous protocol driven by the engine. Rounds are 1-indexed;
// initial holders count as informed at round 0.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual std::string_view name() const = 0;
  virtual void initial_holders(std::vector<int>& out) const = 0;
  virtual void decide(std::int64_t round, std::vector<Transmission>& out) = 0;
  virtual void observe(std::int64_t round, const RadioEngine& engine) = 0;
  // Valid after observe(): nodes that just became informed.
  virtual const std::vector<int>& newly_informed() const = 0;
  // Whether the node may legally transmit (it holds forwardable content).
  virtual bool holds_payload(int node) const = 0;
  // Intended receivers of this round's deterministic slots; used by the
  // collision-freeness assertion. Default: none.
  virtual void expected_receivers(std::int64_t round, std::vector<int>& out) const {
    (void)round;
    (void)out;
  }
};

struct TraceEvent {
  enum class Type : std::uint8_t { Tx, RxMsg, RxNoise, Informed };
  std::int64_t round;
  int node;
  Type type;
  std::uint32_t tag;
};

const char* trace_event_name(TraceEvent::Type t);

struct Trace {
  std::int64_t completion_round = -1;  // rounds needed; -1 when the budget ran out
  bool success = false;
  std::int64_t rounds_executed = 0;
  std::int64_t max_rounds = 0;
  std::vector<std::int64_t> informed_round;  // -1 until informed
  std::uint64_t slot_noise_violations = 0;
  std::vector<TraceEvent> events;  // populated when record_events is set
};

Trace run_protocol(const MeshGraph& g, Protocol& proto, const SimConfig& cfg);

}  // namespace meshbcast

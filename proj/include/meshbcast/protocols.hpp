#pragma once

#include <memory>
#include <vector>

#include "meshbcast/ranking.hpp"
#include "meshbcast/rlnc.hpp"
#include "meshbcast/sim.hpp"

namespace meshbcast {

// Decay: in round r of each phase of length ceil(log2 n) + 1, every informed
// node transmits independently with probability 2^-r. The baseline
// randomized broadcast; also the building block of the noise-robust scheme.
class DecayBroadcast : public Protocol {
 public:
  DecayBroadcast(const MeshGraph& g, int source, const SimConfig& cfg);

  std::string_view name() const override { return "decay"; }
  void initial_holders(std::vector<int>& out) const override;
  void decide(std::int64_t round, std::vector<Transmission>& out) override;
  void observe(std::int64_t round, const RadioEngine& engine) override;
  const std::vector<int>& newly_informed() const override { return newly_; }
  bool holds_payload(int node) const override { return informed_[node] != 0; }

  int phase_len() const { return phase_len_; }

 private:
  int source_;
  std::uint64_t seed_;
  int trial_;
  int phase_len_;
  std::vector<double> prob_;  // prob_[r] = 2^-r
  std::vector<std::uint8_t> informed_;
  std::vector<int> informed_list_;
  std::vector<int> newly_;
};

// Deterministic slot structure shared by the faultless schedule and the
// schedule exporter.
//
// Fast: a node on layer i with rank2 j and a same-rank child transmits in
// rounds t = i + 9j (mod 9 rmax2). Slow: a node on layer i with slow
// children transmits in rounds t = i + 3 (mod 9) whose occurrence counter
// matches a child's slow_index mod slow_period. Super-slow: all informed
// nodes of layer i run Decay on rounds t = i + 6 (mod 9), with a per-layer
// phase clock. Simultaneously active layers of different kinds sit at least
// three layers apart, so only same-kind same-layer transmitters can meet,
// and those are separated by the tree properties (fast) or by the
// slow_index coloring (slow).
struct FaultlessSlots {
  int rmax2 = 1;
  int slow_period = 2;  // >= x; exceeds x only if greedy coloring needs more
  int ss_phase_len = 1;
  std::vector<int> fast_residue;              // per node, -1 without fast child
  std::vector<int> slow_index;                // per node, -1 unless slow
  std::vector<std::vector<int>> slow_sigmas;  // per node: indices of its slow children
};

// slow_index assignment: two same-layer slow nodes conflict when either's
// parent is adjacent to the other; greedy coloring over node ids keeps every
// dedicated occurrence collision-free at the intended receiver.
FaultlessSlots build_faultless_slots(const MeshGraph& g, const Sgst& sgst);

// First 1-indexed round congruent to layer + offset (mod 9).
int first_slot_round(int layer, int offset);

// Supernode capacity S = ceil(log2 log2 n), at least 1.
int default_block_size(int n);

class FaultlessSchedule : public Protocol {
 public:
  FaultlessSchedule(const MeshGraph& g, const Sgst& sgst, const SimConfig& cfg);

  std::string_view name() const override { return "faultless"; }
  void initial_holders(std::vector<int>& out) const override;
  void decide(std::int64_t round, std::vector<Transmission>& out) override;
  void observe(std::int64_t round, const RadioEngine& engine) override;
  const std::vector<int>& newly_informed() const override { return newly_; }
  bool holds_payload(int node) const override { return informed_[node] != 0; }
  void expected_receivers(std::int64_t round, std::vector<int>& out) const override;

  const FaultlessSlots& slots() const { return slots_; }

 private:
  const Sgst& sgst_;
  FaultlessSlots slots_;
  std::uint64_t seed_;
  int trial_;
  int modulus_;  // 9 * rmax2
  std::vector<std::vector<int>> fast_by_residue_;
  std::vector<std::vector<int>> slow_parents_by_mod9_;
  std::vector<std::vector<int>> layers_by_mod9_;
  std::vector<double> prob_;
  std::vector<std::uint8_t> informed_;
  std::vector<int> newly_;
  std::vector<int> expected_;  // intended receivers of the round just decided
};

// Fast stretches (maximal chains of fast edges) chopped into blocks of at
// most S consecutive nodes; every node lands in exactly one block. Blocks
// inherit the rank2 their stretch shares, and level is the block's depth in
// the contracted tree.
struct Supernodes {
  int block_size = 1;
  std::vector<int> block_of;
  std::vector<std::vector<int>> members;  // top-to-bottom stretch order
  std::vector<int> level;
  std::vector<int> rank_j;
};

Supernodes contract_supernodes(const Sgst& sgst, int S);

// Noise-robust schedule. Rounds cycle through 9-round blocks: phases 0-2
// drive fast supernode pipelining, phases 3-5 run Decay over slow-edge
// parents, phases 6-8 run Decay over whole layers. Within a phase band the
// band's clock rotates active layers mod 3 (for fast rounds, the member's
// original layer mod 3 pipelines inside the window), so simultaneous
// transmitters of one kind stay at least three layers apart.
//
// A supernode is active during superround tau = fast_clock / (c_mult * S)
// iff tau = level + 9 * rank_j (mod 9 rmax2).
class RobustCore {
 public:
  RobustCore(const MeshGraph& g, const Sgst& sgst, const SimConfig& cfg);

  // holds[v] != 0 marks nodes with forwardable content.
  void decide(std::int64_t round, const std::vector<std::uint8_t>& holds,
              std::vector<int>& out);

  const Supernodes& supernodes() const { return sn_; }
  int slow_phase_len() const { return slow_phase_len_; }
  int ss_phase_len() const { return ss_phase_len_; }
  int c_mult() const { return c_mult_; }

 private:
  std::uint64_t seed_;
  int trial_;
  int c_mult_;
  int modulus_;  // 9 * rmax2
  int slow_phase_len_;
  int ss_phase_len_;
  Supernodes sn_;
  std::vector<int> layer_of_;
  std::vector<int> fast_child_;
  std::vector<std::vector<int>> blocks_by_residue_;
  std::vector<std::vector<int>> slow_parents_by_mod3_;
  std::vector<std::vector<int>> nodes_by_mod3_;
  std::vector<double> prob_;
};

class RobustBroadcast : public Protocol {
 public:
  RobustBroadcast(const MeshGraph& g, const Sgst& sgst, const SimConfig& cfg);

  std::string_view name() const override { return "robust"; }
  void initial_holders(std::vector<int>& out) const override;
  void decide(std::int64_t round, std::vector<Transmission>& out) override;
  void observe(std::int64_t round, const RadioEngine& engine) override;
  const std::vector<int>& newly_informed() const override { return newly_; }
  bool holds_payload(int node) const override { return informed_[node] != 0; }

  const RobustCore& core() const { return core_; }

 private:
  int source_;
  RobustCore core_;
  std::vector<std::uint8_t> informed_;
  std::vector<int> newly_;
  std::vector<int> tx_nodes_;
};

// Multi-message broadcast: the robust schedule decides who talks, and every
// transmission carries a fresh random linear combination of the sender's
// current span. A node is informed once its decoder reaches rank k. With
// k = 1 the transmitter sets and reception rounds match RobustBroadcast
// under the same seed.
class RlncBroadcast : public Protocol {
 public:
  RlncBroadcast(const MeshGraph& g, const Sgst& sgst, const SimConfig& cfg);

  std::string_view name() const override { return "multi"; }
  void initial_holders(std::vector<int>& out) const override;
  void decide(std::int64_t round, std::vector<Transmission>& out) override;
  void observe(std::int64_t round, const RadioEngine& engine) override;
  const std::vector<int>& newly_informed() const override { return newly_; }
  bool holds_payload(int node) const override { return holds_[node] != 0; }

  int k() const { return k_; }
  const DecoderState& decoder(int node) const { return decoders_[node]; }
  const std::vector<std::vector<std::uint8_t>>& source_messages() const {
    return messages_;
  }

 private:
  int source_;
  int k_;
  std::uint64_t seed_;
  int trial_;
  RobustCore core_;
  std::vector<std::vector<std::uint8_t>> messages_;
  std::vector<DecoderState> decoders_;
  std::vector<std::uint8_t> holds_;
  std::vector<std::uint8_t> complete_;
  std::vector<int> newly_;
  std::vector<int> tx_nodes_;
  std::vector<CodedPacket> round_packets_;
};

}  // namespace meshbcast

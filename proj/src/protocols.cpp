#include "meshbcast/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "meshbcast/rng.hpp"

namespace meshbcast {

namespace {

std::vector<double> decay_probs(int phase_len) {
  std::vector<double> prob(static_cast<std::size_t>(phase_len) + 1, 0.0);
  for (int r = 1; r <= phase_len; ++r) prob[r] = std::ldexp(1.0, -r);
  return prob;
}

int ceil_log2_at_least_one(int n) { return std::max(1, ceil_log(2, n)); }

}  // namespace

int first_slot_round(int layer, int offset) {
  int m = (layer + offset) % 9;
  return m == 0 ? 9 : m;
}

int default_block_size(int n) {
  return std::max(1, ceil_log(2, ceil_log2_at_least_one(n)));
}

// ---------------------------------------------------------------- Decay

DecayBroadcast::DecayBroadcast(const MeshGraph& g, int source, const SimConfig& cfg)
    : source_(source),
      seed_(cfg.seed),
      trial_(cfg.trial),
      phase_len_(ceil_log2_at_least_one(g.n) + 1),
      prob_(decay_probs(phase_len_)),
      informed_(g.n, 0) {
  if (source < 0 || source >= g.n) throw std::invalid_argument("source out of range");
  informed_[source_] = 1;
  informed_list_.push_back(source_);
}

void DecayBroadcast::initial_holders(std::vector<int>& out) const {
  out.push_back(source_);
}

void DecayBroadcast::decide(std::int64_t round, std::vector<Transmission>& out) {
  int r = static_cast<int>((round - 1) % phase_len_) + 1;
  double p = prob_[r];
  for (int v : informed_list_) {
    auto coin = stream_for(seed_, trial_, v, static_cast<std::uint64_t>(round),
                           StreamPurpose::DecayCoin);
    if (coin.bernoulli(p)) out.push_back({v, 0});
  }
}

void DecayBroadcast::observe(std::int64_t, const RadioEngine& engine) {
  newly_.clear();
  for (int v : engine.hot()) {
    if (engine.rx_kind(v) != RxKind::Message || informed_[v]) continue;
    informed_[v] = 1;
    informed_list_.push_back(v);
    newly_.push_back(v);
  }
}

// ---------------------------------------------------- faultless schedule

FaultlessSlots build_faultless_slots(const MeshGraph& g, const Sgst& sgst) {
  const int n = g.n;
  FaultlessSlots slots;
  slots.rmax2 = sgst.tree.rmax2;
  slots.ss_phase_len = ceil_log2_at_least_one(n) + 1;
  slots.fast_residue.assign(n, -1);
  slots.slow_index.assign(n, -1);
  slots.slow_sigmas.assign(n, {});

  const int modulus = 9 * slots.rmax2;
  for (int v = 0; v < n; ++v) {
    if (sgst.fast_child[v] < 0) continue;
    int residue = (sgst.layering.layer_of[v] + 9 * sgst.tree.rank2[v]) % modulus;
    slots.fast_residue[v] = residue;
  }

  // Greedy conflict coloring of slow nodes, one layer at a time. Node w
  // conflicts with slow node c of its layer when parent(w) hears c or
  // parent(c) hears w; either way their dedicated occurrences must differ
  // or one reception is lost.
  int max_color = 0;
  std::vector<int> conflict_colors;
  for (const auto& layer_nodes : sgst.layering.layers) {
    for (int w : layer_nodes) {
      if (sgst.class_of[w] != NodeClass::Slow) continue;
      conflict_colors.clear();
      int pw = sgst.tree.parent[w];
      for (int c : g.adj[pw]) {
        if (c != w && slots.slow_index[c] >= 0 &&
            sgst.layering.layer_of[c] == sgst.layering.layer_of[w]) {
          conflict_colors.push_back(slots.slow_index[c]);
        }
      }
      for (int u : g.adj[w]) {
        if (sgst.layering.layer_of[u] != sgst.layering.layer_of[w] - 1) continue;
        for (int c : sgst.slow_children[u]) {
          if (c != w && slots.slow_index[c] >= 0)
            conflict_colors.push_back(slots.slow_index[c]);
        }
      }
      std::sort(conflict_colors.begin(), conflict_colors.end());
      int color = 0;
      for (int used : conflict_colors) {
        if (used == color) ++color;
        else if (used > color) break;
      }
      slots.slow_index[w] = color;
      max_color = std::max(max_color, color);
    }
  }
  slots.slow_period = std::max(sgst.x, max_color + 1);

  for (int u = 0; u < n; ++u) {
    auto& sigmas = slots.slow_sigmas[u];
    for (int c : sgst.slow_children[u]) sigmas.push_back(slots.slow_index[c]);
    std::sort(sigmas.begin(), sigmas.end());
    sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());
  }
  return slots;
}

FaultlessSchedule::FaultlessSchedule(const MeshGraph& g, const Sgst& sgst,
                                     const SimConfig& cfg)
    : sgst_(sgst),
      slots_(build_faultless_slots(g, sgst)),
      seed_(cfg.seed),
      trial_(cfg.trial),
      modulus_(9 * slots_.rmax2),
      fast_by_residue_(modulus_),
      slow_parents_by_mod9_(9),
      layers_by_mod9_(9),
      prob_(decay_probs(slots_.ss_phase_len)),
      informed_(g.n, 0) {
  informed_[sgst.source] = 1;
  for (int v = 0; v < g.n; ++v) {
    if (slots_.fast_residue[v] >= 0)
      fast_by_residue_[slots_.fast_residue[v]].push_back(v);
    if (!slots_.slow_sigmas[v].empty())
      slow_parents_by_mod9_[sgst.layering.layer_of[v] % 9].push_back(v);
  }
  for (int i = 0; i < static_cast<int>(sgst.layering.layers.size()); ++i)
    layers_by_mod9_[i % 9].push_back(i);
}

void FaultlessSchedule::initial_holders(std::vector<int>& out) const {
  out.push_back(sgst_.source);
}

void FaultlessSchedule::decide(std::int64_t round, std::vector<Transmission>& out) {
  expected_.clear();

  // Fast slots: every active node is on a layer congruent to round mod 9.
  for (int v : fast_by_residue_[round % modulus_]) {
    if (!informed_[v]) continue;
    out.push_back({v, 0});
    expected_.push_back(sgst_.fast_child[v]);
  }

  // Slow slots: parents on layers congruent to round - 3, one dedicated
  // occurrence per rotation position.
  int rm = static_cast<int>(((round - 3) % 9 + 9) % 9);
  for (int u : slow_parents_by_mod9_[rm]) {
    if (!informed_[u]) continue;
    int r0 = first_slot_round(sgst_.layering.layer_of[u], 3);
    std::int64_t occ = (round - r0) / 9;
    if (occ < 0) continue;
    int sigma = static_cast<int>(occ % slots_.slow_period);
    if (!std::binary_search(slots_.slow_sigmas[u].begin(),
                            slots_.slow_sigmas[u].end(), sigma))
      continue;
    out.push_back({u, 0});
    for (int w : sgst_.slow_children[u])
      if (slots_.slow_index[w] == sigma) expected_.push_back(w);
  }

  // Super-slow slots: whole layers congruent to round - 6 run Decay with a
  // per-layer clock.
  rm = static_cast<int>(((round - 6) % 9 + 9) % 9);
  for (int i : layers_by_mod9_[rm]) {
    int r0 = first_slot_round(i, 6);
    std::int64_t occ = (round - r0) / 9;
    if (occ < 0) continue;
    int r = static_cast<int>(occ % slots_.ss_phase_len) + 1;
    double p = prob_[r];
    for (int v : sgst_.layering.layers[i]) {
      if (!informed_[v]) continue;
      auto coin = stream_for(seed_, trial_, v, static_cast<std::uint64_t>(round),
                             StreamPurpose::DecayCoin);
      if (coin.bernoulli(p)) out.push_back({v, 0});
    }
  }
}

void FaultlessSchedule::expected_receivers(std::int64_t, std::vector<int>& out) const {
  out.insert(out.end(), expected_.begin(), expected_.end());
}

void FaultlessSchedule::observe(std::int64_t, const RadioEngine& engine) {
  newly_.clear();
  for (int v : engine.hot()) {
    if (engine.rx_kind(v) != RxKind::Message || informed_[v]) continue;
    informed_[v] = 1;
    newly_.push_back(v);
  }
}

// -------------------------------------------------------- robust schedule

Supernodes contract_supernodes(const Sgst& sgst, int S) {
  if (S < 1) throw std::invalid_argument("block size must be positive");
  const int n = static_cast<int>(sgst.tree.parent.size());
  Supernodes sn;
  sn.block_size = S;
  sn.block_of.assign(n, -1);

  // A stretch starts at every node whose tree edge is not fast (or at the
  // root) and follows the unique fast-child chain.
  for (int v = 0; v < n; ++v) {
    if (sgst.class_of[v] == NodeClass::Fast) continue;
    int cur = v;
    std::vector<int> block;
    while (true) {
      block.push_back(cur);
      if (static_cast<int>(block.size()) == S) {
        for (int w : block) sn.block_of[w] = static_cast<int>(sn.members.size());
        sn.rank_j.push_back(sgst.tree.rank2[block.front()]);
        sn.members.push_back(std::move(block));
        block = {};
      }
      cur = sgst.fast_child[cur];
      if (cur < 0) break;
    }
    if (!block.empty()) {
      for (int w : block) sn.block_of[w] = static_cast<int>(sn.members.size());
      sn.rank_j.push_back(sgst.tree.rank2[block.front()]);
      sn.members.push_back(std::move(block));
    }
  }

  sn.level.assign(sn.members.size(), -1);
  // Tops sit on strictly increasing layers along any root path, so blocks
  // sorted by top layer see their parent block first.
  std::vector<int> order(sn.members.size());
  for (std::size_t b = 0; b < order.size(); ++b) order[b] = static_cast<int>(b);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return sgst.layering.layer_of[sn.members[a].front()] <
           sgst.layering.layer_of[sn.members[b].front()];
  });
  for (int b : order) {
    int top = sn.members[b].front();
    int p = sgst.tree.parent[top];
    sn.level[b] = (p < 0) ? 0 : sn.level[sn.block_of[p]] + 1;
  }
  return sn;
}

RobustCore::RobustCore(const MeshGraph& g, const Sgst& sgst, const SimConfig& cfg)
    : seed_(cfg.seed),
      trial_(cfg.trial),
      c_mult_(std::max(1, cfg.c_mult)),
      modulus_(9 * sgst.tree.rmax2),
      slow_phase_len_(ceil_log2_at_least_one(std::max(2, sgst.x)) + 1),
      ss_phase_len_(ceil_log2_at_least_one(g.n) + 1),
      sn_(contract_supernodes(sgst, default_block_size(g.n))),
      layer_of_(sgst.layering.layer_of),
      fast_child_(sgst.fast_child),
      blocks_by_residue_(modulus_),
      slow_parents_by_mod3_(3),
      nodes_by_mod3_(3),
      prob_(decay_probs(std::max(slow_phase_len_, ss_phase_len_))) {
  for (std::size_t b = 0; b < sn_.members.size(); ++b) {
    int residue = (sn_.level[b] + 9 * sn_.rank_j[b]) % modulus_;
    blocks_by_residue_[residue].push_back(static_cast<int>(b));
  }
  for (int v = 0; v < g.n; ++v) {
    if (!sgst.slow_children[v].empty())
      slow_parents_by_mod3_[layer_of_[v] % 3].push_back(v);
    nodes_by_mod3_[layer_of_[v] % 3].push_back(v);
  }
}

void RobustCore::decide(std::int64_t round, const std::vector<std::uint8_t>& holds,
                        std::vector<int>& out) {
  std::int64_t block9 = (round - 1) / 9;
  int phase = static_cast<int>((round - 1) % 9);

  if (phase < 3) {
    // Fast phase band: a supernode stays active for one superround of
    // c_mult * S fast rounds; inside the window members pipeline by layer.
    std::int64_t f = 3 * block9 + phase;
    std::int64_t window = static_cast<std::int64_t>(c_mult_) * sn_.block_size;
    int residue = static_cast<int>((f / window) % modulus_);
    int fmod3 = static_cast<int>(f % 3);
    for (int b : blocks_by_residue_[residue]) {
      for (int v : sn_.members[b]) {
        if (holds[v] && fast_child_[v] >= 0 && layer_of_[v] % 3 == fmod3)
          out.push_back(v);
      }
    }
    return;
  }

  if (phase < 6) {
    // Slow phase band: Decay over parents of slow edges, active layers
    // rotating mod 3.
    std::int64_t s = 3 * block9 + (phase - 3);
    int smod3 = static_cast<int>(s % 3);
    int r = static_cast<int>((s / 3) % slow_phase_len_) + 1;
    double p = prob_[r];
    for (int v : slow_parents_by_mod3_[smod3]) {
      if (!holds[v]) continue;
      auto coin = stream_for(seed_, trial_, v, static_cast<std::uint64_t>(round),
                             StreamPurpose::DecayCoin);
      if (coin.bernoulli(p)) out.push_back(v);
    }
    return;
  }

  // Super-slow phase band: Decay over every holder of the active layers.
  std::int64_t u = 3 * block9 + (phase - 6);
  int umod3 = static_cast<int>(u % 3);
  int r = static_cast<int>((u / 3) % ss_phase_len_) + 1;
  double p = prob_[r];
  for (int v : nodes_by_mod3_[umod3]) {
    if (!holds[v]) continue;
    auto coin = stream_for(seed_, trial_, v, static_cast<std::uint64_t>(round),
                           StreamPurpose::DecayCoin);
    if (coin.bernoulli(p)) out.push_back(v);
  }
}

RobustBroadcast::RobustBroadcast(const MeshGraph& g, const Sgst& sgst,
                                 const SimConfig& cfg)
    : source_(sgst.source), core_(g, sgst, cfg), informed_(g.n, 0) {
  informed_[source_] = 1;
}

void RobustBroadcast::initial_holders(std::vector<int>& out) const {
  out.push_back(source_);
}

void RobustBroadcast::decide(std::int64_t round, std::vector<Transmission>& out) {
  tx_nodes_.clear();
  core_.decide(round, informed_, tx_nodes_);
  for (int v : tx_nodes_) out.push_back({v, 0});
}

void RobustBroadcast::observe(std::int64_t, const RadioEngine& engine) {
  newly_.clear();
  for (int v : engine.hot()) {
    if (engine.rx_kind(v) != RxKind::Message || informed_[v]) continue;
    informed_[v] = 1;
    newly_.push_back(v);
  }
}

// ------------------------------------------------------------- multi-RLNC

RlncBroadcast::RlncBroadcast(const MeshGraph& g, const Sgst& sgst, const SimConfig& cfg)
    : source_(sgst.source),
      k_(cfg.k),
      seed_(cfg.seed),
      trial_(cfg.trial),
      core_(g, sgst, cfg),
      decoders_(g.n, DecoderState(cfg.k)),
      holds_(g.n, 0),
      complete_(g.n, 0) {
  if (k_ < 1) throw std::invalid_argument("message count must be positive");
  messages_.resize(k_);
  for (int i = 0; i < k_; ++i) {
    auto bytes = stream_for(seed_, trial_, i, 0, StreamPurpose::RlncCoef);
    messages_[i].resize(kPayloadSymbols);
    for (auto& b : messages_[i]) b = bytes.next_byte();
  }
  decoders_[source_] = DecoderState::source(messages_);
  holds_[source_] = 1;
  complete_[source_] = 1;
}

void RlncBroadcast::initial_holders(std::vector<int>& out) const {
  out.push_back(source_);
}

void RlncBroadcast::decide(std::int64_t round, std::vector<Transmission>& out) {
  tx_nodes_.clear();
  round_packets_.clear();
  core_.decide(round, holds_, tx_nodes_);
  for (int v : tx_nodes_) {
    auto coeffs = stream_for(seed_, trial_, v, static_cast<std::uint64_t>(round),
                             StreamPurpose::RlncCoef);
    auto tag = static_cast<std::uint32_t>(round_packets_.size());
    round_packets_.push_back(decoders_[v].encode(coeffs));
    out.push_back({v, tag});
  }
}

void RlncBroadcast::observe(std::int64_t, const RadioEngine& engine) {
  newly_.clear();
  for (int v : engine.hot()) {
    if (complete_[v] || engine.rx_kind(v) != RxKind::Message) continue;
    const auto& pkt = round_packets_[static_cast<std::size_t>(engine.rx_tag(v))];
    decoders_[v].absorb(pkt);
    if (decoders_[v].rank() > 0) holds_[v] = 1;
    if (!complete_[v] && decoders_[v].complete()) {
      complete_[v] = 1;
      newly_.push_back(v);
    }
  }
}

}  // namespace meshbcast

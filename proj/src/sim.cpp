#include "meshbcast/sim.hpp"

#include <algorithm>

#include "meshbcast/ranking.hpp"
#include "meshbcast/rng.hpp"

namespace meshbcast {

int default_x(int n) {
  return std::max(2, ceil_log2(std::max(1, n)));
}

std::int64_t default_max_rounds(int n, int diam, int k) {
  std::int64_t lg = ceil_log2(std::max(1, n));
  std::int64_t budget = 16 * (diam + lg * lg);
  if (k > 1) {
    budget += 16 * static_cast<std::int64_t>(k) * lg;
  }
  return std::max<std::int64_t>(budget, 16);
}

RadioEngine::RadioEngine(const MeshGraph& g)
    : g_(g),
      stamp_(g.n, 0),
      tx_stamp_(g.n, 0),
      count_(g.n, 0),
      first_tx_(g.n, -1),
      kind_(g.n, RxKind::Silence),
      tag_(g.n, 0) {}

void RadioEngine::scatter(const std::vector<Transmission>& txs) {
  ++cur_;
  txs_ = txs;
  hot_.clear();
  for (const auto& tx : txs_) {
    if (tx.node < 0 || tx.node >= g_.n) {
      throw SimError("transmitter id out of range");
    }
    if (tx_stamp_[tx.node] == cur_) {
      throw SimError("node " + std::to_string(tx.node) + " transmits twice in one round");
    }
    tx_stamp_[tx.node] = cur_;
  }
  for (std::size_t i = 0; i < txs_.size(); ++i) {
    for (int v : g_.adj[txs_[i].node]) {
      if (tx_stamp_[v] == cur_) {
        continue;  // half-duplex: transmitters hear nothing
      }
      if (stamp_[v] != cur_) {
        stamp_[v] = cur_;
        count_[v] = 1;
        first_tx_[v] = static_cast<int>(i);
        hot_.push_back(v);
      } else {
        ++count_[v];
      }
    }
  }
}

void RadioEngine::resolve(const std::vector<Transmission>& txs, double p,
                          FaultMode mode, std::uint64_t seed, int trial,
                          std::int64_t round) {
  scatter(txs);
  faulted_.assign(txs_.size(), 0);
  if (p > 0.0 && mode != FaultMode::ReceiverOnly) {
    for (std::size_t i = 0; i < txs_.size(); ++i) {
      RngStream coin = stream_for(seed, trial, txs_[i].node, round,
                                  StreamPurpose::SenderFault);
      faulted_[i] = coin.bernoulli(p);
    }
  }
  for (int v : hot_) {
    if (count_[v] >= 2) {
      kind_[v] = RxKind::Noise;
      continue;
    }
    int i = first_tx_[v];
    if (faulted_[i]) {
      // The faulted transmission still occupies the channel as noise.
      kind_[v] = RxKind::Noise;
      continue;
    }
    if (p > 0.0 && mode != FaultMode::SenderOnly) {
      RngStream coin = stream_for(seed, trial, v, round, StreamPurpose::ReceiverFault);
      if (coin.bernoulli(p)) {
        kind_[v] = RxKind::Noise;
        continue;
      }
    }
    kind_[v] = RxKind::Message;
    tag_[v] = txs_[i].tag;
  }
}

void RadioEngine::resolve_faultless(const std::vector<Transmission>& txs) {
  scatter(txs);
  faulted_.assign(txs_.size(), 0);
  for (int v : hot_) {
    if (count_[v] >= 2) {
      kind_[v] = RxKind::Noise;
    } else {
      kind_[v] = RxKind::Message;
      tag_[v] = txs_[first_tx_[v]].tag;
    }
  }
}

const char* trace_event_name(TraceEvent::Type t) {
  switch (t) {
    case TraceEvent::Type::Tx:
      return "TX";
    case TraceEvent::Type::RxMsg:
      return "RX_MSG";
    case TraceEvent::Type::RxNoise:
      return "RX_NOISE";
    case TraceEvent::Type::Informed:
      return "INFORMED";
  }
  return "?";
}

Trace run_protocol(const MeshGraph& g, Protocol& proto, const SimConfig& cfg) {
  Trace trace;
  trace.max_rounds = cfg.max_rounds > 0
                         ? cfg.max_rounds
                         : default_max_rounds(g.n, diameter(g), cfg.k);
  trace.informed_round.assign(g.n, -1);

  std::vector<int> holders;
  proto.initial_holders(holders);
  int informed_count = 0;
  for (int v : holders) {
    if (trace.informed_round[v] < 0) {
      trace.informed_round[v] = 0;
      ++informed_count;
    }
  }
  if (informed_count == g.n) {
    trace.completion_round = 0;
    trace.success = true;
    return trace;
  }

  RadioEngine engine(g);
  std::vector<Transmission> txs;
  std::vector<int> expected;
  const bool check_slots = cfg.assert_deterministic_slots && cfg.p == 0.0;

  for (std::int64_t t = 1; t <= trace.max_rounds; ++t) {
    trace.rounds_executed = t;
    txs.clear();
    proto.decide(t, txs);
    for (const auto& tx : txs) {
      if (!proto.holds_payload(tx.node)) {
        throw SimError("protocol violation: node " + std::to_string(tx.node) +
                       " transmits without payload in round " + std::to_string(t));
      }
    }
    engine.resolve(txs, cfg.p, cfg.fault_mode, cfg.seed, cfg.trial, t);
    if (check_slots) {
      expected.clear();
      proto.expected_receivers(t, expected);
      for (int v : expected) {
        if (engine.rx_kind(v) != RxKind::Message) {
          ++trace.slot_noise_violations;
        }
      }
    }
    if (cfg.record_events) {
      for (const auto& tx : txs) {
        trace.events.push_back({t, tx.node, TraceEvent::Type::Tx, tx.tag});
      }
      for (int v : engine.hot()) {
        if (engine.rx_kind(v) == RxKind::Message) {
          trace.events.push_back({t, v, TraceEvent::Type::RxMsg, engine.rx_tag(v)});
        } else {
          trace.events.push_back({t, v, TraceEvent::Type::RxNoise, 0});
        }
      }
    }
    proto.observe(t, engine);
    for (int v : proto.newly_informed()) {
      if (trace.informed_round[v] < 0) {
        trace.informed_round[v] = t;
        ++informed_count;
        if (cfg.record_events) {
          trace.events.push_back({t, v, TraceEvent::Type::Informed, 0});
        }
      }
    }
    if (informed_count == g.n) {
      trace.completion_round = t;
      trace.success = true;
      break;
    }
  }
  return trace;
}

}  // namespace meshbcast

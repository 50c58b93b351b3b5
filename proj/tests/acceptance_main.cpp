// Acceptance gate for the broadcast scheduling stack. Each criterion prints
// exactly one PASS/FAIL line with its measured numbers; the process exit code
// is the number of failed criteria. All tolerances and budgets are pinned
// here as named constants so a run is reproducible bit for bit.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iterator>
#include <string>
#include <vector>

#include "meshbcast/experiment.hpp"
#include "meshbcast/gf256.hpp"
#include "meshbcast/graph.hpp"
#include "meshbcast/protocols.hpp"
#include "meshbcast/ranking.hpp"
#include "meshbcast/rlnc.hpp"
#include "meshbcast/rng.hpp"
#include "meshbcast/sim.hpp"

using namespace meshbcast;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

std::int64_t median(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  return v.empty() ? -1 : v[v.size() / 2];
}

double dlog2(double v) { return std::log2(v); }

constexpr double kDelta = 0.1;                  // target failure probability
const double kLogInvDelta = std::log2(1.0 / kDelta);

// ---------------------------------------------------------------------------
// 1. Rank bound: over 1000 random trees (n in [2, 4096]) and thresholds
//    x in {2, 3, 8, ceil(log2 n)}, the maximum rank never exceeds
//    ceil(log_x n). Hard runtime limit 30 s.
Outcome criterion1() {
  constexpr int kTrees = 1000;
  constexpr double kLimitSecs = 30.0;
  Timer timer;
  RngStream rng = stream_for(101, 0, 0, 0, StreamPurpose::Test);
  int rankings = 0;
  for (int i = 0; i < kTrees; ++i) {
    int n = 2 + static_cast<int>(rng.next_below(4095));
    std::vector<int> parent(n, -1);
    for (int v = 1; v < n; ++v) parent[v] = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(v)));
    const int xs[4] = {2, 3, 8, std::max(2, ceil_log2(n))};
    for (int x : xs) {
      RankedTree rt = rank_tree(parent, x);
      ++rankings;
      if (!check_rank_bound(rt, n))
        return {false, fmt("rank bound violated on tree %d (n=%d, x=%d)", i, n, x)};
    }
  }
  double s = timer.secs();
  return {s < kLimitSecs,
          fmt("%d trees, %d rankings, 0 bound violations (%.1fs, limit %.0fs)", kTrees,
              rankings, s, kLimitSecs)};
}

// ---------------------------------------------------------------------------
// 2. Tree construction validity: build_sgst output passes the structural
//    validator on 100/100 random connected graphs, n <= 512, mixed
//    generators. Hard runtime limit 5 min.
Outcome criterion2() {
  constexpr int kGraphs = 100;
  constexpr double kLimitSecs = 300.0;
  Timer timer;
  RngStream rng = stream_for(202, 0, 0, 0, StreamPurpose::Test);
  int ok = 0;
  for (int i = 0; i < kGraphs; ++i) {
    std::string spec;
    switch (i % 6) {
      case 0: spec = fmt("path(%u)", 2 + rng.next_below(511)); break;
      case 1: spec = fmt("star(%u)", 3 + rng.next_below(510)); break;
      case 2: spec = fmt("tree(%u)", 2 + rng.next_below(511)); break;
      case 3: {
        unsigned r = 2 + rng.next_below(21);
        unsigned c = 2 + rng.next_below(static_cast<std::uint32_t>(512 / r - 1));
        spec = fmt("grid(%u,%u)", r, c);
        break;
      }
      case 4: {
        unsigned n = 8 + rng.next_below(505);
        double q = std::min(1.0, 2.5 * std::log(static_cast<double>(n)) / n);
        spec = fmt("rand(%u,%.6f)", n, q);
        break;
      }
      default: {
        unsigned w = 2 + rng.next_below(7);
        unsigned d = 2 + rng.next_below(static_cast<std::uint32_t>(512 / w - 1));
        spec = fmt("expander(%u,%u)", d, w);
        break;
      }
    }
    MeshGraph g = generate_graph(spec, 1000 + i);
    int source = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(g.n)));
    const int x_cycle[4] = {default_x(g.n), 2, 3, 8};
    int x = x_cycle[i % 4];
    Sgst sgst = build_sgst(g, source, x);
    SgstReport rep = verify_sgst(g, sgst);
    if (!rep.ok())
      return {false, fmt("validator rejected tree for %s (x=%d, source=%d)", spec.c_str(), x,
                         source)};
    ++ok;
  }
  double s = timer.secs();
  return {s < kLimitSecs, fmt("%d/%d random connected graphs validated (%.1fs, limit %.0fs)",
                              ok, kGraphs, s, kLimitSecs)};
}

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> specs = {
      "path(2)",      "path(9)",       "path(33)",      "star(16)",       "tree(31)",
      "tree(97)",     "grid(4,4)",     "grid(7,5)",     "grid(9,9)",      "rand(24,0.2)",
      "rand(60,0.12)", "expander(8,4)", "expander(16,6)", "expander(12,3)"};
  return specs;
}

// ---------------------------------------------------------------------------
// 3. Collision-freeness of the deterministic slot tables: with p = 0 and the
//    engine's slot assertion enabled, no intended receiver ever hears noise.
//    Exact count across the whole graph corpus, three thresholds, three
//    trials each.
Outcome criterion3() {
  Timer timer;
  int runs = 0;
  std::uint64_t violations = 0;
  for (const std::string& spec : corpus()) {
    MeshGraph g = generate_graph(spec, 7);
    for (int x : {2, 3, 0}) {
      ExperimentConfig ec;
      ec.protocol = "faultless";
      ec.trials = 3;
      ec.sim.p = 0.0;
      ec.sim.x = x;
      ec.sim.seed = 303;
      ec.sim.assert_deterministic_slots = true;
      ExperimentResult res = run_experiment(g, ec);
      for (const auto& row : res.rows)
        if (!row.success)
          return {false, fmt("faultless run did not finish on %s (x=%d)", spec.c_str(), x)};
      for (const auto& tr : res.traces) {
        violations += tr.slot_noise_violations;
        ++runs;
      }
    }
  }
  if (violations != 0)
    return {false, fmt("%llu intended receivers heard noise across %d runs",
                       static_cast<unsigned long long>(violations), runs)};
  return {true, fmt("0 slot-noise receptions across %d faultless runs on %zu graphs (%.1fs)",
                    runs, corpus().size(), timer.secs())};
}

// ---------------------------------------------------------------------------
// 4. Deterministic schedule latency scaling: on layered expanders with
//    D in {32, 64, 128, 256} (n = 256..2048, x = ceil(log2 n)), the fitted
//    constant (median - D) / ceil(log2 n)^2 stays within a 2x band across
//    size doublings; >= 50 trials per cell, failure rate <= 0.1. Limit 10 min.
Outcome criterion4() {
  constexpr int kTrials = 50;
  constexpr double kLimitSecs = 600.0;
  Timer timer;
  const char* specs[4] = {"expander(32,8)", "expander(64,8)", "expander(128,8)",
                          "expander(256,8)"};
  std::vector<double> cs;
  std::string fits;
  for (const char* spec : specs) {
    MeshGraph g = generate_graph(spec, 7);
    ExperimentConfig ec;
    ec.protocol = "faultless";
    ec.trials = kTrials;
    ec.sim.p = 0.0;
    ec.sim.x = ceil_log2(g.n);
    ec.sim.seed = 404;
    ec.sim.max_rounds = 20000;
    ExperimentResult res = run_experiment(g, ec);
    int failures = 0;
    std::vector<std::int64_t> done;
    for (const auto& row : res.rows)
      row.success ? (void)done.push_back(row.completion_round) : (void)++failures;
    if (failures > kTrials / 10)
      return {false, fmt("%s: %d/%d runs missed the budget", spec, failures, kTrials)};
    double lg = static_cast<double>(ceil_log2(g.n));
    double c = (static_cast<double>(median(done)) - res.diameter) / (lg * lg);
    cs.push_back(c);
    fits += fmt("%sD=%d:C=%.2f", fits.empty() ? "" : " ", res.diameter, c);
  }
  double lo = *std::min_element(cs.begin(), cs.end());
  double hi = *std::max_element(cs.begin(), cs.end());
  double s = timer.secs();
  bool pass = hi / lo < 2.0 && s < kLimitSecs;
  return {pass, fmt("%s, spread %.2fx (< 2x required; %.1fs, limit %.0fs)", fits.c_str(),
                    hi / lo, s, kLimitSecs)};
}

// ---------------------------------------------------------------------------
// 5. Fault-model reduction: with p = 0 the randomized resolver and the
//    classic collision-only resolver produce identical outcomes for identical
//    transmitter sets. 1000 randomized rounds, exact equality.
Outcome criterion5() {
  constexpr int kRounds = 1000;
  Timer timer;
  const char* specs[5] = {"grid(6,6)", "rand(40,0.15)", "expander(10,4)", "tree(63)",
                          "path(24)"};
  int round_no = 0;
  for (const char* spec : specs) {
    MeshGraph g = generate_graph(spec, 55);
    RadioEngine noisy(g), classic(g);
    RngStream rng = stream_for(505, 0, 0, 0, StreamPurpose::Test);
    for (int r = 0; r < kRounds / 5; ++r, ++round_no) {
      std::vector<Transmission> txs;
      for (int v = 0; v < g.n; ++v)
        if (rng.bernoulli(0.3)) txs.push_back({v, rng.next_below(256)});
      noisy.resolve(txs, 0.0, FaultMode::Both, 606, r, round_no + 1);
      classic.resolve_faultless(txs);
      if (noisy.hot() != classic.hot())
        return {false, fmt("listener sets differ on %s round %d", spec, r)};
      for (int v = 0; v < g.n; ++v) {
        if (noisy.rx_kind(v) != classic.rx_kind(v))
          return {false, fmt("reception kind differs at node %d on %s round %d", v, spec, r)};
        if (noisy.rx_kind(v) == RxKind::Message && noisy.rx_tag(v) != classic.rx_tag(v))
          return {false, fmt("payload tag differs at node %d on %s round %d", v, spec, r)};
      }
    }
  }
  return {true, fmt("%d randomized rounds identical across both resolvers (%.1fs)", round_no,
                    timer.secs())};
}

// ---------------------------------------------------------------------------
// 6. Randomized baseline latency: on path graphs, completion fits
//    C' * (D log2 n + log2^2 n + log2 n * log2(1/delta)) with C' stable
//    within 2x across n in {64, 256, 1024}; p = 0, >= 100 trials,
//    failure rate <= 0.1.
Outcome criterion6() {
  constexpr int kTrials = 100;
  constexpr double kBudgetMult = 4.0;  // round budget = 4x the fitted bound
  Timer timer;
  std::vector<double> cs;
  std::string fits;
  for (int n : {64, 256, 1024}) {
    MeshGraph g = generate_graph(fmt("path(%d)", n), 1);
    double lg = dlog2(n);
    double bound = (n - 1) * lg + lg * lg + lg * kLogInvDelta;
    ExperimentConfig ec;
    ec.protocol = "decay";
    ec.trials = kTrials;
    ec.sim.p = 0.0;
    ec.sim.seed = 707;
    ec.sim.max_rounds = static_cast<std::int64_t>(std::ceil(kBudgetMult * bound));
    ExperimentResult res = run_experiment(g, ec);
    int failures = 0;
    std::vector<std::int64_t> done;
    for (const auto& row : res.rows)
      row.success ? (void)done.push_back(row.completion_round) : (void)++failures;
    if (failures > kTrials / 10)
      return {false, fmt("path(%d): %d/%d runs missed the %.0f-round budget", n, failures,
                         kTrials, kBudgetMult * bound)};
    double c = static_cast<double>(median(done)) / bound;
    cs.push_back(c);
    fits += fmt("%sn=%d:C'=%.2f", fits.empty() ? "" : " ", n, c);
  }
  double lo = *std::min_element(cs.begin(), cs.end());
  double hi = *std::max_element(cs.begin(), cs.end());
  return {hi / lo < 2.0,
          fmt("%s, spread %.2fx (< 2x required; %.1fs)", fits.c_str(), hi / lo, timer.secs())};
}

// ---------------------------------------------------------------------------
// 7. Noise-tolerant broadcast latency: on expander(65,7) (n = 455, D = 65),
//    for p in {0.05, 0.2} at least 90% of 200 trials finish within
//    14 * (D + log2 n * (log2 n + log2(1/delta))) rounds. The multiplier 14
//    gives the budget a ~40% margin over the observed 90th percentile.
//    Hard runtime limit 15 min.
Outcome criterion7() {
  constexpr int kTrials = 200;
  constexpr double kBudgetMult = 14.0;
  constexpr double kLimitSecs = 900.0;
  Timer timer;
  MeshGraph g = generate_graph("expander(65,7)", 7);
  int diam = diameter(g);
  if (g.n > 512 || diam < 64)
    return {false, fmt("test graph out of range (n=%d, D=%d)", g.n, diam)};
  double lg = dlog2(g.n);
  auto budget =
      static_cast<std::int64_t>(std::ceil(kBudgetMult * (diam + lg * (lg + kLogInvDelta))));
  std::string parts;
  for (double p : {0.05, 0.2}) {
    ExperimentConfig ec;
    ec.protocol = "robust";
    ec.trials = kTrials;
    ec.sim.p = p;
    ec.sim.seed = 808;
    ec.sim.max_rounds = budget;
    ExperimentResult res = run_experiment(g, ec);
    int failures = 0;
    std::vector<std::int64_t> done;
    for (const auto& row : res.rows)
      row.success ? (void)done.push_back(row.completion_round) : (void)++failures;
    parts += fmt("%sp=%.2f: med=%lld fail=%d/%d", parts.empty() ? "" : ", ", p,
                 static_cast<long long>(median(done)), failures, kTrials);
    if (failures > kTrials / 10) return {false, parts + fmt(" exceeds 10%% failures")};
  }
  double s = timer.secs();
  return {s < kLimitSecs, fmt("%s within %lld-round budget (%.1fs, limit %.0fs)", parts.c_str(),
                              static_cast<long long>(budget), s, kLimitSecs)};
}

// ---------------------------------------------------------------------------
// 8. Latency comparison at scale: on expander(256,8) at p = 0.2, the
//    schedule-driven protocol's median completion must beat the randomized
//    baseline's median over 200 paired-seed trials.
Outcome criterion8() {
  constexpr int kTrials = 200;
  constexpr std::int64_t kSharedBudget = 40000;
  Timer timer;
  MeshGraph g = generate_graph("expander(256,8)", 7);
  auto run_med = [&](const std::string& protocol) {
    ExperimentConfig ec;
    ec.protocol = protocol;
    ec.trials = kTrials;
    ec.sim.p = 0.2;
    ec.sim.seed = 909;  // same seed + trial id => paired fault streams
    ec.sim.max_rounds = kSharedBudget;
    ExperimentResult res = run_experiment(g, ec);
    std::vector<std::int64_t> rounds;
    for (const auto& row : res.rows)
      rounds.push_back(row.success ? row.completion_round : kSharedBudget);
    return median(rounds);
  };
  std::int64_t robust_med = run_med("robust");
  std::int64_t decay_med = run_med("decay");
  bool pass = robust_med < decay_med;
  return {pass, fmt("robust median %lld vs decay median %lld over %d paired trials (%.1fs)",
                    static_cast<long long>(robust_med), static_cast<long long>(decay_med),
                    kTrials, timer.secs())};
}

// ---------------------------------------------------------------------------
// 9. Randomized phase progress: with p = 0, an uninformed node that starts a
//    phase next to an informed node becomes informed by the end of that phase
//    at least 25% of the time; >= 10^4 sampled (node, phase) pairs.
Outcome criterion9() {
  constexpr std::int64_t kMinSamples = 10000;
  constexpr double kMinFreq = 0.25;
  Timer timer;
  const char* specs[8] = {"grid(8,8)",   "grid(16,16)",    "rand(48,0.15)", "rand(96,0.08)",
                          "tree(63)",    "expander(12,5)", "path(48)",      "star(24)"};
  std::int64_t samples = 0, successes = 0;
  for (int trial = 0; trial < 40 && samples < kMinSamples; ++trial) {
    for (const char* spec : specs) {
      MeshGraph g = generate_graph(spec, 9);
      SimConfig cfg;
      cfg.p = 0.0;
      cfg.seed = 910;
      cfg.trial = trial;
      DecayBroadcast proto(g, 0, cfg);
      int L = proto.phase_len();
      Trace tr = run_protocol(g, proto, cfg);
      auto informed_by = [&](int v, std::int64_t r) {
        return tr.informed_round[v] >= 0 && tr.informed_round[v] <= r;
      };
      for (std::int64_t t0 = 1; t0 + L - 1 <= tr.rounds_executed; t0 += L) {
        for (int v = 0; v < g.n; ++v) {
          if (informed_by(v, t0 - 1)) continue;
          bool frontier = false;
          for (int w : g.adj[v])
            if (informed_by(w, t0 - 1)) {
              frontier = true;
              break;
            }
          if (!frontier) continue;
          ++samples;
          if (informed_by(v, t0 + L - 1)) ++successes;
        }
      }
    }
  }
  double freq = samples ? static_cast<double>(successes) / static_cast<double>(samples) : 0.0;
  bool pass = samples >= kMinSamples && freq >= kMinFreq;
  return {pass, fmt("%lld/%lld frontier phases advanced (%.3f >= %.2f required; %.1fs)",
                    static_cast<long long>(successes), static_cast<long long>(samples), freq,
                    kMinFreq, timer.secs())};
}

// ---------------------------------------------------------------------------
// 10. Multi-message scaling: on expander(32,8) (n = 256) at p = 0.1, every
//     node's decoder reaches full rank in every successful trial for
//     k in {1, 4, 16}; the per-message increment fits b * dk * log2 n with b
//     stable within 2x; and the k = 1 event trace matches the single-message
//     protocol round for round. Hard runtime limit 15 min.
Outcome criterion10() {
  constexpr int kTrials = 60;
  constexpr double kLimitSecs = 900.0;
  Timer timer;
  MeshGraph g = generate_graph("expander(32,8)", 7);
  Sgst sgst = build_sgst(g, 0, default_x(g.n));
  double lg = dlog2(g.n);
  std::vector<std::int64_t> medians;
  std::string parts;
  for (int k : {1, 4, 16}) {
    std::vector<std::int64_t> done;
    for (int trial = 0; trial < kTrials; ++trial) {
      SimConfig cfg;
      cfg.p = 0.1;
      cfg.k = k;
      cfg.seed = 1010;
      cfg.trial = trial;
      cfg.max_rounds = 40000;
      RlncBroadcast proto(g, sgst, cfg);
      Trace tr = run_protocol(g, proto, cfg);
      if (!tr.success) continue;
      for (int v = 0; v < g.n; ++v)
        if (proto.decoder(v).rank() != k)
          return {false, fmt("k=%d trial %d finished with node %d at rank %d", k, trial, v,
                             proto.decoder(v).rank())};
      done.push_back(tr.completion_round);
    }
    if (done.size() < static_cast<size_t>(kTrials) * 9 / 10)
      return {false, fmt("k=%d: only %zu/%d runs finished", k, done.size(), kTrials)};
    medians.push_back(median(done));
    parts += fmt("%sk=%d:med=%lld", parts.empty() ? "" : " ", k,
                 static_cast<long long>(medians.back()));
  }
  double b1 = static_cast<double>(medians[1] - medians[0]) / (3.0 * lg);
  double b2 = static_cast<double>(medians[2] - medians[1]) / (12.0 * lg);
  double spread = std::max(b1, b2) / std::min(b1, b2);
  if (!(spread <= 2.0) || std::min(b1, b2) <= 0.0)
    return {false, fmt("%s, increment fit b1=%.2f b2=%.2f spread %.2fx", parts.c_str(), b1, b2,
                       spread)};

  // k = 1 must replay the single-message protocol event for event.
  for (int trial = 0; trial < 5; ++trial) {
    SimConfig cfg;
    cfg.p = 0.1;
    cfg.k = 1;
    cfg.seed = 1011;
    cfg.trial = trial;
    cfg.max_rounds = 40000;
    cfg.record_events = true;
    RlncBroadcast coded(g, sgst, cfg);
    Trace a = run_protocol(g, coded, cfg);
    RobustBroadcast plain(g, sgst, cfg);
    Trace b = run_protocol(g, plain, cfg);
    if (a.completion_round != b.completion_round || a.events.size() != b.events.size())
      return {false, fmt("k=1 trace shape differs from single-message run on trial %d", trial)};
    for (size_t i = 0; i < a.events.size(); ++i) {
      const TraceEvent &ea = a.events[i], &eb = b.events[i];
      if (ea.round != eb.round || ea.node != eb.node || ea.type != eb.type)
        return {false, fmt("k=1 trace diverges at event %zu on trial %d", i, trial)};
    }
  }
  double s = timer.secs();
  return {s < kLimitSecs,
          fmt("%s, b1=%.2f b2=%.2f spread %.2fx, k=1 trace identical (%.1fs, limit %.0fs)",
              parts.c_str(), b1, b2, spread, s, kLimitSecs)};
}

// Bitwise reference multiplication in GF(2^8) mod x^8+x^4+x^3+x+1.
std::uint8_t slow_mul(std::uint8_t a, std::uint8_t b) {
  std::uint16_t acc = 0;
  for (int i = 0; i < 8; ++i)
    if (b & (1u << i)) acc = static_cast<std::uint16_t>(acc ^ (static_cast<std::uint16_t>(a) << i));
  for (int bit = 15; bit >= 8; --bit)
    if (acc & (1u << bit)) acc = static_cast<std::uint16_t>(acc ^ (0x11bu << (bit - 8)));
  return static_cast<std::uint8_t>(acc);
}

// ---------------------------------------------------------------------------
// 11. Coding correctness: 1000 random encode/decode roundtrips (k <= 16)
//     recover the original messages exactly, and the field multiplication
//     table matches the bitwise reference on all 2^16 input pairs.
Outcome criterion11() {
  Timer timer;
  for (int a = 0; a < 256; ++a)
    for (int b = 0; b < 256; ++b)
      if (gf256::mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) !=
          slow_mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)))
        return {false, fmt("field product mismatch at %02x * %02x", a, b)};

  constexpr int kInstances = 1000;
  RngStream rng = stream_for(1111, 0, 0, 0, StreamPurpose::Test);
  for (int i = 0; i < kInstances; ++i) {
    int k = 1 + static_cast<int>(rng.next_below(16));
    std::vector<std::vector<std::uint8_t>> msgs(k, std::vector<std::uint8_t>(kPayloadSymbols));
    for (auto& m : msgs)
      for (auto& byte : m) byte = rng.next_byte();
    DecoderState source = DecoderState::source(msgs);
    DecoderState sink(k);
    int packets = 0;
    while (!sink.complete()) {
      if (++packets > 40 * k)
        return {false, fmt("instance %d (k=%d) needed more than %d packets", i, k, 40 * k)};
      RngStream coef = stream_for(1111, i, 0, packets, StreamPurpose::RlncCoef);
      sink.absorb(source.encode(coef));
    }
    if (sink.decode() != msgs)
      return {false, fmt("roundtrip %d (k=%d) decoded the wrong payload", i, k)};
  }
  return {true, fmt("65536 field products match the bitwise reference; %d roundtrips exact "
                    "(%.1fs)",
                    kInstances, timer.secs())};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"C1  rank bound", criterion1},
      {"C2  tree validity", criterion2},
      {"C3  slot collision-freeness", criterion3},
      {"C4  deterministic latency fit", criterion4},
      {"C5  fault-model reduction", criterion5},
      {"C6  randomized baseline fit", criterion6},
      {"C7  noisy completion budget", criterion7},
      {"C8  schedule vs baseline medians", criterion8},
      {"C9  phase progress rate", criterion9},
      {"C10 multi-message scaling", criterion10},
      {"C11 coding correctness", criterion11},
  };
  int failures = 0;
  for (const auto& e : entries) {
    Outcome o;
    try {
      o = e.fn();
    } catch (const std::exception& ex) {
      o = {false, fmt("unexpected exception: %s", ex.what())};
    }
    std::printf("%s: %s -- %s\n", e.name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(entries)) - failures,
              std::size(entries));
  return failures;
}

#include "meshbcast/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

namespace meshbcast {

namespace {

// Doubles print with up to 17 significant digits so that exact re-runs and
// re-parses stay byte-identical without trailing-zero noise.
std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  std::string s = os.str();
  // Shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    std::ostringstream probe;
    probe.precision(prec);
    probe << v;
    if (std::stod(probe.str()) == v) return probe.str();
  }
  return s;
}

}  // namespace

bool protocol_needs_tree(const std::string& protocol) {
  return protocol == "faultless" || protocol == "robust" || protocol == "multi";
}

std::unique_ptr<Protocol> make_protocol(const std::string& protocol, const MeshGraph& g,
                                        int source, const Sgst* sgst,
                                        const SimConfig& cfg) {
  if (protocol == "decay") return std::make_unique<DecayBroadcast>(g, source, cfg);
  if (protocol_needs_tree(protocol)) {
    if (sgst == nullptr) throw std::invalid_argument("protocol needs a spanning tree");
    if (protocol == "faultless") return std::make_unique<FaultlessSchedule>(g, *sgst, cfg);
    if (protocol == "robust") return std::make_unique<RobustBroadcast>(g, *sgst, cfg);
    return std::make_unique<RlncBroadcast>(g, *sgst, cfg);
  }
  throw std::invalid_argument("unknown protocol '" + protocol + "'");
}

ExperimentResult run_experiment(const MeshGraph& g, const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be positive");
  if (cfg.source < 0 || cfg.source >= g.n) throw std::invalid_argument("source out of range");
  if (cfg.sim.p < 0.0 || cfg.sim.p >= 1.0)
    throw std::invalid_argument("fault probability must lie in [0, 1)");
  if (cfg.sim.k < 1) throw std::invalid_argument("message count must be positive");
  if (cfg.protocol != "multi" && cfg.sim.k != 1)
    throw std::invalid_argument("only the multi protocol takes k > 1");

  ExperimentResult res;
  res.diameter = diameter(g);
  res.x_used = cfg.sim.x > 0 ? cfg.sim.x : default_x(g.n);
  if (cfg.sim.x != 0 && cfg.sim.x < 2) throw std::invalid_argument("x must be at least 2");

  SimConfig sim = cfg.sim;
  sim.x = res.x_used;
  if (sim.max_rounds == 0)
    sim.max_rounds = default_max_rounds(g.n, res.diameter, sim.k);

  if (protocol_needs_tree(cfg.protocol)) res.sgst = build_sgst(g, cfg.source, res.x_used);

  res.rows.reserve(cfg.trials);
  res.traces.reserve(cfg.trials);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    sim.trial = trial;
    auto proto = make_protocol(cfg.protocol, g, cfg.source,
                               res.sgst ? &*res.sgst : nullptr, sim);
    auto t0 = std::chrono::steady_clock::now();
    Trace tr = run_protocol(g, *proto, sim);
    auto t1 = std::chrono::steady_clock::now();

    SummaryRow row;
    row.trial = trial;
    row.protocol = cfg.protocol;
    row.n = g.n;
    row.diameter = res.diameter;
    row.p = sim.p;
    row.x = res.x_used;
    row.k = sim.k;
    row.completion_round = tr.completion_round;
    row.success = tr.success;
    if (cfg.measure_time)
      row.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    res.rows.push_back(std::move(row));
    res.traces.push_back(std::move(tr));
  }
  return res;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  os << "trial,protocol,n,D,p,x,k,completion_round,success,wall_time_ms\n";
  for (const auto& r : rows) {
    os << r.trial << ',' << r.protocol << ',' << r.n << ',' << r.diameter << ','
       << fmt_double(r.p) << ',' << r.x << ',' << r.k << ',' << r.completion_round
       << ',' << (r.success ? 1 : 0) << ',' << fmt_double(r.wall_time_ms) << '\n';
  }
  return os.str();
}

std::string events_csv(const std::vector<Trace>& traces) {
  std::ostringstream os;
  os << "trial,round,node,event,detail\n";
  for (std::size_t trial = 0; trial < traces.size(); ++trial) {
    for (const auto& e : traces[trial].events) {
      os << trial << ',' << e.round << ',' << e.node << ',' << trace_event_name(e.type)
         << ',';
      if (e.type == TraceEvent::Type::Tx || e.type == TraceEvent::Type::RxMsg)
        os << e.tag;
      os << '\n';
    }
  }
  return os.str();
}

std::vector<SweepCell> run_sweep(const MeshGraph& g, const SweepConfig& cfg) {
  if (cfg.protocols.empty() || cfg.ps.empty() || cfg.xs.empty() || cfg.ks.empty())
    throw std::invalid_argument("sweep grid must not be empty");

  std::map<int, Sgst> trees;  // keyed by resolved x
  std::vector<SweepCell> cells;
  for (const auto& protocol : cfg.protocols) {
    for (double p : cfg.ps) {
      for (int x : cfg.xs) {
        for (int k : cfg.ks) {
          ExperimentConfig ec;
          ec.protocol = protocol;
          ec.source = cfg.source;
          ec.trials = cfg.trials;
          ec.sim = cfg.sim;
          ec.sim.p = p;
          ec.sim.x = x;
          ec.sim.k = protocol == "multi" ? k : 1;
          if (protocol != "multi" && k != cfg.ks.front()) continue;  // dedup k axis

          int resolved_x = x > 0 ? x : default_x(g.n);
          ExperimentResult res;
          if (protocol_needs_tree(protocol)) {
            auto it = trees.find(resolved_x);
            if (it == trees.end())
              it = trees.emplace(resolved_x, build_sgst(g, cfg.source, resolved_x)).first;
            // run_experiment rebuilds the tree; share it instead.
            res.diameter = diameter(g);
            res.x_used = resolved_x;
            SimConfig sim = ec.sim;
            sim.x = resolved_x;
            if (sim.max_rounds == 0)
              sim.max_rounds = default_max_rounds(g.n, res.diameter, sim.k);
            for (int trial = 0; trial < ec.trials; ++trial) {
              sim.trial = trial;
              auto proto = make_protocol(protocol, g, cfg.source, &it->second, sim);
              Trace tr = run_protocol(g, *proto, sim);
              SummaryRow row;
              row.trial = trial;
              row.completion_round = tr.completion_round;
              row.success = tr.success;
              res.rows.push_back(std::move(row));
            }
          } else {
            res = run_experiment(g, ec);
          }

          SweepCell cell;
          cell.protocol = protocol;
          cell.p = p;
          cell.x = resolved_x;
          cell.k = ec.sim.k;
          cell.n = g.n;
          cell.diameter = res.diameter;
          cell.trials = ec.trials;
          std::vector<std::int64_t> done;
          for (const auto& row : res.rows)
            if (row.success) done.push_back(row.completion_round);
          cell.successes = static_cast<int>(done.size());
          cell.success_rate = static_cast<double>(cell.successes) / ec.trials;
          if (!done.empty()) {
            std::sort(done.begin(), done.end());
            double sum = 0;
            for (auto v : done) sum += static_cast<double>(v);
            cell.mean_completion = sum / static_cast<double>(done.size());
            auto at = [&](double q) {
              return done[static_cast<std::size_t>(q * static_cast<double>(done.size() - 1))];
            };
            cell.median_completion = at(0.5);
            cell.q25_completion = at(0.25);
            cell.q75_completion = at(0.75);
            cell.max_completion = done.back();
          }
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::ostringstream os;
  os << "protocol,p,x,k,n,D,trials,successes,success_rate,mean_completion,"
        "median_completion,q25_completion,q75_completion,max_completion\n";
  for (const auto& c : cells) {
    os << c.protocol << ',' << fmt_double(c.p) << ',' << c.x << ',' << c.k << ',' << c.n
       << ',' << c.diameter << ',' << c.trials << ',' << c.successes << ','
       << fmt_double(c.success_rate) << ',' << fmt_double(c.mean_completion) << ','
       << c.median_completion << ',' << c.q25_completion << ',' << c.q75_completion
       << ',' << c.max_completion << '\n';
  }
  return os.str();
}

}  // namespace meshbcast

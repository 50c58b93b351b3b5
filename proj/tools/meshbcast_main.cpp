#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "meshbcast/experiment.hpp"
#include "meshbcast/schedule_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;        // bad flags or malformed input data
constexpr int kExitConstruction = 3;  // tree or topology construction failed
constexpr int kExitIo = 4;            // file system trouble

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed while reading '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed while writing '" + path + "'");
}

meshbcast::MeshGraph load_graph(const std::string& graph_path, const std::string& gen_spec,
                                std::uint64_t seed) {
  if (!graph_path.empty()) return meshbcast::parse_graph(read_file(graph_path));
  return meshbcast::generate_graph(gen_spec, seed);
}

meshbcast::FaultMode parse_fault_mode(const std::string& s) {
  if (s == "sender_only") return meshbcast::FaultMode::SenderOnly;
  if (s == "receiver_only") return meshbcast::FaultMode::ReceiverOnly;
  return meshbcast::FaultMode::Both;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

int map_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  if (dynamic_cast<const IoError*>(&e) != nullptr) return kExitIo;
  if (auto* ge = dynamic_cast<const meshbcast::GraphError*>(&e)) {
    return ge->kind() == meshbcast::GraphErrorKind::InfeasibleSpec ? kExitConstruction
                                                                   : kExitConfig;
  }
  if (dynamic_cast<const meshbcast::SgstError*>(&e) != nullptr) return kExitConstruction;
  if (dynamic_cast<const meshbcast::SimError*>(&e) != nullptr) return kExitConstruction;
  if (dynamic_cast<const meshbcast::ScheduleError*>(&e) != nullptr) return kExitConfig;
  if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) return kExitConfig;
  return kExitConstruction;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency-optimized broadcast scheduling over known wireless mesh topologies"};
  app.require_subcommand(0, 1);

  std::string graph_path, gen_spec;
  std::string protocol = "decay";
  std::string out_path, trace_mode = "summary", export_path, fault_mode = "both";
  double p = 0.0, delta = 0.1;
  int x = 0, k = 1, trials = 1, source = 0, c_mult = 6;
  std::uint64_t seed = 1;
  std::int64_t max_rounds = 0;
  bool timing = false;

  auto* opt_graph = app.add_option("--graph", graph_path, "Topology file (\"n m\" header plus edge lines)");
  auto* opt_gen = app.add_option("--gen", gen_spec,
                                 "Generator spec: path(n), star(n), tree(n), grid(r,c), "
                                 "rand(n,q), expander(d,w)");
  opt_graph->excludes(opt_gen);
  opt_gen->excludes(opt_graph);
  app.add_option("--protocol", protocol, "decay, faultless, robust, or multi")
      ->check(CLI::IsMember({"decay", "faultless", "robust", "multi"}));
  app.add_option("--p", p, "Per-round sender/receiver fault probability");
  app.add_option("--delta", delta, "Target failure probability");
  app.add_option("--x", x, "Ranking threshold; 0 picks max(2, ceil(log2 n))");
  app.add_option("--k", k, "Message count for the multi protocol");
  app.add_option("--trials", trials, "Independent trials");
  app.add_option("--seed", seed, "Base seed; trial t derives its own streams");
  app.add_option("--max-rounds", max_rounds, "Round budget; 0 picks the default");
  app.add_option("--out", out_path, "Output CSV path (stdout when omitted)");
  app.add_option("--trace", trace_mode, "summary or events")
      ->check(CLI::IsMember({"summary", "events"}));
  app.add_option("--export-schedule", export_path, "Write the schedule JSON here");
  app.add_option("--source", source, "Broadcast source node");
  app.add_option("--fault-mode", fault_mode, "both, sender_only, or receiver_only")
      ->check(CLI::IsMember({"both", "sender_only", "receiver_only"}));
  app.add_option("--c-mult", c_mult, "Superround length multiplier");
  app.add_flag("--timing", timing, "Record real wall-clock times in the summary");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid and aggregate per cell");
  std::string sw_graph, sw_gen, sw_out, sw_fault_mode = "both";
  std::vector<std::string> sw_protocols;
  std::vector<double> sw_ps;
  std::vector<int> sw_xs{0}, sw_ks{1};
  int sw_trials = 1, sw_source = 0, sw_c_mult = 6;
  double sw_delta = 0.1;
  std::uint64_t sw_seed = 1;
  std::int64_t sw_max_rounds = 0;
  auto* sw_opt_graph = sweep->add_option("--graph", sw_graph, "Topology file");
  auto* sw_opt_gen = sweep->add_option("--gen", sw_gen, "Generator spec");
  sw_opt_graph->excludes(sw_opt_gen);
  sw_opt_gen->excludes(sw_opt_graph);
  sweep->add_option("--protocol", sw_protocols, "Protocols to sweep")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"decay", "faultless", "robust", "multi"}));
  sweep->add_option("--p", sw_ps, "Fault probabilities to sweep")->required()->delimiter(',');
  sweep->add_option("--x", sw_xs, "Ranking thresholds to sweep (0 = auto)")->delimiter(',');
  sweep->add_option("--k", sw_ks, "Message counts to sweep")->delimiter(',');
  sweep->add_option("--trials", sw_trials, "Trials per cell");
  sweep->add_option("--seed", sw_seed, "Base seed");
  sweep->add_option("--delta", sw_delta, "Target failure probability");
  sweep->add_option("--max-rounds", sw_max_rounds, "Round budget; 0 picks the default");
  sweep->add_option("--source", sw_source, "Broadcast source node");
  sweep->add_option("--fault-mode", sw_fault_mode, "both, sender_only, or receiver_only")
      ->check(CLI::IsMember({"both", "sender_only", "receiver_only"}));
  sweep->add_option("--c-mult", sw_c_mult, "Superround length multiplier");
  sweep->add_option("--out", sw_out, "Output CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sweep->parsed()) {
      if (sw_graph.empty() && sw_gen.empty())
        throw std::invalid_argument("one of --graph or --gen is required");
      meshbcast::MeshGraph g = load_graph(sw_graph, sw_gen, sw_seed);
      meshbcast::SweepConfig sc;
      sc.protocols = sw_protocols;
      sc.ps = sw_ps;
      sc.xs = sw_xs;
      sc.ks = sw_ks;
      sc.trials = sw_trials;
      sc.source = sw_source;
      sc.sim.delta = sw_delta;
      sc.sim.seed = sw_seed;
      sc.sim.max_rounds = sw_max_rounds;
      sc.sim.c_mult = sw_c_mult;
      sc.sim.fault_mode = parse_fault_mode(sw_fault_mode);
      auto cells = meshbcast::run_sweep(g, sc);
      emit(sw_out, meshbcast::sweep_csv(cells));
      return kExitOk;
    }

    if (graph_path.empty() && gen_spec.empty())
      throw std::invalid_argument("one of --graph or --gen is required");
    meshbcast::MeshGraph g = load_graph(graph_path, gen_spec, seed);

    if (!export_path.empty() && !meshbcast::protocol_needs_tree(protocol))
      throw std::invalid_argument("--export-schedule needs a tree protocol "
                                  "(faultless, robust, or multi)");

    meshbcast::ExperimentConfig ec;
    ec.protocol = protocol;
    ec.source = source;
    ec.trials = trials;
    ec.measure_time = timing;
    ec.sim.p = p;
    ec.sim.delta = delta;
    ec.sim.x = x;
    ec.sim.k = k;
    ec.sim.c_mult = c_mult;
    ec.sim.seed = seed;
    ec.sim.max_rounds = max_rounds;
    ec.sim.fault_mode = parse_fault_mode(fault_mode);
    ec.sim.record_events = trace_mode == "events";

    auto res = meshbcast::run_experiment(g, ec);

    if (!export_path.empty()) {
      auto doc = meshbcast::make_schedule_document(g, *res.sgst, protocol, ec.sim);
      write_file(export_path, meshbcast::render_schedule(doc));
    }

    emit(out_path, trace_mode == "events" ? meshbcast::events_csv(res.traces)
                                          : meshbcast::summary_csv(res.rows));
    return kExitOk;
  } catch (const std::exception& e) {
    return map_error(e);
  }
}

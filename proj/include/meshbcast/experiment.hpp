#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "meshbcast/protocols.hpp"
#include "meshbcast/sim.hpp"

namespace meshbcast {

// Builds the protocol named by `protocol` ("decay", "faultless", "robust",
// "multi"). The tree-based protocols take the prebuilt sgst; decay ignores it.
std::unique_ptr<Protocol> make_protocol(const std::string& protocol, const MeshGraph& g,
                                        int source, const Sgst* sgst,
                                        const SimConfig& cfg);

bool protocol_needs_tree(const std::string& protocol);

struct ExperimentConfig {
  std::string protocol = "decay";
  SimConfig sim;  // sim.trial is overwritten per trial
  int source = 0;
  int trials = 1;
  bool measure_time = false;  // wall_time_ms stays 0 unless set
};

struct SummaryRow {
  int trial = 0;
  std::string protocol;
  int n = 0;
  int diameter = 0;
  double p = 0.0;
  int x = 0;
  int k = 1;
  std::int64_t completion_round = -1;
  bool success = false;
  double wall_time_ms = 0.0;
};

struct ExperimentResult {
  int x_used = 0;
  int diameter = 0;
  std::optional<Sgst> sgst;  // built once per run; absent for decay
  std::vector<SummaryRow> rows;
  std::vector<Trace> traces;  // one per trial, in trial order
};

// Runs cfg.trials independent trials. Trial j uses sim.trial = j, so the
// whole run is reproducible from (graph, protocol, seed) alone.
ExperimentResult run_experiment(const MeshGraph& g, const ExperimentConfig& cfg);

std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string events_csv(const std::vector<Trace>& traces);

struct SweepConfig {
  std::vector<std::string> protocols;
  std::vector<double> ps;
  std::vector<int> xs;  // 0 means max(2, ceil(log2 n))
  std::vector<int> ks;
  int trials = 1;
  int source = 0;
  SimConfig sim;  // seed, delta, c_mult, max_rounds, fault_mode shared by cells
};

struct SweepCell {
  std::string protocol;
  double p = 0.0;
  int x = 0;
  int k = 1;
  int n = 0;
  int diameter = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  // Completion-round statistics over successful trials; -1 with no successes.
  double mean_completion = -1.0;
  std::int64_t median_completion = -1;
  std::int64_t q25_completion = -1;
  std::int64_t q75_completion = -1;
  std::int64_t max_completion = -1;
};

// Cross product of the four lists, trees shared across cells with equal x.
// Throws std::invalid_argument when any list is empty.
std::vector<SweepCell> run_sweep(const MeshGraph& g, const SweepConfig& cfg);

std::string sweep_csv(const std::vector<SweepCell>& cells);

}  // namespace meshbcast

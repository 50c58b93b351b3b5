#pragma once

#include <stdexcept>
#include <string>

#include "meshbcast/protocols.hpp"
#include "meshbcast/ranking.hpp"

namespace meshbcast {

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a schedule file carries. The per-node slot tables in the JSON
// are derived from the tree on render, so a parsed document re-renders to
// the exact bytes it came from.
struct ScheduleDocument {
  std::string protocol;  // "faultless" or "robust"
  Sgst sgst;
  FaultlessSlots slots;  // meaningful when protocol == "faultless"
  int block_size = 1;    // meaningful when protocol == "robust"
  int c_mult = 6;
};

ScheduleDocument make_schedule_document(const MeshGraph& g, const Sgst& sgst,
                                        const std::string& protocol,
                                        const SimConfig& cfg);

// Pretty-printed JSON with sorted keys and a trailing newline.
std::string render_schedule(const ScheduleDocument& doc);

// Parses and validates against the graph: the tree must be a BFS spanning
// tree of g rooted at the stored source, and stored ranks, classes, and slot
// parameters must match what the tree implies. Throws ScheduleError.
ScheduleDocument parse_schedule(const std::string& text, const MeshGraph& g);

}  // namespace meshbcast

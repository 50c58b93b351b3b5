#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "meshbcast/graph.hpp"

namespace meshbcast {

// Bottom-up tree ranks for a branching threshold: leaves have rank 1, and an
// internal node takes the maximum child rank, plus one iff at least
// `threshold` children attain that maximum.
struct RankedTree {
  int root = -1;
  int x = 2;
  std::vector<int> parent;  // -1 at the root
  std::vector<int> rank2;   // threshold 2
  std::vector<int> rankx;   // threshold x
  int rmax2 = 0;
  int rmaxx = 0;
};

// parent describes a rooted tree over nodes 0..n-1 (exactly one -1 entry).
// Throws std::invalid_argument on cycles, missing root, or bad indices.
RankedTree rank_tree(const std::vector<int>& parent, int x);

// Smallest r >= 0 with base^r >= n.
int ceil_log(int base, int n);
inline int ceil_log2(int n) { return ceil_log(2, n); }

// rmax <= ceil(log_x n) for both thresholds (the n = 1 corner, where the
// lone node already has rank 1, is clamped to a bound of 1).
bool check_rank_bound(const RankedTree& rt, int n);

enum class NodeClass : std::uint8_t { Root, Fast, Slow, SuperSlow };

const char* node_class_name(NodeClass c);

// Fast when rank2 matches the parent; otherwise Slow when rankx matches the
// parent; otherwise SuperSlow. A parent's rank is at least each child's rank
// for both thresholds, so the three cases are exhaustive.
std::vector<NodeClass> classify(const RankedTree& rt);

// BFS spanning tree with ranks and transmission classes. The tree is chosen
// so that simultaneous class transmissions stay collision-free; see
// verify_sgst for the two structural properties this encodes.
struct Sgst {
  int source = 0;
  int x = 2;
  BfsLayering layering;
  RankedTree tree;
  std::vector<NodeClass> class_of;
  std::vector<int> fast_child;                // -1 when none; at most one exists
  std::vector<std::vector<int>> slow_children;
};

class SgstError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds a BFS tree rooted at source, then repairs parent choices until both
// class properties hold. Deterministic for fixed (g, source, x). Throws
// SgstError if the repair budget (50 * n reassignments) is exhausted.
Sgst build_sgst(const MeshGraph& g, int source, int x);

struct PropertyWitness {
  int property = 0;  // 3 or 4
  int parent = -1;   // the node whose neighborhood is overcrowded
  int layer = 0;
  int rank2 = 0;
  int rankx = 0;               // only meaningful for property 4
  std::vector<int> offenders;  // class members adjacent to `parent`
  std::string describe() const;
};

struct SgstReport {
  bool spanning_ok = false;
  bool ranks_ok = false;
  bool classes_ok = false;
  bool property3_ok = false;
  bool property4_ok = false;
  std::vector<PropertyWitness> witnesses;
  bool ok() const {
    return spanning_ok && ranks_ok && classes_ok && property3_ok && property4_ok;
  }
};

// Re-derives everything from scratch and checks:
//  - parent edges exist and climb exactly one BFS layer, layers match BFS,
//  - stored ranks and classes equal recomputed ones,
//  - property 3: a parent of a fast node v has exactly one neighbor in
//    v's (layer, rank2) fast set, so that set can transmit without collision,
//  - property 4: a parent of a slow node v has at most x-1 neighbors in
//    v's (layer, rank2, rankx) slow set.
SgstReport verify_sgst(const MeshGraph& g, const Sgst& sgst);

struct PathSegment {
  enum class Kind { FastStretch, SlowEdge, SuperSlowEdge };
  Kind kind;
  int length;  // edges; > 1 only for fast stretches
};

struct PathDecomposition {
  int target = -1;
  std::vector<PathSegment> segments;  // root-to-target order
  int fast_stretch_count() const;
  int total_length() const;
};

// Splits the root-to-target tree path by edge class, merging consecutive
// fast edges into stretches.
PathDecomposition decompose_path(const Sgst& sgst, int target);

}  // namespace meshbcast

#include "meshbcast/ranking.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <tuple>

#include "meshbcast/rng.hpp"

namespace meshbcast {

namespace {

// Children lists plus a root-first topological order (parents before
// children). Throws if `parent` is not a single rooted tree.
struct TreeIndex {
  int root = -1;
  std::vector<std::vector<int>> children;
  std::vector<int> order;
};

TreeIndex index_tree(const std::vector<int>& parent) {
  const int n = static_cast<int>(parent.size());
  TreeIndex idx;
  idx.children.assign(n, {});
  for (int v = 0; v < n; ++v) {
    if (parent[v] == -1) {
      if (idx.root != -1) {
        throw std::invalid_argument("parent array has more than one root");
      }
      idx.root = v;
    } else if (parent[v] < 0 || parent[v] >= n) {
      throw std::invalid_argument("parent index out of range");
    } else {
      idx.children[parent[v]].push_back(v);
    }
  }
  if (idx.root == -1) {
    throw std::invalid_argument("parent array has no root");
  }
  idx.order.reserve(n);
  idx.order.push_back(idx.root);
  for (std::size_t head = 0; head < idx.order.size(); ++head) {
    for (int c : idx.children[idx.order[head]]) {
      idx.order.push_back(c);
    }
  }
  if (static_cast<int>(idx.order.size()) != n) {
    throw std::invalid_argument("parent array contains a cycle");
  }
  return idx;
}

std::vector<int> ranks_for_threshold(const TreeIndex& idx, int threshold) {
  const int n = static_cast<int>(idx.order.size());
  std::vector<int> rank(n, 1);
  // Children precede nothing in reverse order, so one sweep suffices.
  for (int pos = n - 1; pos >= 0; --pos) {
    int v = idx.order[pos];
    const auto& ch = idx.children[v];
    if (ch.empty()) {
      rank[v] = 1;
      continue;
    }
    int best = 0;
    int count = 0;
    for (int c : ch) {
      if (rank[c] > best) {
        best = rank[c];
        count = 1;
      } else if (rank[c] == best) {
        ++count;
      }
    }
    rank[v] = count >= threshold ? best + 1 : best;
  }
  return rank;
}

}  // namespace

RankedTree rank_tree(const std::vector<int>& parent, int x) {
  if (x < 2) {
    throw std::invalid_argument("ranking threshold must be at least 2");
  }
  TreeIndex idx = index_tree(parent);
  RankedTree rt;
  rt.root = idx.root;
  rt.x = x;
  rt.parent = parent;
  rt.rank2 = ranks_for_threshold(idx, 2);
  rt.rankx = x == 2 ? rt.rank2 : ranks_for_threshold(idx, x);
  rt.rmax2 = *std::max_element(rt.rank2.begin(), rt.rank2.end());
  rt.rmaxx = *std::max_element(rt.rankx.begin(), rt.rankx.end());
  return rt;
}

int ceil_log(int base, int n) {
  if (base < 2 || n < 1) {
    throw std::invalid_argument("ceil_log needs base >= 2, n >= 1");
  }
  int r = 0;
  long long power = 1;
  while (power < n) {
    power *= base;
    ++r;
  }
  return r;
}

bool check_rank_bound(const RankedTree& rt, int n) {
  int bound2 = std::max(1, ceil_log(2, n));
  int boundx = std::max(1, ceil_log(rt.x, n));
  return rt.rmax2 <= bound2 && rt.rmaxx <= boundx;
}

const char* node_class_name(NodeClass c) {
  switch (c) {
    case NodeClass::Root:
      return "root";
    case NodeClass::Fast:
      return "fast";
    case NodeClass::Slow:
      return "slow";
    case NodeClass::SuperSlow:
      return "superslow";
  }
  return "?";
}

std::vector<NodeClass> classify(const RankedTree& rt) {
  const int n = static_cast<int>(rt.parent.size());
  std::vector<NodeClass> cls(n, NodeClass::Root);
  for (int v = 0; v < n; ++v) {
    int u = rt.parent[v];
    if (u < 0) {
      continue;
    }
    if (rt.rank2[v] == rt.rank2[u]) {
      cls[v] = NodeClass::Fast;
    } else if (rt.rankx[v] == rt.rankx[u]) {
      cls[v] = NodeClass::Slow;
    } else {
      cls[v] = NodeClass::SuperSlow;
    }
  }
  return cls;
}

namespace {

void fill_derived(Sgst& s) {
  const int n = static_cast<int>(s.tree.parent.size());
  s.class_of = classify(s.tree);
  s.fast_child.assign(n, -1);
  s.slow_children.assign(n, {});
  for (int v = 0; v < n; ++v) {
    int u = s.tree.parent[v];
    if (u < 0) {
      continue;
    }
    if (s.class_of[v] == NodeClass::Fast) {
      s.fast_child[u] = v;
    } else if (s.class_of[v] == NodeClass::Slow) {
      s.slow_children[u].push_back(v);
    }
  }
}

struct Violation {
  int property;
  int parent;
  int layer;
  int rank2;
  int rankx;
  std::vector<int> offenders;

  bool operator<(const Violation& o) const {
    return std::tie(layer, property, rank2, rankx, parent) <
           std::tie(o.layer, o.property, o.rank2, o.rankx, o.parent);
  }
};

// Shared by the validator and the repair loop: recollects both property
// violations from scratch. `collect` bounds how many full witnesses are
// materialized; counting continues regardless.
struct PropertyScan {
  int violation_count = 0;
  std::vector<Violation> witnesses;
};

PropertyScan scan_properties(const MeshGraph& g, const BfsLayering& lay,
                             const RankedTree& rt,
                             const std::vector<NodeClass>& cls,
                             std::size_t max_witnesses) {
  PropertyScan out;
  const int n = g.n;
  // Property 3: one scan per fast node's parent; each parent has at most one
  // fast child, so neighborhoods are scanned at most once here.
  for (int v = 0; v < n; ++v) {
    if (cls[v] != NodeClass::Fast) {
      continue;
    }
    int u = rt.parent[v];
    int k = lay.layer_of[v];
    int j = rt.rank2[v];
    std::vector<int> hits;
    for (int w : g.adj[u]) {
      if (cls[w] == NodeClass::Fast && lay.layer_of[w] == k && rt.rank2[w] == j) {
        hits.push_back(w);
      }
    }
    if (hits.size() >= 2) {
      ++out.violation_count;
      if (out.witnesses.size() < max_witnesses) {
        out.witnesses.push_back({3, u, k, j, 0, std::move(hits)});
      }
    }
  }
  // Property 4: scan each slow parent's neighborhood once, bucketing slow
  // neighbors by (layer, rank2, rankx).
  std::vector<char> scanned(n, 0);
  for (int v = 0; v < n; ++v) {
    if (cls[v] != NodeClass::Slow) {
      continue;
    }
    int u = rt.parent[v];
    if (scanned[u]) {
      continue;
    }
    scanned[u] = 1;
    // (key -> members); tiny, so a flat vector beats a hash map.
    std::vector<std::pair<std::array<int, 3>, std::vector<int>>> buckets;
    for (int w : g.adj[u]) {
      if (cls[w] != NodeClass::Slow) {
        continue;
      }
      std::array<int, 3> key = {lay.layer_of[w], rt.rank2[w], rt.rankx[w]};
      bool found = false;
      for (auto& [bk, members] : buckets) {
        if (bk == key) {
          members.push_back(w);
          found = true;
          break;
        }
      }
      if (!found) {
        buckets.push_back({key, {w}});
      }
    }
    for (auto& [key, members] : buckets) {
      if (static_cast<int>(members.size()) < rt.x) {
        continue;
      }
      // Only classes that contain a child of u are constrained.
      bool has_child = false;
      for (int w : members) {
        if (rt.parent[w] == u) {
          has_child = true;
          break;
        }
      }
      if (!has_child) {
        continue;
      }
      ++out.violation_count;
      if (out.witnesses.size() < max_witnesses) {
        out.witnesses.push_back({4, u, key[0], key[1], key[2], std::move(members)});
      }
    }
  }
  std::sort(out.witnesses.begin(), out.witnesses.end());
  return out;
}

std::vector<int> initial_parents(const MeshGraph& g, const BfsLayering& lay) {
  std::vector<int> parent(g.n, -1);
  for (int v = 0; v < g.n; ++v) {
    if (v == lay.root) {
      continue;
    }
    int want = lay.layer_of[v] - 1;
    for (int u : g.adj[v]) {  // adjacency is sorted, so this picks the lowest id
      if (lay.layer_of[u] == want) {
        parent[v] = u;
        break;
      }
    }
  }
  return parent;
}

}  // namespace

Sgst build_sgst(const MeshGraph& g, int source, int x) {
  if (x < 2) {
    throw std::invalid_argument("sgst threshold must be at least 2");
  }
  BfsLayering lay = bfs_layering(g, source);
  std::vector<int> parent = initial_parents(g, lay);
  const long long budget = 50LL * g.n;

  RankedTree rt = rank_tree(parent, x);
  std::vector<NodeClass> cls = classify(rt);
  PropertyScan scan = scan_properties(g, lay, rt, cls, 8);

  int stale = 0;  // iterations since the violation count last improved
  int best_seen = scan.violation_count;
  for (long long iter = 0; scan.violation_count > 0; ++iter) {
    if (iter >= budget) {
      throw SgstError("tree repair exhausted its budget with " +
                      std::to_string(scan.violation_count) +
                      " violations left (n=" + std::to_string(g.n) + ")");
    }
    const Violation& target = scan.witnesses.front();
    // Candidate moves: give one offending class member a different parent on
    // the previous layer.
    struct Move {
      int node;
      int new_parent;
    };
    std::vector<Move> candidates;
    for (int w : target.offenders) {
      for (int u2 : g.adj[w]) {
        if (lay.layer_of[u2] == target.layer - 1 && u2 != parent[w]) {
          candidates.push_back({w, u2});
          if (candidates.size() >= 64) {
            break;
          }
        }
      }
      if (candidates.size() >= 64) {
        break;
      }
    }
    if (candidates.empty()) {
      throw SgstError("no alternative parents for a violating class at layer " +
                      std::to_string(target.layer));
    }
    int best_count = std::numeric_limits<int>::max();
    Move best{-1, -1};
    for (const Move& mv : candidates) {
      int old_parent = parent[mv.node];
      parent[mv.node] = mv.new_parent;
      RankedTree rt2 = rank_tree(parent, x);
      std::vector<NodeClass> cls2 = classify(rt2);
      int count = scan_properties(g, lay, rt2, cls2, 0).violation_count;
      parent[mv.node] = old_parent;
      if (count < best_count) {
        best_count = count;
        best = mv;
      }
    }
    if (stale >= 25) {
      // Plateau escape: rotate deterministically through the candidates
      // instead of re-taking the locally best move.
      RngStream esc = stream_for(0x5357u, 0, target.parent,
                                 static_cast<std::uint64_t>(iter),
                                 StreamPurpose::TreeRepair);
      best = candidates[esc.next_below(static_cast<std::uint32_t>(candidates.size()))];
      stale = 0;
    }
    parent[best.node] = best.new_parent;
    rt = rank_tree(parent, x);
    cls = classify(rt);
    scan = scan_properties(g, lay, rt, cls, 8);
    if (scan.violation_count < best_seen) {
      best_seen = scan.violation_count;
      stale = 0;
    } else {
      ++stale;
    }
  }

  Sgst s;
  s.source = source;
  s.x = x;
  s.layering = std::move(lay);
  s.tree = std::move(rt);
  fill_derived(s);
  return s;
}

SgstReport verify_sgst(const MeshGraph& g, const Sgst& sgst) {
  SgstReport rep;
  const int n = g.n;
  if (static_cast<int>(sgst.tree.parent.size()) != n ||
      static_cast<int>(sgst.layering.layer_of.size()) != n) {
    return rep;
  }
  BfsLayering fresh = bfs_layering(g, sgst.source);
  rep.spanning_ok = sgst.tree.root == sgst.source;
  for (int v = 0; v < n && rep.spanning_ok; ++v) {
    if (sgst.layering.layer_of[v] != fresh.layer_of[v]) {
      rep.spanning_ok = false;
      break;
    }
    int u = sgst.tree.parent[v];
    if (v == sgst.source) {
      rep.spanning_ok = u == -1;
    } else {
      rep.spanning_ok = u >= 0 && g.has_edge(u, v) &&
                        sgst.layering.layer_of[u] == sgst.layering.layer_of[v] - 1;
    }
  }
  RankedTree expect;
  try {
    expect = rank_tree(sgst.tree.parent, sgst.x);
  } catch (const std::invalid_argument&) {
    return rep;
  }
  rep.ranks_ok = expect.rank2 == sgst.tree.rank2 && expect.rankx == sgst.tree.rankx &&
                 expect.rmax2 == sgst.tree.rmax2 && expect.rmaxx == sgst.tree.rmaxx;
  rep.classes_ok = classify(expect) == sgst.class_of;

  PropertyScan scan = scan_properties(g, sgst.layering, expect, classify(expect), 32);
  rep.property3_ok = true;
  rep.property4_ok = true;
  rep.witnesses.reserve(scan.witnesses.size());
  for (auto& w : scan.witnesses) {
    if (w.property == 3) {
      rep.property3_ok = false;
    } else {
      rep.property4_ok = false;
    }
    rep.witnesses.push_back(
        {w.property, w.parent, w.layer, w.rank2, w.rankx, std::move(w.offenders)});
  }
  return rep;
}

std::string PropertyWitness::describe() const {
  std::string s = "property " + std::to_string(property) + " violated at parent " +
                  std::to_string(parent) + " (layer " + std::to_string(layer) +
                  ", rank2 " + std::to_string(rank2);
  if (property == 4) {
    s += ", rankx " + std::to_string(rankx);
  }
  s += "): neighbors";
  for (int v : offenders) {
    s += ' ' + std::to_string(v);
  }
  return s;
}

int PathDecomposition::fast_stretch_count() const {
  int q = 0;
  for (const auto& seg : segments) {
    q += seg.kind == PathSegment::Kind::FastStretch;
  }
  return q;
}

int PathDecomposition::total_length() const {
  int len = 0;
  for (const auto& seg : segments) {
    len += seg.length;
  }
  return len;
}

PathDecomposition decompose_path(const Sgst& sgst, int target) {
  if (target < 0 || target >= static_cast<int>(sgst.tree.parent.size())) {
    throw std::invalid_argument("path target out of range");
  }
  std::vector<int> path;  // target up to root
  for (int v = target; v != -1; v = sgst.tree.parent[v]) {
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  PathDecomposition out;
  out.target = target;
  for (std::size_t i = 1; i < path.size(); ++i) {
    NodeClass c = sgst.class_of[path[i]];
    if (c == NodeClass::Fast && !out.segments.empty() &&
        out.segments.back().kind == PathSegment::Kind::FastStretch &&
        sgst.class_of[path[i - 1]] == NodeClass::Fast) {
      ++out.segments.back().length;
      continue;
    }
    PathSegment seg;
    seg.length = 1;
    switch (c) {
      case NodeClass::Fast:
        seg.kind = PathSegment::Kind::FastStretch;
        break;
      case NodeClass::Slow:
        seg.kind = PathSegment::Kind::SlowEdge;
        break;
      default:
        seg.kind = PathSegment::Kind::SuperSlowEdge;
        break;
    }
    out.segments.push_back(seg);
  }
  return out;
}

}  // namespace meshbcast

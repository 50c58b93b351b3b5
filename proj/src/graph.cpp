#include "meshbcast/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <queue>
#include <set>

#include "meshbcast/rng.hpp"

namespace meshbcast {

int MeshGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nb : adj) {
    twice += nb.size();
  }
  return static_cast<int>(twice / 2);
}

int MeshGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& nb : adj) {
    d = std::max(d, nb.size());
  }
  return static_cast<int>(d);
}

bool MeshGraph::has_edge(int u, int v) const {
  if (u < 0 || u >= n || v < 0 || v >= n) {
    return false;
  }
  const auto& nb = adj[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

void check_connected(const MeshGraph& g) {
  if (g.n == 0) {
    throw GraphError(GraphErrorKind::MalformedLine, "graph must have at least one node");
  }
  std::vector<char> seen(g.n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
    }
  }
  if (reached != g.n) {
    throw GraphError(GraphErrorKind::Disconnected,
                     "graph is disconnected: reached " + std::to_string(reached) +
                         " of " + std::to_string(g.n) + " nodes");
  }
}

}  // namespace

MeshGraph MeshGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n <= 0) {
    throw GraphError(GraphErrorKind::MalformedLine, "node count must be positive");
  }
  MeshGraph g;
  g.n = n;
  g.adj.assign(n, {});
  for (const auto& [u, v] : edges) {
    if (u == v) {
      throw GraphError(GraphErrorKind::SelfLoop,
                       "self-loop at node " + std::to_string(u));
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw GraphError(GraphErrorKind::NodeOutOfRange,
                       "edge endpoint out of range: " + std::to_string(u) + " " +
                           std::to_string(v));
    }
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (int u = 0; u < n; ++u) {
    auto& nb = g.adj[u];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw GraphError(GraphErrorKind::DuplicateEdge,
                       "duplicate edge at node " + std::to_string(u));
    }
  }
  check_connected(g);
  return g;
}

namespace {

bool parse_int_token(std::string_view tok, int& out) {
  if (tok.empty()) {
    return false;
  }
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

// Splits "a b" into exactly two integer tokens separated by one space.
bool parse_int_pair(std::string_view line, int& a, int& b) {
  std::size_t sp = line.find(' ');
  if (sp == std::string_view::npos) {
    return false;
  }
  return parse_int_token(line.substr(0, sp), a) &&
         parse_int_token(line.substr(sp + 1), b);
}

}  // namespace

MeshGraph parse_graph(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      pos = text.size();
    } else {
      lines.push_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }
  // A trailing LF leaves no stray empty token; anything else is malformed.
  if (!lines.empty() && lines.back().empty()) {
    lines.pop_back();
  }
  if (lines.empty()) {
    throw GraphError(GraphErrorKind::MalformedLine, "empty graph file", 1);
  }
  int n = 0;
  int m = 0;
  if (!parse_int_pair(lines[0], n, m) || n <= 0 || m < 0) {
    throw GraphError(GraphErrorKind::MalformedLine,
                     "header must be \"n m\" with n > 0, got \"" +
                         std::string(lines[0]) + "\"",
                     1);
  }
  if (static_cast<int>(lines.size()) != m + 1) {
    throw GraphError(GraphErrorKind::MalformedLine,
                     "expected " + std::to_string(m) + " edge lines, found " +
                         std::to_string(lines.size() - 1),
                     static_cast<int>(lines.size()));
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  std::set<std::pair<int, int>> seen;
  for (int i = 0; i < m; ++i) {
    int lineno = i + 2;
    int u = 0;
    int v = 0;
    if (!parse_int_pair(lines[i + 1], u, v)) {
      throw GraphError(GraphErrorKind::MalformedLine,
                       "bad edge line \"" + std::string(lines[i + 1]) + "\"", lineno);
    }
    if (u == v) {
      throw GraphError(GraphErrorKind::SelfLoop,
                       "self-loop at node " + std::to_string(u), lineno);
    }
    if (u < 0 || v <= u || v >= n) {
      throw GraphError(GraphErrorKind::NodeOutOfRange,
                       "edge must satisfy 0 <= u < v < n, got " +
                           std::to_string(u) + " " + std::to_string(v),
                       lineno);
    }
    if (!seen.insert({u, v}).second) {
      throw GraphError(GraphErrorKind::DuplicateEdge,
                       "duplicate edge " + std::to_string(u) + " " + std::to_string(v),
                       lineno);
    }
    edges.push_back({u, v});
  }
  return MeshGraph::from_edges(n, edges);
}

std::string format_graph(const MeshGraph& g) {
  std::string out;
  out += std::to_string(g.n);
  out += ' ';
  out += std::to_string(g.edge_count());
  out += '\n';
  for (int u = 0; u < g.n; ++u) {
    for (int v : g.adj[u]) {
      if (u < v) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
      }
    }
  }
  return out;
}

namespace {

GraphError bad_spec(std::string_view text, const std::string& why) {
  return GraphError(GraphErrorKind::BadSpec,
                    "bad generator spec \"" + std::string(text) + "\": " + why);
}

}  // namespace

GenSpec GenSpec::parse(std::string_view text) {
  std::size_t open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw bad_spec(text, "expected kind(arg,...)");
  }
  std::string_view kind = text.substr(0, open);
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = args.find(',', pos);
    if (comma == std::string_view::npos) {
      parts.push_back(args.substr(pos));
      break;
    }
    parts.push_back(args.substr(pos, comma - pos));
    pos = comma + 1;
  }
  auto want_int = [&](std::string_view tok) {
    int v = 0;
    if (!parse_int_token(tok, v)) {
      throw bad_spec(text, "expected integer, got \"" + std::string(tok) + "\"");
    }
    return v;
  };
  GenSpec s;
  if (kind == "path" || kind == "star" || kind == "tree") {
    if (parts.size() != 1) {
      throw bad_spec(text, "expected one argument");
    }
    s.kind = kind == "path"   ? Kind::Path
             : kind == "star" ? Kind::Star
                              : Kind::CompleteBinaryTree;
    s.a = want_int(parts[0]);
    if (s.a < 1 || (s.kind == Kind::Star && s.a < 2)) {
      throw bad_spec(text, "size too small");
    }
  } else if (kind == "grid") {
    if (parts.size() != 2) {
      throw bad_spec(text, "expected grid(rows,cols)");
    }
    s.kind = Kind::Grid;
    s.a = want_int(parts[0]);
    s.b = want_int(parts[1]);
    if (s.a < 1 || s.b < 1) {
      throw bad_spec(text, "grid dimensions must be positive");
    }
  } else if (kind == "rand") {
    if (parts.size() != 2) {
      throw bad_spec(text, "expected rand(n,q)");
    }
    s.kind = Kind::RandomConnected;
    s.a = want_int(parts[0]);
    std::string qs(parts[1]);
    char* end = nullptr;
    s.q = std::strtod(qs.c_str(), &end);
    if (end != qs.c_str() + qs.size() || s.q < 0.0 || s.q > 1.0) {
      throw bad_spec(text, "edge probability must be in [0,1]");
    }
    if (s.a < 1) {
      throw bad_spec(text, "size must be positive");
    }
  } else if (kind == "expander") {
    if (parts.size() != 2) {
      throw bad_spec(text, "expected expander(layers,width)");
    }
    s.kind = Kind::LayeredExpander;
    s.a = want_int(parts[0]);
    s.b = want_int(parts[1]);
    if (s.a < 1 || s.b < 1) {
      throw bad_spec(text, "expander dimensions must be positive");
    }
  } else {
    throw bad_spec(text, "unknown kind \"" + std::string(kind) + "\"");
  }
  return s;
}

std::string GenSpec::to_string() const {
  char buf[64];
  switch (kind) {
    case Kind::Path:
      std::snprintf(buf, sizeof buf, "path(%d)", a);
      break;
    case Kind::Star:
      std::snprintf(buf, sizeof buf, "star(%d)", a);
      break;
    case Kind::CompleteBinaryTree:
      std::snprintf(buf, sizeof buf, "tree(%d)", a);
      break;
    case Kind::Grid:
      std::snprintf(buf, sizeof buf, "grid(%d,%d)", a, b);
      break;
    case Kind::RandomConnected:
      std::snprintf(buf, sizeof buf, "rand(%d,%g)", a, q);
      break;
    case Kind::LayeredExpander:
      std::snprintf(buf, sizeof buf, "expander(%d,%d)", a, b);
      break;
  }
  return buf;
}

namespace {

MeshGraph gen_path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) {
    edges.push_back({i, i + 1});
  }
  return MeshGraph::from_edges(n, edges);
}

MeshGraph gen_star(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    edges.push_back({0, i});
  }
  return MeshGraph::from_edges(n, edges);
}

MeshGraph gen_tree(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    edges.push_back({(i - 1) / 2, i});
  }
  return MeshGraph::from_edges(n, edges);
}

MeshGraph gen_grid(int rows, int cols) {
  std::vector<std::pair<int, int>> edges;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        edges.push_back({id(r, c), id(r, c + 1)});
      }
      if (r + 1 < rows) {
        edges.push_back({id(r, c), id(r + 1, c)});
      }
    }
  }
  return MeshGraph::from_edges(rows * cols, edges);
}

MeshGraph gen_random_connected(int n, double q, std::uint64_t seed) {
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    RngStream rng = stream_for(seed, 0, 0, attempt, StreamPurpose::Generator);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.bernoulli(q)) {
          edges.push_back({u, v});
        }
      }
    }
    try {
      return MeshGraph::from_edges(n, edges);
    } catch (const GraphError& e) {
      if (e.kind() != GraphErrorKind::Disconnected) {
        throw;
      }
    }
  }
  throw GraphError(GraphErrorKind::InfeasibleSpec,
                   "rand(" + std::to_string(n) + "," + std::to_string(q) +
                       ") stayed disconnected after " +
                       std::to_string(kMaxAttempts) + " attempts");
}

// d layers of w nodes each; node (l, j) has id l*w + j. Each node links to
// one or two random nodes of the previous layer, plus a deterministic spine
// through column 0 and, on layer 0, edges into (1, 0) so connectivity never
// depends on the random draws.
MeshGraph gen_expander(int d, int w, std::uint64_t seed) {
  RngStream rng = stream_for(seed, 0, 0, 0, StreamPurpose::Generator);
  auto id = [w](int layer, int j) { return layer * w + j; };
  std::set<std::pair<int, int>> edges;
  auto add = [&edges](int u, int v) {
    if (u > v) {
      std::swap(u, v);
    }
    edges.insert({u, v});
  };
  for (int l = 0; l + 1 < d; ++l) {
    add(id(l, 0), id(l + 1, 0));
  }
  if (d > 1) {
    for (int j = 1; j < w; ++j) {
      add(id(0, j), id(1, 0));
    }
  }
  for (int l = 1; l < d; ++l) {
    for (int j = 0; j < w; ++j) {
      add(id(l, j), id(l - 1, static_cast<int>(rng.next_below(w))));
      add(id(l, j), id(l - 1, static_cast<int>(rng.next_below(w))));
    }
  }
  std::vector<std::pair<int, int>> edge_list(edges.begin(), edges.end());
  return MeshGraph::from_edges(d * w, edge_list);
}

}  // namespace

MeshGraph generate_graph(const GenSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case GenSpec::Kind::Path:
      return gen_path(spec.a);
    case GenSpec::Kind::Star:
      return gen_star(spec.a);
    case GenSpec::Kind::CompleteBinaryTree:
      return gen_tree(spec.a);
    case GenSpec::Kind::Grid:
      return gen_grid(spec.a, spec.b);
    case GenSpec::Kind::RandomConnected:
      return gen_random_connected(spec.a, spec.q, seed);
    case GenSpec::Kind::LayeredExpander:
      return gen_expander(spec.a, spec.b, seed);
  }
  throw GraphError(GraphErrorKind::BadSpec, "unreachable generator kind");
}

MeshGraph generate_graph(std::string_view spec_text, std::uint64_t seed) {
  return generate_graph(GenSpec::parse(spec_text), seed);
}

BfsLayering bfs_layering(const MeshGraph& g, int root) {
  if (root < 0 || root >= g.n) {
    throw GraphError(GraphErrorKind::NodeOutOfRange,
                     "bfs root " + std::to_string(root) + " out of range");
  }
  BfsLayering out;
  out.root = root;
  out.layer_of.assign(g.n, -1);
  out.layer_of[root] = 0;
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.adj[u]) {
      if (out.layer_of[v] < 0) {
        out.layer_of[v] = out.layer_of[u] + 1;
        q.push(v);
      }
    }
  }
  out.depth = *std::max_element(out.layer_of.begin(), out.layer_of.end());
  out.layers.assign(out.depth + 1, {});
  for (int v = 0; v < g.n; ++v) {
    out.layers[out.layer_of[v]].push_back(v);
  }
  return out;
}

int eccentricity(const MeshGraph& g, int v) {
  return bfs_layering(g, v).depth;
}

int diameter(const MeshGraph& g) {
  int d = 0;
  for (int v = 0; v < g.n; ++v) {
    d = std::max(d, eccentricity(g, v));
  }
  return d;
}

}  // namespace meshbcast

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meshbcast {

enum class GraphErrorKind {
  MalformedLine,   // header/edge line does not match the format
  NodeOutOfRange,  // endpoint outside [0, n) or u >= v
  SelfLoop,
  DuplicateEdge,
  Disconnected,
  BadSpec,         // unparseable generator spec
  InfeasibleSpec,  // generator cannot produce a connected instance
};

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorKind kind, const std::string& what, int line = 0)
      : std::runtime_error(what), kind_(kind), line_(line) {}
  GraphErrorKind kind() const { return kind_; }
  // 1-based line number for parse errors, 0 otherwise.
  int line() const { return line_; }

 private:
  GraphErrorKind kind_;
  int line_;
};

// Undirected connected graph over nodes 0..n-1.
struct MeshGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbor lists, symmetric

  int edge_count() const;
  int max_degree() const;
  bool has_edge(int u, int v) const;

  // Validates endpoints, self-loops, duplicates and connectivity.
  static MeshGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
};

// Text format: first line "n m", then m lines "u v" with 0 <= u < v < n,
// LF line endings, nothing else. Rejects malformed lines, self-loops,
// duplicate edges and disconnected inputs with distinct diagnostics.
MeshGraph parse_graph(std::string_view text);
std::string format_graph(const MeshGraph& g);

// Generator spec grammar: kind(arg,...). Kinds:
//   path(n), star(n), tree(n), grid(rows,cols),
//   rand(n,q)       random G(n,q), resampled until connected,
//   expander(d,w)   d layers of width w with random bipartite links.
struct GenSpec {
  enum class Kind { Path, Star, CompleteBinaryTree, Grid, RandomConnected, LayeredExpander };
  Kind kind = Kind::Path;
  int a = 0;        // n, rows, or layer count
  int b = 0;        // cols or width
  double q = 0.0;   // edge probability for rand

  static GenSpec parse(std::string_view text);
  std::string to_string() const;
};

MeshGraph generate_graph(const GenSpec& spec, std::uint64_t seed);
MeshGraph generate_graph(std::string_view spec_text, std::uint64_t seed);

struct BfsLayering {
  int root = 0;
  int depth = 0;                        // index of the deepest layer
  std::vector<int> layer_of;            // layer_of[root] == 0
  std::vector<std::vector<int>> layers; // layers[k] sorted ascending
};

BfsLayering bfs_layering(const MeshGraph& g, int root);
int eccentricity(const MeshGraph& g, int v);
// Exact diameter via one BFS per node.
int diameter(const MeshGraph& g);

}  // namespace meshbcast

#pragma once

// Combinatorial layer: simple graphs, rotation systems and their faces,
// Euler and edge-count gates, triangulation detection, and the closed-chain
// test for labeled 4-cycles.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpack/geometry.hpp"

namespace cpack {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  friend bool operator==(Edge, Edge) = default;
};

/// Vertices are addressed by index; `vertices` holds their external ids.
/// Loops and repeated edges are representable so validate_simple can flag
/// them.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  std::size_t size() const { return vertices.size(); }
  /// Throws invalid_input when the id is unknown.
  std::size_t index_of(const std::string& id) const;
  std::vector<std::vector<std::size_t>> adjacency() const;
  bool connected() const;
};

/// Unordered edge lookup for simple graphs.
class EdgeLookup {
 public:
  explicit EdgeLookup(const Graph& g);
  std::optional<std::size_t> find(std::size_t u, std::size_t v) const;
  bool adjacent(std::size_t u, std::size_t v) const { return find(u, v).has_value(); }

 private:
  static std::uint64_t key(std::size_t u, std::size_t v);
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct SimpleViolation {
  enum class Kind { loop, repeated_edge };
  Kind kind;
  std::size_t u;
  std::size_t v;
  std::string message;
};

struct SimpleReport {
  bool ok = true;
  std::vector<SimpleViolation> violations;
};

SimpleReport validate_simple(const Graph& g);

struct EdgeCountReport {
  bool ok = true;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t bound = 0;  // 3|V| - 6, zero when |V| < 3
  std::string message;
};

/// |E| <= 3|V| - 6. Necessary for planarity, not sufficient.
EdgeCountReport planarity_necessary(const Graph& g);

struct Dart {
  std::size_t tail = 0;
  std::size_t head = 0;
  friend bool operator==(Dart, Dart) = default;
};

using Face = std::vector<Dart>;

/// A simple graph with a counterclockwise rotation system. `rotation[v]`
/// lists the neighbors of v in ccw order. `boundary` marks the vertices on
/// the outer face; when it is empty, `outer` may name a dart of the outer
/// face instead.
class EmbeddedGraph {
 public:
  EmbeddedGraph(Graph graph, std::vector<std::vector<std::size_t>> rotation,
                std::vector<std::size_t> boundary = {}, std::optional<Dart> outer = std::nullopt);

  const Graph& graph() const { return graph_; }
  const std::vector<std::vector<std::size_t>>& rotation() const { return rotation_; }
  const std::vector<std::size_t>& boundary() const { return boundary_; }
  const std::optional<Dart>& outer() const { return outer_; }
  std::size_t size() const { return graph_.size(); }

  /// The dart that follows `d` around its face: at the head, step to the
  /// predecessor of the tail in the head's rotation. Faces are traced with
  /// the face on the left, so bounded faces of a planar ccw embedding come
  /// out counterclockwise.
  Dart next_in_face(Dart d) const;

 private:
  Graph graph_;
  std::vector<std::vector<std::size_t>> rotation_;
  std::vector<std::size_t> boundary_;
  std::optional<Dart> outer_;
  // position_[v] maps neighbor -> index in rotation_[v]
  std::vector<std::unordered_map<std::size_t, std::size_t>> position_;
};

struct FaceReport {
  std::vector<Face> faces;
  long euler = 0;  // V - E + F
  bool planar = false;
  std::string message;
};

/// Throws unsupported_input when the graph is disconnected.
FaceReport faces_from_rotation(const EmbeddedGraph& eg);

/// Index of the outer face within `faces`. Uses the boundary when marked
/// (inconsistent_boundary if no face has exactly those vertices), then the
/// designated outer dart, else the longest face (first on ties).
std::size_t outer_face_index(const EmbeddedGraph& eg, const std::vector<Face>& faces);

/// Every face except the outer one is a 3-cycle. Throws unsupported_input
/// when the rotation system is not planar.
bool is_triangulated(const EmbeddedGraph& eg);

/// Builds an embedding from a list of ccw-oriented triangles that form a
/// triangulated disk or sphere. Boundary vertices are the ones with an open
/// fan and are listed in ccw order around the outer face.
EmbeddedGraph embed_triangles(std::vector<std::string> vertices,
                              const std::vector<std::array<std::size_t, 3>>& triangles);

/// A graph with one overlap-angle label per edge (parallel to graph.edges).
struct LabeledContactGraph {
  Graph graph;
  std::vector<Angle> labels;

  /// Labels default to 0 when `labels` is empty.
  static LabeledContactGraph with_labels(Graph g, std::vector<Angle> labels = {});
  void validate() const;
};

using Cycle4 = std::array<std::size_t, 4>;

/// Every 4-cycle whose diagonals are both non-edges, each reported once,
/// listed in cycle order starting from its smallest vertex.
std::vector<Cycle4> chordless_4cycles(const LabeledContactGraph& lg);

struct InfeasibleCycle {
  Cycle4 cycle;
  double label_sum = 0.0;  // radians
};

struct QuadReport {
  bool ok = true;
  std::vector<InfeasibleCycle> infeasible;
  std::string message;
};

/// Flags chordless 4-cycles whose labels sum to at least 2*pi.
QuadReport quad_feasibility(const LabeledContactGraph& lg);

}  // namespace cpack

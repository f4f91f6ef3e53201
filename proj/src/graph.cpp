#include "cpack/graph.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "cpack/error.hpp"

namespace cpack {

std::size_t Graph::index_of(const std::string& id) const {
  auto it = std::find(vertices.begin(), vertices.end(), id);
  if (it == vertices.end()) throw Error(ErrorKind::invalid_input, "unknown vertex '" + id + "'");
  return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    if (e.u != e.v) adj[e.v].push_back(e.u);
  }
  return adj;
}

bool Graph::connected() const {
  if (vertices.empty()) return true;
  const auto adj = adjacency();
  std::vector<bool> seen(vertices.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == vertices.size();
}

std::uint64_t EdgeLookup::key(std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

EdgeLookup::EdgeLookup(const Graph& g) {
  index_.reserve(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    index_.emplace(key(g.edges[i].u, g.edges[i].v), i);
  }
}

std::optional<std::size_t> EdgeLookup::find(std::size_t u, std::size_t v) const {
  auto it = index_.find(key(u, v));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SimpleReport validate_simple(const Graph& g) {
  SimpleReport report;
  std::map<std::pair<std::size_t, std::size_t>, int> seen;
  for (const Edge& e : g.edges) {
    if (e.u >= g.size() || e.v >= g.size()) {
      throw Error(ErrorKind::invalid_input, "edge references a vertex index out of range");
    }
    if (e.u == e.v) {
      report.violations.push_back({SimpleViolation::Kind::loop, e.u, e.v,
                                   "loop at " + g.vertices[e.u]});
      continue;
    }
    const auto key = std::minmax(e.u, e.v);
    if (++seen[{key.first, key.second}] == 2) {
      report.violations.push_back({SimpleViolation::Kind::repeated_edge, key.first, key.second,
                                   "repeated edge " + g.vertices[key.first] + "-" +
                                       g.vertices[key.second]});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

EdgeCountReport planarity_necessary(const Graph& g) {
  EdgeCountReport report;
  report.vertex_count = g.size();
  report.edge_count = g.edges.size();
  std::ostringstream os;
  if (g.size() < 3) {
    os << "fewer than 3 vertices: edge-count bound does not apply";
  } else {
    report.bound = 3 * g.size() - 6;
    report.ok = report.edge_count <= report.bound;
    os << "|E| = " << report.edge_count << (report.ok ? " <= " : " > ") << report.bound
       << " = 3|V| - 6";
    if (report.ok) {
      os << " (necessary condition only, not a planarity certificate)";
    } else {
      os << ": too many edges for a planar graph";
    }
  }
  report.message = os.str();
  return report;
}

EmbeddedGraph::EmbeddedGraph(Graph graph, std::vector<std::vector<std::size_t>> rotation,
                             std::vector<std::size_t> boundary, std::optional<Dart> outer)
    : graph_(std::move(graph)),
      rotation_(std::move(rotation)),
      boundary_(std::move(boundary)),
      outer_(outer) {
  const SimpleReport simple = validate_simple(graph_);
  if (!simple.ok) {
    throw Error(ErrorKind::invalid_input,
                "embedded graph must be simple: " + simple.violations.front().message);
  }
  const std::size_t n = graph_.size();
  if (rotation_.size() != n) {
    throw Error(ErrorKind::invalid_input, "rotation system must list every vertex");
  }
  auto adj = graph_.adjacency();
  position_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto listed = rotation_[v];
    std::sort(listed.begin(), listed.end());
    std::sort(adj[v].begin(), adj[v].end());
    if (listed != adj[v]) {
      throw Error(ErrorKind::invalid_input,
                  "rotation at " + graph_.vertices[v] + " does not list its incident edges exactly once");
    }
    for (std::size_t k = 0; k < rotation_[v].size(); ++k) position_[v][rotation_[v][k]] = k;
  }
  std::set<std::size_t> unique_boundary;
  for (std::size_t b : boundary_) {
    if (b >= n) throw Error(ErrorKind::invalid_input, "boundary vertex out of range");
    if (!unique_boundary.insert(b).second) {
      throw Error(ErrorKind::invalid_input, "boundary vertex " + graph_.vertices[b] + " listed twice");
    }
  }
  if (outer_ && (outer_->tail >= n || !position_[outer_->tail].contains(outer_->head))) {
    throw Error(ErrorKind::invalid_input, "designated outer dart is not an edge");
  }
}

Dart EmbeddedGraph::next_in_face(Dart d) const {
  const auto& rot = rotation_[d.head];
  const std::size_t pos = position_[d.head].at(d.tail);
  const std::size_t prev = (pos + rot.size() - 1) % rot.size();
  return {d.head, rot[prev]};
}

FaceReport faces_from_rotation(const EmbeddedGraph& eg) {
  const Graph& g = eg.graph();
  if (!g.connected()) {
    throw Error(ErrorKind::unsupported_input, "face extraction needs a connected graph");
  }
  FaceReport report;
  const auto& rot = eg.rotation();
  std::vector<std::vector<bool>> visited(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) visited[v].assign(rot[v].size(), false);

  auto mark = [&](Dart d) {
    const auto& r = rot[d.tail];
    const std::size_t k = static_cast<std::size_t>(std::find(r.begin(), r.end(), d.head) - r.begin());
    const bool was = visited[d.tail][k];
    visited[d.tail][k] = true;
    return !was;
  };

  for (std::size_t v = 0; v < g.size(); ++v) {
    for (std::size_t k = 0; k < rot[v].size(); ++k) {
      if (visited[v][k]) continue;
      Face face;
      Dart d{v, rot[v][k]};
      while (mark(d)) {
        face.push_back(d);
        d = eg.next_in_face(d);
      }
      report.faces.push_back(std::move(face));
    }
  }
  std::size_t face_count = report.faces.size();
  if (g.edges.empty()) face_count = 1;  // a single vertex bounds one face
  report.euler = static_cast<long>(g.size()) - static_cast<long>(g.edges.size()) +
                 static_cast<long>(face_count);
  report.planar = report.euler == 2;
  std::ostringstream os;
  os << "V - E + F = " << g.size() << " - " << g.edges.size() << " + " << face_count << " = "
     << report.euler;
  if (!report.planar) os << " != 2: rotation system is not planar";
  report.message = os.str();
  return report;
}

std::size_t outer_face_index(const EmbeddedGraph& eg, const std::vector<Face>& faces) {
  if (faces.empty()) throw Error(ErrorKind::unsupported_input, "graph has no faces");
  if (!eg.boundary().empty()) {
    const std::set<std::size_t> want(eg.boundary().begin(), eg.boundary().end());
    const auto& b = eg.boundary();
    // a ccw boundary is walked clockwise by the outer face; this breaks the
    // tie when a bounded face has the same vertices (a lone triangle)
    const Dart backwards{b.size() > 1 ? b[1] : b[0], b[0]};
    std::optional<std::size_t> match;
    for (std::size_t i = 0; i < faces.size(); ++i) {
      std::set<std::size_t> have;
      for (const Dart& d : faces[i]) have.insert(d.tail);
      if (have != want) continue;
      if (std::find(faces[i].begin(), faces[i].end(), backwards) != faces[i].end()) return i;
      if (!match) match = i;
    }
    if (match) return *match;
    throw Error(ErrorKind::inconsistent_boundary,
                "boundary vertices do not bound a single face of the embedding");
  }
  if (eg.outer()) {
    for (std::size_t i = 0; i < faces.size(); ++i) {
      for (const Dart& d : faces[i]) {
        if (d == *eg.outer()) return i;
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < faces.size(); ++i) {
    if (faces[i].size() > faces[best].size()) best = i;
  }
  return best;
}

bool is_triangulated(const EmbeddedGraph& eg) {
  const FaceReport report = faces_from_rotation(eg);
  if (!report.planar) throw Error(ErrorKind::unsupported_input, report.message);
  const std::size_t outer = outer_face_index(eg, report.faces);
  for (std::size_t i = 0; i < report.faces.size(); ++i) {
    if (i != outer && report.faces[i].size() != 3) return false;
  }
  return true;
}

EmbeddedGraph embed_triangles(std::vector<std::string> vertices,
                              const std::vector<std::array<std::size_t, 3>>& triangles) {
  const std::size_t n = vertices.size();
  // fan[v][a] = b means a is followed ccw by b around v.
  std::vector<std::map<std::size_t, std::size_t>> fan(n);
  std::map<std::pair<std::size_t, std::size_t>, int> darts;
  Graph g;
  g.vertices = std::move(vertices);
  std::set<std::pair<std::size_t, std::size_t>> seen_edges;
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = t[k], b = t[(k + 1) % 3], c = t[(k + 2) % 3];
      if (a >= n) throw Error(ErrorKind::invalid_input, "triangle vertex out of range");
      if (!fan[a].emplace(b, c).second) {
        throw Error(ErrorKind::invalid_input, "triangles overlap around " + g.vertices[a]);
      }
      ++darts[{a, b}];
      const auto key = std::minmax(a, b);
      if (seen_edges.insert({key.first, key.second}).second) g.edges.push_back({key.first, key.second});
    }
  }
  std::vector<std::vector<std::size_t>> rotation(n);
  std::vector<bool> on_boundary(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (fan[v].empty()) continue;
    std::set<std::size_t> successors;
    for (const auto& [from, to] : fan[v]) successors.insert(to);
    std::size_t start = fan[v].begin()->first;
    for (const auto& [from, to] : fan[v]) {
      if (!successors.contains(from)) {
        start = from;
        on_boundary[v] = true;
        break;
      }
    }
    std::size_t cur = start;
    rotation[v].push_back(cur);
    while (true) {
      auto it = fan[v].find(cur);
      if (it == fan[v].end() || it->second == start) break;
      cur = it->second;
      rotation[v].push_back(cur);
    }
    const std::size_t degree = fan[v].size() + (on_boundary[v] ? 1 : 0);
    if (rotation[v].size() != degree) {
      throw Error(ErrorKind::invalid_input, "triangles around " + g.vertices[v] + " do not form one fan");
    }
  }
  // Boundary darts belong to exactly one triangle; follow them ccw.
  std::map<std::size_t, std::size_t> boundary_next;
  for (const auto& [dart, count] : darts) {
    if (!darts.contains({dart.second, dart.first})) boundary_next[dart.first] = dart.second;
  }
  std::vector<std::size_t> boundary;
  if (!boundary_next.empty()) {
    std::size_t v = boundary_next.begin()->first;
    do {
      boundary.push_back(v);
      v = boundary_next.at(v);
    } while (v != boundary.front() && boundary.size() <= n);
    if (boundary.size() != boundary_next.size()) {
      throw Error(ErrorKind::invalid_input, "triangles do not form a disk (boundary is not one cycle)");
    }
  }
  return EmbeddedGraph(std::move(g), std::move(rotation), std::move(boundary));
}

LabeledContactGraph LabeledContactGraph::with_labels(Graph g, std::vector<Angle> labels) {
  LabeledContactGraph lg{std::move(g), std::move(labels)};
  if (lg.labels.empty()) lg.labels.assign(lg.graph.edges.size(), Angle(0.0));
  lg.validate();
  return lg;
}

void LabeledContactGraph::validate() const {
  if (labels.size() != graph.edges.size()) {
    throw Error(ErrorKind::invalid_input, "every edge needs exactly one overlap-angle label");
  }
}

std::vector<Cycle4> chordless_4cycles(const LabeledContactGraph& lg) {
  const Graph& g = lg.graph;
  const EdgeLookup lookup(g);
  auto adj = g.adjacency();
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  std::vector<Cycle4> cycles;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t c = a + 1; c < g.size(); ++c) {
      if (lookup.adjacent(a, c)) continue;
      std::vector<std::size_t> common;
      std::set_intersection(adj[a].begin(), adj[a].end(), adj[c].begin(), adj[c].end(),
                            std::back_inserter(common));
      for (std::size_t i = 0; i < common.size(); ++i) {
        // a must be the smallest vertex so each cycle is reported from one diagonal only
        if (common[i] < a) continue;
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          const std::size_t b = common[i], d = common[j];
          if (b == a || b == c || d == a || d == c || lookup.adjacent(b, d)) continue;
          cycles.push_back({a, b, c, d});
        }
      }
    }
  }
  return cycles;
}

QuadReport quad_feasibility(const LabeledContactGraph& lg) {
  lg.validate();
  constexpr double kFullTurn = 2.0 * std::numbers::pi;
  constexpr double kSlack = 1e-12;
  const EdgeLookup lookup(lg.graph);
  QuadReport report;
  const auto cycles = chordless_4cycles(lg);
  for (const Cycle4& cyc : cycles) {
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) sum += lg.labels[*lookup.find(cyc[k], cyc[(k + 1) % 4])].radians();
    if (sum >= kFullTurn - kSlack) report.infeasible.push_back({cyc, sum});
  }
  report.ok = report.infeasible.empty();
  std::ostringstream os;
  if (report.ok) {
    os << cycles.size() << " chordless 4-cycle(s), every label sum < 360 deg"
       << " (necessary condition only, not sufficient)";
  } else {
    os << report.infeasible.size()
       << " chordless 4-cycle(s) with overlap angles summing to >= 360 deg; four disks in a "
          "closed chain need a sum below 360 deg";
  }
  report.message = os.str();
  return report;
}

}  // namespace cpack

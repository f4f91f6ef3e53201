#pragma once

// JSON documents for graphs and disk sets, and SVG figures.
//
// Graph document (angles in degrees, edge keys "i:j" with i < j
// lexicographically):
//   { "vertices": ["a", ...],
//     "rotation": {"a": ["b", "c", ...], ...},      // ccw neighbor order
//     "boundary": ["a", ...],
//     "boundary_radii": {"a": 1.0, ...},
//     "angles_deg": {"a:b": 90.0, ...},
//     "outer": ["a", "b"] }                          // optional outer-face dart
//
// Disk document: [ {"id": "a", "x": 0.0, "y": 0.0, "r": 1.0}, ... ]

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpack/analysis.hpp"
#include "cpack/graph.hpp"
#include "cpack/layout.hpp"

namespace cpack::io {

struct GraphDocument {
  std::vector<std::string> vertices;
  std::map<std::string, std::vector<std::string>> rotation;
  std::vector<std::string> boundary;
  std::map<std::string, double> boundary_radii;
  std::map<std::string, double> angles_deg;
  std::optional<std::pair<std::string, std::string>> outer;

  friend bool operator==(const GraphDocument&, const GraphDocument&) = default;
};

/// Canonical key of the unordered edge {a, b}.
std::string edge_key(const std::string& a, const std::string& b);

/// Parses and validates; errors are ErrorKind::parse and start with the JSON
/// pointer of the offending element.
GraphDocument read_graph(std::string_view text);
std::string write_graph(const GraphDocument& doc);

/// The graph the rotation lists imply. Each occurrence of w in rotation[v]
/// is one edge, so loops and repeated edges survive for validation.
Graph to_graph(const GraphDocument& doc);
LabeledContactGraph to_labeled_graph(const GraphDocument& doc);
/// Requires a simple graph.
EmbeddedGraph to_embedding(const GraphDocument& doc);
LayoutProblem to_layout_problem(const GraphDocument& doc, double tol = kDefaultLayoutTol,
                                long max_iter = kDefaultMaxSweeps);

GraphDocument graph_document(const EmbeddedGraph& eg, const std::vector<Angle>& labels = {},
                             const std::vector<double>& boundary_radii = {});
GraphDocument graph_document(const LayoutProblem& problem);
/// Document for an extracted contact graph; the rotation is read off the
/// disk centers (neighbors sorted ccw by direction).
GraphDocument graph_document(const DiskSet& ds, const LabeledContactGraph& lg);

DiskSet read_disks(std::string_view text);
/// Numbers are written with 17 significant digits.
std::string write_disks(const DiskSet& ds);

/// Correspondence file: {"id in first set": "id in second set", ...}.
std::map<std::string, std::string> read_correspondence(std::string_view text);

struct SvgOptions {
  std::optional<std::string> fill;  // e.g. "#dde8f5"; none when empty
  double pixel_size = 600.0;        // longer side of the canvas
};

std::string render_svg(const DiskSet& ds, const LabeledContactGraph* overlay = nullptr,
                       const SvgOptions& options = {});

}  // namespace cpack::io

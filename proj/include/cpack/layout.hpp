#pragma once

// Constructive realization of a triangulated pattern: solve interior radii so
// each interior vertex has angle sum 2*pi, then place centers by walking the
// faces.

#include <optional>
#include <string>
#include <vector>

#include "cpack/analysis.hpp"
#include "cpack/graph.hpp"

namespace cpack {

inline constexpr double kDefaultLayoutTol = 1e-10;
inline constexpr long kDefaultMaxSweeps = 100000;

class LayoutProblem {
 public:
  /// `boundary_radii` is indexed by vertex; entries for interior vertices are
  /// ignored. `labels` is parallel to embedding.graph().edges (empty = all 0).
  LayoutProblem(EmbeddedGraph embedding, std::vector<double> boundary_radii,
                std::vector<Angle> labels = {}, double tol = kDefaultLayoutTol,
                long max_iter = kDefaultMaxSweeps);

  const EmbeddedGraph& embedding() const { return embedding_; }
  const Graph& graph() const { return embedding_.graph(); }
  const std::vector<Angle>& labels() const { return labels_; }
  double tol() const { return tol_; }
  long max_iter() const { return max_iter_; }

  bool is_interior(std::size_t v) const { return interior_flag_[v]; }
  const std::vector<std::size_t>& interior() const { return interior_; }
  const std::vector<double>& boundary_radii() const { return boundary_radii_; }

  /// Bounded faces, each as a ccw vertex triple.
  const std::vector<std::array<std::size_t, 3>>& triangles() const { return triangles_; }
  /// Indices into triangles() incident to v.
  const std::vector<std::size_t>& faces_at(std::size_t v) const { return faces_at_[v]; }

  Angle label(std::size_t u, std::size_t v) const;
  LabeledContactGraph labeled_graph() const;

 private:
  EmbeddedGraph embedding_;
  std::vector<double> boundary_radii_;
  std::vector<Angle> labels_;
  double tol_;
  long max_iter_;
  EdgeLookup lookup_;
  std::vector<bool> interior_flag_;
  std::vector<std::size_t> interior_;
  std::vector<std::array<std::size_t, 3>> triangles_;
  std::vector<std::vector<std::size_t>> faces_at_;
};

struct RadiiSolution {
  std::vector<double> radii;  // every vertex
  double residual = 0.0;      // max |angle_sum - 2 pi| over interior vertices
  long iterations = 0;        // sweeps
  std::vector<std::string> warnings;
};

/// Text of the warning emitted when a label exceeds 90 degrees.
extern const char* const kObtuseLabelWarning;

/// Sum of the triangle angles at interior vertex v. Throws
/// degenerate_triangle naming the face when a triangle cannot be formed.
double angle_sum(std::size_t v, const std::vector<double>& radii, const LayoutProblem& problem);

/// Gauss-Seidel sweeps of per-vertex bisection on the angle-sum equation.
/// `initial` holds one radius per interior vertex (in interior() order);
/// defaults to the mean boundary radius.
RadiiSolution solve_radii(const LayoutProblem& problem,
                          const std::optional<std::vector<double>>& initial = std::nullopt);

struct Placement {
  DiskSet disks;
  double closure_residual = 0.0;
  double max_edge_error = 0.0;
};

/// Places centers by a breadth-first walk over the bounded faces.
Placement place_centers(const LayoutProblem& problem, const std::vector<double>& radii);

struct PackResult {
  DiskSet disks;
  RadiiSolution solution;
  Placement placement;
};

PackResult pack(const LayoutProblem& problem);

}  // namespace cpack

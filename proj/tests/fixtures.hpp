#pragma once

// Shared test patterns and independent oracles. Nothing here calls into the
// code paths the oracles check.

#include <random>
#include <string>
#include <vector>

#include "cpack/analysis.hpp"
#include "cpack/geometry.hpp"
#include "cpack/graph.hpp"
#include "cpack/layout.hpp"

namespace cpack::fixtures {

/// Wheel with center "c" and ring "b0".."b{k-1}" (ccw).
EmbeddedGraph wheel(int spokes);
LayoutProblem wheel_problem(int spokes, double boundary_radius = 1.0, double label_deg = 0.0);

/// rows x cols grid with vertex "r,c"; faces are unit squares, the outer
/// ring is the boundary.
EmbeddedGraph grid(int rows, int cols);

/// K4 as a tetrahedron seen from above: center "d" inside triangle a, b, c.
EmbeddedGraph k4_planar();

/// Single ccw triangle "a", "b", "c".
EmbeddedGraph triangle();

/// Triangulated disk grown by attaching vertices to runs of boundary
/// vertices. At least one interior vertex once n >= 5.
EmbeddedGraph random_patch(std::mt19937_64& rng, int vertex_count);

/// Seven unit disks: "c" at the origin, "b0".."b5" at distance 2.
DiskSet penny_star();
/// Hexagonal penny patch of the given ring count (2 rings = 19 disks).
DiskSet penny_patch(int rings);
/// rows x cols unit disks at spacing 2, ids "r,c".
DiskSet square_lattice(int rows, int cols);
/// Same lattice with columns >= first_col moved up by `lift` and left so the
/// horizontal contacts survive.
DiskSet sheared_lattice(int rows, int cols, int first_col, double lift);

/// Angle between the outward tangent rays of the two circles at boundary
/// point p (each ray tangent to one circle and pointing out of the other
/// disk).
double tangent_ray_angle(const Disk& a, const Disk& b, Point p);

/// Boundary intersection points by solving the two circle equations in
/// coordinates rotated so the centers lie on the x-axis.
std::vector<Point> brute_circle_points(const Disk& a, const Disk& b);

/// Dense sampling of the lens a ∩ b (grid plus both boundary arcs) looking
/// for a point also in c.
bool lens_sampling_oracle(const Disk& a, const Disk& b, const Disk& c, double tol, int samples);

/// Numerical rank by Gaussian elimination with full pivoting.
long rank_by_elimination(std::vector<std::vector<double>> m, double rel_tol);

/// Minimal well-formedness check: balanced tags, quoted attributes, one root.
bool well_formed_xml(const std::string& text, std::string* why = nullptr);

/// Counts occurrences of `needle` in `hay`.
std::size_t count_of(const std::string& hay, const std::string& needle);

}  // namespace cpack::fixtures

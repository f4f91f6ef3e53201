#pragma once

// Disk primitives: pairwise relations, overlap angles, generalized edge
// lengths, triangle angles and triple-intersection tests.
//
// Angles are radians throughout the library. Degrees only appear in the io
// and cli layers.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace cpack {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point, Point) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

struct Disk {
  std::string id;
  Point center;
  double r = 1.0;

  Disk() = default;
  Disk(std::string id_, double cx, double cy, double radius)
      : id(std::move(id_)), center{cx, cy}, r(radius) {}

  /// Throws invalid_input unless r > 0 and all numbers are finite.
  void validate() const;

  bool contains(Point p, double tol = 0.0) const {
    return distance(p, center) <= r + tol;
  }
};

/// An angle in [0, pi). pi itself is internal tangency, which coincides with
/// containment and is excluded.
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians);

  static Angle degrees(double deg) { return Angle(deg * std::numbers::pi / 180.0); }

  double radians() const { return value_; }
  double degrees() const { return value_ * 180.0 / std::numbers::pi; }

  friend bool operator==(Angle, Angle) = default;

 private:
  double value_ = 0.0;
};

enum class PairKind { disjoint, tangent, overlapping, contained };

const char* to_string(PairKind kind);

struct PairRelation {
  PairKind kind = PairKind::disjoint;
  double distance = 0.0;
  std::optional<Angle> angle;  // set iff tangent or overlapping
};

/// Classifies two disks with absolute length tolerance `tol`.
///
/// Containment is tested first and includes internal tangency and coincident
/// disks (d <= |ra - rb| + tol), then external tangency, then separation.
PairRelation pair_relation(const Disk& a, const Disk& b, double tol);

/// Angle between the outward tangent rays at a boundary intersection point.
/// Throws no_intersection when the circles do not meet.
Angle overlap_angle(const Disk& a, const Disk& b);

/// Center distance realizing overlap angle `theta` between radii ri, rj.
double edge_length(double ri, double rj, Angle theta);

/// Angle opposite `l_opp` in the triangle with sides (l_opp, l1, l2).
/// Throws degenerate_triangle unless the strict triangle inequality holds.
double triangle_angle(double l_opp, double l1, double l2);

struct TripleResult {
  bool intersects = false;
  std::optional<Point> witness;
};

/// Whether three closed disks share a point. Requires that no disk contains
/// another (invalid_configuration otherwise).
TripleResult triple_intersects(const Disk& a, const Disk& b, const Disk& c, double tol);

/// Boundary intersection points of two circles. Zero, one (tangency within
/// tol) or two points.
struct CirclePoints {
  int count = 0;
  Point p[2];
};
CirclePoints circle_intersections(const Disk& a, const Disk& b, double tol);

}  // namespace cpack

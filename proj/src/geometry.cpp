#include "cpack/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "cpack/error.hpp"

namespace cpack {

namespace {

// arccos arguments this close outside [-1, 1] are treated as roundoff.
constexpr double kClampSlack = 1e-12;

std::string describe(const Disk& d) {
  std::ostringstream os;
  os.precision(17);
  os << "disk '" << d.id << "' (" << d.center.x << ", " << d.center.y << ", r=" << d.r << ")";
  return os.str();
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::no_intersection: return "no-intersection";
    case ErrorKind::degenerate_triangle: return "degenerate-triangle";
    case ErrorKind::invalid_configuration: return "invalid-configuration";
    case ErrorKind::unsupported_input: return "unsupported-input";
    case ErrorKind::inconsistent_boundary: return "inconsistent-boundary";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::inconsistent_layout: return "inconsistent-layout";
    case ErrorKind::degenerate_normalization: return "degenerate-normalization";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::no_intersection:
    case ErrorKind::degenerate_triangle:
    case ErrorKind::non_convergence:
    case ErrorKind::inconsistent_layout:
    case ErrorKind::degenerate_normalization:
      return true;
    default:
      return false;
  }
}

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::disjoint: return "disjoint";
    case PairKind::tangent: return "tangent";
    case PairKind::overlapping: return "overlapping";
    case PairKind::contained: return "contained";
  }
  return "unknown";
}

void Disk::validate() const {
  if (!std::isfinite(center.x) || !std::isfinite(center.y) || !std::isfinite(r)) {
    throw Error(ErrorKind::invalid_input, "non-finite value in " + describe(*this));
  }
  if (!(r > 0.0)) {
    throw Error(ErrorKind::invalid_input, "non-positive radius in " + describe(*this));
  }
}

Angle::Angle(double radians) : value_(radians) {
  if (!std::isfinite(radians) || radians < 0.0 || radians >= std::numbers::pi) {
    std::ostringstream os;
    os << "angle " << radians << " rad outside [0, pi)";
    throw Error(ErrorKind::invalid_input, os.str());
  }
}

PairRelation pair_relation(const Disk& a, const Disk& b, double tol) {
  a.validate();
  b.validate();
  if (!std::isfinite(tol) || tol < 0.0) {
    throw Error(ErrorKind::invalid_input, "tolerance must be finite and >= 0");
  }
  PairRelation rel;
  rel.distance = distance(a.center, b.center);
  const double d = rel.distance;
  if (d <= std::abs(a.r - b.r) + tol) {
    rel.kind = PairKind::contained;
  } else if (std::abs(d - (a.r + b.r)) <= tol) {
    rel.kind = PairKind::tangent;
    rel.angle = Angle(0.0);
  } else if (d > a.r + b.r + tol) {
    rel.kind = PairKind::disjoint;
  } else {
    rel.kind = PairKind::overlapping;
    rel.angle = overlap_angle(a, b);
  }
  return rel;
}

Angle overlap_angle(const Disk& a, const Disk& b) {
  a.validate();
  b.validate();
  const double d = distance(a.center, b.center);
  // half-angle form: sin^2(t/2) and cos^2(t/2) without cancellation near 0 or pi
  const double rr = 4.0 * a.r * b.r;
  const double sum = a.r + b.r, diff = std::abs(a.r - b.r);
  const double sin2 = (sum - d) * (sum + d) / rr;
  const double cos2 = (d - diff) * (d + diff) / rr;
  if (sin2 < -0.5 * kClampSlack || cos2 < -0.5 * kClampSlack) {
    throw Error(ErrorKind::no_intersection,
                "boundary circles of " + describe(a) + " and " + describe(b) + " do not meet");
  }
  if (cos2 <= 0.0) {
    throw Error(ErrorKind::invalid_input, "internal tangency between " + describe(a) + " and " +
                                              describe(b) + " (overlap angle pi)");
  }
  return Angle(2.0 * std::atan2(std::sqrt(std::max(sin2, 0.0)), std::sqrt(cos2)));
}

double edge_length(double ri, double rj, Angle theta) {
  if (!(ri > 0.0) || !(rj > 0.0) || !std::isfinite(ri) || !std::isfinite(rj)) {
    throw Error(ErrorKind::invalid_input, "edge_length needs finite positive radii");
  }
  const double t = theta.radians();
  if (t < 0.5 * std::numbers::pi) {
    // exact ri + rj at tangency
    const double sum = ri + rj, s = std::sin(0.5 * t);
    return std::sqrt(sum * sum - 4.0 * ri * rj * s * s);
  }
  const double diff = ri - rj, c = std::cos(0.5 * t);
  return std::sqrt(diff * diff + 4.0 * ri * rj * c * c);
}

double triangle_angle(double l_opp, double l1, double l2) {
  if (!(l_opp > 0.0) || !(l1 > 0.0) || !(l2 > 0.0) || !(l_opp < l1 + l2) ||
      !(l1 < l_opp + l2) || !(l2 < l_opp + l1)) {
    std::ostringstream os;
    os.precision(17);
    os << "sides (" << l_opp << ", " << l1 << ", " << l2 << ") violate the triangle inequality";
    throw Error(ErrorKind::degenerate_triangle, os.str());
  }
  const double num = (l_opp - l1 + l2) * (l_opp + l1 - l2);
  const double den = (l1 + l2 - l_opp) * (l1 + l2 + l_opp);
  return 2.0 * std::atan2(std::sqrt(num), std::sqrt(den));
}

CirclePoints circle_intersections(const Disk& a, const Disk& b, double tol) {
  CirclePoints out;
  const Point delta = b.center - a.center;
  const double d = norm(delta);
  if (d <= std::abs(a.r - b.r) + tol || d > a.r + b.r + tol) return out;
  const Point u = (1.0 / d) * delta;
  if (std::abs(d - (a.r + b.r)) <= tol) {
    out.count = 1;
    out.p[0] = a.center + (a.r / (a.r + b.r)) * delta;
    return out;
  }
  const double x = (d * d + a.r * a.r - b.r * b.r) / (2.0 * d);
  const double h = std::sqrt(std::max(a.r * a.r - x * x, 0.0));
  const Point base = a.center + x * u;
  const Point perp{-u.y, u.x};
  out.count = 2;
  out.p[0] = base + h * perp;
  out.p[1] = base - h * perp;
  return out;
}

TripleResult triple_intersects(const Disk& a, const Disk& b, const Disk& c, double tol) {
  const Disk* disks[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i) {
    const Disk& p = *disks[i];
    const Disk& q = *disks[(i + 1) % 3];
    if (pair_relation(p, q, tol).kind == PairKind::contained) {
      throw Error(ErrorKind::invalid_configuration,
                  "containment between " + describe(p) + " and " + describe(q));
    }
  }
  // With no containment, a nonempty triple intersection has a corner on some
  // pairwise boundary intersection, and that corner lies in the third disk.
  TripleResult result;
  for (int i = 0; i < 3; ++i) {
    const Disk& p = *disks[i];
    const Disk& q = *disks[(i + 1) % 3];
    const Disk& third = *disks[(i + 2) % 3];
    const CirclePoints pts = circle_intersections(p, q, tol);
    if (pts.count == 0) return result;
    for (int k = 0; k < pts.count; ++k) {
      if (third.contains(pts.p[k], tol)) {
        result.intersects = true;
        result.witness = pts.p[k];
        return result;
      }
    }
  }
  return result;
}

}  // namespace cpack

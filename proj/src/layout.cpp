#include "cpack/layout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <sstream>

#include "cpack/error.hpp"

namespace cpack {

namespace {

constexpr double kFullTurn = 2.0 * std::numbers::pi;

std::string face_name(const Graph& g, const std::array<std::size_t, 3>& t) {
  return "(" + g.vertices[t[0]] + ", " + g.vertices[t[1]] + ", " + g.vertices[t[2]] + ")";
}

double mean_boundary_radius(const LayoutProblem& p) {
  double sum = 0.0;
  for (std::size_t b : p.embedding().boundary()) sum += p.boundary_radii()[b];
  return sum / static_cast<double>(p.embedding().boundary().size());
}

}  // namespace

const char* const kObtuseLabelWarning =
    "overlap-angle label above 90 deg: convergence and uniqueness are not guaranteed in this regime";

LayoutProblem::LayoutProblem(EmbeddedGraph embedding, std::vector<double> boundary_radii,
                             std::vector<Angle> labels, double tol, long max_iter)
    : embedding_(std::move(embedding)),
      boundary_radii_(std::move(boundary_radii)),
      labels_(std::move(labels)),
      tol_(tol),
      max_iter_(max_iter),
      lookup_(embedding_.graph()) {
  const Graph& g = embedding_.graph();
  const std::size_t n = g.size();
  if (embedding_.boundary().empty()) {
    throw Error(ErrorKind::invalid_input, "layout needs a nonempty boundary");
  }
  if (!(tol_ > 0.0) || max_iter_ <= 0) {
    throw Error(ErrorKind::invalid_input, "layout needs tol > 0 and max_iter > 0");
  }
  if (labels_.empty()) labels_.assign(g.edges.size(), Angle(0.0));
  if (labels_.size() != g.edges.size()) {
    throw Error(ErrorKind::invalid_input, "every edge needs exactly one label");
  }
  if (boundary_radii_.size() != n) {
    throw Error(ErrorKind::invalid_input, "boundary radii must be indexed by vertex");
  }
  const FaceReport faces = faces_from_rotation(embedding_);
  if (!faces.planar) throw Error(ErrorKind::unsupported_input, faces.message);
  const std::size_t outer = outer_face_index(embedding_, faces.faces);

  interior_flag_.assign(n, true);
  for (std::size_t b : embedding_.boundary()) {
    interior_flag_[b] = false;
    const double r = boundary_radii_[b];
    if (!std::isfinite(r) || !(r > 0.0)) {
      throw Error(ErrorKind::invalid_input, "boundary vertex '" + g.vertices[b] + "' needs a positive radius");
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (interior_flag_[v]) interior_.push_back(v);
  }
  faces_at_.resize(n);
  for (std::size_t f = 0; f < faces.faces.size(); ++f) {
    if (f == outer) continue;
    const Face& face = faces.faces[f];
    if (face.size() != 3) {
      throw Error(ErrorKind::invalid_input, "embedding is not triangulated: a bounded face has " +
                                                std::to_string(face.size()) + " sides");
    }
    const std::array<std::size_t, 3> t{face[0].tail, face[1].tail, face[2].tail};
    for (std::size_t v : t) faces_at_[v].push_back(triangles_.size());
    triangles_.push_back(t);
  }
}

Angle LayoutProblem::label(std::size_t u, std::size_t v) const {
  auto e = lookup_.find(u, v);
  if (!e) throw Error(ErrorKind::invalid_input, "no edge " + graph().vertices[u] + "-" + graph().vertices[v]);
  return labels_[*e];
}

LabeledContactGraph LayoutProblem::labeled_graph() const {
  return LabeledContactGraph{graph(), labels_};
}

double angle_sum(std::size_t v, const std::vector<double>& radii, const LayoutProblem& problem) {
  double sum = 0.0;
  for (std::size_t f : problem.faces_at(v)) {
    const auto& t = problem.triangles()[f];
    const std::size_t k = static_cast<std::size_t>(std::find(t.begin(), t.end(), v) - t.begin());
    const std::size_t x = t[(k + 1) % 3], y = t[(k + 2) % 3];
    const double lvx = edge_length(radii[v], radii[x], problem.label(v, x));
    const double lvy = edge_length(radii[v], radii[y], problem.label(v, y));
    const double lxy = edge_length(radii[x], radii[y], problem.label(x, y));
    try {
      sum += triangle_angle(lxy, lvx, lvy);
    } catch (const Error& e) {
      throw Error(ErrorKind::degenerate_triangle,
                  "face " + face_name(problem.graph(), t) + ": " + e.what());
    }
  }
  return sum;
}

namespace {

// Radius of v that balances its angle sum with every other radius fixed.
// The angle sum falls as the radius grows: bracket by doubling or halving,
// then Illinois-style regula falsi on log r.
double balance_vertex(std::size_t v, std::vector<double>& radii, const LayoutProblem& problem) {
  auto excess = [&](double x) {
    radii[v] = std::exp(x);
    return angle_sum(v, radii, problem) - kFullTurn;
  };
  const double start = radii[v];
  const double f0 = excess(std::log(start));
  radii[v] = start;
  if (f0 == 0.0) return start;
  constexpr int kMaxBracket = 200;
  const double step = f0 > 0.0 ? std::log(2.0) : -std::log(2.0);
  double a = std::log(start), fa = f0;
  double b = a, fb = f0;
  for (int steps = 0; (fb > 0.0) == (f0 > 0.0); ++steps) {
    if (steps == kMaxBracket) {
      radii[v] = start;
      throw NonConvergence("no radius of '" + problem.graph().vertices[v] + "' brings its angle sum to 2 pi",
                           std::abs(f0), 0);
    }
    a = b;
    fa = fb;
    b += step;
    fb = excess(b);
  }
  // root lies between a and b
  for (int it = 0; it < 200 && fb != 0.0; ++it) {
    if (std::abs(b - a) <= 4e-16 * std::max(1.0, std::abs(b))) break;
    double c = b - fb * (b - a) / (fb - fa);
    if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
    const double fc = excess(c);
    if ((fc > 0.0) != (fb > 0.0)) {
      a = b;
      fa = fb;
    } else {
      fa *= 0.5;
    }
    b = c;
    fb = fc;
    if (std::abs(fb) <= 1e-15) break;
  }
  radii[v] = std::exp(b);
  return radii[v];
}

}  // namespace

RadiiSolution solve_radii(const LayoutProblem& problem, const std::optional<std::vector<double>>& initial) {
  const std::size_t n = problem.graph().size();
  RadiiSolution sol;
  sol.radii.assign(n, 0.0);
  for (std::size_t b : problem.embedding().boundary()) sol.radii[b] = problem.boundary_radii()[b];

  for (const Angle& a : problem.labels()) {
    if (a.radians() > std::numbers::pi / 2.0) {
      sol.warnings.emplace_back(kObtuseLabelWarning);
      break;
    }
  }
  const auto& interior = problem.interior();
  if (initial) {
    if (initial->size() != interior.size()) {
      throw Error(ErrorKind::invalid_input, "initial radii must list every interior vertex");
    }
    for (std::size_t k = 0; k < interior.size(); ++k) {
      const double r = (*initial)[k];
      if (!std::isfinite(r) || !(r > 0.0)) throw Error(ErrorKind::invalid_input, "initial radii must be positive");
      sol.radii[interior[k]] = r;
    }
  } else {
    const double mean = mean_boundary_radius(problem);
    for (std::size_t v : interior) sol.radii[v] = mean;
  }
  if (interior.empty()) return sol;

  auto residual = [&] {
    double worst = 0.0;
    for (std::size_t v : interior) worst = std::max(worst, std::abs(angle_sum(v, sol.radii, problem) - kFullTurn));
    return worst;
  };
  sol.residual = residual();
  double best = sol.residual;
  while (sol.residual > problem.tol()) {
    if (sol.iterations >= problem.max_iter()) {
      std::ostringstream os;
      os << "radius solver did not converge in " << sol.iterations << " sweeps (best residual " << best
         << " rad, tol " << problem.tol() << ")";
      throw NonConvergence(os.str(), best, sol.iterations);
    }
    for (std::size_t v : interior) balance_vertex(v, sol.radii, problem);
    ++sol.iterations;
    sol.residual = residual();
    best = std::min(best, sol.residual);
  }
  return sol;
}

Placement place_centers(const LayoutProblem& problem, const std::vector<double>& radii) {
  const Graph& g = problem.graph();
  const std::size_t n = g.size();
  if (radii.size() != n) throw Error(ErrorKind::invalid_input, "need one radius per vertex");
  for (double r : radii) {
    if (!std::isfinite(r) || !(r > 0.0)) throw Error(ErrorKind::invalid_input, "radii must be positive");
  }
  const auto& tris = problem.triangles();
  if (tris.empty()) throw Error(ErrorKind::invalid_input, "nothing to place: no bounded faces");

  auto length = [&](std::size_t u, std::size_t v) { return edge_length(radii[u], radii[v], problem.label(u, v)); };

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_edge;
  for (std::size_t f = 0; f < tris.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const auto key = std::minmax(tris[f][k], tris[f][(k + 1) % 3]);
      by_edge[{key.first, key.second}].push_back(f);
    }
  }

  std::vector<std::optional<Point>> pos(n);
  Placement out;
  // Third vertex of the ccw triangle (p, q, w) lies to the left of p -> q.
  auto place_third = [&](std::size_t p, std::size_t q, std::size_t w) {
    const Point pp = *pos[p], pq = *pos[q];
    const double lpq = length(p, q), lpw = length(p, w), lqw = length(q, w);
    double angle;
    try {
      angle = triangle_angle(lqw, lpq, lpw);
    } catch (const Error& e) {
      throw Error(ErrorKind::degenerate_triangle, "face (" + g.vertices[p] + ", " + g.vertices[q] + ", " +
                                                      g.vertices[w] + "): " + e.what());
    }
    const Point dir = (1.0 / distance(pp, pq)) * (pq - pp);
    const double c = std::cos(angle), s = std::sin(angle);
    const Point cand = pp + lpw * Point{c * dir.x - s * dir.y, s * dir.x + c * dir.y};
    if (pos[w]) {
      out.closure_residual = std::max(out.closure_residual, distance(*pos[w], cand));
    } else {
      pos[w] = cand;
    }
  };

  std::vector<bool> done(tris.size(), false);
  std::deque<std::size_t> queue;
  const auto& root = tris.front();
  pos[root[0]] = Point{0.0, 0.0};
  pos[root[1]] = Point{length(root[0], root[1]), 0.0};
  place_third(root[0], root[1], root[2]);
  done[0] = true;
  queue.push_back(0);
  while (!queue.empty()) {
    const auto& t = tris[queue.front()];
    queue.pop_front();
    for (int k = 0; k < 3; ++k) {
      const auto key = std::minmax(t[k], t[(k + 1) % 3]);
      for (std::size_t f : by_edge[{key.first, key.second}]) {
        if (done[f]) continue;
        done[f] = true;
        const auto& nt = tris[f];
        // rotate nt so the shared edge comes first, keeping its orientation
        for (int s = 0; s < 3; ++s) {
          const std::size_t p = nt[s], q = nt[(s + 1) % 3], w = nt[(s + 2) % 3];
          if (pos[p] && pos[q] && std::minmax(p, q) == key) {
            place_third(p, q, w);
            break;
          }
        }
        queue.push_back(f);
      }
    }
  }

  std::vector<Disk> disks;
  disks.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!pos[v]) throw Error(ErrorKind::unsupported_input, "vertex '" + g.vertices[v] + "' lies on no bounded face");
    disks.emplace_back(g.vertices[v], pos[v]->x, pos[v]->y, radii[v]);
  }
  for (const Edge& e : g.edges) {
    const double err = std::abs(distance(*pos[e.u], *pos[e.v]) - length(e.u, e.v));
    out.max_edge_error = std::max(out.max_edge_error, err);
  }
  const double scale = mean_boundary_radius(problem);
  if (out.closure_residual > 100.0 * problem.tol() * scale) {
    std::ostringstream os;
    os << "layout does not close: placement disagreement " << out.closure_residual << " exceeds "
       << 100.0 * problem.tol() * scale;
    throw Error(ErrorKind::inconsistent_layout, os.str());
  }
  out.disks = DiskSet(std::move(disks));
  return out;
}

PackResult pack(const LayoutProblem& problem) {
  PackResult result;
  result.solution = solve_radii(problem);
  result.placement = place_centers(problem, result.solution.radii);
  result.disks = result.placement.disks;
  const double tol = 10.0 * problem.tol() * mean_boundary_radius(problem);
  // Near-tangent labels are ill-conditioned in angle, so the angle check uses
  // the coarser extraction tolerance.
  const RealizationReport check =
      verify_realization(result.disks, problem.labeled_graph(), tol, std::max(10.0 * problem.tol(), 1e-6));
  if (!check.pass) {
    throw Error(ErrorKind::inconsistent_layout,
                "packed disks do not realize the pattern: " + check.defects.front().message);
  }
  return result;
}

}  // namespace cpack

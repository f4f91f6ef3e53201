#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace cpack::fixtures {

namespace {
constexpr double kPi = std::numbers::pi;
}

EmbeddedGraph wheel(int spokes) {
  std::vector<std::string> ids{"c"};
  for (int i = 0; i < spokes; ++i) ids.push_back("b" + std::to_string(i));
  std::vector<std::array<std::size_t, 3>> tris;
  for (int i = 0; i < spokes; ++i) {
    tris.push_back({0, static_cast<std::size_t>(1 + i), static_cast<std::size_t>(1 + (i + 1) % spokes)});
  }
  return embed_triangles(std::move(ids), tris);
}

LayoutProblem wheel_problem(int spokes, double boundary_radius, double label_deg) {
  EmbeddedGraph eg = wheel(spokes);
  std::vector<double> radii(eg.size(), boundary_radius);
  std::vector<Angle> labels(eg.graph().edges.size(), Angle::degrees(label_deg));
  return LayoutProblem(std::move(eg), std::move(radii), std::move(labels));
}

EmbeddedGraph grid(int rows, int cols) {
  Graph g;
  auto id = [&](int r, int c) { return static_cast<std::size_t>(r * cols + c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) g.vertices.push_back(std::to_string(r) + "," + std::to_string(c));
  }
  std::vector<std::vector<std::size_t>> rot(g.vertices.size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) g.edges.push_back({id(r, c), id(r + 1, c)});
      // x = c, y = r; ccw order: right, up, left, down
      auto& out = rot[id(r, c)];
      if (c + 1 < cols) out.push_back(id(r, c + 1));
      if (r + 1 < rows) out.push_back(id(r + 1, c));
      if (c > 0) out.push_back(id(r, c - 1));
      if (r > 0) out.push_back(id(r - 1, c));
    }
  }
  std::vector<std::size_t> boundary;
  for (int c = 0; c < cols; ++c) boundary.push_back(id(0, c));
  for (int r = 1; r < rows; ++r) boundary.push_back(id(r, cols - 1));
  for (int c = cols - 2; c >= 0; --c) boundary.push_back(id(rows - 1, c));
  for (int r = rows - 2; r >= 1; --r) boundary.push_back(id(r, 0));
  return EmbeddedGraph(std::move(g), std::move(rot), std::move(boundary));
}

EmbeddedGraph k4_planar() {
  // a=(0,0), b=(4,0), c=(2,4), d=(2,1.5)
  return embed_triangles({"a", "b", "c", "d"}, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}});
}

EmbeddedGraph triangle() { return embed_triangles({"a", "b", "c"}, {{0, 1, 2}}); }

EmbeddedGraph random_patch(std::mt19937_64& rng, int vertex_count) {
  std::vector<std::array<std::size_t, 3>> tris{{0, 1, 2}};
  std::vector<std::size_t> boundary{0, 1, 2};
  std::size_t n = 3;
  std::discrete_distribution<int> run_length({1.0, 0.0, 2.0, 4.0, 2.0});  // k = 2, 3, 4 vertices
  while (static_cast<int>(n) < vertex_count) {
    const std::size_t m = boundary.size();
    int k = run_length(rng);
    k = std::min<int>(k, static_cast<int>(m));
    if (k < 2) k = 2;
    if (n >= 4 && k == 2 && m > 6) k = 3;  // keep the boundary from growing without interior
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
    const std::size_t x = n++;
    for (int j = 0; j + 1 < k; ++j) {
      tris.push_back({boundary[(i + j + 1) % m], boundary[(i + j) % m], x});
    }
    std::vector<std::size_t> next;
    // boundary becomes ..., b_i, x, b_{i+k-1}, ...
    for (std::size_t s = 0; s < m; ++s) {
      const std::size_t offset = (s + m - i) % m;
      if (offset >= 1 && offset + 1 < static_cast<std::size_t>(k)) continue;
      next.push_back(boundary[s]);
      if (offset == 0) next.push_back(x);
    }
    boundary = std::move(next);
  }
  std::vector<std::string> ids;
  for (std::size_t v = 0; v < n; ++v) ids.push_back("v" + std::to_string(v));
  return embed_triangles(std::move(ids), tris);
}

DiskSet penny_star() {
  std::vector<Disk> disks{{"c", 0.0, 0.0, 1.0}};
  for (int k = 0; k < 6; ++k) {
    const double t = k * kPi / 3.0;
    disks.emplace_back("b" + std::to_string(k), 2.0 * std::cos(t), 2.0 * std::sin(t), 1.0);
  }
  return DiskSet(std::move(disks));
}

DiskSet penny_patch(int rings) {
  std::vector<Disk> disks;
  for (int j = -rings; j <= rings; ++j) {
    for (int i = -rings; i <= rings; ++i) {
      if (std::abs(i + j) > rings) continue;
      const double x = 2.0 * (i + 0.5 * j);
      const double y = 2.0 * (j * std::sqrt(3.0) / 2.0);
      disks.emplace_back("p" + std::to_string(i) + "_" + std::to_string(j), x, y, 1.0);
    }
  }
  return DiskSet(std::move(disks));
}

DiskSet square_lattice(int rows, int cols) { return sheared_lattice(rows, cols, cols, 0.0); }

DiskSet sheared_lattice(int rows, int cols, int first_col, double lift) {
  const double pull = 2.0 - std::sqrt(4.0 - lift * lift);
  std::vector<Disk> disks;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double x = 2.0 * c, y = 2.0 * r;
      if (c >= first_col) {
        x -= pull;
        y += lift;
      }
      disks.emplace_back(std::to_string(r) + "," + std::to_string(c), x, y, 1.0);
    }
  }
  return DiskSet(std::move(disks));
}

double tangent_ray_angle(const Disk& a, const Disk& b, Point p) {
  const Point na = (1.0 / a.r) * (p - a.center);
  const Point nb = (1.0 / b.r) * (p - b.center);
  Point ta{-na.y, na.x};
  if (dot(ta, nb) < 0.0) ta = Point{na.y, -na.x};
  Point tb{-nb.y, nb.x};
  if (dot(tb, na) < 0.0) tb = Point{nb.y, -nb.x};
  return std::acos(std::clamp(dot(ta, tb) / (norm(ta) * norm(tb)), -1.0, 1.0));
}

std::vector<Point> brute_circle_points(const Disk& a, const Disk& b) {
  // f(t) = |a(t) - cb| - rb is smallest toward b and largest away from it;
  // bisect on each half-turn between those directions.
  const Point toward = b.center - a.center;
  const double t0 = std::atan2(toward.y, toward.x);
  auto at = [&](double t) { return a.center + a.r * Point{std::cos(t), std::sin(t)}; };
  auto f = [&](double t) { return distance(at(t), b.center) - b.r; };
  std::vector<Point> out;
  for (double side : {1.0, -1.0}) {
    double lo = t0, hi = t0 + side * kPi;
    if (f(lo) > 0.0 || f(hi) < 0.0) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) <= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.push_back(at(0.5 * (lo + hi)));
  }
  return out;
}

bool lens_sampling_oracle(const Disk& a, const Disk& b, const Disk& c, double tol, int samples) {
  if (distance(a.center, b.center) > a.r + b.r + tol) return false;
  auto in_all = [&](Point p) { return a.contains(p, tol) && b.contains(p, tol) && c.contains(p, tol); };
  const int arc = samples / 4;
  const int side = static_cast<int>(std::sqrt(static_cast<double>(samples - 2 * arc)));
  const double x0 = std::max(a.center.x - a.r, b.center.x - b.r);
  const double x1 = std::min(a.center.x + a.r, b.center.x + b.r);
  const double y0 = std::max(a.center.y - a.r, b.center.y - b.r);
  const double y1 = std::min(a.center.y + a.r, b.center.y + b.r);
  for (int i = 0; i <= side; ++i) {
    for (int j = 0; j <= side; ++j) {
      const Point p{x0 + (x1 - x0) * i / side, y0 + (y1 - y0) * j / side};
      if (in_all(p)) return true;
    }
  }
  for (const Disk* d : {&a, &b}) {
    for (int k = 0; k < arc; ++k) {
      const double t = 2.0 * kPi * k / arc;
      const Point p = d->center + d->r * Point{std::cos(t), std::sin(t)};
      if (in_all(p)) return true;
    }
  }
  return false;
}

long rank_by_elimination(std::vector<std::vector<double>> m, double rel_tol) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  double scale = 0.0;
  for (const auto& row : m) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) return 0;
  std::vector<std::size_t> col_order(cols);
  for (std::size_t j = 0; j < cols; ++j) col_order[j] = j;
  long rank = 0;
  for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
    std::size_t pr = step, pc = step;
    double best = 0.0;
    for (std::size_t r = step; r < rows; ++r) {
      for (std::size_t c = step; c < cols; ++c) {
        if (std::abs(m[r][col_order[c]]) > best) {
          best = std::abs(m[r][col_order[c]]);
          pr = r;
          pc = c;
        }
      }
    }
    if (best <= rel_tol * scale) break;
    std::swap(m[step], m[pr]);
    std::swap(col_order[step], col_order[pc]);
    const double pivot = m[step][col_order[step]];
    for (std::size_t r = step + 1; r < rows; ++r) {
      const double factor = m[r][col_order[step]] / pivot;
      for (std::size_t c = step; c < cols; ++c) m[r][col_order[c]] -= factor * m[step][col_order[c]];
    }
    ++rank;
  }
  return rank;
}

bool well_formed_xml(const std::string& s, std::string* why) {
  auto bad = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto name_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.'; };
  auto check_text = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
      if (s[i] == '&') {
        const std::size_t semi = s.find(';', i);
        if (semi == std::string::npos || semi > to) return false;
        const std::string ent = s.substr(i + 1, semi - i - 1);
        if (ent != "amp" && ent != "lt" && ent != "gt" && ent != "quot" && ent != "apos") return false;
      }
    }
    return true;
  };
  std::vector<std::string> stack;
  int roots = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t lt = s.find('<', i);
    const std::size_t text_end = lt == std::string::npos ? s.size() : lt;
    if (!check_text(i, text_end)) return bad("bad entity in text");
    if (stack.empty()) {
      for (std::size_t k = i; k < text_end; ++k) {
        if (!std::isspace(static_cast<unsigned char>(s[k]))) return bad("text outside the root element");
      }
    }
    if (lt == std::string::npos) break;
    if (s.compare(lt, 5, "<?xml") == 0) {
      if (lt != 0) return bad("XML declaration not at start");
      const std::size_t end = s.find("?>", lt);
      if (end == std::string::npos) return bad("unterminated declaration");
      i = end + 2;
      continue;
    }
    if (s.compare(lt, 4, "<!--") == 0) {
      const std::size_t end = s.find("-->", lt);
      if (end == std::string::npos) return bad("unterminated comment");
      i = end + 3;
      continue;
    }
    std::size_t p = lt + 1;
    const bool closing = p < s.size() && s[p] == '/';
    if (closing) ++p;
    const std::size_t name_start = p;
    while (p < s.size() && name_char(s[p])) ++p;
    const std::string name = s.substr(name_start, p - name_start);
    if (name.empty()) return bad("empty tag name");
    if (closing) {
      while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
      if (p >= s.size() || s[p] != '>') return bad("malformed closing tag " + name);
      if (stack.empty() || stack.back() != name) return bad("mismatched closing tag " + name);
      stack.pop_back();
      i = p + 1;
      continue;
    }
    std::vector<std::string> attrs;
    bool self_closing = false;
    while (true) {
      while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
      if (p >= s.size()) return bad("unterminated tag " + name);
      if (s[p] == '>') {
        ++p;
        break;
      }
      if (s[p] == '/' && p + 1 < s.size() && s[p + 1] == '>') {
        self_closing = true;
        p += 2;
        break;
      }
      const std::size_t an = p;
      while (p < s.size() && name_char(s[p])) ++p;
      const std::string attr = s.substr(an, p - an);
      if (attr.empty()) return bad("bad attribute in " + name);
      if (std::find(attrs.begin(), attrs.end(), attr) != attrs.end()) return bad("duplicate attribute " + attr);
      attrs.push_back(attr);
      if (p >= s.size() || s[p] != '=') return bad("attribute without value: " + attr);
      ++p;
      if (p >= s.size() || (s[p] != '"' && s[p] != '\'')) return bad("unquoted attribute " + attr);
      const char q = s[p++];
      const std::size_t close = s.find(q, p);
      if (close == std::string::npos) return bad("unterminated attribute " + attr);
      if (s.substr(p, close - p).find('<') != std::string::npos) return bad("'<' in attribute " + attr);
      if (!check_text(p, close)) return bad("bad entity in attribute " + attr);
      p = close + 1;
    }
    if (stack.empty()) ++roots;
    if (!self_closing) stack.push_back(name);
    i = p;
  }
  if (!stack.empty()) return bad("unclosed element " + stack.back());
  if (roots != 1) return bad("expected exactly one root element");
  return true;
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + needle.size())) ++n;
  return n;
}

}  // namespace cpack::fixtures

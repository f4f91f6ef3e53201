#include "cpack/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <unordered_set>

#include "cpack/error.hpp"
#include "cpack/scan.hpp"

namespace cpack {

namespace {

Point rotate(Point p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

Point flip(Point p) { return {p.x, -p.y}; }

std::string pair_name(const std::string& a, const std::string& b) { return "'" + a + "' and '" + b + "'"; }

// Maps each vertex of lg to its disk index; throws unless the id sets agree.
std::vector<std::size_t> match_ids(const DiskSet& ds, const Graph& g) {
  if (g.size() != ds.size()) {
    throw Error(ErrorKind::invalid_input, "graph and disk set have different vertex counts");
  }
  std::vector<std::size_t> map(g.size());
  std::vector<bool> used(ds.size(), false);
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto idx = ds.find(g.vertices[v]);
    if (!idx || used[*idx]) {
      throw Error(ErrorKind::invalid_input, "graph vertex '" + g.vertices[v] + "' has no matching disk");
    }
    used[*idx] = true;
    map[v] = *idx;
  }
  return map;
}

}  // namespace

DiskSet::DiskSet(std::vector<Disk> disks) : disks_(std::move(disks)) {
  std::unordered_set<std::string> ids;
  for (const Disk& d : disks_) {
    d.validate();
    if (!ids.insert(d.id).second) throw Error(ErrorKind::invalid_input, "duplicate disk id '" + d.id + "'");
  }
}

std::optional<std::size_t> DiskSet::find(const std::string& id) const {
  for (std::size_t i = 0; i < disks_.size(); ++i) {
    if (disks_[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::string> DiskSet::ids() const {
  std::vector<std::string> out;
  out.reserve(disks_.size());
  for (const Disk& d : disks_) out.push_back(d.id);
  return out;
}

void DiskSet::require_configuration(double tol) const {
  for (const auto& p : scan::meeting_pairs(*this, tol, Exec::serial)) {
    if (p.relation.kind == PairKind::contained) {
      throw Error(ErrorKind::invalid_configuration,
                  "disks " + pair_name(disks_[p.i].id, disks_[p.j].id) + " are in containment");
    }
  }
}

Point SimilarityTransform::apply(Point p) const {
  if (reflect) p = flip(p);
  return scale * rotate(p, rotation) + translation;
}

Disk SimilarityTransform::apply(const Disk& d) const {
  Disk out = d;
  out.center = apply(d.center);
  out.r = scale * d.r;
  return out;
}

DiskSet SimilarityTransform::apply(const DiskSet& ds) const {
  std::vector<Disk> out;
  out.reserve(ds.size());
  for (const Disk& d : ds.disks()) out.push_back(apply(d));
  return DiskSet(std::move(out));
}

SimilarityTransform SimilarityTransform::inverse() const {
  SimilarityTransform inv;
  inv.scale = 1.0 / scale;
  inv.reflect = reflect;
  // F R(a) = R(-a) F, so the inverse of s R(a) F is (1/s) R(a) F when reflecting.
  inv.rotation = reflect ? rotation : -rotation;
  inv.translation = Point{};
  const Point moved = inv.apply(translation);
  inv.translation = Point{-moved.x, -moved.y};
  return inv;
}

SimilarityTransform SimilarityTransform::compose(const SimilarityTransform& other) const {
  SimilarityTransform out;
  out.scale = scale * other.scale;
  out.rotation = rotation + (reflect ? -other.rotation : other.rotation);
  out.reflect = reflect != other.reflect;
  out.translation = apply(other.translation);
  return out;
}

LabeledContactGraph extract_contact_graph(const DiskSet& ds, double tol, Exec exec) {
  const auto pairs = scan::meeting_pairs(ds, tol, exec);
  Graph g;
  g.vertices = ds.ids();
  std::vector<Angle> labels;
  for (const auto& p : pairs) {
    if (p.relation.kind == PairKind::contained) {
      throw Error(ErrorKind::invalid_configuration,
                  "disks " + pair_name(ds[p.i].id, ds[p.j].id) + " are in containment");
    }
    g.edges.push_back({p.i, p.j});
    labels.push_back(*p.relation.angle);
  }
  return LabeledContactGraph{std::move(g), std::move(labels)};
}

const char* to_string(RealizationDefect::Kind kind) {
  switch (kind) {
    case RealizationDefect::Kind::angle_mismatch: return "angle-mismatch";
    case RealizationDefect::Kind::extra_contact: return "extra-contact";
    case RealizationDefect::Kind::contained: return "contained";
  }
  return "unknown";
}

RealizationReport verify_realization(const DiskSet& ds, const LabeledContactGraph& lg, double tol,
                                     double angle_tol) {
  lg.validate();
  const auto to_disk = match_ids(ds, lg.graph);
  RealizationReport report;
  std::vector<std::vector<bool>> labeled(ds.size(), std::vector<bool>(ds.size(), false));

  for (std::size_t e = 0; e < lg.graph.edges.size(); ++e) {
    const std::size_t a = to_disk[lg.graph.edges[e].u], b = to_disk[lg.graph.edges[e].v];
    labeled[a][b] = labeled[b][a] = true;
    const Disk& da = ds[a];
    const Disk& db = ds[b];
    const PairRelation rel = pair_relation(da, db, tol);
    std::ostringstream os;
    os.precision(12);
    if (rel.kind == PairKind::contained) {
      os << "disks " << pair_name(da.id, db.id) << " are in containment";
      report.defects.push_back({RealizationDefect::Kind::contained, da.id, db.id, os.str()});
    } else if (rel.kind == PairKind::disjoint) {
      os << "labeled edge " << pair_name(da.id, db.id) << " does not touch (gap "
         << rel.distance - da.r - db.r << ")";
      report.defects.push_back({RealizationDefect::Kind::angle_mismatch, da.id, db.id, os.str()});
    } else {
      const double want = lg.labels[e].radians();
      const double got = rel.angle->radians();
      if (std::abs(got - want) > angle_tol) {
        os << "edge " << pair_name(da.id, db.id) << " has overlap angle " << rel.angle->degrees()
           << " deg, labeled " << lg.labels[e].degrees() << " deg";
        report.defects.push_back({RealizationDefect::Kind::angle_mismatch, da.id, db.id, os.str()});
      }
    }
  }
  for (const auto& p : scan::meeting_pairs(ds, tol, Exec::parallel)) {
    if (labeled[p.i][p.j]) continue;
    const Disk& da = ds[p.i];
    const Disk& db = ds[p.j];
    if (p.relation.kind == PairKind::contained) {
      report.defects.push_back({RealizationDefect::Kind::contained, da.id, db.id,
                                "disks " + pair_name(da.id, db.id) + " are in containment"});
    } else {
      report.defects.push_back({RealizationDefect::Kind::extra_contact, da.id, db.id,
                                "non-adjacent disks " + pair_name(da.id, db.id) + " are " +
                                    to_string(p.relation.kind)});
    }
  }
  report.pass = report.defects.empty();
  return report;
}

ThinReport is_thin(const DiskSet& ds, double tol, Exec exec) {
  const auto pairs = scan::meeting_pairs(ds, tol, exec);
  for (const auto& p : pairs) {
    if (p.relation.kind == PairKind::contained) {
      throw Error(ErrorKind::invalid_configuration,
                  "disks " + pair_name(ds[p.i].id, ds[p.j].id) + " are in containment");
    }
  }
  const auto nb = scan::forward_neighbors(ds.size(), pairs);
  ThinReport report;
  for (const auto& t : scan::intersecting_triples(ds, nb, tol, exec)) {
    report.violations.push_back({ds[t.i].id, ds[t.j].id, ds[t.k].id, t.witness});
  }
  report.thin = report.violations.empty();
  return report;
}

Normalized normalize(const DiskSet& ds) {
  if (ds.size() < 2) throw Error(ErrorKind::invalid_input, "normalize needs at least two disks");
  std::vector<std::size_t> order(ds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ds[a].id < ds[b].id; });
  const Disk& first = ds[order[0]];
  const Disk& second = ds[order[1]];
  const Point delta = second.center - first.center;
  if (norm(delta) <= 1e-14 * std::max(first.r, second.r)) {
    throw Error(ErrorKind::degenerate_normalization,
                "disks '" + first.id + "' and '" + second.id + "' are concentric");
  }
  SimilarityTransform t;
  t.scale = 1.0 / first.r;
  t.rotation = -std::atan2(delta.y, delta.x);
  const Point moved = t.apply(first.center);
  t.translation = Point{-moved.x, -moved.y};
  if (ds.size() >= 3 && t.apply(ds[order[2]].center).y < 0.0) {
    SimilarityTransform mirror;
    mirror.reflect = true;
    t = mirror.compose(t);
  }
  std::vector<Disk> out;
  out.reserve(ds.size());
  for (const Disk& d : ds.disks()) out.push_back(t.apply(d));
  // Pin the canonical values exactly; the transform only gets them to roundoff.
  auto& d0 = out[order[0]];
  d0.center = Point{0.0, 0.0};
  d0.r = 1.0;
  out[order[1]].center.y = 0.0;
  return {DiskSet(std::move(out)), t};
}

std::optional<SimilarityTransform> are_similar(const DiskSet& a, const DiskSet& b,
                                               const std::map<std::string, std::string>& correspondence,
                                               double tol) {
  if (a.size() != b.size() || correspondence.size() != a.size()) {
    throw Error(ErrorKind::invalid_input, "correspondence is not a bijection between the disk sets");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> hit(b.size(), false);
  for (const auto& [from, to] : correspondence) {
    auto ia = a.find(from);
    auto ib = b.find(to);
    if (!ia || !ib || hit[*ib]) {
      throw Error(ErrorKind::invalid_input,
                  "correspondence entry '" + from + "' -> '" + to + "' breaks the bijection");
    }
    hit[*ib] = true;
    pairs.emplace_back(*ia, *ib);
  }
  if (pairs.empty()) return SimilarityTransform{};

  using C = std::complex<double>;
  auto as_c = [](Point p) { return C(p.x, p.y); };
  for (bool reflect : {false, true}) {
    C mean_p(0.0), mean_q(0.0);
    for (auto [i, j] : pairs) {
      C p = as_c(a[i].center);
      mean_p += reflect ? std::conj(p) : p;
      mean_q += as_c(b[j].center);
    }
    const double n = static_cast<double>(pairs.size());
    mean_p /= n;
    mean_q /= n;
    C num(0.0);
    double den = 0.0;
    for (auto [i, j] : pairs) {
      C p = as_c(a[i].center);
      if (reflect) p = std::conj(p);
      const C dp = p - mean_p;
      num += (as_c(b[j].center) - mean_q) * std::conj(dp);
      den += std::norm(dp);
    }
    C alpha = den > 0.0 ? num / den : C(b[pairs[0].second].r / a[pairs[0].first].r, 0.0);
    if (std::abs(alpha) == 0.0) continue;
    SimilarityTransform t;
    t.scale = std::abs(alpha);
    t.rotation = std::arg(alpha);
    t.reflect = reflect;
    const C beta = mean_q - alpha * mean_p;
    t.translation = Point{beta.real(), beta.imag()};
    bool ok = true;
    for (auto [i, j] : pairs) {
      const Disk mapped = t.apply(a[i]);
      if (distance(mapped.center, b[j].center) > tol || std::abs(mapped.r - b[j].r) > tol) {
        ok = false;
        break;
      }
    }
    if (ok) return t;
  }
  return std::nullopt;
}

std::vector<std::vector<double>> constraint_jacobian(const DiskSet& ds, const LabeledContactGraph& lg,
                                                     const std::set<std::string>& pinned) {
  lg.validate();
  const auto to_disk = match_ids(ds, lg.graph);
  std::vector<long> column(ds.size(), -1);
  std::size_t cols = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!pinned.contains(ds[i].id)) {
      column[i] = static_cast<long>(cols);
      cols += 3;
    }
  }
  std::vector<std::vector<double>> jac(lg.graph.edges.size(), std::vector<double>(cols, 0.0));
  for (std::size_t e = 0; e < lg.graph.edges.size(); ++e) {
    const std::size_t i = to_disk[lg.graph.edges[e].u], j = to_disk[lg.graph.edges[e].v];
    const double c = std::cos(lg.labels[e].radians());
    const Point d = ds[i].center - ds[j].center;
    const double ri = ds[i].r, rj = ds[j].r;
    auto& row = jac[e];
    if (column[i] >= 0) {
      const auto k = static_cast<std::size_t>(column[i]);
      row[k] = 2.0 * d.x;
      row[k + 1] = 2.0 * d.y;
      row[k + 2] = -(2.0 * ri + 2.0 * rj * c);
    }
    if (column[j] >= 0) {
      const auto k = static_cast<std::size_t>(column[j]);
      row[k] = -2.0 * d.x;
      row[k + 1] = -2.0 * d.y;
      row[k + 2] = -(2.0 * rj + 2.0 * ri * c);
    }
  }
  return jac;
}

std::vector<std::vector<double>> similarity_velocities(const DiskSet& ds) {
  std::vector<std::vector<double>> v(4, std::vector<double>(3 * ds.size(), 0.0));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Point c = ds[i].center;
    const std::size_t k = 3 * i;
    v[0][k] = 1.0;          // translate x
    v[1][k + 1] = 1.0;      // translate y
    v[2][k] = -c.y;         // rotate about the origin
    v[2][k + 1] = c.x;
    v[3][k] = c.x;          // scale about the origin
    v[3][k + 1] = c.y;
    v[3][k + 2] = ds[i].r;
  }
  return v;
}

namespace {

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, std::size_t cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

long numerical_rank(const Eigen::VectorXd& sv, double rank_tol) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  long rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rank_tol * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace

RigidityReport rigidity_index(const DiskSet& ds, const LabeledContactGraph& lg,
                              const std::set<std::string>& pinned, double rank_tol) {
  for (const auto& id : pinned) {
    if (!ds.find(id)) throw Error(ErrorKind::invalid_input, "pinned id '" + id + "' is not a disk");
  }
  const RealizationReport check = verify_realization(ds, lg, 1e-6, 1e-6);
  if (!check.pass) {
    throw Error(ErrorKind::invalid_input,
                "disks do not realize the labeled graph: " + check.defects.front().message);
  }
  RigidityReport report;
  report.pinned = pinned;
  report.unknowns = 3 * (ds.size() - pinned.size());
  report.constraints = lg.graph.edges.size();

  const auto jac = constraint_jacobian(ds, lg, pinned);
  long rank = 0;
  if (report.unknowns > 0 && report.constraints > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_matrix(jac, report.unknowns));
    const Eigen::VectorXd sv = svd.singularValues();
    report.singular_values.assign(sv.data(), sv.data() + sv.size());
    rank = numerical_rank(sv, rank_tol);
  }
  report.null_dimension = static_cast<long>(report.unknowns) - rank;

  long trivial = 0;
  if (pinned.empty() && !ds.empty()) {
    // Similarities always flex an unpinned set; their span is 4-dimensional
    // unless every center coincides.
    const auto sim = similarity_velocities(ds);
    Eigen::MatrixXd m = to_matrix(sim, 3 * ds.size());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    trivial = numerical_rank(svd.singularValues(), rank_tol);
  }
  report.flex_dimension = report.null_dimension - trivial;
  std::ostringstream os;
  os << "first-order probe: " << report.flex_dimension << " non-similarity flex(es)";
  if (!pinned.empty()) os << " with " << pinned.size() << " disk(s) pinned";
  os << "; infinitesimal evidence, not a proof of global rigidity";
  report.note = os.str();
  return report;
}

}  // namespace cpack

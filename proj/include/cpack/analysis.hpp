#pragma once

// Inverse and diagnostic direction: contact-graph extraction, realization
// checks, thinness, normalization modulo similarity, and an infinitesimal
// rigidity probe.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpack/geometry.hpp"
#include "cpack/graph.hpp"

namespace cpack {

/// Ordered disks with unique ids.
class DiskSet {
 public:
  DiskSet() = default;
  /// Validates each disk and id uniqueness (invalid_input).
  explicit DiskSet(std::vector<Disk> disks);

  const std::vector<Disk>& disks() const { return disks_; }
  std::size_t size() const { return disks_.size(); }
  bool empty() const { return disks_.empty(); }
  const Disk& operator[](std::size_t i) const { return disks_[i]; }
  std::optional<std::size_t> find(const std::string& id) const;
  std::vector<std::string> ids() const;

  /// Throws invalid_configuration naming the first contained pair.
  void require_configuration(double tol) const;

 private:
  std::vector<Disk> disks_;
};

/// x -> scale * R(rotation) * F * x + translation, F = diag(1, -1) when
/// reflect. Radii scale by `scale`.
struct SimilarityTransform {
  double scale = 1.0;
  double rotation = 0.0;
  bool reflect = false;
  Point translation;

  Point apply(Point p) const;
  Disk apply(const Disk& d) const;
  DiskSet apply(const DiskSet& ds) const;
  SimilarityTransform inverse() const;
  /// (this o other)(x) = this(other(x)).
  SimilarityTransform compose(const SimilarityTransform& other) const;
};

enum class Exec { serial, parallel };

/// Edge (i, j) iff disks i and j are tangent or overlapping; label is the
/// overlap angle. Throws invalid_configuration on containment.
LabeledContactGraph extract_contact_graph(const DiskSet& ds, double tol,
                                          Exec exec = Exec::parallel);

struct RealizationDefect {
  enum class Kind { angle_mismatch, extra_contact, contained };
  Kind kind;
  std::string a;
  std::string b;
  std::string message;
};

struct RealizationReport {
  bool pass = true;
  std::vector<RealizationDefect> defects;
};

const char* to_string(RealizationDefect::Kind kind);

/// Compares disks against a labeled graph on the same ids. `angle_tol` is in
/// radians; a labeled edge whose disks do not meet is an angle mismatch.
RealizationReport verify_realization(const DiskSet& ds, const LabeledContactGraph& lg,
                                     double tol, double angle_tol);

struct ThinViolation {
  std::string a, b, c;
  Point witness;
};

struct ThinReport {
  bool thin = true;
  std::vector<ThinViolation> violations;
};

ThinReport is_thin(const DiskSet& ds, double tol, Exec exec = Exec::parallel);

struct Normalized {
  DiskSet disks;
  SimilarityTransform transform;  // input -> output
};

/// Canonical frame: lowest id at the origin with radius 1, second-lowest on
/// the positive x-axis, third-lowest (if any) with y >= 0.
Normalized normalize(const DiskSet& ds);

/// Finds T with T(a) matching b after relabeling by `correspondence`
/// (id in a -> id in b), trying both reflections. Throws invalid_input
/// unless the map is a bijection between the two id sets.
std::optional<SimilarityTransform> are_similar(const DiskSet& a, const DiskSet& b,
                                               const std::map<std::string, std::string>& correspondence,
                                               double tol);

inline constexpr double kDefaultRankTol = 1e-8;

struct RigidityReport {
  long flex_dimension = 0;
  long null_dimension = 0;
  std::size_t unknowns = 0;
  std::size_t constraints = 0;
  std::vector<double> singular_values;  // descending
  std::set<std::string> pinned;
  std::string note;
};

/// Jacobian of the labeled-edge constraints
///   |ci - cj|^2 - (ri^2 + rj^2 + 2 ri rj cos theta_ij)
/// with columns (cx, cy, r) for each unpinned disk in DiskSet order.
std::vector<std::vector<double>> constraint_jacobian(const DiskSet& ds, const LabeledContactGraph& lg,
                                                     const std::set<std::string>& pinned);

RigidityReport rigidity_index(const DiskSet& ds, const LabeledContactGraph& lg,
                              const std::set<std::string>& pinned,
                              double rank_tol = kDefaultRankTol);

/// The four first-order similarity motions (two translations, rotation,
/// scaling) as velocity vectors in constraint_jacobian column order, with
/// nothing pinned.
std::vector<std::vector<double>> similarity_velocities(const DiskSet& ds);

}  // namespace cpack

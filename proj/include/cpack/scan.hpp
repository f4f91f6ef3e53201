#pragma once

// Data-parallel scans over disk pairs and triples. Each kernel has an OpenMP
// version and a serial reference; both return records in the same
// lexicographic order, so results never depend on the schedule.

#include <cstddef>
#include <vector>

#include "cpack/analysis.hpp"
#include "cpack/geometry.hpp"

namespace cpack::scan {

struct PairRecord {
  std::size_t i;
  std::size_t j;
  PairRelation relation;
};

/// Every pair i < j whose relation is not disjoint.
std::vector<PairRecord> meeting_pairs(const DiskSet& ds, double tol, Exec exec);

struct TripleRecord {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Point witness;
};

/// Every triple i < j < k of pairwise-meeting disks with a common point.
/// `neighbors[i]` lists the j > i that meet disk i, sorted.
std::vector<TripleRecord> intersecting_triples(const DiskSet& ds,
                                               const std::vector<std::vector<std::size_t>>& neighbors,
                                               double tol, Exec exec);

/// Forward neighbor lists (j > i, sorted) from meeting_pairs output.
std::vector<std::vector<std::size_t>> forward_neighbors(std::size_t n,
                                                        const std::vector<PairRecord>& pairs);

}  // namespace cpack::scan

#include "cpack/scan.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cpack::scan {

namespace {

void scan_row(const DiskSet& ds, std::size_t i, double tol, std::vector<PairRecord>& out) {
  for (std::size_t j = i + 1; j < ds.size(); ++j) {
    PairRelation rel = pair_relation(ds[i], ds[j], tol);
    if (rel.kind != PairKind::disjoint) out.push_back({i, j, rel});
  }
}

void triples_at(const DiskSet& ds, const std::vector<std::vector<std::size_t>>& nb, std::size_t i,
                double tol, std::vector<TripleRecord>& out) {
  const auto& ni = nb[i];
  for (std::size_t a = 0; a < ni.size(); ++a) {
    const std::size_t j = ni[a];
    const auto& nj = nb[j];
    for (std::size_t b = a + 1; b < ni.size(); ++b) {
      const std::size_t k = ni[b];
      if (!std::binary_search(nj.begin(), nj.end(), k)) continue;
      const TripleResult t = triple_intersects(ds[i], ds[j], ds[k], tol);
      if (t.intersects) out.push_back({i, j, k, *t.witness});
    }
  }
}

// Runs body(i, rows[i]) for every i, in parallel when asked, then
// concatenates rows in index order.
template <typename Record, typename Body>
std::vector<Record> ordered_rows(std::size_t n, Exec exec, Body body) {
  std::vector<std::vector<Record>> rows(n);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i, rows[i]);
  } else {
    std::exception_ptr failure;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i), rows[static_cast<std::size_t>(i)]);
      } catch (...) {
#pragma omp critical(cpack_scan_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  std::vector<Record> out;
  out.reserve(total);
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace

std::vector<PairRecord> meeting_pairs(const DiskSet& ds, double tol, Exec exec) {
  return ordered_rows<PairRecord>(ds.size(), exec, [&](std::size_t i, std::vector<PairRecord>& row) {
    scan_row(ds, i, tol, row);
  });
}

std::vector<TripleRecord> intersecting_triples(const DiskSet& ds,
                                               const std::vector<std::vector<std::size_t>>& neighbors,
                                               double tol, Exec exec) {
  return ordered_rows<TripleRecord>(ds.size(), exec,
                                    [&](std::size_t i, std::vector<TripleRecord>& row) {
                                      triples_at(ds, neighbors, i, tol, row);
                                    });
}

std::vector<std::vector<std::size_t>> forward_neighbors(std::size_t n,
                                                        const std::vector<PairRecord>& pairs) {
  std::vector<std::vector<std::size_t>> nb(n);
  for (const PairRecord& p : pairs) nb[p.i].push_back(p.j);
  for (auto& row : nb) std::sort(row.begin(), row.end());
  return nb;
}

}  // namespace cpack::scan

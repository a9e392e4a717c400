#pragma once

#include <span>
#include <vector>

#include "ftt/index_matrix.hpp"
#include "ftt/lexsort.hpp"

namespace ftt {

/// Half-open position interval [lo, hi).
struct IndexRange {
  Index lo = 0;
  Index hi = 0;

  Index size() const { return hi - lo; }
  bool empty() const { return lo == hi; }

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// One matched contraction-edge key: the maximal run of positions holding
/// `key` on each side.
struct MatchedRange {
  IndexRange range_a;
  IndexRange range_b;
  Index key = 0;

  friend bool operator==(const MatchedRange&, const MatchedRange&) = default;
};

/// Maximal interval of positions equal to `key` in an ascending sequence;
/// an empty interval at the insertion point when absent.
IndexRange search_range(std::span<const Index> sorted_keys, Index key);

/// All keys present in both ascending sequences, with their maximal runs,
/// in ascending key order. Galloping merge: skips advance by exponential
/// search, so the cost is near-linear in the matched runs.
std::vector<MatchedRange> direct_intersection(std::span<const Index> keys_a,
                                              std::span<const Index> keys_b);

/// The map from an operand's internal-sorted rows to its unique external
/// rows: sorting permutation, first-occurrence positions, the strictly
/// ordered unique-row matrix, and the per-row surjection f with
/// unique_rows[f[j]] == external row j.
struct SurjectionMap {
  Permutation perm_i;
  std::vector<Index> uniques_u;
  std::vector<Index> f;
  IndexMatrix unique_rows;
};

SurjectionMap build_surjection(const IndexMatrix& external_rows);

}  // namespace ftt

#pragma once

#include <compare>
#include <span>
#include <utility>
#include <vector>

#include "ftt/index_matrix.hpp"

namespace ftt {

/// A bijection on [0, N). perm[new_position] = old_position, so composing
/// values[perm] yields the reordered sequence.
using Permutation = std::vector<Index>;

/// Block boundaries partitioning [0, N) into half-open ranges
/// [boundaries[k], boundaries[k+1]). Successive constrained sorts only
/// permute positions inside one block.
struct Domains {
  std::vector<Index> boundaries;

  static Domains whole(std::size_t n) {
    if (n == 0) return Domains{{0}};
    return Domains{{0, static_cast<Index>(n)}};
  }

  std::size_t block_count() const {
    return boundaries.empty() ? 0 : boundaries.size() - 1;
  }

  bool valid_for(std::size_t n) const;

  friend bool operator==(const Domains&, const Domains&) = default;
};

/// Lexicographic comparison of two equal-length tuples; the leftmost
/// differing position decides.
std::strong_ordering tuple_cmp(std::span<const Index> a,
                               std::span<const Index> b);

/// Mixed-radix linearization with the leftmost element most significant
/// (row-major). Order-preserving: a < b under tuple_cmp iff the keys
/// compare the same way. Throws if an entry is out of range or the radix
/// product overflows Index.
Index tuple_key(std::span<const Index> a, std::span<const Index> radices);

/// Inverse of tuple_key for in-range keys.
std::vector<Index> key_to_tuple(Index key, std::span<const Index> radices);

/// Stable argsort of `column` restricted to each domain block; positions
/// never cross block boundaries. Insertion sort below a small block size,
/// merge sort above it.
Permutation constrained_argsort(std::span<const Index> column,
                                const Domains& domains);

/// Refine `prior` with the positions where a block-sorted column changes
/// value inside a block. The result's boundary set contains the prior's.
Domains domains_from_sorted(std::span<const Index> column,
                            const Domains& prior);

/// Successive constrained argsort over columns 0..n-1. The returned
/// permutation puts rows in ssort (lexicographic, duplicates adjacent)
/// order, stably; the returned domains delimit maximal runs of equal rows.
std::pair<Permutation, Domains> lex_argsort(const IndexMatrix& indices);

/// First-occurrence positions of each distinct row of an ssorted matrix.
std::vector<Index> uniques(const IndexMatrix& sorted_indices);

}  // namespace ftt

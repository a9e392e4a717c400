#pragma once

#include <utility>
#include <vector>

#include "ftt/tensor.hpp"

namespace ftt {

/// True iff every adjacent row pair is strictly increasing under tuple_cmp.
bool is_well_ordered(const IndexMatrix& indices);

/// True iff every adjacent row pair is non-decreasing under tuple_cmp.
bool is_partially_ordered(const IndexMatrix& indices);

/// Lexicographically sort rows and sum data over duplicate index tuples.
/// Summation runs in ascending sorted position within each duplicate run,
/// so results are reproducible. Entries summing to exactly zero are kept.
std::pair<IndexMatrix, std::vector<double>> canonicalize_rows(
    const IndexMatrix& indices, const std::vector<double>& data);

/// canonicalize_rows applied to a tensor; the result has canonical=true.
/// A tensor already flagged canonical is returned unchanged.
SparseTensor canonicalize(const SparseTensor& t);

}  // namespace ftt

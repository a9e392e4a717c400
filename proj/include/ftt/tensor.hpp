#pragma once

#include <span>
#include <vector>

#include "ftt/index_matrix.hpp"
#include "ftt/lexsort.hpp"

namespace ftt {

// A sparse tensor in coordinate format: the dense shape, one index tuple
// per stored entry (a row of `indices`), and the parallel data vector.
// `canonical` is true iff the index rows are strictly lexicographically
// ordered with no duplicates. Values are immutable by convention once
// built; all operations return new tensors.
struct SparseTensor {
  std::vector<Index> shape;
  IndexMatrix indices;
  std::vector<double> data;
  bool canonical = false;

  SparseTensor() = default;

  /// Validating constructor. The input row order is preserved and the
  /// result is marked non-canonical; run canonicalize() to sort and
  /// merge duplicate rows.
  SparseTensor(std::vector<Index> shape, IndexMatrix indices,
               std::vector<double> data);

  std::size_t nnz() const { return data.size(); }
  std::size_t rank() const { return shape.size(); }

  /// Product of the shape entries (number of dense elements).
  Index dense_size() const;

  friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
    return a.shape == b.shape && a.indices == b.indices && a.data == b.data;
  }
};

/// A dense tensor: shape plus a row-major value buffer.
struct DenseTensor {
  std::vector<Index> shape;
  std::vector<double> values;

  DenseTensor() = default;
  DenseTensor(std::vector<Index> shape, std::vector<double> values);

  static DenseTensor zeros(std::vector<Index> shape);

  std::size_t rank() const { return shape.size(); }
  Index dense_size() const;

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.shape == b.shape && a.values == b.values;
  }
};

/// An ordered selection of distinct axis positions of one tensor.
struct AxisGroup {
  std::vector<Index> columns;

  friend bool operator==(const AxisGroup&, const AxisGroup&) = default;
};

/// nnz / dense size, in (0, 1]. Requires a canonical tensor; the ratio is
/// undefined over duplicate rows.
double sparsity(const SparseTensor& t);

/// Expand to the dense representation. Requires a canonical tensor.
DenseTensor to_dense(const SparseTensor& t);

/// Keep entries with |value| > tol. Row-major enumeration is already
/// lexicographic, so the result is canonical.
SparseTensor from_dense(const DenseTensor& d, double tol);

/// Reorder axes: output axis k is input axis perm[k]. The result is
/// marked non-canonical unless perm is the identity.
SparseTensor permute_axes(const SparseTensor& t, std::span<const Index> perm);

/// Dense counterpart of the sparse axis permutation.
DenseTensor permute_axes(const DenseTensor& d, std::span<const Index> perm);

/// Merge each group of axes into one axis whose index is the mixed-radix
/// key of the group's sub-tuple and whose extent is the product of the
/// group extents. The groups must partition the tensor's columns. Order
/// within each group follows the group's column list; the result stays
/// canonical when the concatenated group columns are 0..n-1 in order.
SparseTensor flatten_groups(const SparseTensor& t,
                            std::span<const AxisGroup> groups);

}  // namespace ftt

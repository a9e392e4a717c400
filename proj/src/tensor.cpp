#include "ftt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ftt {

namespace {

Index checked_size(std::span<const Index> shape, const char* what) {
  constexpr Index kMax = std::numeric_limits<Index>::max();
  Index total = 1;
  for (const Index extent : shape) {
    if (extent <= 0) {
      throw std::invalid_argument(std::string(what) +
                                  ": shape entries must be positive");
    }
    if (total > kMax / extent) {
      throw std::overflow_error(std::string(what) + ": dense size overflows");
    }
    total *= extent;
  }
  return total;
}

}  // namespace

SparseTensor::SparseTensor(std::vector<Index> shape_in, IndexMatrix indices_in,
                           std::vector<double> data_in)
    : shape(std::move(shape_in)),
      indices(std::move(indices_in)),
      data(std::move(data_in)),
      canonical(false) {
  checked_size(shape, "SparseTensor");
  if (indices.cols() != shape.size()) {
    throw std::invalid_argument(
        "SparseTensor: indices width " + std::to_string(indices.cols()) +
        " does not match shape rank " + std::to_string(shape.size()));
  }
  if (indices.rows() != data.size()) {
    throw std::invalid_argument(
        "SparseTensor: data length " + std::to_string(data.size()) +
        " does not match index row count " + std::to_string(indices.rows()));
  }
  for (std::size_t r = 0; r < indices.rows(); ++r) {
    for (std::size_t c = 0; c < indices.cols(); ++c) {
      const Index v = indices(r, c);
      if (v < 0 || v >= shape[c]) {
        throw std::invalid_argument(
            "SparseTensor: index " + std::to_string(v) + " out of bounds for "
            "axis " + std::to_string(c) + " with extent " +
            std::to_string(shape[c]));
      }
    }
  }
}

Index SparseTensor::dense_size() const { return checked_size(shape, "SparseTensor"); }

DenseTensor::DenseTensor(std::vector<Index> shape_in,
                         std::vector<double> values_in)
    : shape(std::move(shape_in)), values(std::move(values_in)) {
  const Index total = checked_size(shape, "DenseTensor");
  if (static_cast<Index>(values.size()) != total) {
    throw std::invalid_argument(
        "DenseTensor: value count " + std::to_string(values.size()) +
        " does not match dense size " + std::to_string(total));
  }
}

DenseTensor DenseTensor::zeros(std::vector<Index> shape) {
  const Index total = checked_size(shape, "DenseTensor");
  DenseTensor d;
  d.shape = std::move(shape);
  d.values.assign(static_cast<std::size_t>(total), 0.0);
  return d;
}

Index DenseTensor::dense_size() const { return checked_size(shape, "DenseTensor"); }

double sparsity(const SparseTensor& t) {
  if (!t.canonical) {
    throw std::invalid_argument("sparsity: tensor is not canonical");
  }
  return static_cast<double>(t.nnz()) / static_cast<double>(t.dense_size());
}

DenseTensor to_dense(const SparseTensor& t) {
  if (!t.canonical) {
    throw std::invalid_argument("to_dense: tensor is not canonical");
  }
  DenseTensor out = DenseTensor::zeros(t.shape);
  for (std::size_t r = 0; r < t.nnz(); ++r) {
    const Index lin = tuple_key(t.indices.row(r), t.shape);
    out.values[static_cast<std::size_t>(lin)] = t.data[r];
  }
  return out;
}

SparseTensor from_dense(const DenseTensor& d, double tol) {
  if (tol < 0) throw std::invalid_argument("from_dense: tol must be >= 0");
  std::vector<Index> kept;
  for (std::size_t lin = 0; lin < d.values.size(); ++lin) {
    if (std::abs(d.values[lin]) > tol) kept.push_back(static_cast<Index>(lin));
  }
  IndexMatrix indices(kept.size(), d.rank());
  std::vector<double> data(kept.size());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const auto tuple = key_to_tuple(kept[r], d.shape);
    std::copy(tuple.begin(), tuple.end(), indices.row(r).begin());
    data[r] = d.values[static_cast<std::size_t>(kept[r])];
  }
  SparseTensor t(d.shape, std::move(indices), std::move(data));
  t.canonical = true;
  return t;
}

namespace {

bool is_identity_perm(std::span<const Index> perm) {
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] != static_cast<Index>(k)) return false;
  }
  return true;
}

void check_permutation(std::span<const Index> perm, std::size_t rank,
                       const char* what) {
  if (perm.size() != rank) {
    throw std::invalid_argument(std::string(what) +
                                ": permutation length does not match rank");
  }
  std::vector<bool> seen(rank, false);
  for (const Index p : perm) {
    if (p < 0 || p >= static_cast<Index>(rank) ||
        seen[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument(std::string(what) +
                                  ": not a permutation of the axes");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
}

}  // namespace

SparseTensor permute_axes(const SparseTensor& t, std::span<const Index> perm) {
  check_permutation(perm, t.rank(), "permute_axes");
  if (is_identity_perm(perm)) return t;

  std::vector<Index> shape(t.rank());
  for (std::size_t k = 0; k < t.rank(); ++k) {
    shape[k] = t.shape[static_cast<std::size_t>(perm[k])];
  }
  SparseTensor out(std::move(shape), t.indices.gather_cols(perm), t.data);
  out.canonical = false;
  return out;
}

DenseTensor permute_axes(const DenseTensor& d, std::span<const Index> perm) {
  check_permutation(perm, d.rank(), "permute_axes");
  if (is_identity_perm(perm)) return d;

  const std::size_t rank = d.rank();
  std::vector<Index> shape(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    shape[k] = d.shape[static_cast<std::size_t>(perm[k])];
  }
  // stride of each input axis in the input buffer
  std::vector<Index> in_stride(rank, 1);
  for (std::size_t k = rank; k-- > 1;) {
    in_stride[k - 1] = in_stride[k] * d.shape[k];
  }
  DenseTensor out = DenseTensor::zeros(shape);
  std::vector<Index> coord(rank, 0);  // output coordinates
  for (std::size_t lin = 0; lin < out.values.size(); ++lin) {
    Index src = 0;
    for (std::size_t k = 0; k < rank; ++k) {
      src += coord[k] * in_stride[static_cast<std::size_t>(perm[k])];
    }
    out.values[lin] = d.values[static_cast<std::size_t>(src)];
    for (std::size_t k = rank; k-- > 0;) {
      if (++coord[k] < shape[k]) break;
      coord[k] = 0;
    }
  }
  return out;
}

SparseTensor flatten_groups(const SparseTensor& t,
                            std::span<const AxisGroup> groups) {
  std::vector<bool> covered(t.rank(), false);
  bool in_original_order = true;
  std::size_t expect = 0;
  for (const AxisGroup& g : groups) {
    for (const Index c : g.columns) {
      if (c < 0 || c >= static_cast<Index>(t.rank()) ||
          covered[static_cast<std::size_t>(c)]) {
        throw std::invalid_argument(
            "flatten_groups: groups must be disjoint in-range columns");
      }
      covered[static_cast<std::size_t>(c)] = true;
      if (c != static_cast<Index>(expect++)) in_original_order = false;
    }
  }
  if (expect != t.rank()) {
    throw std::invalid_argument("flatten_groups: groups miss a column");
  }

  std::vector<Index> shape(groups.size());
  std::vector<std::vector<Index>> radices(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    radices[g].reserve(groups[g].columns.size());
    for (const Index c : groups[g].columns) {
      radices[g].push_back(t.shape[static_cast<std::size_t>(c)]);
    }
    Index extent = 1;
    for (const Index r : radices[g]) extent *= r;  // bounded by dense_size
    shape[g] = extent;
  }

  IndexMatrix indices(t.nnz(), groups.size());
  std::vector<Index> sub;
  for (std::size_t r = 0; r < t.nnz(); ++r) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      sub.clear();
      for (const Index c : groups[g].columns) {
        sub.push_back(t.indices(r, static_cast<std::size_t>(c)));
      }
      indices(r, g) = tuple_key(sub, radices[g]);
    }
  }
  SparseTensor out(std::move(shape), std::move(indices), t.data);
  out.canonical = t.canonical && in_original_order;
  return out;
}

}  // namespace ftt

#include "ftt/canonical.hpp"

#include <stdexcept>

#include "ftt/lexsort.hpp"

namespace ftt {

bool is_well_ordered(const IndexMatrix& indices) {
  for (std::size_t r = 1; r < indices.rows(); ++r) {
    if (tuple_cmp(indices.row(r - 1), indices.row(r)) !=
        std::strong_ordering::less) {
      return false;
    }
  }
  return true;
}

bool is_partially_ordered(const IndexMatrix& indices) {
  for (std::size_t r = 1; r < indices.rows(); ++r) {
    if (tuple_cmp(indices.row(r - 1), indices.row(r)) ==
        std::strong_ordering::greater) {
      return false;
    }
  }
  return true;
}

std::pair<IndexMatrix, std::vector<double>> canonicalize_rows(
    const IndexMatrix& indices, const std::vector<double>& data) {
  if (indices.rows() != data.size()) {
    throw std::invalid_argument("canonicalize_rows: row/data length mismatch");
  }
  const auto [perm, domains] = lex_argsort(indices);
  const std::size_t n_unique = domains.block_count();

  IndexMatrix out_indices(n_unique, indices.cols());
  std::vector<double> out_data(n_unique);
  for (std::size_t k = 0; k < n_unique; ++k) {
    const auto lo = static_cast<std::size_t>(domains.boundaries[k]);
    const auto hi = static_cast<std::size_t>(domains.boundaries[k + 1]);
    const auto first = indices.row(static_cast<std::size_t>(perm[lo]));
    std::copy(first.begin(), first.end(), out_indices.row(k).begin());
    double sum = data[static_cast<std::size_t>(perm[lo])];
    for (std::size_t p = lo + 1; p < hi; ++p) {
      sum += data[static_cast<std::size_t>(perm[p])];
    }
    out_data[k] = sum;
  }
  return {std::move(out_indices), std::move(out_data)};
}

SparseTensor canonicalize(const SparseTensor& t) {
  if (t.canonical) return t;
  auto [indices, data] = canonicalize_rows(t.indices, t.data);
  SparseTensor out(t.shape, std::move(indices), std::move(data));
  out.canonical = true;
  return out;
}

}  // namespace ftt

#include "ftt/lexsort.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ftt {

bool Domains::valid_for(std::size_t n) const {
  if (boundaries.empty() || boundaries.front() != 0) return false;
  if (boundaries.back() != static_cast<Index>(n)) return false;
  for (std::size_t k = 1; k < boundaries.size(); ++k) {
    if (boundaries[k - 1] >= boundaries[k]) return false;
  }
  return true;
}

std::strong_ordering tuple_cmp(std::span<const Index> a,
                               std::span<const Index> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("tuple_cmp: length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      return a[i] < b[i] ? std::strong_ordering::less
                         : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

Index tuple_key(std::span<const Index> a, std::span<const Index> radices) {
  if (a.size() != radices.size()) {
    throw std::invalid_argument("tuple_key: tuple/radix length mismatch");
  }
  constexpr Index kMax = std::numeric_limits<Index>::max();
  Index key = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Index r = radices[i];
    if (r <= 0) throw std::invalid_argument("tuple_key: radix must be positive");
    if (a[i] < 0 || a[i] >= r) {
      throw std::invalid_argument("tuple_key: entry " + std::to_string(a[i]) +
                                  " out of radix range [0, " +
                                  std::to_string(r) + ")");
    }
    if (key > (kMax - a[i]) / r) {
      throw std::overflow_error("tuple_key: radix product overflows");
    }
    key = key * r + a[i];
  }
  return key;
}

std::vector<Index> key_to_tuple(Index key, std::span<const Index> radices) {
  std::vector<Index> out(radices.size());
  for (std::size_t i = radices.size(); i-- > 0;) {
    const Index r = radices[i];
    if (r <= 0) {
      throw std::invalid_argument("key_to_tuple: radix must be positive");
    }
    out[i] = key % r;
    key /= r;
  }
  if (key != 0) throw std::invalid_argument("key_to_tuple: key out of range");
  return out;
}

namespace {

constexpr std::size_t kInsertionCutoff = 32;

void insertion_argsort(std::span<const Index> keys, Index* idx,
                       std::size_t len) {
  for (std::size_t i = 1; i < len; ++i) {
    const Index v = idx[i];
    const Index kv = keys[static_cast<std::size_t>(v)];
    std::size_t j = i;
    while (j > 0 && keys[static_cast<std::size_t>(idx[j - 1])] > kv) {
      idx[j] = idx[j - 1];
      --j;
    }
    idx[j] = v;
  }
}

void merge_argsort(std::span<const Index> keys, Index* idx, Index* scratch,
                   std::size_t len) {
  if (len <= kInsertionCutoff) {
    insertion_argsort(keys, idx, len);
    return;
  }
  const std::size_t half = len / 2;
  merge_argsort(keys, idx, scratch, half);
  merge_argsort(keys, idx + half, scratch, len - half);

  std::copy(idx, idx + len, scratch);
  std::size_t l = 0, r = half, o = 0;
  while (l < half && r < len) {
    // left first on ties keeps the sort stable
    if (keys[static_cast<std::size_t>(scratch[r])] <
        keys[static_cast<std::size_t>(scratch[l])]) {
      idx[o++] = scratch[r++];
    } else {
      idx[o++] = scratch[l++];
    }
  }
  while (l < half) idx[o++] = scratch[l++];
  while (r < len) idx[o++] = scratch[r++];
}

}  // namespace

Permutation constrained_argsort(std::span<const Index> column,
                                const Domains& domains) {
  if (!domains.valid_for(column.size())) {
    throw std::invalid_argument("constrained_argsort: invalid domains");
  }
  Permutation perm(column.size());
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<Index> scratch(column.size());
  for (std::size_t k = 0; k + 1 < domains.boundaries.size(); ++k) {
    const auto lo = static_cast<std::size_t>(domains.boundaries[k]);
    const auto hi = static_cast<std::size_t>(domains.boundaries[k + 1]);
    merge_argsort(column, perm.data() + lo, scratch.data(), hi - lo);
  }
  return perm;
}

Domains domains_from_sorted(std::span<const Index> column,
                            const Domains& prior) {
  if (!prior.valid_for(column.size())) {
    throw std::invalid_argument("domains_from_sorted: invalid prior domains");
  }
  Domains out;
  out.boundaries.reserve(prior.boundaries.size());
  out.boundaries.push_back(0);
  for (std::size_t k = 0; k + 1 < prior.boundaries.size(); ++k) {
    const auto lo = static_cast<std::size_t>(prior.boundaries[k]);
    const auto hi = static_cast<std::size_t>(prior.boundaries[k + 1]);
    for (std::size_t p = lo + 1; p < hi; ++p) {
      if (column[p] != column[p - 1]) {
        out.boundaries.push_back(static_cast<Index>(p));
      }
    }
    out.boundaries.push_back(static_cast<Index>(hi));
  }
  return out;
}

std::pair<Permutation, Domains> lex_argsort(const IndexMatrix& indices) {
  const std::size_t n_rows = indices.rows();
  Permutation order(n_rows);
  std::iota(order.begin(), order.end(), Index{0});
  Domains domains = Domains::whole(n_rows);

  std::vector<Index> column(n_rows);
  for (std::size_t c = 0; c < indices.cols(); ++c) {
    for (std::size_t p = 0; p < n_rows; ++p) {
      column[p] = indices(static_cast<std::size_t>(order[p]), c);
    }
    const Permutation block_perm = constrained_argsort(column, domains);

    Permutation next(n_rows);
    std::vector<Index> sorted_column(n_rows);
    for (std::size_t p = 0; p < n_rows; ++p) {
      next[p] = order[static_cast<std::size_t>(block_perm[p])];
      sorted_column[p] = column[static_cast<std::size_t>(block_perm[p])];
    }
    order = std::move(next);
    domains = domains_from_sorted(sorted_column, domains);
  }
  return {std::move(order), std::move(domains)};
}

std::vector<Index> uniques(const IndexMatrix& sorted_indices) {
  std::vector<Index> out;
  if (sorted_indices.rows() == 0) return out;
  out.push_back(0);
  for (std::size_t r = 1; r < sorted_indices.rows(); ++r) {
    const auto cmp = tuple_cmp(sorted_indices.row(r - 1), sorted_indices.row(r));
    if (cmp == std::strong_ordering::greater) {
      throw std::invalid_argument("uniques: rows are not sorted");
    }
    if (cmp == std::strong_ordering::less) {
      out.push_back(static_cast<Index>(r));
    }
  }
  return out;
}

}  // namespace ftt

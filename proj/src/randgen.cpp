#include "ftt/randgen.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace ftt {

namespace {

Index checked_product(std::span<const Index> shape) {
  constexpr Index kMax = std::numeric_limits<Index>::max();
  Index total = 1;
  for (const Index extent : shape) {
    if (extent <= 0) {
      throw std::invalid_argument("random tensor: shape entries must be positive");
    }
    if (total > kMax / extent) {
      throw std::overflow_error("random tensor: dense size overflows");
    }
    total *= extent;
  }
  return total;
}

}  // namespace

SparseTensor random_sparse(std::vector<Index> shape, Index nnz,
                           std::uint64_t seed) {
  const Index size = checked_product(shape);
  if (nnz < 0 || nnz > size) {
    throw std::invalid_argument("random_sparse: nnz outside [0, dense size]");
  }

  SplitMix64 rng(seed);
  std::vector<Index> keys;
  keys.reserve(static_cast<std::size_t>(nnz));
  if (nnz <= size / 2) {
    // sparse regime: rejection on duplicate linearized coordinates
    std::unordered_set<Index> seen;
    while (static_cast<Index>(keys.size()) < nnz) {
      const auto k =
          static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(size)));
      if (seen.insert(k).second) keys.push_back(k);
    }
  } else {
    // dense regime: shuffle-prefix over the whole coordinate space
    std::vector<Index> all(static_cast<std::size_t>(size));
    std::iota(all.begin(), all.end(), Index{0});
    for (Index i = 0; i < nnz; ++i) {
      const auto j =
          i + static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(size - i)));
      std::swap(all[static_cast<std::size_t>(i)],
                all[static_cast<std::size_t>(j)]);
    }
    keys.assign(all.begin(), all.begin() + nnz);
  }
  std::sort(keys.begin(), keys.end());

  IndexMatrix indices(static_cast<std::size_t>(nnz), shape.size());
  for (std::size_t r = 0; r < indices.rows(); ++r) {
    const auto tuple = key_to_tuple(keys[r], shape);
    std::copy(tuple.begin(), tuple.end(), indices.row(r).begin());
  }
  // data drawn after the keys, in final (sorted) row order, so the tensor
  // is a pure function of (shape, nnz, seed)
  std::vector<double> data(static_cast<std::size_t>(nnz));
  for (double& v : data) v = rng.symmetric();

  SparseTensor t(std::move(shape), std::move(indices), std::move(data));
  t.canonical = true;
  return t;
}

DenseTensor random_dense(std::vector<Index> shape, std::uint64_t seed) {
  const Index size = checked_product(shape);
  SplitMix64 rng(seed);
  std::vector<double> values(static_cast<std::size_t>(size));
  for (double& v : values) v = rng.symmetric();
  return {std::move(shape), std::move(values)};
}

}  // namespace ftt

#pragma once

#include <cstdint>
#include <vector>

#include "ftt/tensor.hpp"

namespace ftt {

// SplitMix64: golden-gamma state advance, two xor-multiply mixing rounds.
// Chosen because it is trivially portable, so fixed-seed golden values in
// the tests and fixtures stay stable across platforms and languages.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n) without modulo bias: reject draws below 2^64 mod n
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // uniform in [0, 1), 53 random mantissa bits
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-1, 1)
  double symmetric() { return 2.0 * unit() - 1.0; }
};

// Exactly nnz distinct coordinates sampled uniformly without replacement,
// data uniform in [-1, 1). Deterministic in (shape, nnz, seed); the result
// is canonical.
SparseTensor random_sparse(std::vector<Index> shape, Index nnz,
                           std::uint64_t seed);

// Dense tensor with every value uniform in [-1, 1), row-major draw order.
DenseTensor random_dense(std::vector<Index> shape, std::uint64_t seed);

}  // namespace ftt

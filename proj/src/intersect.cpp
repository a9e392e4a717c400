#include "ftt/intersect.hpp"

#include <algorithm>

namespace ftt {

IndexRange search_range(std::span<const Index> sorted_keys, Index key) {
  const auto [lo, hi] =
      std::equal_range(sorted_keys.begin(), sorted_keys.end(), key);
  return {static_cast<Index>(lo - sorted_keys.begin()),
          static_cast<Index>(hi - sorted_keys.begin())};
}

namespace {

// First position >= target in keys[from..), found by exponential probing
// followed by a bounded binary search.
std::size_t gallop_lower(std::span<const Index> keys, std::size_t from,
                         Index target) {
  std::size_t step = 1;
  std::size_t hi = from;
  while (hi < keys.size() && keys[hi] < target) {
    from = hi + 1;
    hi += step;
    step *= 2;
  }
  hi = std::min(hi, keys.size());
  return static_cast<std::size_t>(
      std::lower_bound(keys.begin() + from, keys.begin() + hi, target) -
      keys.begin());
}

// One past the last position equal to keys[from] in keys[from..).
std::size_t gallop_run_end(std::span<const Index> keys, std::size_t from) {
  const Index value = keys[from];
  std::size_t step = 1;
  std::size_t hi = from + 1;
  std::size_t lo = hi;
  while (hi < keys.size() && keys[hi] == value) {
    lo = hi + 1;
    hi += step;
    step *= 2;
  }
  hi = std::min(hi, keys.size());
  return static_cast<std::size_t>(
      std::upper_bound(keys.begin() + lo, keys.begin() + hi, value) -
      keys.begin());
}

}  // namespace

std::vector<MatchedRange> direct_intersection(std::span<const Index> keys_a,
                                              std::span<const Index> keys_b) {
  std::vector<MatchedRange> out;
  std::size_t i = 0, j = 0;
  while (i < keys_a.size() && j < keys_b.size()) {
    if (keys_a[i] < keys_b[j]) {
      i = gallop_lower(keys_a, i, keys_b[j]);
    } else if (keys_b[j] < keys_a[i]) {
      j = gallop_lower(keys_b, j, keys_a[i]);
    } else {
      const std::size_t ia = gallop_run_end(keys_a, i);
      const std::size_t jb = gallop_run_end(keys_b, j);
      out.push_back({{static_cast<Index>(i), static_cast<Index>(ia)},
                     {static_cast<Index>(j), static_cast<Index>(jb)},
                     keys_a[i]});
      i = ia;
      j = jb;
    }
  }
  return out;
}

SurjectionMap build_surjection(const IndexMatrix& external_rows) {
  SurjectionMap map;
  auto [perm, domains] = lex_argsort(external_rows);
  map.perm_i = std::move(perm);

  const IndexMatrix sorted = external_rows.gather_rows(map.perm_i);
  map.uniques_u = uniques(sorted);
  map.unique_rows = sorted.gather_rows(map.uniques_u);

  // f_sorted[p] = which unique row position p of the sorted order holds
  const std::size_t n = external_rows.rows();
  std::vector<Index> f_sorted(n);
  for (std::size_t u = 0; u < map.uniques_u.size(); ++u) {
    const auto lo = static_cast<std::size_t>(map.uniques_u[u]);
    const auto hi = u + 1 < map.uniques_u.size()
                        ? static_cast<std::size_t>(map.uniques_u[u + 1])
                        : n;
    for (std::size_t p = lo; p < hi; ++p) f_sorted[p] = static_cast<Index>(u);
  }

  // compose with the inverse sort permutation to recover the input order
  map.f.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    map.f[static_cast<std::size_t>(map.perm_i[p])] = f_sorted[p];
  }
  return map;
}

}  // namespace ftt

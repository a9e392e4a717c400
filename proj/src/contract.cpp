#include "ftt/contract.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "ftt/canonical.hpp"
#include "ftt/intersect.hpp"
#include "ftt/oracle.hpp"

namespace ftt {

namespace {

void check_operand(std::span<const Index> shape,
                   const std::vector<char>& labels,
                   const std::map<char, Index>& extents, const char* which) {
  if (shape.size() != labels.size()) {
    throw std::invalid_argument(std::string("contract: operand ") + which +
                                " rank does not match plan");
  }
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (shape[k] != extents.at(labels[k])) {
      throw std::invalid_argument(std::string("contract: operand ") + which +
                                  " extent mismatch on label '" + labels[k] +
                                  "'");
    }
  }
}

// a product destined for one output coordinate
struct Tagged {
  Index key;
  double value;
};

// stable LSD radix sort over the low `bytes` bytes of the keys; the big
// pair lists sort in O(bytes * n) instead of comparison cost
void radix_sort_tagged(std::vector<Tagged>& v, int bytes) {
  std::vector<Tagged> buf(v.size());
  for (int pass = 0; pass < bytes; ++pass) {
    const int shift = 8 * pass;
    std::size_t offset[256] = {};
    for (const Tagged& t : v) {
      ++offset[static_cast<std::size_t>(t.key >> shift) & 0xff];
    }
    std::size_t pos = 0;
    for (std::size_t b = 0; b < 256; ++b) {
      pos += std::exchange(offset[b], pos);
    }
    for (const Tagged& t : v) {
      buf[offset[static_cast<std::size_t>(t.key >> shift) & 0xff]++] = t;
    }
    v.swap(buf);
  }
}

void sort_tagged(std::vector<Tagged>& v) {
  if (v.size() >= 32768) {
    Index max_key = 0;
    for (const Tagged& t : v) max_key = std::max(max_key, t.key);
    const int bits = std::bit_width(static_cast<std::uint64_t>(max_key));
    radix_sort_tagged(v, std::max(1, (bits + 7) / 8));
    return;
  }
  std::sort(v.begin(), v.end(),
            [](const Tagged& x, const Tagged& y) { return x.key < y.key; });
}

// One operand readied for intersection: ascending overlap keys, data in
// key-sorted order, and the surjection over its external rows in that
// same order.
struct SortedOperand {
  std::vector<Index> keys;
  std::vector<double> data;
  SurjectionMap ext;
};

SortedOperand prepare_operand(const SparseTensor& t,
                              const AxisGroup& overlap_group,
                              std::span<const Index> overlap_extents,
                              const AxisGroup& external_group) {
  const std::size_t n = t.nnz();
  const IndexMatrix overlap = t.indices.gather_cols(overlap_group.columns);
  std::vector<Index> keys(n);
  for (std::size_t r = 0; r < n; ++r) {
    keys[r] = tuple_key(overlap.row(r), overlap_extents);
  }
  const Permutation perm = constrained_argsort(keys, Domains::whole(n));

  SortedOperand out;
  out.keys.resize(n);
  out.data.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    out.keys[p] = keys[static_cast<std::size_t>(perm[p])];
    out.data[p] = t.data[static_cast<std::size_t>(perm[p])];
  }
  out.ext = build_surjection(
      t.indices.gather_rows(perm).gather_cols(external_group.columns));
  return out;
}

}  // namespace

SparseTensor contract_sparse_sparse(const SparseTensor& a,
                                    const SparseTensor& b,
                                    const ContractionPlan& plan,
                                    ContractStats* stats) {
  check_operand(a.shape, plan.labels_a, plan.extents, "A");
  check_operand(b.shape, plan.labels_b, plan.extents, "B");
  const SparseTensor ca = canonicalize(a);
  const SparseTensor cb = canonicalize(b);

  const std::vector<Index> overlap_extents = plan.overlap_extents();
  const SortedOperand sa =
      prepare_operand(ca, plan.overlap_group_a(), overlap_extents,
                      plan.external_a);
  const SortedOperand sb =
      prepare_operand(cb, plan.overlap_group_b(), overlap_extents,
                      plan.external_b);

  const std::vector<MatchedRange> matches =
      direct_intersection(sa.keys, sb.keys);
  long long pairs = 0;
  for (const MatchedRange& m : matches) {
    pairs += static_cast<long long>(m.range_a.size()) * m.range_b.size();
  }
  if (stats) stats->mult_count += pairs;

  // output shape straight in output_labels order
  const std::vector<Index> ext_a = plan.external_extents_a();
  const std::vector<Index> ext_b = plan.external_extents_b();
  std::vector<Index> concat_shape = ext_a;
  concat_shape.insert(concat_shape.end(), ext_b.begin(), ext_b.end());
  const std::size_t rank_out = concat_shape.size();
  std::vector<Index> out_shape(rank_out);
  for (std::size_t k = 0; k < rank_out; ++k) {
    out_shape[k] = concat_shape[static_cast<std::size_t>(plan.output_perm[k])];
  }

  // mixed-radix weight of each concatenated column under the output axis
  // order, so a product's output coordinate key splits into an A part plus
  // a B part, each computable once per unique external row
  std::vector<Index> weight(rank_out, 1);
  {
    std::vector<Index> w_out(rank_out, 1);
    for (std::size_t k = rank_out; k-- > 1;) {
      w_out[k - 1] = w_out[k] * out_shape[k];
    }
    for (std::size_t k = 0; k < rank_out; ++k) {
      weight[static_cast<std::size_t>(plan.output_perm[k])] = w_out[k];
    }
  }
  const auto row_keys = [&weight](const IndexMatrix& rows, std::size_t col0) {
    std::vector<Index> keys(rows.rows());
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      Index key = 0;
      for (std::size_t c = 0; c < rows.cols(); ++c) {
        key += rows(r, c) * weight[col0 + c];
      }
      keys[r] = key;
    }
    return keys;
  };
  const std::vector<Index> key_a = row_keys(sa.ext.unique_rows, 0);
  const std::vector<Index> key_b = row_keys(sb.ext.unique_rows, ext_a.size());

  // every product, tagged by its output coordinate key; keys ascend exactly
  // as the output rows do, so sorting and summing duplicate runs lands the
  // result directly in canonical order with no further permutation
  std::vector<Tagged> tagged(static_cast<std::size_t>(pairs));
  std::size_t w = 0;
  for (const MatchedRange& m : matches) {
    for (Index ra = m.range_a.lo; ra < m.range_a.hi; ++ra) {
      const Index base = key_a[static_cast<std::size_t>(
          sa.ext.f[static_cast<std::size_t>(ra)])];
      const double va = sa.data[static_cast<std::size_t>(ra)];
      for (Index rb = m.range_b.lo; rb < m.range_b.hi; ++rb) {
        tagged[w].key = base + key_b[static_cast<std::size_t>(
                                   sb.ext.f[static_cast<std::size_t>(rb)])];
        tagged[w].value = va * sb.data[static_cast<std::size_t>(rb)];
        ++w;
      }
    }
  }
  sort_tagged(tagged);
  std::size_t uniq = 0;
  for (std::size_t r = 0; r < tagged.size();) {
    const Index key = tagged[r].key;
    double sum = 0.0;
    while (r < tagged.size() && tagged[r].key == key) sum += tagged[r++].value;
    tagged[uniq].key = key;
    tagged[uniq].value = sum;
    ++uniq;
  }

  IndexMatrix out_rows(uniq, rank_out);
  std::vector<double> out_data(uniq);
  std::vector<Index> digits(rank_out, 0);
  Index prev = 0;
  for (std::size_t r = 0; r < uniq; ++r) {
    // advance the mixed-radix digits by the key delta, rightmost first;
    // sorted keys sit close together, so carries rarely travel far
    Index carry = tagged[r].key - prev;
    prev = tagged[r].key;
    for (std::size_t k = rank_out; carry != 0 && k-- > 0;) {
      const Index t = digits[k] + carry;
      digits[k] = t % out_shape[k];
      carry = t / out_shape[k];
    }
    for (std::size_t k = 0; k < rank_out; ++k) out_rows(r, k) = digits[k];
    out_data[r] = tagged[r].value;
  }

  SparseTensor result(std::move(out_shape), std::move(out_rows),
                      std::move(out_data));
  result.canonical = true;

  if (static_cast<Index>(result.nnz()) > result.dense_size()) {
    throw std::logic_error(
        "contract: result rows exceed the external index product");
  }
  return result;
}

DenseTensor contract_sparse_dense(const SparseTensor& a, const DenseTensor& b,
                                  const ContractionPlan& plan,
                                  ContractStats* stats) {
  check_operand(a.shape, plan.labels_a, plan.extents, "A");
  check_operand(b.shape, plan.labels_b, plan.extents, "B");
  const SparseTensor ca = canonicalize(a);

  // lay the dense side out as [overlap edge order || its externals] so each
  // sparse entry scales one contiguous slice
  std::vector<Index> dense_perm = plan.overlap_group_b().columns;
  const AxisGroup& ext_cols_b = plan.external_b;
  dense_perm.insert(dense_perm.end(), ext_cols_b.columns.begin(),
                    ext_cols_b.columns.end());
  const DenseTensor bt = permute_axes(b, dense_perm);

  const std::vector<Index> overlap_extents = plan.overlap_extents();
  const std::vector<Index> ext_a = plan.external_extents_a();
  const std::vector<Index> ext_b = plan.external_extents_b();
  Index slice = 1;
  for (const Index e : ext_b) slice *= e;

  std::vector<Index> out_shape = ext_a;
  out_shape.insert(out_shape.end(), ext_b.begin(), ext_b.end());
  DenseTensor out = DenseTensor::zeros(std::move(out_shape));

  const IndexMatrix overlap =
      ca.indices.gather_cols(plan.overlap_group_a().columns);
  const IndexMatrix external =
      ca.indices.gather_cols(plan.external_a.columns);
  for (std::size_t r = 0; r < ca.nnz(); ++r) {
    const Index ii = tuple_key(overlap.row(r), overlap_extents);
    const Index ie = tuple_key(external.row(r), ext_a);
    const double v = ca.data[r];
    const double* src = bt.values.data() + ii * slice;
    double* dst = out.values.data() + ie * slice;
    for (Index j = 0; j < slice; ++j) dst[j] += v * src[j];
    if (stats) stats->mult_count += slice;
  }
  return permute_axes(out, plan.output_perm);
}

Tensor contract_pair(const Tensor& a, const Tensor& b, const std::string& spec,
                     ContractStats* stats) {
  const auto* sa = std::get_if<SparseTensor>(&a);
  const auto* sb = std::get_if<SparseTensor>(&b);
  const auto* da = std::get_if<DenseTensor>(&a);
  const auto* db = std::get_if<DenseTensor>(&b);

  if (sa && sb) {
    const auto plan = make_plan(spec, sa->shape, sb->shape);
    return contract_sparse_sparse(*sa, *sb, plan, stats);
  }
  if (sa && db) {
    const auto plan = make_plan(spec, sa->shape, db->shape);
    return contract_sparse_dense(*sa, *db, plan, stats);
  }
  if (da && sb) {
    // commute so the sparse operand drives the kernel; the output labels
    // keep their order, so the result is unchanged
    ParsedSubscripts parsed = parse_subscripts(spec);
    std::swap(parsed.labels_a, parsed.labels_b);
    const auto plan = build_plan(parsed, sb->shape, da->shape);
    return contract_sparse_dense(*sb, *da, plan, stats);
  }
  const auto plan = make_plan(spec, da->shape, db->shape);
  return dense_contract(*da, *db, plan);
}

Tensor contract_path(const std::vector<Tensor>& operands,
                     const std::vector<std::string>& specs,
                     ContractStats* stats) {
  if (operands.size() != specs.size() + 1 || specs.empty()) {
    throw std::invalid_argument(
        "contract_path: need one more operand than specs");
  }
  Tensor result = operands.front();
  for (std::size_t k = 0; k < specs.size(); ++k) {
    result = contract_pair(result, operands[k + 1], specs[k], stats);
  }
  return result;
}

}  // namespace ftt

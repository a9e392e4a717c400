#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "ftt/canonical.hpp"
#include "ftt/contract.hpp"
#include "ftt/oracle.hpp"
#include "ftt/randgen.hpp"

using namespace ftt;

namespace {

double tol_for(const DenseTensor& oracle) {
  double m = 1.0;
  for (const double v : oracle.values) m = std::max(m, std::abs(v));
  return 1e-12 * m;
}

SparseTensor sparse_identity(Index n) {
  IndexMatrix indices(static_cast<std::size_t>(n), 2);
  std::vector<double> data(static_cast<std::size_t>(n), 1.0);
  for (Index i = 0; i < n; ++i) {
    indices(static_cast<std::size_t>(i), 0) = i;
    indices(static_cast<std::size_t>(i), 1) = i;
  }
  SparseTensor t({n, n}, std::move(indices), std::move(data));
  t.canonical = true;
  return t;
}

// random sparse operands contracted per spec, checked against the dense
// brute-force result
void check_against_oracle(const std::string& spec,
                          const std::vector<Index>& shape_a,
                          const std::vector<Index>& shape_b,
                          std::uint64_t seed) {
  SplitMix64 rng(seed);
  const SparseTensor a = random_sparse(
      shape_a, 1 + static_cast<Index>(rng.bounded(12)), rng.next());
  const SparseTensor b = random_sparse(
      shape_b, 1 + static_cast<Index>(rng.bounded(12)), rng.next());
  const ContractionPlan plan = make_plan(spec, shape_a, shape_b);

  const SparseTensor got = contract_sparse_sparse(a, b, plan);
  const DenseTensor want = dense_contract(to_dense(a), to_dense(b), plan);

  CHECK(got.canonical);
  CHECK(is_well_ordered(got.indices));
  CHECK(static_cast<Index>(got.nnz()) <= got.dense_size());
  CHECK(max_abs_diff(to_dense(got), want) <= tol_for(want));
}

}  // namespace

TEST_CASE("contract_sparse_sparse identity times a matrix") {
  const SparseTensor eye = sparse_identity(2);
  const DenseTensor m({2, 2}, {1.0, 2.0, 3.0, 4.0});
  const SparseTensor ms = from_dense(m, 0.0);
  const ContractionPlan plan = make_plan("ab,bc->ac", eye.shape, ms.shape);
  const SparseTensor out = contract_sparse_sparse(eye, ms, plan);
  CHECK(out.canonical);
  CHECK(to_dense(out) == m);
}

TEST_CASE("contract_sparse_sparse direct product") {
  SparseTensor a({2}, IndexMatrix::from_rows({{0}, {1}}), {2.0, 3.0});
  SparseTensor b({3}, IndexMatrix::from_rows({{0}, {2}}), {5.0, 7.0});
  a.canonical = true;
  b.canonical = true;
  const ContractionPlan plan = make_plan("a,b->ab", a.shape, b.shape);
  ContractStats stats;
  const SparseTensor out = contract_sparse_sparse(a, b, plan, &stats);
  // no overlap labels: every pair of stored entries survives
  CHECK(out.nnz() == a.nnz() * b.nnz());
  CHECK(stats.mult_count == 4);
  const DenseTensor want =
      dense_contract(to_dense(a), to_dense(b), plan);
  CHECK(to_dense(out) == want);
}

TEST_CASE("contract_sparse_sparse full trace") {
  const DenseTensor da({2, 3}, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  const DenseTensor db({2, 3}, {6.0, 5.0, 4.0, 3.0, 2.0, 1.0});
  const ContractionPlan plan = make_plan("ab,ab->", da.shape, db.shape);
  const SparseTensor out =
      contract_sparse_sparse(from_dense(da, 0.0), from_dense(db, 0.0), plan);
  CHECK(out.shape.empty());
  REQUIRE(out.nnz() == 1);
  CHECK(out.data[0] == 56.0);
}

TEST_CASE("contract_sparse_sparse matches the dense oracle across plans") {
  const std::vector<Index> s45{4, 5}, s56{5, 6}, s44{4, 4};
  const std::vector<Index> mpo{3, 3, 2, 2};
  const std::vector<Index> s342{3, 4, 2}, s45b{4, 5};
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    check_against_oracle("ab,bc->ac", s45, s56, seed);
    check_against_oracle("ab,bc->ca", s45, s56, 100 + seed);
    check_against_oracle("ab,cb->ac", s45, {6, 5}, 200 + seed);
    check_against_oracle("ab,ab->", s45, s45, 300 + seed);
    check_against_oracle("ab,cd->abcd", s44, s44, 400 + seed);
    check_against_oracle("ABab,BCcd->ACabcd", mpo, mpo, 500 + seed);
    check_against_oracle("abc,bd->adc", s342, s45b, 600 + seed);
  }
}

TEST_CASE("contract_sparse_sparse accepts non-canonical input") {
  // duplicate and out-of-order rows; (1,0) carries 2 + 4 = 6
  const SparseTensor messy({2, 2},
                           IndexMatrix::from_rows({{1, 0}, {0, 1}, {1, 0}}),
                           {2.0, 3.0, 4.0});
  CHECK_FALSE(messy.canonical);
  const SparseTensor eye = sparse_identity(2);
  const ContractionPlan plan = make_plan("ab,bc->ac", messy.shape, eye.shape);
  const SparseTensor out = contract_sparse_sparse(messy, eye, plan);
  CHECK(out == canonicalize(messy));
}

TEST_CASE("contract_sparse_sparse is bilinear in the stored data") {
  const std::vector<Index> shape{4, 4};
  const SparseTensor a = random_sparse(shape, 7, 91);
  const SparseTensor b = random_sparse(shape, 9, 92);
  const ContractionPlan plan = make_plan("ab,bc->ac", shape, shape);
  const SparseTensor base = contract_sparse_sparse(a, b, plan);

  SparseTensor doubled = a;
  for (double& v : doubled.data) v *= 2.0;  // exact in floating point
  const SparseTensor out = contract_sparse_sparse(doubled, b, plan);
  REQUIRE(out.nnz() == base.nnz());
  CHECK(out.indices == base.indices);
  for (std::size_t i = 0; i < out.nnz(); ++i) {
    CHECK(out.data[i] == 2.0 * base.data[i]);
  }
}

TEST_CASE("mult_count equals the classic bound at full density") {
  const Index n = 8;
  const std::vector<Index> shape{n, n};
  const SparseTensor a = random_sparse(shape, n * n, 5);
  const SparseTensor b = random_sparse(shape, n * n, 6);
  const ContractionPlan plan = make_plan("ab,bc->ac", shape, shape);
  ContractStats stats;
  contract_sparse_sparse(a, b, plan, &stats);
  CHECK(stats.mult_count == 512);  // n^3

  ContractStats dstats;
  contract_sparse_dense(a, to_dense(b), plan, &dstats);
  CHECK(dstats.mult_count == 512);
}

TEST_CASE("contracting an empty operand yields an empty result") {
  const SparseTensor empty({3, 4}, IndexMatrix(0, 2), {});
  const SparseTensor b = random_sparse({4, 2}, 5, 17);
  const ContractionPlan plan = make_plan("ab,bc->ac", empty.shape, b.shape);
  ContractStats stats;
  const SparseTensor out = contract_sparse_sparse(empty, b, plan, &stats);
  CHECK(out.shape == std::vector<Index>{3, 2});
  CHECK(out.nnz() == 0);
  CHECK(stats.mult_count == 0);
}

TEST_CASE("contract_sparse_sparse rejects operands that do not fit the plan") {
  const SparseTensor a = random_sparse({2, 3}, 3, 1);
  const SparseTensor b = random_sparse({3, 4}, 3, 2);
  const ContractionPlan plan = make_plan("ab,bc->ac", a.shape, b.shape);
  CHECK_THROWS_WITH_AS(contract_sparse_sparse(b, a, plan),
                       "contract: operand A extent mismatch on label 'a'",
                       std::invalid_argument);
  const SparseTensor vec = random_sparse({3}, 2, 3);
  CHECK_THROWS_WITH_AS(contract_sparse_sparse(a, vec, plan),
                       "contract: operand B rank does not match plan",
                       std::invalid_argument);
}

TEST_CASE("contract_sparse_dense identity and empty cases") {
  const DenseTensor m({2, 2}, {1.0, 2.0, 3.0, 4.0});
  const ContractionPlan plan = make_plan("ab,bc->ac", m.shape, m.shape);
  CHECK(contract_sparse_dense(sparse_identity(2), m, plan) == m);

  const SparseTensor empty({2, 2}, IndexMatrix(0, 2), {});
  CHECK(contract_sparse_dense(empty, m, plan) == DenseTensor::zeros({2, 2}));
}

TEST_CASE("contract_sparse_dense matches the dense oracle") {
  const std::vector<std::pair<std::string,
                              std::pair<std::vector<Index>, std::vector<Index>>>>
      cases{
          {"ab,bc->ac", {{4, 5}, {5, 6}}},
          {"ab,bc->ca", {{4, 5}, {5, 6}}},
          {"ab,ab->", {{4, 5}, {4, 5}}},
          {"abc,bd->adc", {{3, 4, 2}, {4, 5}}},
          {"ab,cd->abcd", {{3, 4}, {2, 5}}},
      };
  for (const auto& [spec, shapes] : cases) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      SplitMix64 rng(7000 + seed);
      const SparseTensor a = random_sparse(
          shapes.first, 1 + static_cast<Index>(rng.bounded(10)), rng.next());
      const DenseTensor b = random_dense(shapes.second, rng.next());
      const ContractionPlan plan = make_plan(spec, shapes.first, shapes.second);
      const DenseTensor got = contract_sparse_dense(a, b, plan);
      const DenseTensor want = dense_contract(to_dense(a), b, plan);
      CHECK(max_abs_diff(got, want) <= tol_for(want));
    }
  }
}

TEST_CASE("contract_sparse_dense on the two-site operator shape") {
  const std::vector<Index> shape{20, 20, 20, 20};
  const SparseTensor a = random_sparse(shape, 100, 31);
  const DenseTensor b = random_dense(shape, 32);
  const ContractionPlan plan = make_plan("ABab,BCcd->ACabcd", shape, shape);
  ContractStats stats;
  const DenseTensor got = contract_sparse_dense(a, b, plan, &stats);
  CHECK(stats.mult_count == 100 * 20 * 20 * 20);
  const DenseTensor want = dense_contract(to_dense(a), b, plan);
  CHECK(max_abs_diff(got, want) <= tol_for(want));
}

TEST_CASE("contract_pair dispatches on operand kinds") {
  SplitMix64 rng(55);
  const SparseTensor sa = random_sparse({3, 4}, 6, rng.next());
  const SparseTensor sb = random_sparse({4, 2}, 5, rng.next());
  const DenseTensor da = random_dense({3, 4}, rng.next());
  const DenseTensor db = random_dense({4, 2}, rng.next());
  const std::string spec = "ab,bc->ac";
  const ContractionPlan plan = make_plan(spec, sa.shape, sb.shape);

  const Tensor ss = contract_pair(sa, sb, spec);
  REQUIRE(std::holds_alternative<SparseTensor>(ss));
  CHECK(std::get<SparseTensor>(ss) == contract_sparse_sparse(sa, sb, plan));

  const Tensor sd = contract_pair(sa, db, spec);
  REQUIRE(std::holds_alternative<DenseTensor>(sd));
  CHECK(std::get<DenseTensor>(sd) == contract_sparse_dense(sa, db, plan));

  const Tensor ds = contract_pair(da, sb, spec);
  REQUIRE(std::holds_alternative<DenseTensor>(ds));
  const DenseTensor ds_want = dense_contract(da, to_dense(sb), plan);
  CHECK(max_abs_diff(std::get<DenseTensor>(ds), ds_want) <= tol_for(ds_want));

  const Tensor dd = contract_pair(da, db, spec);
  REQUIRE(std::holds_alternative<DenseTensor>(dd));
  CHECK(std::get<DenseTensor>(dd) == dense_contract(da, db, plan));
}

TEST_CASE("contract_pair commutation keeps the output axis order") {
  const SparseTensor s = random_sparse({4, 3}, 7, 81);
  const DenseTensor d = random_dense({5, 4}, 82);
  // reversed output order exercises the final permutation
  const Tensor out = contract_pair(d, s, "ab,bc->ca");
  REQUIRE(std::holds_alternative<DenseTensor>(out));
  const ContractionPlan plan = make_plan("ab,bc->ca", d.shape, s.shape);
  const DenseTensor want = dense_contract(d, to_dense(s), plan);
  CHECK(std::get<DenseTensor>(out).shape == want.shape);
  CHECK(max_abs_diff(std::get<DenseTensor>(out), want) <= tol_for(want));
}

TEST_CASE("contract_path folds left over the operand list") {
  const SparseTensor a = random_sparse({3, 4}, 6, 61);
  const SparseTensor b = random_sparse({4, 5}, 8, 62);
  const SparseTensor c = random_sparse({5, 2}, 4, 63);
  const std::vector<std::string> specs{"ab,bc->ac", "ab,bc->ac"};

  const Tensor got = contract_path({a, b, c}, specs);
  REQUIRE(std::holds_alternative<SparseTensor>(got));

  const DenseTensor step =
      dense_contract(to_dense(a), to_dense(b),
                     make_plan("ab,bc->ac", a.shape, b.shape));
  const DenseTensor want = dense_contract(
      step, to_dense(c), make_plan("ab,bc->ac", step.shape, c.shape));
  CHECK(max_abs_diff(to_dense(std::get<SparseTensor>(got)), want) <=
        tol_for(want));

  // a single spec is exactly one contract_pair call
  const Tensor single = contract_path({a, b}, {"ab,bc->ac"});
  CHECK(std::get<SparseTensor>(single) ==
        std::get<SparseTensor>(contract_pair(a, b, "ab,bc->ac")));
}

TEST_CASE("contract_path mixes sparse and dense operands") {
  const SparseTensor a = random_sparse({3, 4}, 5, 71);
  const DenseTensor b = random_dense({4, 5}, 72);
  const SparseTensor c = random_sparse({5, 2}, 6, 73);
  const Tensor got = contract_path({a, b, c}, {"ab,bc->ac", "ab,bc->ac"});
  REQUIRE(std::holds_alternative<DenseTensor>(got));

  const DenseTensor step = dense_contract(
      to_dense(a), b, make_plan("ab,bc->ac", a.shape, b.shape));
  const DenseTensor want = dense_contract(
      step, to_dense(c), make_plan("ab,bc->ac", step.shape, c.shape));
  CHECK(max_abs_diff(std::get<DenseTensor>(got), want) <= tol_for(want));
}

TEST_CASE("contract_path validates the operand and spec counts") {
  const SparseTensor a = random_sparse({2, 2}, 2, 1);
  CHECK_THROWS_WITH_AS(contract_path({a, a}, {}),
                       "contract_path: need one more operand than specs",
                       std::invalid_argument);
  CHECK_THROWS_AS(contract_path({a}, {"ab,bc->ac"}), std::invalid_argument);
}

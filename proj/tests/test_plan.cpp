#include <stdexcept>
#include <string_view>
#include <vector>

#include "doctest.h"
#include "ftt/plan.hpp"

using namespace ftt;

namespace {

std::vector<char> labels(std::string_view s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("parse_subscripts splits the three label groups") {
  const ParsedSubscripts p = parse_subscripts("ab,bc->ac");
  CHECK(p.labels_a == labels("ab"));
  CHECK(p.labels_b == labels("bc"));
  CHECK(p.output_labels == labels("ac"));
}

TEST_CASE("parse_subscripts accepts an empty output (full trace)") {
  const ParsedSubscripts p = parse_subscripts("ab,ab->");
  CHECK(p.labels_a == labels("ab"));
  CHECK(p.labels_b == labels("ab"));
  CHECK(p.output_labels.empty());
}

TEST_CASE("parse_subscripts is case sensitive") {
  const ParsedSubscripts p = parse_subscripts("aA,Ab->ab");
  CHECK(p.labels_a == labels("aA"));
  CHECK(p.labels_b == labels("Ab"));
}

TEST_CASE("parse_subscripts rejects malformed strings") {
  // shape errors: missing comma, missing arrow, two commas, arrow first
  CHECK_THROWS_AS(parse_subscripts("abbc->ac"), std::invalid_argument);
  CHECK_THROWS_AS(parse_subscripts("ab,bc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_subscripts("ab,bc,cd->ad"), std::invalid_argument);
  CHECK_THROWS_AS(parse_subscripts("ab->ac,b"), std::invalid_argument);
  // empty operands
  CHECK_THROWS_WITH_AS(parse_subscripts(",bc->c"),
                       "parse_subscripts: empty operand A",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_subscripts("ab,->a"),
                       "parse_subscripts: empty operand B",
                       std::invalid_argument);
  // non-letter labels
  CHECK_THROWS_AS(parse_subscripts("a1,bc->ac"), std::invalid_argument);
  CHECK_THROWS_AS(parse_subscripts("ab,bc->a c"), std::invalid_argument);
  // repeats
  CHECK_THROWS_WITH_AS(parse_subscripts("aa,bc->c"),
                       "parse_subscripts: repeated label 'a' within operand A",
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_subscripts("ab,bb->a"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_subscripts("ab,bc->aca"),
                       "parse_subscripts: repeated output label 'a'",
                       std::invalid_argument);
  // output label not present in either input
  CHECK_THROWS_WITH_AS(parse_subscripts("ab,bc->ad"),
                       "parse_subscripts: output label 'd' absent from inputs",
                       std::invalid_argument);
}

TEST_CASE("build_plan matmul") {
  const std::vector<Index> sa{2, 3}, sb{3, 4};
  const ContractionPlan plan = make_plan("ab,bc->ac", sa, sb);
  CHECK(plan.external_a.columns == std::vector<Index>{0});
  CHECK(plan.external_b.columns == std::vector<Index>{1});
  CHECK(plan.overlaps ==
        std::vector<std::pair<Index, Index>>{{Index{1}, Index{0}}});
  CHECK(plan.extents.at('a') == 2);
  CHECK(plan.extents.at('b') == 3);
  CHECK(plan.extents.at('c') == 4);
  CHECK(plan.output_perm == std::vector<Index>{0, 1});
  CHECK(plan.external_extents_a() == std::vector<Index>{2});
  CHECK(plan.external_extents_b() == std::vector<Index>{4});
  CHECK(plan.overlap_extents() == std::vector<Index>{3});
  CHECK(plan.overlap_group_a().columns == std::vector<Index>{1});
  CHECK(plan.overlap_group_b().columns == std::vector<Index>{0});
}

TEST_CASE("build_plan transposed output permutes the external order") {
  const std::vector<Index> sa{2, 3}, sb{3, 4};
  const ContractionPlan plan = make_plan("ab,bc->ca", sa, sb);
  CHECK(plan.external_a.columns == std::vector<Index>{0});
  CHECK(plan.external_b.columns == std::vector<Index>{1});
  CHECK(plan.output_perm == std::vector<Index>{1, 0});
}

TEST_CASE("build_plan two-site operator pair") {
  const std::vector<Index> sa{20, 20, 20, 20}, sb{20, 20, 20, 20};
  const ContractionPlan plan = make_plan("ABab,BCcd->ACabcd", sa, sb);
  CHECK(plan.external_a.columns == std::vector<Index>{0, 2, 3});
  CHECK(plan.external_b.columns == std::vector<Index>{1, 2, 3});
  CHECK(plan.overlaps ==
        std::vector<std::pair<Index, Index>>{{Index{1}, Index{0}}});
  CHECK(plan.output_perm == std::vector<Index>{0, 3, 1, 2, 4, 5});
}

TEST_CASE("build_plan rank-six grid pair") {
  const std::vector<Index> sa{8, 8, 8, 8, 8, 8}, sb{8, 8, 8, 8, 8, 8};
  const ContractionPlan plan = make_plan("ABCDab,DEFGcd->ABCEFGabcd", sa, sb);
  CHECK(plan.external_a.columns == std::vector<Index>{0, 1, 2, 4, 5});
  CHECK(plan.external_b.columns == std::vector<Index>{1, 2, 3, 4, 5});
  CHECK(plan.overlaps ==
        std::vector<std::pair<Index, Index>>{{Index{3}, Index{0}}});
  CHECK(plan.output_perm ==
        std::vector<Index>{0, 1, 2, 5, 6, 7, 3, 4, 8, 9});
}

TEST_CASE("build_plan full trace") {
  const std::vector<Index> sa{2, 3}, sb{2, 3};
  const ContractionPlan plan = make_plan("ab,ab->", sa, sb);
  CHECK(plan.external_a.columns.empty());
  CHECK(plan.external_b.columns.empty());
  CHECK(plan.overlaps == std::vector<std::pair<Index, Index>>{
                             {Index{0}, Index{0}}, {Index{1}, Index{1}}});
  CHECK(plan.output_perm.empty());
  CHECK(plan.overlap_extents() == std::vector<Index>{2, 3});
}

TEST_CASE("build_plan overlaps follow operand A column order") {
  const std::vector<Index> sa{2, 3}, sb{3, 2};
  const ContractionPlan plan = make_plan("ab,ba->", sa, sb);
  CHECK(plan.overlaps == std::vector<std::pair<Index, Index>>{
                             {Index{0}, Index{1}}, {Index{1}, Index{0}}});
}

TEST_CASE("build_plan with no shared labels is a direct product") {
  const std::vector<Index> sa{2, 3}, sb{4, 5};
  const ContractionPlan plan = make_plan("ab,cd->abcd", sa, sb);
  CHECK(plan.overlaps.empty());
  CHECK(plan.external_a.columns == std::vector<Index>{0, 1});
  CHECK(plan.external_b.columns == std::vector<Index>{0, 1});
  CHECK(plan.output_perm == std::vector<Index>{0, 1, 2, 3});
}

TEST_CASE("build_plan rejects inconsistent inputs") {
  const std::vector<Index> s23{2, 3}, s34{3, 4}, s44{4, 4};
  CHECK_THROWS_WITH_AS(make_plan("ab,bc->ac", s23, s44),
                       "build_plan: extent mismatch on label 'b': 3 vs 4",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_plan("abc,bc->a", s23, s34),
                       "build_plan: labels do not match operand rank",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      make_plan("ab,bc->abc", s23, s34),
      "build_plan: label 'b' appears in both operands and the output; batch "
      "axes are unsupported",
      std::invalid_argument);
  // implicit sum-out, in A and in B
  CHECK_THROWS_WITH_AS(
      make_plan("ab,bc->c", s23, s34),
      "build_plan: label 'a' appears in one operand only and not in the output",
      std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      make_plan("ab,bc->a", s23, s34),
      "build_plan: label 'c' appears in one operand only and not in the output",
      std::invalid_argument);
}

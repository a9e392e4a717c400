#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ftt/tensor.hpp"

namespace ftt {

/// The three label vectors of a two-operand subscript string such as
/// "ab,bc->ac".
struct ParsedSubscripts {
  std::vector<char> labels_a;
  std::vector<char> labels_b;
  std::vector<char> output_labels;
};

/// Column partition of both operands for one pairwise contraction:
/// external (output) columns per operand, plus one (column-in-A,
/// column-in-B) pair per contracted label, ordered by first appearance
/// in operand A.
struct ContractionPlan {
  std::vector<char> labels_a;
  std::vector<char> labels_b;
  std::vector<char> output_labels;
  AxisGroup external_a;
  AxisGroup external_b;
  std::vector<std::pair<Index, Index>> overlaps;
  std::map<char, Index> extents;

  /// Permutation taking the internal (external_a ‖ external_b) axis order
  /// to the caller's output label order.
  std::vector<Index> output_perm;

  std::vector<Index> external_extents_a() const;
  std::vector<Index> external_extents_b() const;
  std::vector<Index> overlap_extents() const;
  AxisGroup overlap_group_a() const;
  AxisGroup overlap_group_b() const;
};

/// Parse `<letters>,<letters>-><letters>` into label vectors. Repeated
/// labels within one operand or the output are rejected; an empty output
/// means a full trace to a scalar.
ParsedSubscripts parse_subscripts(const std::string& spec);

/// Partition operand columns into external and overlap blocks and record
/// the per-label extents. Shared labels must agree on extent; labels in
/// both operands must be contracted (no batch axes) and labels in one
/// operand must appear in the output (no implicit sum-out).
ContractionPlan build_plan(const ParsedSubscripts& subscripts,
                           std::span<const Index> shape_a,
                           std::span<const Index> shape_b);

/// parse_subscripts + build_plan.
ContractionPlan make_plan(const std::string& spec,
                          std::span<const Index> shape_a,
                          std::span<const Index> shape_b);

}  // namespace ftt

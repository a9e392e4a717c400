#pragma once

#include "ftt/plan.hpp"
#include "ftt/tensor.hpp"

namespace ftt {

// Largest operand dense size dense_contract accepts. The loop nest is
// exponential in rank, so a misdirected benchmark call should fail fast.
inline constexpr Index kOracleOperandLimit = 10'000'000;

// Brute-force reference contraction: a nested-loop sum over every label
// assignment, row-major over the output labels and then the contracted
// labels in plan edge order. Deliberately naive and kept free of any code
// shared with the sparse kernels so it can serve as their ground truth.
DenseTensor dense_contract(const DenseTensor& a, const DenseTensor& b,
                           const ContractionPlan& plan);

// Largest elementwise |a - b|. Shapes must match.
double max_abs_diff(const DenseTensor& a, const DenseTensor& b);

}  // namespace ftt

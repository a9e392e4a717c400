#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ftt/plan.hpp"
#include "ftt/tensor.hpp"

namespace ftt {

struct ContractStats {
  // scalar multiplications performed by the kernel
  long long mult_count = 0;
};

// Pairwise contraction of two sparse operands per the plan. The result is
// canonical. Both operands are canonicalized first if needed.
SparseTensor contract_sparse_sparse(const SparseTensor& a,
                                    const SparseTensor& b,
                                    const ContractionPlan& plan,
                                    ContractStats* stats = nullptr);

// Sparse A against dense B. B is transposed once so its overlap axes lead,
// then every stored entry of A scales a contiguous slice of B.
DenseTensor contract_sparse_dense(const SparseTensor& a, const DenseTensor& b,
                                  const ContractionPlan& plan,
                                  ContractStats* stats = nullptr);

using Tensor = std::variant<SparseTensor, DenseTensor>;

// Dispatches on operand kinds. Dense x sparse is handled by commuting the
// subscripts; dense x dense falls back to a direct loop nest.
Tensor contract_pair(const Tensor& a, const Tensor& b, const std::string& spec,
                     ContractStats* stats = nullptr);

// Left-associated fold of contract_pair: specs[k] contracts the running
// result with operands[k + 1]. Requires one more operand than specs.
Tensor contract_path(const std::vector<Tensor>& operands,
                     const std::vector<std::string>& specs,
                     ContractStats* stats = nullptr);

}  // namespace ftt

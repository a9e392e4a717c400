#include "ftt/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ftt {

namespace {

void check_operand(const DenseTensor& t, const std::vector<char>& labels,
                   const std::map<char, Index>& extents, const char* which) {
  if (t.rank() != labels.size()) {
    throw std::invalid_argument(std::string("dense_contract: operand ") +
                                which + " rank does not match plan");
  }
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (t.shape[k] != extents.at(labels[k])) {
      throw std::invalid_argument(std::string("dense_contract: operand ") +
                                  which + " extent mismatch on label '" +
                                  labels[k] + "'");
    }
  }
  if (t.dense_size() > kOracleOperandLimit) {
    throw std::invalid_argument(std::string("dense_contract: operand ") +
                                which + " exceeds the oracle size guard");
  }
}

// position of each operand axis within the combined assignment vector
// (output labels first, contracted labels after, in plan edge order)
std::vector<std::size_t> slot_of_axes(const std::vector<char>& labels,
                                      const std::vector<char>& assign_labels) {
  std::vector<std::size_t> slots(labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k) {
    std::size_t s = 0;
    while (assign_labels[s] != labels[k]) ++s;
    slots[k] = s;
  }
  return slots;
}

std::vector<Index> row_major_strides(std::span<const Index> shape) {
  std::vector<Index> strides(shape.size(), 1);
  for (std::size_t k = shape.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * shape[k];
  }
  return strides;
}

}  // namespace

DenseTensor dense_contract(const DenseTensor& a, const DenseTensor& b,
                           const ContractionPlan& plan) {
  check_operand(a, plan.labels_a, plan.extents, "A");
  check_operand(b, plan.labels_b, plan.extents, "B");

  std::vector<char> assign_labels = plan.output_labels;
  for (const auto& [ca, cb] : plan.overlaps) {
    assign_labels.push_back(plan.labels_a[static_cast<std::size_t>(ca)]);
  }
  const std::size_t n_out = plan.output_labels.size();
  const std::size_t n_all = assign_labels.size();

  std::vector<Index> assign_extents(n_all);
  for (std::size_t s = 0; s < n_all; ++s) {
    assign_extents[s] = plan.extents.at(assign_labels[s]);
  }

  const auto slots_a = slot_of_axes(plan.labels_a, assign_labels);
  const auto slots_b = slot_of_axes(plan.labels_b, assign_labels);
  const auto strides_a = row_major_strides(a.shape);
  const auto strides_b = row_major_strides(b.shape);

  std::vector<Index> out_shape(assign_extents.begin(),
                               assign_extents.begin() + n_out);
  DenseTensor out = DenseTensor::zeros(std::move(out_shape));

  Index n_terms = 1;
  for (std::size_t s = n_out; s < n_all; ++s) n_terms *= assign_extents[s];

  std::vector<Index> assign(n_all, 0);
  for (std::size_t out_lin = 0; out_lin < out.values.size(); ++out_lin) {
    double sum = 0.0;
    for (Index t = 0; t < n_terms; ++t) {
      Index lin_a = 0, lin_b = 0;
      for (std::size_t k = 0; k < strides_a.size(); ++k) {
        lin_a += strides_a[k] * assign[slots_a[k]];
      }
      for (std::size_t k = 0; k < strides_b.size(); ++k) {
        lin_b += strides_b[k] * assign[slots_b[k]];
      }
      sum += a.values[static_cast<std::size_t>(lin_a)] *
             b.values[static_cast<std::size_t>(lin_b)];
      for (std::size_t s = n_all; s-- > n_out;) {
        if (++assign[s] < assign_extents[s]) break;
        assign[s] = 0;  // wraps back to all zeros after the last term
      }
    }
    out.values[out_lin] = sum;
    for (std::size_t s = n_out; s-- > 0;) {
      if (++assign[s] < assign_extents[s]) break;
      assign[s] = 0;
    }
  }
  return out;
}

double max_abs_diff(const DenseTensor& a, const DenseTensor& b) {
  if (a.shape != b.shape) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  }
  return worst;
}

}  // namespace ftt

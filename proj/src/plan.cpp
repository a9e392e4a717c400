#include "ftt/plan.hpp"

#include <algorithm>
#include <stdexcept>

namespace ftt {

namespace {

bool ascii_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::vector<char> parse_operand(const std::string& spec, std::size_t lo,
                                std::size_t hi, const char* what) {
  if (lo == hi) {
    throw std::invalid_argument(std::string("parse_subscripts: empty ") + what);
  }
  std::vector<char> labels;
  for (std::size_t i = lo; i < hi; ++i) {
    if (!ascii_letter(spec[i])) {
      throw std::invalid_argument(
          "parse_subscripts: expected ASCII letters, got '" +
          std::string(1, spec[i]) + "'");
    }
    if (std::find(labels.begin(), labels.end(), spec[i]) != labels.end()) {
      throw std::invalid_argument(
          std::string("parse_subscripts: repeated label '") + spec[i] +
          "' within " + what);
    }
    labels.push_back(spec[i]);
  }
  return labels;
}

bool contains(const std::vector<char>& labels, char c) {
  return std::find(labels.begin(), labels.end(), c) != labels.end();
}

}  // namespace

ParsedSubscripts parse_subscripts(const std::string& spec) {
  const auto comma = spec.find(',');
  const auto arrow = spec.find("->");
  if (comma == std::string::npos || arrow == std::string::npos ||
      comma > arrow || spec.find(',', comma + 1) != std::string::npos) {
    throw std::invalid_argument(
        "parse_subscripts: expected '<letters>,<letters>-><letters>', got \"" +
        spec + "\"");
  }

  ParsedSubscripts out;
  out.labels_a = parse_operand(spec, 0, comma, "operand A");
  out.labels_b = parse_operand(spec, comma + 1, arrow, "operand B");

  for (std::size_t i = arrow + 2; i < spec.size(); ++i) {
    const char c = spec[i];
    if (!ascii_letter(c)) {
      throw std::invalid_argument(
          "parse_subscripts: expected ASCII letters in output, got '" +
          std::string(1, c) + "'");
    }
    if (contains(out.output_labels, c)) {
      throw std::invalid_argument(
          std::string("parse_subscripts: repeated output label '") + c + "'");
    }
    if (!contains(out.labels_a, c) && !contains(out.labels_b, c)) {
      throw std::invalid_argument(
          std::string("parse_subscripts: output label '") + c +
          "' absent from inputs");
    }
    out.output_labels.push_back(c);
  }
  return out;
}

ContractionPlan build_plan(const ParsedSubscripts& subscripts,
                           std::span<const Index> shape_a,
                           std::span<const Index> shape_b) {
  const auto& la = subscripts.labels_a;
  const auto& lb = subscripts.labels_b;
  const auto& lo = subscripts.output_labels;
  if (la.size() != shape_a.size() || lb.size() != shape_b.size()) {
    throw std::invalid_argument("build_plan: labels do not match operand rank");
  }

  ContractionPlan plan;
  plan.labels_a = la;
  plan.labels_b = lb;
  plan.output_labels = lo;
  for (std::size_t c = 0; c < la.size(); ++c) plan.extents[la[c]] = shape_a[c];
  for (std::size_t c = 0; c < lb.size(); ++c) {
    const auto it = plan.extents.find(lb[c]);
    if (it != plan.extents.end() && it->second != shape_b[c]) {
      throw std::invalid_argument(
          std::string("build_plan: extent mismatch on label '") + lb[c] +
          "': " + std::to_string(it->second) + " vs " +
          std::to_string(shape_b[c]));
    }
    plan.extents[lb[c]] = shape_b[c];
  }

  for (std::size_t ca = 0; ca < la.size(); ++ca) {
    const char label = la[ca];
    const auto itb = std::find(lb.begin(), lb.end(), label);
    const bool in_output = contains(lo, label);
    if (itb != lb.end()) {
      if (in_output) {
        throw std::invalid_argument(
            std::string("build_plan: label '") + label +
            "' appears in both operands and the output; batch axes are "
            "unsupported");
      }
      plan.overlaps.emplace_back(static_cast<Index>(ca),
                                 static_cast<Index>(itb - lb.begin()));
    } else if (in_output) {
      plan.external_a.columns.push_back(static_cast<Index>(ca));
    } else {
      throw std::invalid_argument(
          std::string("build_plan: label '") + label +
          "' appears in one operand only and not in the output");
    }
  }
  for (std::size_t cb = 0; cb < lb.size(); ++cb) {
    const char label = lb[cb];
    if (contains(la, label)) continue;
    if (!contains(lo, label)) {
      throw std::invalid_argument(
          std::string("build_plan: label '") + label +
          "' appears in one operand only and not in the output");
    }
    plan.external_b.columns.push_back(static_cast<Index>(cb));
  }

  // labels of the internal (external_a ‖ external_b) result order
  std::vector<char> concat;
  for (const Index c : plan.external_a.columns) {
    concat.push_back(la[static_cast<std::size_t>(c)]);
  }
  for (const Index c : plan.external_b.columns) {
    concat.push_back(lb[static_cast<std::size_t>(c)]);
  }
  plan.output_perm.reserve(lo.size());
  for (const char label : lo) {
    const auto it = std::find(concat.begin(), concat.end(), label);
    plan.output_perm.push_back(static_cast<Index>(it - concat.begin()));
  }
  return plan;
}

ContractionPlan make_plan(const std::string& spec,
                          std::span<const Index> shape_a,
                          std::span<const Index> shape_b) {
  return build_plan(parse_subscripts(spec), shape_a, shape_b);
}

std::vector<Index> ContractionPlan::external_extents_a() const {
  std::vector<Index> out;
  out.reserve(external_a.columns.size());
  for (const Index c : external_a.columns) {
    out.push_back(extents.at(labels_a[static_cast<std::size_t>(c)]));
  }
  return out;
}

std::vector<Index> ContractionPlan::external_extents_b() const {
  std::vector<Index> out;
  out.reserve(external_b.columns.size());
  for (const Index c : external_b.columns) {
    out.push_back(extents.at(labels_b[static_cast<std::size_t>(c)]));
  }
  return out;
}

std::vector<Index> ContractionPlan::overlap_extents() const {
  std::vector<Index> out;
  out.reserve(overlaps.size());
  for (const auto& [ca, cb] : overlaps) {
    out.push_back(extents.at(labels_a[static_cast<std::size_t>(ca)]));
  }
  return out;
}

AxisGroup ContractionPlan::overlap_group_a() const {
  AxisGroup g;
  g.columns.reserve(overlaps.size());
  for (const auto& [ca, cb] : overlaps) g.columns.push_back(ca);
  return g;
}

AxisGroup ContractionPlan::overlap_group_b() const {
  AxisGroup g;
  g.columns.reserve(overlaps.size());
  for (const auto& [ca, cb] : overlaps) g.columns.push_back(cb);
  return g;
}

}  // namespace ftt

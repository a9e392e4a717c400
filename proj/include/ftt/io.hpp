#pragma once

#include <string>

#include "ftt/tensor.hpp"

namespace ftt {

// Text tensor format (.sten): UTF-8, LF line endings.
//   shape k0 k1 ... kn-1
//   i0 i1 ... in-1 value      (one line per stored entry)
// A rank-0 tensor is a bare "shape" line plus bare value lines. Values are
// written as %.17e so doubles round-trip exactly. Readers accept entries
// in any order; writers always emit canonical order.

SparseTensor parse_sten(const std::string& text);
std::string format_sten(const SparseTensor& t);

SparseTensor read_sten(const std::string& path);
void write_sten(const SparseTensor& t, const std::string& path);

}  // namespace ftt

#include "ftt/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ftt/canonical.hpp"

namespace ftt {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("sten: line " + std::to_string(line_no) + ": " +
                           what);
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

}  // namespace

SparseTensor parse_sten(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  std::vector<Index> shape;
  bool have_shape = false;
  std::vector<std::vector<Index>> rows;
  std::vector<double> data;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    if (!have_shape) {
      std::string tag;
      if (!(fields >> tag) || tag != "shape") {
        fail(line_no, "expected a leading 'shape' line");
      }
      Index extent = 0;
      while (fields >> extent) shape.push_back(extent);
      if (!fields.eof()) fail(line_no, "malformed shape entry");
      have_shape = true;
      continue;
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::vector<Index> row(shape.size());
    for (Index& v : row) {
      if (!(fields >> v)) fail(line_no, "expected an index tuple");
    }
    double value = 0.0;
    if (!(fields >> value)) fail(line_no, "expected a value");
    std::string extra;
    if (fields >> extra) fail(line_no, "trailing fields");
    rows.push_back(std::move(row));
    data.push_back(value);
  }
  if (!have_shape) fail(line_no, "missing 'shape' line");

  IndexMatrix indices(rows.size(), shape.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::copy(rows[r].begin(), rows[r].end(), indices.row(r).begin());
  }
  SparseTensor t(std::move(shape), std::move(indices), std::move(data));
  t.canonical = is_well_ordered(t.indices);
  return t;
}

std::string format_sten(const SparseTensor& t) {
  const SparseTensor c = canonicalize(t);
  std::string out = "shape";
  for (const Index e : c.shape) out += " " + std::to_string(e);
  out += "\n";
  for (std::size_t r = 0; r < c.nnz(); ++r) {
    for (std::size_t k = 0; k < c.rank(); ++k) {
      out += std::to_string(c.indices(r, k)) + " ";
    }
    out += format_value(c.data[r]) + "\n";
  }
  return out;
}

SparseTensor read_sten(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sten: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sten(buf.str());
}

void write_sten(const SparseTensor& t, const std::string& path) {
  const std::string text = format_sten(t);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("sten: cannot open " + path);
  out << text;
  if (!out) throw std::runtime_error("sten: write failed for " + path);
}

}  // namespace ftt

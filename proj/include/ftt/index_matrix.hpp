#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace ftt {

using Index = std::int64_t;

/// Row-major N x n integer matrix. Each row is one coordinate tuple.
class IndexMatrix {
 public:
  IndexMatrix() = default;

  IndexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

  static IndexMatrix from_rows(
      std::initializer_list<std::initializer_list<Index>> rows) {
    IndexMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
    m.cells_.reserve(m.rows_ * m.cols_);
    for (const auto& r : rows) {
      if (r.size() != m.cols_) {
        throw std::invalid_argument("IndexMatrix: ragged rows");
      }
      m.cells_.insert(m.cells_.end(), r.begin(), r.end());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Index& operator()(std::size_t r, std::size_t c) {
    return cells_[r * cols_ + c];
  }
  Index operator()(std::size_t r, std::size_t c) const {
    return cells_[r * cols_ + c];
  }

  std::span<const Index> row(std::size_t r) const {
    return {cells_.data() + r * cols_, cols_};
  }
  std::span<Index> row(std::size_t r) {
    return {cells_.data() + r * cols_, cols_};
  }

  /// New matrix holding rows [perm[0], perm[1], ...] of this one.
  IndexMatrix gather_rows(std::span<const Index> perm) const {
    IndexMatrix out(perm.size(), cols_);
    for (std::size_t r = 0; r < perm.size(); ++r) {
      auto src = row(static_cast<std::size_t>(perm[r]));
      std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
  }

  /// New matrix holding columns [cols[0], cols[1], ...] of this one.
  IndexMatrix gather_cols(std::span<const Index> cols) const {
    IndexMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        out(r, c) = (*this)(r, static_cast<std::size_t>(cols[c]));
      }
    }
    return out;
  }

  friend bool operator==(const IndexMatrix& a, const IndexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Index> cells_;
};

}  // namespace ftt

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tomolink/rational.hpp"

namespace tomolink {

// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Rational> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  void append_row(std::span<const Rational> values) {
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  // Rows [first, last) restricted to columns [col_first, col_last).
  RationalMatrix block(std::size_t first, std::size_t last,
                       std::size_t col_first, std::size_t col_last) const {
    RationalMatrix out(last - first, col_last - col_first);
    for (std::size_t r = first; r < last; ++r) {
      for (std::size_t c = col_first; c < col_last; ++c) {
        out(r - first, c - col_first) = (*this)(r, c);
      }
    }
    return out;
  }

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Echelon {
  RationalMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

// Gauss-Jordan elimination over the rationals.
inline Echelon reduced_row_echelon(RationalMatrix m) {
  Echelon out;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t pick = lead;
    while (pick < m.rows() && m(pick, c) == 0) ++pick;
    if (pick == m.rows()) continue;
    if (pick != lead) {
      auto a = m.row(pick);
      auto b = m.row(lead);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto pivot_row = m.row(lead);
    if (pivot_row[c] != 1) {
      const Rational inverse = 1 / pivot_row[c];
      for (std::size_t k = c; k < m.cols(); ++k) pivot_row[k] *= inverse;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == 0) continue;
      const Rational factor = m(r, c);
      auto target = m.row(r);
      for (std::size_t k = c; k < m.cols(); ++k) {
        if (pivot_row[k] != 0) target[k] -= factor * pivot_row[k];
      }
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const RationalMatrix& m) {
  return reduced_row_echelon(m).rank();
}

// Columns j whose unit vector e_j lies in the row space. In reduced form
// that holds exactly when some row equals e_j.
inline std::vector<bool> unit_vectors_in_row_space(const Echelon& e) {
  std::vector<bool> out(e.reduced.cols(), false);
  for (std::size_t r = 0; r < e.rank(); ++r) {
    const auto row = e.reduced.row(r);
    std::size_t nonzero = 0;
    for (const auto& x : row) nonzero += (x != 0);
    if (nonzero == 1) out[e.pivots[r]] = true;
  }
  return out;
}

inline std::string to_csv(const RationalMatrix& m,
                          const std::vector<std::string>& header) {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    out += (c ? "," : "") + header[c];
  }
  if (!header.empty()) out += "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out += (c ? "," : "") + to_string(m(r, c));
    }
    out += "\n";
  }
  return out;
}

}  // namespace tomolink

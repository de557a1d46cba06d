#pragma once

// Dense linear algebra over F_q.  Elimination always takes the leftmost
// available pivot column and, within it, the lowest row index, so reduced
// echelon output is canonical.

#include <cstddef>
#include <vector>

#include "dtower/field.hpp"

namespace dtower {

class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FqMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Digit operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Digit& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  bool operator==(const FqMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Digit> data_;
};

FqMatrix multiply(const BaseField& f, const FqMatrix& a, const FqMatrix& b);

/// Reduces `m` in place to reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(const BaseField& f, FqMatrix& m);

std::size_t rank(const BaseField& f, FqMatrix m);

/// Basis of {v : m v = 0}, one vector per free column, in reduced echelon form.
std::vector<std::vector<Digit>> nullspace(const BaseField& f, FqMatrix m);

/// Writes one solution of m v = rhs (free variables zero) to `out`; returns
/// false when the system is inconsistent.
bool solve_particular(const BaseField& f, FqMatrix m, const std::vector<Digit>& rhs,
                      std::vector<Digit>& out);

}  // namespace dtower

#include "dtower/linalg.hpp"

namespace dtower {

FqMatrix FqMatrix::identity(std::size_t n) {
  FqMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FqMatrix multiply(const BaseField& f, const FqMatrix& a, const FqMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kPrecondition, "matrix shape mismatch");
  FqMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Digit t = a(i, k);
      if (t == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) = f.add(r(i, j), f.mul(t, b(k, j)));
    }
  return r;
}

std::vector<std::size_t> rref(const BaseField& f, FqMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pr = row;
    while (pr < m.rows() && m(pr, col) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pr, c), m(row, c));
    Digit inv = f.inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      Digit t = m(r, col);
      if (t == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = f.sub(m(r, c), f.mul(t, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const BaseField& f, FqMatrix m) { return rref(f, m).size(); }

std::vector<std::vector<Digit>> nullspace(const BaseField& f, FqMatrix m) {
  auto pivots = rref(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Digit>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Digit> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve_particular(const BaseField& f, FqMatrix m, const std::vector<Digit>& rhs,
                      std::vector<Digit>& out) {
  const std::size_t n = m.cols();
  FqMatrix aug(m.rows(), n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n) = rhs[r];
  }
  auto pivots = rref(f, aug);
  if (!pivots.empty() && pivots.back() == n) return false;
  out.assign(n, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) out[pivots[r]] = aug(r, n);
  return true;
}

}  // namespace dtower

#pragma once

#include <optional>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

// Dense matrices over a field context K, just enough Gaussian elimination
// for the kernel/solve needs of the tower and Frobenius code.
template <class K>
struct Mat {
  unsigned nr = 0, nc = 0;
  std::vector<typename K::Elem> a;

  Mat() = default;
  Mat(const K& k, unsigned rows, unsigned cols)
      : nr(rows), nc(cols), a(static_cast<size_t>(rows) * cols, k.zero()) {}

  typename K::Elem& at(unsigned r, unsigned c) { return a[static_cast<size_t>(r) * nc + c]; }
  const typename K::Elem& at(unsigned r, unsigned c) const {
    return a[static_cast<size_t>(r) * nc + c];
  }
};

// In-place reduced row echelon form; returns the pivot column of each pivot row.
template <class K>
std::vector<unsigned> mat_rref(const K& k, Mat<K>& m) {
  std::vector<unsigned> pivots;
  unsigned row = 0;
  for (unsigned col = 0; col < m.nc && row < m.nr; ++col) {
    unsigned sel = row;
    while (sel < m.nr && k.is_zero(m.at(sel, col))) ++sel;
    if (sel == m.nr) continue;
    if (sel != row)
      for (unsigned c = 0; c < m.nc; ++c) std::swap(m.at(sel, c), m.at(row, c));
    typename K::Elem piv = k.inv(m.at(row, col));
    for (unsigned c = col; c < m.nc; ++c) m.at(row, c) = k.mul(piv, m.at(row, c));
    for (unsigned r = 0; r < m.nr; ++r) {
      if (r == row || k.is_zero(m.at(r, col))) continue;
      typename K::Elem f = m.at(r, col);
      for (unsigned c = col; c < m.nc; ++c)
        m.at(r, c) = k.sub(m.at(r, c), k.mul(f, m.at(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Basis of the right kernel {x : Mx = 0}; vectors of length nc.
template <class K>
std::vector<std::vector<typename K::Elem>> mat_kernel(const K& k, Mat<K> m) {
  std::vector<unsigned> pivots = mat_rref(k, m);
  std::vector<bool> is_pivot(m.nc, false);
  for (unsigned c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename K::Elem>> basis;
  for (unsigned free_col = 0; free_col < m.nc; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<typename K::Elem> v(m.nc, k.zero());
    v[free_col] = k.one();
    for (unsigned r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = k.neg(m.at(r, free_col));
    basis.push_back(std::move(v));
  }
  return basis;
}

struct SolveInfo {
  bool has_solution = false;
  unsigned kernel_dim = 0;
};

// One solution of Mx = b (if any), plus the ambient kernel dimension so the
// caller can tell a unique solution from an underdetermined one.
template <class K>
std::optional<std::vector<typename K::Elem>> mat_solve(
    const K& k, const Mat<K>& m, const std::vector<typename K::Elem>& b,
    SolveInfo* info = nullptr) {
  check(b.size() == m.nr, Err::Precondition, "rhs length mismatch");
  Mat<K> aug(k, m.nr, m.nc + 1);
  for (unsigned r = 0; r < m.nr; ++r) {
    for (unsigned c = 0; c < m.nc; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.nc) = b[r];
  }
  std::vector<unsigned> pivots = mat_rref(k, aug);
  unsigned rank_a = 0;
  bool inconsistent = false;
  for (unsigned c : pivots) {
    if (c == m.nc) inconsistent = true;
    else ++rank_a;
  }
  if (info) {
    info->has_solution = !inconsistent;
    info->kernel_dim = m.nc - rank_a;
  }
  if (inconsistent) return std::nullopt;
  std::vector<typename K::Elem> x(m.nc, k.zero());
  for (unsigned r = 0; r < pivots.size(); ++r)
    if (pivots[r] < m.nc) x[pivots[r]] = aug.at(r, m.nc);
  return x;
}

}  // namespace drinfeld

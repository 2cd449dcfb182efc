#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "keplerreg/graded_basis.hpp"
#include "keplerreg/linalg.hpp"

namespace keplerreg {

/// Complex sparse matrix over a graded basis, row-major with sorted columns.
class SparseOperator {
 public:
  SparseOperator() = default;
  explicit SparseOperator(BasisPtr basis)
      : basis_(std::move(basis)), rows_(basis_->dim()) {}

  static SparseOperator identity(BasisPtr basis) {
    SparseOperator op(std::move(basis));
    for (int i = 0; i < op.dim(); ++i) op.rows_[i].push_back({i, 1.0});
    return op;
  }

  const BasisPtr& basis() const { return basis_; }
  int dim() const { return int(rows_.size()); }
  const std::vector<std::pair<int, cxd>>& row(int i) const { return rows_[i]; }

  void add_entry(int i, int j, cxd v) {
    if (v == cxd(0.0)) return;
    auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& p, int col) { return p.first < col; });
    if (it != r.end() && it->first == j) {
      it->second += v;
      if (it->second == cxd(0.0)) r.erase(it);
    } else {
      r.insert(it, {j, v});
    }
  }

  cxd entry(int i, int j) const {
    const auto& r = rows_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& p, int col) { return p.first < col; });
    return (it != r.end() && it->first == j) ? it->second : cxd(0.0);
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (auto& r : rows_) n += r.size();
    return n;
  }

  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
    a.check(b);
    SparseOperator r = a;
    for (int i = 0; i < b.dim(); ++i)
      for (auto& [j, v] : b.rows_[i]) r.add_entry(i, j, v);
    return r;
  }
  friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
    a.check(b);
    SparseOperator r = a;
    for (int i = 0; i < b.dim(); ++i)
      for (auto& [j, v] : b.rows_[i]) r.add_entry(i, j, -v);
    return r;
  }
  friend SparseOperator operator*(cxd s, const SparseOperator& a) {
    SparseOperator r = a;
    for (auto& row : r.rows_)
      for (auto& [j, v] : row) v *= s;
    return r;
  }
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    a.check(b);
    SparseOperator r(a.basis_);
    std::vector<cxd> acc(a.dim(), cxd(0.0));
    std::vector<int> touched;
    for (int i = 0; i < a.dim(); ++i) {
      touched.clear();
      for (auto& [j, av] : a.rows_[i])
        for (auto& [k, bv] : b.rows_[j]) {
          if (acc[k] == cxd(0.0)) touched.push_back(k);
          acc[k] += av * bv;
        }
      std::sort(touched.begin(), touched.end());
      for (int k : touched) {
        if (acc[k] != cxd(0.0)) r.rows_[i].push_back({k, acc[k]});
        acc[k] = cxd(0.0);
      }
    }
    return r;
  }

  SparseOperator dagger() const {
    SparseOperator r(basis_);
    for (int i = 0; i < dim(); ++i)
      for (auto& [j, v] : rows_[i]) r.rows_[j].push_back({i, std::conj(v)});
    for (auto& row : r.rows_)
      std::sort(row.begin(), row.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
    return r;
  }

  double hermiticity_error() const {
    double err = 0.0;
    const SparseOperator d = *this - dagger();
    for (auto& row : d.rows_)
      for (auto& [j, v] : row) err = std::max(err, std::abs(v));
    return err;
  }

  double max_abs() const {
    double m = 0.0;
    for (auto& row : rows_)
      for (auto& [j, v] : row) m = std::max(m, std::abs(v));
    return m;
  }

  /// Max |entry| over the given columns (all rows).
  double max_abs_on_columns(const std::vector<bool>& col_mask) const {
    double m = 0.0;
    for (auto& row : rows_)
      for (auto& [j, v] : row)
        if (col_mask[j]) m = std::max(m, std::abs(v));
    return m;
  }

  /// Frobenius inner product <A,B> = sum conj(A_ij) B_ij over masked columns.
  static cxd inner_on_columns(const SparseOperator& a, const SparseOperator& b,
                              const std::vector<bool>& col_mask) {
    cxd acc = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
      auto ia = a.rows_[i].begin();
      auto ib = b.rows_[i].begin();
      while (ia != a.rows_[i].end() && ib != b.rows_[i].end()) {
        if (ia->first < ib->first) {
          ++ia;
        } else if (ib->first < ia->first) {
          ++ib;
        } else {
          if (col_mask[ia->first]) acc += std::conj(ia->second) * ib->second;
          ++ia;
          ++ib;
        }
      }
    }
    return acc;
  }

  double max_offdiagonal() const {
    double m = 0.0;
    for (int i = 0; i < dim(); ++i)
      for (auto& [j, v] : rows_[i])
        if (j != i) m = std::max(m, std::abs(v));
    return m;
  }

  std::vector<cxd> diagonal() const {
    std::vector<cxd> d(dim(), cxd(0.0));
    for (int i = 0; i < dim(); ++i) d[i] = entry(i, i);
    return d;
  }

 private:
  void check(const SparseOperator& o) const {
    if (!basis_ || !o.basis_ || !(*basis_ == *o.basis_))
      throw std::invalid_argument("sparse operators live on different bases");
  }

  BasisPtr basis_;
  std::vector<std::vector<std::pair<int, cxd>>> rows_;
};

inline SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

/// Dense complex linear solve (partial pivoting); used for the small Gram
/// systems when expressing commutators in a generator span.
inline std::vector<cxd> solve_dense(std::vector<std::vector<cxd>> A, std::vector<cxd> b) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    if (std::abs(A[col][col]) < 1e-300)
      throw std::runtime_error("solve_dense: singular system");
    for (std::size_t r = col + 1; r < n; ++r) {
      const cxd f = A[r][col] / A[col][col];
      if (f == cxd(0.0)) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<cxd> x(n, cxd(0.0));
  for (std::size_t r = n; r-- > 0;) {
    cxd acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= A[r][c] * x[c];
    x[r] = acc / A[r][r];
  }
  return x;
}

}  // namespace keplerreg

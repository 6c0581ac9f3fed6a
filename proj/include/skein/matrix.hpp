#pragma once

#include <optional>
#include <vector>

#include "skein/scalar.hpp"

namespace skein {

// Dense exact matrix over one Scalar field.  Everything here is
// deterministic: no pivoting heuristics beyond first-nonzero.
class Matrix {
 public:
  Matrix(FieldKind kind, std::size_t rows, std::size_t cols)
      : kind_(kind), rows_(rows), cols_(cols),
        data_(rows * cols, Scalar::zero(kind)) {}

  static Matrix identity(FieldKind kind, std::size_t n) {
    Matrix m(kind, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(kind);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldKind kind() const { return kind_; }

  Scalar& at(std::size_t i, std::size_t j) {
    SKEIN_CHECK(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const Scalar& at(std::size_t i, std::size_t j) const {
    SKEIN_CHECK(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.kind_ == b.kind_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix t(kind_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    SKEIN_CHECK(a.kind_ == b.kind_ && a.cols_ == b.rows_);
    Matrix r(a.kind_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b.at(k, j).is_zero()) continue;
          r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
        }
      }
    return r;
  }

  // Row-reduce in place to reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t sel = row;
      while (sel < rows_ && at(sel, col).is_zero()) ++sel;
      if (sel == rows_) continue;
      if (sel != row)
        for (std::size_t j = 0; j < cols_; ++j)
          std::swap(at(sel, j), at(row, j));
      Scalar inv = at(row, col).inverse();
      for (std::size_t j = col; j < cols_; ++j)
        at(row, j) = at(row, j) * inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row || at(i, col).is_zero()) continue;
        Scalar f = at(i, col);
        for (std::size_t j = col; j < cols_; ++j)
          at(i, j) = at(i, j) - f * at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix tmp = *this;
    return tmp.rref().size();
  }

  // Rows spanning the kernel {x : A x = 0}; each free variable set to one in
  // its own basis vector, ascending by column.
  Matrix nullspace() const {
    Matrix r = *this;
    std::vector<std::size_t> pivots = r.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
    Matrix basis(kind_, free_cols.size(), cols_);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      std::size_t fc = free_cols[k];
      basis.at(k, fc) = Scalar::one(kind_);
      for (std::size_t i = 0; i < pivots.size(); ++i)
        basis.at(k, pivots[i]) = -r.at(i, fc);
    }
    return basis;
  }

  // Solve A x = b with every free variable zero; nullopt when inconsistent.
  std::optional<std::vector<Scalar>> solve(
      const std::vector<Scalar>& b) const {
    SKEIN_CHECK(b.size() == rows_);
    Matrix aug(kind_, rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[i];
    }
    std::vector<std::size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<Scalar> x(cols_, Scalar::zero(kind_));
    for (std::size_t i = 0; i < pivots.size(); ++i)
      x[pivots[i]] = aug.at(i, cols_);
    return x;
  }

  // Solve A X = B for all columns of B at once; nullopt if inconsistent.
  std::optional<Matrix> solve_matrix(const Matrix& b) const {
    SKEIN_CHECK(b.rows_ == rows_);
    Matrix aug(kind_, rows_, cols_ + b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j)
        aug.at(i, cols_ + j) = b.at(i, j);
    }
    std::vector<std::size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() >= cols_) return std::nullopt;
    Matrix x(kind_, cols_, b.cols_);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t j = 0; j < b.cols_; ++j)
        x.at(pivots[i], j) = aug.at(i, cols_ + j);
    return x;
  }

  // Is v in the row space?
  bool row_space_contains(const std::vector<Scalar>& v) const {
    SKEIN_CHECK(v.size() == cols_);
    Matrix r = *this;
    std::vector<std::size_t> pivots = r.rref();
    std::vector<Scalar> w = v;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      Scalar f = w[pivots[i]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        w[j] = w[j] - f * r.at(i, j);
    }
    for (const auto& c : w)
      if (!c.is_zero()) return false;
    return true;
  }

  // Row space of other contained in row space of *this?
  bool row_space_contains_all(const Matrix& other) const {
    SKEIN_CHECK(other.cols_ == cols_);
    Matrix r = *this;
    std::vector<std::size_t> pivots = r.rref();
    for (std::size_t k = 0; k < other.rows_; ++k) {
      std::vector<Scalar> w(cols_);
      for (std::size_t j = 0; j < cols_; ++j) w[j] = other.at(k, j);
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        Scalar f = w[pivots[i]];
        if (f.is_zero()) continue;
        for (std::size_t j = 0; j < cols_; ++j)
          w[j] = w[j] - f * r.at(i, j);
      }
      for (const auto& c : w)
        if (!c.is_zero()) return false;
    }
    return true;
  }

 private:
  FieldKind kind_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

// Radical of the bilinear form with Gram matrix g: rows spanning
// {v : g v = 0}.  g must be square (and for the intended callers symmetric).
inline Matrix bilinear_radical(const Matrix& g) {
  SKEIN_CHECK(g.rows() == g.cols());
  return g.nullspace();
}

// Positive definiteness of a symmetric matrix, decided exactly by the signs
// of the successive pivots under symmetric elimination (no row exchanges;
// the i-th pivot is the ratio of leading principal minors).
inline bool positive_definite(const Matrix& g) {
  SKEIN_CHECK(g.rows() == g.cols());
  Matrix m = g;
  std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (m.at(i, i).sign() <= 0) return false;
    for (std::size_t r = i + 1; r < n; ++r) {
      if (m.at(r, i).is_zero()) continue;
      Scalar f = m.at(r, i) / m.at(i, i);
      for (std::size_t j = i; j < n; ++j)
        m.at(r, j) = m.at(r, j) - f * m.at(i, j);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Fast elimination mod p (rank certificates only).

class FpMatrix {
 public:
  FpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::uint64_t& at(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  std::uint64_t at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  static std::optional<FpMatrix> from_exact(const Matrix& m,
                                            const FpContext& ctx) {
    FpMatrix r(ctx.p, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        auto v = ctx.eval(m.at(i, j));
        if (!v) return std::nullopt;
        r.at(i, j) = *v;
      }
    return r;
  }

  // Destructive Gaussian elimination; returns rank over F_p.
  std::size_t rank() {
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t sel = row;
      while (sel < rows_ && at(sel, col) == 0) ++sel;
      if (sel == rows_) continue;
      if (sel != row)
        for (std::size_t j = col; j < cols_; ++j)
          std::swap(at(sel, j), at(row, j));
      std::uint64_t inv = fp::invmod(at(row, col), p_);
      for (std::size_t j = col; j < cols_; ++j)
        at(row, j) = fp::mulmod(at(row, j), inv, p_);
      for (std::size_t i = row + 1; i < rows_; ++i) {
        std::uint64_t f = at(i, col);
        if (f == 0) continue;
        for (std::size_t j = col; j < cols_; ++j) {
          std::uint64_t sub = fp::mulmod(f, at(row, j), p_);
          at(i, j) = (at(i, j) + p_ - sub) % p_;
        }
      }
      ++row;
    }
    return row;
  }

 private:
  std::uint64_t p_;
  std::size_t rows_, cols_;
  std::vector<std::uint64_t> data_;
};

// Best-effort exact rank lower bound: max rank over the certificate primes
// where the matrix reduces cleanly.  rank_p(A) <= rank(A) always.
inline std::size_t rank_lower_bound_mod_p(const Matrix& m) {
  std::size_t best = 0;
  for (std::uint64_t p : certificate_primes()) {
    auto ctx = FpContext::make(m.kind(), p);
    if (!ctx) continue;
    auto fm = FpMatrix::from_exact(m, *ctx);
    if (!fm) continue;
    best = std::max(best, fm->rank());
    if (best == std::min(m.rows(), m.cols())) break;
  }
  return best;
}

}  // namespace skein

// Exact dense linear algebra: arbitrary-precision integer and rational
// matrices, Smith normal form, and the homology kernels built on it.
// No floating point anywhere.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gerbes {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  bool is_zero() const {
    for (const T& x : data_)
      if (x != 0) return false;
    return true;
  }

  Mat<T> transposed() const {
    Mat<T> t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[a] += f * row[b]
  void add_row(int a, int b, const T& f) {
    for (int c = 0; c < cols_; ++c) (*this)(a, c) += f * (*this)(b, c);
  }
  void add_col(int a, int b, const T& f) {
    for (int r = 0; r < rows_; ++r) (*this)(r, a) += f * (*this)(r, b);
  }
  void scale_row(int a, const T& f) {
    for (int c = 0; c < cols_; ++c) (*this)(a, c) *= f;
  }
  void scale_col(int a, const T& f) {
    for (int r = 0; r < rows_; ++r) (*this)(r, a) *= f;
  }

 private:
  int rows_, cols_;
  std::vector<T> data_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const T& x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) r(i, j) += x * b(k, j);
      }
    }
  return r;
}

QMat to_rational(const IMat& m);

// Smith normal form u*m*v = d with u, v unimodular and the nonzero diagonal
// entries of d forming a divisibility chain d1 | d2 | ...
struct SmithNormalForm {
  IMat u, d, v;
  IMat u_inv, v_inv;
  int rank = 0;
  std::vector<Int> invariant_factors() const;  // nonzero diagonal entries
};

SmithNormalForm smith_normal_form(const IMat& m);

Int determinant(const IMat& m);  // Bareiss, exact

int rank_q(const QMat& m);
int rank_q(const IMat& m);

// Sparse rows as (column, value) pairs, sorted by column. Left-looking
// elimination; suited to the face-map differentials (few entries per row).
using SparseRowQ = std::vector<std::pair<int, Rat>>;
int rank_q_sparse(std::vector<SparseRowQ> rows);

// Basis of the right nullspace as matrix columns, canonical (reduced echelon
// with free variables in increasing column order).
QMat nullspace_q(const QMat& m);

// Cyclic factors (ascending divisibility chain, entries > 1) of
// ker(b mod m)/im(a mod m) where a: Z^p -> Z^n and b: Z^n -> Z^q are integer
// matrices with b*a == 0 (mod m). Used for cochain complexes over Z_m.
std::vector<Int> zm_cohomology_factors(const IMat& a, const IMat& b, const Int& m);

// Order of the group described by a factor list.
Int factor_list_order(const std::vector<Int>& factors);

// Normalize a multiset of cyclic moduli (>= 1; 1s dropped) into the invariant
// factor chain d1 | d2 | ... of the corresponding abelian group.
std::vector<Int> invariant_chain(std::vector<Int> moduli);

std::string format_factors(const std::vector<Int>& factors);  // "Z2 x Z4" or "0"

}  // namespace gerbes

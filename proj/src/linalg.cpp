#include "gerbes/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gerbes {

QMat to_rational(const IMat& m) {
  QMat q(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) q(r, c) = Rat(m(r, c));
  return q;
}

std::vector<Int> SmithNormalForm::invariant_factors() const {
  std::vector<Int> fs;
  int n = std::min(d.rows(), d.cols());
  for (int i = 0; i < n; ++i)
    if (d(i, i) != 0) fs.push_back(d(i, i));
  return fs;
}

namespace {

struct SnfWork {
  IMat m, u, v, u_inv, v_inv;

  explicit SnfWork(const IMat& in)
      : m(in),
        u(IMat::identity(in.rows())),
        v(IMat::identity(in.cols())),
        u_inv(IMat::identity(in.rows())),
        v_inv(IMat::identity(in.cols())) {}

  // m <- R*m, u <- R*u, u_inv <- u_inv*R^{-1}
  void row_swap(int a, int b) {
    m.swap_rows(a, b);
    u.swap_rows(a, b);
    u_inv.swap_cols(a, b);
  }
  void row_add(int a, int b, const Int& f) {
    m.add_row(a, b, f);
    u.add_row(a, b, f);
    u_inv.add_col(b, a, -f);  // right-multiply by the inverse op
  }
  void row_negate(int a) {
    m.scale_row(a, -1);
    u.scale_row(a, -1);
    u_inv.scale_col(a, -1);
  }
  void col_swap(int a, int b) {
    m.swap_cols(a, b);
    v.swap_cols(a, b);
    v_inv.swap_rows(a, b);
  }
  void col_add(int a, int b, const Int& f) {
    m.add_col(a, b, f);
    v.add_col(a, b, f);
    v_inv.add_row(b, a, -f);
  }
  void col_negate(int a) {
    m.scale_col(a, -1);
    v.scale_col(a, -1);
    v_inv.scale_row(a, -1);
  }
};

}  // namespace

SmithNormalForm smith_normal_form(const IMat& in) {
  SnfWork w(in);
  const int rows = in.rows(), cols = in.cols();
  int t = 0;
  while (true) {
    // locate pivot: smallest |entry| != 0 in the remaining block
    int pr = -1, pc = -1;
    Int best = 0;
    for (int r = t; r < rows; ++r)
      for (int c = t; c < cols; ++c) {
        Int a = abs(w.m(r, c));
        if (a != 0 && (pr < 0 || a < best)) {
          best = a;
          pr = r;
          pc = c;
        }
      }
    if (pr < 0) break;
    w.row_swap(t, pr);
    w.col_swap(t, pc);
    if (w.m(t, t) < 0) w.row_negate(t);

    bool clean = true;
    for (int r = t + 1; r < rows; ++r) {
      if (w.m(r, t) == 0) continue;
      Int q = w.m(r, t) / w.m(t, t);
      w.row_add(r, t, -q);
      if (w.m(r, t) != 0) clean = false;
    }
    for (int c = t + 1; c < cols; ++c) {
      if (w.m(t, c) == 0) continue;
      Int q = w.m(t, c) / w.m(t, t);
      w.col_add(c, t, -q);
      if (w.m(t, c) != 0) clean = false;
    }
    if (!clean) continue;  // rerun with smaller pivot

    // divisibility: pivot must divide the remaining block
    bool fixed = false;
    for (int r = t + 1; r < rows && !fixed; ++r)
      for (int c = t + 1; c < cols && !fixed; ++c)
        if (w.m(r, c) % w.m(t, t) != 0) {
          w.row_add(t, r, 1);
          fixed = true;
        }
    if (fixed) continue;
    ++t;
  }
  SmithNormalForm out;
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  out.u_inv = std::move(w.u_inv);
  out.v_inv = std::move(w.v_inv);
  out.d = std::move(w.m);
  out.rank = t;
  return out;
}

Int determinant(const IMat& in) {
  if (in.rows() != in.cols()) throw std::invalid_argument("determinant: square matrix required");
  int n = in.rows();
  if (n == 0) return 1;
  IMat m = in;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (m(r, k) != 0) {
          p = r;
          break;
        }
      if (p < 0) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = num / prev;  // Bareiss: exact division
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

int rank_q(const QMat& in) {
  QMat m = in;
  int rank = 0;
  int rows = m.rows(), cols = m.cols();
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (m(r, c) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    m.swap_rows(rank, p);
    Rat inv = Rat(1) / m(rank, c);
    m.scale_row(rank, inv);
    for (int r = 0; r < rows; ++r) {
      if (r != rank && m(r, c) != 0) m.add_row(r, rank, -m(r, c));
    }
    ++rank;
  }
  return rank;
}

int rank_q(const IMat& m) { return rank_q(to_rational(m)); }

int rank_q_sparse(std::vector<SparseRowQ> rows) {
  std::map<int, SparseRowQ> pivot_rows;  // leading column -> normalized row
  auto axpy = [](SparseRowQ& row, const Rat& factor, const SparseRowQ& other) {
    SparseRowQ out;
    out.reserve(row.size() + other.size());
    size_t a = 0, b = 0;
    while (a < row.size() || b < other.size()) {
      if (b == other.size() || (a < row.size() && row[a].first < other[b].first)) {
        out.push_back(row[a++]);
      } else if (a == row.size() || other[b].first < row[a].first) {
        out.push_back({other[b].first, factor * other[b].second});
        ++b;
      } else {
        Rat v = row[a].second + factor * other[b].second;
        if (v != 0) out.push_back({row[a].first, v});
        ++a;
        ++b;
      }
    }
    row = std::move(out);
  };
  // eliminate from the last column: face-map differentials share suffix
  // columns, and this orientation keeps fill-in an order of magnitude lower
  for (auto& row : rows) {
    for (auto& [c, v] : row) c = -c - 1;
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  // short rows first keeps the registered pivots sparse
  std::sort(rows.begin(), rows.end(), [](const SparseRowQ& a, const SparseRowQ& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    if (a.empty() || b.empty()) return false;
    return a[0].first < b[0].first;
  });
  int rank = 0;
  for (auto& row : rows) {
    while (!row.empty()) {
      auto it = pivot_rows.find(row[0].first);
      if (it == pivot_rows.end()) break;
      axpy(row, -row[0].second, it->second);
    }
    if (row.empty()) continue;
    Rat inv = Rat(1) / row[0].second;
    for (auto& [c, v] : row) v *= inv;
    pivot_rows.emplace(row[0].first, std::move(row));
    ++rank;
  }
  return rank;
}

QMat nullspace_q(const QMat& in) {
  QMat m = in;
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> pivot_of_col(cols, -1);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (m(r, c) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    m.swap_rows(rank, p);
    m.scale_row(rank, Rat(1) / m(rank, c));
    for (int r = 0; r < rows; ++r)
      if (r != rank && m(r, c) != 0) m.add_row(r, rank, -m(r, c));
    pivot_of_col[c] = rank;
    ++rank;
  }
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (pivot_of_col[c] < 0) free_cols.push_back(c);
  QMat basis(cols, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis(fc, static_cast<int>(k)) = 1;
    for (int c = 0; c < cols; ++c) {
      int pr = pivot_of_col[c];
      if (pr >= 0) basis(c, static_cast<int>(k)) = -m(pr, fc);
    }
  }
  return basis;
}

std::vector<Int> zm_cohomology_factors(const IMat& a, const IMat& b, const Int& m) {
  if (m < 2) throw std::invalid_argument("zm_cohomology_factors: modulus must be >= 2");
  const int n = b.cols();
  if (a.rows() != n) throw std::invalid_argument("zm_cohomology_factors: dimension mismatch");

  // Lattice of x with b*x == 0 (mod m): columns of v_b * diag(l_i),
  // l_i = m / gcd(d_i, m).
  SmithNormalForm sb = smith_normal_form(b);
  std::vector<Int> l(n, 1);
  for (int i = 0; i < n; ++i) {
    Int di = (i < std::min(sb.d.rows(), sb.d.cols())) ? sb.d(i, i) : Int(0);
    l[i] = m / gcd(di, m);  // gcd(0, m) == m
  }

  // Sublattice: columns of a together with m*I. Express in kernel-lattice
  // coordinates: x = diag(1/l) * v_inv * n_mat, entrywise exact.
  const int p = a.cols();
  IMat n_mat(n, p + n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < p; ++c) n_mat(r, c) = a(r, c);
    n_mat(r, p + r) = m;
  }
  IMat y = mat_mul(sb.v_inv, n_mat);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < p + n; ++c) {
      if (y(r, c) % l[r] != 0)
        throw std::logic_error("zm_cohomology_factors: b*a != 0 mod m");
      y(r, c) /= l[r];
    }

  SmithNormalForm sx = smith_normal_form(y);
  std::vector<Int> out;
  for (int i = 0; i < n; ++i) {
    Int di = (i < std::min(sx.d.rows(), sx.d.cols())) ? sx.d(i, i) : Int(0);
    if (di == 0) throw std::logic_error("zm_cohomology_factors: quotient not finite");
    if (di > 1) out.push_back(di);
  }
  return invariant_chain(out);
}

Int factor_list_order(const std::vector<Int>& factors) {
  Int n = 1;
  for (const Int& f : factors) n *= f;
  return n;
}

std::vector<Int> invariant_chain(std::vector<Int> moduli) {
  // bucket prime powers per prime, then the k-th largest powers multiply up
  std::map<Int, std::vector<Int>> powers;
  for (Int m : moduli) {
    if (m <= 1) continue;
    for (Int p = 2; p * p <= m; ++p) {
      if (m % p != 0) continue;
      Int q = 1;
      while (m % p == 0) {
        q *= p;
        m /= p;
      }
      powers[p].push_back(q);
    }
    if (m > 1) powers[m].push_back(m);
  }
  size_t levels = 0;
  for (auto& [p, v] : powers) {
    std::sort(v.begin(), v.end(), std::greater<Int>());
    levels = std::max(levels, v.size());
  }
  std::vector<Int> chain(levels, 1);
  for (auto& [p, v] : powers)
    for (size_t i = 0; i < v.size(); ++i) chain[i] *= v[i];
  std::sort(chain.begin(), chain.end());  // ascending divisibility
  return chain;
}

std::string format_factors(const std::vector<Int>& factors) {
  if (factors.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) os << " x ";
    os << "Z" << factors[i];
  }
  return os.str();
}

}  // namespace gerbes

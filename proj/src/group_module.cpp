#include "gerbes/group_module.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gerbes/error.hpp"

namespace gerbes {

namespace {

long mod_reduce(long x, long m) {
  long r = x % m;
  return r < 0 ? r + m : r;
}

void validate_module(const FiniteGroup& g, const GroupModule& m) {
  const int n = g.order();
  if (m.coeff == Coeff::mod && m.modulus < 2)
    throw ValidationError("module modulus must be >= 2");
  auto check_shapes = [&](auto& acts) {
    if (static_cast<int>(acts.size()) != n)
      throw ValidationError("module needs one action matrix per group element");
    for (auto& a : acts)
      if (a.rows() != m.rank || a.cols() != m.rank)
        throw ValidationError("action matrix shape mismatch");
  };
  if (m.coeff == Coeff::rational) {
    check_shapes(m.action_q);
    if (!(m.action_q[0] == QMat::identity(m.rank)))
      throw ValidationError("action(identity) != identity matrix");
    for (Elt a = 0; a < n; ++a)
      for (Elt b = 0; b < n; ++b)
        if (!(mat_mul(m.action_q[a], m.action_q[b]) == m.action_q[g.mul(a, b)]))
          throw ValidationError("action is not a homomorphism");
  } else {
    check_shapes(m.action_m);
    const Int mm = m.modulus;
    auto eq_mod = [&](const IMat& x, const IMat& y) {
      for (int r = 0; r < x.rows(); ++r)
        for (int c = 0; c < x.cols(); ++c)
          if (((x(r, c) - y(r, c)) % mm) != 0) return false;
      return true;
    };
    if (!eq_mod(m.action_m[0], IMat::identity(m.rank)))
      throw ValidationError("action(identity) != identity matrix");
    for (Elt a = 0; a < n; ++a)
      for (Elt b = 0; b < n; ++b)
        if (!eq_mod(mat_mul(m.action_m[a], m.action_m[b]), m.action_m[g.mul(a, b)]))
          throw ValidationError("action is not a homomorphism mod m");
  }
}

}  // namespace

GroupModule trivial_module_q(const FiniteGroup& g, int rank) {
  GroupModule m;
  m.coeff = Coeff::rational;
  m.rank = rank;
  m.action_q.assign(g.order(), QMat::identity(rank));
  return m;
}

GroupModule trivial_module_mod(const FiniteGroup& g, int rank, long mod) {
  GroupModule m;
  m.coeff = Coeff::mod;
  m.modulus = mod;
  m.rank = rank;
  m.action_m.assign(g.order(), IMat::identity(rank));
  validate_module(g, m);
  return m;
}

GroupModule sign_module_q(const FiniteGroup& g, const std::vector<int>& signs) {
  std::vector<QMat> acts;
  for (int s : signs) {
    QMat a = QMat::identity(1);
    a(0, 0) = s;
    acts.push_back(a);
  }
  return module_from_actions_q(g, std::move(acts));
}

GroupModule module_from_actions_q(const FiniteGroup& g, std::vector<QMat> action) {
  GroupModule m;
  m.coeff = Coeff::rational;
  m.rank = action.empty() ? 0 : action[0].rows();
  m.action_q = std::move(action);
  validate_module(g, m);
  return m;
}

GroupModule module_from_actions_mod(const FiniteGroup& g, std::vector<IMat> action, long mod) {
  GroupModule m;
  m.coeff = Coeff::mod;
  m.modulus = mod;
  m.rank = action.empty() ? 0 : action[0].rows();
  m.action_m = std::move(action);
  validate_module(g, m);
  return m;
}

namespace {

// rows: one block per (g,h) pair constraint F(gh) - F(g) - g.F(h) = 0,
// plus rank rows pinning F(identity) = 0; cols: n*rank unknowns
template <class MatT, class Getter>
MatT z1_constraint_matrix(const FiniteGroup& g, int rank, Getter act) {
  const int n = g.order();
  MatT a(n * n * rank + rank, n * rank);
  int row = 0;
  for (Elt x = 0; x < n; ++x)
    for (Elt y = 0; y < n; ++y) {
      Elt xy = g.mul(x, y);
      for (int i = 0; i < rank; ++i) {
        a(row + i, xy * rank + i) += 1;
        a(row + i, x * rank + i) -= 1;
        for (int j = 0; j < rank; ++j) a(row + i, y * rank + j) -= act(x, i, j);
      }
      row += rank;
    }
  for (int i = 0; i < rank; ++i) a(row + i, 0 * rank + i) = 1;
  return a;
}

// closure of generators under addition mod m; stops silently at the limit
void enumerate_span(ZmSpan& span, long limit) {
  std::set<std::vector<long>> all;
  all.insert(std::vector<long>(span.length, 0));
  for (const auto& gen : span.generators) {
    // add all multiples of gen to everything found so far
    std::set<std::vector<long>> next(all);
    for (const auto& base : all) {
      std::vector<long> cur = base;
      for (int k = 1; k < span.modulus; ++k) {
        for (int i = 0; i < span.length; ++i) cur[i] = mod_reduce(cur[i] + gen[i], span.modulus);
        next.insert(cur);
        if (static_cast<long>(next.size()) > limit) {
          span.enumerated = false;
          return;
        }
      }
    }
    all = std::move(next);
  }
  span.elements.assign(all.begin(), all.end());
  span.enumerated = true;
}

ZmSpan span_from_kernel(const IMat& a, long m, long enum_limit) {
  ZmSpan span;
  span.modulus = m;
  span.length = a.cols();
  auto snf = smith_normal_form(a);
  const Int mm = m;
  for (int i = 0; i < a.cols(); ++i) {
    Int di = (i < std::min(snf.d.rows(), snf.d.cols())) ? snf.d(i, i) : Int(0);
    Int l = mm / gcd(di, mm);
    // column i of v scaled by l, reduced mod m
    std::vector<long> vec(a.cols());
    bool zero = true;
    for (int r = 0; r < a.cols(); ++r) {
      Int e = (snf.v(r, i) * l) % mm;
      if (e < 0) e += mm;
      vec[r] = static_cast<long>(e);
      if (vec[r] != 0) zero = false;
    }
    if (!zero) span.generators.push_back(std::move(vec));
  }
  std::sort(span.generators.begin(), span.generators.end());
  enumerate_span(span, enum_limit);
  return span;
}

}  // namespace

CocycleSpace z1_cocycles(const FiniteGroup& g, const GroupModule& m, long enum_limit) {
  validate_module(g, m);
  CocycleSpace out;
  out.coeff = m.coeff;
  if (m.rank == 0) {
    if (m.coeff == Coeff::rational)
      out.basis = QMat(0, 0);
    else {
      out.span.modulus = m.modulus;
      out.span.length = 0;
      out.span.elements = {std::vector<long>{}};
      out.span.enumerated = true;
    }
    return out;
  }
  if (m.coeff == Coeff::rational) {
    QMat a = z1_constraint_matrix<QMat>(
        g, m.rank, [&](Elt x, int i, int j) { return m.action_q[x](i, j); });
    out.basis = nullspace_q(a);
  } else {
    IMat a = z1_constraint_matrix<IMat>(
        g, m.rank, [&](Elt x, int i, int j) { return m.action_m[x](i, j); });
    out.span = span_from_kernel(a, m.modulus, enum_limit);
  }
  return out;
}

CocycleSpace b1_coboundaries(const FiniteGroup& g, const GroupModule& m, long enum_limit) {
  validate_module(g, m);
  const int n = g.order();
  CocycleSpace out;
  out.coeff = m.coeff;
  if (m.coeff == Coeff::rational) {
    // columns: image of the basis vectors xi = e_j under xi -> (g -> xi - g.xi)
    QMat img(n * m.rank, m.rank);
    for (int j = 0; j < m.rank; ++j)
      for (Elt x = 0; x < n; ++x)
        for (int i = 0; i < m.rank; ++i) {
          Rat v = (i == j ? Rat(1) : Rat(0)) - m.action_q[x](i, j);
          img(x * m.rank + i, j) = v;
        }
    // canonical basis for the column space: transpose-echelon trick
    QMat rref = img.transposed();
    // row reduce, keep nonzero rows as basis columns
    int rank_rows = 0;
    for (int c = 0; c < rref.cols() && rank_rows < rref.rows(); ++c) {
      int p = -1;
      for (int r = rank_rows; r < rref.rows(); ++r)
        if (rref(r, c) != 0) {
          p = r;
          break;
        }
      if (p < 0) continue;
      rref.swap_rows(rank_rows, p);
      rref.scale_row(rank_rows, Rat(1) / rref(rank_rows, c));
      for (int r = 0; r < rref.rows(); ++r)
        if (r != rank_rows && rref(r, c) != 0) rref.add_row(r, rank_rows, -rref(r, c));
      ++rank_rows;
    }
    QMat basis(n * m.rank, rank_rows);
    for (int k = 0; k < rank_rows; ++k)
      for (int c = 0; c < rref.cols(); ++c) basis(c, k) = rref(k, c);
    out.basis = basis;
  } else {
    out.span.modulus = m.modulus;
    out.span.length = n * m.rank;
    for (int j = 0; j < m.rank; ++j) {
      std::vector<long> vec(n * m.rank, 0);
      bool zero = true;
      for (Elt x = 0; x < n; ++x)
        for (int i = 0; i < m.rank; ++i) {
          long v = (i == j ? 1 : 0) - static_cast<long>(m.action_m[x](i, j) % m.modulus);
          vec[x * m.rank + i] = mod_reduce(v, m.modulus);
          if (vec[x * m.rank + i] != 0) zero = false;
        }
      if (!zero) out.span.generators.push_back(std::move(vec));
    }
    std::sort(out.span.generators.begin(), out.span.generators.end());
    enumerate_span(out.span, enum_limit);
  }
  return out;
}

bool satisfies_z1_law_mod(const FiniteGroup& g, const GroupModule& m,
                          const std::vector<long>& f) {
  const int n = g.order();
  for (Elt x = 0; x < n; ++x)
    for (Elt y = 0; y < n; ++y) {
      Elt xy = g.mul(x, y);
      for (int i = 0; i < m.rank; ++i) {
        long lhs = f[xy * m.rank + i];
        long rhs = f[x * m.rank + i];
        for (int j = 0; j < m.rank; ++j)
          rhs += static_cast<long>(m.action_m[x](i, j)) * f[y * m.rank + j];
        if (mod_reduce(lhs - rhs, m.modulus) != 0) return false;
      }
    }
  return true;
}

bool satisfies_z1_law_q(const FiniteGroup& g, const GroupModule& m, const std::vector<Rat>& f) {
  const int n = g.order();
  for (Elt x = 0; x < n; ++x)
    for (Elt y = 0; y < n; ++y) {
      Elt xy = g.mul(x, y);
      for (int i = 0; i < m.rank; ++i) {
        Rat rhs = f[x * m.rank + i];
        for (int j = 0; j < m.rank; ++j) rhs += m.action_q[x](i, j) * f[y * m.rank + j];
        if (f[xy * m.rank + i] != rhs) return false;
      }
    }
  return true;
}

namespace {

// shared assembly of the bar differential C^k -> C^{k+1}
template <class MatT, class Getter>
MatT bar_differential(const FiniteGroup& g, int rank, int k, Getter act) {
  const int n = g.order();
  auto pow = [&](int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= n;
    return r;
  };
  const long rows_tuples = pow(k + 1), cols_tuples = pow(k);
  MatT d(static_cast<int>(rows_tuples * rank), static_cast<int>(cols_tuples * rank));

  std::vector<Elt> t(k + 1);
  for (long ti = 0; ti < rows_tuples; ++ti) {
    long rest = ti;
    for (int i = k; i >= 0; --i) {
      t[i] = static_cast<Elt>(rest % n);
      rest /= n;
    }
    auto tuple_index = [&](const std::vector<Elt>& tp) {
      long idx = 0;
      for (Elt e : tp) idx = idx * n + e;
      return idx;
    };
    // face 0: g_1 acts on f(g_2..g_{k+1})
    {
      std::vector<Elt> sub(t.begin() + 1, t.end());
      long ci = tuple_index(sub);
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
          d(static_cast<int>(ti * rank + i), static_cast<int>(ci * rank + j)) += act(t[0], i, j);
    }
    // middle faces: multiply adjacent entries
    for (int f = 1; f <= k; ++f) {
      std::vector<Elt> sub;
      for (int i = 0; i <= k; ++i) {
        if (i == f - 1) {
          sub.push_back(g.mul(t[i], t[i + 1]));
          ++i;
        } else {
          sub.push_back(t[i]);
        }
      }
      long ci = tuple_index(sub);
      int sign = (f % 2 == 0) ? 1 : -1;
      for (int i = 0; i < rank; ++i)
        d(static_cast<int>(ti * rank + i), static_cast<int>(ci * rank + i)) += sign;
    }
    // last face: drop g_{k+1}
    {
      std::vector<Elt> sub(t.begin(), t.end() - 1);
      long ci = tuple_index(sub);
      int sign = ((k + 1) % 2 == 0) ? 1 : -1;
      for (int i = 0; i < rank; ++i)
        d(static_cast<int>(ti * rank + i), static_cast<int>(ci * rank + i)) += sign;
    }
  }
  return d;
}

}  // namespace

QMat bar_differential_q(const FiniteGroup& g, const GroupModule& m, int k) {
  return bar_differential<QMat>(g, m.rank, k,
                                [&](Elt x, int i, int j) { return m.action_q[x](i, j); });
}

IMat bar_differential_mod(const FiniteGroup& g, const GroupModule& m, int k) {
  return bar_differential<IMat>(g, m.rank, k,
                                [&](Elt x, int i, int j) { return m.action_m[x](i, j); });
}

CohomologyResult group_cohomology(const FiniteGroup& g, const GroupModule& m, int degree,
                                  long cell_limit) {
  if (degree < 0 || degree > 3) throw ValidationError("group_cohomology: degree must be 0..3");
  validate_module(g, m);
  const long n = g.order();
  long cells = m.rank;
  for (int i = 0; i <= degree + 1; ++i) cells *= n;
  if (m.rank > 0 && cells > cell_limit)
    throw SizeBoundError("SizeBound: bar complex too large (" + std::to_string(cells) + " cells)");

  CohomologyResult res;
  res.coeff = m.coeff;
  if (m.rank == 0) return res;
  if (m.coeff == Coeff::rational) {
    QMat d_out = bar_differential_q(g, m, degree);
    int ker = d_out.cols() - rank_q(d_out);
    int im = 0;
    if (degree > 0) {
      QMat d_in = bar_differential_q(g, m, degree - 1);
      im = rank_q(d_in);
    }
    res.q_dim = ker - im;
  } else {
    IMat d_out = bar_differential_mod(g, m, degree);
    IMat d_in = degree > 0 ? bar_differential_mod(g, m, degree - 1) : IMat(d_out.cols(), 0);
    res.factors = zm_cohomology_factors(d_in, d_out, Int(m.modulus));
  }
  return res;
}

std::string CohomologyResult::describe() const {
  if (coeff == Coeff::rational) return "Q^" + std::to_string(q_dim);
  return format_factors(factors);
}

Int zm_kernel_size(const IMat& a, long m) {
  auto snf = smith_normal_form(a);
  Int size = 1;
  const Int mm = m;
  for (int i = 0; i < a.cols(); ++i) {
    Int di = (i < std::min(snf.d.rows(), snf.d.cols())) ? snf.d(i, i) : Int(0);
    size *= gcd(di, mm);
  }
  return size;
}

Int zm_image_size(const IMat& a, long m) {
  Int total = 1;
  for (int i = 0; i < a.cols(); ++i) total *= m;
  return total / zm_kernel_size(a, m);
}

}  // namespace gerbes

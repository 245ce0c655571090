#include "gerbes/groupoid_module.hpp"

#include <algorithm>
#include <numeric>

#include "gerbes/error.hpp"

namespace gerbes {

void validate_groupoid_module(const FiniteGroupoid& g, const GroupoidModule& m) {
  if (static_cast<int>(m.rank.size()) != g.n_objects())
    throw ValidationError("groupoid module: rank table size mismatch");
  if (m.coeff == Coeff::mod && m.modulus < 2)
    throw ValidationError("groupoid module: modulus must be >= 2");
  auto shape_ok = [&](auto& acts) {
    if (static_cast<int>(acts.size()) != g.n_arrows())
      throw ValidationError("groupoid module: one matrix per arrow required");
    for (int x = 0; x < g.n_arrows(); ++x)
      if (acts[x].rows() != m.rank[g.src(x)] || acts[x].cols() != m.rank[g.tgt(x)])
        throw ValidationError("groupoid module: matrix shape mismatch at arrow " +
                              std::to_string(x));
  };
  auto run_checks = [&](auto& acts, auto eq, auto make_identity) {
    for (int obj = 0; obj < g.n_objects(); ++obj)
      if (!eq(acts[g.unit(obj)], make_identity(m.rank[obj])))
        throw ValidationError("groupoid module: act(unit) != id at object " +
                              std::to_string(obj));
    for (int x = 0; x < g.n_arrows(); ++x)
      for (int y = 0; y < g.n_arrows(); ++y) {
        if (!g.composable(x, y)) continue;
        if (!eq(mat_mul(acts[x], acts[y]), acts[g.comp(x, y)]))
          throw ValidationError("groupoid module: action not functorial at (" +
                                std::to_string(x) + "," + std::to_string(y) + ")");
      }
  };
  if (m.coeff == Coeff::rational) {
    shape_ok(m.act_q);
    run_checks(
        m.act_q, [](const QMat& a, const QMat& b) { return a == b; },
        [](int r) { return QMat::identity(r); });
  } else {
    shape_ok(m.act_m);
    const long mod = m.modulus;
    run_checks(
        m.act_m,
        [mod](const IMat& a, const IMat& b) {
          if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
          for (int r = 0; r < a.rows(); ++r)
            for (int c = 0; c < a.cols(); ++c)
              if ((a(r, c) - b(r, c)) % mod != 0) return false;
          return true;
        },
        [](int r) { return IMat::identity(r); });
  }
}

GroupoidModule trivial_groupoid_module_q(const FiniteGroupoid& g, int rank) {
  GroupoidModule m;
  m.coeff = Coeff::rational;
  m.rank.assign(g.n_objects(), rank);
  m.act_q.assign(g.n_arrows(), QMat::identity(rank));
  return m;
}

GroupoidModule trivial_groupoid_module_mod(const FiniteGroupoid& g, int rank, long mod) {
  GroupoidModule m;
  m.coeff = Coeff::mod;
  m.modulus = mod;
  m.rank.assign(g.n_objects(), rank);
  m.act_m.assign(g.n_arrows(), IMat::identity(rank));
  return m;
}

GroupoidModule module_of_group(const FiniteGroupoid& one_object, const GroupModule& gm) {
  if (one_object.n_objects() != 1)
    throw ValidationError("module_of_group needs a one-object groupoid");
  GroupoidModule m;
  m.coeff = gm.coeff;
  m.modulus = gm.modulus;
  m.rank = {gm.rank};
  m.act_q = gm.action_q;
  m.act_m = gm.action_m;
  validate_groupoid_module(one_object, m);
  return m;
}

GroupoidModule pullback_module(const GroupoidModule& m, const std::vector<int>& obj_map,
                               const std::vector<int>& arrow_map) {
  GroupoidModule out;
  out.coeff = m.coeff;
  out.modulus = m.modulus;
  out.rank.reserve(obj_map.size());
  for (int o : obj_map) out.rank.push_back(m.rank[o]);
  for (int x : arrow_map) {
    if (m.coeff == Coeff::rational)
      out.act_q.push_back(m.act_q[x]);
    else
      out.act_m.push_back(m.act_m[x]);
  }
  return out;
}

namespace {

int anchor_object(const FiniteGroupoid& g, const std::vector<int>& tuple, int degree,
                  Side side) {
  if (degree == 0) return tuple[0];  // degree-0 tuples are objects
  return side == Side::right ? g.tgt(tuple.back()) : g.src(tuple.front());
}

}  // namespace

CochainSpace cochain_space(const FiniteGroupoid& g, const GroupoidModule& m,
                           const std::vector<ComposableTuples>& levels, int degree, Side side) {
  CochainSpace cs;
  cs.degree = degree;
  cs.side = side;
  const auto& tuples = levels[degree].tuples;
  cs.offset.resize(tuples.size() + 1, 0);
  for (size_t t = 0; t < tuples.size(); ++t)
    cs.offset[t + 1] = cs.offset[t] + m.rank[anchor_object(g, tuples[t], degree, side)];
  cs.dim = cs.offset.back();
  return cs;
}

namespace {

// shared assembly for both coefficient rings
template <class MatT, class Ident, class Act>
MatT assemble_differential(const FiniteGroupoid& g, const GroupoidModule& m, int n, Side side,
                           const std::vector<ComposableTuples>& levels, Ident ident, Act act) {
  CochainSpace rows = cochain_space(g, m, levels, n, side);
  CochainSpace cols = cochain_space(g, m, levels, n - 1, side);
  MatT d(rows.dim, cols.dim);
  const auto& tuples = levels[n].tuples;
  for (size_t t = 0; t < tuples.size(); ++t) {
    const auto& tuple = tuples[t];
    for (int i = 0; i <= n; ++i) {
      int ft = levels[n].face[i][t];
      int sign = (i % 2 == 0) ? 1 : -1;
      int r0 = rows.offset[t];
      int c0 = cols.offset[ft];
      bool twisted = (side == Side::right && i == n) || (side == Side::left && i == 0);
      if (!twisted) {
        int rk = rows.offset[t + 1] - r0;
        for (int k = 0; k < rk; ++k) ident(d, r0 + k, c0 + k, sign);
      } else {
        // right: (-1)^n act(x_n)^{-1}; left: +act(x_1)
        int arrow = side == Side::right ? g.inv(tuple.back()) : tuple.front();
        int s = side == Side::right ? sign : 1;
        act(d, r0, c0, arrow, s);
      }
    }
  }
  return d;
}

}  // namespace

QMat groupoid_differential_q(const FiniteGroupoid& g, const GroupoidModule& m, int n,
                             Side side) {
  if (n < 1 || n > 4) throw ValidationError("groupoid differential: degree must be 1..4");
  auto levels = nerve_tuples(g, n);
  return assemble_differential<QMat>(
      g, m, n, side, levels,
      [](QMat& d, int r, int c, int sign) { d(r, c) += sign; },
      [&](QMat& d, int r0, int c0, int arrow, int sign) {
        const QMat& a = m.act_q[arrow];
        for (int i = 0; i < a.rows(); ++i)
          for (int j = 0; j < a.cols(); ++j) d(r0 + i, c0 + j) += sign * a(i, j);
      });
}

IMat groupoid_differential_mod(const FiniteGroupoid& g, const GroupoidModule& m, int n,
                               Side side) {
  if (n < 1 || n > 4) throw ValidationError("groupoid differential: degree must be 1..4");
  auto levels = nerve_tuples(g, n);
  return assemble_differential<IMat>(
      g, m, n, side, levels,
      [](IMat& d, int r, int c, int sign) { d(r, c) += sign; },
      [&](IMat& d, int r0, int c0, int arrow, int sign) {
        const IMat& a = m.act_m[arrow];
        for (int i = 0; i < a.rows(); ++i)
          for (int j = 0; j < a.cols(); ++j) d(r0 + i, c0 + j) += sign * a(i, j);
      });
}

namespace {

// restriction of groupoid and module to one connected component
struct Restriction {
  FiniteGroupoid gpd;
  GroupoidModule mod;
};

Restriction restrict_component(const FiniteGroupoid& g, const GroupoidModule& m,
                               const std::vector<int>& objects) {
  std::vector<int> obj_index(g.n_objects(), -1);
  for (size_t i = 0; i < objects.size(); ++i) obj_index[objects[i]] = static_cast<int>(i);
  std::vector<int> arrows;
  for (int x = 0; x < g.n_arrows(); ++x)
    if (obj_index[g.src(x)] >= 0) arrows.push_back(x);
  std::vector<int> arrow_index(g.n_arrows(), -1);
  for (size_t i = 0; i < arrows.size(); ++i) arrow_index[arrows[i]] = static_cast<int>(i);

  GroupoidData d;
  d.n_objects = static_cast<int>(objects.size());
  d.unit.resize(objects.size());
  for (size_t i = 0; i < objects.size(); ++i) d.unit[i] = arrow_index[g.unit(objects[i])];
  const int na = static_cast<int>(arrows.size());
  d.src.resize(na);
  d.tgt.resize(na);
  d.inv.resize(na);
  d.comp.assign(na, std::vector<int>(na, -1));
  for (int a = 0; a < na; ++a) {
    d.src[a] = obj_index[g.src(arrows[a])];
    d.tgt[a] = obj_index[g.tgt(arrows[a])];
    d.inv[a] = arrow_index[g.inv(arrows[a])];
    for (int b = 0; b < na; ++b)
      if (g.composable(arrows[a], arrows[b])) d.comp[a][b] = arrow_index[g.comp(arrows[a], arrows[b])];
  }
  Restriction r;
  r.gpd = FiniteGroupoid(std::move(d));
  r.mod = pullback_module(m, objects, arrows);
  return r;
}

// sparse rows of the rational differential C^{n-1} -> C^n
std::vector<SparseRowQ> sparse_differential_q(const FiniteGroupoid& g, const GroupoidModule& m,
                                              int n, Side side,
                                              const std::vector<ComposableTuples>& levels) {
  CochainSpace rows = cochain_space(g, m, levels, n, side);
  CochainSpace cols = cochain_space(g, m, levels, n - 1, side);
  std::vector<SparseRowQ> out(rows.dim);
  const auto& tuples = levels[n].tuples;
  for (size_t t = 0; t < tuples.size(); ++t) {
    const auto& tuple = tuples[t];
    for (int i = 0; i <= n; ++i) {
      int ft = levels[n].face[i][t];
      int sign = (i % 2 == 0) ? 1 : -1;
      int r0 = rows.offset[t];
      int c0 = cols.offset[ft];
      bool twisted = (side == Side::right && i == n) || (side == Side::left && i == 0);
      if (!twisted) {
        int rk = rows.offset[t + 1] - r0;
        for (int k = 0; k < rk; ++k) out[r0 + k].push_back({c0 + k, Rat(sign)});
      } else {
        int arrow = side == Side::right ? g.inv(tuple.back()) : tuple.front();
        int s = side == Side::right ? sign : 1;
        const QMat& a = m.act_q[arrow];
        for (int r = 0; r < a.rows(); ++r)
          for (int c = 0; c < a.cols(); ++c)
            if (a(r, c) != 0) out[r0 + r].push_back({c0 + c, Rat(s) * a(r, c)});
      }
    }
  }
  // merge duplicate columns per row
  for (auto& row : out) {
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseRowQ merged;
    for (auto& [c, v] : row) {
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += v;
      else
        merged.push_back({c, v});
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& e) { return e.second == 0; }),
                 merged.end());
    row = std::move(merged);
  }
  return out;
}

CohomologyResult cohomology_connected(const FiniteGroupoid& g, const GroupoidModule& m,
                                      int degree, Side side, long cell_limit) {
  auto levels = nerve_tuples(g, degree + 1);
  int max_rank = 0;
  for (int r : m.rank) max_rank = std::max(max_rank, r);
  long top = static_cast<long>(levels[degree + 1].tuples.size()) * max_rank;
  long mid = static_cast<long>(levels[degree].tuples.size()) * max_rank;

  CohomologyResult res;
  res.coeff = m.coeff;
  if (m.coeff == Coeff::rational) {
    // sparse assembly; elimination fill is bounded by the square of the
    // column count, with one registered pivot row per column
    if (top > cell_limit || mid * mid > cell_limit)
      throw SizeBoundError("SizeBound: groupoid cochain space too large (" +
                           std::to_string(top) + " rows, " + std::to_string(mid) + " cols)");
    auto d_out = sparse_differential_q(g, m, degree + 1, side, levels);
    CochainSpace cs = cochain_space(g, m, levels, degree, side);
    int ker = cs.dim - rank_q_sparse(std::move(d_out));
    int im = 0;
    if (degree > 0) im = rank_q_sparse(sparse_differential_q(g, m, degree, side, levels));
    res.q_dim = ker - im;
  } else {
    // dense SNF route; guard the full matrix size
    if (top * mid > cell_limit)
      throw SizeBoundError("SizeBound: groupoid cochain matrix would have " +
                           std::to_string(top * mid) + " cells");
    IMat d_out = groupoid_differential_mod(g, m, degree + 1, side);
    IMat d_in = degree > 0 ? groupoid_differential_mod(g, m, degree, side)
                           : IMat(d_out.cols(), 0);
    res.factors = zm_cohomology_factors(d_in, d_out, Int(m.modulus));
  }
  return res;
}

}  // namespace

CohomologyResult groupoid_cohomology(const FiniteGroupoid& g, const GroupoidModule& m,
                                     int degree, Side side, long cell_limit) {
  if (degree < 0 || degree > 2)
    throw ValidationError("groupoid_cohomology: degree must be 0..2");
  validate_groupoid_module(g, m);

  auto components = g.connected_components();
  CohomologyResult res;
  res.coeff = m.coeff;
  std::vector<Int> moduli;
  for (const auto& comp : components) {
    CohomologyResult part;
    if (components.size() == 1) {
      part = cohomology_connected(g, m, degree, side, cell_limit);
    } else {
      Restriction r = restrict_component(g, m, comp);
      part = cohomology_connected(r.gpd, r.mod, degree, side, cell_limit);
    }
    res.q_dim += part.q_dim;
    moduli.insert(moduli.end(), part.factors.begin(), part.factors.end());
  }
  res.factors = invariant_chain(moduli);
  return res;
}

}  // namespace gerbes

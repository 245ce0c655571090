#include "gerbes/cech.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gerbes/error.hpp"

namespace gerbes {

IntComplex cech_complex(const Nerve& nerve) {
  IntComplex cx;
  cx.dims.resize(5);
  for (int d = 0; d <= 4; ++d) cx.dims[d] = nerve.count(d);
  cx.diffs.resize(4);
  for (int d = 0; d <= 3; ++d) {
    IMat m(cx.dims[d + 1], cx.dims[d]);
    for (int s = 0; s < cx.dims[d + 1]; ++s) {
      const auto& simplex = nerve.simplices[d + 1][s];
      int sign = 1;
      for (size_t drop = 0; drop < simplex.size(); ++drop) {
        std::vector<int> face = simplex;
        face.erase(face.begin() + static_cast<long>(drop));
        int idx = nerve.simplex_index(d, face);
        if (idx < 0) throw std::logic_error("cech_complex: nerve not downward closed");
        m(s, idx) += sign;
        sign = -sign;
      }
    }
    cx.diffs[d] = std::move(m);
  }
  for (int d = 0; d + 1 <= 3; ++d)
    if (!mat_mul(cx.diffs[d + 1], cx.diffs[d]).is_zero())
      throw std::logic_error("cech_complex: d o d != 0");
  return cx;
}

int cech_betti(const Nerve& nerve, int degree) {
  if (degree < 0 || degree > 3) throw ValidationError("cech_betti: degree must be 0..3");
  IntComplex cx = cech_complex(nerve);
  int ker = cx.dims[degree] - rank_q(cx.diffs[degree]);
  int im = degree > 0 ? rank_q(cx.diffs[degree - 1]) : 0;
  return ker - im;
}

CohomologyResult cech_cohomology(const Nerve& nerve, const std::vector<long>& cyclic_factors,
                                 int degree) {
  if (degree < 0 || degree > 3) throw ValidationError("cech_cohomology: degree must be 0..3");
  IntComplex cx = cech_complex(nerve);
  const IMat& d_out = cx.diffs[degree];
  IMat d_in = degree > 0 ? cx.diffs[degree - 1] : IMat(cx.dims[0], 0);

  int rank_out = rank_q(d_out);
  int rank_in = rank_q(d_in);
  int betti = cx.dims[degree] - rank_out - rank_in;
  auto torsion_in = smith_normal_form(d_in).invariant_factors();
  auto torsion_out = smith_normal_form(d_out).invariant_factors();

  CohomologyResult res;
  res.coeff = Coeff::mod;
  std::vector<Int> moduli;
  for (long m : cyclic_factors) {
    if (m < 2) throw ValidationError("cech_cohomology: cyclic factors must be >= 2");
    const Int mm = m;
    // universal coefficients: H^k(C) (x) Z_m  (+)  Tor(H^{k+1}(C), Z_m)
    for (int i = 0; i < betti; ++i) moduli.push_back(mm);
    for (const Int& t : torsion_in) {
      Int g = gcd(t, mm);
      if (g > 1) moduli.push_back(g);
    }
    for (const Int& t : torsion_out) {
      Int g = gcd(t, mm);
      if (g > 1) moduli.push_back(g);
    }
  }
  res.factors = invariant_chain(moduli);
  return res;
}

namespace {

// all vectors over Z_m of the given length, lexicographic
bool next_vector(std::vector<long>& v, long m) {
  for (size_t i = v.size(); i-- > 0;) {
    if (++v[i] < m) return true;
    v[i] = 0;
  }
  return false;
}

}  // namespace

Int cech_cohomology_order_bruteforce(const Nerve& nerve, long m, int degree, long enum_limit) {
  IntComplex cx = cech_complex(nerve);
  const IMat& d_out = cx.diffs[degree];
  const int n = cx.dims[degree];
  double total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<double>(m);
  if (total > static_cast<double>(enum_limit))
    throw SizeBoundError("cech brute force too large");

  auto is_zero_mod = [&](const IMat& mat, const std::vector<long>& v) {
    for (int r = 0; r < mat.rows(); ++r) {
      Int acc = 0;
      for (int c = 0; c < mat.cols(); ++c) acc += mat(r, c) * v[c];
      if (acc % m != 0) return false;
    }
    return true;
  };

  long cocycles = 0;
  if (n == 0) {
    cocycles = 1;
  } else {
    std::vector<long> v(n, 0);
    do {
      if (is_zero_mod(d_out, v)) ++cocycles;
    } while (next_vector(v, m));
  }

  // coboundaries by enumerating the previous cochain level
  long image = 1;
  if (degree > 0) {
    const IMat& d_in = cx.diffs[degree - 1];
    const int cols = d_in.cols();
    double prev_total = 1;
    for (int i = 0; i < cols; ++i) prev_total *= static_cast<double>(m);
    if (prev_total > static_cast<double>(enum_limit))
      throw SizeBoundError("cech brute force too large");
    std::set<std::vector<long>> images;
    std::vector<long> v(cols, 0);
    bool more = true;
    while (more) {
      std::vector<long> w(d_in.rows());
      for (int r = 0; r < d_in.rows(); ++r) {
        Int acc = 0;
        for (int c = 0; c < cols; ++c) acc += d_in(r, c) * v[c];
        acc %= m;
        if (acc < 0) acc += m;
        w[r] = static_cast<long>(acc);
      }
      images.insert(std::move(w));
      more = cols > 0 && next_vector(v, m);
    }
    image = static_cast<long>(images.size());
  }
  return Int(cocycles) / image;
}

GerbeClassification classify_bound_gerbes(const Nerve& nerve, const FiniteGroup& g,
                                          long enum_limit) {
  GerbeClassification out;
  out.center = g.center();
  Subgroup z = subgroup_from_elements(g, out.center, "center");
  std::vector<long> factors = abelian_invariant_factors(z.group);

  if (factors.empty()) {
    out.h2_factors = {};
    out.h2_order = 1;
  } else {
    auto res = cech_cohomology(nerve, factors, 2);
    out.h2_factors = res.factors;
    out.h2_order = res.group_order();
  }

  const int triangles = nerve.count(2);
  const int edges = nerve.count(1);
  const long zsize = z.group.order();
  double total = 1;
  for (int i = 0; i < triangles; ++i) total *= static_cast<double>(zsize);
  if (total > static_cast<double>(enum_limit)) {
    out.enumerated = false;
    out.class_count = out.h2_order;
    return out;
  }
  out.enumerated = true;

  // abelian cocycle condition per 3-simplex: g_bcd - g_acd + g_abd - g_abc = 0
  // (multiplicative in the subgroup)
  auto is_cocycle = [&](const std::vector<Elt>& vals) {
    for (int s = 0; s < nerve.count(3); ++s) {
      const auto& q = nerve.simplices[3][s];
      std::vector<int> faces;
      for (size_t drop = 0; drop < 4; ++drop) {
        std::vector<int> face = q;
        face.erase(face.begin() + static_cast<long>(drop));
        faces.push_back(nerve.simplex_index(2, face));
      }
      // faces in drop order: (bcd), (acd), (abd), (abc); signs +,-,+,-
      Elt acc = z.group.mul(vals[faces[0]], z.group.inv(vals[faces[1]]));
      acc = z.group.mul(acc, vals[faces[2]]);
      acc = z.group.mul(acc, z.group.inv(vals[faces[3]]));
      if (acc != FiniteGroup::id) return false;
    }
    return true;
  };

  // coboundary image: closure of delta(h) over single-edge generators
  std::set<std::vector<Elt>> image;
  image.insert(std::vector<Elt>(triangles, FiniteGroup::id));
  for (int e = 0; e < edges; ++e) {
    const auto& edge = nerve.simplices[1][e];
    for (Elt zi = 1; zi < z.group.order(); ++zi) {
      std::vector<Elt> gen(triangles, FiniteGroup::id);
      for (int t = 0; t < triangles; ++t) {
        const auto& tri = nerve.simplices[2][t];
        // delta h (abc) = h_bc - h_ac + h_ab
        std::vector<std::pair<std::vector<int>, int>> parts = {
            {{tri[1], tri[2]}, +1}, {{tri[0], tri[2]}, -1}, {{tri[0], tri[1]}, +1}};
        for (auto& [vs, sign] : parts)
          if (vs == edge) gen[t] = z.group.mul(gen[t], sign > 0 ? zi : z.group.inv(zi));
      }
      std::set<std::vector<Elt>> next = image;
      for (const auto& base : image) {
        std::vector<Elt> cur = base;
        while (true) {
          for (int t = 0; t < triangles; ++t) cur[t] = z.group.mul(cur[t], gen[t]);
          if (!next.insert(cur).second) break;
        }
      }
      image = std::move(next);
    }
  }

  std::set<std::vector<Elt>> seen;
  std::vector<Elt> vals(triangles, FiniteGroup::id);
  std::vector<long> code(triangles, 0);
  bool more = true;
  while (more) {
    for (int t = 0; t < triangles; ++t) vals[t] = static_cast<Elt>(code[t]);
    if (!seen.count(vals) && is_cocycle(vals)) {
      // orbit under the coboundary image; record the least representative
      std::vector<Elt> least = vals;
      for (const auto& h : image) {
        std::vector<Elt> cand(triangles);
        for (int t = 0; t < triangles; ++t) cand[t] = z.group.mul(vals[t], h[t]);
        seen.insert(cand);
        least = std::min(least, cand);
      }
      out.representatives.push_back(least);
    }
    more = triangles > 0 && next_vector(code, zsize);
  }
  std::sort(out.representatives.begin(), out.representatives.end());
  out.class_count = static_cast<long>(out.representatives.size());

  // embed representatives back into G via the center inclusion
  for (auto& rep : out.representatives)
    for (Elt& v : rep) v = z.embed[v];
  return out;
}

}  // namespace gerbes

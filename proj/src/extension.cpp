#include "gerbes/extension.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gerbes/error.hpp"

namespace gerbes {

std::vector<std::string> validate_extension(const GroupoidExtension& e) {
  std::vector<std::string> out;
  const auto& x = e.total;
  const auto& y = e.base;
  if (x.n_objects() != y.n_objects()) {
    out.push_back("object spaces differ");
    return out;
  }
  if (static_cast<int>(e.phi.size()) != x.n_arrows()) {
    out.push_back("phi size mismatch");
    return out;
  }
  for (int a = 0; a < x.n_arrows(); ++a) {
    int fa = e.phi[a];
    if (fa < 0 || fa >= y.n_arrows()) {
      out.push_back("phi out of range at " + std::to_string(a));
      return out;
    }
    if (y.src(fa) != x.src(a) || y.tgt(fa) != x.tgt(a))
      out.push_back("phi does not preserve endpoints at arrow " + std::to_string(a));
    if (e.phi[x.inv(a)] != y.inv(fa))
      out.push_back("phi does not preserve inverses at arrow " + std::to_string(a));
  }
  for (int m = 0; m < x.n_objects(); ++m)
    if (e.phi[x.unit(m)] != y.unit(m))
      out.push_back("phi does not preserve the unit at object " + std::to_string(m));
  for (int a = 0; a < x.n_arrows(); ++a)
    for (int b : x.arrows_from(x.tgt(a)))
      if (e.phi[x.comp(a, b)] != y.comp(e.phi[a], e.phi[b])) {
        out.push_back("phi not multiplicative at (" + std::to_string(a) + "," +
                      std::to_string(b) + ")");
      }
  std::vector<bool> hit(y.n_arrows(), false);
  for (int fa : e.phi) hit[fa] = true;
  for (int yarrow = 0; yarrow < y.n_arrows(); ++yarrow)
    if (!hit[yarrow]) out.push_back("phi not surjective: base arrow " + std::to_string(yarrow));

  if (static_cast<int>(e.kernel.size()) != x.n_objects()) {
    out.push_back("kernel table size mismatch");
    return out;
  }
  for (int m = 0; m < x.n_objects(); ++m) {
    std::vector<int> expect;
    for (int a : x.arrows_from(m))
      if (e.phi[a] == y.unit(m)) expect.push_back(a);
    std::sort(expect.begin(), expect.end());
    if (expect != e.kernel[m]) {
      out.push_back("kernel fiber mismatch at object " + std::to_string(m));
      continue;
    }
    for (int a : expect) {
      if (x.src(a) != m || x.tgt(a) != m)
        out.push_back("kernel arrow not a loop at object " + std::to_string(m));
      if (!std::binary_search(expect.begin(), expect.end(), x.inv(a)))
        out.push_back("kernel fiber not closed under inverse at object " + std::to_string(m));
      for (int b : expect)
        if (!std::binary_search(expect.begin(), expect.end(), x.comp(a, b)))
          out.push_back("kernel fiber not closed at object " + std::to_string(m));
    }
  }
  if (!out.empty()) return out;

  // principality: each phi-fiber is a free transitive right orbit of the
  // kernel at the target
  for (int yarrow = 0; yarrow < y.n_arrows(); ++yarrow) {
    std::vector<int> fiber;
    for (int a = 0; a < x.n_arrows(); ++a)
      if (e.phi[a] == yarrow) fiber.push_back(a);
    const auto& ker = e.kernel[y.tgt(yarrow)];
    if (fiber.size() != ker.size()) {
      out.push_back("fiber size != kernel size at base arrow " + std::to_string(yarrow));
      continue;
    }
    int x0 = fiber[0];
    std::set<int> image;
    for (int k : ker) image.insert(x.comp(x0, k));
    if (image != std::set<int>(fiber.begin(), fiber.end()))
      out.push_back("kernel action not transitive on fiber of base arrow " +
                    std::to_string(yarrow));
  }
  return out;
}

KernelTrivialization make_trivialization(std::vector<std::vector<int>> chi) {
  KernelTrivialization t;
  t.chi = std::move(chi);
  t.chi_inv.resize(t.chi.size());
  for (size_t m = 0; m < t.chi.size(); ++m)
    for (size_t g = 0; g < t.chi[m].size(); ++g) t.chi_inv[m][t.chi[m][g]] = static_cast<Elt>(g);
  return t;
}

bool is_valid_trivialization(const GroupoidExtension& e, const FiniteGroup& g,
                             const KernelTrivialization& chi) {
  if (static_cast<int>(chi.chi.size()) != e.total.n_objects()) return false;
  for (int m = 0; m < e.total.n_objects(); ++m) {
    const auto& row = chi.chi[m];
    if (static_cast<int>(row.size()) != g.order()) return false;
    std::set<int> vals(row.begin(), row.end());
    if (vals != std::set<int>(e.kernel[m].begin(), e.kernel[m].end())) return false;
    for (Elt a = 0; a < g.order(); ++a)
      for (Elt b = 0; b < g.order(); ++b)
        if (e.total.comp(row[a], row[b]) != row[g.mul(a, b)]) return false;
  }
  return true;
}

int CechExtension::arrow_of(int p, int i, int j, Elt g) const {
  std::array<int, 4> key{p, i, j, g};
  auto it = std::lower_bound(arrow_labels.begin(), arrow_labels.end(), key);
  if (it == arrow_labels.end() || *it != key) return -1;
  return static_cast<int>(it - arrow_labels.begin());
}

CechExtension extension_from_cocycle(const NonAbelianCocycle& d) {
  const FiniteGroup& g = d.group();
  const int order = g.order();
  CechGroupoid base = cech_groupoid(d.cover());
  const int nb = base.gpd.n_arrows();

  auto fail = [&](const std::string& why) -> void {
    throw ValidationError("InvalidCocycle: " + why);
  };

  std::vector<std::array<int, 4>> labels;
  labels.reserve(static_cast<size_t>(nb) * order);
  for (int ba = 0; ba < nb; ++ba) {
    auto [p, i, j] = base.arrows[ba];
    for (Elt e = 0; e < order; ++e) labels.push_back({p, i, j, e});
  }
  auto arrow_at = [&](int p, int i, int j, Elt e) {
    return base.arrow_index(p, i, j) * order + e;
  };

  GroupoidData data;
  data.n_objects = base.gpd.n_objects();
  const int na = nb * order;
  data.src.resize(na);
  data.tgt.resize(na);
  data.inv.resize(na);
  data.unit.assign(data.n_objects, -1);
  data.comp.assign(na, std::vector<int>(na, -1));

  for (int a = 0; a < na; ++a) {
    auto [p, i, j, e] = labels[a];
    (void)e;
    data.src[a] = base.object_index(p, i);
    data.tgt[a] = base.object_index(p, j);
  }
  // units (p,i,i, g_iii^{-1})
  for (int m = 0; m < data.n_objects; ++m) {
    auto [p, i] = base.objects[m];
    Elt u = g.inv(d.g(i, i, i, p));
    data.unit[m] = arrow_at(p, i, i, u);
  }
  for (int a = 0; a < na; ++a) {
    auto [p, i, j, e] = labels[a];
    // inverse: g' with (x_ij,e)(x_ji,g') = (x_ii, u_i)
    Elt u = g.inv(d.g(i, i, i, p));
    Elt gp = g.mul(g.inv(g.mul(d.g(i, j, i, p), perm_apply(d.lambda_inv(j, i, p), e))), u);
    data.inv[a] = arrow_at(p, j, i, gp);
    for (int b = 0; b < na; ++b) {
      auto [q, j2, k, h] = labels[b];
      if (q != p || j2 != j) continue;
      Elt prod = g.mul(d.g(i, j, k, p), g.mul(perm_apply(d.lambda_inv(j, k, p), e), h));
      data.comp[a][b] = arrow_at(p, i, k, prod);
    }
  }

  CechExtension out;
  out.base = std::move(base);
  try {
    out.ext.total = FiniteGroupoid(std::move(data));
  } catch (const SizeBoundError&) {
    throw;
  } catch (const ValidationError& err) {
    fail(std::string("constructed product is not a groupoid: ") + err.what());
  }
  out.ext.base = out.base.gpd;
  out.arrow_labels = std::move(labels);
  out.ext.phi.resize(na);
  for (int a = 0; a < na; ++a) out.ext.phi[a] = a / order;
  out.ext.kernel.assign(out.ext.total.n_objects(), {});
  for (int a = 0; a < na; ++a) {
    auto [p, i, j, e] = out.arrow_labels[a];
    (void)e;
    if (i == j) out.ext.kernel[out.base.object_index(p, i)].push_back(a);
  }
  for (auto& k : out.ext.kernel) std::sort(k.begin(), k.end());

  auto problems = validate_extension(out.ext);
  if (!problems.empty()) fail("extension axioms fail: " + problems.front());

  std::vector<std::vector<int>> chi(out.ext.total.n_objects());
  for (int m = 0; m < out.ext.total.n_objects(); ++m) {
    auto [p, i] = out.base.objects[m];
    Elt u = g.inv(d.g(i, i, i, p));
    chi[m].resize(order);
    for (Elt e = 0; e < order; ++e) chi[m][e] = out.arrow_of(p, i, i, g.mul(u, e));
  }
  out.chi = make_trivialization(std::move(chi));
  if (!is_valid_trivialization(out.ext, g, out.chi))
    fail("kernel fibers are not isomorphic to G via the canonical trivialization");

  out.canonical_section.resize(nb);
  for (int ba = 0; ba < nb; ++ba) {
    auto [p, i, j] = out.base.arrows[ba];
    out.canonical_section[ba] = out.arrow_of(p, i, j, FiniteGroup::id);
  }
  return out;
}

bool is_valid_section(const CechGroupoid& base, const GroupoidExtension& ext,
                      const std::vector<int>& rho, std::string* why) {
  auto fail = [&](const std::string& r) {
    if (why) *why = r;
    return false;
  };
  if (static_cast<int>(rho.size()) != base.gpd.n_arrows()) return fail("section size mismatch");
  for (int y = 0; y < base.gpd.n_arrows(); ++y) {
    int r = rho[y];
    if (r < 0 || r >= ext.total.n_arrows()) return fail("section out of range");
    if (ext.phi[r] != y) return fail("phi o rho != id at base arrow " + std::to_string(y));
  }
  for (int m = 0; m < base.gpd.n_objects(); ++m)
    if (rho[base.gpd.unit(m)] != ext.total.unit(m))
      return fail("rho(unit) != unit at object " + std::to_string(m));
  for (int y = 0; y < base.gpd.n_arrows(); ++y)
    if (rho[base.gpd.inv(y)] != ext.total.inv(rho[y]))
      return fail("rho(y^{-1}) != rho(y)^{-1} at base arrow " + std::to_string(y));
  return true;
}

std::vector<int> canonical_section_of(const CechExtension& e) { return e.canonical_section; }

NonAbelianCocycle cocycle_from_extension(const CechGroupoid& base, const GroupoidExtension& ext,
                                         const FiniteGroup& g, const std::vector<int>& rho,
                                         const KernelTrivialization& chi) {
  std::string why;
  if (!is_valid_section(base, ext, rho, &why)) throw ValidationError("BadSection: " + why);
  if (!is_valid_trivialization(ext, g, chi))
    throw ValidationError("BadSection: kernel trivialization invalid");

  NonAbelianCocycle d(g, base.cover);
  const auto& x = ext.total;
  for (const auto& [i, j] : std::vector<std::pair<int, int>>(d.edges())) {
    for (int p : d.key_points({i, j})) {
      int r = rho[base.arrow_index(p, i, j)];
      int src_obj = base.object_index(p, i);
      int tgt_obj = base.object_index(p, j);
      Perm lam(g.order());
      for (Elt e = 0; e < g.order(); ++e) {
        int conj = x.comp(x.comp(r, chi.chi[tgt_obj][e]), x.inv(r));
        lam[e] = chi.inverse(src_obj, conj);
      }
      d.set_lambda(i, j, p, std::move(lam));
    }
  }
  for (const auto& t : std::vector<std::array<int, 3>>(d.triples())) {
    auto [i, j, k] = t;
    for (int p : d.key_points({i, j, k})) {
      int rij = rho[base.arrow_index(p, i, j)];
      int rjk = rho[base.arrow_index(p, j, k)];
      int rik = rho[base.arrow_index(p, i, k)];
      int loop = x.comp(x.comp(x.inv(rik), rij), rjk);
      d.set_g(i, j, k, p, chi.inverse(base.object_index(p, k), loop));
    }
  }
  auto report = validate_cocycle(d);
  if (!report.ok())
    throw ValidationError("extracted cocycle fails validation: " +
                          report.violations.front().describe());
  return d;
}

std::vector<int> outer_action(const GroupoidExtension& ext, const FiniteGroup& g,
                              const KernelTrivialization& chi, const AutStructure& aut) {
  if (!is_valid_trivialization(ext, g, chi))
    throw ValidationError("outer_action: kernel trivialization invalid");
  const auto& x = ext.total;
  const auto& y = ext.base;
  std::vector<int> out(y.n_arrows(), -1);
  for (int a = 0; a < x.n_arrows(); ++a) {
    int ya = ext.phi[a];
    Perm conj(g.order());
    for (Elt e = 0; e < g.order(); ++e) {
      int c = x.comp(x.comp(a, chi.chi[x.tgt(a)][e]), x.inv(a));
      conj[e] = chi.inverse(x.src(a), c);
    }
    int idx = aut.aut_index(conj);
    if (idx < 0)
      throw ValidationError("outer_action: conjugation is not an automorphism of G");
    int o = aut.proj[idx];
    if (out[ya] >= 0 && out[ya] != o)
      throw ValidationError("outer_action: value depends on the lift of base arrow " +
                            std::to_string(ya));
    out[ya] = o;
  }
  return out;
}

int BandCocycle::edge_pos(int i, int j) const {
  std::pair<int, int> key{i, j};
  auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return -1;
  return static_cast<int>(it - edges.begin());
}

int BandCocycle::value_at(int i, int j, int p) const {
  int e = edge_pos(i, j);
  if (e < 0) throw ValidationError("band: edge not admissible");
  if (cover.mode == CoverMode::nerve_constant) return values[e][0];
  const auto& pts = edge_points[e];
  auto it = std::lower_bound(pts.begin(), pts.end(), p);
  if (it == pts.end() || *it != p) throw ValidationError("band: point not on edge");
  return values[e][static_cast<int>(it - pts.begin())];
}

BandCocycle band(const NonAbelianCocycle& d, const AutStructure& aut) {
  BandCocycle b{aut.out, d.cover(), d.edges(), {}, {}};
  for (int e = 0; e < d.n_edges(); ++e) {
    auto [i, j] = d.edges()[e];
    b.edge_points.push_back(d.edge_points(e));
    std::vector<int> vals;
    for (int p : d.key_points({i, j})) {
      int o = aut.out_of_perm(d.lambda(i, j, p));
      if (o < 0) throw ValidationError("band: lambda is not an automorphism");
      vals.push_back(o);
    }
    b.values.push_back(std::move(vals));
  }
  // triple relation bar_ij bar_jk bar_ki = 1 on admissible triples
  for (const auto& t : d.triples()) {
    auto [i, j, k] = t;
    for (int p : d.key_points({i, j, k})) {
      int prod = b.out.mul(b.out.mul(b.value_at(i, j, p), b.value_at(j, k, p)),
                           b.value_at(k, i, p));
      if (prod != FiniteGroup::id)
        throw ValidationError("band: triple relation fails at (" + std::to_string(i) + "," +
                              std::to_string(j) + "," + std::to_string(k) + ")");
    }
  }
  return b;
}

namespace {

// vertex sets and (sorted) edge lists of the gauge graphs: one graph per
// point in pointwise mode, a single nerve graph otherwise (point key -1)
struct GaugeGraph {
  int point;                                // -1 for the nerve graph
  std::vector<int> vertices;                // cover set indices
  std::vector<std::pair<int, int>> edges;   // sorted i<j pairs
};

std::vector<GaugeGraph> gauge_graphs(const BandCocycle& b) {
  std::vector<GaugeGraph> out;
  const auto& cover = b.cover;
  if (cover.mode == CoverMode::pointwise) {
    for (int p = 0; p < cover.points; ++p) {
      GaugeGraph g;
      g.point = p;
      for (int i = 0; i < cover.n_sets(); ++i)
        if (cover.in_set(i, p)) g.vertices.push_back(i);
      for (int i : g.vertices)
        for (int j : g.vertices)
          if (i < j && cover.in_set(i, p) && cover.in_set(j, p)) g.edges.push_back({i, j});
      if (!g.vertices.empty()) out.push_back(std::move(g));
    }
  } else {
    GaugeGraph g;
    g.point = -1;
    for (int i = 0; i < cover.n_sets(); ++i) g.vertices.push_back(i);
    for (const auto& [i, j] : b.edges)
      if (i < j) g.edges.push_back({i, j});
    out.push_back(std::move(g));
  }
  return out;
}

// spanning-tree propagation of eta over one gauge graph; returns vertex ->
// eta and the list of unused (off-tree) edges
struct TreeGauge {
  std::map<int, int> eta;
  std::vector<std::pair<int, int>> off_tree;
};

TreeGauge tree_gauge(const BandCocycle& b, const GaugeGraph& graph) {
  TreeGauge t;
  std::set<int> vertices(graph.vertices.begin(), graph.vertices.end());
  std::map<int, std::vector<int>> adj;
  for (auto [i, j] : graph.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::set<std::pair<int, int>> tree_edges;
  for (int root : graph.vertices) {
    if (t.eta.count(root)) continue;
    t.eta[root] = FiniteGroup::id;
    std::vector<int> queue{root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int i = queue[qi];
      for (int j : adj[i]) {
        if (t.eta.count(j)) continue;
        // bar_ij = eta_i eta_j^{-1}  =>  eta_j = bar_ij^{-1} eta_i
        int bar = b.value_at(i, j, graph.point < 0 ? b.edge_points[b.edge_pos(i, j)][0]
                                                   : graph.point);
        t.eta[j] = b.out.mul(b.out.inv(bar), t.eta[i]);
        tree_edges.insert({std::min(i, j), std::max(i, j)});
        queue.push_back(j);
      }
    }
  }
  for (auto e : graph.edges)
    if (!tree_edges.count(e)) t.off_tree.push_back(e);
  return t;
}

int edge_point_for(const BandCocycle& b, const GaugeGraph& g, int i, int j) {
  if (g.point >= 0) return g.point;
  return b.edge_points[b.edge_pos(i, j)][0];
}

}  // namespace

std::optional<BandTrivialization> band_is_trivial(const BandCocycle& b) {
  BandTrivialization triv;
  for (const auto& graph : gauge_graphs(b)) {
    TreeGauge t = tree_gauge(b, graph);
    // all edges (tree edges hold by construction) must satisfy the relation
    for (auto [i, j] : graph.edges) {
      int bar = b.value_at(i, j, edge_point_for(b, graph, i, j));
      if (bar != b.out.mul(t.eta[i], b.out.inv(t.eta[j]))) return std::nullopt;
    }
    for (auto& [v, e] : t.eta) triv.eta[{graph.point, v}] = e;
  }
  return triv;
}

BandClass band_class(const BandCocycle& b) {
  BandClass cls;
  cls.trivial = true;
  for (const auto& graph : gauge_graphs(b)) {
    TreeGauge t = tree_gauge(b, graph);
    for (auto [i, j] : graph.edges) {
      int p = edge_point_for(b, graph, i, j);
      int bar = b.value_at(i, j, p);
      int hol = b.out.mul(b.out.mul(b.out.inv(t.eta[i]), bar), t.eta[j]);
      if (hol != FiniteGroup::id) {
        cls.trivial = false;
        // least conjugate as the class representative
        int rep = hol;
        for (Elt c = 0; c < b.out.order(); ++c) rep = std::min(rep, b.out.conj(c, hol));
        cls.holonomy_witnesses.push_back({graph.point, i, j, rep});
      }
    }
  }
  return cls;
}

bool band_trivializable_bruteforce(const BandCocycle& b) {
  for (const auto& graph : gauge_graphs(b)) {
    const int nv = static_cast<int>(graph.vertices.size());
    long total = 1;
    for (int i = 0; i < nv; ++i) {
      total *= b.out.order();
      if (total > 2000000) throw SizeBoundError("band brute force too large");
    }
    bool found = false;
    std::vector<int> eta(nv, 0);
    for (long code = 0; code < total && !found; ++code) {
      long rest = code;
      for (int i = 0; i < nv; ++i) {
        eta[i] = static_cast<int>(rest % b.out.order());
        rest /= b.out.order();
      }
      bool ok = true;
      for (auto [i, j] : graph.edges) {
        int vi = static_cast<int>(std::lower_bound(graph.vertices.begin(), graph.vertices.end(), i) -
                                  graph.vertices.begin());
        int vj = static_cast<int>(std::lower_bound(graph.vertices.begin(), graph.vertices.end(), j) -
                                  graph.vertices.begin());
        int bar = b.value_at(i, j, edge_point_for(b, graph, i, j));
        if (bar != b.out.mul(eta[vi], b.out.inv(eta[vj]))) {
          ok = false;
          break;
        }
      }
      found = ok;
    }
    if (!found) return false;
  }
  return true;
}

namespace {

// section change with an independent value on every ordered edge (h_ii = id);
// validity is preserved because this is exactly a fiber-basepoint change
NonAbelianCocycle twist_by_ordered_cochain(
    const NonAbelianCocycle& d,
    const std::function<Elt(int, int, int)>& h) {  // (i, j, p) -> G
  const FiniteGroup& g = d.group();
  NonAbelianCocycle out = d;
  for (int e = 0; e < d.n_edges(); ++e) {
    auto [i, j] = d.edges()[e];
    for (int p : d.key_points({i, j})) {
      Elt hij = i == j ? FiniteGroup::id : h(i, j, p);
      out.set_lambda(i, j, p, compose_perms(d.lambda(i, j, p), conjugation(g, hij)));
    }
  }
  for (int t = 0; t < d.n_triples(); ++t) {
    auto [i, j, k] = d.triples()[t];
    for (int p : d.key_points({i, j, k})) {
      Elt h_ik = i == k ? FiniteGroup::id : h(i, k, p);
      Elt h_ij = i == j ? FiniteGroup::id : h(i, j, p);
      Elt h_jk = j == k ? FiniteGroup::id : h(j, k, p);
      Elt v = g.mul(g.mul(g.mul(g.inv(h_ik), d.g(i, j, k, p)),
                          perm_apply(d.lambda_inv(j, k, p), h_ij)),
                    h_jk);
      out.set_g(i, j, k, p, v);
    }
  }
  return out;
}

int least_lift(const AutStructure& aut, int out_elt) {
  for (size_t a = 0; a < aut.reps.size(); ++a)
    if (aut.proj[a] == out_elt) return static_cast<int>(a);
  return -1;
}

}  // namespace

NonAbelianCocycle normalize_central(const NonAbelianCocycle& d, const BandTrivialization& eta,
                                    const AutStructure& aut) {
  const FiniteGroup& g = d.group();
  const bool nerve = d.mode() == CoverMode::nerve_constant;

  // lifted gauge a_(p,i) = lift(eta_(p,i))^{-1}
  auto gauge = [&](int i, int p) -> Perm {
    auto it = eta.eta.find({nerve ? -1 : p, i});
    if (it == eta.eta.end()) throw ValidationError("LiftFailure: missing eta value");
    int lift = least_lift(aut, it->second);
    if (lift < 0) throw ValidationError("LiftFailure: out element has no recorded lift");
    return inverse_perm(aut.reps[lift]);
  };

  NonAbelianCocycle gauged = d;
  for (int e = 0; e < d.n_edges(); ++e) {
    auto [i, j] = d.edges()[e];
    for (int p : d.key_points({i, j})) {
      Perm l = compose_perms(compose_perms(gauge(i, p), d.lambda(i, j, p)),
                             inverse_perm(gauge(j, p)));
      gauged.set_lambda(i, j, p, std::move(l));
    }
  }
  for (int t = 0; t < d.n_triples(); ++t) {
    auto [i, j, k] = d.triples()[t];
    for (int p : d.key_points({i, j, k}))
      gauged.set_g(i, j, k, p, perm_apply(gauge(k, p), d.g(i, j, k, p)));
  }

  // now every lambda is inner; twist it away by h = u^{-1}, AD_u = lambda
  auto h = [&](int i, int j, int p) -> Elt {
    const Perm& l = gauged.lambda(i, j, p);
    for (Elt u = 0; u < g.order(); ++u)
      if (conjugation(g, u) == l) return g.inv(u);
    throw ValidationError("LiftFailure: gauged lambda is not inner on edge (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
  };
  NonAbelianCocycle out = twist_by_ordered_cochain(gauged, h);

  // the normal form must have identity lambda and central g
  Perm id = identity_perm(g.order());
  auto z = g.center();
  for (int e = 0; e < out.n_edges(); ++e) {
    auto [i, j] = out.edges()[e];
    for (int p : out.key_points({i, j}))
      if (out.lambda(i, j, p) != id)
        throw ValidationError("normalize_central: lambda not identity after twist");
  }
  for (int t = 0; t < out.n_triples(); ++t) {
    auto [i, j, k] = out.triples()[t];
    for (int p : out.key_points({i, j, k}))
      if (!std::binary_search(z.begin(), z.end(), out.g(i, j, k, p)))
        throw ValidationError("normalize_central: g not central after twist");
  }
  auto report = validate_cocycle(out);
  if (!report.ok())
    throw ValidationError("normalize_central: output invalid: " +
                          report.violations.front().describe());
  return out;
}

CentralityCertificate is_central(const NonAbelianCocycle& d, const AutStructure& aut) {
  CentralityCertificate cert;
  for (int e = 0; e < d.n_edges(); ++e) {
    auto [i, j] = d.edges()[e];
    for (int p : d.key_points({i, j})) {
      int o = aut.out_of_perm(d.lambda(i, j, p));
      if (o < 0) throw ValidationError("is_central: lambda not an automorphism");
      if (o != FiniteGroup::id) {
        cert.central = false;
        cert.witness = CocycleViolation{"C0", {i, j}, d.mode() == CoverMode::nerve_constant ? -1 : p};
        return cert;
      }
    }
  }
  cert.central = true;
  BandTrivialization eta;
  const bool nerve = d.mode() == CoverMode::nerve_constant;
  for (int i = 0; i < d.cover().n_sets(); ++i) {
    if (nerve) {
      eta.eta[{-1, i}] = FiniteGroup::id;
    } else {
      for (int p : d.cover().sets[i]) eta.eta[{p, i}] = FiniteGroup::id;
    }
  }
  cert.normalized = normalize_central(d, eta, aut);
  return cert;
}

InducedExtension induced_from_central(const NonAbelianCocycle& central_data,
                                      const std::vector<Elt>& subgroup_a) {
  const FiniteGroup& g = central_data.group();
  auto z = g.center();
  for (Elt a : subgroup_a)
    if (!std::binary_search(z.begin(), z.end(), a))
      throw ValidationError("NotCentralSubgroup: element " + std::to_string(a) +
                            " is not central");
  Subgroup sub = subgroup_from_elements(g, subgroup_a, "central-subgroup");

  Perm id = identity_perm(g.order());
  for (int e = 0; e < central_data.n_edges(); ++e) {
    auto [i, j] = central_data.edges()[e];
    for (int p : central_data.key_points({i, j}))
      if (central_data.lambda(i, j, p) != id)
        throw ValidationError("induced_from_central: lambda must be the identity");
  }
  for (int t = 0; t < central_data.n_triples(); ++t) {
    auto [i, j, k] = central_data.triples()[t];
    for (int p : central_data.key_points({i, j, k}))
      if (sub.index_of[central_data.g(i, j, k, p)] < 0)
        throw ValidationError("induced_from_central: g value outside the subgroup");
  }
  auto report = validate_cocycle(central_data);
  if (!report.ok())
    throw ValidationError("induced_from_central: central data invalid: " +
                          report.violations.front().describe());

  // A-extension X~ with the same cover
  NonAbelianCocycle d_a(sub.group, central_data.cover());
  for (int t = 0; t < central_data.n_triples(); ++t) {
    auto [i, j, k] = central_data.triples()[t];
    for (int p : central_data.key_points({i, j, k}))
      d_a.set_g(i, j, k, p, sub.index_of[central_data.g(i, j, k, p)]);
  }
  CechExtension tilde = extension_from_cocycle(d_a);
  const auto& xt = tilde.ext.total;
  const int order = g.order();
  const int asize = sub.group.order();

  // orbits of (x~, g) under (x~, g) . a = (x~ chi(a), a^{-1} g)
  const long carrier = static_cast<long>(xt.n_arrows()) * order;
  std::vector<int> orbit_of(carrier, -1);
  std::vector<long> rep;
  auto code = [&](int arrow, Elt e) { return static_cast<long>(arrow) * order + e; };
  for (long c = 0; c < carrier; ++c) {
    if (orbit_of[c] >= 0) continue;
    int id_orbit = static_cast<int>(rep.size());
    rep.push_back(c);
    std::vector<long> stack{c};
    orbit_of[c] = id_orbit;
    while (!stack.empty()) {
      long cur = stack.back();
      stack.pop_back();
      int arrow = static_cast<int>(cur / order);
      Elt e = static_cast<Elt>(cur % order);
      for (Elt a = 0; a < asize; ++a) {
        int arr2 = xt.comp(arrow, tilde.chi.chi[xt.tgt(arrow)][a]);
        Elt e2 = g.mul(g.inv(sub.embed[a]), e);
        long c2 = code(arr2, e2);
        if (orbit_of[c2] < 0) {
          orbit_of[c2] = id_orbit;
          rep[id_orbit] = std::min(rep[id_orbit], c2);
          stack.push_back(c2);
        }
      }
    }
  }
  const int na = static_cast<int>(rep.size());

  GroupoidData data;
  data.n_objects = xt.n_objects();
  data.src.resize(na);
  data.tgt.resize(na);
  data.inv.resize(na);
  data.unit.assign(data.n_objects, -1);
  data.comp.assign(na, std::vector<int>(na, -1));
  for (int o = 0; o < na; ++o) {
    int arrow = static_cast<int>(rep[o] / order);
    Elt e = static_cast<Elt>(rep[o] % order);
    data.src[o] = xt.src(arrow);
    data.tgt[o] = xt.tgt(arrow);
    data.inv[o] = orbit_of[code(xt.inv(arrow), g.inv(e))];
    for (int o2 = 0; o2 < na; ++o2) {
      int arrow2 = static_cast<int>(rep[o2] / order);
      Elt e2 = static_cast<Elt>(rep[o2] % order);
      if (!xt.composable(arrow, arrow2)) continue;
      data.comp[o][o2] = orbit_of[code(xt.comp(arrow, arrow2), g.mul(e, e2))];
    }
  }
  for (int m = 0; m < data.n_objects; ++m)
    data.unit[m] = orbit_of[code(xt.unit(m), FiniteGroup::id)];

  // well-definedness of the product across orbit members
  for (int o = 0; o < na; ++o)
    for (int o2 = 0; o2 < na; ++o2) {
      if (data.comp[o][o2] < 0) continue;
      for (Elt a = 0; a < asize; ++a) {
        int arrow = static_cast<int>(rep[o] / order);
        Elt e = static_cast<Elt>(rep[o] % order);
        int arr_m = xt.comp(arrow, tilde.chi.chi[xt.tgt(arrow)][a]);
        Elt e_m = g.mul(g.inv(sub.embed[a]), e);
        int arrow2 = static_cast<int>(rep[o2] / order);
        Elt e2 = static_cast<Elt>(rep[o2] % order);
        if (!xt.composable(arr_m, arrow2)) continue;
        if (orbit_of[code(xt.comp(arr_m, arrow2), g.mul(e_m, e2))] != data.comp[o][o2])
          throw ValidationError("induced_from_central: product not well defined on orbits");
      }
    }

  InducedExtension out;
  out.base = tilde.base;
  out.product_carrier_size = carrier;
  out.ext.total = FiniteGroupoid(std::move(data));
  out.ext.base = out.base.gpd;
  out.ext.phi.resize(na);
  for (int o = 0; o < na; ++o)
    out.ext.phi[o] = tilde.ext.phi[static_cast<int>(rep[o] / order)];
  out.ext.kernel.assign(data.n_objects, {});
  for (int o = 0; o < na; ++o)
    if (out.ext.phi[o] == out.base.gpd.unit(out.ext.total.src(o)) &&
        out.ext.total.src(o) == out.ext.total.tgt(o))
      out.ext.kernel[out.ext.total.src(o)].push_back(o);
  for (auto& k : out.ext.kernel) std::sort(k.begin(), k.end());

  auto problems = validate_extension(out.ext);
  if (!problems.empty())
    throw ValidationError("induced_from_central: " + problems.front());

  std::vector<std::vector<int>> chi(data.n_objects);
  for (int m = 0; m < data.n_objects; ++m) {
    chi[m].resize(order);
    for (Elt e = 0; e < order; ++e) chi[m][e] = orbit_of[code(xt.unit(m), e)];
  }
  out.chi = make_trivialization(std::move(chi));
  if (!is_valid_trivialization(out.ext, g, out.chi))
    throw ValidationError("induced_from_central: trivialization invalid");

  out.canonical_section.resize(out.base.gpd.n_arrows());
  for (int y = 0; y < out.base.gpd.n_arrows(); ++y)
    out.canonical_section[y] = orbit_of[code(tilde.canonical_section[y], FiniteGroup::id)];
  out.recovered = cocycle_from_extension(out.base, out.ext, g, out.canonical_section, out.chi);
  return out;
}

std::vector<Elt> central_triangle_values(const NonAbelianCocycle& d) {
  std::vector<Elt> vals;
  for (int t = 0; t < d.n_triples(); ++t) {
    auto [i, j, k] = d.triples()[t];
    if (!(i < j && j < k)) continue;
    for (int p : d.key_points({i, j, k})) vals.push_back(d.g(i, j, k, p));
  }
  return vals;
}

std::vector<Elt> central_canonical_representative(const CoverModel& cover, const FiniteGroup& g,
                                                  const std::vector<Elt>& center_elements,
                                                  const std::vector<Elt>& cocycle_on_triangles,
                                                  long enum_limit) {
  // triangle slots in canonical order
  struct Slot {
    int i, j, k, p;
  };
  std::vector<Slot> slots;
  const int n = cover.n_sets();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        auto pts = cover.intersection({i, j, k});
        if (pts.empty()) continue;
        if (cover.mode == CoverMode::nerve_constant) pts = {pts[0]};
        for (int p : pts) slots.push_back({i, j, k, p});
      }
  if (slots.size() != cocycle_on_triangles.size())
    throw ValidationError("canonical representative: value count mismatch");

  // coboundary generators: center generator z at one (edge, point) slot
  std::vector<std::vector<Elt>> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto pts = cover.intersection({i, j});
      if (pts.empty()) continue;
      if (cover.mode == CoverMode::nerve_constant) pts = {pts[0]};
      for (int p : pts)
        for (Elt zval : center_elements) {
          if (zval == FiniteGroup::id) continue;
          std::vector<Elt> vec(slots.size(), FiniteGroup::id);
          bool touched = false;
          for (size_t s = 0; s < slots.size(); ++s) {
            auto [a, b, c, q] = slots[s];
            if (cover.mode == CoverMode::pointwise && q != p) continue;
            // g_abc -> g_abc h_bc h_ac^{-1} h_ab
            Elt delta = FiniteGroup::id;
            if (b == i && c == j) delta = g.mul(delta, zval);
            if (a == i && c == j) delta = g.mul(delta, g.inv(zval));
            if (a == i && b == j) delta = g.mul(delta, zval);
            if (delta != FiniteGroup::id) {
              vec[s] = delta;
              touched = true;
            }
          }
          if (touched) gens.push_back(std::move(vec));
        }
    }

  // closure of the coboundary image under slotwise multiplication
  std::set<std::vector<Elt>> image;
  image.insert(std::vector<Elt>(slots.size(), FiniteGroup::id));
  for (const auto& gen : gens) {
    std::set<std::vector<Elt>> next = image;
    for (const auto& base : image) {
      std::vector<Elt> cur = base;
      while (true) {
        for (size_t s = 0; s < slots.size(); ++s) cur[s] = g.mul(cur[s], gen[s]);
        if (!next.insert(cur).second) break;
        if (static_cast<long>(next.size()) > enum_limit)
          throw SizeBoundError("SizeBound: coboundary image too large");
      }
    }
    image = std::move(next);
  }

  std::vector<Elt> best = cocycle_on_triangles;
  for (const auto& h : image) {
    std::vector<Elt> cand(slots.size());
    for (size_t s = 0; s < slots.size(); ++s) cand[s] = g.mul(cocycle_on_triangles[s], h[s]);
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace gerbes

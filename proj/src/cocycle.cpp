#include "gerbes/cocycle.hpp"

#include <algorithm>
#include <sstream>

#include "gerbes/error.hpp"

namespace gerbes {

NonAbelianCocycle::NonAbelianCocycle(FiniteGroup group, CoverModel cover)
    : group_(std::move(group)), cover_(std::move(cover)) {
  validate_cover(cover_);
  const int n = cover_.n_sets();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto pts = cover_.intersection({i, j});
      if (pts.empty()) continue;
      edges_.push_back({i, j});
      edge_points_.push_back(std::move(pts));
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto pts = cover_.intersection({i, j, k});
        if (pts.empty()) continue;
        triples_.push_back({i, j, k});
        triple_points_.push_back(std::move(pts));
      }
  Perm id = identity_perm(group_.order());
  for (size_t e = 0; e < edges_.size(); ++e) {
    int slots = mode() == CoverMode::pointwise ? static_cast<int>(edge_points_[e].size()) : 1;
    lambda_.emplace_back(slots, id);
    lambda_inv_.emplace_back(slots, id);
  }
  for (size_t t = 0; t < triples_.size(); ++t) {
    int slots = mode() == CoverMode::pointwise ? static_cast<int>(triple_points_[t].size()) : 1;
    g_.emplace_back(slots, FiniteGroup::id);
  }
}

int NonAbelianCocycle::edge_pos(int i, int j) const {
  std::pair<int, int> key{i, j};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<int>(it - edges_.begin());
}

int NonAbelianCocycle::triple_pos(int i, int j, int k) const {
  std::array<int, 3> key{i, j, k};
  auto it = std::lower_bound(triples_.begin(), triples_.end(), key);
  if (it == triples_.end() || *it != key) return -1;
  return static_cast<int>(it - triples_.begin());
}

int NonAbelianCocycle::edge_slot(int edge_pos, int p) const {
  if (mode() == CoverMode::nerve_constant) return 0;
  const auto& pts = edge_points_[edge_pos];
  auto it = std::lower_bound(pts.begin(), pts.end(), p);
  if (it == pts.end() || *it != p) throw ValidationError("point not in edge intersection");
  return static_cast<int>(it - pts.begin());
}

int NonAbelianCocycle::triple_slot(int t_pos, int p) const {
  if (mode() == CoverMode::nerve_constant) return 0;
  const auto& pts = triple_points_[t_pos];
  auto it = std::lower_bound(pts.begin(), pts.end(), p);
  if (it == pts.end() || *it != p) throw ValidationError("point not in triple intersection");
  return static_cast<int>(it - pts.begin());
}

const Perm& NonAbelianCocycle::lambda(int i, int j, int p) const {
  int e = edge_pos(i, j);
  if (e < 0) throw ValidationError("lambda key not admissible");
  return lambda_[e][edge_slot(e, p)];
}

const Perm& NonAbelianCocycle::lambda_inv(int i, int j, int p) const {
  int e = edge_pos(i, j);
  if (e < 0) throw ValidationError("lambda key not admissible");
  return lambda_inv_[e][edge_slot(e, p)];
}

Elt NonAbelianCocycle::g(int i, int j, int k, int p) const {
  int t = triple_pos(i, j, k);
  if (t < 0) throw ValidationError("g key not admissible");
  return g_[t][triple_slot(t, p)];
}

void NonAbelianCocycle::set_lambda(int i, int j, int p, Perm value) {
  int e = edge_pos(i, j);
  if (e < 0) throw ValidationError("lambda key not admissible");
  int s = edge_slot(e, p);
  lambda_inv_[e][s] = inverse_perm(value);
  lambda_[e][s] = std::move(value);
}

void NonAbelianCocycle::set_g(int i, int j, int k, int p, Elt value) {
  int t = triple_pos(i, j, k);
  if (t < 0) throw ValidationError("g key not admissible");
  if (value < 0 || value >= group_.order()) throw ValidationError("g value out of range");
  g_[t][triple_slot(t, p)] = value;
}

std::vector<int> NonAbelianCocycle::key_points(const std::vector<int>& set_indices) const {
  auto pts = cover_.intersection(set_indices);
  if (mode() == CoverMode::nerve_constant && !pts.empty()) return {pts[0]};
  return pts;
}

bool NonAbelianCocycle::operator==(const NonAbelianCocycle& o) const {
  return group_ == o.group_ && cover_.points == o.cover_.points && cover_.sets == o.cover_.sets &&
         cover_.mode == o.cover_.mode && lambda_ == o.lambda_ && g_ == o.g_;
}

NonAbelianCocycle trivial_cocycle(const FiniteGroup& g, const CoverModel& cover) {
  return NonAbelianCocycle(g, cover);
}

std::string CocycleViolation::describe() const {
  std::ostringstream os;
  os << tag << " (";
  for (size_t i = 0; i < indices.size(); ++i) os << (i ? "," : "") << indices[i];
  os << ")";
  if (point >= 0) os << " p=" << point;
  return os.str();
}

bool CocycleViolation::operator<(const CocycleViolation& o) const {
  if (tag != o.tag) return tag < o.tag;
  if (indices != o.indices) return indices < o.indices;
  return point < o.point;
}

CocycleReport validate_cocycle(const NonAbelianCocycle& d) {
  CocycleReport report;
  const FiniteGroup& g = d.group();
  const int slot_point = d.mode() == CoverMode::nerve_constant ? -1 : 0;

  // C0: every lambda an automorphism, lambda_ii = id
  for (int e = 0; e < d.n_edges(); ++e) {
    auto [i, j] = d.edges()[e];
    for (int p : d.key_points({i, j})) {
      const Perm& l = d.lambda(i, j, p);
      bool bad = !is_automorphism(g, l) || (i == j && l != identity_perm(g.order()));
      if (bad)
        report.violations.push_back({"C0", {i, j}, slot_point < 0 ? -1 : p});
    }
  }
  // C1: lambda_ij o lambda_jk = lambda_ik o AD_{g_ijk}
  for (int t = 0; t < d.n_triples(); ++t) {
    auto [i, j, k] = d.triples()[t];
    for (int p : d.key_points({i, j, k})) {
      Perm lhs = compose_perms(d.lambda(i, j, p), d.lambda(j, k, p));
      Perm rhs = compose_perms(d.lambda(i, k, p), conjugation(g, d.g(i, j, k, p)));
      if (lhs != rhs) report.violations.push_back({"C1", {i, j, k}, slot_point < 0 ? -1 : p});
    }
  }
  // C2: g_ijl g_jkl = g_ikl lambda_kl^{-1}(g_ijk) over admissible quadruples
  const int n = d.cover().n_sets();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (d.edge_pos(i, j) < 0) continue;
      for (int k = 0; k < n; ++k) {
        if (d.triple_pos(i, j, k) < 0) continue;
        for (int l = 0; l < n; ++l) {
          auto pts = d.cover().intersection({i, j, k, l});
          if (pts.empty()) continue;
          if (d.mode() == CoverMode::nerve_constant) pts = {pts[0]};
          for (int p : pts) {
            Elt lhs = g.mul(d.g(i, j, l, p), d.g(j, k, l, p));
            Elt rhs = g.mul(d.g(i, k, l, p), perm_apply(d.lambda_inv(k, l, p), d.g(i, j, k, p)));
            if (lhs != rhs)
              report.violations.push_back({"C2", {i, j, k, l}, slot_point < 0 ? -1 : p});
          }
        }
      }
    }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

NonAbelianCocycle complete_cocycle(const FiniteGroup& g, const CoverModel& cover,
                                   const SortedCocycleData& data) {
  NonAbelianCocycle out(g, cover);
  const int order = g.order();

  for (const auto& [key, values] : data.lambda) {
    auto [i, j] = key;
    if (i >= j)
      throw ValidationError("NoCompletion: lambda key (" + std::to_string(i) + "," +
                            std::to_string(j) + ") is not sorted");
    int e = out.edge_pos(i, j);
    if (e < 0)
      throw ValidationError("NoCompletion: lambda key (" + std::to_string(i) + "," +
                            std::to_string(j) + ") not admissible");
    auto pts = out.key_points({i, j});
    if (values.size() != pts.size())
      throw ValidationError("NoCompletion: lambda value count mismatch on edge (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
    for (size_t s = 0; s < pts.size(); ++s) {
      if (static_cast<int>(values[s].size()) != order)
        throw ValidationError("NoCompletion: lambda permutation has wrong size");
      out.set_lambda(i, j, pts[s], values[s]);
      out.set_lambda(j, i, pts[s], inverse_perm(values[s]));
    }
  }
  for (const auto& [key, values] : data.g) {
    auto [i, j, k] = key;
    if (!(i < j && j < k))
      throw ValidationError("NoCompletion: g key (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(k) + ") is not sorted");
    int t = out.triple_pos(i, j, k);
    if (t < 0)
      throw ValidationError("NoCompletion: g key (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(k) + ") not admissible");
    auto pts = out.key_points({i, j, k});
    if (values.size() != pts.size())
      throw ValidationError("NoCompletion: g value count mismatch");
    for (size_t s = 0; s < pts.size(); ++s) {
      Elt v = values[s];
      if (v < 0 || v >= order) throw ValidationError("NoCompletion: g value out of range");
      // the six orderings of {i,j,k}; tuples with repeats stay at the identity
      out.set_g(i, j, k, pts[s], v);
      out.set_g(j, i, k, pts[s], g.inv(v));
      out.set_g(i, k, j, pts[s], g.inv(perm_apply(out.lambda(j, k, pts[s]), v)));
      out.set_g(k, i, j, pts[s], perm_apply(out.lambda(j, k, pts[s]), v));
      out.set_g(j, k, i, pts[s], perm_apply(out.lambda(i, k, pts[s]), v));
      out.set_g(k, j, i, pts[s], g.inv(perm_apply(out.lambda(i, k, pts[s]), v)));
    }
  }
  return out;
}

namespace {

// extension of a sorted twist cochain to all ordered pairs:
// h_ii = 1, h_ji = lambda_ij(h_ij)^{-1}
Elt twist_value(const NonAbelianCocycle& d, const TwistCochain& twist, int i, int j, int p) {
  if (i == j) return FiniteGroup::id;
  const FiniteGroup& g = d.group();
  bool flip = i > j;
  auto it = twist.h.find({std::min(i, j), std::max(i, j)});
  if (it == twist.h.end()) return FiniteGroup::id;
  int e = d.edge_pos(std::min(i, j), std::max(i, j));
  int slot = d.edge_slot(e, p);
  Elt h = it->second.at(slot);
  if (!flip) return h;
  return g.inv(perm_apply(d.lambda(std::min(i, j), std::max(i, j), p), h));
}

}  // namespace

NonAbelianCocycle twist_by_cochain(const NonAbelianCocycle& d, const TwistCochain& twist) {
  const FiniteGroup& g = d.group();
  for (const auto& [key, values] : twist.h) {
    if (key.first >= key.second) throw ValidationError("twist cochain keys must be sorted edges");
    int e = d.edge_pos(key.first, key.second);
    if (e < 0) throw ValidationError("twist cochain key not admissible");
    if (values.size() != d.key_points({key.first, key.second}).size())
      throw ValidationError("twist cochain value count mismatch");
    for (Elt v : values)
      if (v < 0 || v >= g.order()) throw ValidationError("twist cochain value out of range");
  }
  NonAbelianCocycle out = d;
  for (int e = 0; e < d.n_edges(); ++e) {
    auto [i, j] = d.edges()[e];
    for (int p : d.key_points({i, j})) {
      Elt h = twist_value(d, twist, i, j, p);
      out.set_lambda(i, j, p, compose_perms(d.lambda(i, j, p), conjugation(g, h)));
    }
  }
  for (int t = 0; t < d.n_triples(); ++t) {
    auto [i, j, k] = d.triples()[t];
    for (int p : d.key_points({i, j, k})) {
      Elt h_ik = twist_value(d, twist, i, k, p);
      Elt h_ij = twist_value(d, twist, i, j, p);
      Elt h_jk = twist_value(d, twist, j, k, p);
      Elt v = g.mul(g.mul(g.mul(g.inv(h_ik), d.g(i, j, k, p)),
                          perm_apply(d.lambda_inv(j, k, p), h_ij)),
                    h_jk);
      out.set_g(i, j, k, p, v);
    }
  }
  return out;
}

TwistCochain inverse_twist(const NonAbelianCocycle& d, const TwistCochain& twist) {
  TwistCochain inv;
  for (const auto& [key, values] : twist.h) {
    std::vector<Elt> ivals;
    ivals.reserve(values.size());
    for (Elt v : values) ivals.push_back(d.group().inv(v));
    inv.h[key] = std::move(ivals);
  }
  return inv;
}

}  // namespace gerbes

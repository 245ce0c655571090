#include "gerbes/bitorsor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gerbes/error.hpp"

namespace gerbes {

namespace {

bool same_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.n_objects() != b.n_objects() || a.n_arrows() != b.n_arrows()) return false;
  for (int x = 0; x < a.n_arrows(); ++x) {
    if (a.src(x) != b.src(x) || a.tgt(x) != b.tgt(x) || a.inv(x) != b.inv(x)) return false;
    for (int y = 0; y < a.n_arrows(); ++y)
      if (a.composable(x, y) && a.comp(x, y) != b.comp(x, y)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> validate_bitorsor(const Bitorsor& b) {
  std::vector<std::string> out;
  const auto& lg = b.left_gpd;
  const auto& rg = b.right_gpd;
  if (static_cast<int>(b.left_mom.size()) != b.carrier ||
      static_cast<int>(b.right_mom.size()) != b.carrier) {
    out.push_back("momentum size mismatch");
    return out;
  }
  if (static_cast<int>(b.left_act.size()) != lg.n_arrows() ||
      static_cast<int>(b.right_act.size()) != b.carrier) {
    out.push_back("action table size mismatch");
    return out;
  }
  for (int x = 0; x < lg.n_arrows(); ++x)
    for (int e = 0; e < b.carrier; ++e) {
      bool defined = b.left_act[x][e] >= 0;
      bool should = b.left_mom[e] == lg.tgt(x);
      if (defined != should) {
        out.push_back("left action defined on wrong pairs");
        return out;
      }
      if (defined) {
        int r = b.left_act[x][e];
        if (b.left_mom[r] != lg.src(x)) out.push_back("left momentum not equivariant");
        if (b.right_mom[r] != b.right_mom[e]) out.push_back("left action moves right momentum");
      }
    }
  for (int e = 0; e < b.carrier; ++e)
    for (int y = 0; y < rg.n_arrows(); ++y) {
      bool defined = b.right_act[e][y] >= 0;
      bool should = b.right_mom[e] == rg.src(y);
      if (defined != should) {
        out.push_back("right action defined on wrong pairs");
        return out;
      }
      if (defined) {
        int r = b.right_act[e][y];
        if (b.right_mom[r] != rg.tgt(y)) out.push_back("right momentum not equivariant");
        if (b.left_mom[r] != b.left_mom[e]) out.push_back("right action moves left momentum");
      }
    }
  if (!out.empty()) return out;

  // action laws
  for (int x = 0; x < lg.n_arrows(); ++x)
    for (int x2 = 0; x2 < lg.n_arrows(); ++x2) {
      if (!lg.composable(x, x2)) continue;
      for (int e = 0; e < b.carrier; ++e) {
        if (b.left_act[x2][e] < 0) continue;
        if (b.left_act[x][b.left_act[x2][e]] != b.left_act[lg.comp(x, x2)][e])
          out.push_back("left action law fails");
      }
    }
  for (int y = 0; y < rg.n_arrows(); ++y)
    for (int y2 = 0; y2 < rg.n_arrows(); ++y2) {
      if (!rg.composable(y, y2)) continue;
      for (int e = 0; e < b.carrier; ++e) {
        if (b.right_act[e][y] < 0) continue;
        if (b.right_act[b.right_act[e][y]][y2] != b.right_act[e][rg.comp(y, y2)])
          out.push_back("right action law fails");
      }
    }
  for (int m = 0; m < lg.n_objects(); ++m)
    for (int e = 0; e < b.carrier; ++e)
      if (b.left_mom[e] == m && b.left_act[lg.unit(m)][e] != e)
        out.push_back("left unit does not act as identity");
  for (int m = 0; m < rg.n_objects(); ++m)
    for (int e = 0; e < b.carrier; ++e)
      if (b.right_mom[e] == m && b.right_act[e][rg.unit(m)] != e)
        out.push_back("right unit does not act as identity");

  // commutation
  for (int x = 0; x < lg.n_arrows(); ++x)
    for (int e = 0; e < b.carrier; ++e) {
      if (b.left_act[x][e] < 0) continue;
      for (int y = 0; y < rg.n_arrows(); ++y) {
        if (b.right_act[e][y] < 0) continue;
        if (b.right_act[b.left_act[x][e]][y] != b.left_act[x][b.right_act[e][y]])
          out.push_back("actions do not commute");
      }
    }
  if (!out.empty()) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // left torsor over right objects: unique transitive on right_mom fibers
  for (int e1 = 0; e1 < b.carrier; ++e1)
    for (int e2 = 0; e2 < b.carrier; ++e2) {
      if (b.right_mom[e1] != b.right_mom[e2]) continue;
      int count = 0;
      for (int x = 0; x < lg.n_arrows(); ++x)
        if (b.left_act[x][e1] == e2) ++count;
      if (count != 1) {
        out.push_back("left torsor condition fails (count " + std::to_string(count) + ")");
        return out;
      }
    }
  for (int e1 = 0; e1 < b.carrier; ++e1)
    for (int e2 = 0; e2 < b.carrier; ++e2) {
      if (b.left_mom[e1] != b.left_mom[e2]) continue;
      int count = 0;
      for (int y = 0; y < rg.n_arrows(); ++y)
        if (b.right_act[e1][y] == e2) ++count;
      if (count != 1) {
        out.push_back("right torsor condition fails (count " + std::to_string(count) + ")");
        return out;
      }
    }
  return out;
}

Bitorsor identity_bitorsor(const FiniteGroupoid& g) {
  Bitorsor b;
  b.left_gpd = g;
  b.right_gpd = g;
  b.carrier = g.n_arrows();
  b.left_mom.resize(b.carrier);
  b.right_mom.resize(b.carrier);
  for (int e = 0; e < b.carrier; ++e) {
    b.left_mom[e] = g.src(e);
    b.right_mom[e] = g.tgt(e);
  }
  b.left_act.assign(g.n_arrows(), std::vector<int>(b.carrier, -1));
  b.right_act.assign(b.carrier, std::vector<int>(g.n_arrows(), -1));
  for (int x = 0; x < g.n_arrows(); ++x)
    for (int e = 0; e < b.carrier; ++e) {
      if (g.composable(x, e)) b.left_act[x][e] = g.comp(x, e);
      if (g.composable(e, x)) b.right_act[e][x] = g.comp(e, x);
    }
  return b;
}

Bitorsor inverse_bitorsor(const Bitorsor& in) {
  Bitorsor b;
  b.left_gpd = in.right_gpd;
  b.right_gpd = in.left_gpd;
  b.carrier = in.carrier;
  b.left_mom = in.right_mom;
  b.right_mom = in.left_mom;
  b.left_act.assign(b.left_gpd.n_arrows(), std::vector<int>(b.carrier, -1));
  b.right_act.assign(b.carrier, std::vector<int>(b.right_gpd.n_arrows(), -1));
  for (int y = 0; y < b.left_gpd.n_arrows(); ++y)
    for (int e = 0; e < b.carrier; ++e)
      if (in.right_act[e][b.left_gpd.inv(y)] >= 0)
        b.left_act[y][e] = in.right_act[e][b.left_gpd.inv(y)];
  for (int e = 0; e < b.carrier; ++e)
    for (int x = 0; x < b.right_gpd.n_arrows(); ++x)
      if (in.left_act[b.right_gpd.inv(x)][e] >= 0)
        b.right_act[e][x] = in.left_act[b.right_gpd.inv(x)][e];
  return b;
}

Bitorsor bitorsor_from_morphism(const GroupoidMorphism& f) {
  std::string why;
  if (!is_groupoid_morphism(f, &why))
    throw ValidationError("bitorsor_from_morphism: " + why);
  const auto& from = *f.from;
  const auto& to = *f.to;
  Bitorsor b;
  b.left_gpd = from;
  b.right_gpd = to;
  std::vector<std::pair<int, int>> carrier;  // (object of from, arrow of to)
  for (int m = 0; m < from.n_objects(); ++m)
    for (int x = 0; x < to.n_arrows(); ++x)
      if (to.src(x) == f.obj_map[m]) carrier.push_back({m, x});
  b.carrier = static_cast<int>(carrier.size());
  auto index_of = [&](int m, int x) {
    std::pair<int, int> key{m, x};
    auto it = std::lower_bound(carrier.begin(), carrier.end(), key);
    return static_cast<int>(it - carrier.begin());
  };
  b.left_mom.resize(b.carrier);
  b.right_mom.resize(b.carrier);
  for (int e = 0; e < b.carrier; ++e) {
    b.left_mom[e] = carrier[e].first;
    b.right_mom[e] = to.tgt(carrier[e].second);
  }
  b.left_act.assign(from.n_arrows(), std::vector<int>(b.carrier, -1));
  b.right_act.assign(b.carrier, std::vector<int>(to.n_arrows(), -1));
  for (int xp = 0; xp < from.n_arrows(); ++xp)
    for (int e = 0; e < b.carrier; ++e) {
      auto [m, x] = carrier[e];
      if (from.tgt(xp) != m) continue;
      b.left_act[xp][e] = index_of(from.src(xp), to.comp(f.arrow_map[xp], x));
    }
  for (int e = 0; e < b.carrier; ++e) {
    auto [m, x] = carrier[e];
    for (int y = 0; y < to.n_arrows(); ++y)
      if (to.composable(x, y)) b.right_act[e][y] = index_of(m, to.comp(x, y));
  }
  auto problems = validate_bitorsor(b);
  if (!problems.empty())
    throw ValidationError("bitorsor_from_morphism: " + problems.front() +
                          " (is the morphism Morita?)");
  return b;
}

Bitorsor compose_bitorsors(const Bitorsor& b1, const Bitorsor& b2) {
  if (!same_groupoid(b1.right_gpd, b2.left_gpd))
    throw ValidationError("MiddleMismatch: middle groupoids differ");
  const auto& mid = b1.right_gpd;

  std::vector<std::pair<int, int>> pairs;
  for (int e1 = 0; e1 < b1.carrier; ++e1)
    for (int e2 = 0; e2 < b2.carrier; ++e2)
      if (b1.right_mom[e1] == b2.left_mom[e2]) pairs.push_back({e1, e2});
  auto pair_index = [&](int e1, int e2) {
    std::pair<int, int> key{e1, e2};
    auto it = std::lower_bound(pairs.begin(), pairs.end(), key);
    return static_cast<int>(it - pairs.begin());
  };

  // orbits of the diagonal middle action (b1.x', x'^{-1}.b2)
  std::vector<int> orbit(pairs.size(), -1);
  std::vector<int> rep;
  for (size_t p = 0; p < pairs.size(); ++p) {
    if (orbit[p] >= 0) continue;
    int id = static_cast<int>(rep.size());
    rep.push_back(static_cast<int>(p));
    std::vector<int> stack{static_cast<int>(p)};
    orbit[p] = id;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      auto [e1, e2] = pairs[cur];
      for (int xm = 0; xm < mid.n_arrows(); ++xm) {
        if (b1.right_act[e1][xm] < 0) continue;
        int f1 = b1.right_act[e1][xm];
        int f2 = b2.left_act[mid.inv(xm)][e2];
        if (f2 < 0) continue;
        int q = pair_index(f1, f2);
        if (orbit[q] < 0) {
          orbit[q] = id;
          rep[id] = std::min(rep[id], q);
          stack.push_back(q);
        }
      }
    }
  }

  Bitorsor out;
  out.left_gpd = b1.left_gpd;
  out.right_gpd = b2.right_gpd;
  out.carrier = static_cast<int>(rep.size());
  out.left_mom.resize(out.carrier);
  out.right_mom.resize(out.carrier);
  for (int o = 0; o < out.carrier; ++o) {
    auto [e1, e2] = pairs[rep[o]];
    out.left_mom[o] = b1.left_mom[e1];
    out.right_mom[o] = b2.right_mom[e2];
  }
  out.left_act.assign(out.left_gpd.n_arrows(), std::vector<int>(out.carrier, -1));
  out.right_act.assign(out.carrier, std::vector<int>(out.right_gpd.n_arrows(), -1));
  for (int x = 0; x < out.left_gpd.n_arrows(); ++x)
    for (int o = 0; o < out.carrier; ++o) {
      auto [e1, e2] = pairs[rep[o]];
      if (b1.left_act[x][e1] < 0) continue;
      out.left_act[x][o] = orbit[pair_index(b1.left_act[x][e1], e2)];
    }
  for (int o = 0; o < out.carrier; ++o) {
    auto [e1, e2] = pairs[rep[o]];
    for (int y = 0; y < out.right_gpd.n_arrows(); ++y) {
      if (b2.right_act[e2][y] < 0) continue;
      out.right_act[o][y] = orbit[pair_index(e1, b2.right_act[e2][y])];
    }
  }
  auto problems = validate_bitorsor(out);
  if (!problems.empty())
    throw ValidationError("compose_bitorsors: result invalid: " + problems.front());
  return out;
}

bool bitorsors_isomorphic(const Bitorsor& a, const Bitorsor& b, int carrier_bound) {
  if (a.carrier > carrier_bound || b.carrier > carrier_bound)
    throw SizeBoundError("bitorsor isomorphism search limited to carriers <= " +
                         std::to_string(carrier_bound));
  if (!same_groupoid(a.left_gpd, b.left_gpd) || !same_groupoid(a.right_gpd, b.right_gpd))
    return false;
  if (a.carrier != b.carrier) return false;
  const int n = a.carrier;
  std::vector<int> psi(n, -1), used(n, 0);
  auto consistent = [&](int e, int be) {
    if (a.left_mom[e] != b.left_mom[be] || a.right_mom[e] != b.right_mom[be]) return false;
    for (int x = 0; x < a.left_gpd.n_arrows(); ++x) {
      int r = a.left_act[x][e];
      if (r >= 0 && psi[r] >= 0 && b.left_act[x][be] != psi[r]) return false;
    }
    for (int y = 0; y < a.right_gpd.n_arrows(); ++y) {
      int r = a.right_act[e][y];
      if (r >= 0 && psi[r] >= 0 && b.right_act[be][y] != psi[r]) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, int e) -> bool {
    if (e == n) return true;
    if (psi[e] >= 0) return self(self, e + 1);
    for (int be = 0; be < n; ++be) {
      if (used[be] || !consistent(e, be)) continue;
      psi[e] = be;
      used[be] = 1;
      // propagate through the actions for early pruning
      if (self(self, e + 1)) return true;
      psi[e] = -1;
      used[be] = 0;
    }
    return false;
  };
  return search(search, 0);
}

namespace {

std::vector<int> orbit_partition(int carrier, const std::vector<std::vector<int>>& reach) {
  std::vector<int> part(carrier, -1);
  int next = 0;
  for (int e = 0; e < carrier; ++e) {
    if (part[e] >= 0) continue;
    std::vector<int> stack{e};
    part[e] = next;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int to : reach[cur])
        if (part[to] < 0) {
          part[to] = next;
          stack.push_back(to);
        }
    }
    ++next;
  }
  return part;
}

}  // namespace

bool kernel_orbits_coincide(const Bitorsor& b, const GroupoidExtension& left_ext,
                            const GroupoidExtension& right_ext) {
  std::vector<std::vector<int>> left_reach(b.carrier), right_reach(b.carrier);
  for (const auto& fiber : left_ext.kernel)
    for (int k : fiber)
      for (int e = 0; e < b.carrier; ++e)
        if (b.left_act[k][e] >= 0) left_reach[e].push_back(b.left_act[k][e]);
  for (const auto& fiber : right_ext.kernel)
    for (int k : fiber)
      for (int e = 0; e < b.carrier; ++e)
        if (b.right_act[e][k] >= 0) right_reach[e].push_back(b.right_act[e][k]);
  auto lp = orbit_partition(b.carrier, left_reach);
  auto rp = orbit_partition(b.carrier, right_reach);
  // same partition up to renaming
  std::map<int, int> fwd, bwd;
  for (int e = 0; e < b.carrier; ++e) {
    auto [it1, new1] = fwd.try_emplace(lp[e], rp[e]);
    if (!new1 && it1->second != rp[e]) return false;
    auto [it2, new2] = bwd.try_emplace(rp[e], lp[e]);
    if (!new2 && it2->second != lp[e]) return false;
  }
  return true;
}

ExtensionBitorsor extension_bitorsor_from_morphism(const GroupoidExtension& from_ext,
                                                   const GroupoidExtension& to_ext,
                                                   const GroupoidMorphism& total_map) {
  ExtensionBitorsor out{bitorsor_from_morphism(total_map)};
  if (!kernel_orbits_coincide(out.bitorsor, from_ext, to_ext))
    throw ValidationError("extension bitorsor: kernel orbits do not coincide");
  return out;
}

}  // namespace gerbes

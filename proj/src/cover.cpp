#include "gerbes/cover.hpp"

#include <algorithm>

#include "gerbes/error.hpp"

namespace gerbes {

bool CoverModel::in_set(int set, int p) const {
  const auto& s = sets[set];
  return std::binary_search(s.begin(), s.end(), p);
}

std::vector<int> CoverModel::intersection(const std::vector<int>& set_indices) const {
  if (set_indices.empty()) return {};
  std::vector<int> acc = sets[set_indices[0]];
  for (size_t k = 1; k < set_indices.size() && !acc.empty(); ++k) {
    std::vector<int> next;
    const auto& s = sets[set_indices[k]];
    std::set_intersection(acc.begin(), acc.end(), s.begin(), s.end(), std::back_inserter(next));
    acc = std::move(next);
  }
  return acc;
}

void validate_cover(const CoverModel& cover) {
  if (cover.points <= 0) throw ValidationError("EmptyCover: no points");
  if (cover.sets.empty()) throw ValidationError("EmptyCover: no sets");
  std::vector<bool> covered(cover.points, false);
  for (const auto& s : cover.sets) {
    if (s.empty()) throw ValidationError("EmptyCover: empty set");
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ValidationError("cover sets must be sorted and duplicate-free");
    for (int p : s) {
      if (p < 0 || p >= cover.points) throw ValidationError("cover point out of range");
      covered[p] = true;
    }
  }
  for (int p = 0; p < cover.points; ++p)
    if (!covered[p])
      throw ValidationError("EmptyCover: point " + std::to_string(p) + " not covered");
}

int Nerve::simplex_index(int dim, const std::vector<int>& vertices) const {
  if (dim < 0 || dim >= static_cast<int>(simplices.size())) return -1;
  const auto& level = simplices[dim];
  auto it = std::lower_bound(level.begin(), level.end(), vertices);
  if (it == level.end() || *it != vertices) return -1;
  return static_cast<int>(it - level.begin());
}

Nerve nerve_of_cover(const CoverModel& cover) {
  validate_cover(cover);
  Nerve nerve;
  nerve.simplices.resize(5);
  const int n = cover.n_sets();
  // grow simplices dimension by dimension; a subset can only have a common
  // point if its facets do
  for (int i = 0; i < n; ++i) nerve.simplices[0].push_back({i});
  for (int dim = 1; dim <= 4; ++dim) {
    for (const auto& base : nerve.simplices[dim - 1]) {
      for (int v = base.back() + 1; v < n; ++v) {
        std::vector<int> cand = base;
        cand.push_back(v);
        if (cover.has_point(cand)) nerve.simplices[dim].push_back(cand);
      }
    }
    std::sort(nerve.simplices[dim].begin(), nerve.simplices[dim].end());
  }
  return nerve;
}

int CechGroupoid::object_index(int p, int i) const {
  std::pair<int, int> key{p, i};
  auto it = std::lower_bound(objects.begin(), objects.end(), key);
  if (it == objects.end() || *it != key) return -1;
  return static_cast<int>(it - objects.begin());
}

int CechGroupoid::arrow_index(int p, int i, int j) const {
  std::array<int, 3> key{p, i, j};
  auto it = std::lower_bound(arrows.begin(), arrows.end(), key);
  if (it == arrows.end() || *it != key) return -1;
  return static_cast<int>(it - arrows.begin());
}

CechGroupoid cech_groupoid(const CoverModel& cover) {
  validate_cover(cover);
  CechGroupoid out;
  out.cover = cover;
  const int n = cover.n_sets();
  for (int p = 0; p < cover.points; ++p)
    for (int i = 0; i < n; ++i)
      if (cover.in_set(i, p)) out.objects.push_back({p, i});
  for (int p = 0; p < cover.points; ++p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (cover.in_set(i, p) && cover.in_set(j, p)) out.arrows.push_back({p, i, j});
  std::sort(out.objects.begin(), out.objects.end());
  std::sort(out.arrows.begin(), out.arrows.end());

  GroupoidData d;
  d.n_objects = static_cast<int>(out.objects.size());
  const int na = static_cast<int>(out.arrows.size());
  d.src.resize(na);
  d.tgt.resize(na);
  d.inv.resize(na);
  d.unit.assign(d.n_objects, -1);
  d.comp.assign(na, std::vector<int>(na, -1));
  for (int a = 0; a < na; ++a) {
    auto [p, i, j] = out.arrows[a];
    d.src[a] = out.object_index(p, i);
    d.tgt[a] = out.object_index(p, j);
    d.inv[a] = out.arrow_index(p, j, i);
    if (i == j) d.unit[d.src[a]] = a;
    for (int b = 0; b < na; ++b) {
      auto [q, j2, k] = out.arrows[b];
      if (q != p || j2 != j) continue;
      d.comp[a][b] = out.arrow_index(p, i, k);
    }
  }
  out.gpd = FiniteGroupoid(std::move(d));
  return out;
}

}  // namespace gerbes

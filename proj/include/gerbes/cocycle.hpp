// Non-abelian 2-cocycles (lambda_ij, g_ijk) over a cover: validation of the
// two cocycle relations, completion of sorted data, and twisting by a
// G-valued cochain.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gerbes/automorphisms.hpp"
#include "gerbes/cover.hpp"
#include "gerbes/group.hpp"

namespace gerbes {

// Full cocycle data: lambda on every ordered pair (i,j) with nonempty
// intersection (including i == j), g on every ordered triple with a common
// point. In pointwise mode each key holds one value per point of the
// intersection; in nerve-constant mode a single value.
class NonAbelianCocycle {
 public:
  NonAbelianCocycle(FiniteGroup group, CoverModel cover);

  const FiniteGroup& group() const { return group_; }
  const CoverModel& cover() const { return cover_; }
  CoverMode mode() const { return cover_.mode; }

  int n_edges() const { return static_cast<int>(edges_.size()); }
  int n_triples() const { return static_cast<int>(triples_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::array<int, 3>>& triples() const { return triples_; }
  const std::vector<int>& edge_points(int edge_pos) const { return edge_points_[edge_pos]; }
  const std::vector<int>& triple_points(int t_pos) const { return triple_points_[t_pos]; }

  int edge_pos(int i, int j) const;           // -1 if not admissible
  int triple_pos(int i, int j, int k) const;  // -1 if not admissible

  // slot index of a point within a key (always 0 in nerve-constant mode)
  int edge_slot(int edge_pos, int p) const;
  int triple_slot(int t_pos, int p) const;

  const Perm& lambda(int i, int j, int p) const;
  const Perm& lambda_inv(int i, int j, int p) const;
  Elt g(int i, int j, int k, int p) const;

  void set_lambda(int i, int j, int p, Perm value);  // p ignored in nerve mode
  void set_g(int i, int j, int k, int p, Elt value);

  // iteration support: representative points of a key (one per slot)
  std::vector<int> key_points(const std::vector<int>& set_indices) const;

  bool operator==(const NonAbelianCocycle& o) const;

 private:
  FiniteGroup group_;
  CoverModel cover_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::array<int, 3>> triples_;
  std::vector<std::vector<int>> edge_points_, triple_points_;
  std::vector<std::vector<Perm>> lambda_, lambda_inv_;
  std::vector<std::vector<Elt>> g_;
};

NonAbelianCocycle trivial_cocycle(const FiniteGroup& g, const CoverModel& cover);

struct CocycleViolation {
  std::string tag;          // "C0", "C1", "C2"
  std::vector<int> indices; // 2, 3 or 4 cover indices
  int point;                // -1 in nerve-constant mode
  std::string describe() const;
  bool operator<(const CocycleViolation& o) const;
};

struct CocycleReport {
  std::vector<CocycleViolation> violations;  // sorted
  bool ok() const { return violations.empty(); }
};

// Checks lambda_ii = id, lambda an automorphism (C0),
// lambda_ij o lambda_jk = lambda_ik o AD_{g_ijk} (C1) and
// g_ijl g_jkl = g_ikl lambda_kl^{-1}(g_ijk) (C2) on all admissible ordered
// tuples, repeated indices included.
CocycleReport validate_cocycle(const NonAbelianCocycle& d);

// Sorted presentation: lambda on i<j edges, g on i<j<k triples; missing keys
// default to the identity. Values per point slot as in the full data.
struct SortedCocycleData {
  std::map<std::pair<int, int>, std::vector<Perm>> lambda;
  std::map<std::array<int, 3>, std::vector<Elt>> g;
};

// Fills all ordered tuples from sorted data using the section conventions
// rho(x_ii) = unit, rho(x_ji) = rho(x_ij)^{-1}:
//   lambda_ii = id, lambda_ji = lambda_ij^{-1},
//   g vanishes on tuples with a repeated index, and for i<j<k
//   g_jik = v^{-1}, g_ikj = lambda_jk(v)^{-1}, g_kij = lambda_jk(v),
//   g_jki = lambda_ik(v), g_kji = lambda_ik(v)^{-1} with v = g_ijk.
// Throws ValidationError ("NoCompletion") on malformed keys.
NonAbelianCocycle complete_cocycle(const FiniteGroup& g, const CoverModel& cover,
                                   const SortedCocycleData& data);

// G-valued 1-cochain on sorted edges (h_ii = 1 implicit); missing keys are
// the identity. Extended to ordered pairs via h_ji = lambda_ij(h_ij)^{-1}.
struct TwistCochain {
  std::map<std::pair<int, int>, std::vector<Elt>> h;
};

// Section change: lambda'_ij = lambda_ij o AD_{h_ij},
// g'_ijk = h_ik^{-1} g_ijk lambda_jk^{-1}(h_ij) h_jk.
NonAbelianCocycle twist_by_cochain(const NonAbelianCocycle& d, const TwistCochain& twist);

// The inverse twist (pointwise inverse of the extension of h).
TwistCochain inverse_twist(const NonAbelianCocycle& d, const TwistCochain& twist);

}  // namespace gerbes

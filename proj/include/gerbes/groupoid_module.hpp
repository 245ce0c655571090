// Representations of finite groupoids on finite-rank fibers and the
// simplicial cochain differentials (left and right variants).
#pragma once

#include <string>
#include <vector>

#include "gerbes/group_module.hpp"
#include "gerbes/groupoid.hpp"
#include "gerbes/linalg.hpp"

namespace gerbes {

// act[x] : V_{tgt(x)} -> V_{src(x)}, functorial: act(unit) = id and
// act(x.y) = act(x) act(y).
struct GroupoidModule {
  Coeff coeff = Coeff::rational;
  long modulus = 0;
  std::vector<int> rank;      // per object
  std::vector<QMat> act_q;    // per arrow (rational)
  std::vector<IMat> act_m;    // per arrow (mod m)
};

void validate_groupoid_module(const FiniteGroupoid& g, const GroupoidModule& m);

GroupoidModule trivial_groupoid_module_q(const FiniteGroupoid& g, int rank);
GroupoidModule trivial_groupoid_module_mod(const FiniteGroupoid& g, int rank, long m);
// one-object module from a group module (arrow indices = element indices)
GroupoidModule module_of_group(const FiniteGroupoid& one_object, const GroupModule& m);
// pullback along a functor: fiber at p = fiber at obj_map(p),
// action of a new arrow = action of its image
GroupoidModule pullback_module(const GroupoidModule& m, const std::vector<int>& obj_map,
                               const std::vector<int>& arrow_map);

enum class Side { left, right };

// Cochain levels: C^n = (+) over composable n-tuples of V at the anchor
// object (src of the first arrow for the left variant, tgt of the last for
// the right one).
struct CochainSpace {
  int degree = 0;
  Side side = Side::right;
  std::vector<int> offset;  // per tuple, starting row; back() = dimension
  int dim = 0;
};

CochainSpace cochain_space(const FiniteGroupoid& g, const GroupoidModule& m,
                           const std::vector<ComposableTuples>& levels, int degree, Side side);

// Differential C^{n-1} -> C^n:
//   right: sum_{i<n} (-1)^i eps_i^* + (-1)^n act(x_n)^{-1} eps_n^*
//   left : act(x_1) eps_0^* + sum_{i>=1} (-1)^i eps_i^*
QMat groupoid_differential_q(const FiniteGroupoid& g, const GroupoidModule& m, int n, Side side);
IMat groupoid_differential_mod(const FiniteGroupoid& g, const GroupoidModule& m, int n,
                               Side side);

// H^degree (degree <= 2) of the chosen complex; dimensions over Q, invariant
// factors over Z_m. Splits over connected components internally.
CohomologyResult groupoid_cohomology(const FiniteGroupoid& g, const GroupoidModule& m,
                                     int degree, Side side, long cell_limit = 6000000);

}  // namespace gerbes

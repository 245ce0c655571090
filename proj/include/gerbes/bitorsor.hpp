// Bitorsors between finite groupoids: carriers of generalized morphisms,
// their composition, inverses, and equivariant-isomorphism search.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gerbes/extension.hpp"
#include "gerbes/groupoid.hpp"

namespace gerbes {

// Left action of `left_gpd` (momentum left_mom, x.b defined when
// left_mom(b) = tgt(x)) commuting with a right action of `right_gpd`
// (momentum right_mom, b.y defined when right_mom(b) = src(y)).
struct Bitorsor {
  FiniteGroupoid left_gpd, right_gpd;
  int carrier = 0;
  std::vector<int> left_mom, right_mom;
  std::vector<std::vector<int>> left_act;   // [left arrow][element] -> element or -1
  std::vector<std::vector<int>> right_act;  // [element][right arrow] -> element or -1

  int lact(int x, int b) const { return left_act[x][b]; }
  int ract(int b, int y) const { return right_act[b][y]; }
};

// Exhaustive check of the torsor axioms: commuting actions, momentum
// equivariance, left action free/transitive on right_mom fibers and
// symmetrically. Returns violations (empty = valid).
std::vector<std::string> validate_bitorsor(const Bitorsor& b);

// The unit bitorsor of a groupoid: carrier = arrows, actions by composition.
Bitorsor identity_bitorsor(const FiniteGroupoid& g);

// Swap sides, acting through inverses.
Bitorsor inverse_bitorsor(const Bitorsor& b);

// Canonical bitorsor of a morphism f: from -> to, carrier
// {(m', x) : obj_map(m') = src(x)}. A bitorsor precisely when f is Morita.
Bitorsor bitorsor_from_morphism(const GroupoidMorphism& f);

// (b1 x_{middle} b2) / middle-groupoid diagonal action; b1 must be right-
// acted by the same groupoid that acts on b2 from the left
// ("MiddleMismatch"). The result is validated exhaustively.
Bitorsor compose_bitorsors(const Bitorsor& b1, const Bitorsor& b2);

// Backtracking search for an action-equivariant momentum-preserving
// bijection; carriers above the bound are rejected (SizeBound).
bool bitorsors_isomorphic(const Bitorsor& a, const Bitorsor& b, int carrier_bound = 64);

// Extension bitorsor: a bitorsor between the total groupoids whose two
// kernel-orbit partitions coincide.
struct ExtensionBitorsor {
  Bitorsor bitorsor;
};

// Orbit partitions of the carrier under the kernels of the two extensions;
// the Morita-equivalence criterion demands they coincide.
bool kernel_orbits_coincide(const Bitorsor& b, const GroupoidExtension& left_ext,
                            const GroupoidExtension& right_ext);

ExtensionBitorsor extension_bitorsor_from_morphism(const GroupoidExtension& from_ext,
                                                   const GroupoidExtension& to_ext,
                                                   const GroupoidMorphism& total_map);

}  // namespace gerbes

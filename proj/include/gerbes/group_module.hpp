// Finite-rank G-modules over Q or Z_m and low-degree group cohomology via the
// inhomogeneous bar complex.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gerbes/group.hpp"
#include "gerbes/linalg.hpp"

namespace gerbes {

enum class Coeff { rational, mod };

struct GroupModule {
  Coeff coeff = Coeff::rational;
  long modulus = 0;  // >= 2 when coeff == mod
  int rank = 0;
  // action[g] is rank x rank; over Z_m entries are reduced representatives.
  // Validated: action[0] == I and action[g]*action[h] == action[g*h].
  std::vector<QMat> action_q;  // coeff == rational
  std::vector<IMat> action_m;  // coeff == mod
};

GroupModule trivial_module_q(const FiniteGroup& g, int rank);
GroupModule trivial_module_mod(const FiniteGroup& g, int rank, long m);
// action by +/-1 per element; signs must form a homomorphism to {1,-1}
GroupModule sign_module_q(const FiniteGroup& g, const std::vector<int>& signs);
GroupModule module_from_actions_q(const FiniteGroup& g, std::vector<QMat> action);
GroupModule module_from_actions_mod(const FiniteGroup& g, std::vector<IMat> action, long m);

// Z_m-submodule of (Z_m)^length given by generators; `elements` is the full
// enumeration when its size stays within the enumeration limit.
struct ZmSpan {
  long modulus = 0;
  int length = 0;
  std::vector<std::vector<long>> generators;
  std::vector<std::vector<long>> elements;
  bool enumerated = false;
};

// Cocycle/coboundary spaces: a rational basis (columns) or a Z_m span.
// Vectors are flattened maps G -> M^rank, element-major: entry g*rank + i.
struct CocycleSpace {
  Coeff coeff = Coeff::rational;
  QMat basis;  // rational case
  ZmSpan span;
};

// All F: G -> M with F(gh) = F(g) + g.F(h). F(identity) = 0 always holds.
CocycleSpace z1_cocycles(const FiniteGroup& g, const GroupModule& m,
                         long enum_limit = 100000);

// Principal 1-cocycles, the image of xi -> (g -> xi - g.xi).
CocycleSpace b1_coboundaries(const FiniteGroup& g, const GroupModule& m,
                             long enum_limit = 100000);

bool satisfies_z1_law_mod(const FiniteGroup& g, const GroupModule& m,
                          const std::vector<long>& f);
bool satisfies_z1_law_q(const FiniteGroup& g, const GroupModule& m,
                        const std::vector<Rat>& f);

// Bar-complex differential C^k -> C^{k+1}; cochains are maps G^k -> M^rank,
// tuples ordered lexicographically (first coordinate most significant).
QMat bar_differential_q(const FiniteGroup& g, const GroupModule& m, int k);
IMat bar_differential_mod(const FiniteGroup& g, const GroupModule& m, int k);

struct CohomologyResult {
  Coeff coeff = Coeff::rational;
  int q_dim = 0;                 // rational case
  std::vector<Int> factors;     // Z_m case, invariant chain (empty = trivial)
  Int group_order() const { return factor_list_order(factors); }
  std::string describe() const;
  bool operator==(const CohomologyResult& o) const {
    return coeff == o.coeff && q_dim == o.q_dim && factors == o.factors;
  }
};

// H^n of the bar complex, n <= 3. Throws SizeBoundError when the cochain
// spaces get too large.
CohomologyResult group_cohomology(const FiniteGroup& g, const GroupModule& m, int degree,
                                  long cell_limit = 4000000);

// |{x : a x == 0 mod m}| for an integer matrix a acting on (Z_m)^cols.
Int zm_kernel_size(const IMat& a, long m);
Int zm_image_size(const IMat& a, long m);

}  // namespace gerbes

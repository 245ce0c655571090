// Automorphism groups of finite groups: Aut, Inn, Out = Aut/Inn.
#pragma once

#include <string>
#include <vector>

#include "gerbes/group.hpp"

namespace gerbes {

// An automorphism is a permutation of element indices with perm[0] == 0 and
// perm[ab] == perm[a]*perm[b]. Permutations compose left-to-right as
// functions: compose(f, g) applies g first, then f.
using Perm = std::vector<Elt>;

inline Elt perm_apply(const Perm& p, Elt x) { return p[x]; }

Perm identity_perm(int n);
Perm compose_perms(const Perm& f, const Perm& g);  // f o g : x -> f(g(x))
Perm inverse_perm(const Perm& p);
bool is_automorphism(const FiniteGroup& g, const Perm& p);

// AD_x : a -> x a x^-1
Perm conjugation(const FiniteGroup& g, Elt x);

struct AutStructure {
  FiniteGroup aut;          // abstract automorphism group
  std::vector<Perm> reps;   // aut element -> permutation, lexicographically sorted
  std::vector<int> inn;     // sorted aut indices { AD_g }
  FiniteGroup out;          // aut / inn
  std::vector<int> proj;    // aut index -> out index

  int aut_index(const Perm& p) const;           // -1 if not an automorphism of g
  int out_of_perm(const Perm& p) const;         // proj(aut_index(p))
  int out_index_of_inverse(int out_elt) const { return out.inv(out_elt); }
};

// Enumerates Aut(g) by generator-image backtracking. Throws SizeBoundError
// ("OrderBound") when g.order() exceeds the bound.
AutStructure automorphism_structure(const FiniteGroup& g, int order_bound = 24);

// All bijections fixing 0 that are homomorphisms; exponential, test oracle only.
std::vector<Perm> all_automorphisms_bruteforce(const FiniteGroup& g);

}  // namespace gerbes

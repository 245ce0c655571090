// Cech cohomology of nerves through integer Smith normal form, and the
// Giraud classification of bound gerbes by H^2(nerve, Z(G)).
#pragma once

#include <string>
#include <vector>

#include "gerbes/cover.hpp"
#include "gerbes/group.hpp"
#include "gerbes/group_module.hpp"
#include "gerbes/linalg.hpp"

namespace gerbes {

// Free integer cochain complex on the sorted simplices of a nerve.
struct IntComplex {
  std::vector<int> dims;    // ranks of C^0..C^4
  std::vector<IMat> diffs;  // d^k : C^k -> C^{k+1}, k = 0..3
};

// Alternating-sum differential on sorted simplices; d o d = 0 is verified.
IntComplex cech_complex(const Nerve& nerve);

// H^k(nerve; A) for a finite abelian A given as cyclic factors, via the
// universal-coefficient reduction of the SNF invariant factors (locked in the
// tests against exhaustive cocycle enumeration). k <= 3.
CohomologyResult cech_cohomology(const Nerve& nerve, const std::vector<long>& cyclic_factors,
                                 int degree);

// Betti number over Q.
int cech_betti(const Nerve& nerve, int degree);

// Exhaustive oracle: cocycles modulo coboundaries with Z_m coefficients,
// counting only. Test/CLI cross-check; sizes are bounded by enum_limit.
Int cech_cohomology_order_bruteforce(const Nerve& nerve, long m, int degree,
                                     long enum_limit = 1 << 22);

struct GerbeClassification {
  std::vector<Int> h2_factors;       // H^2(nerve; Z(G)) from the SNF route
  Int h2_order = 0;
  bool enumerated = false;           // representative list is present
  Int class_count = 0;               // equals h2_order when both routes run
  // normalized representatives: values on sorted triangles, lex-least per
  // class, listed in ascending order
  std::vector<std::vector<Elt>> representatives;
  std::vector<Elt> center;           // center of G (element indices)
};

// Enumerates normalized cocycles (lambda = id, g on sorted triangles valued
// in Z(G), abelian relation) modulo central coboundaries, and cross-counts
// against H^2 from the SNF route. When |Z(G)|^{#triangles} exceeds the limit,
// only the SNF count is returned (enumerated = false).
GerbeClassification classify_bound_gerbes(const Nerve& nerve, const FiniteGroup& g,
                                          long enum_limit = 1 << 20);

}  // namespace gerbes

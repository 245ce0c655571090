// Groupoid G-extensions: construction from cocycles, cocycle extraction,
// outer action, band, band triviality, central normal form and induced
// extensions from central data.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gerbes/automorphisms.hpp"
#include "gerbes/cocycle.hpp"
#include "gerbes/cover.hpp"
#include "gerbes/groupoid.hpp"

namespace gerbes {

// phi: total -> base over shared objects; kernel = preimages of units.
struct GroupoidExtension {
  FiniteGroupoid total;
  FiniteGroupoid base;
  std::vector<int> phi;                  // total arrow -> base arrow
  std::vector<std::vector<int>> kernel;  // per object, sorted total arrows

  int kernel_fiber_size(int obj) const { return static_cast<int>(kernel[obj].size()); }
};

// Extension axioms, verified exhaustively: phi a surjective morphism over the
// identity on objects, kernel fibers groups, right kernel action on each
// phi-fiber free and transitive. Returns human-readable violations.
std::vector<std::string> validate_extension(const GroupoidExtension& e);

// chi[obj][g] = total arrow realizing g in the kernel fiber at obj
struct KernelTrivialization {
  std::vector<std::vector<int>> chi;
  std::vector<std::map<int, Elt>> chi_inv;  // built on demand by make_trivialization

  Elt inverse(int obj, int arrow) const { return chi_inv[obj].at(arrow); }
};

KernelTrivialization make_trivialization(std::vector<std::vector<int>> chi);

// chi_m must be a group isomorphism G -> kernel fiber at m for every object.
bool is_valid_trivialization(const GroupoidExtension& e, const FiniteGroup& g,
                             const KernelTrivialization& chi);

// Extension of a Cech groupoid together with its bookkeeping.
struct CechExtension {
  CechGroupoid base;
  GroupoidExtension ext;
  KernelTrivialization chi;           // canonical kernel trivialization
  std::vector<int> canonical_section; // base arrow -> total arrow
  std::vector<std::array<int, 4>> arrow_labels;  // total arrow -> (p,i,j,g); empty if unlabeled

  int arrow_of(int p, int i, int j, Elt g) const;  // -1 when unlabeled/absent
};

// Arrows (p,i,j,g), product (x_ij,g)(x_jk,h) = (x_ik, g_ijk lambda_jk^{-1}(g) h).
// Verifies every groupoid and extension axiom exhaustively and throws
// ValidationError ("InvalidCocycle") when any fails.
CechExtension extension_from_cocycle(const NonAbelianCocycle& d);

// Extraction: lambda_ij = chi^{-1} o AD_{rho(x_ij)} o chi,
// g_ijk = chi^{-1}(rho(x_ik)^{-1} rho(x_ij) rho(x_jk)). The section rho must
// satisfy phi o rho = id, rho(unit) = unit and rho(y^{-1}) = rho(y)^{-1}
// ("BadSection" otherwise).
NonAbelianCocycle cocycle_from_extension(const CechGroupoid& base, const GroupoidExtension& ext,
                                         const FiniteGroup& g, const std::vector<int>& rho,
                                         const KernelTrivialization& chi);

// Sections of phi over a Cech base honoring the unit/inverse conventions.
std::vector<int> canonical_section_of(const CechExtension& e);
bool is_valid_section(const CechGroupoid& base, const GroupoidExtension& ext,
                      const std::vector<int>& rho, std::string* why = nullptr);

// Outer action: out-class of chi^{-1} o AD_x o chi for any lift x of the base
// arrow; lift independence is verified for every arrow.
std::vector<int> outer_action(const GroupoidExtension& ext, const FiniteGroup& g,
                              const KernelTrivialization& chi, const AutStructure& aut);

// Band data over the cover: bar_lambda = proj o lambda per (edge, point).
struct BandCocycle {
  FiniteGroup out;  // Out(G)
  CoverModel cover;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> values;       // out elements per edge slot
  std::vector<std::vector<int>> edge_points;  // intersection lists

  int edge_pos(int i, int j) const;
  int value_at(int i, int j, int p) const;
};

// From cocycle data; checks the triple relation bar_ij bar_jk bar_ki = 1.
BandCocycle band(const NonAbelianCocycle& d, const AutStructure& aut);

// eta at (point, vertex) keys; in nerve-constant mode the point is -1 and
// keys are nerve vertices.
struct BandTrivialization {
  std::map<std::pair<int, int>, int> eta;  // (p, i) -> out element
};

// Spanning-tree gauge fixing per component; returns a trivialization with
// bar_ij = eta_i o eta_j^{-1} or nothing when a loop holonomy obstructs.
std::optional<BandTrivialization> band_is_trivial(const BandCocycle& b);

// Loop-holonomy description used by reports.
struct BandClass {
  bool trivial = false;
  // per independent off-tree edge: (p, i, j, conjugacy-class representative)
  std::vector<std::array<int, 4>> holonomy_witnesses;
};

BandClass band_class(const BandCocycle& b);

// Brute-force search over Out^{vertices}; test oracle only.
bool band_trivializable_bruteforce(const BandCocycle& b);

// Theorem-style normal form: gauges lambda into Inn by the lifted band
// trivialization, then twists it to the identity; resulting g is Z(G)-valued
// and satisfies the abelian cocycle relation.
NonAbelianCocycle normalize_central(const NonAbelianCocycle& d, const BandTrivialization& eta,
                                    const AutStructure& aut);

struct CentralityCertificate {
  bool central = false;
  std::optional<NonAbelianCocycle> normalized;  // lambda = id, g in Z(G)
  std::optional<CocycleViolation> witness;      // an edge with outer lambda
};

// Centrality relative to the implicit kernel trivialization of the data:
// true iff every lambda_ij is inner.
CentralityCertificate is_central(const NonAbelianCocycle& d, const AutStructure& aut);

// Induced G-extension (X~ x G)/A of an A-central cocycle (lambda = id,
// values inside a subgroup A of Z(G)). Carrier is the literal orbit quotient.
struct InducedExtension {
  CechGroupoid base;
  GroupoidExtension ext;
  KernelTrivialization chi;
  std::vector<int> canonical_section;
  std::optional<NonAbelianCocycle> recovered;  // extraction along the canonical section
  long product_carrier_size = 0;  // |X~_1| * |G|, before taking orbits
};

InducedExtension induced_from_central(const NonAbelianCocycle& central_data,
                                      const std::vector<Elt>& subgroup_a);

// Coboundary reduction for central-valued abelian cocycles: canonical (lex
// least) representative of g modulo g_ijk -> g_ijk h_jk h_ik^{-1} h_ij.
// Used for Theorem-roundtrip comparisons and the gerbe classifier.
std::vector<Elt> central_canonical_representative(const CoverModel& cover,
                                                  const FiniteGroup& g,
                                                  const std::vector<Elt>& center_elements,
                                                  const std::vector<Elt>& cocycle_on_triangles,
                                                  long enum_limit = 1 << 20);

// Sorted triangle values of a lambda = id central cocycle (helper shared with
// the classifier and tests); nerve-constant data only.
std::vector<Elt> central_triangle_values(const NonAbelianCocycle& d);

}  // namespace gerbes

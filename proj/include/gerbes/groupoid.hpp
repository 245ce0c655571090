// Finite groupoids with explicit source/target/composition tables, nerves of
// composable tuples with face maps, pullbacks and Morita-morphism detection.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gerbes/group.hpp"

namespace gerbes {

struct GroupoidData {
  int n_objects = 0;
  std::vector<int> src, tgt;          // per arrow
  std::vector<int> unit;              // per object
  std::vector<std::vector<int>> comp; // comp[a][b] arrow index, -1 undefined
  std::vector<int> inv;               // per arrow
};

struct GroupoidViolation {
  enum class Kind {
    BadShape,
    BadUnit,          // unit arrow not a loop at its object / not neutral
    BadComposability, // comp defined where tgt != src or undefined where tgt == src
    BadCompRange,     // composite endpoints wrong
    NonAssociative,
    BadInverse,
  };
  Kind kind;
  int a = -1, b = -1, c = -1;
  std::string describe() const;
};

std::vector<GroupoidViolation> validate_groupoid_data(const GroupoidData& d);

class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;  // empty placeholder, only assignment is valid

  // Throws ValidationError listing violations; use validate_groupoid_data for
  // a non-throwing report.
  explicit FiniteGroupoid(GroupoidData d);

  int n_objects() const { return n_objects_; }
  int n_arrows() const { return static_cast<int>(src_.size()); }
  int src(int a) const { return src_[a]; }
  int tgt(int a) const { return tgt_[a]; }
  int unit(int m) const { return unit_[m]; }
  int inv(int a) const { return inv_[a]; }
  bool composable(int a, int b) const { return tgt_[a] == src_[b]; }
  int comp(int a, int b) const { return comp_[static_cast<size_t>(a) * n_arrows() + b]; }

  const std::vector<int>& arrows_from(int obj) const { return arrows_from_[obj]; }
  const std::vector<int>& arrows_into(int obj) const { return arrows_into_[obj]; }

  bool is_unit(int a) const { return unit_[src_[a]] == a; }

  // orbits of the reachability relation, canonical: sorted object lists,
  // ordered by least object
  std::vector<std::vector<int>> connected_components() const;

 private:
  int n_objects_ = 0;
  std::vector<int> src_, tgt_, unit_, inv_;
  std::vector<int> comp_;
  std::vector<std::vector<int>> arrows_from_, arrows_into_;
};

// A group as a one-object groupoid; arrow indices coincide with element
// indices.
FiniteGroupoid one_object_groupoid(const FiniteGroup& g);

// Pair groupoid on n objects: arrows are ordered pairs (i,j), composition
// (i,j)(j,k) = (i,k). Arrow index = i*n + j.
FiniteGroupoid pair_groupoid(int n);

// Disjoint union; arrows/objects of `b` are shifted after those of `a`.
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

// Composable n-tuples in lexicographic order plus the simplicial face maps.
// Degree 0 tuples are the objects.
struct ComposableTuples {
  int degree = 0;
  std::vector<std::vector<int>> tuples;
  // face[i][t] = index of eps_i(tuple t) in the degree-1 lower table;
  // eps_0 drops the first arrow, eps_n the last, eps_i composes x_i x_{i+1}.
  std::vector<std::vector<int>> face;
};

// Tuple tables for all degrees 0..max_degree (max 4) with face maps verified
// against the simplicial identities.
std::vector<ComposableTuples> nerve_tuples(const FiniteGroupoid& g, int max_degree);

// Pullback groupoid along a surjection onto the objects: objects are the
// fiber points, arrows are triples (p, x, q) with j(p) = src(x), j(q) = tgt(x),
// ordered lexicographically by (p, x, q).
struct PullbackGroupoid {
  FiniteGroupoid gpd;
  std::vector<int> j;                       // new object -> old object
  std::vector<std::array<int, 3>> arrows;   // (p, x, q) labels per new arrow
  std::vector<int> arrow_proj;              // new arrow -> old arrow x
  int arrow_index(int p, int x, int q) const;
};

PullbackGroupoid pullback_groupoid(const FiniteGroupoid& g, const std::vector<int>& j);

// A groupoid morphism given by object and arrow maps; validated on
// construction.
struct GroupoidMorphism {
  const FiniteGroupoid* from = nullptr;
  const FiniteGroupoid* to = nullptr;
  std::vector<int> obj_map;
  std::vector<int> arrow_map;
};

bool is_groupoid_morphism(const GroupoidMorphism& f, std::string* why = nullptr);

struct MoritaWitness {
  bool ok = false;
  std::string reason;    // empty when ok
};

// True iff the object map is surjective and the canonical comparison
// x' -> (src x', f(x'), tgt x') is an isomorphism onto the pullback groupoid.
MoritaWitness is_morita_morphism(const GroupoidMorphism& f);

// Exhaustive isomorphism check between small groupoids with a fixed object
// bijection; used by tests and the pullback-identity property.
bool groupoids_isomorphic_over_objects(const FiniteGroupoid& a, const FiniteGroupoid& b,
                                       const std::vector<int>& obj_bijection);

}  // namespace gerbes

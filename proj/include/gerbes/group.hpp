// Finite groups as multiplication tables. Element 0 is always the identity.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gerbes {

using Elt = int;

struct GroupViolation {
  enum class Kind { BadShape, BadIdentity, NoInverse, NonAssociative };
  Kind kind;
  Elt a = -1, b = -1, c = -1;
  std::string describe() const;
};

using Table = std::vector<std::vector<Elt>>;

std::vector<GroupViolation> validate_group_table(const Table& table);

class FiniteGroup {
 public:
  // Throws GroupError listing the violated axioms if the table is not a group
  // with identity 0.
  explicit FiniteGroup(Table table, std::string name = "");

  static constexpr Elt id = 0;

  int order() const { return order_; }
  const std::string& name() const { return name_; }

  Elt mul(Elt a, Elt b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
  Elt inv(Elt a) const { return inv_[a]; }
  Elt conj(Elt g, Elt a) const { return mul(mul(g, a), inv(g)); }  // g a g^-1

  int element_order(Elt a) const;
  bool is_abelian() const;
  bool commutes(Elt a, Elt b) const { return mul(a, b) == mul(b, a); }

  // { z : zg == gz for all g }, sorted
  std::vector<Elt> center() const;

  Table table() const;

  bool operator==(const FiniteGroup& o) const {
    return order_ == o.order_ && table_ == o.table_;
  }

 private:
  int order_;
  std::string name_;
  std::vector<Elt> table_;  // row-major
  std::vector<Elt> inv_;
};

// Subgroup of g on the given elements (must be closed and contain 0), as a
// group of its own plus the embedding back into g.
struct Subgroup {
  FiniteGroup group;
  std::vector<Elt> embed;  // subgroup element -> element of the ambient group
  std::vector<Elt> index_of;  // ambient element -> subgroup index or -1
};

Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<Elt> elements,
                                std::string name = "");

// Closure of a generating set.
std::vector<Elt> generated_subgroup(const FiniteGroup& g, const std::vector<Elt>& gens);

// Invariant factors d1 | d2 | ... of an abelian group (presentation via its
// own multiplication table, reduced by Smith normal form).
std::vector<long> abelian_invariant_factors(const FiniteGroup& abelian);

// Ready-made tables used throughout the tests and fixtures.
FiniteGroup cyclic_group(int n);
FiniteGroup klein_group();
FiniteGroup symmetric_group_3();
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup quaternion_group();     // Q8

}  // namespace gerbes

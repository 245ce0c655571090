// Finite cover models: a finite sample set P with subsets U_i, their nerve,
// and the Cech groupoid of the cover.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gerbes/groupoid.hpp"

namespace gerbes {

enum class CoverMode { pointwise, nerve_constant };

struct CoverModel {
  int points = 0;
  std::vector<std::vector<int>> sets;  // each sorted, nonempty
  CoverMode mode = CoverMode::pointwise;
  std::string name;

  int n_sets() const { return static_cast<int>(sets.size()); }
  bool in_set(int set, int p) const;
  // sorted intersection of the listed sets
  std::vector<int> intersection(const std::vector<int>& set_indices) const;
  bool has_point(const std::vector<int>& set_indices) const {
    return !intersection(set_indices).empty();
  }
};

// Throws ValidationError on empty sets / uncovered points / out-of-range.
void validate_cover(const CoverModel& cover);

// Simplices of the nerve: index subsets with nonempty common intersection.
// Dimension d simplices have d+1 vertices; stored for d = 0..4 (dimension 4
// only feeds the top Cech differential).
struct Nerve {
  std::vector<std::vector<std::vector<int>>> simplices;  // [dim][k] = sorted vertex list
  int simplex_index(int dim, const std::vector<int>& vertices) const;  // -1 if absent
  int count(int dim) const {
    return dim < static_cast<int>(simplices.size())
               ? static_cast<int>(simplices[dim].size())
               : 0;
  }
};

Nerve nerve_of_cover(const CoverModel& cover);

// Cech groupoid: objects (p, i) with p in U_i, arrows (p, i, j) with
// p in U_i n U_j, (p,i,j)(p,j,k) = (p,i,k). Mode only affects cocycle
// storage, never the groupoid itself.
struct CechGroupoid {
  FiniteGroupoid gpd;
  CoverModel cover;
  std::vector<std::pair<int, int>> objects;        // (p, i), sorted
  std::vector<std::array<int, 3>> arrows;          // (p, i, j), sorted
  int object_index(int p, int i) const;
  int arrow_index(int p, int i, int j) const;
};

CechGroupoid cech_groupoid(const CoverModel& cover);

}  // namespace gerbes

#include <random>

#include "doctest.h"
#include "gerbes/cocycle.hpp"
#include "gerbes/error.hpp"
#include "test_support.hpp"

using namespace gerbes;
using namespace gerbes::testing;

TEST_CASE("trivial cocycle validates") {
  auto d = trivial_cocycle(symmetric_group_3(), circle_cover());
  CHECK(validate_cocycle(d).ok());
}

TEST_CASE("inner twist of trivial data validates: lambda = AD_h, g = h_ik^-1 h_ij h_jk") {
  std::mt19937 rng(42);
  FiniteGroup s3 = symmetric_group_3();
  for (const auto& cover : {circle_cover(), star_cover(4), tetra_boundary_cover()}) {
    for (int round = 0; round < 10; ++round) {
      auto d0 = trivial_cocycle(s3, cover);
      auto t = random_twist(d0, rng);
      auto d = twist_by_cochain(d0, t);
      CHECK(validate_cocycle(d).ok());
      // symbolic cross-check on sorted triples: g = h_ik^{-1} h_ij h_jk
      for (const auto& tri : d.triples()) {
        auto [i, j, k] = tri;
        if (!(i < j && j < k)) continue;
        for (int p : d.key_points({i, j, k})) {
          auto hval = [&](int a, int b) -> Elt {
            auto it = t.h.find({a, b});
            if (it == t.h.end()) return FiniteGroup::id;
            int edge = d.edge_pos(a, b);
            return it->second[d.edge_slot(edge, p)];
          };
          Elt expect = s3.mul(s3.mul(s3.inv(hval(i, k)), hval(i, j)), hval(j, k));
          CHECK(d.g(i, j, k, p) == expect);
        }
      }
    }
  }
}

TEST_CASE("single-value mutation breaks validation") {
  std::mt19937 rng(1234);
  FiniteGroup g = symmetric_group_3();
  auto cover = star_cover(4);
  for (int round = 0; round < 20; ++round) {
    auto d = random_valid_cocycle(g, cover, rng);
    REQUIRE(validate_cocycle(d).ok());
    // mutate one g value on a sorted triple
    auto tri = d.triples()[rng() % d.triples().size()];
    auto [i, j, k] = tri;
    int p = d.key_points({i, j, k})[0];
    Elt old = d.g(i, j, k, p);
    Elt nv = static_cast<Elt>((old + 1 + rng() % (g.order() - 1)) % g.order());
    d.set_g(i, j, k, p, nv);
    auto report = validate_cocycle(d);
    CHECK(!report.ok());
    bool has_c = false;
    for (const auto& v : report.violations)
      if (v.tag == "C1" || v.tag == "C2") has_c = true;
    CHECK(has_c);
  }
}

TEST_CASE("complete_cocycle on trivial sorted data gives trivial full data") {
  FiniteGroup g = cyclic_group(4);
  auto cover = circle_cover();
  auto full = complete_cocycle(g, cover, {});
  CHECK(full == trivial_cocycle(g, cover));
}

TEST_CASE("completion forces g_iji = 1 and lambda_ji = lambda_ij^{-1}") {
  FiniteGroup z3 = cyclic_group(3);
  auto cover = circle_cover();
  SortedCocycleData in;
  // nontrivial automorphism x -> -x on edge (1,2), both points
  Perm neg = {0, 2, 1};
  in.lambda[{1, 2}] = {neg};
  // circle cover: U_1 n U_2 = {2}? sets {0,1},{1,2},{0,2}: U1nU2 = {1}n... indices: set0={0,1}, set1={1,2}, set2={0,2}
  // edge (1,2) has intersection {2}; single slot
  auto full = complete_cocycle(z3, cover, in);
  CHECK(validate_cocycle(full).ok());
  int p = full.key_points({1, 2})[0];
  CHECK(full.lambda(2, 1, p) == inverse_perm(neg));
  CHECK(full.g(1, 2, 1, p) == FiniteGroup::id);
  CHECK(full.lambda(0, 0, 0) == identity_perm(3));
}

TEST_CASE("completion of sorted twist data equals the directly built full twist") {
  std::mt19937 rng(77);
  FiniteGroup s3 = symmetric_group_3();
  auto cover = star_cover(4);
  auto d0 = trivial_cocycle(s3, cover);
  auto t = random_twist(d0, rng);
  auto full = twist_by_cochain(d0, t);
  // restrict to sorted keys, complete, compare
  SortedCocycleData sorted;
  for (const auto& [key, vals] : t.h) {
    (void)vals;
    std::vector<Perm> lams;
    for (int p : full.key_points({key.first, key.second}))
      lams.push_back(full.lambda(key.first, key.second, p));
    sorted.lambda[key] = lams;
  }
  for (const auto& tri : full.triples()) {
    auto [i, j, k] = tri;
    if (!(i < j && j < k)) continue;
    std::vector<Elt> gs;
    for (int p : full.key_points({i, j, k})) gs.push_back(full.g(i, j, k, p));
    sorted.g[{i, j, k}] = gs;
  }
  auto completed = complete_cocycle(s3, cover, sorted);
  CHECK(completed == full);
}

TEST_CASE("completion rejects unsorted keys") {
  FiniteGroup z2 = cyclic_group(2);
  SortedCocycleData in;
  in.lambda[{1, 0}] = {identity_perm(2), identity_perm(2)};
  CHECK_THROWS_WITH_AS(complete_cocycle(z2, circle_cover(), in),
                       doctest::Contains("NoCompletion"), ValidationError);
}

TEST_CASE("twist by the identity cochain is the identity") {
  auto d = trivial_cocycle(quaternion_group(), circle_cover());
  TwistCochain empty;
  CHECK(twist_by_cochain(d, empty) == d);
}

TEST_CASE("twisting twice by h then by its inverse returns the original") {
  std::mt19937 rng(4711);
  for (const FiniteGroup& g : {symmetric_group_3(), quaternion_group()}) {
    for (const auto& cover : {circle_cover(), star_cover(4)}) {
      auto d = random_valid_cocycle(g, cover, rng);
      auto t = random_twist(d, rng);
      auto twisted = twist_by_cochain(d, t);
      CHECK(validate_cocycle(twisted).ok());
      auto back = twist_by_cochain(twisted, inverse_twist(d, t));
      CHECK(back == d);
    }
  }
}

TEST_CASE("nerve-constant mode stores one slot per key") {
  auto cover = tetra_boundary_cover(CoverMode::nerve_constant);
  auto d = trivial_cocycle(cyclic_group(2), cover);
  CHECK(d.key_points({0, 1}).size() == 1);
  auto dp = trivial_cocycle(cyclic_group(2), tetra_boundary_cover(CoverMode::pointwise));
  CHECK(dp.key_points({0, 1}).size() == 2);  // U_0 n U_1 = {2,3}
  CHECK(validate_cocycle(d).ok());
}

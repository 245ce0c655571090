#include <random>

#include "doctest.h"
#include "gerbes/linalg.hpp"

using namespace gerbes;

namespace {

IMat from_rows(const std::vector<std::vector<long>>& rows) {
  IMat m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace

TEST_CASE("smith normal form on the identity") {
  auto snf = smith_normal_form(IMat::identity(4));
  CHECK(snf.rank == 4);
  CHECK(snf.invariant_factors() == std::vector<Int>{1, 1, 1, 1});
}

TEST_CASE("smith normal form diag(2,3) has factors 1,6") {
  auto snf = smith_normal_form(from_rows({{2, 0}, {0, 3}}));
  CHECK(snf.invariant_factors() == std::vector<Int>{1, 6});
  CHECK(mat_mul(mat_mul(snf.u, from_rows({{2, 0}, {0, 3}})), snf.v) == snf.d);
}

TEST_CASE("smith normal form of the zero matrix") {
  IMat z(3, 2);
  auto snf = smith_normal_form(z);
  CHECK(snf.rank == 0);
  CHECK(snf.d.is_zero());
}

TEST_CASE("smith normal form randomized: UMV = D, unimodular, divisibility") {
  std::mt19937 rng(20240811);
  for (int round = 0; round < 60; ++round) {
    int rows = 1 + static_cast<int>(rng() % 5);
    int cols = 1 + static_cast<int>(rng() % 5);
    IMat m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rng() % 9) - 4;
    auto snf = smith_normal_form(m);
    CHECK(mat_mul(mat_mul(snf.u, m), snf.v) == snf.d);
    Int du = determinant(snf.u), dv = determinant(snf.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    CHECK(mat_mul(snf.u, snf.u_inv) == IMat::identity(rows));
    CHECK(mat_mul(snf.v, snf.v_inv) == IMat::identity(cols));
    auto fs = snf.invariant_factors();
    for (size_t i = 0; i + 1 < fs.size(); ++i) CHECK(fs[i + 1] % fs[i] == 0);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (r != c) CHECK(snf.d(r, c) == 0);
  }
}

TEST_CASE("rational rank and nullspace") {
  QMat m = to_rational(from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}));
  CHECK(rank_q(m) == 2);
  QMat ns = nullspace_q(m);
  CHECK(ns.cols() == 1);
  // check M * basis = 0
  QMat prod = mat_mul(m, ns);
  CHECK(prod.is_zero());
}

TEST_CASE("zm cohomology factors of simple complexes") {
  // 0 -> Z_4 -> 0 : H = Z4
  IMat a(1, 0);
  IMat b(0, 1);
  CHECK(zm_cohomology_factors(a, b, 4) == std::vector<Int>{4});
  // Z_4 --2--> Z_4 --2--> Z_4 in the middle: ker(2)/im(2) = {0,2}/{0,2} = 0
  IMat two(1, 1);
  two(0, 0) = 2;
  CHECK(zm_cohomology_factors(two, two, 4).empty());
  // Z_2 --0--> Z_2 --0--> Z_2 : H = Z2
  IMat zero(1, 1);
  CHECK(zm_cohomology_factors(zero, zero, 2) == std::vector<Int>{2});
}

TEST_CASE("invariant chain normalization") {
  CHECK(invariant_chain({2, 4}) == std::vector<Int>{2, 4});
  CHECK(invariant_chain({2, 3}) == std::vector<Int>{6});
  CHECK(invariant_chain({2, 2, 3}) == std::vector<Int>{2, 6});
  CHECK(invariant_chain({1, 1}).empty());
  CHECK(invariant_chain({6, 4}) == std::vector<Int>{2, 12});
}

TEST_CASE("sparse rank agrees with dense elimination on random matrices") {
  std::mt19937 rng(314159);
  for (int round = 0; round < 80; ++round) {
    int rows = 1 + static_cast<int>(rng() % 12);
    int cols = 1 + static_cast<int>(rng() % 8);
    QMat m(rows, cols);
    std::vector<SparseRowQ> sparse(rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        if (rng() % 100 < 60) continue;  // keep it sparse
        long v = static_cast<long>(rng() % 7) - 3;
        if (v == 0) continue;
        m(r, c) = v;
        sparse[r].push_back({c, Rat(v)});
      }
    CHECK(rank_q_sparse(sparse) == rank_q(m));
  }
}

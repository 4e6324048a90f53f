#include "doctest.h"
#include "helpers.hpp"

#include "gkz/lattice.hpp"

#include <random>

using namespace gkz;
using test::iv;
using test::rows;
using test::rv;

TEST_CASE("hnf of a row vector") {
  auto h = hermite_normal_form(rows({{2, 3}}));
  CHECK(h.rank == 1);
  CHECK(h.H(0, 0) == 1);
  CHECK(h.H(0, 1) == 0);
  CHECK(rows({{2, 3}}) * h.U == h.H);
  CHECK(abs(determinant(h.U)) == 1);
}

TEST_CASE("hnf of identity and of an example with an interior column") {
  auto I = IntMatrix::identity(2);
  CHECK(hermite_normal_form(I).H == I);
  auto B = lattice_basis(rows({{1, 0, 1}, {0, 2, 1}}));
  CHECK(B == IntMatrix::identity(2));
}

TEST_CASE("hnf is lower triangular with reduced rows") {
  auto h = hermite_normal_form(rows({{4, 6, 2}, {1, 5, 7}, {3, 3, 3}}));
  for (std::size_t j = 0; j < h.rank; ++j) {
    std::size_t p = h.pivot_rows[j];
    CHECK(h.H(p, j) > 0);
    for (std::size_t i = 0; i < p; ++i)
      CHECK(h.H(i, j) == 0);
    for (std::size_t c = 0; c < j; ++c) {
      CHECK(h.H(p, c) >= 0);
      CHECK(h.H(p, c) < h.H(p, j));
    }
  }
}

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(rows({{2, 0}, {0, 3}}));
  CHECK(s.S(0, 0) == 1);
  CHECK(s.S(1, 1) == 6);
  CHECK(s.U * rows({{2, 0}, {0, 3}}) * s.V == s.S);

  auto z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.rank == 0);
  CHECK(z.S == IntMatrix(2, 3));

  auto q = quotient(2, {iv({0, 2})});
  CHECK(q.free_rank == 1);
  REQUIRE(q.torsion.size() == 1);
  CHECK(q.torsion[0] == 2);
}

TEST_CASE("lattice membership") {
  CHECK_FALSE(lattice_member(std::vector<IntVec>{iv({1, 0}), iv({0, 2})}, iv({0, 1})));
  CHECK(lattice_member(std::vector<IntVec>{iv({1, 0}), iv({0, 2})}, iv({3, 4})));
  CHECK(lattice_member(std::vector<IntVec>{}, iv({0, 0})));
  CHECK_FALSE(lattice_member(std::vector<IntVec>{}, iv({0, 1})));
  CHECK_THROWS_AS(lattice_member(std::vector<IntVec>{iv({1, 0})}, iv({1, 0, 0})), InvalidInput);
}

TEST_CASE("quotients") {
  auto q = quotient(3, {iv({1, 0, 0})});
  CHECK(q.free_rank == 2);
  CHECK(q.torsion.empty());
  auto t = quotient(1, {iv({1})});
  CHECK(t.free_rank == 0);
  CHECK(t.torsion.empty());
  CHECK(t.torsion_order() == 1);
  // projection kills generators, section is a right inverse
  auto m = quotient(2, {iv({2, 4}), iv({6, 0})});
  CHECK(is_zero(m.project(iv({2, 4}))));
  CHECK(is_zero(m.project(iv({6, 0}))));
  CHECK(m.torsion_order() == 24);
  IntVec x = iv({1, 1});
  CHECK(m.project(m.section(m.project(x))) == m.project(x));
}

TEST_CASE("rational solve") {
  auto M = IntMatrix::from_columns(2, {iv({1, 0})});
  auto x = rational_solve(M, rv({"1/2", "0"}));
  REQUIRE(x);
  CHECK((*x)[0] == Rat(1, 2));
  CHECK_FALSE(rational_solve(M, rv({"0", "1"})));
  auto y = rational_solve(IntMatrix::from_columns(2, {iv({0, 2})}), rv({"0", "3"}));
  REQUIRE(y);
  CHECK((*y)[0] == Rat(3, 2));
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/4") == Rat(3, 2));
  CHECK(parse_rational("-7") == Rat(-7));
  CHECK_THROWS_AS(parse_rational("2/x"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("0.5"), InvalidInput);
  CHECK(to_string(parse_rational("-3/6")) == "-1/2");
  CHECK(to_string(Rat(4)) == "4");
}

TEST_CASE("random matrices: hnf span, snf divisibility, quotient kills generators") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> e(-4, 4), dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = dim(rng), m = dim(rng);
    IntMatrix M(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        M(i, j) = e(rng);
    auto h = hermite_normal_form(M);
    CHECK(M * h.U == h.H);
    CHECK(abs(determinant(h.U)) == 1);
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(lattice_member(h.H, M.column(j)));
      CHECK(lattice_member(M, h.H.column(j)));
    }
    auto s = smith_normal_form(M);
    CHECK(s.U * M * s.V == s.S);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    for (std::size_t i = 0; i + 1 < s.rank; ++i)
      CHECK(s.S(i + 1, i + 1) % s.S(i, i) == 0);
    if (n == m && determinant(M) != 0) {
      Int prod = 1;
      for (std::size_t i = 0; i < n; ++i)
        prod *= s.S(i, i);
      CHECK(prod == abs(determinant(M)));
    }
    auto q = quotient(M);
    for (std::size_t j = 0; j < m; ++j)
      CHECK(is_zero(q.project(M.column(j))));
    for (std::size_t k = 0; k + 1 < q.torsion.size(); ++k)
      CHECK(q.torsion[k + 1] % q.torsion[k] == 0);
  }
}

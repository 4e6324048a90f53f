#include "doctest.h"
#include "helpers.hpp"

#include "gkz/semigroup.hpp"

#include <random>

using namespace gkz;
using test::iv;
using test::rows;
using test::rv;

namespace {
const Configuration &A23() {
  static Configuration a(rows({{2, 3}}));
  return a;
}
const Configuration &E382() {
  static Configuration a(rows({{1, 1, 0}, {0, 1, 2}}));
  return a;
}
const Configuration &E46() {
  static Configuration a(rows({{1, 0, 1}, {0, 2, 1}}));
  return a;
}
} // namespace

TEST_CASE("membership examples") {
  auto S = E46().matrix().columns();
  CHECK(member({iv({0, 0}), S, {}}, iv({3, 4})));
  CHECK_FALSE(member({iv({0, 0}), S, {}}, iv({0, 1})));
  CHECK_FALSE(member({iv({0, 0}), S, {iv({0, 2})}}, iv({0, 1})));
  CHECK(member({iv({0, 0}), S, {iv({0, 2})}}, iv({0, -4})));
  CHECK_FALSE(member({iv({5}), {iv({2}), iv({3})}, {}}, iv({1})));
  CHECK(member({iv({5}), {iv({2}), iv({3})}, {}}, iv({5})));
  CHECK(member({iv({5}), {iv({2}), iv({3})}, {}}, iv({10})));
  CHECK_FALSE(member({iv({0}), {iv({2}), iv({3})}, {}}, iv({1})));
  CHECK(member({iv({7, -1}), S, {iv({1, 0})}}, iv({7, -1})));
}

TEST_CASE("membership rejects non-pointed reduced cones") {
  CHECK_THROWS_AS(member({iv({0}), {iv({1}), iv({-1})}, {}}, iv({0})), InvalidInput);
  // modulo a face the cone becomes pointed
  CHECK(member({iv({0, 0}), {iv({1, 0}), iv({-1, 0}), iv({0, 1})}, {iv({1, 0})}}, iv({-5, 3})));
}

TEST_CASE("lattice part equals adding negated face generators") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> e(-3, 3), dim(1, 3), cols(1, 5);
  int compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = dim(rng), N = cols(rng);
    IntMatrix M(n, N);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < N; ++j)
        M(i, j) = e(rng);
    Configuration A(M);
    if (A.rank() == 0)
      continue;
    auto S = M.columns();
    for (const auto &F : A.faces()) {
      std::vector<IntVec> L, S2 = S;
      for (std::size_t j : F.indices) {
        L.push_back(S[j]);
        S2.push_back(scale(S[j], Int(-1)));
      }
      // S2 spans a pointed cone only modulo L, so compare with the lattice on the S2 side too
      PreparedMembership a({IntVec(n, Int(0)), S, L});
      PreparedMembership b({IntVec(n, Int(0)), S2, L});
      std::uniform_int_distribution<int> t(-4, 4);
      for (int k = 0; k < 5; ++k) {
        IntVec x(n);
        for (auto &c : x)
          c = t(rng);
        CHECK(a.contains(x) == b.contains(x));
        ++compared;
      }
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("good classes for the first three families") {
  DegreeFamily fi{DegreeFamily::QuotientByInterior};
  CHECK(good_class_exists(A23(), fi, A23().faces()[1], rv({"6"})).is_true());
  CHECK_FALSE(good_class_exists(A23(), fi, A23().faces()[1], rv({"5"})).is_true());
  CHECK_FALSE(good_class_exists(A23(), fi, A23().faces()[1], rv({"1"})).is_true());

  const Face &x0 = E382().faces()[*E382().face_index({2})];
  CHECK(good_class_exists(E382(), fi, x0, rv({"0", "7/3"})).is_true());
  // x = 1 and x = 2 still avoid a_A + NA + ZF for a suitable parity, x = 3 does not
  CHECK(good_class_exists(E382(), fi, x0, rv({"1", "7/3"})).is_true());
  CHECK(good_class_exists(E382(), fi, x0, rv({"2", "7/3"})).is_true());
  CHECK_FALSE(good_class_exists(E382(), fi, x0, rv({"3", "7/3"})).is_true());

  DegreeFamily gap{DegreeFamily::Gap};
  const Face &f2 = E46().faces()[*E46().face_index({1})];
  CHECK(good_class_exists(E46(), gap, f2, rv({"0", "1"})).is_true());
  CHECK(good_class_exists(E46(), gap, f2, rv({"0", "5"})).is_true());
  CHECK_FALSE(good_class_exists(E46(), gap, f2, rv({"1", "1"})).is_true());
  // no lattice representative modulo QF
  CHECK_FALSE(good_class_exists(E46(), gap, f2, rv({"1/2", "0"})).is_true());
  CHECK_FALSE(good_class_exists(A23(), fi, A23().faces()[1], rv({"1/2"})).is_true());
}

TEST_CASE("qdeg components") {
  auto c1 = qdeg_components({DegreeFamily::QuotientByInterior}, A23());
  std::vector<IntVec> bases;
  for (const auto &c : c1) {
    CHECK(c.face == 1);
    bases.push_back(c.base);
  }
  CHECK(bases == std::vector<IntVec>{iv({0}), iv({2}), iv({3}), iv({4}), iv({6})});

  auto g = qdeg_components({DegreeFamily::Gap}, E46());
  REQUIRE(g.size() == 1);
  CHECK(g[0].base == iv({0, 1}));
  CHECK(E46().faces()[g[0].face].indices == IndexSet{1});

  auto g23 = qdeg_components({DegreeFamily::Gap}, A23());
  REQUIRE(g23.size() == 1);
  CHECK(g23[0].base == iv({1}));

  Configuration i2(IntMatrix::identity(2));
  CHECK(qdeg_components({DegreeFamily::Gap}, i2).empty());
  Configuration e54(rows({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, -1}}));
  CHECK(qdeg_components({DegreeFamily::Gap}, e54).empty());
}

TEST_CASE("qdeg components grow with the filtration index") {
  Configuration e54(rows({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, -1}}));
  for (const Configuration *A : std::vector<const Configuration *>{&E382(), &E46(), &e54}) {
    Calculus C(*A);
    for (std::size_t i = 0; i + 1 < A->rank(); ++i) {
      auto lo = C.qdeg_components({DegreeFamily::FiltrationIdeal, i});
      for (const auto &c : lo)
        CHECK(C.good_class_exists({DegreeFamily::FiltrationIdeal, i + 1}, c.face, *A->coords(to_rat(c.base)))
                  .is_true());
    }
  }
}

TEST_CASE("sumset membership") {
  CHECK(sumset_member_bounded(A23(), 0, 2, iv({4})).is_true());
  auto v = sumset_member_bounded(A23(), 0, 2, iv({3}));
  CHECK(v.value == Truth::False);
  CHECK(sumset_member_bounded(A23(), 0, 2, iv({5})).is_true());
  CHECK(sumset_member_bounded(A23(), 0, 3, iv({6})).is_true());
  CHECK_FALSE(sumset_member_bounded(A23(), 0, 3, iv({5})).is_true());
  CHECK_FALSE(sumset_member_bounded(A23(), 0, 2, iv({-4})).is_true());
  // deg(I_1) for the 2D example is everything but 0; deg(I_0) is the interior
  CHECK(sumset_member_bounded(E382(), 1, 2, iv({0, 4})).is_true());
  CHECK_FALSE(sumset_member_bounded(E382(), 0, 2, iv({0, 4})).is_true());
  CHECK(sumset_member_bounded(E382(), 0, 2, iv({2, 2})).is_true());
  CHECK_FALSE(sumset_member_bounded(E382(), 0, 2, iv({1, 5})).is_true());
  CHECK_THROWS_AS(sumset_member_bounded(A23(), 0, 1, iv({3})), InvalidInput);
}

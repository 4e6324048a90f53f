#include "doctest.h"
#include "helpers.hpp"

#include "gkz/faces.hpp"
#include "gkz/semigroup.hpp"

#include <random>
#include <set>

using namespace gkz;
using test::iv;
using test::rows;

namespace {

std::vector<IndexSet> face_sets(const Configuration &A) {
  std::vector<IndexSet> out;
  for (const auto &F : A.faces())
    out.push_back(F.indices);
  return out;
}

void check_facet_axioms(const Configuration &A) {
  for (const auto &f : A.facets()) {
    CHECK(f.face.codim == 1);
    for (std::size_t j = 0; j < A.N(); ++j) {
      Rat v = dot(A.column(j), f.l);
      CHECK(v.get_den() == 1);
      CHECK(v >= 0);
      bool in_face = std::find(f.face.indices.begin(), f.face.indices.end(), j) != f.face.indices.end();
      CHECK((v == 0) == in_face);
    }
    Int g = 0;
    for (std::size_t k = 0; k < A.rank(); ++k)
      g = gcd(g, Int(dot(A.lattice_basis().column(k), f.l).get_num()));
    CHECK(g == 1);
  }
}

} // namespace

TEST_CASE("facets of small configurations") {
  Configuration a23(rows({{2, 3}}));
  REQUIRE(a23.facets().size() == 1);
  CHECK(a23.facets()[0].face.indices.empty());
  CHECK(a23.facets()[0].l[0] == 1);

  Configuration e46(rows({{1, 0, 1}, {0, 2, 1}}));
  REQUIRE(e46.facets().size() == 2);
  CHECK(e46.facets()[0].face.indices == IndexSet{0});
  CHECK(e46.facets()[0].l == test::rv({"0", "1"}));
  CHECK(e46.facets()[1].face.indices == IndexSet{1});
  CHECK(e46.facets()[1].l == test::rv({"1", "0"}));

  Configuration e54(rows({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, -1}}));
  std::vector<IndexSet> fs;
  for (const auto &f : e54.facets())
    fs.push_back(f.face.indices);
  CHECK(fs == std::vector<IndexSet>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  for (const auto *A : {&a23, &e46, &e54})
    check_facet_axioms(*A);
}

TEST_CASE("face lattices") {
  Configuration e46(rows({{1, 0, 1}, {0, 2, 1}}));
  CHECK(face_sets(e46) == std::vector<IndexSet>{{0, 1, 2}, {0}, {1}, {}});
  CHECK(e46.faces()[3].codim == 2);
  Configuration i2(IntMatrix::identity(2));
  CHECK(face_sets(i2) == std::vector<IndexSet>{{0, 1}, {0}, {1}, {}});
  Configuration a23(rows({{2, 3}}));
  CHECK(face_sets(a23) == std::vector<IndexSet>{{0, 1}, {}});
  Configuration i4(IntMatrix::identity(4));
  CHECK(i4.faces().size() == 16);
  for (const auto &F : i4.faces())
    CHECK(F.codim == 4 - F.indices.size());
}

TEST_CASE("witness functionals cut out their faces") {
  Configuration e54(rows({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, -1}}));
  for (const auto &F : e54.faces())
    for (std::size_t j = 0; j < e54.N(); ++j) {
      Int v = dot(F.witness, e54.column(j));
      CHECK(v >= 0);
      bool in_face = std::find(F.indices.begin(), F.indices.end(), j) != F.indices.end();
      CHECK((v == 0) == in_face);
    }
}

TEST_CASE("minimal faces") {
  CHECK(Configuration(rows({{1, 0, 1}, {0, 2, 1}})).minimal_face().indices.empty());
  Configuration line(rows({{1, -1}}));
  CHECK(line.facets().empty());
  CHECK(line.minimal_face().indices == IndexSet{0, 1});
  CHECK(Configuration(IntMatrix::identity(3)).minimal_face().indices.empty());
  // half-plane: the line is the minimal face
  Configuration half(rows({{1, -1, 0}, {0, 0, 1}}));
  CHECK(half.minimal_face().indices == IndexSet{0, 1});
  CHECK(half.minimal_face().codim == 1);
}

TEST_CASE("simplicial families") {
  Configuration e46(rows({{1, 0, 1}, {0, 2, 1}}));
  CHECK(is_simplicial_family(e46, {e46.facets()[0].face, e46.facets()[1].face}));
  Configuration e54(rows({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, -1}}));
  std::vector<Face> all;
  for (const auto &f : e54.facets())
    all.push_back(f.face);
  CHECK_FALSE(is_simplicial_family(e54, all));
  CHECK(is_simplicial_family(e54, {all[0]}));
  CHECK(is_simplicial_family(e54, {all[0], all[1]}));
  CHECK_THROWS_AS(is_simplicial_family(e54, {e54.full_face()}), InvalidInput);
}

TEST_CASE("normality and saturation") {
  Configuration a23(rows({{2, 3}}));
  auto n1 = is_normal(a23);
  CHECK_FALSE(n1.normal);
  CHECK(*n1.hole == iv({1}));
  CHECK(saturation_hilbert_basis(a23) == std::vector<IntVec>{iv({1})});

  Configuration e46(rows({{1, 0, 1}, {0, 2, 1}}));
  auto n2 = is_normal(e46);
  CHECK_FALSE(n2.normal);
  CHECK(*n2.hole == iv({0, 1}));
  CHECK(saturation_hilbert_basis(e46) == std::vector<IntVec>{iv({0, 1}), iv({1, 0})});
  Configuration hat = augment(e46);
  CHECK(hat.matrix() == rows({{1, 0, 1, 0}, {0, 2, 1, 1}}));
  CHECK(is_normal(hat).normal);

  Configuration i2(IntMatrix::identity(2));
  CHECK(is_normal(i2).normal);
  CHECK(saturation_hilbert_basis(i2) == std::vector<IntVec>{iv({0, 1}), iv({1, 0})});

  Configuration e54(rows({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, -1}}));
  CHECK(is_normal(e54).normal);

  // non-pointed cone: the lattice part is carried with both signs
  Configuration half(rows({{2, -2, 0}, {0, 0, 1}}));
  auto hb = saturation_hilbert_basis(half);
  CHECK(hb == std::vector<IntVec>{iv({-2, 0}), iv({0, 1}), iv({2, 0})});
  CHECK(is_normal(half).normal);
  Configuration half2(rows({{1, -1, 0, 1}, {0, 0, 2, 3}}));
  auto n3 = is_normal(half2);
  CHECK_FALSE(n3.normal);
  CHECK(*n3.hole == iv({0, 1}));
}

TEST_CASE("random configurations: augmentation is normal and keeps the face lattice") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> e(-3, 3), dim(1, 3), cols(1, 5);
  int tested = 0;
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t n = dim(rng), N = cols(rng);
    IntMatrix M(n, N);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < N; ++j)
        M(i, j) = e(rng);
    Configuration A(M);
    if (A.rank() == 0)
      continue;
    check_facet_axioms(A);
    // closed under intersection
    auto fs = face_sets(A);
    for (const auto &X : fs)
      for (const auto &Y : fs) {
        IndexSet Z;
        std::set_intersection(X.begin(), X.end(), Y.begin(), Y.end(), std::back_inserter(Z));
        CHECK(A.face_index(Z).has_value());
      }
    Configuration hat = augment(A);
    CHECK(is_normal(hat).normal);
    REQUIRE(hat.faces().size() == A.faces().size());
    std::set<IndexSet> images;
    for (const auto &F : hat.faces()) {
      IndexSet X;
      for (std::size_t j : F.indices)
        if (j < A.N())
          X.push_back(j);
      CHECK(A.face_index(X).has_value());
      images.insert(X);
    }
    CHECK(images.size() == A.faces().size());
    ++tested;
  }
  CHECK(tested > 50);
}

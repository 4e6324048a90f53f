#include "doctest.h"
#include "helpers.hpp"

#include "gkz/resonance.hpp"

#include <random>

using namespace gkz;
using test::rows;
using test::rv;

namespace {

const ResonanceEngine &E23() {
  static ResonanceEngine e(Configuration(rows({{2, 3}})));
  return e;
}
const ResonanceEngine &E382() {
  static ResonanceEngine e(Configuration(rows({{1, 1, 0}, {0, 1, 2}})));
  return e;
}

RatVec pt(long x) { return {Rat(x)}; }
RatVec pt(const Rat &x, const Rat &y) { return {x, y}; }

bool is_int(const Rat &x) { return x.get_den() == 1; }

Rat q(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

} // namespace

TEST_CASE("nonresonance flags") {
  auto p = classify(Configuration(rows({{1, 0, 1}, {0, 2, 1}})), rv({"0", "0"}));
  CHECK(p.weak);
  CHECK(p.semi);
  CHECK_FALSE(p.nonresonant);
  CHECK(p.resonant_facets.size() == 2);

  CHECK(E23().classify(rv({"1/2"})).nonresonant);
  auto q = E23().classify(rv({"-3"}));
  CHECK_FALSE(q.semi);
  CHECK_FALSE(q.weak);

  Configuration e54(rows({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, -1}}));
  auto r = classify(e54, rv({"0", "0", "0"}));
  CHECK(r.weak);
  CHECK(r.semi);
  CHECK(r.resonant_facets == std::vector<std::size_t>{0, 1, 2, 3});

  CHECK_THROWS_AS(classify(Configuration(rows({{1, 0}, {0, 0}})), rv({"0", "1"})), InvalidInput);
  CHECK_THROWS_AS(E23().classify(rv({"1", "2"})), InvalidInput);
}

TEST_CASE("res membership") {
  CHECK(E23().in_res(pt(7)));
  CHECK_FALSE(E23().in_res(rv({"1/2"})));
  CHECK(E382().in_res(rv({"1/3", "5"})));
  CHECK_FALSE(E382().in_res(rv({"1/3", "1/2"})));
}

TEST_CASE("the one-dimensional figure") {
  for (long x = -6; x <= 6; ++x) {
    bool sres = (x <= -1) || x == 1;
    bool dres = x >= 2;
    CHECK_MESSAGE(E23().in_sres(pt(x)).is_true() == sres, "x=" << x);
    CHECK_MESSAGE(E23().in_dres(pt(x)).is_true() == dres, "x=" << x);
    CHECK(E23().in_dres(pt(x)).definite());
    CHECK(E23().in_SRes(pt(x)) == (x <= -1));
    CHECK(E23().in_DRes(pt(x)) == (x >= 1));
  }
  // 1 is in sres but not in SRes: the interior shift needed is m=1, landing on 6
  auto v = E23().in_sres(pt(1));
  CHECK(v.witness.find("m=1") != std::string::npos);
  CHECK(v.witness.find("b=(6)") != std::string::npos);
  CHECK_FALSE(E23().in_SRes(pt(1)));
  CHECK_FALSE(E23().in_sres(rv({"1/2"})).is_true());
  CHECK_FALSE(E23().in_wres(rv({"1/2"})).is_true());
  CHECK(E23().in_wres(pt(1)).is_true());
}

TEST_CASE("bounded dres scans") {
  // 8 is reached by 2-, 3- and 4-fold sums of deg(I_0) = {2,3,...}; only k=5 misses
  auto full = E23().in_dres(pt(8));
  CHECK(full.is_true());
  CHECK(full.witness.find("k=5") != std::string::npos);
  DresBounds small;
  small.K_max = 4;
  auto cut = E23().in_dres(pt(8), small);
  CHECK(cut.value == Truth::FalseUpToBounds);
  CHECK(cut.bounds.at("K_max") == "4");
  CHECK(E23().in_wres(pt(8), small).value == Truth::FalseUpToBounds);
  // -2 has no candidate class at all, so the negative is definite
  CHECK(E23().in_dres(pt(-2), small).value == Truth::False);
  DresBounds bad;
  bad.K_max = 1;
  CHECK_THROWS_AS(E23().in_dres(pt(2), bad), InvalidInput);
  CHECK(E23().default_K_max(pt(8)) == 10);
}

TEST_CASE("the two-dimensional figure") {
  // facet values are x (facet {a3}) and y (facet {a1})
  for (int a = -6; a <= 6; ++a)
    for (int b = -6; b <= 6; ++b) {
      Rat x = q(a, 2), y = q(b, 2);
      bool sres = (is_int(x) && x <= 0) || (is_int(y) && y < 0);
      bool dres = (is_int(x) && x > 0) || (is_int(y) && y > 0);
      auto g = pt(x, y);
      CHECK_MESSAGE(E382().in_sres(g).is_true() == sres, "x=" << x.get_str() << " y=" << y.get_str());
      auto d = E382().in_dres(g);
      CHECK(d.definite());
      CHECK_MESSAGE(d.is_true() == dres, "x=" << x.get_str() << " y=" << y.get_str());
    }
  CHECK(E382().in_sres(rv({"0", "7/3"})).is_true());
  CHECK_FALSE(E382().in_sres(rv({"1/2", "1/2"})).is_true());
  CHECK(E382().in_dres(rv({"3", "1/2"})).is_true());
  CHECK_FALSE(E382().in_SRes(rv({"0", "1/2"})));
  CHECK_FALSE(E382().in_DRes(rv({"0", "1/2"})));
}

TEST_CASE("region scans") {
  auto g = E23().region_scan(RegionSet::Sres, {{Rat(-6), Rat(6)}}, Rat(1));
  REQUIRE(g.cells.size() == 13);
  std::vector<long> hits;
  for (const auto &c : g.cells)
    if (c.verdict->is_true())
      hits.push_back(c.point[0].get_num().get_si());
  CHECK(hits == std::vector<long>{-6, -5, -4, -3, -2, -1, 1});

  auto d = E23().region_scan(RegionSet::DRes, {{Rat(-6), Rat(6)}}, Rat(1));
  hits.clear();
  for (const auto &c : d.cells)
    if (c.verdict->is_true())
      hits.push_back(c.point[0].get_num().get_si());
  CHECK(hits == std::vector<long>{1, 2, 3, 4, 5, 6});

  CHECK(E23().region_scan(RegionSet::Res, {{Rat(1), Rat(0)}}, Rat(1)).cells.empty());
  auto h = E382().region_scan(RegionSet::Wres, {{Rat(-1), Rat(1)}, {Rat(0), Rat(1)}}, Rat(1, 2));
  CHECK(h.shape == std::vector<std::size_t>{5, 3});
  CHECK(h.cells.size() == 15);
  CHECK(h.cells[1].point == pt(Rat(-1), Rat(1, 2)));

  // points outside QA are reported as such
  ResonanceEngine flat(Configuration(rows({{1, 2}, {0, 0}})));
  auto f = flat.region_scan(RegionSet::Res, {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}}, Rat(1));
  REQUIRE(f.cells.size() == 4);
  CHECK(f.cells[0].verdict.has_value());
  CHECK_FALSE(f.cells[1].verdict.has_value());
  CHECK_THROWS_AS(E23().region_scan(RegionSet::Res, {{Rat(0), Rat(1)}}, Rat(0)), InvalidInput);
  CHECK_THROWS_AS(parse_region_set("bogus"), InvalidInput);
  CHECK(parse_region_set("SRes") == RegionSet::SRes);
  CHECK(parse_region_set("sres") == RegionSet::Sres);
}

TEST_CASE("containment chain and facet-value implications on random inputs") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> e(-2, 3), dim(1, 3), cols(1, 4), num(-6, 6), den(1, 2);
  int normal_seen = 0, checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = dim(rng), N = cols(rng);
    IntMatrix M(n, N);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < N; ++j)
        M(i, j) = e(rng);
    Configuration A(M);
    if (A.rank() == 0)
      continue;
    ResonanceEngine R(A);
    if (R.normal())
      ++normal_seen;
    for (int s = 0; s < 6; ++s) {
      RatVec c(A.rank());
      for (auto &x : c)
        x = q(num(rng), den(rng));
      RatVec g = A.ambient(c);
      auto p = R.classify(g);
      Verdict sres = R.in_sres(g);
      DresBounds direct;
      direct.normal_shortcut = false;
      Verdict dres = R.in_dres(g, direct);
      Verdict wres = verdict_or(sres, dres);
      bool res = R.in_res(g);
      CHECK(dres.definite());
      if (sres.is_true())
        CHECK(wres.is_true());
      if (wres.is_true())
        CHECK(res);
      if (!sres.is_true())
        CHECK(p.semi);
      if (dres.is_true())
        CHECK(R.in_DRes(g));
      if (R.normal()) {
        CHECK(sres.is_true() == R.in_SRes(g));
        CHECK(dres.is_true() == R.in_DRes(g));
        CHECK(R.in_dres(g).is_true() == dres.is_true());
        CHECK(wres.is_true() == !p.weak);
      }
      ++checked;
    }
  }
  CHECK(normal_seen > 3);
  CHECK(checked > 100);
}

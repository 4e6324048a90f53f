// Randomized cross-checks between the oracle and the main path, plus the
// structural invariants of faces and resonance sets.
#include "gkz/factors.hpp"
#include "gkz/oracle.hpp"

#include <random>
#include <set>
#include <sstream>

namespace gkz::oracle {

namespace {

std::string show(const IntMatrix &A) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < A.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < A.cols(); ++j)
      os << (j ? "," : "") << A(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string show(const RatVec &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

std::string show(const IntVec &v) { return show(to_rat(v)); }

class Suite {
public:
  explicit Suite(const OracleConfig &cfg) : cfg_(cfg) {
    for (const char *name : {"membership", "faces", "facet_axioms", "one_sided_implications", "normal_equivalences",
                             "interior_shift_witness", "resonance_chain", "region_agreement", "pullback_counts"})
      report_.properties.push_back({name, 0, {}});
  }

  PropertyResult &prop(const std::string &name) {
    for (auto &p : report_.properties)
      if (p.name == name)
        return p;
    throw std::logic_error("unknown property " + name);
  }

  void fail(const std::string &name, std::uint32_t seed, const IntMatrix &A, const std::string &what) {
    prop(name).failures.push_back("seed=" + std::to_string(seed) + " A=" + show(A) + ": " + what);
  }

  IntMatrix random_matrix(std::mt19937 &rng, bool nonnegative, long entry) const {
    std::uniform_int_distribution<std::size_t> dn(1, cfg_.max_n), dN(1, cfg_.max_N);
    std::uniform_int_distribution<long> de(nonnegative ? 0 : -entry, entry);
    std::size_t n = dn(rng), N = dN(rng);
    IntMatrix M(n, N);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < N; ++j)
        M(i, j) = de(rng);
    return M;
  }

  RatVec random_parameter(std::mt19937 &rng, const Configuration &A) const {
    std::uniform_int_distribution<long> num(-6, 6), den(1, 3), kind(0, 2);
    RatVec c(A.rank());
    bool integral = kind(rng) == 0;
    for (auto &x : c) {
      x = Rat(num(rng), integral ? 1 : den(rng));
      x.canonicalize();
    }
    return A.ambient(c);
  }

  void membership(std::uint32_t seed) {
    std::mt19937 rng(seed);
    IntMatrix M = random_matrix(rng, rng() % 2 == 0, cfg_.max_entry);
    std::size_t n = M.rows();
    std::uniform_int_distribution<long> small(-2, 2), coef(0, 3), box(-8, 8);
    MembershipQuery q;
    q.shift.resize(n);
    for (auto &x : q.shift)
      x = small(rng);
    Mat gens, lat;
    for (std::size_t j = 0; j < M.cols(); ++j) {
      IntVec c = M.column(j);
      if (is_zero(c))
        continue;
      if (rng() % 4 == 0) {
        q.lattice.push_back(c);
        lat.push_back(to_vec(c));
      } else {
        q.generators.push_back(c);
        gens.push_back(to_vec(c));
      }
    }
    auto w = bf_positive_functional(gens, lat, n, 6);
    if (!w)
      return;
    long wmin = 0;
    for (const auto &g : gens)
      wmin = wmin == 0 ? dot_(*w, g) : std::min(wmin, dot_(*w, g));
    for (int t = 0; t < 12; ++t) {
      IntVec target(n);
      if (rng() % 2 == 0) {
        target = q.shift;
        for (const auto &g : q.generators)
          target = add(target, scale(g, Int(coef(rng))));
        for (const auto &l : q.lattice)
          target = add(target, scale(l, Int(small(rng))));
        if (rng() % 3 == 0)
          target[rng() % n] += small(rng);
      } else {
        for (auto &x : target)
          x = box(rng);
      }
      long h = dot_(*w, to_vec(sub(target, q.shift)));
      // every representation then has coefficients at most h / wmin
      if (wmin > 0 && h > cfg_.R * wmin)
        continue;
      bool main = false;
      try {
        main = member(q, target);
      } catch (const LimitExceeded &) {
        report_.notes.push_back("membership: budget exceeded at seed " + std::to_string(seed));
        continue;
      }
      bool bf = bf_member(q, target, cfg_.R);
      ++prop("membership").checked;
      if (main != bf)
        fail("membership", seed, M,
             "target " + show(target) + " shift " + show(q.shift) + " main=" + (main ? "1" : "0") + " oracle=" +
                 (bf ? "1" : "0"));
    }
  }

  void structure(std::uint32_t seed, const IntMatrix &M, std::mt19937 &rng) {
    Configuration A(M);
    if (A.rank() == 0) {
      report_.notes.push_back("degenerate configuration " + show(M) + " (rank 0) skipped, seed " +
                              std::to_string(seed));
      return;
    }
    BfFaces bf = bf_faces(M);
    std::vector<IndexSet> main_faces;
    for (const auto &f : A.faces())
      main_faces.push_back(f.indices);
    std::sort(main_faces.begin(), main_faces.end());
    ++prop("faces").checked;
    if (main_faces != bf.faces)
      fail("faces", seed, M,
           "main has " + std::to_string(main_faces.size()) + " faces, oracle " + std::to_string(bf.faces.size()));

    const auto &cols = A.column_coords();
    for (std::size_t k = 0; k < A.facets().size(); ++k) {
      ++prop("facet_axioms").checked;
      const auto &f = A.facets()[k];
      Int g = 0;
      for (std::size_t j = 0; j < A.N(); ++j) {
        Rat v = A.facet_value(k, to_rat(cols[j]));
        bool on = std::binary_search(f.face.indices.begin(), f.face.indices.end(), j);
        if (v.get_den() != 1 || v < 0 || (v == 0) != on)
          fail("facet_axioms", seed, M, "facet " + show(to_rat(IntVec(f.face.indices.begin(), f.face.indices.end()))) +
                                            " has value " + to_string(v) + " on column " + std::to_string(j));
        g = gcd(g, v.get_num());
      }
      if (g != 1)
        fail("facet_axioms", seed, M, "facet functional is not primitive on ZA");
      auto it = std::find_if(bf.facets.begin(), bf.facets.end(),
                             [&](const BfFacet &b) { return b.columns == f.face.indices; });
      if (it == bf.facets.end()) {
        fail("facet_axioms", seed, M, "facet missing from oracle");
        continue;
      }
      RatVec gamma = random_parameter(rng, A);
      if (A.facet_value(k, *A.coords(gamma)) != it->value(gamma))
        fail("facet_axioms", seed, M, "facet value differs from oracle at " + show(gamma));
    }

    ResonanceEngine E(A);
    for (int t = 0; t < 6; ++t) {
      RatVec gamma = random_parameter(rng, A);
      try {
        auto p = E.classify(gamma);
        Verdict s = E.in_sres(gamma), d = E.in_dres(gamma), w = E.in_wres(gamma);
        bool res = E.in_res(gamma);
        prop("one_sided_implications").checked += 3;
        std::string at = " at " + show(gamma);
        if (!s.is_true() && !p.semi)
          fail("one_sided_implications", seed, M, "outside sres but not semi-nonresonant" + at);
        if (d.is_true() && !E.in_DRes(gamma))
          fail("one_sided_implications", seed, M, "in dres but no facet value in Z>0" + at);
        if (res == p.nonresonant)
          fail("one_sided_implications", seed, M, "res disagrees with facet integrality" + at);
        ++prop("resonance_chain").checked;
        if ((s.is_true() && !w.is_true()) || (w.is_true() && !res) || w.is_true() != (s.is_true() || d.is_true()))
          fail("resonance_chain", seed, M, "chain broken" + at);
      } catch (const LimitExceeded &) {
        report_.notes.push_back("implications: budget exceeded at seed " + std::to_string(seed));
      }
    }
  }

  void normal(std::uint32_t seed, const IntMatrix &M, std::mt19937 &rng) {
    Configuration A0(M);
    if (A0.rank() == 0)
      return;
    Configuration A = augment(A0);
    if (A.N() > 8)
      return;
    ResonanceEngine E(A);
    if (!E.normal()) {
      fail("normal_equivalences", seed, M, "augmented configuration is not normal");
      return;
    }
    DresBounds full;
    full.normal_shortcut = false;
    for (int t = 0; t < 5; ++t) {
      RatVec gamma = random_parameter(rng, A);
      try {
        auto p = E.classify(gamma);
        bool s = E.in_sres(gamma).is_true(), d = E.in_dres(gamma, full).is_true();
        prop("normal_equivalences").checked += 3;
        std::string at = " at " + show(gamma) + " (augmented " + show(A.matrix()) + ")";
        if (s != !p.semi)
          fail("normal_equivalences", seed, M, "sres differs from semi-resonance" + at);
        if (d != E.in_DRes(gamma))
          fail("normal_equivalences", seed, M, "dres differs from facet values in Z>0" + at);
        if ((s || d) != !p.weak)
          fail("normal_equivalences", seed, M, "wres differs from weak resonance" + at);
      } catch (const LimitExceeded &) {
        report_.notes.push_back("normal equivalences: budget exceeded at seed " + std::to_string(seed));
      }
    }

    BfFaces bf = bf_faces(A.matrix());
    IntVec aA(A.n(), 0);
    for (std::size_t j = 0; j < A.N(); ++j)
      aA = add(aA, A.column(j));
    // every good class b + NF1 inside deg(R/t^{a_A}R) must have a facet through F1 negative at b - a_A
    const Calculus &calc = E.calculus();
    DegreeFamily D{DegreeFamily::QuotientByInterior, 0, 2};
    std::size_t budget_left = 150;
    try {
      for (std::size_t f = 0; f < A.faces().size() && budget_left > 0; ++f) {
        const PreparedMembership &pm = calc.semigroup_mod(f);
        Int bound = 2 * pm.height(pm.project(A.sum_coords())) + 2;
        const IndexSet &F1 = A.faces()[f].indices;
        std::size_t scanned = 0;
        for (const auto &y : pm.reachable(bound)) {
          if (budget_left == 0 || ++scanned > 300)
            break;
          IntVec z = pm.lift(y);
          if (!calc.good_class(D, f, z))
            continue;
          --budget_left;
          ++prop("interior_shift_witness").checked;
          IntVec b = A.ambient(z);
          RatVec diff = to_rat(sub(b, aA));
          bool found = false;
          for (const auto &fc : bf.facets)
            if (std::includes(fc.columns.begin(), fc.columns.end(), F1.begin(), F1.end()) && fc.value(diff) < 0)
              found = true;
          if (!found)
            fail("interior_shift_witness", seed, M, "class at " + show(b) + " has no facet with negative value");
        }
      }
    } catch (const LimitExceeded &) {
      report_.notes.push_back("interior shift classes: budget exceeded at seed " + std::to_string(seed));
    }
  }

  void regions(std::uint32_t seed, const IntMatrix &M) {
    Configuration A(M);
    if (A.rank() == 0 || A.n() > 2)
      return;
    std::vector<IntVec> nz;
    for (std::size_t j = 0; j < A.N(); ++j)
      if (!is_zero(A.column(j)))
        nz.push_back(A.column(j));
    if (!positive_functional(nz, A.n()))
      return; // oracle regions need a pointed cone
    ResonanceEngine E(A);
    std::vector<std::pair<Rat, Rat>> box(A.n(), {Rat(-3), Rat(3)});
    Rat step = A.n() == 1 ? Rat(1, 2) : Rat(1);
    for (const char *set : {"res", "sres", "dres", "SRes", "DRes"}) {
      std::vector<std::optional<bool>> bf;
      RegionGrid g;
      try {
        bf = bf_region(M, set, box, step);
        g = E.region_scan(parse_region_set(set), box, step);
      } catch (const LimitExceeded &) {
        report_.notes.push_back(std::string("regions: budget exceeded for ") + set + " at seed " + std::to_string(seed));
        continue;
      }
      for (std::size_t k = 0; k < bf.size(); ++k) {
        ++prop("region_agreement").checked;
        bool main_in = g.cells[k].verdict.has_value();
        if (main_in != bf[k].has_value()) {
          fail("region_agreement", seed, M, std::string(set) + " span test differs at " + show(g.cells[k].point));
          continue;
        }
        if (main_in && g.cells[k].verdict->is_true() != *bf[k])
          fail("region_agreement", seed, M,
               std::string(set) + " differs at " + show(g.cells[k].point) + " main=" +
                   to_string(g.cells[k].verdict->value) + " oracle=" + (*bf[k] ? "true" : "false"));
      }
    }
    // chain on the grid, from the main path
    auto s = E.region_scan(RegionSet::Sres, box, step), w = E.region_scan(RegionSet::Wres, box, step),
         r = E.region_scan(RegionSet::Res, box, step);
    for (std::size_t k = 0; k < s.cells.size(); ++k) {
      if (!s.cells[k].verdict)
        continue;
      ++prop("resonance_chain").checked;
      if ((s.cells[k].verdict->is_true() && !w.cells[k].verdict->is_true()) ||
          (w.cells[k].verdict->is_true() && !r.cells[k].verdict->is_true()))
        fail("resonance_chain", seed, M, "grid chain broken at " + show(s.cells[k].point));
    }
  }

  void pullbacks(std::uint32_t seed) {
    std::mt19937 rng(seed);
    // larger entries so that torsion of ZA/ZF reaches past 2
    IntMatrix M = random_matrix(rng, rng() % 2 == 0, 6);
    Configuration A(M);
    if (A.rank() == 0)
      return;
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    RatVec c(A.rank());
    for (auto &x : c) {
      x = Rat(num(rng), den(rng));
      x.canonicalize();
    }
    RatVec gamma = A.ambient(c);
    auto cls = class_of(A, A.full_face(), gamma);
    if (!cls.order || *cls.order > 12)
      return;
    for (const auto &F : A.faces()) {
      if (quotient(A.rank(), A.coords_of(F.indices)).torsion_order() > 12)
        continue;
      long main = static_cast<long>(pullback_solutions(A, F, cls).size());
      long bf = bf_pullback_count(M, F.indices, gamma, 12);
      ++prop("pullback_counts").checked;
      if (main != bf)
        fail("pullback_counts", seed, M,
             "face " + show(to_rat(IntVec(F.indices.begin(), F.indices.end()))) + " class " + show(gamma) +
                 ": main " + std::to_string(main) + " oracle " + std::to_string(bf));
    }
  }

  PropertyReport take() { return std::move(report_); }

private:
  static long dot_(const Vec &a, const Vec &b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      s += a[i] * b[i];
    return s;
  }

  OracleConfig cfg_;
  PropertyReport report_;
};

} // namespace

PropertyReport property_suite(const OracleConfig &cfg) {
  if (cfg.R <= 0 || cfg.C <= 0 || cfg.max_n == 0 || cfg.max_N == 0 || cfg.max_entry <= 0)
    throw InvalidInput("oracle bounds must be positive");
  Suite s(cfg);
  std::size_t q = 0;
  for (std::uint32_t k = 0; s.prop("membership").checked < cfg.membership_queries; ++k) {
    if (++q > 40 * cfg.membership_queries)
      throw std::logic_error("membership generator stalled");
    s.membership(cfg.seed + 100000 + k);
  }
  for (std::uint32_t k = 0; k < cfg.instances; ++k) {
    std::uint32_t seed = cfg.seed + k;
    std::mt19937 rng(seed);
    IntMatrix M = s.random_matrix(rng, k % 2 == 0, cfg.max_entry);
    s.structure(seed, M, rng);
    s.normal(seed, M, rng);
    s.regions(seed, M);
    s.pullbacks(cfg.seed + 200000 + k);
  }
  return s.take();
}

PropertyReport property_suite_on(const IntMatrix &A, const OracleConfig &cfg) {
  Suite s(cfg);
  std::mt19937 rng(cfg.seed);
  s.structure(cfg.seed, A, rng);
  if (Configuration(A).rank() > 0) {
    s.normal(cfg.seed, A, rng);
    s.regions(cfg.seed, A);
  }
  return s.take();
}

} // namespace gkz::oracle

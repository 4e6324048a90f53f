#include "gkz/factors.hpp"

#include <algorithm>
#include <stdexcept>

namespace gkz {

namespace {

bool subset_of(const IndexSet &a, const IndexSet &b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool in_span(const Configuration &A, const IndexSet &F, const RatVec &v) {
  if (F.empty()) {
    for (const auto &x : v)
      if (x != 0)
        return false;
    return true;
  }
  return rational_solve(A.matrix().select_columns(F), v).has_value();
}

RatVec canonical_copy(RatVec v) {
  for (auto &x : v)
    x.canonicalize();
  return v;
}

// Works for any set of columns, not only faces.
LocalSystemClass reduce(const Configuration &A, const IndexSet &cols, const RatVec &raw) {
  if (raw.size() != A.n())
    throw InvalidInput("vector has " + std::to_string(raw.size()) + " entries, expected " + std::to_string(A.n()));
  RatVec v = canonical_copy(raw);
  LocalSystemClass c;
  c.face = cols;
  c.representative = v;
  IntMatrix Fm = A.matrix().select_columns(cols);
  c.canonical = reduce_modulo(Fm, v);
  if (!in_span(A, cols, v))
    return c;
  if (cols.empty()) {
    c.order = 1;
    return c;
  }
  auto coeffs = rational_solve(lattice_basis(Fm), c.canonical);
  c.order = coeffs ? lcm_of_denominators(*coeffs) : Int(1);
  return c;
}

std::string set_string(const IndexSet &s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

Int binomial(std::size_t n, std::size_t k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

void check_columns(const Configuration &A, const IndexSet &cols) {
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (cols[k] >= A.N() || (k > 0 && cols[k] <= cols[k - 1]))
      throw InvalidInput("column indices must be increasing and in range");
}

} // namespace

std::string to_string(Certification c) {
  switch (c) {
  case Certification::EpimorphismOnly:
    return "epimorphism-only";
  case Certification::Isomorphism:
    return "isomorphism";
  case Certification::SemisimpleCertified:
    return "semisimple-certified";
  }
  return "epimorphism-only";
}

LocalSystemClass class_of(const Configuration &A, const Face &F, const RatVec &gamma) {
  if (!A.face_index(F.indices))
    throw InvalidInput("not a face of the configuration");
  LocalSystemClass c = reduce(A, F.indices, gamma);
  if (!c.order)
    throw InvalidInput("vector is not in the rational span of the face " + set_string(F.indices));
  return c;
}

LocalSystemClass coset_of(const Configuration &A, const Face &F, const RatVec &v) {
  if (!A.face_index(F.indices))
    throw InvalidInput("not a face of the configuration");
  return reduce(A, F.indices, v);
}

std::vector<LocalSystemClass> pullback_solutions(const Configuration &A, const Face &F, const LocalSystemClass &c) {
  if (!A.face_index(F.indices))
    throw InvalidInput("not a face of the configuration");
  return pullback_solutions(A, F.indices, c);
}

std::vector<LocalSystemClass> pullback_solutions(const Configuration &A, const IndexSet &cols,
                                                 const LocalSystemClass &c) {
  check_columns(A, cols);
  if (c.face != A.full_face().indices)
    throw InvalidInput("the class must live on the full configuration");
  auto g = A.coords(canonical_copy(c.representative));
  if (!g)
    throw InvalidInput("class representative is not in the rational span of the columns");
  const std::size_t r = A.rank();
  LatticeQuotient Q = quotient(r, A.coords_of(cols));
  RatVec pg = Q.project(*g);
  const std::size_t t = Q.torsion.size();
  // gamma_F = g + z lies in QF iff the free part of its image vanishes
  IntVec q(t + Q.free_rank, Int(0));
  for (std::size_t i = 0; i < Q.free_rank; ++i) {
    if (pg[t + i].get_den() != 1)
      return {};
    q[t + i] = -pg[t + i].get_num();
  }
  if (Q.torsion_order() > budget())
    throw LimitExceeded("too many solution classes");
  std::vector<LocalSystemClass> out;
  for (;;) {
    IntVec z = Q.section(q);
    RatVec gF = *g;
    for (std::size_t k = 0; k < r; ++k)
      gF[k] += z[k];
    out.push_back(reduce(A, cols, A.ambient(gF)));
    std::size_t i = 0;
    while (i < t && ++q[i] == Q.torsion[i])
      q[i++] = 0;
    if (i == t)
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

FiltrationReport dmod_report(const ResonanceEngine &E, const RatVec &gamma, const DresBounds &b) {
  const Configuration &A = E.config();
  FiltrationReport rep;
  rep.side = FiltrationReport::Side::DModule;
  rep.matrix = A.matrix();
  rep.profile = E.classify(gamma);
  rep.gamma = canonical_copy(gamma);
  rep.ambient_class = class_of(A, A.full_face(), rep.gamma);
  rep.normality = E.normality();

  const auto &faces = A.faces();
  for (std::size_t i = 0; i <= A.rank(); ++i) {
    LevelFactors lv;
    lv.i = i;
    for (const auto &F : faces)
      if (F.codim == i && in_span(A, F.indices, rep.gamma))
        lv.factors.push_back({i, class_of(A, F, rep.gamma), 1});
    std::sort(lv.factors.begin(), lv.factors.end());
    rep.levels.push_back(std::move(lv));
  }

  std::vector<Face> R;
  IndexSet core = A.full_face().indices;
  for (std::size_t k : rep.profile->resonant_facets) {
    const Face &G = A.facets()[k].face;
    R.push_back(G);
    rep.hypothesis_facets.push_back(G.indices);
    IndexSet next;
    std::set_intersection(core.begin(), core.end(), G.indices.begin(), G.indices.end(), std::back_inserter(next));
    core = std::move(next);
  }
  rep.simplicial_hypothesis = is_simplicial_family(A, R);
  rep.normal_and_weak = E.normal() && rep.profile->weak;
  if (rep.simplicial_hypothesis && *rep.normal_and_weak)
    rep.certification = Certification::SemisimpleCertified;
  else if (rep.simplicial_hypothesis)
    rep.certification = Certification::Isomorphism;
  else
    rep.certification = Certification::EpimorphismOnly;

  rep.core_face = core;
  bool contained = true;
  for (const auto &lv : rep.levels)
    for (const auto &f : lv.factors)
      contained = contained && subset_of(core, f.cls.face);
  rep.core_containment = contained;
  if (rep.simplicial_hypothesis && !contained)
    throw std::logic_error("factor face misses the intersection of the resonant facets");

  Verdict sres = E.in_sres(rep.gamma);
  Verdict wres = verdict_or(sres, E.in_dres(rep.gamma, b));
  bool res = E.in_res(rep.gamma);
  auto one_way = [](const Verdict &v) {
    if (v.value == Truth::False)
      return "holds";
    return "undetermined";
  };
  rep.statuses.push_back({"top_level_equals_direct_image", "not_in_sres", sres.value,
                          sres.is_true() ? "fails" : "holds",
                          "the top filtration step is the full direct image of L_A(gamma)"});
  rep.statuses.push_back({"filtration_matches_intermediate_extensions", "not_in_wres", wres.value, one_way(wres),
                          "every W_i equals the corresponding step built from intermediate extensions"});
  rep.statuses.push_back({"lowest_level_irreducible", "not_in_wres", wres.value, one_way(wres),
                          "W_0 is irreducible"});
  Verdict resv = res ? Verdict::yes() : Verdict::no();
  rep.statuses.push_back({"all_levels_minimal_extension", "not_in_res", resv.value, one_way(resv),
                          "every W_i equals the minimal extension of L_A(gamma)"});
  rep.statuses.push_back({"hypergeometric_module_irreducible", "not_in_res", resv.value, one_way(resv),
                          "the hypergeometric module N_A(gamma) is irreducible"});

  rep.bounds["K_max"] = std::to_string(b.K_max ? *b.K_max : E.default_K_max(rep.gamma));
  rep.bounds["K_max_source"] = b.K_max ? "given" : "default";
  if (b.W)
    rep.bounds["W"] = b.W->get_str();
  if (E.normal() && b.normal_shortcut)
    rep.bounds["dres_method"] = "facet values (normal configuration)";
  else
    rep.bounds["dres_method"] = "sumset scan";
  if (rep.certification == Certification::EpimorphismOnly)
    rep.notes.push_back("labels describe the target of the canonical epimorphism; its kernel is not determined");
  if (rep.certification != Certification::SemisimpleCertified)
    rep.notes.push_back("factor at face F is the pushforward of W_0(F, gamma); it is the minimal extension of "
                        "L_F(gamma) only when the configuration is normal and gamma weakly nonresonant");
  return rep;
}

FiltrationReport dmod_report(const Configuration &A, const RatVec &gamma, const DresBounds &b) {
  return dmod_report(ResonanceEngine(A), gamma, b);
}

FiltrationReport perverse_report(const Configuration &A, const LocalSystemClass &c) {
  if (c.face != A.full_face().indices)
    throw InvalidInput("the class must live on the full configuration");
  FiltrationReport rep;
  rep.side = FiltrationReport::Side::Perverse;
  rep.matrix = A.matrix();
  rep.gamma = c.representative;
  rep.ambient_class = c;
  rep.normality = is_normal(A);

  const auto &faces = A.faces();
  std::vector<std::vector<LocalSystemClass>> sols(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    sols[f] = pullback_solutions(A, faces[f], c);
    if (rep.normality.normal && sols[f].size() > 1)
      throw std::logic_error("normal configuration with a torsion face quotient");
  }
  for (std::size_t i = 0; i <= A.rank(); ++i) {
    LevelFactors lv;
    lv.i = i;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].codim == i)
        for (const auto &s : sols[f])
          lv.factors.push_back({i, s, 1});
    std::sort(lv.factors.begin(), lv.factors.end());
    rep.levels.push_back(std::move(lv));
  }

  std::vector<Face> fam;
  for (const auto &G : A.facets()) {
    std::size_t f = *A.face_index(G.face.indices);
    if (!sols[f].empty()) {
      fam.push_back(G.face);
      rep.hypothesis_facets.push_back(G.face.indices);
    }
  }
  rep.simplicial_hypothesis = is_simplicial_family(A, fam);
  rep.certification = rep.simplicial_hypothesis ? Certification::Isomorphism : Certification::EpimorphismOnly;

  // Stalk count at the closed orbit: the level just above the minimal face
  // has rank-one faces whose trivial-class factors contribute one dimension
  // each, against the exterior power coming from the open torus.
  if (c.trivial()) {
    const Face &F0 = A.minimal_face();
    if (F0.codim >= 2) {
      std::size_t i = F0.codim - 1;
      Numerology nm;
      nm.i = i;
      for (const auto &f : rep.levels[i].factors)
        if (f.cls.trivial())
          ++nm.factor_count;
      nm.exterior_dimension = binomial(F0.codim, i);
      nm.exceeds = Int(nm.factor_count) > nm.exterior_dimension;
      rep.numerology.push_back(nm);
      rep.numerology_flags_non_isomorphism = nm.exceeds && !rep.simplicial_hypothesis;
    }
  }
  if (rep.numerology_flags_non_isomorphism)
    rep.notes.push_back("more factors than the exterior power allows at the closed orbit: the epimorphism has a "
                        "nonzero kernel supported there");
  else if (rep.certification == Certification::EpimorphismOnly)
    rep.notes.push_back("labels describe the target of the canonical epimorphism; its kernel is not determined");
  return rep;
}

FiltrationReport perverse_report(const Configuration &A, const RatVec &representative) {
  return perverse_report(A, class_of(A, A.full_face(), representative));
}

RhComparison rh_compare(const Configuration &A, const RatVec &gamma, const DresBounds &b) {
  ResonanceEngine E(A);
  RhComparison cmp;
  cmp.dmod = dmod_report(E, gamma, b);
  cmp.perverse = perverse_report(A, cmp.dmod.ambient_class);
  cmp.asserted = *cmp.dmod.normal_and_weak;
  for (std::size_t i = 0; i < cmp.dmod.levels.size(); ++i) {
    const auto &D = cmp.dmod.levels[i].factors;
    const auto &P = cmp.perverse.levels[i].factors;
    LevelComparison lc;
    lc.i = i;
    std::set_difference(D.begin(), D.end(), P.begin(), P.end(), std::back_inserter(lc.only_dmod));
    std::set_difference(P.begin(), P.end(), D.begin(), D.end(), std::back_inserter(lc.only_perverse));
    lc.match = lc.only_dmod.empty() && lc.only_perverse.empty();
    cmp.all_match = cmp.all_match && lc.match;
    cmp.levels.push_back(std::move(lc));
  }
  if (cmp.asserted && !cmp.all_match)
    throw std::logic_error("factor labels differ for a normal configuration and weakly nonresonant parameter");
  if (!cmp.all_match) {
    if (!cmp.dmod.normality.normal)
      cmp.notes.push_back("configuration is not normal: the perverse side counts every local system pulling back to "
                          "L_A, matching the direct-image filtration of the saturation rather than W_i; see "
                          "gap-factors for the extra classes");
    if (!cmp.dmod.profile->weak)
      cmp.notes.push_back("parameter is not weakly nonresonant: the D-module factors need not be minimal extensions");
  }
  return cmp;
}

std::vector<FactorLabel> gap_factor_candidates(const Configuration &A) {
  std::vector<FactorLabel> out;
  for (const auto &c : qdeg_components({DegreeFamily::Gap}, A)) {
    const Face &F = A.faces()[c.face];
    out.push_back({F.codim, coset_of(A, F, to_rat(c.base)), 1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace gkz

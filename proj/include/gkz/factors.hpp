// Composition-factor labels for the two weight-type filtrations, their
// comparison, and gap-module candidates.
#pragma once

#include "gkz/resonance.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

// A rank one local system on the torus of a face, i.e. a class of QF / ZF.
struct LocalSystemClass {
  IndexSet face;
  RatVec representative;
  RatVec canonical;         // representative reduced modulo ZF
  std::optional<Int> order; // nullopt: the representative is not in QF
  bool trivial() const { return order && *order == 1; }
  bool operator==(const LocalSystemClass &o) const { return face == o.face && canonical == o.canonical; }
  bool operator<(const LocalSystemClass &o) const {
    return face != o.face ? face < o.face : canonical < o.canonical;
  }
};

// Throws InvalidInput unless gamma lies in QF.
LocalSystemClass class_of(const Configuration &A, const Face &F, const RatVec &gamma);
// Same reduction without the QF requirement (used for gap components).
LocalSystemClass coset_of(const Configuration &A, const Face &F, const RatVec &v);

struct FactorLabel {
  std::size_t codim = 0;
  LocalSystemClass cls; // cls.face is the face
  std::size_t multiplicity = 1;
  bool operator==(const FactorLabel &o) const { return codim == o.codim && cls == o.cls; }
  bool operator<(const FactorLabel &o) const { return codim != o.codim ? codim < o.codim : cls < o.cls; }
};

struct LevelFactors {
  std::size_t i = 0;
  std::vector<FactorLabel> factors;
};

// Consequence of a parameter avoiding one of the resonance loci.
struct StatusFlag {
  std::string name;
  std::string condition;  // "not_in_sres" | "not_in_wres" | "not_in_res"
  Truth membership;       // gamma in the locus
  std::string status;     // "holds" | "fails" | "undetermined"
  std::string consequence;
};

struct Numerology {
  std::size_t i = 0;
  std::size_t factor_count = 0; // trivial-class factors at level i
  Int exterior_dimension = 0;   // dim of the i-th exterior power at the minimal orbit
  bool exceeds = false;
};

enum class Certification { EpimorphismOnly, Isomorphism, SemisimpleCertified };
std::string to_string(Certification c);

struct FiltrationReport {
  enum class Side { DModule, Perverse };
  Side side = Side::DModule;
  IntMatrix matrix;
  RatVec gamma;                  // parameter (D-module side) or class representative (perverse side)
  LocalSystemClass ambient_class; // class of gamma on the full configuration
  std::vector<LevelFactors> levels; // i = 0..r_A
  NormalityResult normality;
  std::optional<ResonanceProfile> profile; // D-module side

  // Facets whose intersections are tested for simpliciality: resonant
  // facets (D-module side) or facets carrying solutions (perverse side).
  std::vector<IndexSet> hypothesis_facets;
  bool simplicial_hypothesis = false;
  std::optional<bool> normal_and_weak; // D-module side
  std::vector<StatusFlag> statuses;    // D-module side
  Certification certification = Certification::EpimorphismOnly;

  // Every face F with gamma in QF contains the intersection of the resonant facets.
  std::optional<bool> core_containment; // D-module side
  IndexSet core_face;

  std::vector<Numerology> numerology; // perverse side, trivial class only
  bool numerology_flags_non_isomorphism = false;
  std::map<std::string, std::string> bounds;
  std::vector<std::string> notes;
};

// Classes gamma_F mod ZF with gamma_F in QF and gamma_F = gamma_A mod ZA.
std::vector<LocalSystemClass> pullback_solutions(const Configuration &A, const Face &F, const LocalSystemClass &c);
// Same for an arbitrary set of columns, e.g. a sub-configuration spanning the same cone.
std::vector<LocalSystemClass> pullback_solutions(const Configuration &A, const IndexSet &cols,
                                                 const LocalSystemClass &c);

FiltrationReport dmod_report(const ResonanceEngine &E, const RatVec &gamma, const DresBounds &b = {});
FiltrationReport dmod_report(const Configuration &A, const RatVec &gamma, const DresBounds &b = {});
FiltrationReport perverse_report(const Configuration &A, const LocalSystemClass &c);
FiltrationReport perverse_report(const Configuration &A, const RatVec &representative);

struct LevelComparison {
  std::size_t i = 0;
  std::vector<FactorLabel> only_dmod;
  std::vector<FactorLabel> only_perverse;
  bool match = true;
};

struct RhComparison {
  FiltrationReport dmod;
  FiltrationReport perverse;
  bool asserted = false; // normal and weakly nonresonant
  bool all_match = true;
  std::vector<LevelComparison> levels;
  std::vector<std::string> notes;
};

// Throws std::logic_error if the labels differ while the matching hypothesis holds.
RhComparison rh_compare(const Configuration &A, const RatVec &gamma, const DresBounds &b = {});

// Advisory: labels (F, class of b) for the quasi-degree components of the
// gap between the saturation and NA.
std::vector<FactorLabel> gap_factor_candidates(const Configuration &A);

} // namespace gkz

// Membership in shifted affine semigroups modulo a lattice, and the degree
// set calculus built on it.
#pragma once

#include "gkz/faces.hpp"

#include <map>
#include <string>
#include <vector>

namespace gkz {

// target in shift + N*generators + Z*lattice
struct MembershipQuery {
  IntVec shift;
  std::vector<IntVec> generators;
  std::vector<IntVec> lattice;
};

// A query with its quotient presentation and bounding functional computed
// once, so that many targets can be tested.
class PreparedMembership {
public:
  // Throws InvalidInput when the generators do not span a pointed cone
  // modulo the lattice part.
  explicit PreparedMembership(MembershipQuery q);

  bool contains(const IntVec &target) const;

  // Quotient points reachable from 0 whose height is at most `bound`.
  std::vector<IntVec> reachable(const Int &bound) const;
  IntVec project(const IntVec &v) const { return quot_.project(v); }
  IntVec lift(const IntVec &q) const { return quot_.section(q); }
  Int height(const IntVec &q) const; // on quotient points
  const LatticeQuotient &quotient_map() const { return quot_; }

private:
  MembershipQuery q_;
  LatticeQuotient quot_;
  std::vector<IntVec> steps_; // distinct nonzero generator images
  IntVec h_;                  // on the free part
  IntVec add_state(const IntVec &a, const IntVec &b) const;
};

bool member(const MembershipQuery &q, const IntVec &target);

enum class Truth { True, False, FalseUpToBounds };

struct Verdict {
  Truth value = Truth::False;
  std::map<std::string, std::string> bounds; // settings behind a bounded negative
  std::string witness;                       // human readable, empty if none

  bool is_true() const { return value == Truth::True; }
  bool definite() const { return value != Truth::FalseUpToBounds; }
  static Verdict yes(std::string w = {}) { return {Truth::True, {}, std::move(w)}; }
  static Verdict no() { return {Truth::False, {}, {}}; }
};

Verdict verdict_or(const Verdict &a, const Verdict &b);
std::string to_string(Truth t); // "true" | "false" | "false_up_to_bounds"

// The degree set families whose quasi-degrees are needed.
struct DegreeFamily {
  enum Kind {
    QuotientByInterior, // deg(R_A / t^{a_A} R_A)
    FiltrationIdeal,    // deg(I_i)
    Gap,                // saturation minus NA
    IdealPowerQuotient  // deg(I_i / I_i^k)
  };
  Kind kind = QuotientByInterior;
  std::size_t i = 0;
  std::size_t k = 2;
};

struct QDegComponent {
  IntVec base;     // ambient lattice point b
  std::size_t face = 0; // index into Configuration::faces()
  IntVec quotient_class; // b in ZA/ZF coordinates
};

// Per-face data for a configuration: quotient presentations of ZA/ZF and
// prepared membership in NA + ZF.
class Calculus {
public:
  explicit Calculus(Configuration A);

  const Configuration &config() const { return A_; }

  // Lattice representatives (ZA coordinates) of the ZF-classes that meet
  // gamma + QF; empty when there are none.
  std::vector<IntVec> classes(std::size_t face, const RatVec &gamma_coords) const;
  bool in_semigroup_mod(std::size_t face, const IntVec &z) const; // z in NA + ZF
  bool in_saturation_mod(std::size_t face, const IntVec &z) const;
  // Largest face reached by NA-points of the class z + ZF.
  std::size_t class_hull(std::size_t face, const IntVec &z) const;
  // Sum of the facet functionals through the face.
  Int height(std::size_t face, const IntVec &z) const;

  Verdict good_class_exists(const DegreeFamily &D, std::size_t face, const RatVec &gamma_coords) const;
  bool good_class(const DegreeFamily &D, std::size_t face, const IntVec &z) const;

  // Does the class z + ZF meet the k-fold sumset of deg(I_i)?
  bool sumset_contains(std::size_t face, std::size_t i, std::size_t k, const IntVec &z) const;

  std::vector<QDegComponent> qdeg_components(const DegreeFamily &D,
                                             std::optional<Int> window = std::nullopt) const;
  Int default_window(std::size_t face) const;

  const PreparedMembership &semigroup_mod(std::size_t face) const { return nA_[face]; }

private:
  Configuration A_;
  std::vector<PreparedMembership> nA_;
  std::vector<LatticeQuotient> quot_;
  std::vector<std::vector<std::size_t>> facets_through_;
};

Verdict good_class_exists(const Configuration &A, const DegreeFamily &D, const Face &F, const RatVec &gamma);
std::vector<QDegComponent> qdeg_components(const DegreeFamily &D, const Configuration &A);
// target in deg(I_i^k); exact, so a negative is definite.
Verdict sumset_member_bounded(const Configuration &A, std::size_t i, std::size_t k, const IntVec &target,
                              const Int &window = 0);

} // namespace gkz

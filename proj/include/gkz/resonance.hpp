// Nonresonance flags and the parameter loci res, sres, dres, wres, SRes, DRes.
#pragma once

#include "gkz/semigroup.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gkz {

struct ResonanceProfile {
  std::vector<Rat> facet_values; // l_F(gamma), in facets() order
  bool nonresonant = true;       // no value in Z
  bool weak = true;              // no value in Z \ {0}
  bool semi = true;              // no value in Z_{<0}
  std::vector<std::size_t> resonant_facets; // values in Z
};

struct DresBounds {
  std::optional<std::size_t> K_max; // default: large enough to make the scan exhaustive
  std::optional<Int> W;             // recorded only; the sumset search is exhaustive
  bool normal_shortcut = true;      // facet-value test when A is normal
};

enum class RegionSet { Res, Sres, Dres, Wres, SRes, DRes };
RegionSet parse_region_set(const std::string &name);
std::string to_string(RegionSet s);

struct GridCell {
  RatVec point;
  std::optional<Verdict> verdict; // nullopt: point outside QA
};

struct RegionGrid {
  RegionSet set = RegionSet::Res;
  std::vector<std::pair<Rat, Rat>> box;
  Rat step = 1;
  std::vector<std::size_t> shape; // points per axis
  std::vector<GridCell> cells;    // first axis outermost
};

// Keeps the per-face data of a configuration so that many parameters can be
// classified cheaply.
class ResonanceEngine {
public:
  explicit ResonanceEngine(Configuration A);

  const Configuration &config() const { return calc_.config(); }
  const Calculus &calculus() const { return calc_; }
  bool normal() const { return normal_.normal; }
  const NormalityResult &normality() const { return normal_; }

  RatVec coords_checked(const RatVec &gamma) const; // throws outside QA

  ResonanceProfile classify(const RatVec &gamma) const;
  bool in_res(const RatVec &gamma) const;
  Verdict in_sres(const RatVec &gamma) const;
  Verdict in_dres(const RatVec &gamma, const DresBounds &b = {}) const;
  Verdict in_wres(const RatVec &gamma, const DresBounds &b = {}) const;
  bool in_SRes(const RatVec &gamma) const;
  bool in_DRes(const RatVec &gamma) const;
  Verdict in_set(RegionSet s, const RatVec &gamma, const DresBounds &b = {}) const;

  // The K_max used when none is given.
  std::size_t default_K_max(const RatVec &gamma) const;

  RegionGrid region_scan(RegionSet s, const std::vector<std::pair<Rat, Rat>> &box, const Rat &step,
                         const DresBounds &b = {}) const;

private:
  Calculus calc_;
  NormalityResult normal_;
};

ResonanceProfile classify(const Configuration &A, const RatVec &gamma);
bool in_res(const Configuration &A, const RatVec &gamma);
Verdict in_sres(const Configuration &A, const RatVec &gamma);
Verdict in_dres(const Configuration &A, const RatVec &gamma, const DresBounds &b = {});
Verdict in_wres(const Configuration &A, const RatVec &gamma, const DresBounds &b = {});
bool in_SRes(const Configuration &A, const RatVec &gamma);
bool in_DRes(const Configuration &A, const RatVec &gamma);
RegionGrid region_scan(const Configuration &A, RegionSet s, const std::vector<std::pair<Rat, Rat>> &box,
                       const Rat &step, const DresBounds &b = {});

} // namespace gkz

// Brute-force reference implementations. Nothing here calls the membership,
// face or degree-set code of the main library; arithmetic is plain int64
// plus exact rationals for parameters.
#pragma once

#include "gkz/semigroup.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gkz::oracle {

using Vec = std::vector<long>;
using Mat = std::vector<Vec>; // list of columns

Vec to_vec(const IntVec &v);
Mat columns_of(const IntMatrix &A);

// Integer echelon basis of the lattice spanned by `gens`, by repeated gcd
// steps on rows; used for lattice membership and quotient enumeration.
class SmallLattice {
public:
  SmallLattice(std::size_t dim, const Mat &gens);
  bool contains(const Vec &v) const;
  const Mat &basis() const { return basis_; }
  std::size_t dim() const { return dim_; }

private:
  std::size_t dim_;
  Mat basis_;                      // echelon: basis_[k] has its first nonzero at pivots_[k]
  std::vector<std::size_t> pivots_;
};

// Rank of rational vectors (each scaled to integers by the caller or not).
std::size_t rank_of(const std::vector<RatVec> &vecs);
bool in_rational_span(const std::vector<RatVec> &span, const RatVec &v);

// target - shift - sum c_s s in Z*lattice for some 0 <= c_s <= R.
bool bf_member(const MembershipQuery &q, const IntVec &target, long R);

// A strictly positive integer functional on the generators that vanishes on
// the lattice part, searched in a box; nullopt if none is found.
std::optional<Vec> bf_positive_functional(const Mat &gens, const Mat &lattice, std::size_t dim, long box = 4);

struct BfFacet {
  IndexSet columns;
  Vec h;    // ambient integer normal, >= 0 on A, zero exactly on the facet
  long g;   // gcd of h(a_j); l_F = h / g
  Rat value(const RatVec &gamma) const;
};

struct BfFaces {
  std::vector<IndexSet> faces; // sorted
  std::vector<BfFacet> facets;
  std::size_t rank = 0;
};

// Faces as zero sets of integer functionals h in [-box, box]^n that are
// nonnegative on A, closed under intersection.
BfFaces bf_faces(const IntMatrix &A, long box = 0);

struct RegionBounds {
  long M = 24;     // interior shifts m
  long K = 16;     // sumset orders k
  long C = 48;     // height window, in multiples of the largest generator height
};

// Lattice points of NA with a bounded height, with one representation's
// support per point.
class SemigroupTable {
public:
  // Throws LimitExceeded past max_points.
  SemigroupTable(const IntMatrix &A, long C, std::size_t max_points = 60000);
  bool valid(const Vec &p) const;    // inside the trusted window
  bool contains(const Vec &p) const; // requires valid(p)
  std::optional<unsigned> support(const Vec &p) const;
  const std::vector<Vec> &points() const { return points_; }
  long height(const Vec &p) const;
  long limit() const { return limit_; }

private:
  Vec w_;
  long limit_ = 0;
  std::vector<Vec> points_;
  struct Hash {
    std::size_t operator()(const Vec &v) const;
  };
  std::unordered_map<Vec, unsigned, Hash> support_;
};

// One entry per grid point (first axis outermost); nullopt outside QA.
// Supported sets: res, sres, dres, SRes, DRes. A must be pointed.
std::vector<std::optional<bool>> bf_region(const IntMatrix &A, const std::string &set,
                                           const std::vector<std::pair<Rat, Rat>> &box, const Rat &step,
                                           const RegionBounds &b = {});

// Classes gamma_F in QF / ZF with gamma_F = gamma_A mod ZA, found by
// enumerating sum (e_k / D) beta_k over a basis beta of ZF. Complete when
// the torsion exponent of (ZA cap QF) / ZF is at most order_bound.
// Throws LimitExceeded when the order of gamma_A exceeds order_bound.
long bf_pullback_count(const IntMatrix &A, const IndexSet &F, const RatVec &gammaA, long order_bound);

struct OracleConfig {
  long R = 6;                 // coefficient bound for bf_member
  long C = 24;                // semigroup window
  std::uint32_t seed = 20240611;
  std::size_t max_n = 3;
  std::size_t max_N = 5;
  long max_entry = 3;
  std::size_t instances = 40;
  std::size_t membership_queries = 600;
};

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> failures; // each carries its seed
};

struct PropertyReport {
  std::vector<PropertyResult> properties;
  std::vector<std::string> notes;
  bool ok() const;
};

PropertyReport property_suite(const OracleConfig &cfg);
// Runs the suite on one given matrix (used for fixtures and degenerate input).
PropertyReport property_suite_on(const IntMatrix &A, const OracleConfig &cfg);

} // namespace gkz::oracle

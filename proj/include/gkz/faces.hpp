// Faces of the cone spanned by a configuration, facet functionals,
// saturation and normality.
#pragma once

#include "gkz/lattice.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace gkz {

using IndexSet = std::vector<std::size_t>; // sorted column indices

struct Face {
  IndexSet indices;
  std::size_t rank = 0;  // rank of the columns in the face
  std::size_t codim = 0; // r_A - rank
  IntVec witness;        // ambient integer h with h(A) >= 0 and ker(h) cap A = face
  IntVec witness_coords; // same functional in ZA coordinates
};

struct FacetFunctional {
  Face face;
  IntVec l_coords; // primitive integer form on ZA coordinates
  RatVec l;        // ambient rational form; integral on ZA
};

// Primitive inward normals of the facets of the cone spanned by `gens`,
// which must span Q^d. Sorted by the sets of generators they vanish on.
std::vector<IntVec> cone_facet_normals(const std::vector<IntVec> &gens, std::size_t d);

// An integer functional that is strictly positive on every nonzero generator,
// or nullopt when the cone they span contains a line.
std::optional<IntVec> positive_functional(const std::vector<IntVec> &gens, std::size_t d);

class Configuration {
public:
  explicit Configuration(IntMatrix A);
  static Configuration from_rows(const std::vector<IntVec> &rows);

  const IntMatrix &matrix() const { return A_; }
  std::size_t n() const { return A_.rows(); }
  std::size_t N() const { return A_.cols(); }
  std::size_t rank() const { return r_; }
  IntVec column(std::size_t j) const { return A_.column(j); }

  // Columns of the canonical (HNF) basis of ZA.
  const IntMatrix &lattice_basis() const { return basis_; }
  const std::vector<IntVec> &column_coords() const { return col_coords_; }
  // ZA coordinates of an ambient vector, nullopt outside QA.
  std::optional<RatVec> coords(const RatVec &v) const;
  std::optional<IntVec> coords(const IntVec &v) const; // nullopt outside ZA
  RatVec ambient(const RatVec &c) const { return basis_ * c; }
  IntVec ambient(const IntVec &c) const { return basis_ * c; }
  // a_A, the sum of all columns, in ZA coordinates.
  const IntVec &sum_coords() const { return sum_coords_; }
  std::vector<IntVec> coords_of(const IndexSet &idx) const;

  const std::vector<FacetFunctional> &facets() const { return facets_; }
  // All faces, sorted by codim and then by indices; faces()[0] is A itself.
  const std::vector<Face> &faces() const { return faces_; }
  std::optional<std::size_t> face_index(const IndexSet &idx) const;
  const Face &full_face() const { return faces_.front(); }
  const Face &minimal_face() const { return faces_[minimal_]; }
  std::size_t minimal_face_index() const { return minimal_; }
  // Facets (as indices into facets()) that contain the given face.
  std::vector<std::size_t> facets_containing(const Face &F) const;
  // Smallest face containing the given columns.
  std::size_t face_hull(const IndexSet &idx) const;
  // Smallest face containing a point given in ZA coordinates (must lie in the cone).
  std::size_t face_of_point(const RatVec &c) const;

  Rat facet_value(std::size_t k, const RatVec &c) const { return dot(facets_[k].l_coords, c); }

  // Saturation generators as ZA coordinates, sorted by ambient vector.
  const std::vector<IntVec> &hilbert_basis_coords() const;

private:
  IntMatrix A_;
  std::size_t r_ = 0;
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
  std::vector<IntVec> col_coords_;
  IntVec sum_coords_;
  std::vector<FacetFunctional> facets_;
  std::vector<Face> faces_;
  std::size_t minimal_ = 0;

  struct Memo {
    std::mutex mu;
    std::optional<std::vector<IntVec>> hilbert;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

std::vector<FacetFunctional> facets(const Configuration &A);
std::vector<Face> all_faces(const Configuration &A);
Face minimal_face(const Configuration &A);
bool is_simplicial_family(const Configuration &A, const std::vector<Face> &family);

struct NormalityResult {
  bool normal = true;
  std::optional<IntVec> hole; // ambient lattice point of the saturation outside NA
};
NormalityResult is_normal(const Configuration &A);

// Ambient vectors generating the monoid of lattice points of the cone.
std::vector<IntVec> saturation_hilbert_basis(const Configuration &A);

// A followed by the saturation generators that are not already columns.
Configuration augment(const Configuration &A);

} // namespace gkz

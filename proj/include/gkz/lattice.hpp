// Exact integer and rational linear algebra over GMP.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkz {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct LimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Process-wide cap on enumerated states/points. Every search that could
// blow up checks against it and throws LimitExceeded.
std::size_t budget();
void set_budget(std::size_t cap);

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  // Rows given as nested lists; all rows must have equal length.
  static IntMatrix from_rows(const std::vector<IntVec> &rows);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec> &cols);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec column(std::size_t j) const;
  IntVec row(std::size_t i) const;
  std::vector<IntVec> columns() const;
  IntMatrix transpose() const;
  IntMatrix select_columns(const std::vector<std::size_t> &idx) const;

  IntMatrix operator*(const IntMatrix &o) const;
  IntVec operator*(const IntVec &v) const;
  RatVec operator*(const RatVec &v) const;
  bool operator==(const IntMatrix &o) const = default;

  void swap_columns(std::size_t a, std::size_t b);
  void swap_rows(std::size_t a, std::size_t b);
  // column a += k * column b
  void add_column_multiple(std::size_t a, std::size_t b, const Int &k);
  void add_row_multiple(std::size_t a, std::size_t b, const Int &k);
  void negate_column(std::size_t j);
  void negate_row(std::size_t i);

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

struct HermiteResult {
  IntMatrix H; // lower-triangular column echelon form, same shape as M
  IntMatrix U; // unimodular, H = M * U
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows; // pivot row of column j for j < rank
};

// Column HNF: pivots positive, entries left of a pivot reduced into [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix &M);

// Nonzero columns of the HNF: a canonical basis of the column lattice.
IntMatrix lattice_basis(const IntMatrix &M);

struct SmithResult {
  IntMatrix S; // diagonal, nonnegative, d_1 | d_2 | ...
  IntMatrix U; // rows x rows, unimodular
  IntMatrix V; // cols x cols, unimodular
  std::size_t rank = 0;
};

SmithResult smith_normal_form(const IntMatrix &M);

bool lattice_member(const std::vector<IntVec> &basis, const IntVec &v);
bool lattice_member(const IntMatrix &gens, const IntVec &v);

// Z^n / span(B). Quotient coordinates are (torsion..., free...): the torsion
// coordinate k lives in Z/torsion[k].
struct LatticeQuotient {
  std::size_t ambient_rank = 0;
  std::size_t free_rank = 0;
  IntVec torsion;          // invariant factors >= 2, each dividing the next
  IntMatrix projection;    // (torsion.size() + free_rank) x ambient_rank
  IntMatrix section_map;   // ambient_rank x (torsion.size() + free_rank)

  Int torsion_order() const;
  // Quotient coordinates with torsion entries reduced into [0, d).
  IntVec project(const IntVec &v) const;
  // Rational vectors: torsion part is returned unreduced.
  RatVec project(const RatVec &v) const;
  IntVec section(const IntVec &q) const;
};

LatticeQuotient quotient(std::size_t n, const std::vector<IntVec> &B);
LatticeQuotient quotient(const IntMatrix &B);

std::optional<RatVec> rational_solve(const IntMatrix &M, const RatVec &b);
std::size_t rank(const IntMatrix &M);
// Basis (as columns) of the integer kernel {x : M x = 0}.
std::vector<IntVec> integer_kernel(const IntMatrix &M);
std::size_t rank(const std::vector<IntVec> &vecs, std::size_t dim);

// Integer normal vector to d-1 vectors in Z^d via cofactors; zero iff dependent.
IntVec cofactor_normal(const std::vector<IntVec> &vecs, std::size_t d);
Int determinant(IntMatrix M);

Int dot(const IntVec &a, const IntVec &b);
Rat dot(const IntVec &a, const RatVec &b);
Int content(const IntVec &v); // gcd of entries, 0 for the zero vector
bool is_zero(const IntVec &v);
bool is_integral(const RatVec &v);
IntVec to_int(const RatVec &v); // requires integrality
RatVec to_rat(const IntVec &v);
Int lcm_of_denominators(const RatVec &v);

IntVec add(const IntVec &a, const IntVec &b);
IntVec sub(const IntVec &a, const IntVec &b);
IntVec scale(const IntVec &a, const Int &k);
RatVec add(const RatVec &a, const RatVec &b);
RatVec sub(const RatVec &a, const RatVec &b);

// Canonical representative of v + span_Z(gens): with the HNF basis, each pivot
// coordinate is brought into [0, pivot) in order.
RatVec reduce_modulo(const IntMatrix &gens, const RatVec &v);
IntVec reduce_modulo(const IntMatrix &gens, const IntVec &v);

Int floor_div(const Int &a, const Int &b);
Int mod_floor(const Int &a, const Int &b); // result in [0, |b|)
Rat parse_rational(const std::string &s);  // "p", "-p", "p/q"
std::string to_string(const Rat &q);        // "p" or "p/q"
std::string to_string(const Int &z);

} // namespace gkz

#include "gkz/faces.hpp"
#include "gkz/semigroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gkz {

namespace {

// Calls f(subset) for every k-subset of {0..n-1}, in lexicographic order.
template <class F> void for_each_subset(std::size_t n, std::size_t k, F &&f) {
  if (k > n)
    return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i)
    idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

IndexSet intersect(const IndexSet &a, const IndexSet &b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset_of(const IndexSet &a, const IndexSet &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

IntVec scale_to_integer(const RatVec &v) {
  Int l = lcm_of_denominators(v);
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = Rat(v[i] * l).get_num();
  return out;
}

} // namespace

std::vector<IntVec> cone_facet_normals(const std::vector<IntVec> &gens, std::size_t d) {
  std::vector<IntVec> out;
  if (d == 0)
    return out;
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (!is_zero(gens[j]))
      nz.push_back(j);
  std::map<IndexSet, IntVec> found;
  std::size_t work = 0;
  for_each_subset(nz.size(), d - 1, [&](const std::vector<std::size_t> &sub) {
    if (++work > budget())
      throw LimitExceeded("facet enumeration exceeded the computation budget");
    std::vector<IntVec> rows;
    for (std::size_t s : sub)
      rows.push_back(gens[nz[s]]);
    IntVec w = cofactor_normal(rows, d);
    if (is_zero(w))
      return;
    bool pos = false, neg = false;
    IndexSet zeros;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      int s = sgn(dot(w, gens[j]));
      pos |= s > 0;
      neg |= s < 0;
      if (s == 0)
        zeros.push_back(j);
    }
    if (pos && neg)
      return;
    if (!pos && !neg)
      return; // gens do not span Q^d
    if (neg)
      w = scale(w, Int(-1));
    Int g = content(w);
    for (auto &x : w)
      x /= g;
    found.emplace(std::move(zeros), std::move(w));
  });
  for (auto &kv : found)
    out.push_back(kv.second);
  return out;
}

std::optional<IntVec> positive_functional(const std::vector<IntVec> &gens, std::size_t d) {
  std::vector<IntVec> nz;
  for (const auto &g : gens)
    if (!is_zero(g))
      nz.push_back(g);
  if (nz.empty())
    return IntVec(d, Int(0));
  HermiteResult h = hermite_normal_form(IntMatrix::from_columns(d, nz));
  const std::size_t s = h.rank;
  // coordinates in the HNF basis by forward substitution on pivot rows
  std::vector<IntVec> local;
  for (const auto &g : nz) {
    IntVec x(s);
    for (std::size_t j = 0; j < s; ++j) {
      std::size_t p = h.pivot_rows[j];
      Int acc = g[p];
      for (std::size_t k = 0; k < j; ++k)
        acc -= h.H(p, k) * x[k];
      x[j] = acc / h.H(p, j);
    }
    local.push_back(std::move(x));
  }
  std::vector<IntVec> normals = cone_facet_normals(local, s);
  if (rank(normals, s) < s)
    return std::nullopt;
  IntVec w(s, Int(0));
  for (const auto &nv : normals)
    w = add(w, nv);
  // ambient form supported on pivot rows: solve T^t lambda = w, T lower-triangular
  RatVec lam(d, Rat(0));
  for (std::size_t jj = s; jj-- > 0;) {
    Rat acc = w[jj];
    for (std::size_t i = jj + 1; i < s; ++i)
      acc -= Rat(h.H(h.pivot_rows[i], jj)) * lam[h.pivot_rows[i]];
    lam[h.pivot_rows[jj]] = acc / Rat(h.H(h.pivot_rows[jj], jj));
  }
  return scale_to_integer(lam);
}

Configuration Configuration::from_rows(const std::vector<IntVec> &rows) {
  return Configuration(IntMatrix::from_rows(rows));
}

Configuration::Configuration(IntMatrix A) : A_(std::move(A)) {
  const std::size_t n = A_.rows(), N = A_.cols();
  if (n == 0)
    throw InvalidInput("configuration needs at least one row");
  HermiteResult h = hermite_normal_form(A_);
  r_ = h.rank;
  pivots_ = h.pivot_rows;
  std::vector<std::size_t> first(r_);
  for (std::size_t j = 0; j < r_; ++j)
    first[j] = j;
  basis_ = h.H.select_columns(first);
  if (r_ == 0)
    basis_ = IntMatrix(n, 0);
  for (std::size_t j = 0; j < N; ++j)
    col_coords_.push_back(*coords(A_.column(j)));
  sum_coords_ = IntVec(r_, Int(0));
  for (const auto &c : col_coords_)
    sum_coords_ = add(sum_coords_, c);

  std::vector<IntVec> normals = cone_facet_normals(col_coords_, r_);
  for (auto &w : normals) {
    FacetFunctional f;
    for (std::size_t j = 0; j < N; ++j)
      if (dot(w, col_coords_[j]) == 0)
        f.face.indices.push_back(j);
    f.l_coords = w;
    RatVec lam(n, Rat(0));
    for (std::size_t jj = r_; jj-- > 0;) {
      Rat acc = w[jj];
      for (std::size_t i = jj + 1; i < r_; ++i)
        acc -= Rat(basis_(pivots_[i], jj)) * lam[pivots_[i]];
      lam[pivots_[jj]] = acc / Rat(basis_(pivots_[jj], jj));
    }
    f.l = lam;
    facets_.push_back(std::move(f));
  }
  std::sort(facets_.begin(), facets_.end(),
            [](const FacetFunctional &a, const FacetFunctional &b) { return a.face.indices < b.face.indices; });

  IndexSet all(N);
  for (std::size_t j = 0; j < N; ++j)
    all[j] = j;
  std::set<IndexSet> closure{all};
  for (const auto &f : facets_) {
    std::vector<IndexSet> add_now;
    for (const auto &X : closure)
      add_now.push_back(intersect(X, f.face.indices));
    closure.insert(add_now.begin(), add_now.end());
  }
  for (const auto &X : closure) {
    Face F;
    F.indices = X;
    F.rank = gkz::rank(coords_of(X), r_);
    F.codim = r_ - F.rank;
    F.witness_coords = IntVec(r_, Int(0));
    RatVec amb(n, Rat(0));
    for (const auto &f : facets_)
      if (subset_of(X, f.face.indices)) {
        F.witness_coords = add(F.witness_coords, f.l_coords);
        amb = add(amb, f.l);
      }
    F.witness = scale_to_integer(amb);
    faces_.push_back(std::move(F));
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face &a, const Face &b) {
    if (a.codim != b.codim)
      return a.codim < b.codim;
    return a.indices < b.indices;
  });
  for (auto &f : facets_)
    f.face = faces_[*face_index(f.face.indices)];
  IndexSet minimal = all;
  for (const auto &f : facets_)
    minimal = intersect(minimal, f.face.indices);
  minimal_ = *face_index(minimal);
}

std::optional<RatVec> Configuration::coords(const RatVec &v) const {
  if (v.size() != n())
    throw InvalidInput("vector length does not match the number of rows");
  RatVec x(r_);
  for (std::size_t j = 0; j < r_; ++j) {
    std::size_t p = pivots_[j];
    Rat acc = v[p];
    for (std::size_t k = 0; k < j; ++k)
      acc -= Rat(basis_(p, k)) * x[k];
    x[j] = acc / Rat(basis_(p, j));
  }
  if (basis_ * x != v)
    return std::nullopt;
  return x;
}

std::optional<IntVec> Configuration::coords(const IntVec &v) const {
  auto c = coords(to_rat(v));
  if (!c || !is_integral(*c))
    return std::nullopt;
  return to_int(*c);
}

std::vector<IntVec> Configuration::coords_of(const IndexSet &idx) const {
  std::vector<IntVec> out;
  for (std::size_t j : idx)
    out.push_back(col_coords_[j]);
  return out;
}

std::optional<std::size_t> Configuration::face_index(const IndexSet &idx) const {
  for (std::size_t k = 0; k < faces_.size(); ++k)
    if (faces_[k].indices == idx)
      return k;
  return std::nullopt;
}

std::vector<std::size_t> Configuration::facets_containing(const Face &F) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < facets_.size(); ++k)
    if (subset_of(F.indices, facets_[k].face.indices))
      out.push_back(k);
  return out;
}

std::size_t Configuration::face_hull(const IndexSet &idx) const {
  IndexSet X = faces_.front().indices;
  for (const auto &f : facets_)
    if (subset_of(idx, f.face.indices))
      X = intersect(X, f.face.indices);
  return *face_index(X);
}

std::size_t Configuration::face_of_point(const RatVec &c) const {
  IndexSet X = faces_.front().indices;
  for (const auto &f : facets_)
    if (dot(f.l_coords, c) == 0)
      X = intersect(X, f.face.indices);
  return *face_index(X);
}

const std::vector<IntVec> &Configuration::hilbert_basis_coords() const {
  std::lock_guard<std::mutex> lock(memo_->mu);
  if (memo_->hilbert)
    return *memo_->hilbert;
  std::vector<IntVec> result;
  if (r_ == 0) {
    memo_->hilbert = result;
    return *memo_->hilbert;
  }
  const Face &F0 = minimal_face();
  LatticeQuotient Q = quotient(r_, coords_of(F0.indices));
  const std::size_t d = Q.free_rank, t = Q.torsion.size();
  IntMatrix Pf(d, r_), Lf(r_, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < r_; ++j) {
      Pf(i, j) = Q.projection(t + i, j);
      Lf(j, i) = Q.section_map(j, t + i);
    }
  // lattice part: ZA cap QF0, both signs
  std::vector<IntVec> kern = integer_kernel(Pf);
  IntMatrix satF0 = kern.empty() ? IntMatrix(r_, 0) : gkz::lattice_basis(IntMatrix::from_columns(r_, kern));
  for (const auto &b : satF0.columns()) {
    result.push_back(b);
    result.push_back(scale(b, Int(-1)));
  }
  if (d > 0) {
    std::set<IntVec> gens;
    for (std::size_t j = 0; j < N(); ++j) {
      IntVec u = Pf * col_coords_[j];
      if (!is_zero(u))
        gens.insert(u);
    }
    std::vector<IntVec> u(gens.begin(), gens.end());
    std::set<IntVec> cand(gens);
    std::size_t work = 0;
    for_each_subset(u.size(), d, [&](const std::vector<std::size_t> &pick) {
      std::vector<IntVec> cols;
      for (std::size_t s : pick)
        cols.push_back(u[s]);
      IntMatrix U = IntMatrix::from_columns(d, cols);
      if (determinant(U) == 0)
        return;
      LatticeQuotient G = quotient(U);
      std::vector<Int> k(G.torsion.size(), Int(0));
      for (;;) {
        if (++work > budget())
          throw LimitExceeded("saturation enumeration exceeded the computation budget");
        IntVec x = G.section(k);
        RatVec lam = *rational_solve(U, to_rat(x));
        IntVec fl(d);
        for (std::size_t i = 0; i < d; ++i)
          fl[i] = floor_div(lam[i].get_num(), lam[i].get_den());
        IntVec p = sub(x, U * fl);
        if (!is_zero(p))
          cand.insert(p);
        std::size_t i = 0;
        while (i < k.size() && ++k[i] == G.torsion[i])
          k[i++] = 0;
        if (i == k.size())
          break;
      }
    });
    // facet values identify points of the pointed quotient cone
    std::vector<IntVec> pts(cand.begin(), cand.end());
    std::vector<IntVec> vals;
    for (const auto &p : pts) {
      IntVec c = Lf * p, v;
      for (const auto &f : facets_)
        v.push_back(dot(f.l_coords, c));
      vals.push_back(std::move(v));
    }
    for (std::size_t a = 0; a < pts.size(); ++a) {
      bool reducible = false;
      for (std::size_t b = 0; b < pts.size() && !reducible; ++b) {
        if (a == b)
          continue;
        bool le = true;
        for (std::size_t k2 = 0; k2 < facets_.size() && le; ++k2)
          le = vals[b][k2] <= vals[a][k2];
        reducible = le;
      }
      if (!reducible)
        result.push_back(reduce_modulo(satF0, Lf * pts[a]));
    }
  }
  std::sort(result.begin(), result.end(),
            [this](const IntVec &a, const IntVec &b) { return ambient(a) < ambient(b); });
  memo_->hilbert = result;
  return *memo_->hilbert;
}

std::vector<FacetFunctional> facets(const Configuration &A) { return A.facets(); }

std::vector<Face> all_faces(const Configuration &A) { return A.faces(); }

Face minimal_face(const Configuration &A) { return A.minimal_face(); }

bool is_simplicial_family(const Configuration &A, const std::vector<Face> &family) {
  for (const auto &F : family)
    if (F.codim != 1)
      throw InvalidInput("simplicial family check needs codimension-one faces");
  const std::size_t k = family.size();
  for (std::size_t l = 2; l <= k; ++l) {
    bool ok = true;
    for_each_subset(k, l, [&](const std::vector<std::size_t> &sub) {
      if (!ok)
        return;
      IndexSet X = family[sub[0]].indices;
      for (std::size_t s = 1; s < sub.size(); ++s)
        X = intersect(X, family[sub[s]].indices);
      auto idx = A.face_index(X);
      ok = idx && A.faces()[*idx].codim == l;
    });
    if (!ok)
      return false;
  }
  return true;
}

std::vector<IntVec> saturation_hilbert_basis(const Configuration &A) {
  std::vector<IntVec> out;
  for (const auto &c : A.hilbert_basis_coords())
    out.push_back(A.ambient(c));
  return out;
}

NormalityResult is_normal(const Configuration &A) {
  NormalityResult res;
  MembershipQuery q;
  q.shift = IntVec(A.rank(), Int(0));
  q.generators = A.column_coords();
  q.lattice = A.coords_of(A.minimal_face().indices);
  PreparedMembership pm(q);
  for (const auto &h : A.hilbert_basis_coords())
    if (!pm.contains(h)) {
      res.normal = false;
      res.hole = A.ambient(h);
      break;
    }
  return res;
}

Configuration augment(const Configuration &A) {
  std::vector<IntVec> cols = A.matrix().columns();
  for (const auto &h : saturation_hilbert_basis(A))
    if (std::find(cols.begin(), cols.end(), h) == cols.end())
      cols.push_back(h);
  return Configuration(IntMatrix::from_columns(A.n(), cols));
}

} // namespace gkz

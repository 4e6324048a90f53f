#include "gkz/semigroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace gkz {

namespace {

struct VecHash {
  std::size_t operator()(const IntVec &v) const {
    std::size_t h = 1469598103934665603ull;
    for (const auto &x : v) {
      h ^= static_cast<std::size_t>(mpz_get_si(x.get_mpz_t())) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using StateSet = std::unordered_set<IntVec, VecHash>;

std::string vec_string(const IntVec &v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

bool subset_of(const IndexSet &a, const IndexSet &b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

PreparedMembership::PreparedMembership(MembershipQuery q) : q_(std::move(q)) {
  const std::size_t dim = q_.shift.size();
  for (const auto *list : {&q_.generators, &q_.lattice})
    for (const auto &v : *list)
      if (v.size() != dim)
        throw InvalidInput("membership query: dimension mismatch");
  quot_ = quotient(dim, q_.lattice);
  std::set<IntVec> seen;
  for (const auto &g : q_.generators) {
    IntVec s = quot_.project(g);
    if (!is_zero(s) && seen.insert(s).second)
      steps_.push_back(s);
  }
  const std::size_t t = quot_.torsion.size();
  std::vector<IntVec> free_parts;
  for (const auto &s : steps_)
    free_parts.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(t), s.end());
  auto h = positive_functional(free_parts, quot_.free_rank);
  if (!h)
    throw InvalidInput("generators do not span a pointed cone modulo the lattice part");
  h_ = *h;
}

Int PreparedMembership::height(const IntVec &q) const {
  const std::size_t t = quot_.torsion.size();
  Int s = 0;
  for (std::size_t i = 0; i < h_.size(); ++i)
    s += h_[i] * q[t + i];
  return s;
}

IntVec PreparedMembership::add_state(const IntVec &a, const IntVec &b) const {
  IntVec c = add(a, b);
  for (std::size_t k = 0; k < quot_.torsion.size(); ++k)
    if (c[k] >= quot_.torsion[k])
      c[k] -= quot_.torsion[k];
  return c;
}

std::vector<IntVec> PreparedMembership::reachable(const Int &bound) const {
  std::vector<IntVec> out;
  IntVec zero(quot_.torsion.size() + quot_.free_rank, Int(0));
  if (bound < 0)
    return out;
  StateSet seen{zero};
  std::deque<IntVec> queue{zero};
  while (!queue.empty()) {
    IntVec s = std::move(queue.front());
    queue.pop_front();
    for (const auto &g : steps_) {
      IntVec ns = add_state(s, g);
      if (height(ns) > bound || seen.count(ns))
        continue;
      if (seen.size() >= budget())
        throw LimitExceeded("semigroup search exceeded the computation budget");
      seen.insert(ns);
      queue.push_back(std::move(ns));
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool PreparedMembership::contains(const IntVec &target) const {
  if (target.size() != q_.shift.size())
    throw InvalidInput("membership target: dimension mismatch");
  IntVec tq = quot_.project(sub(target, q_.shift));
  if (is_zero(tq))
    return true;
  Int ht = height(tq);
  if (ht < 0)
    return false;
  IntVec zero(tq.size(), Int(0));
  StateSet seen{zero};
  std::deque<IntVec> queue{zero};
  while (!queue.empty()) {
    IntVec s = std::move(queue.front());
    queue.pop_front();
    for (const auto &g : steps_) {
      IntVec ns = add_state(s, g);
      if (ns == tq)
        return true;
      if (height(ns) > ht || seen.count(ns))
        continue;
      if (seen.size() >= budget())
        throw LimitExceeded("semigroup search exceeded the computation budget");
      seen.insert(ns);
      queue.push_back(std::move(ns));
    }
  }
  return false;
}

bool member(const MembershipQuery &q, const IntVec &target) { return PreparedMembership(q).contains(target); }

Verdict verdict_or(const Verdict &a, const Verdict &b) {
  if (a.is_true())
    return a;
  if (b.is_true())
    return b;
  if (!a.definite())
    return a;
  if (!b.definite())
    return b;
  return Verdict::no();
}

std::string to_string(Truth t) {
  switch (t) {
  case Truth::True:
    return "true";
  case Truth::False:
    return "false";
  case Truth::FalseUpToBounds:
    return "false_up_to_bounds";
  }
  return "false";
}

Calculus::Calculus(Configuration A) : A_(std::move(A)) {
  const std::size_t r = A_.rank();
  for (const auto &F : A_.faces()) {
    MembershipQuery q{IntVec(r, Int(0)), A_.column_coords(), A_.coords_of(F.indices)};
    nA_.emplace_back(q);
    quot_.push_back(nA_.back().quotient_map());
    facets_through_.push_back(A_.facets_containing(F));
  }
}

std::vector<IntVec> Calculus::classes(std::size_t face, const RatVec &g) const {
  std::vector<IntVec> out;
  const LatticeQuotient &Q = quot_[face];
  RatVec pg = Q.project(g);
  const std::size_t t = Q.torsion.size();
  IntVec q(t + Q.free_rank, Int(0));
  for (std::size_t i = 0; i < Q.free_rank; ++i) {
    if (pg[t + i].get_den() != 1)
      return out;
    q[t + i] = pg[t + i].get_num();
  }
  for (;;) {
    out.push_back(Q.section(q));
    std::size_t i = 0;
    while (i < t && ++q[i] == Q.torsion[i])
      q[i++] = 0;
    if (i == t)
      break;
  }
  return out;
}

bool Calculus::in_semigroup_mod(std::size_t face, const IntVec &z) const { return nA_[face].contains(z); }

bool Calculus::in_saturation_mod(std::size_t face, const IntVec &z) const {
  for (std::size_t k : facets_through_[face])
    if (dot(A_.facets()[k].l_coords, z) < 0)
      return false;
  return true;
}

std::size_t Calculus::class_hull(std::size_t face, const IntVec &z) const {
  IndexSet X = A_.full_face().indices;
  for (std::size_t k : facets_through_[face])
    if (dot(A_.facets()[k].l_coords, z) == 0) {
      IndexSet Y;
      const IndexSet &G = A_.facets()[k].face.indices;
      std::set_intersection(X.begin(), X.end(), G.begin(), G.end(), std::back_inserter(Y));
      X = std::move(Y);
    }
  return *A_.face_index(X);
}

Int Calculus::height(std::size_t face, const IntVec &z) const { return dot(A_.faces()[face].witness_coords, z); }

bool Calculus::sumset_contains(std::size_t face, std::size_t i, std::size_t k, const IntVec &z) const {
  const PreparedMembership &pm = nA_[face];
  IntVec tq = pm.project(z);
  Int ht = pm.height(tq);
  if (ht < 0)
    return false;
  // summands lie in the pointed quotient monoid, so their heights are bounded by ht
  std::vector<IntVec> D;
  for (auto &y : pm.reachable(ht))
    if (A_.faces()[class_hull(face, pm.lift(y))].codim <= i)
      D.push_back(std::move(y));
  const LatticeQuotient &Q = quot_[face];
  auto plus = [&](const IntVec &a, const IntVec &b) {
    IntVec c = add(a, b);
    for (std::size_t m = 0; m < Q.torsion.size(); ++m)
      c[m] = mod_floor(c[m], Q.torsion[m]);
    return c;
  };
  StateSet R(D.begin(), D.end());
  for (std::size_t step = 1; step < k && !R.empty(); ++step) {
    StateSet next;
    for (const auto &a : R)
      for (const auto &b : D) {
        IntVec c = plus(a, b);
        if (pm.height(c) <= ht)
          next.insert(std::move(c));
      }
    R = std::move(next);
  }
  return R.count(tq) > 0;
}

bool Calculus::good_class(const DegreeFamily &D, std::size_t face, const IntVec &z) const {
  switch (D.kind) {
  case DegreeFamily::QuotientByInterior:
    return in_semigroup_mod(face, z) && !in_semigroup_mod(face, sub(z, A_.sum_coords()));
  case DegreeFamily::FiltrationIdeal:
    return in_semigroup_mod(face, z) && A_.faces()[class_hull(face, z)].codim <= D.i;
  case DegreeFamily::Gap:
    return in_saturation_mod(face, z) && !in_semigroup_mod(face, z);
  case DegreeFamily::IdealPowerQuotient:
    if (D.k < 1)
      throw InvalidInput("ideal power must be at least 1");
    return in_semigroup_mod(face, z) && A_.faces()[class_hull(face, z)].codim <= D.i &&
           !sumset_contains(face, D.i, D.k, z);
  }
  throw InvalidInput("unsupported degree family");
}

Verdict Calculus::good_class_exists(const DegreeFamily &D, std::size_t face, const RatVec &g) const {
  for (const auto &z : classes(face, g))
    if (good_class(D, face, z))
      return Verdict::yes("b=" + vec_string(A_.ambient(z)));
  return Verdict::no();
}

Int Calculus::default_window(std::size_t face) const {
  const PreparedMembership &pm = nA_[face];
  IntVec hsum(A_.rank(), Int(0));
  for (const auto &h : A_.hilbert_basis_coords())
    hsum = add(hsum, h);
  Int a = pm.height(pm.project(A_.sum_coords()));
  Int b = pm.height(pm.project(hsum));
  return 2 * a + (b > 0 ? b : Int(0)) + 2;
}

std::vector<QDegComponent> Calculus::qdeg_components(const DegreeFamily &D, std::optional<Int> window) const {
  if (D.kind == DegreeFamily::IdealPowerQuotient)
    throw InvalidInput("component extraction supports the first three degree families only");
  std::vector<QDegComponent> out;
  const auto &faces = A_.faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const PreparedMembership &pm = nA_[f];
    Int bound = window ? *window : default_window(f);
    std::vector<IntVec> cand;
    if (D.kind == DegreeFamily::Gap) {
      MembershipQuery sq{IntVec(A_.rank(), Int(0)), A_.hilbert_basis_coords(), A_.coords_of(faces[f].indices)};
      PreparedMembership sat(sq);
      for (const auto &y : sat.reachable(bound))
        cand.push_back(sat.lift(y));
    } else {
      for (const auto &y : pm.reachable(bound))
        cand.push_back(pm.lift(y));
    }
    std::set<IntVec> free_seen;
    const std::size_t t = quot_[f].torsion.size();
    std::vector<std::pair<IntVec, IntVec>> found; // (quotient class, z)
    for (const auto &z : cand) {
      if (!good_class(D, f, z))
        continue;
      IntVec qc = pm.project(z);
      found.emplace_back(qc, z);
    }
    std::sort(found.begin(), found.end());
    for (const auto &[qc, z] : found) {
      IntVec fr(qc.begin() + static_cast<std::ptrdiff_t>(t), qc.end());
      if (free_seen.count(fr))
        continue;
      bool maximal = true;
      for (std::size_t g = 0; g < faces.size() && maximal; ++g) {
        if (g == f || faces[g].indices.size() <= faces[f].indices.size() ||
            !subset_of(faces[f].indices, faces[g].indices))
          continue;
        maximal = !good_class_exists(D, g, to_rat(z)).is_true();
      }
      if (!maximal)
        continue;
      free_seen.insert(fr);
      IntMatrix Fm = A_.matrix().select_columns(faces[f].indices);
      out.push_back({reduce_modulo(Fm, A_.ambient(z)), f, qc});
    }
  }
  return out;
}

Verdict good_class_exists(const Configuration &A, const DegreeFamily &D, const Face &F, const RatVec &gamma) {
  auto idx = A.face_index(F.indices);
  if (!idx)
    throw InvalidInput("not a face of the configuration");
  auto c = A.coords(gamma);
  if (!c)
    return Verdict::no();
  return Calculus(A).good_class_exists(D, *idx, *c);
}

std::vector<QDegComponent> qdeg_components(const DegreeFamily &D, const Configuration &A) {
  return Calculus(A).qdeg_components(D);
}

Verdict sumset_member_bounded(const Configuration &A, std::size_t i, std::size_t k, const IntVec &target,
                              const Int &window) {
  if (k < 2)
    throw InvalidInput("sumset order must be at least 2");
  if (window < 0)
    throw InvalidInput("window must be nonnegative");
  auto z = A.coords(target);
  if (!z)
    return Verdict::no();
  Calculus C(A);
  std::size_t f0 = A.minimal_face_index();
  if (C.in_semigroup_mod(f0, *z) && C.sumset_contains(f0, i, k, *z))
    return Verdict::yes();
  return Verdict::no();
}

} // namespace gkz

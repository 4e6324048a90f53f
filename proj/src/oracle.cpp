#include "gkz/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gkz::oracle {

namespace {

long to_long(const Int &z) {
  if (!z.fits_slong_p())
    throw LimitExceeded("oracle: entry does not fit in 64 bits");
  return z.get_si();
}

long dotl(const Vec &a, const Vec &b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

Vec addv(Vec a, const Vec &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] += b[i];
  return a;
}

Vec subv(Vec a, const Vec &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] -= b[i];
  return a;
}

Rat dotq(const Vec &h, const RatVec &g) {
  Rat s = 0;
  for (std::size_t i = 0; i < h.size(); ++i)
    s += Rat(h[i]) * g[i];
  return s;
}

RatVec ratv(const Vec &v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = v[i];
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVec> &rows, std::size_t width) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0)
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[p], rows[r]);
    Rat inv = 1 / rows[r][c];
    for (auto &x : rows[r])
      x *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0)
        continue;
      Rat f = rows[k][c];
      for (std::size_t j = 0; j < width; ++j)
        rows[k][j] -= f * rows[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

// Integer rows spanning the functionals that vanish on `span` (inside Q^dim).
Mat annihilator(const Mat &span, std::size_t dim) {
  std::vector<RatVec> rows;
  for (const auto &v : span)
    rows.push_back(ratv(v));
  auto piv = rref(rows, dim);
  std::vector<bool> is_piv(dim, false);
  for (auto c : piv)
    is_piv[c] = true;
  Mat out;
  for (std::size_t f = 0; f < dim; ++f) {
    if (is_piv[f])
      continue;
    RatVec k(dim, Rat(0));
    k[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      k[piv[r]] = -rows[r][f];
    Int den = 1;
    for (const auto &x : k)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    Vec h(dim);
    long g = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      Rat s = k[i] * Rat(den);
      h[i] = to_long(s.get_num());
      g = std::gcd(g, std::abs(h[i]));
    }
    if (g > 1)
      for (auto &x : h)
        x /= g;
    out.push_back(h);
  }
  return out;
}

std::optional<Vec> integral_key(const Mat &ann, const RatVec &g) {
  Vec key(ann.size());
  for (std::size_t k = 0; k < ann.size(); ++k) {
    Rat v = dotq(ann[k], g);
    if (v.get_den() != 1)
      return std::nullopt;
    key[k] = to_long(v.get_num());
  }
  return key;
}

Vec key_of(const Mat &ann, const Vec &v) {
  Vec key(ann.size());
  for (std::size_t k = 0; k < ann.size(); ++k)
    key[k] = dotl(ann[k], v);
  return key;
}

long default_face_box(const IntMatrix &A) {
  long e = 1;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      e = std::max(e, std::abs(to_long(A(i, j))));
  // cofactor bound (n-1)! e^(n-1)
  long b = 1;
  for (std::size_t k = 1; k < A.rows(); ++k)
    b *= static_cast<long>(k) * e;
  return b;
}

// Calls f on every integer vector of [-box, box]^dim in order of growing
// max-norm, stopping when f returns true.
template <class F> bool for_box(std::size_t dim, long box, F f) {
  Vec h(dim, 0);
  if (f(h))
    return true;
  for (long rad = 1; rad <= box; ++rad) {
    Vec v(dim, -rad);
    while (true) {
      long m = 0;
      for (auto x : v)
        m = std::max(m, std::abs(x));
      if (m == rad && f(v))
        return true;
      std::size_t i = 0;
      while (i < dim && v[i] == rad) {
        v[i] = -rad;
        ++i;
      }
      if (i == dim)
        break;
      ++v[i];
    }
  }
  return false;
}

std::vector<std::vector<Rat>> grid_axes(const std::vector<std::pair<Rat, Rat>> &box, const Rat &step) {
  std::vector<std::vector<Rat>> axes;
  for (const auto &[lo, hi] : box) {
    std::vector<Rat> ax;
    for (Rat x = lo; x <= hi; x += step)
      ax.push_back(x);
    axes.push_back(ax);
  }
  return axes;
}

std::vector<RatVec> grid_points(const std::vector<std::vector<Rat>> &axes) {
  std::vector<RatVec> pts;
  for (const auto &ax : axes)
    if (ax.empty())
      return pts;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    RatVec p(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i)
      p[i] = axes[i][idx[i]];
    pts.push_back(p);
    std::size_t k = axes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < axes[k].size())
        break;
      idx[k] = 0;
      if (k == 0)
        return pts;
    }
    if (axes.empty())
      return pts;
  }
}

unsigned mask_of(const IndexSet &s) {
  unsigned m = 0;
  for (auto j : s)
    m |= 1u << j;
  return m;
}

} // namespace

Vec to_vec(const IntVec &v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = to_long(v[i]);
  return r;
}

Mat columns_of(const IntMatrix &A) {
  Mat m;
  for (std::size_t j = 0; j < A.cols(); ++j)
    m.push_back(to_vec(A.column(j)));
  return m;
}

SmallLattice::SmallLattice(std::size_t dim, const Mat &gens) : dim_(dim) {
  std::map<std::size_t, Vec> by_pivot;
  for (Vec v : gens) {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (v[i] == 0)
        continue;
      auto it = by_pivot.find(i);
      if (it == by_pivot.end()) {
        if (v[i] < 0)
          for (auto &x : v)
            x = -x;
        by_pivot[i] = v;
        break;
      }
      Vec &b = it->second;
      while (v[i] != 0) {
        long q = b[i] / v[i];
        for (std::size_t k = 0; k < dim_; ++k)
          b[k] -= q * v[k];
        std::swap(b, v);
      }
      if (b[i] < 0)
        for (auto &x : b)
          x = -x;
    }
  }
  for (auto &[p, v] : by_pivot) {
    pivots_.push_back(p);
    basis_.push_back(v);
  }
}

bool SmallLattice::contains(const Vec &v0) const {
  Vec v = v0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (v[i] == 0)
      continue;
    while (k < pivots_.size() && pivots_[k] < i)
      ++k;
    if (k == pivots_.size() || pivots_[k] != i)
      return false;
    if (v[i] % basis_[k][i] != 0)
      return false;
    long q = v[i] / basis_[k][i];
    for (std::size_t j = 0; j < dim_; ++j)
      v[j] -= q * basis_[k][j];
  }
  return true;
}

std::size_t rank_of(const std::vector<RatVec> &vecs) {
  if (vecs.empty())
    return 0;
  auto rows = vecs;
  return rref(rows, rows[0].size()).size();
}

bool in_rational_span(const std::vector<RatVec> &span, const RatVec &v) {
  auto with = span;
  with.push_back(v);
  return rank_of(with) == rank_of(span);
}

bool bf_member(const MembershipQuery &q, const IntVec &target, long R) {
  std::size_t n = target.size();
  Mat L;
  for (const auto &l : q.lattice)
    L.push_back(to_vec(l));
  SmallLattice lat(n, L);
  Mat S;
  for (const auto &s : q.generators)
    S.push_back(to_vec(s));
  Vec start = subv(to_vec(target), to_vec(q.shift));
  auto rec = [&](auto &self, std::size_t idx, Vec cur) -> bool {
    if (idx == S.size())
      return lat.contains(cur);
    for (long c = 0; c <= R; ++c) {
      if (self(self, idx + 1, cur))
        return true;
      cur = subv(cur, S[idx]);
    }
    return false;
  };
  return rec(rec, 0, start);
}

std::optional<Vec> bf_positive_functional(const Mat &gens, const Mat &lattice, std::size_t dim, long box) {
  std::optional<Vec> found;
  for_box(dim, box, [&](const Vec &h) {
    for (const auto &l : lattice)
      if (dotl(h, l) != 0)
        return false;
    for (const auto &s : gens)
      if (dotl(h, s) <= 0)
        return false;
    found = h;
    return true;
  });
  return found;
}

Rat BfFacet::value(const RatVec &gamma) const {
  Rat v = dotq(h, gamma) / Rat(g);
  v.canonicalize();
  return v;
}

BfFaces bf_faces(const IntMatrix &A, long box) {
  if (box <= 0)
    box = default_face_box(A);
  std::size_t n = A.rows(), N = A.cols();
  Mat cols = columns_of(A);
  std::map<IndexSet, Vec> direct;
  for_box(n, box, [&](const Vec &h) {
    IndexSet z;
    for (std::size_t j = 0; j < N; ++j) {
      long v = dotl(h, cols[j]);
      if (v < 0)
        return false;
      if (v == 0)
        z.push_back(j);
    }
    direct.emplace(z, h);
    return false;
  });
  std::set<IndexSet> all;
  for (const auto &[z, h] : direct)
    all.insert(z);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<IndexSet> cur(all.begin(), all.end());
    for (std::size_t a = 0; a < cur.size(); ++a)
      for (std::size_t b = a + 1; b < cur.size(); ++b) {
        IndexSet c;
        std::set_intersection(cur[a].begin(), cur[a].end(), cur[b].begin(), cur[b].end(), std::back_inserter(c));
        grew |= all.insert(c).second;
      }
  }
  auto rank_cols = [&](const IndexSet &s) {
    std::vector<RatVec> v;
    for (auto j : s)
      v.push_back(ratv(cols[j]));
    return rank_of(v);
  };
  BfFaces out;
  out.faces.assign(all.begin(), all.end());
  IndexSet everything(N);
  std::iota(everything.begin(), everything.end(), 0);
  out.rank = rank_cols(everything);
  for (const auto &f : out.faces) {
    if (f == everything || out.rank == 0 || rank_cols(f) + 1 != out.rank)
      continue;
    auto it = direct.find(f);
    if (it == direct.end())
      throw std::logic_error("oracle: facet without a supporting functional in the box");
    long g = 0;
    for (const auto &c : cols)
      g = std::gcd(g, std::abs(dotl(it->second, c)));
    out.facets.push_back({f, it->second, g});
  }
  return out;
}

std::size_t SemigroupTable::Hash::operator()(const Vec &v) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : v)
    h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
  return h;
}

SemigroupTable::SemigroupTable(const IntMatrix &A, long C, std::size_t max_points) {
  std::size_t n = A.rows();
  Mat cols = columns_of(A);
  Mat nonzero;
  for (const auto &c : cols)
    if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; }))
      nonzero.push_back(c);
  if (!bf_positive_functional(nonzero, {}, n, 24))
    throw InvalidInput("oracle: the cone is not pointed");
  // most balanced functional in a small box keeps the window small
  long wmax = 0, wmin = 1;
  for_box(n, 6, [&](const Vec &h) {
    long lo = 0, hi = 0;
    for (const auto &c : nonzero) {
      long v = dotl(h, c);
      if (v <= 0)
        return false;
      lo = lo == 0 ? v : std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (wmax == 0 || hi * wmin < wmax * lo) {
      w_ = h;
      wmax = hi;
      wmin = lo;
    }
    return false;
  });
  if (wmax == 0) {
    w_ = *bf_positive_functional(nonzero, {}, n, 24);
    wmax = 1;
    for (const auto &c : nonzero)
      wmax = std::max(wmax, dotl(w_, c));
  }
  limit_ = C * wmax;
  Vec zero(n, 0);
  support_[zero] = 0;
  std::deque<Vec> queue{zero};
  while (!queue.empty()) {
    Vec p = queue.front();
    queue.pop_front();
    points_.push_back(p);
    unsigned m = support_[p];
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Vec q = addv(p, cols[j]);
      if (dotl(w_, q) > limit_ || support_.count(q))
        continue;
      support_[q] = m | (1u << j);
      if (support_.size() > max_points)
        throw LimitExceeded("oracle: semigroup window too large");
      queue.push_back(q);
    }
  }
  std::stable_sort(points_.begin(), points_.end(),
                   [&](const Vec &a, const Vec &b) { return dotl(w_, a) < dotl(w_, b); });
}

long SemigroupTable::height(const Vec &p) const { return dotl(w_, p); }
bool SemigroupTable::valid(const Vec &p) const { return height(p) <= limit_; }
bool SemigroupTable::contains(const Vec &p) const {
  if (!valid(p))
    throw std::logic_error("oracle: semigroup query outside the window");
  return support_.count(p) > 0;
}
std::optional<unsigned> SemigroupTable::support(const Vec &p) const {
  auto it = support_.find(p);
  if (it == support_.end())
    return std::nullopt;
  return it->second;
}

std::vector<std::optional<bool>> bf_region(const IntMatrix &A, const std::string &set,
                                           const std::vector<std::pair<Rat, Rat>> &box, const Rat &step,
                                           const RegionBounds &b) {
  static const std::set<std::string> known{"res", "sres", "dres", "SRes", "DRes"};
  if (!known.count(set))
    throw InvalidInput("oracle: unsupported set " + set);
  std::size_t n = A.rows();
  if (box.size() != n || step <= 0)
    throw InvalidInput("oracle: bad box");
  auto pts = grid_points(grid_axes(box, step));
  std::vector<std::optional<bool>> out(pts.size());
  if (pts.empty())
    return out;

  Mat cols = columns_of(A);
  std::vector<RatVec> rcols;
  for (const auto &c : cols)
    rcols.push_back(ratv(c));
  BfFaces F = bf_faces(A);
  std::vector<bool> inside(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p)
    inside[p] = in_rational_span(rcols, pts[p]);

  auto finish = [&](auto pred) {
    for (std::size_t p = 0; p < pts.size(); ++p)
      if (inside[p])
        out[p] = pred(pts[p]);
    return out;
  };

  if (set == "SRes" || set == "DRes") {
    int sign = set == "SRes" ? -1 : 1;
    return finish([&](const RatVec &g) {
      for (const auto &f : F.facets) {
        Rat v = f.value(g);
        if (v.get_den() == 1 && sgn(v) == sign)
          return true;
      }
      return false;
    });
  }

  if (set == "res") {
    // ZA points in a box large enough to meet every affine facet span through a grid point
    long reach = 0;
    for (const auto &[lo, hi] : box)
      reach = std::max({reach, to_long(Int(abs(lo.get_num()) / lo.get_den())) + 1,
                        to_long(Int(abs(hi.get_num()) / hi.get_den())) + 1});
    for (const auto &c : cols) {
      long m = 0;
      for (auto x : c)
        m = std::max(m, std::abs(x));
      reach += m;
    }
    SmallLattice ZA(n, cols);
    std::vector<Mat> anns;
    std::vector<std::set<Vec>> keys(F.facets.size());
    for (const auto &f : F.facets) {
      Mat span;
      for (auto j : f.columns)
        span.push_back(cols[j]);
      anns.push_back(annihilator(span, n));
    }
    for_box(n, reach, [&](const Vec &x) {
      if (ZA.contains(x))
        for (std::size_t k = 0; k < anns.size(); ++k)
          keys[k].insert(key_of(anns[k], x));
      return false;
    });
    return finish([&](const RatVec &g) {
      for (std::size_t k = 0; k < anns.size(); ++k) {
        auto key = integral_key(anns[k], g);
        if (key && keys[k].count(*key))
          return true;
      }
      return false;
    });
  }

  SemigroupTable T(A, b.C);
  long half = T.limit() / 2;
  Vec aA(n, 0);
  for (const auto &c : cols)
    aA = addv(aA, c);
  std::vector<Mat> anns;
  for (const auto &f : F.faces) {
    Mat span;
    for (auto j : f)
      span.push_back(cols[j]);
    anns.push_back(annihilator(span, n));
  }
  // points of NF for each face: those whose support lies in F
  std::vector<std::vector<Vec>> NF(F.faces.size());
  for (std::size_t k = 0; k < F.faces.size(); ++k) {
    unsigned fm = mask_of(F.faces[k]);
    for (const auto &p : T.points())
      if ((*T.support(p) & ~fm) == 0)
        NF[k].push_back(p);
  }
  std::vector<std::set<Vec>> good(F.faces.size());

  if (set == "sres") {
    for (std::size_t k = 0; k < F.faces.size(); ++k)
      for (const auto &bp : T.points()) {
        if (T.height(bp) > half)
          break;
        bool ok = true;
        for (const auto &c : NF[k]) {
          Vec s = addv(bp, c);
          if (T.height(s) > T.limit())
            continue;
          if (T.contains(subv(s, aA))) {
            ok = false;
            break;
          }
        }
        if (ok)
          good[k].insert(key_of(anns[k], bp));
      }
    return finish([&](const RatVec &g) {
      for (std::size_t k = 0; k < F.faces.size(); ++k)
        for (long m = 1; m <= b.M; ++m) {
          RatVec shifted = g;
          for (std::size_t i = 0; i < n; ++i)
            shifted[i] += Rat(m * aA[i]);
          auto key = integral_key(anns[k], shifted);
          if (key && good[k].count(*key))
            return true;
        }
      return false;
    });
  }

  // dres: the degree sets of I_i and of its powers inside the window
  std::vector<std::size_t> face_rank(F.faces.size());
  for (std::size_t k = 0; k < F.faces.size(); ++k) {
    std::vector<RatVec> v;
    for (auto j : F.faces[k])
      v.push_back(rcols[j]);
    face_rank[k] = rank_of(v);
  }
  auto codim_of_point = [&](const Vec &p) {
    unsigned m = *T.support(p);
    std::size_t best = F.faces.size();
    for (std::size_t k = 0; k < F.faces.size(); ++k)
      if ((m & ~mask_of(F.faces[k])) == 0 && (best == F.faces.size() || F.faces[k].size() < F.faces[best].size()))
        best = k;
    return F.rank - face_rank[best];
  };
  std::map<Vec, std::size_t> codim;
  for (const auto &p : T.points())
    codim[p] = codim_of_point(p);
  for (std::size_t i = 0; i < F.rank; ++i) {
    auto inD = [&](const Vec &p) { return T.valid(p) && T.contains(p) && codim[p] <= i; };
    std::vector<Vec> gens;
    for (const auto &p : T.points()) {
      if (!inD(p))
        continue;
      bool minimal = true;
      for (const auto &c : cols) {
        Vec q = subv(p, c);
        if (T.height(q) >= 0 && T.contains(q) && inD(q) && q != p) {
          minimal = false;
          break;
        }
      }
      if (minimal)
        gens.push_back(p);
    }
    std::map<Vec, long> kmax;
    for (const auto &p : T.points()) {
      if (!inD(p)) {
        kmax[p] = 0;
        continue;
      }
      long best = 1;
      for (const auto &g : gens) {
        Vec q = subv(p, g);
        if (T.height(q) < 0 || !T.contains(q))
          continue;
        best = std::max(best, 1 + kmax[q]);
      }
      kmax[p] = best;
    }
    for (std::size_t k = 0; k < F.faces.size(); ++k)
      for (const auto &bp : T.points()) {
        if (T.height(bp) > half)
          break;
        bool ok = true;
        for (const auto &c : NF[k]) {
          // c in deg(I_i) would put b + k c in deg(I_i^k) for every k
          if (inD(c)) {
            ok = false;
            break;
          }
          Vec s = addv(bp, c);
          if (T.height(s) > T.limit())
            continue;
          long km = kmax[s];
          if (km == 0 || km + 1 > b.K) {
            ok = false;
            break;
          }
        }
        if (ok)
          good[k].insert(key_of(anns[k], bp));
      }
  }
  return finish([&](const RatVec &g) {
    for (std::size_t k = 0; k < F.faces.size(); ++k) {
      auto key = integral_key(anns[k], g);
      if (key && good[k].count(*key))
        return true;
    }
    return false;
  });
}

long bf_pullback_count(const IntMatrix &A, const IndexSet &Fcols, const RatVec &gammaA, long order_bound) {
  std::size_t n = A.rows();
  Mat cols = columns_of(A);
  SmallLattice ZA(n, cols);
  long ord = 0;
  for (long d = 1; d <= order_bound && ord == 0; ++d) {
    Vec v(n);
    bool integral = true;
    for (std::size_t i = 0; i < n && integral; ++i) {
      Rat x = gammaA[i] * Rat(d);
      x.canonicalize();
      integral = x.get_den() == 1;
      if (integral)
        v[i] = to_long(x.get_num());
    }
    if (integral && ZA.contains(v))
      ord = d;
  }
  if (ord == 0)
    throw LimitExceeded("oracle: class order exceeds the bound");
  Mat span;
  for (auto j : Fcols)
    span.push_back(cols[j]);
  SmallLattice ZF(n, span);
  const Mat &beta = ZF.basis();
  std::size_t s = beta.size();
  // solution orders divide ord * exponent(torsion); every e <= bound divides some e in (bound/2, bound]
  std::vector<Vec> reps; // D * gamma_F, with the D it was found at
  std::vector<long> rep_den;
  for (long e = order_bound / 2 + 1; e <= order_bound; ++e) {
    long D = ord * e;
    // D * gamma_A is integral since ord divides D
    Vec G(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rat x = gammaA[i] * Rat(D);
      x.canonicalize();
      G[i] = to_long(x.get_num());
    }
    auto scaled_in = [&](const Vec &v, long d, const SmallLattice &L) {
      Vec q(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] % d != 0)
          return false;
        q[i] = v[i] / d;
      }
      return L.contains(q);
    };
    Vec num(s, 0);
    while (true) {
      Vec v(n, 0);
      for (std::size_t k = 0; k < s; ++k)
        for (std::size_t i = 0; i < n; ++i)
          v[i] += num[k] * beta[k][i];
      if (scaled_in(subv(v, G), D, ZA)) {
        bool fresh = true;
        for (std::size_t r = 0; r < reps.size() && fresh; ++r) {
          // gamma_F - gamma_F' over the common denominator D * D'
          Vec w(n);
          for (std::size_t i = 0; i < n; ++i)
            w[i] = v[i] * rep_den[r] - reps[r][i] * D;
          fresh = !scaled_in(w, D * rep_den[r], ZF);
        }
        if (fresh) {
          reps.push_back(v);
          rep_den.push_back(D);
        }
      }
      std::size_t k = 0;
      while (k < s && num[k] == D - 1) {
        num[k] = 0;
        ++k;
      }
      if (k == s)
        break;
      ++num[k];
    }
  }
  return static_cast<long>(reps.size());
}

bool PropertyReport::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult &p) { return p.failures.empty(); });
}

} // namespace gkz::oracle

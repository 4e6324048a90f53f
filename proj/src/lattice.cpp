#include "gkz/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <utility>

namespace gkz {

namespace {
std::atomic<std::size_t> g_budget{4'000'000};
}

std::size_t budget() { return g_budget.load(); }
void set_budget(std::size_t cap) { g_budget.store(cap); }

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec> &rows) {
  if (rows.empty())
    return IntMatrix();
  IntMatrix M(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != M.cols_)
      throw InvalidInput("matrix rows have different lengths");
    for (std::size_t j = 0; j < M.cols_; ++j)
      M(i, j) = rows[i][j];
  }
  return M;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVec> &cols) {
  IntMatrix M(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw InvalidInput("column has wrong dimension");
    for (std::size_t i = 0; i < rows; ++i)
      M(i, j) = cols[j][i];
  }
  return M;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    M(i, i) = 1;
  return M;
}

IntVec IntMatrix::column(std::size_t j) const {
  IntVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    v[i] = (*this)(i, j);
  return v;
}

IntVec IntMatrix::row(std::size_t i) const {
  return IntVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

std::vector<IntVec> IntMatrix::columns() const {
  std::vector<IntVec> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    out.push_back(column(j));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      T(j, i) = (*this)(i, j);
  return T;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t> &idx) const {
  IntMatrix M(rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t i = 0; i < rows_; ++i)
      M(i, k) = (*this)(i, idx[k]);
  return M;
}

IntMatrix IntMatrix::operator*(const IntMatrix &o) const {
  if (cols_ != o.rows_)
    throw InvalidInput("matrix product: dimension mismatch");
  IntMatrix P(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int &x = (*this)(i, k);
      if (x == 0)
        continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        P(i, j) += x * o(k, j);
    }
  return P;
}

IntVec IntMatrix::operator*(const IntVec &v) const {
  if (v.size() != cols_)
    throw InvalidInput("matrix-vector product: dimension mismatch");
  IntVec out(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out[i] += (*this)(i, j) * v[j];
  return out;
}

RatVec IntMatrix::operator*(const RatVec &v) const {
  if (v.size() != cols_)
    throw InvalidInput("matrix-vector product: dimension mismatch");
  RatVec out(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out[i] += Rat((*this)(i, j)) * v[j];
  return out;
}

void IntMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t i = 0; i < rows_; ++i)
    std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t j = 0; j < cols_; ++j)
    std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::add_column_multiple(std::size_t a, std::size_t b, const Int &k) {
  if (k == 0)
    return;
  for (std::size_t i = 0; i < rows_; ++i)
    (*this)(i, a) += k * (*this)(i, b);
}

void IntMatrix::add_row_multiple(std::size_t a, std::size_t b, const Int &k) {
  if (k == 0)
    return;
  for (std::size_t j = 0; j < cols_; ++j)
    (*this)(a, j) += k * (*this)(b, j);
}

void IntMatrix::negate_column(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i)
    (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j)
    (*this)(i, j) = -(*this)(i, j);
}

Int floor_div(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int &a, const Int &b) {
  Int r;
  Int m = abs(b);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

HermiteResult hermite_normal_form(const IntMatrix &M) {
  HermiteResult res;
  res.H = M;
  res.U = IntMatrix::identity(M.cols());
  IntMatrix &H = res.H;
  IntMatrix &U = res.U;
  const std::size_t n = M.rows(), m = M.cols();
  std::size_t r = 0;
  for (std::size_t i = 0; i < n && r < m; ++i) {
    for (std::size_t j = r + 1; j < m; ++j) {
      if (H(i, j) == 0)
        continue;
      Int a = H(i, r), b = H(i, j), g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int ag = a / g, bg = b / g;
      // [col_r, col_j] <- [x col_r + y col_j, -bg col_r + ag col_j]
      for (IntMatrix *X : {&H, &U}) {
        for (std::size_t t = 0; t < X->rows(); ++t) {
          Int cr = (*X)(t, r), cj = (*X)(t, j);
          (*X)(t, r) = x * cr + y * cj;
          (*X)(t, j) = -bg * cr + ag * cj;
        }
      }
    }
    if (H(i, r) == 0)
      continue;
    if (H(i, r) < 0) {
      H.negate_column(r);
      U.negate_column(r);
    }
    for (std::size_t c = 0; c < r; ++c) {
      Int q = floor_div(H(i, c), H(i, r));
      if (q != 0) {
        H.add_column_multiple(c, r, -q);
        U.add_column_multiple(c, r, -q);
      }
    }
    res.pivot_rows.push_back(i);
    ++r;
  }
  res.rank = r;
  return res;
}

IntMatrix lattice_basis(const IntMatrix &M) {
  HermiteResult h = hermite_normal_form(M);
  std::vector<std::size_t> idx(h.rank);
  for (std::size_t j = 0; j < h.rank; ++j)
    idx[j] = j;
  return h.H.select_columns(idx);
}

SmithResult smith_normal_form(const IntMatrix &M) {
  SmithResult res;
  res.S = M;
  res.U = IntMatrix::identity(M.rows());
  res.V = IntMatrix::identity(M.cols());
  IntMatrix &S = res.S;
  const std::size_t n = M.rows(), m = M.cols();
  std::size_t t = 0;
  for (; t < std::min(n, m); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = n, pj = m;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < m; ++j)
          if (S(i, j) != 0 && (pi == n || abs(S(i, j)) < abs(S(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == n)
        break;
      S.swap_rows(t, pi);
      res.U.swap_rows(t, pi);
      S.swap_columns(t, pj);
      res.V.swap_columns(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (S(i, t) == 0)
          continue;
        Int q = S(i, t) / S(t, t);
        S.add_row_multiple(i, t, -q);
        res.U.add_row_multiple(i, t, -q);
        if (S(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (S(t, j) == 0)
          continue;
        Int q = S(t, j) / S(t, t);
        S.add_column_multiple(j, t, -q);
        res.V.add_column_multiple(j, t, -q);
        if (S(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // divisibility of the remaining block
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < m; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == n)
        break;
      S.add_row_multiple(t, bad, Int(1));
      res.U.add_row_multiple(t, bad, Int(1));
    }
    if (t >= n || t >= m || S(t, t) == 0)
      break;
    if (S(t, t) < 0) {
      S.negate_row(t);
      res.U.negate_row(t);
    }
  }
  std::size_t r = 0;
  while (r < std::min(n, m) && S(r, r) != 0)
    ++r;
  res.rank = r;
  return res;
}

bool lattice_member(const IntMatrix &gens, const IntVec &v) {
  if (v.size() != gens.rows() && !(gens.cols() == 0))
    throw InvalidInput("lattice_member: dimension mismatch");
  if (gens.cols() == 0)
    return is_zero(v);
  HermiteResult h = hermite_normal_form(gens);
  IntVec w = v;
  for (std::size_t j = 0; j < h.rank; ++j) {
    std::size_t p = h.pivot_rows[j];
    const Int &piv = h.H(p, j);
    if (w[p] % piv != 0)
      return false;
    Int q = w[p] / piv;
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] -= q * h.H(i, j);
  }
  return is_zero(w);
}

bool lattice_member(const std::vector<IntVec> &basis, const IntVec &v) {
  for (const auto &b : basis)
    if (b.size() != v.size())
      throw InvalidInput("lattice_member: dimension mismatch");
  if (basis.empty())
    return is_zero(v);
  return lattice_member(IntMatrix::from_columns(v.size(), basis), v);
}

namespace {
// Inverse of a unimodular matrix by solving over the rationals.
IntMatrix unimodular_inverse(const IntMatrix &U) {
  const std::size_t n = U.rows();
  IntMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVec e(n, Rat(0));
    e[j] = 1;
    auto x = rational_solve(U, e);
    for (std::size_t i = 0; i < n; ++i)
      inv(i, j) = (*x)[i].get_num();
  }
  return inv;
}
} // namespace

Int LatticeQuotient::torsion_order() const {
  Int o = 1;
  for (const auto &d : torsion)
    o *= d;
  return o;
}

IntVec LatticeQuotient::project(const IntVec &v) const {
  IntVec q = projection * v;
  for (std::size_t k = 0; k < torsion.size(); ++k)
    q[k] = mod_floor(q[k], torsion[k]);
  return q;
}

RatVec LatticeQuotient::project(const RatVec &v) const { return projection * v; }

IntVec LatticeQuotient::section(const IntVec &q) const { return section_map * q; }

LatticeQuotient quotient(const IntMatrix &B) {
  const std::size_t n = B.rows();
  LatticeQuotient Q;
  Q.ambient_rank = n;
  SmithResult s = smith_normal_form(B);
  IntMatrix Uinv = unimodular_inverse(s.U);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.S(i, i) != 1) {
      Q.torsion.push_back(s.S(i, i));
      rows.push_back(i);
    }
  for (std::size_t i = s.rank; i < n; ++i)
    rows.push_back(i);
  Q.free_rank = n - s.rank;
  Q.projection = IntMatrix(rows.size(), n);
  Q.section_map = IntMatrix(n, rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) {
      Q.projection(k, j) = s.U(rows[k], j);
      Q.section_map(j, k) = Uinv(j, rows[k]);
    }
  return Q;
}

LatticeQuotient quotient(std::size_t n, const std::vector<IntVec> &B) {
  for (const auto &b : B)
    if (b.size() != n)
      throw InvalidInput("quotient: dimension mismatch");
  return quotient(IntMatrix::from_columns(n, B));
}

std::optional<RatVec> rational_solve(const IntMatrix &M, const RatVec &b) {
  const std::size_t n = M.rows(), m = M.cols();
  if (b.size() != n)
    throw InvalidInput("rational_solve: dimension mismatch");
  std::vector<RatVec> a(n, RatVec(m + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      a[i][j] = M(i, j);
    a[i][m] = b[i];
  }
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t j = 0; j < m && r < n; ++j) {
    std::size_t p = r;
    while (p < n && a[p][j] == 0)
      ++p;
    if (p == n)
      continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][j];
    for (std::size_t k = j; k <= m; ++k)
      a[r][k] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][j] == 0)
        continue;
      Rat f = a[i][j];
      for (std::size_t k = j; k <= m; ++k)
        a[i][k] -= f * a[r][k];
    }
    pivcol.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (a[i][m] != 0)
      return std::nullopt;
  RatVec x(m, Rat(0));
  for (std::size_t k = 0; k < r; ++k)
    x[pivcol[k]] = a[k][m];
  return x;
}

std::size_t rank(const IntMatrix &M) {
  if (M.empty())
    return 0;
  return hermite_normal_form(M).rank;
}

std::vector<IntVec> integer_kernel(const IntMatrix &M) {
  std::vector<IntVec> out;
  if (M.cols() == 0)
    return out;
  if (M.rows() == 0) {
    IntMatrix I = IntMatrix::identity(M.cols());
    return I.columns();
  }
  HermiteResult h = hermite_normal_form(M);
  for (std::size_t j = h.rank; j < M.cols(); ++j)
    out.push_back(h.U.column(j));
  return out;
}

std::size_t rank(const std::vector<IntVec> &vecs, std::size_t dim) {
  if (vecs.empty())
    return 0;
  return rank(IntMatrix::from_columns(dim, vecs));
}

Int determinant(IntMatrix M) {
  // Bareiss fraction-free elimination
  const std::size_t n = M.rows();
  if (n == 0)
    return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

IntVec cofactor_normal(const std::vector<IntVec> &vecs, std::size_t d) {
  if (vecs.size() + 1 != d)
    throw InvalidInput("cofactor_normal needs d-1 vectors");
  IntVec w(d);
  for (std::size_t j = 0; j < d; ++j) {
    IntMatrix minor(d - 1, d - 1);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      std::size_t c = 0;
      for (std::size_t k = 0; k < d; ++k)
        if (k != j)
          minor(i, c++) = vecs[i][k];
    }
    Int det = determinant(minor);
    w[j] = (j % 2 == 0) ? det : Int(-det);
  }
  return w;
}

Int dot(const IntVec &a, const IntVec &b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

Rat dot(const IntVec &a, const RatVec &b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += Rat(a[i]) * b[i];
  return s;
}

Int content(const IntVec &v) {
  Int g = 0;
  for (const auto &x : v)
    g = gcd(g, x);
  return g;
}

bool is_zero(const IntVec &v) {
  return std::all_of(v.begin(), v.end(), [](const Int &x) { return x == 0; });
}

bool is_integral(const RatVec &v) {
  return std::all_of(v.begin(), v.end(), [](const Rat &x) { return x.get_den() == 1; });
}

IntVec to_int(const RatVec &v) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1)
      throw InvalidInput("expected an integral vector");
    out[i] = v[i].get_num();
  }
  return out;
}

RatVec to_rat(const IntVec &v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = v[i];
  return out;
}

Int lcm_of_denominators(const RatVec &v) {
  Int l = 1;
  for (const auto &x : v)
    l = lcm(l, Int(x.get_den()));
  return l;
}

IntVec add(const IntVec &a, const IntVec &b) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] + b[i];
  return c;
}

IntVec sub(const IntVec &a, const IntVec &b) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] - b[i];
  return c;
}

IntVec scale(const IntVec &a, const Int &k) {
  IntVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] * k;
  return c;
}

RatVec add(const RatVec &a, const RatVec &b) {
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] + b[i];
  return c;
}

RatVec sub(const RatVec &a, const RatVec &b) {
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] - b[i];
  return c;
}

RatVec reduce_modulo(const IntMatrix &gens, const RatVec &v) {
  if (gens.cols() == 0)
    return v;
  if (gens.rows() != v.size())
    throw InvalidInput("reduce_modulo: dimension mismatch");
  HermiteResult h = hermite_normal_form(gens);
  RatVec w = v;
  for (std::size_t j = 0; j < h.rank; ++j) {
    std::size_t p = h.pivot_rows[j];
    Rat ratio = w[p] / Rat(h.H(p, j));
    Int q = floor_div(ratio.get_num(), ratio.get_den());
    if (q == 0)
      continue;
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] -= Rat(q * h.H(i, j));
  }
  return w;
}

IntVec reduce_modulo(const IntMatrix &gens, const IntVec &v) {
  return to_int(reduce_modulo(gens, to_rat(v)));
}

Rat parse_rational(const std::string &raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(c);
  auto digits = [](const std::string &t, std::size_t from, std::size_t to) {
    if (from >= to)
      return false;
    for (std::size_t i = from; i < to; ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i])))
        return false;
    return true;
  };
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  std::size_t slash = s.find('/');
  bool ok = slash == std::string::npos ? digits(s, start, s.size())
                                       : digits(s, start, slash) && digits(s, slash + 1, s.size());
  if (!ok)
    throw InvalidInput("not a rational number: '" + raw + "'");
  if (s[0] == '+')
    s.erase(0, 1);
  Rat q;
  if (slash == std::string::npos) {
    q = Rat(Int(s));
  } else {
    slash = s.find('/');
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0)
      throw InvalidInput("zero denominator in '" + raw + "'");
    q = Rat(num, den);
    q.canonicalize();
  }
  return q;
}

std::string to_string(const Rat &q) {
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Int &z) { return z.get_str(); }

} // namespace gkz

#include "gkz/resonance.hpp"

#include <sstream>

namespace gkz {

namespace {

std::string vec_string(const IntVec &v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

std::string set_string(const IndexSet &s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i)
    os << (i ? "," : "") << s[i];
  os << "}";
  return os.str();
}

bool integral(const Rat &x) { return x.get_den() == 1; }

Int ceil_rat(const Rat &x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int floor_rat(const Rat &x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

} // namespace

RegionSet parse_region_set(const std::string &name) {
  if (name == "res")
    return RegionSet::Res;
  if (name == "sres")
    return RegionSet::Sres;
  if (name == "dres")
    return RegionSet::Dres;
  if (name == "wres")
    return RegionSet::Wres;
  if (name == "SRes")
    return RegionSet::SRes;
  if (name == "DRes")
    return RegionSet::DRes;
  throw InvalidInput("unknown set '" + name + "' (expected res, sres, dres, wres, SRes or DRes)");
}

std::string to_string(RegionSet s) {
  switch (s) {
  case RegionSet::Res:
    return "res";
  case RegionSet::Sres:
    return "sres";
  case RegionSet::Dres:
    return "dres";
  case RegionSet::Wres:
    return "wres";
  case RegionSet::SRes:
    return "SRes";
  case RegionSet::DRes:
    return "DRes";
  }
  return "res";
}

ResonanceEngine::ResonanceEngine(Configuration A) : calc_(std::move(A)), normal_(is_normal(calc_.config())) {}

RatVec ResonanceEngine::coords_checked(const RatVec &gamma) const {
  if (gamma.size() != config().n())
    throw InvalidInput("parameter has " + std::to_string(gamma.size()) + " entries, expected " +
                       std::to_string(config().n()));
  RatVec g = gamma;
  for (auto &x : g)
    x.canonicalize();
  auto c = config().coords(g);
  if (!c)
    throw InvalidInput("parameter is not in the rational span of the columns");
  return *c;
}

ResonanceProfile ResonanceEngine::classify(const RatVec &gamma) const {
  RatVec c = coords_checked(gamma);
  ResonanceProfile p;
  for (std::size_t k = 0; k < config().facets().size(); ++k) {
    Rat v = config().facet_value(k, c);
    if (integral(v)) {
      p.nonresonant = false;
      p.resonant_facets.push_back(k);
      if (v != 0)
        p.weak = false;
      if (v < 0)
        p.semi = false;
    }
    p.facet_values.push_back(v);
  }
  return p;
}

bool ResonanceEngine::in_res(const RatVec &gamma) const { return !classify(gamma).nonresonant; }

bool ResonanceEngine::in_SRes(const RatVec &gamma) const {
  for (const auto &v : classify(gamma).facet_values)
    if (integral(v) && v < 0)
      return true;
  return false;
}

bool ResonanceEngine::in_DRes(const RatVec &gamma) const {
  for (const auto &v : classify(gamma).facet_values)
    if (integral(v) && v > 0)
      return true;
  return false;
}

// gamma is in sres iff some ZF-class of (gamma + QF) cap ZA misses NA + ZF;
// then t^{m a_A} kills the corresponding local cohomology class for the
// least m that pushes the class into NA + ZF.
Verdict ResonanceEngine::in_sres(const RatVec &gamma) const {
  RatVec g = coords_checked(gamma);
  const auto &faces = config().faces();
  const IntVec &aA = config().sum_coords();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (const auto &z : calc_.classes(f, g)) {
      if (calc_.in_semigroup_mod(f, z))
        continue;
      auto shifted = [&](const Int &j) { return calc_.in_semigroup_mod(f, add(z, scale(aA, j))); };
      // membership is monotone in j since a_A is in NA
      Int hi = 1;
      while (!shifted(hi)) {
        hi *= 2;
        if (hi > Int(1) << 40)
          throw LimitExceeded("interior shift search did not terminate");
      }
      Int lo = hi / 2; // shifted(lo) false unless lo == 0
      while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (shifted(mid))
          hi = mid;
        else
          lo = mid;
      }
      std::ostringstream w;
      w << "m=" << hi.get_str() << " face=" << set_string(faces[f].indices)
        << " b=" << vec_string(config().ambient(add(z, scale(aA, hi))));
      return Verdict::yes(w.str());
    }
  }
  return Verdict::no();
}

std::size_t ResonanceEngine::default_K_max(const RatVec &gamma) const {
  auto p = classify(gamma);
  Rat maxpos = 0, sumpos = 0;
  for (const auto &v : p.facet_values)
    if (v > 0) {
      if (v > maxpos)
        maxpos = v;
      sumpos += v;
    }
  Int k = 2;
  k = std::max(k, Int(ceil_rat(maxpos) + 2));
  k = std::max(k, Int(floor_rat(sumpos) + 1));
  if (!k.fits_ulong_p())
    throw LimitExceeded("K_max too large");
  return k.get_ui();
}

// gamma is in dres iff for some proper face F and ZF-class of
// (gamma + QF) cap ZA, the class meets deg(I_i) for an i < codim F and
// misses the k-fold sumset for some k >= 2.  Summands have h_F >= 1 there,
// so k = h_F(class) + 1 always misses; K_max at least that is exhaustive.
Verdict ResonanceEngine::in_dres(const RatVec &gamma, const DresBounds &b) const {
  RatVec g = coords_checked(gamma);
  if (b.K_max && *b.K_max < 2)
    throw InvalidInput("K_max must be at least 2");
  if (b.W && *b.W < 0)
    throw InvalidInput("W must be nonnegative");
  if (normal() && b.normal_shortcut) {
    if (in_DRes(gamma))
      return Verdict::yes("normal configuration: a facet value is a positive integer");
    return Verdict::no();
  }
  const std::size_t K = b.K_max ? *b.K_max : default_K_max(gamma);
  const auto &faces = config().faces();
  bool truncated = false;
  for (std::size_t f = 1; f < faces.size(); ++f) {
    const std::size_t cod = faces[f].codim;
    for (const auto &z : calc_.classes(f, g)) {
      if (!calc_.in_semigroup_mod(f, z))
        continue;
      std::size_t i0 = faces[calc_.class_hull(f, z)].codim;
      if (i0 >= cod)
        continue;
      Int need = calc_.height(f, z) + 1;
      std::size_t kmax = K;
      if (need.fits_ulong_p() && need.get_ui() < kmax)
        kmax = std::max<std::size_t>(2, need.get_ui());
      else if (!need.fits_ulong_p() || need.get_ui() > K)
        truncated = true;
      for (std::size_t i = i0; i < cod; ++i)
        for (std::size_t k = 2; k <= kmax; ++k)
          if (!calc_.sumset_contains(f, i, k, z)) {
            std::ostringstream w;
            w << "i=" << i << " k=" << k << " face=" << set_string(faces[f].indices)
              << " b=" << vec_string(config().ambient(z));
            return Verdict::yes(w.str());
          }
    }
  }
  if (!truncated)
    return Verdict::no();
  Verdict v{Truth::FalseUpToBounds, {}, {}};
  v.bounds["K_max"] = std::to_string(K);
  if (b.W)
    v.bounds["W"] = b.W->get_str();
  return v;
}

Verdict ResonanceEngine::in_wres(const RatVec &gamma, const DresBounds &b) const {
  return verdict_or(in_sres(gamma), in_dres(gamma, b));
}

Verdict ResonanceEngine::in_set(RegionSet s, const RatVec &gamma, const DresBounds &b) const {
  auto flag = [](bool x) { return x ? Verdict::yes() : Verdict::no(); };
  switch (s) {
  case RegionSet::Res:
    return flag(in_res(gamma));
  case RegionSet::Sres:
    return in_sres(gamma);
  case RegionSet::Dres:
    return in_dres(gamma, b);
  case RegionSet::Wres:
    return in_wres(gamma, b);
  case RegionSet::SRes:
    return flag(in_SRes(gamma));
  case RegionSet::DRes:
    return flag(in_DRes(gamma));
  }
  throw InvalidInput("unsupported set");
}

RegionGrid ResonanceEngine::region_scan(RegionSet s, const std::vector<std::pair<Rat, Rat>> &box, const Rat &step,
                                        const DresBounds &b) const {
  if (box.size() != config().n())
    throw InvalidInput("box has " + std::to_string(box.size()) + " axes, expected " + std::to_string(config().n()));
  if (step <= 0)
    throw InvalidInput("step must be positive");
  RegionGrid grid;
  grid.set = s;
  grid.box = box;
  grid.step = step;
  Int total = 1;
  std::vector<RatVec> axes;
  for (const auto &[lo, hi] : box) {
    RatVec ax;
    if (lo <= hi) {
      Int cnt = floor_rat((hi - lo) / step) + 1;
      total *= cnt;
      if (total > budget())
        throw LimitExceeded("grid has too many points");
      for (Int k = 0; k < cnt; ++k)
        ax.push_back(lo + Rat(k) * step);
    } else {
      total = 0;
    }
    grid.shape.push_back(ax.size());
    axes.push_back(std::move(ax));
  }
  if (total == 0)
    return grid;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    GridCell cell;
    for (std::size_t a = 0; a < axes.size(); ++a)
      cell.point.push_back(axes[a][idx[a]]);
    if (config().coords(cell.point))
      cell.verdict = in_set(s, cell.point, b);
    grid.cells.push_back(std::move(cell));
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].size())
        break;
      idx[a] = 0;
      if (a == 0)
        return grid;
    }
    if (axes.empty())
      return grid;
  }
}

ResonanceProfile classify(const Configuration &A, const RatVec &gamma) { return ResonanceEngine(A).classify(gamma); }
bool in_res(const Configuration &A, const RatVec &gamma) { return ResonanceEngine(A).in_res(gamma); }
Verdict in_sres(const Configuration &A, const RatVec &gamma) { return ResonanceEngine(A).in_sres(gamma); }
Verdict in_dres(const Configuration &A, const RatVec &gamma, const DresBounds &b) {
  return ResonanceEngine(A).in_dres(gamma, b);
}
Verdict in_wres(const Configuration &A, const RatVec &gamma, const DresBounds &b) {
  return ResonanceEngine(A).in_wres(gamma, b);
}
bool in_SRes(const Configuration &A, const RatVec &gamma) { return ResonanceEngine(A).in_SRes(gamma); }
bool in_DRes(const Configuration &A, const RatVec &gamma) { return ResonanceEngine(A).in_DRes(gamma); }
RegionGrid region_scan(const Configuration &A, RegionSet s, const std::vector<std::pair<Rat, Rat>> &box,
                       const Rat &step, const DresBounds &b) {
  return ResonanceEngine(A).region_scan(s, box, step, b);
}

} // namespace gkz

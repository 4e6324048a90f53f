#include "gkz/commands.hpp"

#include <sstream>

namespace gkz {

namespace {

std::string str(const Rat &q) {
  Rat c = q;
  c.canonicalize();
  return to_string(c);
}

std::string str(const RatVec &v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k)
    s += (k ? "," : "") + str(v[k]);
  return s + ")";
}

std::string str(const IntVec &v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k)
    s += (k ? "," : "") + v[k].get_str();
  return s + ")";
}

std::string str(const IndexSet &f) {
  std::string s = "{";
  for (std::size_t k = 0; k < f.size(); ++k)
    s += (k ? "," : "") + std::to_string(f[k]);
  return s + "}";
}

std::string str(const Verdict &v) {
  std::string s = to_string(v.value);
  if (!v.witness.empty())
    s += "  [" + v.witness + "]";
  return s;
}

std::string str(const LocalSystemClass &c) {
  if (c.trivial())
    return "trivial";
  std::string s = "class " + str(c.canonical);
  s += c.order ? " of order " + c.order->get_str() : " (not in QF)";
  return s;
}

std::string str(const FactorLabel &f) {
  std::string s = "F=" + str(f.cls.face) + " codim " + std::to_string(f.codim) + ", " + str(f.cls);
  if (f.multiplicity > 1)
    s += " x" + std::to_string(f.multiplicity);
  return s;
}

void bounds_line(std::ostringstream &os, const std::map<std::string, std::string> &b) {
  if (b.empty())
    return;
  os << "bounds:";
  for (const auto &[k, v] : b)
    os << " " << k << "=" << v;
  os << "\n";
}

std::string faces_text(const Configuration &A) {
  std::ostringstream os;
  os << "rank " << A.rank() << ", " << A.faces().size() << " faces, " << A.facets().size() << " facets\n";
  for (const auto &F : A.faces())
    os << "  face " << str(F.indices) << "  codim " << F.codim << "\n";
  for (const auto &G : A.facets())
    os << "  facet " << str(G.face.indices) << "  functional " << str(G.l) << "\n";
  os << "minimal face " << str(A.minimal_face().indices) << "\n";
  return os.str();
}

std::string normality_text(const Configuration &A, const NormalityResult &n) {
  std::ostringstream os;
  os << "normal: " << (n.normal ? "yes" : "no") << "\n";
  if (n.hole)
    os << "hole: " << str(*n.hole) << "\n";
  os << "saturation generators:";
  for (const auto &h : saturation_hilbert_basis(A))
    os << " " << str(h);
  os << "\n";
  return os.str();
}

std::string resonance_text(const ResonanceEngine &E, const RatVec &gamma, const DresBounds &b) {
  std::ostringstream os;
  const auto &A = E.config();
  auto p = E.classify(gamma);
  os << "gamma " << str(gamma) << "\n";
  for (std::size_t k = 0; k < p.facet_values.size(); ++k)
    os << "  l_F" << str(A.facets()[k].face.indices) << " = " << str(p.facet_values[k]) << "\n";
  os << "nonresonant: " << (p.nonresonant ? "yes" : "no") << "\n";
  os << "weakly nonresonant: " << (p.weak ? "yes" : "no") << "\n";
  os << "semi-nonresonant: " << (p.semi ? "yes" : "no") << "\n";
  for (RegionSet s : {RegionSet::Res, RegionSet::Sres, RegionSet::Dres, RegionSet::Wres, RegionSet::SRes,
                      RegionSet::DRes})
    os << "in " << to_string(s) << ": " << str(E.in_set(s, gamma, b)) << "\n";
  return os.str();
}

std::string report_text(const FiltrationReport &r) {
  std::ostringstream os;
  const bool dmod = r.side == FiltrationReport::Side::DModule;
  os << (dmod ? "D-module filtration" : "perverse filtration") << ", " << (dmod ? "gamma " : "class ")
     << str(r.gamma) << "\n";
  os << "normal: " << (r.normality.normal ? "yes" : "no");
  if (r.normality.hole)
    os << " (hole " << str(*r.normality.hole) << ")";
  os << "\n";
  for (const auto &l : r.levels) {
    os << "level " << l.i << ":";
    if (l.factors.empty())
      os << " none";
    os << "\n";
    for (const auto &f : l.factors)
      os << "  " << str(f) << "\n";
  }
  os << "certification: " << to_string(r.certification) << "\n";
  os << "simplicial hypothesis: " << (r.simplicial_hypothesis ? "yes" : "no") << "\n";
  if (r.normal_and_weak)
    os << "normal and weakly nonresonant: " << (*r.normal_and_weak ? "yes" : "no") << "\n";
  for (const auto &s : r.statuses)
    os << "status " << s.name << " (" << s.condition << "): " << s.status << "\n";
  if (dmod)
    os << "resonant core " << str(r.core_face) << "\n";
  for (const auto &n : r.numerology)
    os << "level " << n.i << ": " << n.factor_count << " trivial-class factors vs exterior dimension "
       << n.exterior_dimension.get_str() << (n.exceeds ? "  (exceeds)" : "") << "\n";
  bounds_line(os, r.bounds);
  for (const auto &n : r.notes)
    os << "note: " << n << "\n";
  return os.str();
}

std::string comparison_text(const RhComparison &c) {
  std::ostringstream os;
  os << "labels asserted equal: " << (c.asserted ? "yes" : "no") << "\n";
  for (const auto &l : c.levels) {
    os << "level " << l.i << ": " << c.dmod.levels[l.i].factors.size() << " vs "
       << c.perverse.levels[l.i].factors.size() << (l.match ? "  match" : "  differ") << "\n";
    for (const auto &f : l.only_dmod)
      os << "  only D-module: " << str(f) << "\n";
    for (const auto &f : l.only_perverse)
      os << "  only perverse: " << str(f) << "\n";
  }
  os << "all levels match: " << (c.all_match ? "yes" : "no") << "\n";
  for (const auto &n : c.notes)
    os << "note: " << n << "\n";
  return os.str();
}

const RatVec &need(const std::optional<RatVec> &v, const char *what) {
  if (!v)
    throw InvalidInput(std::string("this command needs \"") + what + "\" in the input");
  return *v;
}

} // namespace

std::vector<std::pair<Rat, Rat>> parse_box(const std::string &s) {
  std::vector<std::pair<Rat, Rat>> box;
  std::stringstream ss(s);
  std::string axis;
  while (std::getline(ss, axis, ',')) {
    auto colon = axis.find(':');
    if (colon == std::string::npos)
      throw InvalidInput("box axis \"" + axis + "\" is not of the form lo:hi");
    box.emplace_back(parse_rational(axis.substr(0, colon)), parse_rational(axis.substr(colon + 1)));
  }
  if (box.empty())
    throw InvalidInput("empty box");
  return box;
}

std::string render_grid(const RegionGrid &g) {
  auto sym = [](const GridCell &c) {
    if (!c.verdict)
      return ' ';
    switch (c.verdict->value) {
    case Truth::True:
      return '#';
    case Truth::False:
      return '.';
    default:
      return '?';
    }
  };
  std::ostringstream os;
  os << to_string(g.set) << " on";
  for (const auto &[lo, hi] : g.box)
    os << " [" << str(lo) << "," << str(hi) << "]";
  os << " step " << str(g.step) << "\n";
  if (g.shape.size() == 1) {
    std::string line;
    for (const auto &c : g.cells)
      line += sym(c);
    os << line << "\n";
    os << "true at:";
    for (const auto &c : g.cells)
      if (c.verdict && c.verdict->is_true())
        os << " " << str(c.point[0]);
    os << "\n";
  } else if (g.shape.size() == 2) {
    const std::size_t nx = g.shape[0], ny = g.shape[1];
    for (std::size_t y = ny; y-- > 0;) {
      std::string line;
      for (std::size_t x = 0; x < nx; ++x)
        line += sym(g.cells[x * ny + y]);
      os << line << "  " << str(g.box[1].first + g.step * static_cast<long>(y)) << "\n";
    }
  } else {
    for (const auto &c : g.cells)
      os << str(c.point) << " " << (c.verdict ? to_string(c.verdict->value) : std::string("outside")) << "\n";
  }
  return os.str();
}

bool has_undetermined(const io::json &doc) {
  if (doc.is_string())
    return doc == "false_up_to_bounds";
  if (doc.is_structured())
    for (const auto &x : doc)
      if (has_undetermined(x))
        return true;
  return false;
}

CommandOutput run_command(const CommandRequest &req, const io::InputDocument &in) {
  CommandOutput out;
  Configuration A(in.matrix);
  const std::string &cmd = req.command;
  if (cmd == "faces") {
    out.doc = io::faces(A);
    out.text = faces_text(A);
  } else if (cmd == "normality") {
    auto n = is_normal(A);
    out.doc = io::normality(A, n);
    out.text = normality_text(A, n);
  } else if (cmd == "resonance") {
    ResonanceEngine E(A);
    const RatVec &g = need(in.gamma, "gamma");
    out.doc = io::resonance(E, g, in.bounds);
    out.text = resonance_text(E, g, in.bounds);
  } else if (cmd == "sets") {
    RegionSet s = parse_region_set(req.sub);
    if (req.box.size() != A.n())
      throw InvalidInput("box needs one axis per matrix row");
    if (req.step <= 0)
      throw InvalidInput("step must be positive");
    ResonanceEngine E(A);
    auto g = E.region_scan(s, req.box, req.step, in.bounds);
    out.doc = io::grid(g);
    out.text = render_grid(g);
  } else if (cmd == "factors") {
    if (req.sub == "dmod") {
      auto r = dmod_report(A, need(in.gamma, "gamma"), in.bounds);
      out.doc = io::report(r);
      out.text = report_text(r);
    } else if (req.sub == "perverse") {
      auto r = perverse_report(A, in.character ? *in.character : need(in.gamma, "character"));
      out.doc = io::report(r);
      out.text = report_text(r);
    } else if (req.sub == "compare") {
      auto c = rh_compare(A, need(in.gamma, "gamma"), in.bounds);
      out.doc = io::comparison(c);
      out.text = comparison_text(c);
    } else {
      throw InvalidInput("factors takes dmod, perverse or compare");
    }
  } else if (cmd == "gap-factors") {
    auto ls = gap_factor_candidates(A);
    out.doc = io::gap_factors(A, ls);
    std::ostringstream os;
    os << "advisory candidates (" << ls.size() << "):\n";
    for (const auto &f : ls)
      os << "  " << str(f) << "\n";
    out.text = os.str();
  } else {
    throw InvalidInput("unknown command " + cmd);
  }
  out.undetermined = has_undetermined(out.doc);
  return out;
}

} // namespace gkz

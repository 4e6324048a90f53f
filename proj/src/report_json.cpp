#include "gkz/report_json.hpp"

#include <algorithm>
#include <sstream>

namespace gkz::io {

json rat(const Rat &q) {
  Rat c = q;
  c.canonicalize();
  return to_string(c);
}

json rat_vec(const RatVec &v) {
  json a = json::array();
  for (const auto &x : v)
    a.push_back(rat(x));
  return a;
}

json integer(const Int &z) {
  if (z.fits_slong_p())
    return z.get_si();
  return z.get_str();
}

json int_vec(const IntVec &v) {
  json a = json::array();
  for (const auto &x : v)
    a.push_back(integer(x));
  return a;
}

json matrix(const IntMatrix &M) {
  json a = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i)
    a.push_back(int_vec(M.row(i)));
  return a;
}

json index_set(const IndexSet &s) {
  json a = json::array();
  for (std::size_t k : s)
    a.push_back(k);
  return a;
}

json verdict(const Verdict &v) {
  json j;
  j["verdict"] = to_string(v.value);
  j["bounds"] = json::object();
  for (const auto &[k, val] : v.bounds)
    j["bounds"][k] = val;
  if (!v.witness.empty())
    j["witness"] = v.witness;
  return j;
}

json faces(const Configuration &A) {
  json j;
  j["matrix"] = matrix(A.matrix());
  j["rank"] = A.rank();
  j["lattice_basis"] = matrix(A.lattice_basis());
  json fs = json::array();
  for (const auto &F : A.faces()) {
    json f;
    f["columns"] = index_set(F.indices);
    f["codim"] = F.codim;
    f["rank"] = F.rank;
    f["witness"] = int_vec(F.witness);
    fs.push_back(f);
  }
  j["faces"] = fs;
  json ft = json::array();
  for (const auto &G : A.facets()) {
    json f;
    f["columns"] = index_set(G.face.indices);
    f["functional"] = rat_vec(G.l);
    ft.push_back(f);
  }
  j["facets"] = ft;
  j["minimal_face"] = index_set(A.minimal_face().indices);
  return j;
}

json normality(const Configuration &A, const NormalityResult &n) {
  json j;
  j["matrix"] = matrix(A.matrix());
  j["normal"] = n.normal;
  j["hole"] = n.hole ? int_vec(*n.hole) : json(nullptr);
  json hb = json::array();
  for (const auto &h : saturation_hilbert_basis(A))
    hb.push_back(int_vec(h));
  j["saturation_generators"] = hb;
  j["augmented_matrix"] = matrix(augment(A).matrix());
  return j;
}

json profile(const Configuration &A, const ResonanceProfile &p) {
  json j;
  json vals = json::array();
  for (std::size_t k = 0; k < p.facet_values.size(); ++k) {
    json f;
    f["facet"] = index_set(A.facets()[k].face.indices);
    f["value"] = rat(p.facet_values[k]);
    vals.push_back(f);
  }
  j["facet_values"] = vals;
  j["nonresonant"] = p.nonresonant;
  j["weakly_nonresonant"] = p.weak;
  j["semi_nonresonant"] = p.semi;
  json R = json::array();
  for (std::size_t k : p.resonant_facets)
    R.push_back(index_set(A.facets()[k].face.indices));
  j["resonant_facets"] = R;
  return j;
}

json resonance(const ResonanceEngine &E, const RatVec &gamma, const DresBounds &b) {
  json j;
  j["matrix"] = matrix(E.config().matrix());
  j["gamma"] = rat_vec(gamma);
  j["normal"] = E.normal();
  j["profile"] = profile(E.config(), E.classify(gamma));
  json m;
  for (RegionSet s : {RegionSet::Res, RegionSet::Sres, RegionSet::Dres, RegionSet::Wres, RegionSet::SRes,
                      RegionSet::DRes})
    m[to_string(s)] = verdict(E.in_set(s, gamma, b));
  j["membership"] = m;
  j["K_max"] = b.K_max ? *b.K_max : E.default_K_max(gamma);
  return j;
}

json grid(const RegionGrid &g) {
  json j;
  j["set"] = to_string(g.set);
  json box = json::array();
  for (const auto &[lo, hi] : g.box)
    box.push_back(json::array({rat(lo), rat(hi)}));
  j["box"] = box;
  j["step"] = rat(g.step);
  j["shape"] = g.shape;
  json cells = json::array();
  for (const auto &c : g.cells) {
    json cell;
    cell["point"] = rat_vec(c.point);
    cell["result"] = c.verdict ? verdict(*c.verdict) : json(nullptr);
    cells.push_back(cell);
  }
  j["cells"] = cells;
  return j;
}

json local_system(const LocalSystemClass &c) {
  json j;
  j["face"] = index_set(c.face);
  j["representative"] = rat_vec(c.representative);
  j["canonical"] = rat_vec(c.canonical);
  j["order"] = c.order ? integer(*c.order) : json("infinite");
  j["trivial"] = c.trivial();
  return j;
}

json label(const FactorLabel &f) {
  json j;
  j["codim"] = f.codim;
  j["face"] = index_set(f.cls.face);
  j["class"] = local_system(f.cls);
  j["multiplicity"] = f.multiplicity;
  return j;
}

namespace {

json levels(const std::vector<LevelFactors> &lv) {
  json a = json::array();
  for (const auto &l : lv) {
    json x;
    x["i"] = l.i;
    json fs = json::array();
    for (const auto &f : l.factors)
      fs.push_back(label(f));
    x["factors"] = fs;
    a.push_back(x);
  }
  return a;
}

json labels(const std::vector<FactorLabel> &v) {
  json a = json::array();
  for (const auto &f : v)
    a.push_back(label(f));
  return a;
}

} // namespace

json report(const FiltrationReport &r) {
  json j;
  const bool dmod = r.side == FiltrationReport::Side::DModule;
  j["side"] = dmod ? "dmod" : "perverse";
  j["matrix"] = matrix(r.matrix);
  j[dmod ? "gamma" : "character"] = rat_vec(r.gamma);
  j["ambient_class"] = local_system(r.ambient_class);
  j["levels"] = levels(r.levels);
  j["normal"] = r.normality.normal;
  j["hole"] = r.normality.hole ? int_vec(*r.normality.hole) : json(nullptr);
  json hf = json::array();
  for (const auto &f : r.hypothesis_facets)
    hf.push_back(index_set(f));
  json hyp;
  hyp["facets"] = hf;
  hyp["simplicial_family"] = r.simplicial_hypothesis;
  if (r.normal_and_weak)
    hyp["normal_and_weakly_nonresonant"] = *r.normal_and_weak;
  j["hypotheses"] = hyp;
  j["certification"] = to_string(r.certification);
  if (r.profile) {
    // the profile needs facet names; rebuild them from the matrix
    Configuration A(r.matrix);
    j["profile"] = profile(A, *r.profile);
  }
  if (dmod) {
    json st = json::array();
    for (const auto &s : r.statuses) {
      json x;
      x["name"] = s.name;
      x["condition"] = s.condition;
      x["membership"] = to_string(s.membership);
      x["status"] = s.status;
      x["consequence"] = s.consequence;
      st.push_back(x);
    }
    j["statuses"] = st;
    json core;
    core["face"] = index_set(r.core_face);
    core["contains_every_factor_face"] = r.core_containment.value_or(true);
    j["resonant_core"] = core;
  } else {
    json nm = json::array();
    for (const auto &n : r.numerology) {
      json x;
      x["i"] = n.i;
      x["factor_count"] = n.factor_count;
      x["exterior_dimension"] = integer(n.exterior_dimension);
      x["exceeds"] = n.exceeds;
      nm.push_back(x);
    }
    j["numerology"] = nm;
    j["numerology_flags_non_isomorphism"] = r.numerology_flags_non_isomorphism;
  }
  j["bounds"] = r.bounds;
  j["notes"] = r.notes;
  return j;
}

json comparison(const RhComparison &c) {
  json j;
  j["dmod"] = report(c.dmod);
  j["perverse"] = report(c.perverse);
  j["asserted"] = c.asserted;
  j["all_match"] = c.all_match;
  json lv = json::array();
  for (const auto &l : c.levels) {
    json x;
    x["i"] = l.i;
    x["match"] = l.match;
    x["dmod_count"] = c.dmod.levels[l.i].factors.size();
    x["perverse_count"] = c.perverse.levels[l.i].factors.size();
    x["only_dmod"] = labels(l.only_dmod);
    x["only_perverse"] = labels(l.only_perverse);
    lv.push_back(x);
  }
  j["levels"] = lv;
  j["notes"] = c.notes;
  return j;
}

json gap_factors(const Configuration &A, const std::vector<FactorLabel> &ls) {
  json j;
  j["matrix"] = matrix(A.matrix());
  j["advisory"] = true;
  j["candidates"] = labels(ls);
  j["note"] = "candidates for extra subquotients of W_0(A, 0) read off the gap between the saturation and NA; "
              "not a proven classification";
  return j;
}

namespace {

Truth read_truth(const std::string &s) {
  if (s == "true")
    return Truth::True;
  if (s == "false")
    return Truth::False;
  if (s == "false_up_to_bounds")
    return Truth::FalseUpToBounds;
  throw InvalidInput("unknown verdict " + s);
}

IndexSet read_index_set(const json &j) { return j.get<IndexSet>(); }

IntVec read_int_vec(const json &j) {
  IntVec v;
  for (const auto &x : j)
    v.push_back(parse_int(x));
  return v;
}

IntMatrix read_matrix(const json &j) {
  std::vector<IntVec> rows;
  for (const auto &r : j)
    rows.push_back(read_int_vec(r));
  return IntMatrix::from_rows(rows);
}

std::vector<LevelFactors> read_levels(const json &j) {
  std::vector<LevelFactors> out;
  for (const auto &x : j) {
    LevelFactors l;
    l.i = x.at("i").get<std::size_t>();
    for (const auto &f : x.at("factors"))
      l.factors.push_back(read_label(f));
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<FactorLabel> read_labels(const json &j) {
  std::vector<FactorLabel> out;
  for (const auto &f : j)
    out.push_back(read_label(f));
  return out;
}

} // namespace

Verdict read_verdict(const json &j) {
  Verdict v;
  v.value = read_truth(j.at("verdict").get<std::string>());
  v.bounds = j.at("bounds").get<std::map<std::string, std::string>>();
  if (j.contains("witness"))
    v.witness = j.at("witness").get<std::string>();
  return v;
}

RegionGrid read_grid(const json &j) {
  RegionGrid g;
  g.set = parse_region_set(j.at("set").get<std::string>());
  for (const auto &b : j.at("box"))
    g.box.emplace_back(parse_rat(b.at(0)), parse_rat(b.at(1)));
  g.step = parse_rat(j.at("step"));
  g.shape = j.at("shape").get<std::vector<std::size_t>>();
  for (const auto &c : j.at("cells")) {
    GridCell cell;
    cell.point = parse_rat_list(c.at("point"));
    if (!c.at("result").is_null())
      cell.verdict = read_verdict(c.at("result"));
    g.cells.push_back(std::move(cell));
  }
  return g;
}

LocalSystemClass read_local_system(const json &j) {
  LocalSystemClass c;
  c.face = read_index_set(j.at("face"));
  c.representative = parse_rat_list(j.at("representative"));
  c.canonical = parse_rat_list(j.at("canonical"));
  if (j.at("order") != "infinite")
    c.order = parse_int(j.at("order"));
  return c;
}

FactorLabel read_label(const json &j) {
  FactorLabel f;
  f.codim = j.at("codim").get<std::size_t>();
  f.cls = read_local_system(j.at("class"));
  f.multiplicity = j.at("multiplicity").get<std::size_t>();
  return f;
}

FiltrationReport read_report(const json &j) {
  FiltrationReport r;
  const bool dmod = j.at("side") == "dmod";
  r.side = dmod ? FiltrationReport::Side::DModule : FiltrationReport::Side::Perverse;
  r.matrix = read_matrix(j.at("matrix"));
  r.gamma = parse_rat_list(j.at(dmod ? "gamma" : "character"));
  r.ambient_class = read_local_system(j.at("ambient_class"));
  r.levels = read_levels(j.at("levels"));
  r.normality.normal = j.at("normal").get<bool>();
  if (!j.at("hole").is_null())
    r.normality.hole = read_int_vec(j.at("hole"));
  const json &hyp = j.at("hypotheses");
  for (const auto &f : hyp.at("facets"))
    r.hypothesis_facets.push_back(read_index_set(f));
  r.simplicial_hypothesis = hyp.at("simplicial_family").get<bool>();
  if (hyp.contains("normal_and_weakly_nonresonant"))
    r.normal_and_weak = hyp.at("normal_and_weakly_nonresonant").get<bool>();
  const std::string cert = j.at("certification").get<std::string>();
  for (auto c : {Certification::EpimorphismOnly, Certification::Isomorphism, Certification::SemisimpleCertified})
    if (to_string(c) == cert)
      r.certification = c;
  if (j.contains("profile")) {
    const json &p = j.at("profile");
    ResonanceProfile prof;
    std::vector<IndexSet> names;
    for (const auto &fv : p.at("facet_values")) {
      names.push_back(read_index_set(fv.at("facet")));
      prof.facet_values.push_back(parse_rat(fv.at("value")));
    }
    prof.nonresonant = p.at("nonresonant").get<bool>();
    prof.weak = p.at("weakly_nonresonant").get<bool>();
    prof.semi = p.at("semi_nonresonant").get<bool>();
    for (const auto &f : p.at("resonant_facets")) {
      auto it = std::find(names.begin(), names.end(), read_index_set(f));
      if (it == names.end())
        throw InvalidInput("resonant facet missing from the facet list");
      prof.resonant_facets.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    r.profile = prof;
  }
  if (dmod) {
    for (const auto &x : j.at("statuses"))
      r.statuses.push_back({x.at("name"), x.at("condition"), read_truth(x.at("membership")), x.at("status"),
                            x.at("consequence")});
    r.core_face = read_index_set(j.at("resonant_core").at("face"));
    r.core_containment = j.at("resonant_core").at("contains_every_factor_face").get<bool>();
  } else {
    for (const auto &x : j.at("numerology"))
      r.numerology.push_back({x.at("i").get<std::size_t>(), x.at("factor_count").get<std::size_t>(),
                              parse_int(x.at("exterior_dimension")), x.at("exceeds").get<bool>()});
    r.numerology_flags_non_isomorphism = j.at("numerology_flags_non_isomorphism").get<bool>();
  }
  r.bounds = j.at("bounds").get<std::map<std::string, std::string>>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

RhComparison read_comparison(const json &j) {
  RhComparison c;
  c.dmod = read_report(j.at("dmod"));
  c.perverse = read_report(j.at("perverse"));
  c.asserted = j.at("asserted").get<bool>();
  c.all_match = j.at("all_match").get<bool>();
  for (const auto &x : j.at("levels"))
    c.levels.push_back({x.at("i").get<std::size_t>(), read_labels(x.at("only_dmod")),
                        read_labels(x.at("only_perverse")), x.at("match").get<bool>()});
  c.notes = j.at("notes").get<std::vector<std::string>>();
  return c;
}

Rat parse_rat(const json &j) {
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  if (j.is_number_integer())
    return Rat(Int(j.dump()));
  throw InvalidInput("expected a rational as a \"p/q\" string or an integer, got " + j.dump());
}

Int parse_int(const json &j) {
  if (j.is_number_integer())
    return Int(j.dump());
  if (j.is_string()) {
    Rat q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1)
      throw InvalidInput("expected an integer, got " + j.dump());
    return q.get_num();
  }
  throw InvalidInput("expected an integer, got " + j.dump());
}

RatVec parse_rat_list(const json &j) {
  RatVec out;
  if (j.is_string()) {
    std::stringstream ss(j.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ','))
      out.push_back(parse_rational(item));
    return out;
  }
  if (!j.is_array())
    throw InvalidInput("expected a list of rationals");
  for (const auto &x : j)
    out.push_back(parse_rat(x));
  return out;
}

InputDocument parse_input(const json &doc) {
  if (!doc.is_object())
    throw InvalidInput("input must be a JSON object");
  if (!doc.contains("matrix"))
    throw InvalidInput("input needs a \"matrix\" field");
  const json &m = doc.at("matrix");
  if (!m.is_array() || m.empty())
    throw InvalidInput("\"matrix\" must be a nonempty list of rows");
  std::vector<IntVec> rows;
  for (const auto &row : m) {
    if (!row.is_array())
      throw InvalidInput("each matrix row must be a list");
    IntVec r;
    for (const auto &x : row)
      r.push_back(parse_int(x));
    if (!rows.empty() && r.size() != rows.front().size())
      throw InvalidInput("matrix rows have different lengths");
    rows.push_back(std::move(r));
  }
  if (rows.front().empty())
    throw InvalidInput("matrix has no columns");
  InputDocument d;
  d.matrix = IntMatrix::from_rows(rows);
  auto vec_field = [&](const char *name) -> std::optional<RatVec> {
    if (!doc.contains(name) || doc.at(name).is_null())
      return std::nullopt;
    RatVec v = parse_rat_list(doc.at(name));
    if (v.size() != rows.size())
      throw InvalidInput(std::string("\"") + name + "\" must have one entry per matrix row");
    return v;
  };
  d.gamma = vec_field("gamma");
  d.character = vec_field("character");
  if (doc.contains("bounds") && !doc.at("bounds").is_null()) {
    const json &b = doc.at("bounds");
    if (!b.is_object())
      throw InvalidInput("\"bounds\" must be an object");
    if (b.contains("K_max")) {
      Int k = parse_int(b.at("K_max"));
      if (k < 2 || !k.fits_ulong_p())
        throw InvalidInput("K_max must be an integer >= 2");
      d.bounds.K_max = k.get_ui();
    }
    if (b.contains("W")) {
      Int w = parse_int(b.at("W"));
      if (w < 0)
        throw InvalidInput("W must be nonnegative");
      d.bounds.W = w;
    }
    if (b.contains("R")) {
      Int r = parse_int(b.at("R"));
      if (r <= 0)
        throw InvalidInput("R must be positive");
      d.R = r;
    }
  }
  return d;
}

InputDocument parse_input_text(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw InvalidInput(std::string("input is not valid JSON: ") + e.what());
  }
  return parse_input(doc);
}

} // namespace gkz::io

#include "gkz/fixtures.hpp"

#include "gkz/oracle.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace gkz {

namespace {

bool equal_rationals(const io::json &a, const io::json &b) {
  // "2" and 2 denote the same value
  auto num = [](const io::json &x) { return x.is_string() || x.is_number_integer(); };
  if (!num(a) || !num(b))
    return false;
  try {
    return io::parse_rat(a) == io::parse_rat(b);
  } catch (const InvalidInput &) {
    return false;
  }
}

std::string point_key(const RatVec &p) {
  std::string s;
  for (const auto &x : p) {
    Rat c = x;
    c.canonicalize();
    s += to_string(c) + ",";
  }
  return s;
}

std::string step_string(const io::json &j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

CommandRequest request_of(const io::json &check) {
  CommandRequest req;
  req.command = check.at("command").get<std::string>();
  if (check.contains("sub"))
    req.sub = check.at("sub").get<std::string>();
  if (check.contains("set"))
    req.sub = check.at("set").get<std::string>();
  if (check.contains("box"))
    req.box = parse_box(check.at("box").get<std::string>());
  if (check.contains("step"))
    req.step = parse_rational(step_string(check.at("step")));
  return req;
}

void sets_check(const io::json &check, const io::InputDocument &in, const RegionGrid &g, const std::string &path,
                std::vector<std::string> &diffs) {
  if (check.contains("true_points")) {
    std::vector<std::string> want, got;
    for (const auto &p : check.at("true_points"))
      want.push_back(point_key(io::parse_rat_list(p)));
    for (const auto &c : g.cells)
      if (c.verdict && c.verdict->is_true())
        got.push_back(point_key(c.point));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    for (const auto &w : want)
      if (!std::binary_search(got.begin(), got.end(), w))
        diffs.push_back(path + ".true_points: expected (" + w + ") true, got not true");
    for (const auto &x : got)
      if (!std::binary_search(want.begin(), want.end(), x))
        diffs.push_back(path + ".true_points: expected (" + x + ") not true, got true");
  }
  if (check.contains("samples")) {
    ResonanceEngine E{Configuration(in.matrix)};
    std::size_t k = 0;
    for (const auto &s : check.at("samples")) {
      RatVec p = io::parse_rat_list(s.at("point"));
      std::string want = s.at("verdict").get<std::string>();
      Verdict v = E.in_set(g.set, p, in.bounds);
      if (to_string(v.value) != want)
        diffs.push_back(path + ".samples[" + std::to_string(k) + "] (" + point_key(p) + "): expected " + want +
                        ", got " + to_string(v.value));
      ++k;
    }
  }
  if (check.value("oracle", false)) {
    auto bf = oracle::bf_region(in.matrix, to_string(g.set), g.box, g.step);
    for (std::size_t k = 0; k < bf.size(); ++k) {
      const auto &c = g.cells[k];
      bool main_outside = !c.verdict, bf_outside = !bf[k];
      std::string where = path + ".oracle (" + point_key(c.point) + ")";
      if (main_outside != bf_outside)
        diffs.push_back(where + ": expected " + (bf_outside ? "outside" : "inside") + ", got " +
                        (main_outside ? "outside" : "inside"));
      else if (!main_outside && c.verdict->is_true() != *bf[k])
        diffs.push_back(where + ": expected " + (*bf[k] ? "true" : "false") + ", got " +
                        to_string(c.verdict->value));
    }
  }
}

} // namespace

void diff_subset(const io::json &expected, const io::json &actual, const std::string &path,
                 std::vector<std::string> &out) {
  if (expected.is_object()) {
    if (!actual.is_object()) {
      out.push_back(path + ": expected an object, got " + actual.dump());
      return;
    }
    for (const auto &[k, v] : expected.items()) {
      if (!actual.contains(k))
        out.push_back(path + "." + k + ": expected " + v.dump() + ", got nothing");
      else
        diff_subset(v, actual.at(k), path + "." + k, out);
    }
    return;
  }
  if (expected.is_array()) {
    if (!actual.is_array()) {
      out.push_back(path + ": expected an array, got " + actual.dump());
      return;
    }
    if (expected.size() != actual.size()) {
      out.push_back(path + ": expected length " + std::to_string(expected.size()) + ", got " +
                    std::to_string(actual.size()) + " " + actual.dump());
      return;
    }
    for (std::size_t k = 0; k < expected.size(); ++k)
      diff_subset(expected[k], actual[k], path + "[" + std::to_string(k) + "]", out);
    return;
  }
  if (expected != actual && !equal_rationals(expected, actual))
    out.push_back(path + ": expected " + expected.dump() + ", got " + actual.dump());
}

std::string default_fixture_dir() { return GKZ_FIXTURE_DIR; }

FixtureResult run_fixture(const io::json &fixture) {
  FixtureResult r;
  r.name = fixture.value("name", std::string("unnamed"));
  try {
    io::InputDocument in = io::parse_input(fixture.at("input"));
    std::size_t k = 0;
    for (const auto &check : fixture.at("checks")) {
      std::string path = "checks[" + std::to_string(k++) + "]";
      ++r.checks;
      try {
        CommandRequest req = request_of(check);
        CommandOutput out = run_command(req, in);
        if (check.contains("expect"))
          diff_subset(check.at("expect"), out.doc, path + ".expect", r.diffs);
        if (req.command == "sets")
          sets_check(check, in, io::read_grid(out.doc), path, r.diffs);
      } catch (const std::exception &e) {
        r.diffs.push_back(path + ": error " + e.what());
      }
    }
  } catch (const std::exception &e) {
    r.diffs.push_back(std::string("malformed fixture: ") + e.what());
  }
  r.passed = r.diffs.empty();
  return r;
}

std::vector<FixtureResult> run_fixtures(const std::string &dir, const std::string &filter) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json" && e.path().stem().string().find(filter) != std::string::npos)
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<FixtureResult> out;
  for (const auto &f : files) {
    std::ifstream is(f);
    io::json doc;
    try {
      doc = io::json::parse(is);
    } catch (const io::json::parse_error &e) {
      out.push_back({f.stem().string(), false, 0, {std::string("not valid JSON: ") + e.what()}});
      continue;
    }
    out.push_back(run_fixture(doc));
  }
  return out;
}

} // namespace gkz

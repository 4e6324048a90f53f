#include "gkz/fixtures.hpp"
#include "gkz/oracle.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { Ok = 0, Failed = 1, Invalid = 2, Limit = 3, Undetermined = 4 };

std::string read_input(const std::string &path) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f)
      throw gkz::InvalidInput("cannot read " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

void apply_budget_override() {
  const char *b = std::getenv("GKZ_BUDGET");
  if (!b)
    return;
  char *end = nullptr;
  unsigned long long v = std::strtoull(b, &end, 10);
  if (*b == '\0' || *end != '\0' || v == 0)
    throw gkz::InvalidInput("GKZ_BUDGET must be a positive integer");
  gkz::set_budget(static_cast<std::size_t>(v));
}

struct VerifyOptions {
  bool suite = false, fixtures = false;
  std::string filter, dir;
  gkz::oracle::OracleConfig cfg;
};

int run_verify(const VerifyOptions &o, bool as_json) {
  const bool both = !o.suite && !o.fixtures;
  bool ok = true;
  gkz::io::json doc = gkz::io::json::object();
  std::ostringstream text;
  if (o.fixtures || both) {
    auto results = gkz::run_fixtures(o.dir.empty() ? gkz::default_fixture_dir() : o.dir, o.filter);
    gkz::io::json arr = gkz::io::json::array();
    for (const auto &r : results) {
      ok = ok && r.passed;
      arr.push_back({{"name", r.name}, {"passed", r.passed}, {"checks", r.checks}, {"diffs", r.diffs}});
      text << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)\n";
      for (const auto &d : r.diffs)
        text << "  " << d << "\n";
    }
    if (results.empty())
      text << "no fixtures matched\n";
    doc["fixtures"] = arr;
  }
  if (o.suite || both) {
    auto rep = gkz::oracle::property_suite(o.cfg);
    gkz::io::json props = gkz::io::json::array();
    for (const auto &p : rep.properties) {
      props.push_back({{"name", p.name}, {"checked", p.checked}, {"failures", p.failures}});
      text << (p.failures.empty() ? "PASS " : "FAIL ") << p.name << " (" << p.checked << " checked)\n";
      for (const auto &f : p.failures)
        text << "  " << f << "\n";
    }
    for (const auto &n : rep.notes)
      text << "note: " << n << "\n";
    ok = ok && rep.ok();
    doc["suite"] = {{"properties", props}, {"notes", rep.notes}, {"seed", o.cfg.seed}};
  }
  doc["passed"] = ok;
  if (as_json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text.str();
  return ok ? Ok : Failed;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Composition factors of A-hypergeometric systems from the combinatorics of A"};
  app.require_subcommand(1);
  bool as_json = false, strict = false;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_flag("--strict", strict, "exit 4 when a verdict is only false up to bounds");

  gkz::CommandRequest req;
  std::string input, box, step = "1";

  auto with_input = [&](CLI::App *sub) {
    sub->add_option("input", input, "input document (default: standard input)");
    sub->fallthrough();
    return sub;
  };
  for (const char *name : {"faces", "normality", "resonance", "gap-factors"})
    with_input(app.add_subcommand(name, std::string(name) + " of the configuration"));
  auto *sets = app.add_subcommand("sets", "scan a parameter set over a box");
  std::string set_name;
  sets->add_option("name", set_name, "res, sres, dres, wres, SRes or DRes")->required();
  sets->add_option("--box", box, "lo:hi per axis, comma separated")->required();
  sets->add_option("--step", step, "grid step");
  with_input(sets);
  auto *factors = app.add_subcommand("factors", "composition factor labels");
  std::string side;
  factors->add_option("side", side, "dmod, perverse or compare")
      ->required()
      ->check(CLI::IsMember({"dmod", "perverse", "compare"}));
  with_input(factors);

  VerifyOptions vo;
  auto *verify = app.add_subcommand("verify", "run golden fixtures and the oracle property suite");
  verify->fallthrough();
  verify->add_flag("--suite", vo.suite, "oracle property suite");
  verify->add_flag("--fixtures", vo.fixtures, "golden fixtures");
  verify->add_option("--filter", vo.filter, "only fixtures whose name contains this");
  verify->add_option("--dir", vo.dir, "fixture directory");
  verify->add_option("--seed", vo.cfg.seed, "suite seed");
  verify->add_option("--instances", vo.cfg.instances, "random configurations");
  verify->add_option("--queries", vo.cfg.membership_queries, "membership queries");
  verify->add_option("--R", vo.cfg.R, "coefficient box for brute-force membership");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return Invalid;
  }

  try {
    apply_budget_override();
    if (verify->parsed())
      return run_verify(vo, as_json);
    CLI::App *sub = app.get_subcommands().front();
    req.command = sub->get_name();
    if (sets->parsed()) {
      req.sub = set_name;
      req.box = gkz::parse_box(box);
      req.step = gkz::parse_rational(step);
    } else if (factors->parsed()) {
      req.sub = side;
    }
    auto in = gkz::io::parse_input_text(read_input(input));
    auto out = gkz::run_command(req, in);
    if (as_json)
      std::cout << out.doc.dump(2) << "\n";
    else
      std::cout << out.text;
    if (strict && out.undetermined) {
      std::cerr << "undetermined verdict under --strict\n";
      return Undetermined;
    }
    return Ok;
  } catch (const gkz::InvalidInput &e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return Invalid;
  } catch (const gkz::LimitExceeded &e) {
    std::cerr << "computation limit exceeded: " << e.what() << "\n";
    return Limit;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return Failed;
  }
}

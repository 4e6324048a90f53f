// Golden fixtures: an input document plus checks against command output.
//
// A check is either {"command", "sub"?, "box"?, "step"?, "expect"} where
// "expect" must be a sub-document of the output (objects by key subset,
// arrays elementwise with equal length), or a sets check
// {"command": "sets", "set", "box", "step", "true_points"?, "samples"?,
// "oracle"?} comparing grid verdicts, optionally against bf_region.
#pragma once

#include "gkz/commands.hpp"

#include <string>
#include <vector>

namespace gkz {

struct FixtureResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::vector<std::string> diffs;
};

std::string default_fixture_dir();

FixtureResult run_fixture(const io::json &fixture);
// Every *.json in dir whose name contains filter, sorted by name.
std::vector<FixtureResult> run_fixtures(const std::string &dir, const std::string &filter = {});

// Appends "path: expected X, got Y" lines.
void diff_subset(const io::json &expected, const io::json &actual, const std::string &path,
                 std::vector<std::string> &out);

} // namespace gkz

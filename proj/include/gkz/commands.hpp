// Command dispatch shared by the command line tool and the fixture runner.
#pragma once

#include "gkz/report_json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gkz {

struct CommandRequest {
  std::string command; // faces | normality | resonance | sets | factors | gap-factors
  std::string sub;     // set name for sets; dmod | perverse | compare for factors
  std::vector<std::pair<Rat, Rat>> box;
  Rat step = 1;
};

struct CommandOutput {
  io::json doc;
  std::string text;
  bool undetermined = false; // some verdict is false_up_to_bounds
};

// "-6:6" or "-3:3,-2:5/2"; one lo:hi pair per axis.
std::vector<std::pair<Rat, Rat>> parse_box(const std::string &s);

// Throws InvalidInput, LimitExceeded.
CommandOutput run_command(const CommandRequest &req, const io::InputDocument &in);

// '#' true, '.' false, '?' false up to bounds, ' ' outside QA. Rows of a
// two-dimensional grid run from the largest second coordinate down.
std::string render_grid(const RegionGrid &g);

// True when any verdict in the document is only false up to bounds.
bool has_undetermined(const io::json &doc);

} // namespace gkz

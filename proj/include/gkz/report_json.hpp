// JSON input documents and report serialization. Rationals travel as "p/q"
// strings; object keys are sorted, so output is deterministic.
#pragma once

#include "gkz/factors.hpp"

#include "json.hpp"

#include <optional>

namespace gkz::io {

using nlohmann::json;

json rat(const Rat &q);
json rat_vec(const RatVec &v);
json integer(const Int &z); // number when it fits in 64 bits, else a decimal string
json int_vec(const IntVec &v);
json matrix(const IntMatrix &M);
json index_set(const IndexSet &s);

json verdict(const Verdict &v);
json faces(const Configuration &A);
json normality(const Configuration &A, const NormalityResult &n);
json profile(const Configuration &A, const ResonanceProfile &p);
json resonance(const ResonanceEngine &E, const RatVec &gamma, const DresBounds &b);
json grid(const RegionGrid &g);
json local_system(const LocalSystemClass &c);
json label(const FactorLabel &f);
json report(const FiltrationReport &r);
json comparison(const RhComparison &c);
json gap_factors(const Configuration &A, const std::vector<FactorLabel> &labels);

// Decoders for the documents above: read_x(x(v)) reproduces v, so that
// rendering it again gives the same document.
Verdict read_verdict(const json &j);
RegionGrid read_grid(const json &j);
LocalSystemClass read_local_system(const json &j);
FactorLabel read_label(const json &j);
FiltrationReport read_report(const json &j);
RhComparison read_comparison(const json &j);

Rat parse_rat(const json &j);     // "p/q" string or integer number
Int parse_int(const json &j);     // integer number or decimal string
RatVec parse_rat_list(const json &j); // array, or one comma separated string

struct InputDocument {
  IntMatrix matrix;
  std::optional<RatVec> gamma;
  std::optional<RatVec> character;
  DresBounds bounds;
  std::optional<Int> R; // oracle box radius
};

// Throws InvalidInput on malformed documents.
InputDocument parse_input(const json &doc);
InputDocument parse_input_text(const std::string &text);

} // namespace gkz::io

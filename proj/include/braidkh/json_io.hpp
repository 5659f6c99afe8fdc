#pragma once

// JSON and CSV views of the library types, plus the small parsers the
// command line tool needs: braid words given as signed integers, and braid
// specs or whole experiment configs read from JSON files. All emitters
// produce sorted, fully deterministic output.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "braidkh/braid.hpp"
#include "braidkh/khovanov.hpp"
#include "braidkh/rewrite.hpp"
#include "braidkh/ring.hpp"
#include "braidkh/tl.hpp"

namespace braidkh {

using Json = nlohmann::json;

// Polynomials and series become {"exponent": "coefficient"} maps with
// decimal strings on both sides, e.g. q^-1 + q as {"-1":"1","1":"1"}.
Json json_of(const LaurentPoly& p);
Json json_of(const TruncatedSeries& s);

// A matching as its endpoint pairs [min, max], sorted.
Json json_of_matching(const TLMatching& m);

// {"n":2, "terms":[{"matching":[[0,3],[1,2]], "coeff":{...}}, ...]}.
Json json_of(const TLPoly& x);
Json json_of(const TLSeries& x);

Json json_of(const InfiniteBraidSpec& spec);
Json json_of(const ClosureSpec& c);
Json json_of(const ShiftLedger& led);

// {"homology":[{"i":0,"j":1,"rank":1,"torsion":[]}, ...]} sorted by (i, j);
// torsion orders are decimal strings.
Json json_of(const BigradedHomology& h);

Json json_of(const HomologyStabilizationReport& r);
// Rank histories as a matrix: one row per (side, i, j), one column per
// prefix length.
std::string csv_of(const HomologyStabilizationReport& r);

// Signed generator letters separated by whitespace or commas, k for sigma_k
// and -k for its inverse. Throws std::invalid_argument naming the bad token
// and its character position.
BraidWord parse_word(const std::string& text);

// {"n":3,"kind":"periodic","base":[1,2,2,1,2]}, {"n":2,"kind":"random",
// "seed":7} or {"n":4,"kind":"torus"}, each with an optional "prefix".
InfiniteBraidSpec spec_from_json(const Json& j);

// "trace" or an explicit top-to-bottom pairing array.
ClosureSpec closure_from_json(const Json& j);

Coefficients coefficients_from_string(const std::string& name);
std::string to_string(Coefficients coeffs);

// Everything that pins down one reproducible experiment run.
struct ExperimentConfig {
  std::optional<InfiniteBraidSpec> spec;
  long max_len = 20;
  long order = 12;
  ClosureSpec closure = ClosureSpec::trace();
  Coefficients coefficients = Coefficients::kRationals;
  std::string format = "json";
  std::uint64_t seed = 0;
  int i_max = 2;
  int max_crossings = 20;
};

ExperimentConfig config_from_json(const Json& j);

}  // namespace braidkh

#include "braidkh/json_io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace braidkh {
namespace {

Json exponent_map(const std::vector<std::pair<long, mpz_class>>& terms) {
  Json j = Json::object();
  for (const auto& [exp, coeff] : terms) {
    j[std::to_string(exp)] = coeff.get_str();
  }
  return j;
}

template <typename Elem>
Json json_of_element(const Elem& x) {
  Json terms = Json::array();
  for (const auto& [m, c] : x.terms()) {
    terms.push_back({{"matching", json_of_matching(m)}, {"coeff", json_of(c)}});
  }
  return Json{{"n", x.top()}, {"terms", std::move(terms)}};
}

}  // namespace

Json json_of(const LaurentPoly& p) {
  std::vector<std::pair<long, mpz_class>> terms(p.terms().begin(), p.terms().end());
  return exponent_map(terms);
}

Json json_of(const TruncatedSeries& s) { return exponent_map(s.series_terms()); }

Json json_of_matching(const TLMatching& m) {
  Json pairs = Json::array();
  int points = m.bot() + m.top();
  for (int p = 0; p < points; ++p) {
    if (m.mate(p) > p) pairs.push_back({p, m.mate(p)});
  }
  return pairs;
}

Json json_of(const TLPoly& x) { return json_of_element(x); }

Json json_of(const TLSeries& x) { return json_of_element(x); }

Json json_of(const InfiniteBraidSpec& spec) {
  Json j{{"n", spec.n()}};
  switch (spec.kind()) {
    case InfiniteBraidSpec::Kind::kPeriodic:
      j["kind"] = "periodic";
      j["base"] = spec.base();
      break;
    case InfiniteBraidSpec::Kind::kSeededRandom:
      j["kind"] = "random";
      j["seed"] = spec.seed();
      break;
    case InfiniteBraidSpec::Kind::kTorus:
      j["kind"] = "torus";
      break;
  }
  if (!spec.finite_prefix().empty()) j["prefix"] = spec.finite_prefix();
  return j;
}

Json json_of(const ClosureSpec& c) {
  if (c.is_trace()) return Json("trace");
  return Json(c.pairing());
}

Json json_of(const ShiftLedger& led) {
  Json moves = Json::array();
  for (const auto& m : led.moves) {
    moves.push_back({{"kind", m.kind}, {"at", m.at}});
  }
  return Json{{"s_h", led.s_h}, {"s_q", led.s_q}, {"y", led.y}, {"moves", std::move(moves)}};
}

Json json_of(const BigradedHomology& h) {
  Json cells = Json::array();
  for (const auto& [key, grp] : h.groups) {
    Json torsion = Json::array();
    for (const auto& t : grp.torsion) torsion.push_back(t.get_str());
    cells.push_back({{"i", key.first},
                     {"j", key.second},
                     {"rank", grp.rank},
                     {"torsion", std::move(torsion)}});
  }
  return Json{{"homology", std::move(cells)}};
}

namespace {

Json json_of_side(const std::vector<StabilizationCell>& cells,
                  const std::map<std::pair<int, long>, std::vector<long>>& ranks,
                  bool stabilized) {
  Json jcells = Json::array();
  for (const auto& c : cells) {
    jcells.push_back({{"i", c.i},
                      {"j", c.j},
                      {"stable_rank", c.stable_rank},
                      {"stable_from", c.stable_from},
                      {"stabilized", c.stabilized}});
  }
  Json history = Json::array();
  for (const auto& [key, ranks_at] : ranks) {
    history.push_back({{"i", key.first}, {"j", key.second}, {"ranks", ranks_at}});
  }
  return Json{{"stabilized", stabilized},
              {"cells", std::move(jcells)},
              {"history", std::move(history)}};
}

}  // namespace

Json json_of(const HomologyStabilizationReport& r) {
  return Json{{"max_len", r.max_len},
              {"i_max", r.i_max},
              {"window", r.window},
              {"braid", json_of_side(r.braid_cells, r.braid_ranks, r.braid_stabilized)},
              {"torus", json_of_side(r.torus_cells, r.torus_ranks, r.torus_stabilized)},
              {"tables_match", r.tables_match}};
}

std::string csv_of(const HomologyStabilizationReport& r) {
  std::ostringstream os;
  os << "side,i,j";
  for (long len = 1; len <= r.max_len; ++len) os << ",l" << len;
  os << "\n";
  auto rows = [&](const char* side,
                  const std::map<std::pair<int, long>, std::vector<long>>& ranks) {
    for (const auto& [key, history] : ranks) {
      os << side << "," << key.first << "," << key.second;
      for (long v : history) os << "," << v;
      os << "\n";
    }
  };
  rows("braid", r.braid_ranks);
  rows("torus", r.torus_ranks);
  return os.str();
}

BraidWord parse_word(const std::string& text) {
  BraidWord word;
  size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',') {
      ++pos;
      continue;
    }
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != ',') {
      ++pos;
    }
    std::string token = text.substr(start, pos - start);
    bool ok = !token.empty() && token != "-";
    for (size_t k = (token[0] == '-' ? 1 : 0); k < token.size() && ok; ++k) {
      ok = std::isdigit(static_cast<unsigned char>(token[k]));
    }
    long value = 0;
    if (ok) {
      try {
        value = std::stol(token);
      } catch (const std::out_of_range&) {
        ok = false;
      }
    }
    if (!ok || value == 0 || value > 1'000'000 || value < -1'000'000) {
      throw std::invalid_argument("braid word: bad letter '" + token + "' at position " +
                                  std::to_string(start));
    }
    word.push_back(static_cast<int>(value));
  }
  return word;
}

namespace {

BraidWord word_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array of letters");
  BraidWord w;
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument(std::string(what) + " must hold integer letters");
    }
    w.push_back(v.get<int>());
  }
  return w;
}

}  // namespace

InfiniteBraidSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("spec must be a JSON object");
  if (!j.contains("kind")) throw std::invalid_argument("spec needs a \"kind\"");
  if (!j.contains("n")) throw std::invalid_argument("spec needs a strand count \"n\"");
  std::string kind = j.at("kind").get<std::string>();
  int n = j.at("n").get<int>();
  BraidWord pre;
  if (j.contains("prefix")) pre = word_from_json(j.at("prefix"), "spec prefix");
  if (kind == "periodic") {
    if (!j.contains("base")) throw std::invalid_argument("periodic spec needs a \"base\" word");
    return InfiniteBraidSpec::periodic(n, word_from_json(j.at("base"), "spec base"), pre);
  }
  if (kind == "random") {
    if (!j.contains("seed")) throw std::invalid_argument("random spec needs a \"seed\"");
    return InfiniteBraidSpec::seeded_random(n, j.at("seed").get<std::uint64_t>(), pre);
  }
  if (kind == "torus") return InfiniteBraidSpec::torus(n, pre);
  throw std::invalid_argument("unknown spec kind '" + kind + "'");
}

ClosureSpec closure_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "trace") return ClosureSpec::trace();
    throw std::invalid_argument("closure must be \"trace\" or a pairing array");
  }
  if (j.is_array()) {
    std::vector<int> pairing;
    for (const auto& v : j) pairing.push_back(v.get<int>());
    return ClosureSpec::matched(std::move(pairing));
  }
  throw std::invalid_argument("closure must be \"trace\" or a pairing array");
}

Coefficients coefficients_from_string(const std::string& name) {
  if (name == "q") return Coefficients::kRationals;
  if (name == "z") return Coefficients::kIntegers;
  if (name == "z2") return Coefficients::kZ2;
  throw std::invalid_argument("coefficients must be one of q, z, z2");
}

std::string to_string(Coefficients coeffs) {
  switch (coeffs) {
    case Coefficients::kRationals: return "q";
    case Coefficients::kIntegers: return "z";
    case Coefficients::kZ2: return "z2";
  }
  return "q";
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "spec") {
      cfg.spec = spec_from_json(value);
    } else if (key == "max_len") {
      cfg.max_len = value.get<long>();
    } else if (key == "order") {
      cfg.order = value.get<long>();
    } else if (key == "closure") {
      cfg.closure = closure_from_json(value);
    } else if (key == "coefficients") {
      cfg.coefficients = coefficients_from_string(value.get<std::string>());
    } else if (key == "format") {
      cfg.format = value.get<std::string>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "i_max") {
      cfg.i_max = value.get<int>();
    } else if (key == "max_crossings") {
      cfg.max_crossings = value.get<int>();
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  if (cfg.max_len < 1) throw std::invalid_argument("config max_len must be positive");
  if (cfg.order < 0) throw std::invalid_argument("config order must not be negative");
  return cfg;
}

}  // namespace braidkh

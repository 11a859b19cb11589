#pragma once

// JSON documents for states, boundaries, weights, colorings and reports.
// Needs nlohmann/json (json.hpp) on the include path.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "forms.hpp"
#include "grid.hpp"
#include "toroidal.hpp"
#include "yang_baxter.hpp"

namespace latticeforms {

using Json = nlohmann::ordered_json;

/// Malformed input; the message carries the source name and, for syntax errors, line and column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json parse_json_text(const std::string& text, const std::string& source = "<input>") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    const auto last_nl = text.rfind('\n', upto == 0 ? 0 : upto - 1);
    const std::size_t col = last_nl == std::string::npos || upto == 0 ? upto + 1 : upto - last_nl;
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

namespace detail {

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

inline const Json& require(const Json& doc, const std::string& key) {
  if (!doc.is_object()) throw ParseError("expected a JSON object");
  const auto it = doc.find(key);
  if (it == doc.end()) field_error(key, "missing");
  return *it;
}

inline int require_int(const Json& doc, const std::string& key) {
  const auto& v = require(doc, key);
  if (!v.is_number_integer()) field_error(key, "must be an integer");
  return v.get<int>();
}

inline FieldTag parse_field(const Json& doc) {
  const auto it = doc.find("field");
  if (it == doc.end()) return FieldTag::F2;
  if (!it->is_string()) field_error("field", "must be \"F2\" or \"F3\"");
  const auto s = it->get<std::string>();
  if (s == "F2") return FieldTag::F2;
  if (s == "F3") return FieldTag::F3;
  field_error("field", "must be \"F2\" or \"F3\", got \"" + s + "\"");
}

inline std::vector<std::uint8_t> label_row(const Json& v, const std::string& name, std::size_t expected) {
  if (!v.is_array()) field_error(name, "must be an array");
  if (v.size() != expected)
    field_error(name, "expected length " + std::to_string(expected) + ", got " + std::to_string(v.size()));
  std::vector<std::uint8_t> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long>() < 0 || x.get<long>() > 2) field_error(name, "labels must be 0, 1 or 2");
    out.push_back(static_cast<std::uint8_t>(x.get<int>()));
  }
  return out;
}

inline IndexGrid<std::uint8_t> label_grid(const Json& v, const std::string& name, std::size_t ni, std::size_t nj) {
  if (!v.is_array() || v.size() != ni)
    field_error(name, "expected an array of " + std::to_string(ni) + " rows of length " + std::to_string(nj));
  IndexGrid<std::uint8_t> g(ni, nj);
  for (std::size_t i = 0; i < ni; ++i) {
    const auto row = label_row(v[i], name + "[" + std::to_string(i) + "]", nj);
    for (std::size_t j = 0; j < nj; ++j) g(i + 1, j + 1) = row[j];
  }
  return g;
}

inline Json grid_json(const IndexGrid<std::uint8_t>& g) {
  Json out = Json::array();
  for (std::size_t i = 1; i <= g.extent_i(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 1; j <= g.extent_j(); ++j) row.push_back(g(i, j));
    out.push_back(row);
  }
  return out;
}

inline Json gf3_grid_json(const IndexGrid<GF3>& g) {
  Json out = Json::array();
  for (std::size_t i = 1; i <= g.extent_i(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 1; j <= g.extent_j(); ++j) row.push_back(g(i, j).value());
    out.push_back(row);
  }
  return out;
}

inline GridShape parse_shape(const Json& doc) {
  const int m = require_int(doc, "m"), n = require_int(doc, "n");
  try {
    return GridShape(m, n);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field 'm'/'n': ") + e.what());
  }
}

}  // namespace detail

inline Json to_json(const LatticeState& s) {
  return Json{{"m", s.shape().m()},
              {"n", s.shape().n()},
              {"field", to_string(s.field())},
              {"f", detail::grid_json(s.f_grid())},
              {"g", detail::grid_json(s.g_grid())}};
}

inline LatticeState state_from_json(const Json& doc) {
  const auto shape = detail::parse_shape(doc);
  const auto field = detail::parse_field(doc);
  const auto m = static_cast<std::size_t>(shape.m()), n = static_cast<std::size_t>(shape.n());
  auto f = detail::label_grid(detail::require(doc, "f"), "f", m, n + 1);
  auto g = detail::label_grid(detail::require(doc, "g"), "g", m + 1, n);
  try {
    return LatticeState(shape, field, std::move(f), std::move(g));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline std::string serialize(const LatticeState& s) { return to_json(s).dump(); }
inline LatticeState deserialize(const std::string& text) { return state_from_json(parse_json_text(text)); }

inline Json to_json(const BoundarySpec& b) {
  return Json{{"m", b.shape.m()},         {"n", b.shape.n()},         {"field", to_string(b.field)},
              {"f_bottom", b.f_bottom}, {"f_top", b.f_top},         {"g_left", b.g_left},
              {"g_right", b.g_right}};
}

inline BoundarySpec boundary_from_json(const Json& doc) {
  const auto shape = detail::parse_shape(doc);
  BoundarySpec b(shape, detail::parse_field(doc));
  const auto m = static_cast<std::size_t>(shape.m()), n = static_cast<std::size_t>(shape.n());
  b.f_bottom = detail::label_row(detail::require(doc, "f_bottom"), "f_bottom", m);
  b.f_top = detail::label_row(detail::require(doc, "f_top"), "f_top", m);
  b.g_left = detail::label_row(detail::require(doc, "g_left"), "g_left", n);
  b.g_right = detail::label_row(detail::require(doc, "g_right"), "g_right", n);
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return b;
}

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Json to_json(const VertexWeights& w) {
  Json out = Json::object();
  const auto vals = w.as_array();
  for (std::size_t k = 0; k < 8; ++k) out[weight_names()[k]] = to_string(vals[k]);
  return out;
}

/// Accepts rational strings ("p", "-p", "p/q") or plain integers.
inline VertexWeights weights_from_json(const Json& doc) {
  std::array<Rational, 8> vals;
  for (std::size_t k = 0; k < 8; ++k) {
    const std::string key = weight_names()[k];
    const auto& v = detail::require(doc, key);
    if (v.is_number_integer()) {
      vals[k] = Rational(v.get<long>());
    } else if (v.is_string()) {
      try {
        vals[k] = parse_rational(v.get<std::string>());
      } catch (const std::invalid_argument& e) {
        detail::field_error(key, e.what());
      }
    } else {
      detail::field_error(key, "must be a rational string \"p/q\" or an integer");
    }
  }
  return VertexWeights::from_array(vals);
}

/// Coloring as rows indexed [i][j], column i, row j.
inline Json to_json(const Coloring& c) { return detail::gf3_grid_json(c.cells); }

inline Coloring coloring_from_json(const Json& doc) {
  if (!doc.is_array() || doc.empty() || !doc[0].is_array()) throw ParseError("coloring must be a 2-D array");
  Coloring c(doc.size(), doc[0].size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto row = detail::label_row(doc[i], "coloring[" + std::to_string(i) + "]", doc[0].size());
    for (std::size_t j = 0; j < row.size(); ++j) c(i + 1, j + 1) = GF3(row[j]);
  }
  return c;
}

inline Json to_json(const FiberReport& r) {
  Json fibers = Json::array();
  for (const auto& f : r.fibers) {
    Json rc = Json::array(), sc = Json::array();
    for (auto x : f.r_choices) rc.push_back(x.value());
    for (auto x : f.s_choices) sc.push_back(x.value());
    fibers.push_back(Json{{"h", detail::gf3_grid_json(f.h.values)},
                          {"r_choices", rc},
                          {"s_choices", sc},
                          {"fiber_size", f.states.size()}});
  }
  Json hist = Json::object();
  for (const auto& [size, count] : r.fiber_size_histogram) hist[std::to_string(size)] = count;
  return Json{{"m", r.shape.m()},
              {"n", r.shape.n()},
              {"state_count", r.state_count},
              {"sparse_function_count", r.sparse_function_count},
              {"fiber_size_histogram", hist},
              {"fibers", fibers}};
}

inline Json to_json(const ConditionReport& c) {
  auto minors = [](const std::array<Rational, 6>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
  };
  return Json{{"conditions",
               {{"cond1", c.cond1},
                {"cond2", c.cond2},
                {"cond3_plus", c.cond3_plus},
                {"cond3_minus", c.cond3_minus},
                {"cond4", c.cond4}}},
              {"all_hold", c.all_hold()},
              {"witnesses",
               {{"F_S", to_string(c.F_S)},
                {"F_T", to_string(c.F_T)},
                {"G_1", to_string(c.G_plus)},
                {"G_-1", to_string(c.G_minus)},
                {"alpha_1", to_string(c.alpha_plus)},
                {"alpha_-1", to_string(c.alpha_minus)},
                {"beta_1", to_string(c.beta_plus)},
                {"beta_-1", to_string(c.beta_minus)}}},
              {"minors_i_1", minors(c.minors_plus)},
              {"minors_i_-1", minors(c.minors_minus)}};
}

}  // namespace latticeforms

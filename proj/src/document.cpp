#include "hlmax/document.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace hlmax {

using nlohmann::json;

DocumentError::DocumentError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                              : what),
      line_(line),
      column_(column) {}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Rational parse_value(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw DocumentError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(BigInt(v.dump()));
  throw DocumentError(where + ": value must be a rational string such as \"3/4\"");
}

}  // namespace

GridFunction parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, false);
  } catch (const json::parse_error& e) {
    // byte is one past the offending character
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    if (auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    throw DocumentError("invalid JSON: " + msg, line, col);
  }
  if (!doc.is_object()) throw DocumentError("document must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) throw DocumentError("\"dim\" must be an integer");
  const auto dim = doc["dim"].get<std::int64_t>();
  if (dim < 1 || dim > 64) throw DocumentError("\"dim\" must be between 1 and 64");
  const json support = doc.contains("support") ? doc["support"] : json::array();
  if (!support.is_array()) throw DocumentError("\"support\" must be an array");

  std::vector<std::pair<LatticePoint, Rational>> entries;
  std::set<LatticePoint> seen;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const std::string where = "support[" + std::to_string(i) + "]";
    const json& e = support[i];
    if (!e.is_object() || !e.contains("point") || !e.contains("value")) {
      throw DocumentError(where + ": expected {\"point\": [...], \"value\": \"p/q\"}");
    }
    const json& pt = e["point"];
    if (!pt.is_array() || pt.size() != static_cast<std::size_t>(dim)) {
      throw DocumentError(where + ": point must be an array of " + std::to_string(dim) + " integers");
    }
    std::vector<std::int64_t> coords;
    for (const auto& c : pt) {
      if (!c.is_number_integer()) throw DocumentError(where + ": point coordinates must be integers");
      coords.push_back(c.get<std::int64_t>());
    }
    LatticePoint p(std::move(coords));
    if (!seen.insert(p).second) throw DocumentError(where + ": duplicate point " + p.to_string());
    Rational v = parse_value(e["value"], where);
    if (v == 0) throw DocumentError(where + ": values must be nonzero");
    entries.emplace_back(std::move(p), std::move(v));
  }
  return GridFunction(static_cast<int>(dim), std::move(entries));
}

GridFunction read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string write_document(const GridFunction& f) {
  nlohmann::ordered_json doc;
  doc["dim"] = f.dim();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [p, v] : f.support()) {
    nlohmann::ordered_json e;
    e["point"] = p.coords();
    e["value"] = to_string(v);
    arr.push_back(std::move(e));
  }
  doc["support"] = std::move(arr);
  return doc.dump(2) + "\n";
}

}  // namespace hlmax

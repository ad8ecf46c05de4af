#include "modinv/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "modinv/error.hpp"

namespace modinv {

namespace {

using nlohmann::json;

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_at(const std::string& text, std::size_t byte) {
  Position p;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// nlohmann keeps no source positions for values; point at the key instead.
[[noreturn]] void shape_error(const std::string& text, const std::string& key, const std::string& what) {
  const auto at = text.find("\"" + key + "\"");
  const Position p = at == std::string::npos ? Position{} : position_at(text, at);
  throw ParseError(what, p.line, p.column);
}

std::uint32_t as_uint(const json& v, const std::string& text, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) shape_error(text, key, "\"" + key + "\" must be a non-negative integer");
  return static_cast<std::uint32_t>(v.get<long long>());
}

FieldPtr parse_field(const json& f, const std::string& text) {
  if (!f.is_object() || !f.contains("p")) shape_error(text, "field", "\"field\" must be an object with \"p\"");
  const std::uint32_t p = as_uint(f["p"], text, "p");
  if (p < 2) shape_error(text, "p", "characteristic must be prime");
  const std::uint32_t k = f.contains("k") ? as_uint(f["k"], text, "k") : 1;
  if (k <= 1 && !f.contains("modulus")) {
    try {
      return Field::prime(p);
    } catch (const Error& e) {
      shape_error(text, "p", e.what());
    }
  }
  if (!f.contains("modulus") || !f["modulus"].is_array()) shape_error(text, "field", "extension field needs \"modulus\"");
  std::vector<std::uint32_t> modulus;
  for (const auto& c : f["modulus"]) modulus.push_back(as_uint(c, text, "modulus"));
  if (modulus.size() != k + 1) shape_error(text, "modulus", "\"modulus\" must have k+1 coefficients");
  try {
    return Field::extension(p, modulus);
  } catch (const Error& e) {
    shape_error(text, "modulus", e.what());
  }
}

Elem parse_entry(const json& e, const Field& k, const std::string& text) {
  if (e.is_number_integer()) return k.from_int(e.get<long long>());
  if (!e.is_array()) shape_error(text, "generators", "matrix entry must be an integer or a coefficient list");
  std::vector<std::uint32_t> coeffs;
  for (const auto& c : e) {
    if (!c.is_number_integer()) shape_error(text, "generators", "coefficient must be an integer");
    const long long v = c.get<long long>() % static_cast<long long>(k.characteristic());
    coeffs.push_back(static_cast<std::uint32_t>(v < 0 ? v + k.characteristic() : v));
  }
  if (coeffs.size() > k.degree()) shape_error(text, "generators", "coefficient list longer than the field degree");
  return k.from_coeffs(coeffs);
}

json entry_json(const Field& k, Elem a) {
  if (k.degree() == 1) return k.coeffs(a).empty() ? 0 : k.coeffs(a)[0];
  auto c = k.coeffs(a);
  c.resize(k.degree(), 0);
  return c;
}

json field_json(const Field& k) {
  json f{{"p", k.characteristic()}, {"k", k.degree()}};
  if (k.degree() > 1) f["modulus"] = k.modulus();
  return f;
}

json matrix_json(const Matrix& m, const Field& k) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(entry_json(k, m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Instance parse_instance(const std::string& text, const std::string& label, std::size_t group_cap) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const Position p = position_at(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed JSON", p.line, p.column);
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object", 1, 1);
  for (const char* key : {"field", "n", "generators"})
    if (!doc.contains(key)) throw ParseError(std::string("missing \"") + key + "\"", 1, 1);

  const FieldPtr k = parse_field(doc["field"], text);
  const std::size_t n = as_uint(doc["n"], text, "n");
  if (n == 0) shape_error(text, "n", "\"n\" must be positive");
  const json& gens = doc["generators"];
  if (!gens.is_array()) shape_error(text, "generators", "\"generators\" must be a list of matrices");

  std::vector<Matrix> mats;
  for (const auto& g : gens) {
    if (!g.is_array() || g.size() != n) shape_error(text, "generators", "generator must have n rows");
    Matrix m(k, n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!g[r].is_array() || g[r].size() != n) shape_error(text, "generators", "generator row must have n entries");
      for (std::size_t c = 0; c < n; ++c) m.at(r, c) = parse_entry(g[r][c], *k, text);
    }
    mats.push_back(std::move(m));
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() || doc["labels"].size() != mats.size())
      shape_error(text, "labels", "\"labels\" must name each generator");
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) shape_error(text, "labels", "label must be a string");
      labels.push_back(l.get<std::string>());
    }
  }

  Instance inst;
  inst.label = label;
  if (doc.contains("options")) {
    const json& o = doc["options"];
    if (!o.is_object()) shape_error(text, "options", "\"options\" must be an object");
    if (o.contains("degree_bound")) inst.options.degree_bound = as_uint(o["degree_bound"], text, "degree_bound");
    if (o.contains("slice_cap")) inst.options.slice_cap = as_uint(o["slice_cap"], text, "slice_cap");
    if (o.contains("max_pair_reductions"))
      inst.options.gb.max_pair_reductions = as_uint(o["max_pair_reductions"], text, "max_pair_reductions");
    if (o.contains("group_cap")) inst.group_cap = as_uint(o["group_cap"], text, "group_cap");
  }
  if (group_cap) inst.group_cap = group_cap;
  inst.group = MatrixGroup::generate(k, n, std::move(mats), inst.group_cap, true, std::move(labels));
  return inst;
}

Instance load_instance(const std::string& path, std::size_t group_cap) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str(), path, group_cap);
}

std::string instance_to_json(const MatrixGroup& g, const std::string& label) {
  const Field& k = *g.field();
  json doc{{"field", field_json(k)}, {"n", g.dim()}, {"generators", json::array()}};
  for (const auto& m : g.generators()) doc["generators"].push_back(matrix_json(m, k));
  if (!g.labels().empty()) doc["labels"] = g.labels();
  if (!label.empty()) doc["label"] = label;
  return doc.dump();
}

std::string canonical_serialization(const MatrixGroup& g) {
  const Field& k = *g.field();
  json doc{{"field", field_json(k)}, {"n", g.dim()}, {"elements", json::array()}};
  for (const auto& m : g.elements()) doc["elements"].push_back(matrix_json(m, k));
  return doc.dump();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string instance_hash(const MatrixGroup& g) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(canonical_serialization(g));
  return os.str();
}

}  // namespace modinv

#include "magma/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include <json.hpp>

namespace magma {

namespace {

using nlohmann::json;

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

int parse_int(const Token& token, std::size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.text.data(), token.text.data() + token.text.size(), value);
  if (ec != std::errc() || ptr != token.text.data() + token.text.size()) {
    throw ParseError(ErrorCode::parse_error, line, token.column,
                     "expected an integer, found '" + std::string(token.text) + "'");
  }
  return value;
}

TableDocument load_grid(std::string_view source) {
  TableDocument doc;
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    auto end = source.find('\n', pos);
    if (end == std::string_view::npos) end = source.size();
    ++line_no;
    auto line = source.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos) {
      if (line[first] == '#') {
        auto body = line.substr(first + 1);
        auto text = body.substr(std::min(body.find_first_not_of(' '), body.size()));
        if (text.rfind("name:", 0) == 0 && !doc.name) {
          auto value = text.substr(5);
          auto b = value.find_first_not_of(' ');
          doc.name = std::string(b == std::string_view::npos ? "" : value.substr(b));
        }
      } else {
        lines.emplace_back(line_no, line);
      }
    }
    if (end == source.size()) break;
    pos = end + 1;
  }
  if (lines.empty()) throw ParseError(ErrorCode::parse_error, 1, 1, "empty document");

  auto [header_line, header] = lines.front();
  auto head = split_tokens(header);
  if (head.size() != 3) {
    throw ParseError(ErrorCode::parse_error, header_line, head.empty() ? 1 : head.front().column,
                     "header must be 'n z1 z2'");
  }
  const int n = parse_int(head[0], header_line);
  if (n < 1 || n > kMaxOrder) {
    throw ParseError(ErrorCode::domain_error, header_line, head[0].column,
                     "size " + std::to_string(n) + " outside [1, " + std::to_string(kMaxOrder) + "]");
  }
  doc.z1 = parse_int(head[1], header_line);
  doc.z2 = parse_int(head[2], header_line);
  for (std::size_t k : {1u, 2u}) {
    int z = k == 1 ? doc.z1 : doc.z2;
    if (z < 0 || z >= n) {
      throw ParseError(ErrorCode::domain_error, header_line, head[k].column,
                       "absorber " + std::to_string(z) + " outside [0, " + std::to_string(n) + ")");
    }
  }

  std::vector<Element> cells;
  cells.reserve(static_cast<std::size_t>(n * n));
  for (int row = 0; row < n; ++row) {
    if (static_cast<std::size_t>(row) + 1 >= lines.size()) {
      std::size_t last = lines.back().first;
      throw ParseError(ErrorCode::parse_error, last + 1, 1,
                       "expected " + std::to_string(n) + " rows, found " + std::to_string(row));
    }
    auto [ln, text] = lines[static_cast<std::size_t>(row) + 1];
    auto tokens = split_tokens(text);
    if (tokens.size() != static_cast<std::size_t>(n)) {
      std::size_t col = tokens.size() > static_cast<std::size_t>(n) ? tokens[n].column : text.size() + 1;
      throw ParseError(ErrorCode::parse_error, ln, col,
                       "row " + std::to_string(row) + " has " + std::to_string(tokens.size()) +
                           " entries, expected " + std::to_string(n));
    }
    for (const auto& token : tokens) {
      int v = parse_int(token, ln);
      if (v < 0 || v >= n) {
        throw ParseError(ErrorCode::domain_error, ln, token.column,
                         "entry " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
      }
      cells.push_back(v);
    }
  }
  if (lines.size() > static_cast<std::size_t>(n) + 1) {
    throw ParseError(ErrorCode::parse_error, lines[static_cast<std::size_t>(n) + 1].first, 1,
                     "unexpected content after the last row");
  }
  doc.table = CayleyTable(n, std::move(cells));
  return doc;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view source, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
    if (source[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void field_error(const std::string& message, ErrorCode code = ErrorCode::parse_error) {
  throw ParseError(code, 1, 1, message);
}

int json_int(const json& value, const std::string& what) {
  if (!value.is_number_integer()) field_error(what + " must be an integer");
  return value.get<int>();
}

std::optional<DichotomyStatus> status_from_string(const std::string& s) {
  for (auto st : {DichotomyStatus::holds, DichotomyStatus::empty_core, DichotomyStatus::mixed_element,
                  DichotomyStatus::no_classifier, DichotomyStatus::no_nonclassifier}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::vector<Element> json_elements(const json& value, const std::string& what) {
  if (!value.is_array()) field_error(what + " must be an array");
  std::vector<Element> out;
  for (const auto& v : value) out.push_back(json_int(v, what));
  return out;
}

ExpectedFlags parse_expected(const json& e) {
  if (!e.is_object()) field_error("'expected' must be an object");
  ExpectedFlags f;
  auto flag = [&](const char* key, bool& out) {
    if (!e.contains(key) || !e[key].is_boolean()) field_error(std::string("expected.") + key + " must be a boolean");
    out = e[key].get<bool>();
  };
  flag("R", f.r);
  flag("D", f.d);
  flag("H", f.h);
  if (e.contains("d_status")) {
    if (!e["d_status"].is_string()) field_error("expected.d_status must be a string");
    f.d_status = status_from_string(e["d_status"].get<std::string>());
    if (!f.d_status) field_error("unknown d_status '" + e["d_status"].get<std::string>() + "'");
  }
  if (e.contains("d_violation")) f.d_violation = json_int(e["d_violation"], "expected.d_violation");
  if (e.contains("pairs")) {
    for (const auto& p : e["pairs"]) {
      auto v = json_elements(p, "expected.pairs entry");
      if (v.size() != 2) field_error("expected.pairs entries need two elements");
      f.pairs.emplace_back(v[0], v[1]);
    }
  }
  if (e.contains("triples")) {
    for (const auto& t : e["triples"]) {
      auto v = json_elements(t, "expected.triples entry");
      if (v.size() != 3) field_error("expected.triples entries need three elements");
      f.triples.push_back({v[0], v[1], v[2]});
    }
  }
  if (e.contains("classifiers")) f.classifiers = json_elements(e["classifiers"], "expected.classifiers");
  if (e.contains("nonclassifiers")) f.nonclassifiers = json_elements(e["nonclassifiers"], "expected.nonclassifiers");
  return f;
}

TableDocument load_structured(std::string_view source) {
  json j;
  try {
    j = json::parse(source.begin(), source.end());
  } catch (const json::parse_error& err) {
    auto [line, column] = line_column(source, err.byte > 0 ? err.byte - 1 : 0);
    throw ParseError(ErrorCode::parse_error, line, column, err.what());
  }
  if (!j.is_object()) field_error("document must be an object");
  for (const char* key : {"n", "z1", "z2", "rows"}) {
    if (!j.contains(key)) field_error(std::string("missing field '") + key + "'");
  }
  TableDocument doc;
  const int n = json_int(j["n"], "n");
  if (n < 1 || n > kMaxOrder) field_error("n outside [1, " + std::to_string(kMaxOrder) + "]", ErrorCode::domain_error);
  doc.z1 = json_int(j["z1"], "z1");
  doc.z2 = json_int(j["z2"], "z2");
  if (doc.z1 < 0 || doc.z1 >= n || doc.z2 < 0 || doc.z2 >= n) {
    field_error("absorber outside the carrier", ErrorCode::domain_error);
  }
  const auto& rows = j["rows"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
    field_error("'rows' must hold " + std::to_string(n) + " rows");
  }
  std::vector<Element> cells;
  for (const auto& row : rows) {
    auto values = json_elements(row, "row");
    if (values.size() != static_cast<std::size_t>(n)) field_error("every row needs " + std::to_string(n) + " entries");
    for (int v : values) {
      if (v < 0 || v >= n) field_error("entry " + std::to_string(v) + " out of range", ErrorCode::domain_error);
      cells.push_back(v);
    }
  }
  doc.table = CayleyTable(n, std::move(cells));
  if (j.contains("name")) {
    if (!j["name"].is_string()) field_error("'name' must be a string");
    doc.name = j["name"].get<std::string>();
  }
  if (j.contains("roles")) {
    if (!j["roles"].is_object()) field_error("'roles' must be an object");
    for (const auto& [key, labels] : j["roles"].items()) {
      int element = 0;
      auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), element);
      if (ec != std::errc() || ptr != key.data() + key.size() || element < 0 || element >= n) {
        field_error("role key '" + key + "' is not an element", ErrorCode::domain_error);
      }
      if (!labels.is_array()) field_error("role labels must be an array");
      for (const auto& label : labels) {
        if (!label.is_string()) field_error("role labels must be strings");
        doc.roles[element].push_back(label.get<std::string>());
      }
    }
  }
  if (j.contains("expected")) doc.expected = parse_expected(j["expected"]);
  return doc;
}

std::string int_list(const std::vector<Element>& values) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << values[i];
  out << ']';
  return out.str();
}

std::string expected_block(const ExpectedFlags& e) {
  std::ostringstream out;
  auto b = [](bool v) { return v ? "true" : "false"; };
  out << "{\n    \"R\": " << b(e.r) << ",\n    \"D\": " << b(e.d) << ",\n    \"H\": " << b(e.h);
  if (e.d_status) out << ",\n    \"d_status\": \"" << to_string(*e.d_status) << '"';
  if (e.d_violation) out << ",\n    \"d_violation\": " << *e.d_violation;
  if (!e.pairs.empty()) {
    out << ",\n    \"pairs\": [";
    for (std::size_t i = 0; i < e.pairs.size(); ++i) {
      out << (i ? ", " : "") << int_list({e.pairs[i].first, e.pairs[i].second});
    }
    out << ']';
  }
  if (!e.triples.empty()) {
    out << ",\n    \"triples\": [";
    for (std::size_t i = 0; i < e.triples.size(); ++i) {
      const auto& t = e.triples[i];
      out << (i ? ", " : "") << int_list({t.a, t.b, t.c});
    }
    out << ']';
  }
  if (!e.classifiers.empty()) out << ",\n    \"classifiers\": " << int_list(e.classifiers);
  if (!e.nonclassifiers.empty()) out << ",\n    \"nonclassifiers\": " << int_list(e.nonclassifiers);
  out << "\n  }";
  return out.str();
}

bool contains_label(const std::vector<std::string>& labels, std::string_view label) {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

}  // namespace

TableDocument load_table(std::string_view source) {
  auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && source[first] == '{') return load_structured(source);
  return load_grid(source);
}

std::string save_table(const CayleyTable& table, Element z1, Element z2,
                       const std::optional<std::string>& name) {
  std::ostringstream out;
  if (name) out << "# name: " << *name << '\n';
  out << table.size() << ' ' << z1 << ' ' << z2 << '\n' << format_grid(table);
  return out.str();
}

std::string save_document(const TableDocument& doc) {
  std::ostringstream out;
  out << "{\n";
  if (doc.name) out << "  \"name\": " << json(*doc.name).dump() << ",\n";
  out << "  \"n\": " << doc.table.size() << ",\n";
  out << "  \"z1\": " << doc.z1 << ",\n";
  out << "  \"z2\": " << doc.z2 << ",\n";
  out << "  \"rows\": [\n";
  for (Element a = 0; a < doc.table.size(); ++a) {
    auto row = doc.table.row(a);
    out << "    " << int_list({row.begin(), row.end()}) << (a + 1 < doc.table.size() ? ",\n" : "\n");
  }
  out << "  ]";
  if (!doc.roles.empty()) {
    out << ",\n  \"roles\": {";
    bool first = true;
    for (const auto& [element, labels] : doc.roles) {
      out << (first ? "" : ", ") << '"' << element << "\": [";
      for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? ", " : "") << json(labels[i]).dump();
      out << ']';
      first = false;
    }
    out << '}';
  }
  if (doc.expected) out << ",\n  \"expected\": " << expected_block(*doc.expected);
  out << "\n}\n";
  return out.str();
}

std::string save_document(const NamedWitness& witness) {
  TableDocument doc;
  doc.table = witness.table.table();
  doc.z1 = witness.table.z1();
  doc.z2 = witness.table.z2();
  doc.name = witness.name;
  doc.roles = witness.roles;
  doc.expected = witness.expected;
  return save_document(doc);
}

const NamedWitness* corpus_find(std::string_view name) {
  for (const auto* list : {&corpus_all(), &corpus_derived()}) {
    for (const auto& w : *list) {
      if (w.name == name) return &w;
    }
  }
  return nullptr;
}

std::optional<std::string> compare_expected(const CapabilityReport& report,
                                            const ExpectedFlags& expected) {
  auto yn = [](bool v) { return v ? std::string("holds") : std::string("fails"); };
  if (report.has_r() != expected.r) return "R " + yn(report.has_r()) + ", expected " + yn(expected.r);
  if (report.has_d() != expected.d) return "D " + yn(report.has_d()) + ", expected " + yn(expected.d);
  if (report.has_h() != expected.h) return "H " + yn(report.has_h()) + ", expected " + yn(expected.h);
  if (expected.d_status && report.d.status != *expected.d_status) {
    return "D status " + std::string(to_string(report.d.status)) + ", expected " +
           std::string(to_string(*expected.d_status));
  }
  if (expected.d_violation &&
      (!report.d.violation || report.d.violation->element != *expected.d_violation)) {
    return "dichotomy violation expected at element " + std::to_string(*expected.d_violation);
  }
  for (auto [s, r] : expected.pairs) {
    bool found = std::any_of(report.r_mutual.begin(), report.r_mutual.end(),
                             [&](const RetractionPair& p) { return p.s == s && p.r == r; });
    if (!found) return "retraction pair (" + std::to_string(s) + "," + std::to_string(r) + ") missing";
  }
  for (const auto& t : expected.triples) {
    if (std::find(report.h.begin(), report.h.end(), t) == report.h.end()) {
      return "ICP triple (" + std::to_string(t.a) + "," + std::to_string(t.b) + "," +
             std::to_string(t.c) + ") missing";
    }
  }
  if (!expected.classifiers.empty() && report.d.classifiers != expected.classifiers) {
    return "classifier set differs";
  }
  if (!expected.nonclassifiers.empty() && report.d.nonclassifiers != expected.nonclassifiers) {
    return "non-classifier set differs";
  }
  return std::nullopt;
}

std::optional<std::string> verify_roles(const E2PM& m, const RoleMap& roles,
                                        const CapabilityOptions& options) {
  std::vector<Element> s_elems, r_elems, a_elems, b_elems, c_elems;
  auto d = check_dichotomy(m, options);
  for (const auto& [e, labels] : roles) {
    if (e < 0 || e >= m.size()) return "role on element outside the carrier";
    if (contains_label(labels, "z1") && e != m.z1()) return "z1 label on " + std::to_string(e);
    if (contains_label(labels, "z2") && e != m.z2()) return "z2 label on " + std::to_string(e);
    if (contains_label(labels, "tau")) {
      bool ok = !m.is_absorber(e);
      for (Element x = 0; x < m.size() && ok; ++x) {
        if (options.strict_classifier || !m.is_absorber(x)) ok = m.is_absorber(m.at(e, x));
      }
      if (!ok) return "element " + std::to_string(e) + " is labelled tau but is not a classifier";
    }
    if (contains_label(labels, "mixed")) {
      bool to_abs = false;
      bool to_core = false;
      for (Element x : m.core()) (m.is_absorber(m.at(e, x)) ? to_abs : to_core) = true;
      if (!(to_abs && to_core)) return "element " + std::to_string(e) + " is labelled mixed but is not";
    }
    if (contains_label(labels, "s")) s_elems.push_back(e);
    if (contains_label(labels, "r")) r_elems.push_back(e);
    if (contains_label(labels, "a")) a_elems.push_back(e);
    if (contains_label(labels, "b")) b_elems.push_back(e);
    if (contains_label(labels, "c")) c_elems.push_back(e);
  }
  auto pairs = find_retraction_pairs(m, true, true);
  for (Element s : s_elems) {
    for (Element r : r_elems) {
      bool found = std::any_of(pairs.begin(), pairs.end(),
                               [&](const RetractionPair& p) { return p.s == s && p.r == r; });
      if (!found) return "(s, r) = (" + std::to_string(s) + "," + std::to_string(r) + ") is not a retraction pair";
    }
  }
  if (!a_elems.empty() || !b_elems.empty() || !c_elems.empty()) {
    if (a_elems.size() != 1 || b_elems.size() != 1 || c_elems.size() != 1) {
      return "ICP roles need exactly one a, b and c";
    }
    auto triples = find_icp_triples(m);
    Triple t{a_elems[0], b_elems[0], c_elems[0]};
    if (std::find(triples.begin(), triples.end(), t) == triples.end()) {
      return "(a, b, c) annotation is not an ICP triple";
    }
  }
  return std::nullopt;
}

}  // namespace magma

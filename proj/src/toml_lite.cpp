#include "helmcontrol/toml_lite.hpp"

#include <cctype>
#include <cstdlib>

namespace helm::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Removes a trailing comment, honoring quoted strings.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

Value parse_value(const std::string& raw, int line);

Value parse_array(const std::string& raw, int line) {
  Value v;
  v.kind = Value::Kind::Array;
  std::string inner = strip(raw.substr(1, raw.size() - 2));
  if (inner.empty()) return v;
  std::size_t start = 0;
  bool quoted = false;
  int depth = 0;
  for (std::size_t i = 0; i <= inner.size(); ++i) {
    const bool end = i == inner.size();
    const char c = end ? ',' : inner[i];
    if (!end && c == '"') quoted = !quoted;
    if (!quoted && c == '[') ++depth;
    if (!quoted && c == ']') --depth;
    if (c == ',' && !quoted && depth == 0) {
      const std::string piece = strip(inner.substr(start, i - start));
      if (piece.empty()) fail(line, "empty array element");
      v.array.push_back(parse_value(piece, line));
      start = i + 1;
    }
  }
  return v;
}

Value parse_value(const std::string& raw, int line) {
  Value v;
  if (raw.empty()) fail(line, "missing value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
    v.kind = Value::Kind::String;
    v.str = raw.substr(1, raw.size() - 2);
    return v;
  }
  if (raw.front() == '[') {
    if (raw.back() != ']') fail(line, "unterminated array");
    return parse_array(raw, line);
  }
  if (raw == "true" || raw == "false") {
    v.kind = Value::Kind::Boolean;
    v.boolean = raw == "true";
    return v;
  }
  char* end = nullptr;
  v.kind = Value::Kind::Number;
  v.num = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0') fail(line, "cannot parse value '" + raw + "'");
  return v;
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

}  // namespace

double Value::as_number(const std::string& what) const {
  if (kind != Kind::Number) throw ConfigError(what + ": expected a number");
  return num;
}

bool Value::as_bool(const std::string& what) const {
  if (kind != Kind::Boolean) throw ConfigError(what + ": expected true/false");
  return boolean;
}

const std::string& Value::as_string(const std::string& what) const {
  if (kind != Kind::String) throw ConfigError(what + ": expected a quoted string");
  return str;
}

std::vector<double> Value::as_numbers(const std::string& what) const {
  if (kind != Kind::Array) throw ConfigError(what + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(array.size());
  for (const auto& v : array) out.push_back(v.as_number(what));
  return out;
}

const Value& Table::at(const std::string& key, const std::string& context) const {
  auto it = entries.find(key);
  if (it == entries.end()) throw ConfigError(context + ": missing key '" + key + "'");
  return it->second;
}

double Table::number(const std::string& key, const std::string& context) const {
  return at(key, context).as_number(context + "." + key);
}

double Table::number_or(const std::string& key, double fallback) const {
  auto it = entries.find(key);
  return it == entries.end() ? fallback : it->second.as_number(key);
}

bool Table::bool_or(const std::string& key, bool fallback) const {
  auto it = entries.find(key);
  return it == entries.end() ? fallback : it->second.as_bool(key);
}

std::string Table::string_or(const std::string& key, const std::string& fallback) const {
  auto it = entries.find(key);
  return it == entries.end() ? fallback : it->second.as_string(key);
}

Document parse(const std::string& text) {
  Document doc;
  Table* current = &doc.root;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    line = strip(strip_comment(line));
    if (line.empty()) continue;

    if (line.size() >= 4 && line.substr(0, 2) == "[[" && line.substr(line.size() - 2) == "]]") {
      const std::string name = strip(line.substr(2, line.size() - 4));
      if (!valid_key(name)) fail(line_no, "bad table name '" + name + "'");
      doc.table_arrays[name].emplace_back();
      current = &doc.table_arrays[name].back();
      continue;
    }
    if (line.front() == '[' && line.back() == ']') {
      const std::string name = strip(line.substr(1, line.size() - 2));
      if (!valid_key(name)) fail(line_no, "bad table name '" + name + "'");
      if (doc.tables.count(name)) fail(line_no, "duplicate table [" + name + "]");
      current = &doc.tables[name];
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = strip(line.substr(0, eq));
    if (!valid_key(key)) fail(line_no, "bad key '" + key + "'");
    if (current->entries.count(key)) fail(line_no, "duplicate key '" + key + "'");
    current->entries[key] = parse_value(strip(line.substr(eq + 1)), line_no);
  }
  return doc;
}

}  // namespace helm::toml

#ifndef HELMCONTROL_TOML_LITE_HPP
#define HELMCONTROL_TOML_LITE_HPP

#include <map>
#include <string>
#include <vector>

#include "helmcontrol/types.hpp"

namespace helm::toml {

// Minimal TOML subset: comments, [table] / [[array-of-tables]] headers, and
// key = value lines where value is a quoted string, number, boolean, or a
// flat array of those. Covers the scenario config format; anything fancier
// is rejected with a line-numbered ConfigError.

struct Value {
  enum class Kind { String, Number, Boolean, Array };
  Kind kind = Kind::Number;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<Value> array;

  double as_number(const std::string& what) const;
  bool as_bool(const std::string& what) const;
  const std::string& as_string(const std::string& what) const;
  std::vector<double> as_numbers(const std::string& what) const;
};

struct Table {
  std::map<std::string, Value> entries;

  bool has(const std::string& key) const { return entries.count(key) > 0; }
  const Value& at(const std::string& key, const std::string& context) const;
  double number(const std::string& key, const std::string& context) const;
  double number_or(const std::string& key, double fallback) const;
  bool bool_or(const std::string& key, bool fallback) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
};

struct Document {
  Table root;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> table_arrays;
};

Document parse(const std::string& text);

}  // namespace helm::toml

#endif  // HELMCONTROL_TOML_LITE_HPP

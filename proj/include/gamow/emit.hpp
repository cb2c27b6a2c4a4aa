#pragma once

#include <string>
#include <vector>

#include "gamow/types.hpp"

namespace gamow {

// printf %.Ng rendering with N significant digits. All numeric output flows
// through here so artifacts are byte-reproducible across runs; N = 17 is the
// round-trip-exact default.
std::string fmt_g(double x, int significant);
std::string fmt17(double x);
std::string fmt_int(long long x);

// CSV with '#'-prefixed header lines (config echo), then a column-name row,
// then data rows. Cells are preformatted strings.
class CsvBuilder {
 public:
  explicit CsvBuilder(std::vector<std::string> columns);
  void add_comment(const std::string& line);
  void add_row(std::vector<std::string> cells);
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

// Minimal deterministic JSON writer (insertion-ordered objects). The config
// parser uses a full JSON library; output is hand-built so float formatting
// stays pinned to fmt17.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value_number(double v);
  JsonWriter& value_int(long long v);
  JsonWriter& value_string(const std::string& v);
  JsonWriter& value_bool(bool v);
  JsonWriter& value_raw(const std::string& text);  // prevalidated fragment
  std::string str() const;

 private:
  void comma_if_needed();
  std::string out_;
  std::vector<bool> first_in_scope_;
  bool pending_key_ = false;
};

std::string json_escape(const std::string& s);

}  // namespace gamow

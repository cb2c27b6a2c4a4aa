#include "gamow/emit.hpp"

#include <cmath>
#include <cstdio>

#include "gamow/errors.hpp"

namespace gamow {

std::string fmt_g(double x, int significant) {
  if (significant < 1 || significant > 17)
    throw OutOfRange("significant digits must lie in [1, 17]");
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", significant, x);
  return buf;
}

std::string fmt17(double x) { return fmt_g(x, 17); }

std::string fmt_int(long long x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld", x);
  return buf;
}

CsvBuilder::CsvBuilder(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void CsvBuilder::add_comment(const std::string& line) {
  comments_.push_back(line);
}

void CsvBuilder::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw SizeMismatch("CSV row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string CsvBuilder::str() const {
  std::string out;
  for (const std::string& c : comments_) out += "# " + c + "\n";
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ",";
    out += columns_[i];
  }
  out += "\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void JsonWriter::comma_if_needed() {
  if (first_in_scope_.empty()) return;
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_in_scope_.back()) out_ += ",";
  first_in_scope_.back() = false;
}

JsonWriter& JsonWriter::begin_object() {
  comma_if_needed();
  out_ += "{";
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += "}";
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  comma_if_needed();
  out_ += "[";
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += "]";
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  if (!first_in_scope_.back()) out_ += ",";
  first_in_scope_.back() = false;
  out_ += "\"" + json_escape(k) + "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value_number(double v) {
  comma_if_needed();
  // JSON has no nan/inf literals; quote them so the document stays parseable.
  if (std::isnan(v) || std::isinf(v))
    out_ += "\"" + fmt17(v) + "\"";
  else
    out_ += fmt17(v);
  return *this;
}

JsonWriter& JsonWriter::value_int(long long v) {
  comma_if_needed();
  out_ += fmt_int(v);
  return *this;
}

JsonWriter& JsonWriter::value_string(const std::string& v) {
  comma_if_needed();
  out_ += "\"" + json_escape(v) + "\"";
  return *this;
}

JsonWriter& JsonWriter::value_bool(bool v) {
  comma_if_needed();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value_raw(const std::string& text) {
  comma_if_needed();
  out_ += text;
  return *this;
}

std::string JsonWriter::str() const { return out_; }

}  // namespace gamow

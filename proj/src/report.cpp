#include "finsler/report.hpp"

#include <cstdio>
#include <fstream>

namespace finsler {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::comma_() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!need_comma_.empty()) {
    if (need_comma_.back()) out_ += ',';
    need_comma_.back() = true;
  }
}

void JsonWriter::begin_object() {
  comma_();
  out_ += '{';
  need_comma_.push_back(false);
}

void JsonWriter::end_object() {
  out_ += '}';
  need_comma_.pop_back();
}

void JsonWriter::begin_array() {
  comma_();
  out_ += '[';
  need_comma_.push_back(false);
}

void JsonWriter::end_array() {
  out_ += ']';
  need_comma_.pop_back();
}

void JsonWriter::key(const std::string& k) {
  comma_();
  out_ += '"';
  out_ += k;
  out_ += "\":";
  after_key_ = true;
}

void JsonWriter::value(double v) {
  comma_();
  out_ += format_double(v);
}

void JsonWriter::value(long long v) {
  comma_();
  out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
  comma_();
  out_ += v ? "true" : "false";
}

void JsonWriter::value(const std::string& v) {
  comma_();
  out_ += '"';
  for (char c : v) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += '"';
}

void JsonWriter::raw(const std::string& text) {
  comma_();
  out_ += text;
}

std::string checks_to_json(const std::vector<CheckReport>& checks, std::uint64_t seed) {
  JsonWriter w;
  w.begin_object();
  w.key("schema");
  w.value(std::string(kReportSchema));
  w.key("seed");
  w.value(static_cast<long long>(seed));
  w.key("checks");
  w.begin_array();
  for (const auto& c : checks) {
    w.begin_object();
    w.key("name");
    w.value(c.name);
    w.key("max_abs_residual");
    w.value(c.max_abs_residual);
    w.key("tolerance");
    w.value(c.tolerance);
    w.key("pass");
    w.value(c.pass);
    w.key("samples");
    w.value(c.samples);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : n_cols_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ += ',';
    out_ += columns[i];
  }
  out_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size() && i < n_cols_; ++i) {
    if (i) out_ += ',';
    out_ += format_double(values[i]);
  }
  out_ += '\n';
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FinslerError(ErrorCode::IOError, "cannot write " + path);
  out << content;
  if (!out) throw FinslerError(ErrorCode::IOError, "write failed for " + path);
}

}  // namespace finsler

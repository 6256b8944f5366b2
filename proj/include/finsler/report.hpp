#pragma once

#include <string>
#include <vector>

#include "finsler/verify.hpp"

namespace finsler {

inline constexpr const char* kReportSchema = "finsler-lab-report/1";

/// Minimal ordered JSON writer: stable field order, floats with 17
/// significant digits, no locale dependence. Reports must be byte-identical
/// across runs and thread counts.
class JsonWriter {
 public:
  std::string str() const { return out_; }

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);
  void value(double v);
  void value(long long v);
  void value(int v) { value(static_cast<long long>(v)); }
  void value(bool v);
  void value(const std::string& v);
  void raw(const std::string& text);

 private:
  void comma_();
  std::string out_;
  std::vector<bool> need_comma_;
  bool after_key_ = false;
};

std::string format_double(double v);  // %.17g
std::string checks_to_json(const std::vector<CheckReport>& checks, std::uint64_t seed);

/// CSV with a header row; floats at 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void row(const std::vector<double>& values);
  std::string str() const { return out_; }

 private:
  std::size_t n_cols_;
  std::string out_;
};

void write_file(const std::string& path, const std::string& content);

}  // namespace finsler

/* Copyright 2026 The Spincool Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "spincool/errors.hpp"

namespace spincool {

/// Every computed floating-point value is emitted with 12 significant
/// digits, so reruns diff cleanly.
inline std::string format_g12(double value) {
  if (!std::isfinite(value)) throw NumericalError("refusing to emit a non-finite value");
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

/// Minimal insertion-ordered JSON emitter for the result files; key order
/// and number formatting are fixed so outputs are byte-stable.
class JsonObjectWriter {
 public:
  void field(const std::string& key, double value) { raw(key, format_g12(value)); }
  void field(const std::string& key, long value) { raw(key, std::to_string(value)); }
  void field(const std::string& key, int value) { raw(key, std::to_string(value)); }
  void field(const std::string& key, bool value) { raw(key, value ? "true" : "false"); }
  void field(const std::string& key, const std::string& value) {
    raw(key, "\"" + json_escape(value) + "\"");
  }
  void field(const std::string& key, const char* value) { field(key, std::string(value)); }
  void field(const std::string& key, const std::vector<double>& values) {
    std::string arr = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) arr += ", ";
      arr += format_g12(values[i]);
    }
    raw(key, arr + "]");
  }

  std::string str() const { return "{\n" + body_ + "\n}\n"; }

 private:
  void raw(const std::string& key, const std::string& value) {
    if (!body_.empty()) body_ += ",\n";
    body_ += "  \"" + json_escape(key) + "\": " + value;
  }
  std::string body_;
};

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) text_ += ',';
      text_ += header[i];
    }
    text_ += '\n';
    columns_ = header.size();
  }

  class Row {
   public:
    explicit Row(CsvWriter& w) : writer_(w) {}
    Row& cell(double v) { return raw(format_g12(v)); }
    Row& cell(long v) { return raw(std::to_string(v)); }
    Row& cell(int v) { return raw(std::to_string(v)); }
    Row& cell(const std::string& v) { return raw(v); }
    ~Row() {
      writer_.text_ += line_;
      writer_.text_ += '\n';
    }

   private:
    Row& raw(const std::string& v) {
      if (cells_++) line_ += ',';
      line_ += v;
      return *this;
    }
    CsvWriter& writer_;
    std::string line_;
    std::size_t cells_ = 0;
  };

  Row row() { return Row(*this); }
  const std::string& str() const { return text_; }

 private:
  friend class Row;
  std::string text_;
  std::size_t columns_ = 0;
};

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file: " + path);
  out << content;
  if (!out) throw DomainError("failed writing output file: " + path);
}

}  // namespace spincool

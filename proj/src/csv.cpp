#include "dunklab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dunklab/common.hpp"

namespace dunklab {

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::begin_row() {
  rows_.emplace_back();
  return *this;
}

std::string CsvTable::format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvTable& CsvTable::cell(double v) {
  rows_.back().push_back(format_double(v));
  return *this;
}

CsvTable& CsvTable::cell(long long v) {
  rows_.back().push_back(std::to_string(v));
  return *this;
}

CsvTable& CsvTable::cell(const std::string& v) {
  rows_.back().push_back(v);
  return *this;
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < header_.size(); ++i)
    out << (i ? "," : "") << header_[i];
  out << '\n';
  for (const auto& row : rows_) {
    if (row.size() != header_.size())
      throw Error("csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  write_text_file(path, to_string());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dunklab

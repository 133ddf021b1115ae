#pragma once

#include <string>
#include <vector>

namespace dunklab {

// Deterministic CSV writer: fixed column order, "%.12g" doubles, '\n' line
// endings.  Reruns with the same inputs are byte-identical.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& begin_row();
  CsvTable& cell(double v);
  CsvTable& cell(long long v);
  CsvTable& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvTable& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
  CsvTable& cell(const std::string& v);

  std::size_t rows() const { return rows_.size(); }
  std::string to_string() const;
  void write(const std::string& path) const;

  static std::string format_double(double v);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace dunklab

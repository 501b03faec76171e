#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace varibase::io {

/// Deterministic CSV emission: doubles formatted with "%.10g" so identical
/// runs produce byte-identical files.
std::string format_double(double v);

class CsvWriter {
 public:
  /// A nonempty run_id is emitted as a leading "# run_id=<id>" comment line,
  /// cross-referencing the run-metadata file.
  CsvWriter(const std::string& path, const std::vector<std::string>& header,
            const std::string& run_id = "");

  void row(const std::vector<std::string>& cells);

  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }

 private:
  std::ofstream out_;
  size_t columns_;
};

}  // namespace varibase::io

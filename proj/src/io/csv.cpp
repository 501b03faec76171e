#include "varibase/io/csv.hpp"

#include <cstdio>
#include <stdexcept>

#include "varibase/core/errors.hpp"

namespace varibase::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::string& run_id)
    : out_(path), columns_(header.size()) {
  if (!out_) {
    throw ConfigError("cannot open CSV for writing: " + path);
  }
  if (!run_id.empty()) out_ << "# run_id=" << run_id << '\n';
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw std::invalid_argument("CSV row width does not match header");
  }
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace varibase::io

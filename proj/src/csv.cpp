#include "lookout/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

namespace lookout {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

NumericCsv read_numeric_csv(std::istream& in) {
  NumericCsv out;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> cells;
  std::size_t rows = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line);
    if (out.header.empty()) {
      for (auto& f : fields) out.header.push_back(trim(f));
      continue;
    }
    if (fields.size() != out.header.size()) {
      throw CsvError(line_no, "expected " + std::to_string(out.header.size()) + " fields, found " +
                                  std::to_string(fields.size()));
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const std::string cell = trim(fields[k]);
      double v = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (cell.empty() || ec != std::errc() || ptr != last) {
        throw CsvError(line_no, "column " + std::to_string(k + 1) + ": '" + cell + "' is not a number");
      }
      if (!std::isfinite(v)) {
        throw CsvError(line_no, "column " + std::to_string(k + 1) + ": non-finite value '" + cell + "'");
      }
      cells.push_back(v);
    }
    ++rows;
  }
  if (out.header.empty()) throw CsvError(line_no == 0 ? 1 : line_no, "missing header row");

  const auto cols = static_cast<Eigen::Index>(out.header.size());
  out.values.resize(static_cast<Eigen::Index>(rows), cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      out.values(static_cast<Eigen::Index>(r), c) = cells[r * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
    }
  }
  return out;
}

std::string format_double(double value) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out << ',';
    out << cells[k];
  }
  out << '\n';
}

}  // namespace lookout

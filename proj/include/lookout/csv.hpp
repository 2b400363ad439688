#pragma once

#include "lookout/types.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace lookout {

/// Malformed input; the message carries the 1-based line number.
class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct NumericCsv {
  std::vector<std::string> header;
  DataMatrix values;
};

/// Comma-delimited, header row first, every later cell a finite number.
/// Blank lines are skipped; NaN and infinite cells are rejected.
NumericCsv read_numeric_csv(std::istream& in);

/// printf-style %.17g.
std::string format_double(double value);

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace lookout

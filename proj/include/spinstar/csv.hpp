#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace spinstar {

/// `# key = value` preamble, one header row, numeric body.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  const std::string* find(const std::string& key) const;
};

/// %.17g, with inf/-inf/nan spelled out.
std::string format_double(double x);

void write_csv(std::ostream& out, const CsvTable& table);

/// Throws Error(InvalidInput) on malformed input.
CsvTable read_csv(std::istream& in);

}  // namespace spinstar

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mhrbf {

/// 17 significant digits (%.17g); strtod reads it back bit-exactly.
std::string fmt_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

/// Strict parsers; throw ParseError carrying `line`.
double parse_double(const std::string& field, int line);
long long parse_int(const std::string& field, int line);

/// A CSV file with optional leading `# key=value` metadata lines.
struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> row_lines;  ///< source line of each row

  /// Column index; throws ParseError if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

}  // namespace mhrbf

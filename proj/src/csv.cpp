#include "mhrbf/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>

#include "mhrbf/point.hpp"

namespace mhrbf {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& field, int line) {
  if (field.empty()) throw ParseError("empty numeric field", line);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size()) throw ParseError("not a number: '" + field + "'", line);
  return v;
}

long long parse_int(const std::string& field, int line) {
  if (field.empty()) throw ParseError("empty integer field", line);
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(field.c_str(), &end, 10);
  if (end != field.c_str() + field.size() || errno == ERANGE)
    throw ParseError("not an integer: '" + field + "'", line);
  return v;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ParseError("missing column '" + name + "'", 0);
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!t.header.empty()) throw ParseError("comment line inside data section", lineno);
      const auto start = line.find_first_not_of("# ");
      if (start == std::string::npos) continue;
      const auto body = line.substr(start);
      const auto eq = body.find('=');
      if (eq != std::string::npos) t.meta[body.substr(0, eq)] = body.substr(eq + 1);
      continue;
    }
    auto fields = split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size())
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       lineno);
    t.rows.push_back(std::move(fields));
    t.row_lines.push_back(lineno);
  }
  if (t.header.empty()) throw ParseError("no header row", lineno);
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open '" + path + "'");
  return read_csv(is);
}

}  // namespace mhrbf

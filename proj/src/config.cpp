#include "mhrbf/config.hpp"

#include <fstream>

#include "mhrbf/csv.hpp"

namespace mhrbf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  for (auto& part : split_csv_line(trim(text))) {
    auto t = trim(part);
    if (!t.empty()) out.push_back(t);
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

}  // namespace

std::map<std::string, std::string> read_settings_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open config '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  const auto t = trim(text);
  if (const auto c1 = t.find(':'); c1 != std::string::npos) {
    const auto c2 = t.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InputError("range must be lo:hi:count");
    return logspace(parse_double(t.substr(0, c1), 0), parse_double(t.substr(c1 + 1, c2 - c1 - 1), 0),
                    static_cast<int>(parse_int(t.substr(c2 + 1), 0)));
  }
  std::vector<double> out;
  for (const auto& f : split_list(t)) out.push_back(parse_double(f, 0));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& f : split_list(text)) {
    // a-b inclusive ranges, e.g. 1-9
    if (const auto dash = f.find('-'); dash != std::string::npos && dash > 0) {
      const auto lo = parse_int(f.substr(0, dash), 0), hi = parse_int(f.substr(dash + 1), 0);
      for (auto v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
    } else {
      out.push_back(static_cast<int>(parse_int(f, 0)));
    }
  }
  return out;
}

std::vector<std::optional<int>> parse_poly_list(const std::string& text) {
  std::vector<std::optional<int>> out;
  for (const auto& f : split_list(text)) {
    if (f == "none") out.emplace_back(std::nullopt);
    else out.emplace_back(static_cast<int>(parse_int(f, 0)));
  }
  return out;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  try {
    if (key == "kernel") cfg.kernel = parse_family(value);
    else if (key == "phs_k") cfg.phs_k = static_cast<int>(parse_int(value, 0));
    else if (key == "eps") cfg.eps_grid = parse_double_list(value);
    else if (key == "n") cfg.n_grid = parse_int_list(value);
    else if (key == "poly") cfg.poly_degrees = parse_poly_list(value);
    else if (key == "radii") cfg.radius_grid = parse_double_list(value);
    else if (key == "radius") cfg.radius = parse_double(value, 0);
    else if (key == "node_count") cfg.node_count = static_cast<int>(parse_int(value, 0));
    else if (key == "eval_count") cfg.eval_count = static_cast<int>(parse_int(value, 0));
    else if (key == "function") cfg.function = parse_function(value).id;
    else if (key == "riesz_s") cfg.riesz_s = parse_double(value, 0);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value, 0));
    else if (key == "layout") {
      if (value == "disk") cfg.layout = Layout::Disk;
      else if (value == "cost") cfg.layout = Layout::Cost;
      else throw InputError("layout must be disk or cost");
    } else if (key == "nodes") cfg.nodes_path = value;
    else if (key == "out") cfg.out_dir = value;
    else throw InputError("unknown setting '" + key + "'");
  } catch (const ParseError& e) {
    throw InputError("bad value for '" + key + "': " + value);
  }
}

}  // namespace mhrbf

#pragma once

#include <map>
#include <string>

#include "mhrbf/experiments.hpp"

namespace mhrbf {

// Flat key=value settings, one per line; '#' starts a comment. Keys:
//   kernel, phs_k, eps, n, poly, radii, radius, node_count, eval_count,
//   function, seed, layout, nodes, out
// List values are comma separated. A numeric list may also be written
// lo:hi:count for `count` log-spaced values. `poly` accepts `none`.
std::map<std::string, std::string> read_settings_file(const std::string& path);

/// Applies one setting; throws InputError on an unknown key or bad value.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

std::vector<double> parse_double_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<std::optional<int>> parse_poly_list(const std::string& text);

}  // namespace mhrbf

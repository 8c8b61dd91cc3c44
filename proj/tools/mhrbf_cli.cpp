// mhrbf: experiment runner for the RBF / HRBF / MHRBF interpolation studies.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "mhrbf/config.hpp"
#include "mhrbf/experiments.hpp"
#include "mhrbf/plot.hpp"

namespace fs = std::filesystem;
using namespace mhrbf;

namespace {

constexpr int kExitOk = 0, kExitInput = 1, kExitInternal = 2;

constexpr const char* kFooter = R"(Record CSV (every experiment except gen-nodes and plot):
  leading '# key=value' lines: experiment, function, kernel, seed, riesz_s,
  data_nodes, eval_nodes; then the header row
    experiment,method,eps,n,l,radius,N,unknowns,err_f,err_fx,err_fy,cond_estimate,singular
  method         rbf | rbf_poly | hrbf | mhrbf
  eps            kernel shape parameter
  n              monomial degree (mhrbf only, otherwise 'none')
  l              augmentation degree, 'none' = no polynomial block
  radius         radius of the data-node disk
  N              number of data nodes
  unknowns       system dimension (3N+M for hrbf/mhrbf)
  err_f/fx/fy    max abs error of f, df/dx, df/dy over the eval nodes
  cond_estimate  1-norm condition estimate (inf only for an exactly singular matrix)
  singular       1 when a pivot fell below the near-singular threshold
  Floats carry 17 significant digits.

Node CSV (gen-nodes, --nodes):
  # kind,radius,seed,count
  <kind>,<radius>,<seed>,<count>
  x,y,role          role = data | eval

Exit codes: 0 success, 1 input error, 2 internal error.)";

// Flag values are kept as text and applied through the same parser as
// config files, so both accept identical syntax.
struct Overrides {
  std::map<std::string, std::string> values;
  std::string config;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "key=value settings file (flags override it)");
  auto opt = [&](const char* flag, const char* key, const char* help) {
    sub->add_option_function<std::string>(
        flag, [&o, key](const std::string& v) { o.values[key] = v; }, help);
  };
  opt("--seed", "seed", "RNG seed for node generation (default 1)");
  opt("--out", "out", "output directory (default .)");
  opt("--function", "function", "test function: trig | camelback");
  opt("--kernel", "kernel", "kernel family: ga | mq | imq | iq | phs");
  opt("--eps", "eps", "shape parameters: a,b,c or lo:hi:count (log spaced)");
  opt("--n", "n", "monomial degrees: a,b or a-b");
  opt("--poly", "poly", "augmentation degrees, 'none' allowed: none,0,1");
  opt("--phs-k", "phs_k", "PHS exponent parameter k, r^(2k-1)");
  opt("--radius", "radius", "data-node disk radius");
  opt("--radii", "radii", "radius grid (radius-scaling, cost-study)");
  opt("--node-count", "node_count", "number of min-energy data nodes");
  opt("--eval-count", "eval_count", "number of evaluation nodes");
  opt("--riesz-s", "riesz_s", "Riesz energy exponent of the node layout (default 3)");
  opt("--nodes", "nodes", "load data/eval nodes from a node CSV instead of generating");
}

ExperimentConfig build_config(Experiment e, const Overrides& o) {
  ExperimentConfig cfg = default_config(e);
  if (!o.config.empty())
    for (const auto& [k, v] : read_settings_file(o.config)) apply_setting(cfg, k, v);
  for (const auto& [k, v] : o.values) apply_setting(cfg, k, v);
  cfg.validate();
  return cfg;
}

// Write via a temporary so a failure never leaves a truncated file behind.
void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw InputError("cannot write '" + path.string() + "'");
    os << text;
    if (!os) throw InputError("write failed for '" + path.string() + "'");
  }
  fs::rename(tmp, path);
}

int run_records(Experiment e, const Overrides& o) {
  const ExperimentConfig cfg = build_config(e, o);
  const auto records = run_experiment(cfg);
  std::ostringstream os;
  write_records(os, cfg, records);
  const fs::path path = fs::path(cfg.out_dir) / (experiment_name(e) + ".csv");
  write_file(path, os.str());
  std::cout << path.string() << " (" << records.size() << " records)\n";
  return kExitOk;
}

int run_gen_nodes(const Overrides& o, const std::string& layout) {
  Overrides oo = o;
  if (!layout.empty()) oo.values["layout"] = layout;
  ExperimentConfig cfg = build_config(Experiment::GenNodes, oo);
  if (cfg.layout == Layout::Cost && !o.values.count("node_count")) {
    // cost layout defaults mirror the cost study
    const auto cost = default_config(Experiment::CostStudy);
    cfg.node_count = cost.node_count;
    if (!o.values.count("eval_count")) cfg.eval_count = cost.eval_count;
    if (!o.values.count("radius")) cfg.radius = cost.radius;
  }
  if (!cfg.nodes_path.empty()) throw InputError("gen-nodes does not take --nodes");
  const NodeSet nodes = make_node_set(cfg, cfg.layout);
  std::ostringstream os;
  write_node_set(os, nodes);
  const fs::path path = fs::path(cfg.out_dir) / ("nodes_" + nodes.kind() + ".csv");
  write_file(path, os.str());
  std::cout << path.string() << " (" << nodes.data_nodes().size() << " data, "
            << nodes.eval_nodes().size() << " eval)\n";
  return kExitOk;
}

struct PlotArgs {
  std::string csv, svg, kind, x, y, z, series, title;
  bool linear_x = false, linear_y = false, log_x = false, log_y = false;
};

int run_plot(const PlotArgs& a, const Overrides& o) {
  const CsvTable table = read_csv_file(a.csv);
  const auto it = table.meta.find("experiment");
  PlotSpec spec = default_plot_spec(it == table.meta.end() ? "" : it->second);
  if (a.kind == "contour") spec.kind = PlotKind::Contour;
  else if (a.kind == "lines") spec.kind = PlotKind::Lines;
  else if (!a.kind.empty()) throw InputError("--kind must be lines or contour");
  if (!a.x.empty()) spec.x = a.x;
  if (!a.y.empty()) spec.y = a.y;
  if (!a.z.empty()) spec.z = a.z;
  if (!a.series.empty()) {
    spec.series.clear();
    std::stringstream ss(a.series);
    for (std::string s; std::getline(ss, s, ',');)
      if (!s.empty()) spec.series.push_back(s);
  }
  if (!a.title.empty()) spec.title = a.title;
  if (a.linear_x) spec.log_x = false;
  if (a.linear_y) spec.log_y = false;
  if (a.log_x) spec.log_x = true;
  if (a.log_y) spec.log_y = true;

  fs::path out = a.svg;
  if (out.empty()) {
    const auto dir = o.values.count("out") ? fs::path(o.values.at("out")) : fs::path(a.csv).parent_path();
    out = dir / (fs::path(a.csv).stem().string() + ".svg");
  }
  write_file(out, render_svg(table, spec));
  std::cout << out.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RBF / Hermite RBF / modified Hermite RBF interpolation experiments"};
  app.footer(kFooter);
  app.require_subcommand(1);

  Overrides o;
  std::map<CLI::App*, Experiment> runners;
  for (auto e : {Experiment::EpsNSweep, Experiment::PolyCompare, Experiment::MethodCompare,
                 Experiment::RadiusScaling, Experiment::CostStudy}) {
    static const std::map<Experiment, const char*> blurb = {
        {Experiment::EpsNSweep, "MHRBF error over the (eps, n) grid, no augmentation"},
        {Experiment::PolyCompare, "MHRBF error vs eps for augmentation degrees 1 and 9"},
        {Experiment::MethodCompare, "HRBF vs MHRBF error vs eps (l=1 trig, l=6 camelback)"},
        {Experiment::RadiusScaling, "HRBF vs MHRBF error vs disk radius at eps=1"},
        {Experiment::CostStudy, "error vs unknowns (3N+M) over nearest-k subsets"}};
    auto* sub = app.add_subcommand(experiment_name(e), blurb.at(e));
    add_common(sub, o);
    runners[sub] = e;
  }

  std::string layout;
  auto* gen = app.add_subcommand("gen-nodes", "write a min-energy node set to nodes_<kind>.csv");
  add_common(gen, o);
  gen->add_option("--layout", layout, "disk (Halton eval in R/3) | cost (eval in nearest triangle)")
      ->check(CLI::IsMember({"disk", "cost"}));

  PlotArgs pa;
  auto* plot = app.add_subcommand("plot", "render a record CSV to SVG");
  add_common(plot, o);
  plot->add_option("csv", pa.csv, "record CSV")->required();
  plot->add_option("--svg", pa.svg, "output file (default <out or csv dir>/<csv stem>.svg)");
  plot->add_option("--kind", pa.kind, "lines | contour (default from the experiment)");
  plot->add_option("--x", pa.x, "x column");
  plot->add_option("--y", pa.y, "y column");
  plot->add_option("--z", pa.z, "colour column for contour plots");
  plot->add_option("--series", pa.series, "comma separated grouping columns for lines");
  plot->add_option("--title", pa.title, "plot title");
  plot->add_flag("--linear-x", pa.linear_x, "linear x axis");
  plot->add_flag("--linear-y", pa.linear_y, "linear y axis");
  plot->add_flag("--log-x", pa.log_x, "log x axis");
  plot->add_flag("--log-y", pa.log_y, "log y axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    for (const auto& [sub, e] : runners)
      if (sub->parsed()) return run_records(e, o);
    if (gen->parsed()) return run_gen_nodes(o, layout);
    if (plot->parsed()) return run_plot(pa, o);
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

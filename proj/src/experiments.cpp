#include "mhrbf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

#include "mhrbf/csv.hpp"

namespace mhrbf {

namespace {

KernelSpec kernel_for(const ExperimentConfig& cfg, double eps) {
  KernelSpec k{cfg.kernel, eps, cfg.phs_k};
  k.validate();
  return k;
}

std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "none"; }

std::optional<int> parse_opt_int(const std::string& s, int line) {
  if (s == "none") return std::nullopt;
  return static_cast<int>(parse_int(s, line));
}

std::vector<std::optional<int>> method_compare_poly(const ExperimentConfig& cfg) {
  if (!cfg.poly_degrees.empty()) return cfg.poly_degrees;
  return {cfg.function == FunctionId::Camelback ? 6 : 1};
}

}  // namespace

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::EpsNSweep: return "sweep-eps-n";
    case Experiment::PolyCompare: return "poly-compare";
    case Experiment::MethodCompare: return "method-compare";
    case Experiment::RadiusScaling: return "radius-scaling";
    case Experiment::CostStudy: return "cost-study";
    case Experiment::GenNodes: return "gen-nodes";
  }
  return "?";
}

Experiment parse_experiment(const std::string& name) {
  for (auto e : {Experiment::EpsNSweep, Experiment::PolyCompare, Experiment::MethodCompare,
                 Experiment::RadiusScaling, Experiment::CostStudy, Experiment::GenNodes})
    if (experiment_name(e) == name) return e;
  throw InputError("unknown experiment '" + name + "'");
}

std::vector<double> logspace(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > 0.0) || count < 1) throw InputError("logspace needs positive bounds and count >= 1");
  if (count == 1) return {lo};
  const double a = std::log10(lo), b = std::log10(hi);
  std::vector<double> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    // Integer exponents (whole decades) come out exact.
    const double e = a + (b - a) * k / (count - 1);
    const double re = std::round(e);
    out.push_back(std::abs(e - re) < 1e-12 ? std::pow(10.0, re) : std::pow(10.0, e));
  }
  return out;
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  // Ten points per decade so that every decade, including eps = 1, is sampled.
  c.eps_grid = logspace(1e-3, 10.0, 41);
  c.n_grid = {4};
  c.poly_degrees = {1};
  switch (e) {
    case Experiment::EpsNSweep:
      c.n_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9};
      c.poly_degrees = {std::nullopt};
      break;
    case Experiment::PolyCompare: c.poly_degrees = {1, 9}; break;
    case Experiment::MethodCompare: c.poly_degrees = {}; break;
    case Experiment::RadiusScaling:
      c.eps_grid = {1.0};
      c.radius_grid = logspace(1e-4, 10.0, 31);
      break;
    case Experiment::CostStudy:
      c.eps_grid = {0.01, 0.1, 1.0, 10.0};
      c.poly_degrees = {std::nullopt, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
      c.radius_grid = {1.0, 0.125};
      c.radius = 1.0;
      c.node_count = 104;
      c.eval_count = 249;
      c.layout = Layout::Cost;
      break;
    case Experiment::GenNodes: break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (experiment != Experiment::GenNodes) {
    if (eps_grid.empty()) throw InputError("eps grid is empty");
    if (n_grid.empty()) throw InputError("n grid is empty");
    if (poly_degrees.empty() && experiment != Experiment::MethodCompare)
      throw InputError("poly degree list is empty");
  }
  for (double e : eps_grid)
    if (!(e > 0.0) || !std::isfinite(e)) throw InputError("eps values must be positive");
  for (int n : n_grid)
    if (n < 1) throw InputError("n values must be >= 1");
  for (const auto& l : poly_degrees)
    if (l && *l < 0) throw InputError("poly degrees must be >= 0 or none");
  if (!(radius > 0.0)) throw InputError("radius must be positive");
  for (double r : radius_grid)
    if (!(r > 0.0)) throw InputError("radius grid values must be positive");
  if ((experiment == Experiment::RadiusScaling || experiment == Experiment::CostStudy) &&
      radius_grid.empty())
    throw InputError("radius grid is empty");
  if (node_count < 3) throw InputError("node count must be >= 3");
  if (!(riesz_s > 0.0)) throw InputError("riesz_s must be positive");
  if (eval_count < 1) throw InputError("eval count must be >= 1");
  if (kernel == KernelFamily::PolyharmonicSpline && phs_k < 1) throw InputError("phs k must be >= 1");
}

NodeSet make_node_set(const ExperimentConfig& cfg, Layout layout) {
  if (!cfg.nodes_path.empty()) return load_node_set(cfg.nodes_path);
  const MinEnergyResult me = min_energy_nodes(cfg.node_count, cfg.radius, cfg.seed, cfg.riesz_s);
  std::vector<Point> eval;
  if (layout == Layout::Disk) {
    eval = halton_eval_nodes(cfg.eval_count, cfg.radius / 3.0);
  } else {
    const auto tri = k_nearest_subset(me.points, {0.0, 0.0}, 3);
    eval = triangle_eval_nodes({tri[0], tri[1], tri[2]}, cfg.eval_count);
  }
  return NodeSet(me.points, std::move(eval), cfg.radius,
                 layout == Layout::Disk ? "min_energy_disk" : "min_energy_cost", cfg.seed);
}

ErrorRecord evaluate_case(const std::string& experiment, Method method,
                          const std::vector<Point>& data, const std::vector<Point>& eval,
                          double radius, const TestFunction& fn, const KernelSpec& kernel, int n,
                          std::optional<int> l) {
  const HermiteData samples = HermiteData::sample(fn, data);
  const Interpolant interp = fit(method, data, samples, kernel, MonomialScaling{n}, l);
  const ErrorReport err = error_report(interp, eval, fn);

  ErrorRecord r;
  r.experiment = experiment;
  r.method = method;
  r.eps = kernel.epsilon;
  if (method == Method::Mhrbf) r.n = n;
  r.l = l;
  r.radius = radius;
  r.node_count = static_cast<int>(data.size());
  r.unknowns = interp.unknowns();
  r.err_f = err.err_f;
  r.err_fx = err.err_fx;
  r.err_fy = err.err_fy;
  r.cond_estimate = interp.report().cond_estimate;
  r.singular = interp.report().singular_flag;
  return r;
}

std::vector<ErrorRecord> run_eps_n_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const NodeSet nodes = make_node_set(cfg, Layout::Disk);
  const TestFunction fn{cfg.function};
  const std::string id = experiment_name(Experiment::EpsNSweep);
  std::vector<ErrorRecord> out;
  for (const auto& l : cfg.poly_degrees)
    for (int n : cfg.n_grid)
      for (double eps : cfg.eps_grid)
        out.push_back(evaluate_case(id, Method::Mhrbf, nodes.data_nodes(), nodes.eval_nodes(),
                                    nodes.radius(), fn, kernel_for(cfg, eps), n, l));
  return out;
}

std::vector<ErrorRecord> run_poly_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  const NodeSet nodes = make_node_set(cfg, Layout::Disk);
  const TestFunction fn{cfg.function};
  const std::string id = experiment_name(Experiment::PolyCompare);
  std::vector<ErrorRecord> out;
  for (const auto& l : cfg.poly_degrees)
    for (double eps : cfg.eps_grid)
      out.push_back(evaluate_case(id, Method::Mhrbf, nodes.data_nodes(), nodes.eval_nodes(),
                                  nodes.radius(), fn, kernel_for(cfg, eps), cfg.n_grid.front(), l));
  return out;
}

std::vector<ErrorRecord> run_method_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  const NodeSet nodes = make_node_set(cfg, Layout::Disk);
  const TestFunction fn{cfg.function};
  const std::string id = experiment_name(Experiment::MethodCompare);
  std::vector<ErrorRecord> out;
  for (Method m : {Method::Hrbf, Method::Mhrbf})
    for (const auto& l : method_compare_poly(cfg))
      for (double eps : cfg.eps_grid)
        out.push_back(evaluate_case(id, m, nodes.data_nodes(), nodes.eval_nodes(), nodes.radius(),
                                    fn, kernel_for(cfg, eps), cfg.n_grid.front(), l));
  return out;
}

std::vector<ErrorRecord> run_radius_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  const NodeSet base = make_node_set(cfg, Layout::Disk);
  const TestFunction fn{cfg.function};
  const std::string id = experiment_name(Experiment::RadiusScaling);
  std::vector<ErrorRecord> out;
  for (double r : cfg.radius_grid) {
    const NodeSet nodes = scale_node_set(base, r);
    for (Method m : {Method::Hrbf, Method::Mhrbf})
      for (const auto& l : cfg.poly_degrees)
        for (double eps : cfg.eps_grid)
          out.push_back(evaluate_case(id, m, nodes.data_nodes(), nodes.eval_nodes(), r, fn,
                                      kernel_for(cfg, eps), cfg.n_grid.front(), l));
  }
  return out;
}

std::vector<ErrorRecord> run_cost_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const NodeSet base = make_node_set(cfg, Layout::Cost);
  const TestFunction fn{cfg.function};
  const std::string id = experiment_name(Experiment::CostStudy);
  const int total = static_cast<int>(base.data_nodes().size());
  std::vector<ErrorRecord> out;
  for (double r : cfg.radius_grid) {
    const NodeSet nodes = scale_node_set(base, r);
    for (int k = 3; k <= total; ++k) {
      const auto subset = k_nearest_subset(nodes.data_nodes(), {0.0, 0.0}, k);
      for (const auto& l : cfg.poly_degrees) {
        if (l && poly_count(*l, 2) > k) continue;
        for (Method m : {Method::Hrbf, Method::Mhrbf})
          for (double eps : cfg.eps_grid)
            out.push_back(evaluate_case(id, m, subset, nodes.eval_nodes(), r, fn,
                                        kernel_for(cfg, eps), cfg.n_grid.front(), l));
      }
    }
  }
  return out;
}

std::vector<ErrorRecord> run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::EpsNSweep: return run_eps_n_sweep(cfg);
    case Experiment::PolyCompare: return run_poly_compare(cfg);
    case Experiment::MethodCompare: return run_method_compare(cfg);
    case Experiment::RadiusScaling: return run_radius_scaling(cfg);
    case Experiment::CostStudy: return run_cost_study(cfg);
    case Experiment::GenNodes: break;
  }
  throw InputError("gen-nodes produces a node set, not error records");
}

void write_records(std::ostream& os, const ExperimentConfig& cfg,
                   const std::vector<ErrorRecord>& records) {
  std::vector<ErrorRecord> sorted = records;
  auto key = [](const ErrorRecord& r) {
    return std::make_tuple(method_name(r.method), r.radius, r.eps, r.n.value_or(-1),
                           r.l.value_or(-1), r.node_count);
  };
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const ErrorRecord& a, const ErrorRecord& b) { return key(a) < key(b); });

  const bool cost = cfg.experiment == Experiment::CostStudy;
  os << "# experiment=" << experiment_name(cfg.experiment) << '\n'
     << "# function=" << TestFunction{cfg.function}.name() << '\n'
     << "# kernel=" << family_name(cfg.kernel) << '\n'
     << "# seed=" << cfg.seed << '\n'
     << "# riesz_s=" << fmt_double(cfg.riesz_s) << '\n'
     << "# data_nodes=" << (cost ? "min-energy, nearest-k subsets of " : "min-energy ")
     << cfg.node_count << '\n'
     << "# eval_nodes=" << cfg.eval_count
     << (cost ? " halton points in the triangle of the 3 data nodes nearest the origin"
              : " halton points in the concentric disk of radius R/3")
     << '\n';
  os << kRecordHeader << '\n';
  for (const auto& r : sorted) {
    os << r.experiment << ',' << method_name(r.method) << ',' << fmt_double(r.eps) << ','
       << opt_str(r.n) << ',' << opt_str(r.l) << ',' << fmt_double(r.radius) << ','
       << r.node_count << ',' << r.unknowns << ',' << fmt_double(r.err_f) << ','
       << fmt_double(r.err_fx) << ',' << fmt_double(r.err_fy) << ','
       << fmt_double(r.cond_estimate) << ',' << (r.singular ? 1 : 0) << '\n';
  }
}

std::vector<ErrorRecord> read_records(std::istream& is) {
  const CsvTable t = read_csv(is);
  const std::size_t c[] = {t.column("experiment"), t.column("method"), t.column("eps"),
                           t.column("n"), t.column("l"), t.column("radius"), t.column("N"),
                           t.column("unknowns"), t.column("err_f"), t.column("err_fx"),
                           t.column("err_fy"), t.column("cond_estimate"), t.column("singular")};
  std::vector<ErrorRecord> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    const int line = t.row_lines[i];
    ErrorRecord r;
    r.experiment = row[c[0]];
    r.method = parse_method(row[c[1]]);
    r.eps = parse_double(row[c[2]], line);
    r.n = parse_opt_int(row[c[3]], line);
    r.l = parse_opt_int(row[c[4]], line);
    r.radius = parse_double(row[c[5]], line);
    r.node_count = static_cast<int>(parse_int(row[c[6]], line));
    r.unknowns = parse_int(row[c[7]], line);
    r.err_f = parse_double(row[c[8]], line);
    r.err_fx = parse_double(row[c[9]], line);
    r.err_fy = parse_double(row[c[10]], line);
    r.cond_estimate = parse_double(row[c[11]], line);
    r.singular = parse_int(row[c[12]], line) != 0;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mhrbf

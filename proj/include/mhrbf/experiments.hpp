#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mhrbf/interpolants.hpp"
#include "mhrbf/nodes.hpp"

namespace mhrbf {

enum class Experiment { EpsNSweep, PolyCompare, MethodCompare, RadiusScaling, CostStudy, GenNodes };

std::string experiment_name(Experiment e);  ///< CLI subcommand name
Experiment parse_experiment(const std::string& name);

/// Node layouts used by the experiments.
///   disk: min-energy data nodes in radius R, Halton eval nodes in R/3
///   cost: min-energy data nodes in radius R, eval nodes inside the triangle
///         of the three data nodes nearest the origin
enum class Layout { Disk, Cost };

struct ExperimentConfig {
  Experiment experiment = Experiment::EpsNSweep;
  KernelFamily kernel = KernelFamily::Gaussian;
  int phs_k = 2;
  std::vector<double> eps_grid;
  std::vector<int> n_grid;
  std::vector<std::optional<int>> poly_degrees;  ///< nullopt = no augmentation
  std::vector<double> radius_grid;                ///< radius-scaling / cost-study radii
  double radius = 0.1;
  int node_count = 56;
  int eval_count = 60;
  FunctionId function = FunctionId::Trig;
  std::uint64_t seed = 1;
  double riesz_s = 3.0;             ///< exponent of the min-energy layout
  Layout layout = Layout::Disk;     ///< gen-nodes only
  std::string nodes_path;           ///< load the node set instead of generating it
  std::string out_dir = ".";

  /// Throws InputError on empty grids, non-positive eps/radius, etc.
  void validate() const;
};

/// Defaults reproducing each study.
ExperimentConfig default_config(Experiment e);

/// `count` log-spaced values from lo to hi inclusive, 10^(a + k (b - a)/(count - 1)).
std::vector<double> logspace(double lo, double hi, int count);

struct ErrorRecord {
  std::string experiment;
  Method method = Method::Mhrbf;
  double eps = 0.0;
  std::optional<int> n;  ///< monomial degree, MHRBF only
  std::optional<int> l;  ///< augmentation degree, nullopt = none
  double radius = 0.0;
  int node_count = 0;
  Eigen::Index unknowns = 0;
  double err_f = 0.0, err_fx = 0.0, err_fy = 0.0;
  double cond_estimate = 0.0;
  bool singular = false;
};

/// Column order of every record CSV.
inline constexpr const char* kRecordHeader =
    "experiment,method,eps,n,l,radius,N,unknowns,err_f,err_fx,err_fy,cond_estimate,singular";

/// Nodes for the disk or cost layout, or the loaded file when nodes_path is set.
NodeSet make_node_set(const ExperimentConfig& cfg, Layout layout);

/// Fit one configuration on `data` and measure it on `eval`.
ErrorRecord evaluate_case(const std::string& experiment, Method method,
                          const std::vector<Point>& data, const std::vector<Point>& eval,
                          double radius, const TestFunction& fn, const KernelSpec& kernel, int n,
                          std::optional<int> l);

std::vector<ErrorRecord> run_eps_n_sweep(const ExperimentConfig& cfg);
std::vector<ErrorRecord> run_poly_compare(const ExperimentConfig& cfg);
std::vector<ErrorRecord> run_method_compare(const ExperimentConfig& cfg);
std::vector<ErrorRecord> run_radius_scaling(const ExperimentConfig& cfg);
std::vector<ErrorRecord> run_cost_study(const ExperimentConfig& cfg);
std::vector<ErrorRecord> run_experiment(const ExperimentConfig& cfg);

/// Metadata comment lines, header, then records in canonical order.
void write_records(std::ostream& os, const ExperimentConfig& cfg,
                   const std::vector<ErrorRecord>& records);
std::vector<ErrorRecord> read_records(std::istream& is);

}  // namespace mhrbf

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mhrbf/config.hpp"
#include "mhrbf/csv.hpp"
#include "mhrbf/experiments.hpp"

using namespace mhrbf;
namespace fs = std::filesystem;

namespace {

std::string csv_of(const ExperimentConfig& cfg) {
  std::ostringstream os;
  write_records(os, cfg, run_experiment(cfg));
  return os.str();
}

// Small variants of the studies so the suite stays quick.
ExperimentConfig small(Experiment e) {
  auto cfg = default_config(e);
  if (e == Experiment::CostStudy) {
    cfg.node_count = 20;
    cfg.eval_count = 30;
    cfg.poly_degrees = {std::nullopt, 0, 1, 2};
    cfg.eps_grid = {0.1, 1.0};
  } else {
    cfg.eps_grid = {0.01, 1.0, 10.0};
  }
  if (e == Experiment::EpsNSweep) cfg.n_grid = {2, 4};
  if (e == Experiment::RadiusScaling) cfg.radius_grid = {1e-3, 0.1, 2.0};
  return cfg;
}

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mhrbf_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("logspace") {
  const auto g = logspace(1e-3, 10.0, 41);
  CHECK(g.size() == 41);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 10.0);
  CHECK(g[30] == 1.0);
  CHECK(g[20] == 0.1);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(logspace(2.0, 5.0, 1) == std::vector<double>{2.0});
  CHECK_THROWS_AS(logspace(0.0, 1.0, 5), InputError);
  CHECK_THROWS_AS(logspace(1.0, 2.0, 0), InputError);
}

TEST_CASE("default configurations") {
  const auto sweep = default_config(Experiment::EpsNSweep);
  CHECK(sweep.node_count == 56);
  CHECK(sweep.eval_count == 60);
  CHECK(sweep.radius == 0.1);
  CHECK(sweep.seed == 1);
  CHECK(sweep.n_grid == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(sweep.poly_degrees == std::vector<std::optional<int>>{std::nullopt});
  CHECK(sweep.eps_grid.front() == 1e-3);
  CHECK(sweep.eps_grid.back() == 10.0);

  const auto poly = default_config(Experiment::PolyCompare);
  CHECK(poly.poly_degrees == std::vector<std::optional<int>>{1, 9});
  CHECK(poly.n_grid == std::vector<int>{4});

  const auto radius = default_config(Experiment::RadiusScaling);
  CHECK(radius.eps_grid == std::vector<double>{1.0});
  CHECK(radius.radius_grid.size() >= 25);
  CHECK(radius.radius_grid.front() == 1e-4);
  CHECK(radius.radius_grid.back() == 10.0);

  const auto cost = default_config(Experiment::CostStudy);
  CHECK(cost.node_count == 104);
  CHECK(cost.eval_count == 249);
  CHECK(cost.eps_grid == std::vector<double>{0.01, 0.1, 1.0, 10.0});
  CHECK(cost.poly_degrees.size() == 11);
  CHECK(cost.radius_grid == std::vector<double>{1.0, 0.125});
}

TEST_CASE("config validation") {
  auto cfg = default_config(Experiment::EpsNSweep);
  cfg.eps_grid = {};
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = default_config(Experiment::EpsNSweep);
  cfg.eps_grid = {1.0, -1.0};
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = default_config(Experiment::EpsNSweep);
  cfg.radius = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = default_config(Experiment::EpsNSweep);
  cfg.n_grid = {0};
  CHECK_THROWS_AS(cfg.validate(), InputError);
  cfg = default_config(Experiment::PolyCompare);
  cfg.poly_degrees = {-2};
  CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("experiment names") {
  for (auto e : {Experiment::EpsNSweep, Experiment::PolyCompare, Experiment::MethodCompare,
                 Experiment::RadiusScaling, Experiment::CostStudy, Experiment::GenNodes})
    CHECK(parse_experiment(experiment_name(e)) == e);
  CHECK_THROWS_AS(parse_experiment("sweep"), InputError);
}

TEST_CASE("runners are deterministic") {
  for (auto e : {Experiment::EpsNSweep, Experiment::PolyCompare, Experiment::MethodCompare,
                 Experiment::RadiusScaling, Experiment::CostStudy}) {
    CAPTURE(experiment_name(e));
    const auto cfg = small(e);
    const std::string a = csv_of(cfg), b = csv_of(cfg);
    CHECK(a == b);
    CHECK(a.find(kRecordHeader) != std::string::npos);
  }
}

TEST_CASE("unknowns equal the assembled dimension") {
  for (auto e : {Experiment::EpsNSweep, Experiment::PolyCompare, Experiment::MethodCompare, Experiment::CostStudy}) {
    for (const auto& r : run_experiment(small(e))) {
      const long m = r.l ? poly_count(*r.l, 2) : 0;
      const long n = r.node_count;
      CHECK(r.unknowns == (is_hermite(r.method) ? 3 * n + m : n + m));
    }
  }
}

TEST_CASE("record contents") {
  for (const auto& r : run_experiment(small(Experiment::PolyCompare))) {
    CHECK(r.method == Method::Mhrbf);
    CHECK(r.n == 4);
    CHECK((r.l == 1 || r.l == 9));
  }
  const auto mc = run_experiment(small(Experiment::MethodCompare));
  int h = 0, m = 0;
  for (const auto& r : mc) {
    CHECK(r.l == 1);
    (r.method == Method::Hrbf ? h : m)++;
    if (r.method == Method::Hrbf) CHECK_FALSE(r.n.has_value());
  }
  CHECK(h == 3);
  CHECK(m == 3);
  auto cb = small(Experiment::MethodCompare);
  cb.function = FunctionId::Camelback;
  for (const auto& r : run_experiment(cb)) CHECK(r.l == 6);
}

TEST_CASE("cost study subsets and augmentation filter") {
  const auto recs = run_experiment(small(Experiment::CostStudy));
  bool smallest = false;
  for (const auto& r : recs) {
    CHECK(r.node_count >= 3);
    CHECK(r.node_count <= 20);
    if (r.l) CHECK(poly_count(*r.l, 2) <= r.node_count);
    if (r.node_count == 3 && !r.l) {
      CHECK(r.unknowns == 9);
      smallest = true;
    }
  }
  CHECK(smallest);
  // 2 radii x 2 eps x 2 methods x sum over k of admissible degrees
  std::size_t expected = 0;
  for (int k = 3; k <= 20; ++k) {
    int degrees = 1;  // none
    for (int l = 0; l <= 2; ++l) degrees += poly_count(l, 2) <= k;
    expected += 2 * 2 * 2 * static_cast<std::size_t>(degrees);
  }
  CHECK(recs.size() == expected);
}

TEST_CASE("records survive a CSV round trip") {
  const auto cfg = small(Experiment::CostStudy);
  const auto recs = run_experiment(cfg);
  std::stringstream ss;
  write_records(ss, cfg, recs);
  const std::string text = ss.str();
  const auto back = read_records(ss);
  REQUIRE(back.size() == recs.size());
  std::ostringstream again;
  write_records(again, cfg, back);
  CHECK(again.str() == text);
  CHECK(text.find("# seed=1\n") != std::string::npos);
  CHECK(text.find("# experiment=cost-study\n") != std::string::npos);
}

TEST_CASE("rerunning from a saved node set reproduces the records") {
  const fs::path dir = temp_dir("rerun");
  for (auto e : {Experiment::EpsNSweep, Experiment::RadiusScaling, Experiment::CostStudy}) {
    CAPTURE(experiment_name(e));
    auto cfg = small(e);
    const auto original = csv_of(cfg);
    const fs::path file = dir / (experiment_name(e) + "_nodes.csv");
    save_node_set(file.string(), make_node_set(cfg, cfg.layout));
    cfg.nodes_path = file.string();
    CHECK(csv_of(cfg) == original);
  }
  fs::remove_all(dir);
}

TEST_CASE("different seeds give different layouts") {
  auto a = small(Experiment::EpsNSweep), b = a;
  b.seed = 2;
  CHECK(make_node_set(a, Layout::Disk).data_nodes() != make_node_set(b, Layout::Disk).data_nodes());
}

TEST_CASE("cost layout puts eval nodes in the triangle of the three nearest data nodes") {
  const auto cfg = small(Experiment::CostStudy);
  const NodeSet set = make_node_set(cfg, Layout::Cost);
  const auto tri = k_nearest_subset(set.data_nodes(), {0, 0}, 3);
  CHECK(set.eval_nodes() == triangle_eval_nodes({tri[0], tri[1], tri[2]}, cfg.eval_count));
}

TEST_CASE("settings files and list syntax") {
  CHECK(parse_double_list("0.1, 1,10") == std::vector<double>{0.1, 1, 10});
  CHECK(parse_double_list("1e-3:10:41") == logspace(1e-3, 10, 41));
  CHECK(parse_int_list("1-3,7") == std::vector<int>{1, 2, 3, 7});
  CHECK(parse_poly_list("none,0,6") == std::vector<std::optional<int>>{std::nullopt, 0, 6});
  CHECK_THROWS_AS(parse_double_list("1,x"), InputError);
  CHECK_THROWS_AS(parse_double_list(""), InputError);

  const fs::path dir = temp_dir("settings");
  const fs::path file = dir / "cfg.toml";
  {
    std::ofstream os(file);
    os << "# study settings\n[run]\nkernel = \"ga\"\neps = 0.5,1\nn = 2-4\npoly = none,1\n"
          "seed = 7\nfunction = camelback  # trailing comment\nradius = 0.2\n";
  }
  auto cfg = default_config(Experiment::EpsNSweep);
  for (const auto& [k, v] : read_settings_file(file.string())) apply_setting(cfg, k, v);
  CHECK(cfg.eps_grid == std::vector<double>{0.5, 1});
  CHECK(cfg.n_grid == std::vector<int>{2, 3, 4});
  CHECK(cfg.poly_degrees == std::vector<std::optional<int>>{std::nullopt, 1});
  CHECK(cfg.seed == 7);
  CHECK(cfg.function == FunctionId::Camelback);
  CHECK(cfg.radius == 0.2);

  CHECK_THROWS_AS(apply_setting(cfg, "colour", "red"), InputError);
  CHECK_THROWS_AS(apply_setting(cfg, "seed", "abc"), InputError);
  CHECK_THROWS_AS(apply_setting(cfg, "kernel", "bessel"), InputError);
  {
    std::ofstream os(file);
    os << "kernel = ga\nthis line is wrong\n";
  }
  try {
    read_settings_file(file.string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(read_settings_file((dir / "missing.toml").string()), InputError);
  fs::remove_all(dir);
}

TEST_CASE("floats are written with 17 significant digits and read back exactly") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(parse_double(fmt_double(v), 1) == v);
  }
  CHECK(fmt_double(0.1) == "0.10000000000000001");
  CHECK(fmt_double(1.0) == "1");
}

TEST_CASE("CSV reader") {
  std::istringstream ok("# a=1\n# b=two\nx,y\n1,2\n\n3,4\n");
  const auto t = read_csv(ok);
  CHECK(t.meta.at("a") == "1");
  CHECK(t.meta.at("b") == "two");
  CHECK(t.rows.size() == 2);
  CHECK(t.row_lines == std::vector<int>{4, 6});
  CHECK(t.column("y") == 1);
  CHECK_THROWS_AS(t.column("z"), ParseError);

  std::istringstream ragged("x,y\n1,2\n3\n");
  try {
    read_csv(ragged);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  std::istringstream empty("# only=meta\n#\n");
  CHECK_THROWS_AS(read_csv(empty), ParseError);
  CHECK_THROWS_AS(parse_double("1.5x", 9), ParseError);
  CHECK_THROWS_AS(parse_int("2.5", 9), ParseError);
}

// abel-hp: run the registered benchmark problems and print error tables.

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "abel/errors.hpp"
#include "abel/sweep.hpp"

namespace {

using abel::DomainError;
using nlohmann::json;

constexpr int kUsageError = 1;
constexpr int kRowFailed = 2;

double parse_noise(const std::string& text) {
  static const std::regex pattern(R"(\s*h\^([0-9]*\.?[0-9]+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw DomainError("noise must look like h^2.5, got '" + text + "'");
  return std::stod(m[1].str());
}

abel::RhoMetric parse_rho(const std::string& text) {
  if (text == "E1" || text == "e1") return abel::RhoMetric::E1;
  if (text == "E2" || text == "e2") return abel::RhoMetric::E2;
  throw DomainError("rho metric must be E1 or E2");
}

abel::ErrorMetric parse_metric(const std::string& text) {
  if (text == "E1_vs_reference") return abel::ErrorMetric::E1_vs_reference;
  if (text == "E2_vs_reference") return abel::ErrorMetric::E2_vs_reference;
  if (text == "successive_diff") return abel::ErrorMetric::successive_diff;
  throw DomainError("unknown error metric '" + text + "'");
}

void apply_solver_json(const json& j, abel::SolverOptions& s) {
  for (const auto& [key, value] : j.items()) {
    if (key == "newton_tol") {
      s.newton_tol = value.get<double>();
    } else if (key == "newton_max_iter") {
      s.newton_max_iter = value.get<int>();
    } else if (key == "newton_max_halvings") {
      s.newton_max_halvings = value.get<int>();
    } else if (key == "descent_steps") {
      s.descent_steps = value.get<int>();
    } else if (key == "descent_step_size") {
      s.descent_step_size = value.get<double>();
    } else if (key == "use_linear_path") {
      s.use_linear_path = value.get<bool>();
    } else if (key == "execution") {
      const auto e = value.get<std::string>();
      if (e != "serial" && e != "parallel") throw DomainError("execution must be serial or parallel");
      s.execution = e == "serial" ? abel::Execution::serial : abel::Execution::parallel;
    } else {
      throw DomainError("unknown solver option '" + key + "'");
    }
  }
}

struct RunArgs {
  std::string problem;
  std::vector<int> N;
  std::vector<int> M;
  std::optional<double> alpha;
  std::optional<double> tol;
  std::string adaptive;
  std::string noise;
  std::string format = "csv";
  std::string out;
  std::string config;
  std::string rho = "E1";
  std::string metric = "E2_vs_reference";
  int max_L = 400;
  bool closed_form = false;
  bool serial = false;
};

struct RunPlan {
  abel::BenchmarkId id;
  std::vector<abel::SweepConfig> sweep;
  abel::SweepOptions options;
};

RunPlan build_plan(const RunArgs& args, const CLI::App& run) {
  json config = json::object();
  if (!args.config.empty()) {
    std::ifstream in(args.config);
    if (!in) throw DomainError("cannot open config file " + args.config);
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      throw DomainError(std::string("bad config file: ") + e.what());
    }
  }

  RunPlan plan{};
  std::string problem = args.problem;
  if (problem.empty() && config.contains("problem")) problem = config.at("problem").get<std::string>();
  if (problem.empty()) throw DomainError("--problem is required");
  plan.id = abel::parse_benchmark(problem);

  auto& o = plan.options;
  if (config.contains("alpha")) o.benchmark.alpha = config.at("alpha").get<double>();
  if (args.alpha) o.benchmark.alpha = args.alpha;
  o.benchmark.closed_form_rhs = args.closed_form;
  if (config.contains("solver")) apply_solver_json(config.at("solver"), o.solver);
  if (args.serial) o.solver.execution = abel::Execution::serial;

  std::string noise = args.noise;
  if (noise.empty() && config.contains("noise")) noise = config.at("noise").get<std::string>();
  if (!noise.empty()) o.noise_power = parse_noise(noise);
  o.rho_metric = parse_rho(run.count("--rho") == 0 && config.contains("rho") ? config.at("rho").get<std::string>()
                                                                               : args.rho);

  std::optional<abel::AdaptiveOptions> adaptive;
  if (config.contains("adaptive")) {
    const json& a = config.at("adaptive");
    adaptive.emplace();
    if (a.contains("tol")) adaptive->tol = a.at("tol").get<double>();
    if (a.contains("strategy")) adaptive->strategy = abel::parse_strategy(a.at("strategy").get<std::string>());
    if (a.contains("max_L")) adaptive->max_L = a.at("max_L").get<int>();
    if (a.contains("error_metric")) adaptive->error_metric = parse_metric(a.at("error_metric").get<std::string>());
  }
  if (!args.adaptive.empty() || args.tol) {
    if (!adaptive) adaptive.emplace();
    if (!args.adaptive.empty()) adaptive->strategy = abel::parse_strategy(args.adaptive);
    if (args.tol) adaptive->tol = *args.tol;
    if (run.count("--max-L")) adaptive->max_L = args.max_L;
    if (run.count("--metric")) adaptive->error_metric = parse_metric(args.metric);
  }
  o.adaptive = adaptive;

  if (!args.N.empty() || !args.M.empty()) {
    if (args.N.empty() || args.M.empty()) throw DomainError("--N and --M go together");
    for (int m : args.M) {
      for (int n : args.N) plan.sweep.push_back({n, m, {}, {}});
    }
  } else if (config.contains("sweep")) {
    for (const json& entry : config.at("sweep")) plan.sweep.push_back(abel::sweep_config_from_json(entry));
  } else if (config.contains("mesh")) {
    plan.sweep.push_back(abel::sweep_config_from_json(config.at("mesh")));
  } else {
    throw DomainError("nothing to run: give --N and --M, or a config with mesh or sweep");
  }
  return plan;
}

int list_problems() {
  for (abel::BenchmarkId id : abel::all_benchmarks()) {
    const abel::BenchmarkProblem b = abel::make_benchmark(id, {.alpha = 0.5});
    std::cout << abel::to_string(id) << (b.alpha_parameterized ? "  (needs --alpha)" : "") << "\n    "
              << b.description << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hp Jacobi-Gauss collocation for nonlinear Abel integral equations of the first kind"};
  app.require_subcommand(1);
  CLI::App* list = app.add_subcommand("list", "Print the benchmark registry");

  RunArgs args;
  CLI::App* run = app.add_subcommand("run", "Solve a benchmark over a sweep of meshes and print the error table");
  run->add_option("--problem", args.problem, "Benchmark id (ex1 ... ex6 or the full name)");
  run->add_option("--N", args.N, "Element counts, comma separated")->delimiter(',');
  run->add_option("--M", args.M, "Polynomial degrees M_n, comma separated")->delimiter(',');
  run->add_option("--alpha", args.alpha, "Exponent for ex1");
  run->add_option("--tol", args.tol, "Adaptive target error");
  run->add_option("--adaptive", args.adaptive, "Adaptive strategy: p_first, h_first or alternate");
  run->add_option("--max-L", args.max_L, "Adaptive cap on the unknown count");
  run->add_option("--metric", args.metric, "Adaptive error metric");
  run->add_option("--noise", args.noise, "Right-hand side noise, e.g. h^2.5");
  run->add_option("--rho", args.rho, "Error used for rho_N: E1 or E2");
  run->add_option("--format", args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--out", args.out, "Write the report here instead of stdout");
  run->add_option("--config", args.config, "JSON config file");
  run->add_flag("--closed-form-rhs", args.closed_form, "ex1: use the 1F1 closed form for f");
  run->add_flag("--serial", args.serial, "Use the serial history kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (*list) return list_problems();

  RunPlan plan;
  try {
    plan = build_plan(args, *run);
  } catch (const std::exception& e) {
    std::cerr << "abel-hp: " << e.what() << "\n";
    return kUsageError;
  }

  abel::BenchReport report;
  try {
    report = abel::run_sweep(plan.id, plan.sweep, plan.options);
  } catch (const DomainError& e) {
    std::cerr << "abel-hp: " << e.what() << "\n";
    return kUsageError;
  }

  const std::string text = args.format == "json" ? report.to_json().dump(2) + "\n" : report.to_csv();
  if (args.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.out);
    if (!out) {
      std::cerr << "abel-hp: cannot write " << args.out << "\n";
      return kUsageError;
    }
    out << text;
  }
  for (const abel::BenchRow& row : report.rows) {
    if (row.failed) std::cerr << "abel-hp: row N=" << row.N << " failed: " << row.error << "\n";
  }
  if (auto rho = report.mean_rho()) std::cerr << "mean rho_N = " << *rho << "\n";
  return report.any_failed() ? kRowFailed : 0;
}

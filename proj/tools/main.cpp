#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "proxpoint/config.hpp"
#include "proxpoint/io.hpp"

namespace fs = std::filesystem;
using namespace proxpoint;

namespace {

bool verbose_enabled() {
  const char* env = std::getenv("PROXPOINT_VERBOSE");
  return env != nullptr && std::string(env) != "0";
}

struct CellResult {
  std::vector<TraceRow> rows;
  Vector solution;
  double final_psi = 0.0;
  long outer_iters = 0;
  long inner_total = 0;
  std::string status;
};

CellResult run_cell(const BuiltProblem& built, SolverChoice solver, const RunConfig& config,
                    double mu, double sigma) {
  CellResult cell;
  const Vector u0 = Vector::Zero(built.problem.domain_dim());
  if (solver == SolverChoice::ista) {
    IstaParams params = config.ista;
    if (config.ppp.total_iter_budget)
      params.max_iters = static_cast<int>(*config.ppp.total_iter_budget);
    const IstaResult result = ista_run(built.problem, u0, params);
    cell.rows = io::ista_trace_rows(result, params.step_size);
    cell.solution = result.solution;
    cell.outer_iters = static_cast<long>(cell.rows.size());
    cell.inner_total = cell.outer_iters;
    cell.status = result.reached_tol ? "converged" : "max_iters";
  } else {
    PppParams params = config.ppp;
    params.inner.method =
        solver == SolverChoice::ppp_gcg ? InnerMethod::gcg : InnerMethod::damped_ista;
    params.inner.mu = mu;
    params.inner.sigma = sigma;
    if (verbose_enabled()) {
      params.observer = [](const Problem&, const Vector& anchor, double mu_n,
                           const SubproblemResult& res) {
        std::fprintf(stderr, "inner solve: %d iters, |v|=%.3e, |eps|=%.3e, mu=%g, %s\n",
                     res.inner_iters, res.cert.norm_v, res.cert.norm_eps, mu_n,
                     res.terminated_by == InnerTermination::sigma_test ? "accepted" : "cut");
        (void)anchor;
      };
    }
    const RunResult result = run_ppp(built.problem, u0, params);
    cell.rows = result.trace.rows;
    cell.solution = result.solution;
    cell.outer_iters = static_cast<long>(cell.rows.size());
    cell.inner_total = result.trace.inner_total;
    cell.status = to_string(result.trace.status);
  }
  cell.final_psi =
      cell.rows.empty() ? objective(built.problem, cell.solution) : cell.rows.back().psi;
  return cell;
}

void write_cell_outputs(const fs::path& dir, const BuiltProblem& built, const CellResult& cell,
                        bool images) {
  fs::create_directories(dir);
  io::write_trace_csv((dir / "trace.csv").string(), cell.rows);
  io::write_vector_csv((dir / "solution.csv").string(), cell.solution);
  if (images && built.image_size > 0) {
    io::write_pgm((dir / "solution.pgm").string(), cell.solution, built.image_size,
                  built.image_size);
    io::write_pgm((dir / "data.pgm").string(), built.problem.g, built.image_size,
                  built.image_size);
  }
}

int command_run(const RunConfig& config) {
  const BuiltProblem built = build_problem(config);
  const CellResult cell =
      run_cell(built, config.solver, config, config.ppp.inner.mu, config.ppp.inner.sigma);
  write_cell_outputs(config.output_dir, built, cell, config.write_images);
  std::printf("solver = %s\n", to_string(config.solver).c_str());
  std::printf("status = %s\n", cell.status.c_str());
  std::printf("outer_iters = %ld\n", cell.outer_iters);
  std::printf("inner_total = %ld\n", cell.inner_total);
  std::printf("final_psi = %s\n", io::format_double(cell.final_psi).c_str());
  return 0;
}

std::string cell_dir_name(SolverChoice solver, double mu, double sigma) {
  if (solver == SolverChoice::ista) return "ista";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s_mu%g_sigma%g", to_string(solver).c_str(), mu, sigma);
  return buf;
}

int command_sweep(RunConfig config) {
  if (!config.ppp.total_iter_budget) config.ppp.total_iter_budget = 350;
  if (config.sweep_mu.empty()) config.sweep_mu = {config.ppp.inner.mu};
  if (config.sweep_sigma.empty()) config.sweep_sigma = {config.ppp.inner.sigma};
  if (config.sweep_solvers.empty()) config.sweep_solvers = {config.solver};

  const BuiltProblem built = build_problem(config);
  fs::create_directories(config.output_dir);
  std::ofstream summary(fs::path(config.output_dir) / "summary.csv", std::ios::binary);
  summary << "solver,mu,sigma,outer_iters,inner_total,final_psi,status\n";

  for (SolverChoice solver : config.sweep_solvers) {
    const bool is_ista = solver == SolverChoice::ista;
    const std::vector<double> mus = is_ista ? std::vector<double>{0.0} : config.sweep_mu;
    const std::vector<double> sigmas = is_ista ? std::vector<double>{0.0} : config.sweep_sigma;
    for (double mu : mus) {
      for (double sigma : sigmas) {
        const CellResult cell = run_cell(built, solver, config, mu, sigma);
        const fs::path dir = fs::path(config.output_dir) / cell_dir_name(solver, mu, sigma);
        write_cell_outputs(dir, built, cell, config.write_images);
        summary << to_string(solver) << ',' << io::format_double(mu) << ','
                << io::format_double(sigma) << ',' << cell.outer_iters << ','
                << cell.inner_total << ',' << io::format_double(cell.final_psi) << ','
                << cell.status << '\n';
        std::printf("%s: status=%s outer=%ld inner=%ld psi=%s\n",
                    cell_dir_name(solver, mu, sigma).c_str(), cell.status.c_str(),
                    cell.outer_iters, cell.inner_total,
                    io::format_double(cell.final_psi).c_str());
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection proximal-point solver for l1-regularized least squares"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir_override;
  long seed_override = -1;

  CLI::App* run = app.add_subcommand("run", "Execute one solve from a config file");
  run->add_option("config", config_path, "Path to the config file")->required();
  run->add_option("--output-dir", output_dir_override, "Override output_dir");
  run->add_option("--seed", seed_override, "Override seed");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a (mu, sigma, solver) parameter sweep");
  sweep->add_option("config", config_path, "Path to the config file")->required();
  sweep->add_option("--output-dir", output_dir_override, "Override output_dir");
  sweep->add_option("--seed", seed_override, "Override seed");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config = parse_config_file(config_path);
    if (!output_dir_override.empty()) config.output_dir = output_dir_override;
    if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
    return app.got_subcommand("run") ? command_run(config) : command_sweep(config);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver aborted: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "proxpoint/ista.hpp"
#include "proxpoint/ppp.hpp"
#include "proxpoint/problems.hpp"

namespace proxpoint {

enum class SolverChoice { ppp_ista, ppp_gcg, ista };

std::string to_string(SolverChoice s);

/// Random dense Gaussian instance (see make_random_fbi_problem).
struct RandomFbiSpec {
  Index m = 20;
  Index n = 40;
  Index sparsity = 4;
  double alpha = 0.05;
};

/// Problem loaded from files: dense operator (row-major CSV) plus data vector.
struct CsvProblemSpec {
  std::string operator_csv;
  std::string data_csv;
  double alpha = 1.0;
};

/// Hologram spec plus optional random particle placement (used when the
/// particle list is empty and n_particles > 0).
struct HologramConfig {
  HologramSpec spec;
  int n_particles = 0;
  Index min_separation = 5;
};

struct RunConfig {
  std::variant<DeconvSpec, HologramConfig, RandomFbiSpec, CsvProblemSpec> problem;
  SolverChoice solver = SolverChoice::ppp_ista;
  PppParams ppp;
  IstaParams ista;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  bool write_images = false;

  // sweep mode: Cartesian product of these lists, sharing the budget
  std::vector<double> sweep_mu;
  std::vector<double> sweep_sigma;
  std::vector<SolverChoice> sweep_solvers;
};

/// Malformed configuration; the message is anchored as "path:line: ...".
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& path_for_errors);

/// Builds the configured problem.  Returns the problem, the ground truth
/// (empty for CSV problems) and the image side length (0 for 1D problems).
struct BuiltProblem {
  Problem problem;
  Vector ground_truth;
  Index image_size = 0;
};

BuiltProblem build_problem(const RunConfig& config);

}  // namespace proxpoint

#include "proxpoint/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "proxpoint/io.hpp"

namespace proxpoint {

std::string to_string(SolverChoice s) {
  switch (s) {
    case SolverChoice::ppp_ista: return "ppp_ista";
    case SolverChoice::ppp_gcg: return "ppp_gcg";
    case SolverChoice::ista: return "ista";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class KeyValues {
public:
  KeyValues(const std::string& text, std::string origin) : origin_(std::move(origin)) {
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string stripped = trim(line);
      if (stripped.empty()) continue;
      const auto eq = stripped.find('=');
      if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty()) fail(line_no, "empty key");
      if (entries_.count(key)) fail(line_no, "duplicate key '" + key + "'");
      entries_[key] = Entry{value, line_no, false};
    }
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(origin_ + ":" + std::to_string(line) + ": " + msg);
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  const Entry* get(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    const Entry* e = get(key);
    return e ? e->value : fallback;
  }

  double get_double(const std::string& key, double fallback) {
    const Entry* e = get(key);
    if (!e) return fallback;
    try {
      std::size_t pos = 0;
      const double v = std::stod(e->value, &pos);
      if (pos != e->value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail(e->line, "expected a number for '" + key + "', got '" + e->value + "'");
    }
  }

  long get_long(const std::string& key, long fallback) {
    const Entry* e = get(key);
    if (!e) return fallback;
    try {
      std::size_t pos = 0;
      const long v = std::stol(e->value, &pos);
      if (pos != e->value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail(e->line, "expected an integer for '" + key + "', got '" + e->value + "'");
    }
  }

  bool get_bool(const std::string& key, bool fallback) {
    const Entry* e = get(key);
    if (!e) return fallback;
    if (e->value == "true" || e->value == "1") return true;
    if (e->value == "false" || e->value == "0") return false;
    fail(e->line, "expected true/false for '" + key + "'");
  }

  std::vector<double> get_double_list(const std::string& key) {
    const Entry* e = get(key);
    if (!e) return {};
    std::vector<double> out;
    for (const std::string& item : split(e->value, ',')) {
      if (item.empty()) continue;
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        fail(e->line, "expected a number list for '" + key + "'");
      }
    }
    return out;
  }

  void check_all_used() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.used) fail(entry.line, "unknown key '" + key + "'");
    }
  }

private:
  std::string origin_;
  std::map<std::string, Entry> entries_;
};

SolverChoice parse_solver_name(KeyValues& kv, const Entry& e) {
  if (e.value == "ppp_ista") return SolverChoice::ppp_ista;
  if (e.value == "ppp_gcg") return SolverChoice::ppp_gcg;
  if (e.value == "ista") return SolverChoice::ista;
  kv.fail(e.line, "unknown solver '" + e.value + "' (expected ppp_ista, ppp_gcg or ista)");
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  KeyValues kv(text, origin);
  RunConfig config;

  const Entry* type = kv.get("problem.type");
  if (!type) throw ConfigError(origin + ":1: missing required key 'problem.type'");

  if (type->value == "deconv") {
    DeconvSpec spec;
    spec.grid_size = kv.get_long("problem.grid_size", spec.grid_size);
    spec.n_coeffs = kv.get_long("problem.n_coeffs", spec.n_coeffs);
    spec.kernel_width_param = kv.get_double("problem.kernel_width", spec.kernel_width_param);
    spec.noise_sigma = kv.get_double("problem.noise_sigma", spec.noise_sigma);
    spec.alpha = kv.get_double("problem.alpha", spec.alpha);
    if (const Entry* e = kv.get("problem.spikes")) {
      spec.spikes.clear();
      for (const std::string& item : split(e->value, ',')) {
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) kv.fail(e->line, "spikes must be 'index:amplitude' pairs");
        try {
          spec.spikes.emplace_back(std::stol(item.substr(0, colon)),
                                   std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
          kv.fail(e->line, "spikes must be 'index:amplitude' pairs");
        }
      }
    }
    config.problem = spec;
  } else if (type->value == "hologram") {
    HologramConfig holo;
    holo.spec.image_size = kv.get_long("problem.image_size", holo.spec.image_size);
    holo.spec.pixel_pitch = kv.get_double("problem.pixel_pitch", holo.spec.pixel_pitch);
    holo.spec.wavelength = kv.get_double("problem.wavelength", holo.spec.wavelength);
    holo.spec.distance = kv.get_double("problem.distance", holo.spec.distance);
    holo.spec.noise_sigma = kv.get_double("problem.noise_sigma", holo.spec.noise_sigma);
    holo.spec.alpha = kv.get_double("problem.alpha", holo.spec.alpha);
    holo.n_particles = static_cast<int>(kv.get_long("problem.n_particles", holo.n_particles));
    holo.min_separation = kv.get_long("problem.min_separation", holo.min_separation);
    if (const Entry* e = kv.get("problem.particles")) {
      for (const std::string& item : split(e->value, ',')) {
        if (item.empty()) continue;
        const auto parts = split(item, ':');
        if (parts.size() != 3) kv.fail(e->line, "particles must be 'x:y:amplitude' triples");
        try {
          holo.spec.particles.emplace_back(std::stol(parts[0]), std::stol(parts[1]),
                                           std::stod(parts[2]));
        } catch (const std::exception&) {
          kv.fail(e->line, "particles must be 'x:y:amplitude' triples");
        }
      }
    }
    config.problem = holo;
  } else if (type->value == "random_fbi") {
    RandomFbiSpec spec;
    spec.m = kv.get_long("problem.m", spec.m);
    spec.n = kv.get_long("problem.n", spec.n);
    spec.sparsity = kv.get_long("problem.sparsity", spec.sparsity);
    spec.alpha = kv.get_double("problem.alpha", spec.alpha);
    config.problem = spec;
  } else if (type->value == "csv") {
    CsvProblemSpec spec;
    spec.operator_csv = kv.get_string("problem.operator_csv", "");
    spec.data_csv = kv.get_string("problem.data_csv", "");
    spec.alpha = kv.get_double("problem.alpha", spec.alpha);
    if (spec.operator_csv.empty() || spec.data_csv.empty())
      kv.fail(type->line, "csv problems need problem.operator_csv and problem.data_csv");
    config.problem = spec;
  } else {
    kv.fail(type->line, "unknown problem.type '" + type->value +
                            "' (expected deconv, hologram, random_fbi or csv)");
  }

  if (const Entry* e = kv.get("solver.type")) config.solver = parse_solver_name(kv, *e);

  config.ppp.inner.mu = kv.get_double("ppp.mu", config.ppp.inner.mu);
  config.ppp.inner.sigma = kv.get_double("ppp.sigma", config.ppp.inner.sigma);
  config.ppp.inner.step_size = kv.get_double("ppp.step_size", config.ppp.inner.step_size);
  config.ppp.inner.max_inner_iters =
      static_cast<int>(kv.get_long("ppp.max_inner", config.ppp.inner.max_inner_iters));
  config.ppp.max_outer_iters =
      static_cast<int>(kv.get_long("ppp.max_outer", config.ppp.max_outer_iters));
  if (kv.has("ppp.total_budget")) config.ppp.total_iter_budget = kv.get_long("ppp.total_budget", 0);
  if (kv.has("ppp.v_tol")) config.ppp.v_tol = kv.get_double("ppp.v_tol", 0.0);
  config.ppp.y_tol = kv.get_double("ppp.y_tol", config.ppp.y_tol);
  config.ppp.mu_schedule.decay = kv.get_double("ppp.mu_decay", config.ppp.mu_schedule.decay);
  config.ppp.mu_schedule.floor = kv.get_double("ppp.mu_floor", config.ppp.mu_schedule.floor);

  config.ista.step_size = kv.get_double("ista.step_size", config.ista.step_size);
  config.ista.max_iters = static_cast<int>(kv.get_long("ista.max_iters", config.ista.max_iters));
  config.ista.tol = kv.get_double("ista.tol", config.ista.tol);

  config.seed = static_cast<std::uint64_t>(kv.get_long("seed", 0));
  config.output_dir = kv.get_string("output_dir", config.output_dir);
  config.write_images = kv.get_bool("output.images", config.write_images);

  config.sweep_mu = kv.get_double_list("sweep.mu");
  config.sweep_sigma = kv.get_double_list("sweep.sigma");
  if (const Entry* e = kv.get("sweep.solvers")) {
    for (const std::string& item : split(e->value, ',')) {
      if (item.empty()) continue;
      Entry fake{item, e->line, true};
      config.sweep_solvers.push_back(parse_solver_name(kv, fake));
    }
  }

  kv.check_all_used();
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path + ": cannot open config file");
  std::stringstream buffer;
  buffer << is.rdbuf();
  return parse_config_text(buffer.str(), path);
}

BuiltProblem build_problem(const RunConfig& config) {
  BuiltProblem built;
  if (const auto* spec = std::get_if<DeconvSpec>(&config.problem)) {
    auto [problem, truth] = make_deconvolution_problem(*spec, config.seed);
    built.problem = std::move(problem);
    built.ground_truth = std::move(truth);
  } else if (const auto* holo = std::get_if<HologramConfig>(&config.problem)) {
    HologramSpec spec = holo->spec;
    if (spec.particles.empty() && holo->n_particles > 0)
      spec.particles =
          random_particles(spec.image_size, holo->n_particles, holo->min_separation, config.seed);
    auto [problem, truth] = make_hologram_problem(spec, config.seed);
    built.problem = std::move(problem);
    built.ground_truth = std::move(truth);
    built.image_size = spec.image_size;
  } else if (const auto* fbi = std::get_if<RandomFbiSpec>(&config.problem)) {
    auto [problem, truth] =
        make_random_fbi_problem(fbi->m, fbi->n, fbi->sparsity, fbi->alpha, config.seed);
    built.problem = std::move(problem);
    built.ground_truth = std::move(truth);
  } else {
    const auto& csv = std::get<CsvProblemSpec>(config.problem);
    Matrix mat = io::read_dense_csv(csv.operator_csv);
    Vector g = io::read_vector_csv(csv.data_csv);
    built.problem = Problem(make_dense(std::move(mat)), std::move(g), csv.alpha);
  }
  return built;
}

}  // namespace proxpoint

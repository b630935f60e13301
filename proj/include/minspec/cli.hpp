#pragma once

// Config-file driven front end: flat key = value configs, two-column data
// tables, CSV/JSON emission, and one runner per experiment subcommand.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minspec/experiments.hpp"

namespace minspec::cli {

struct RunConfig {
  // manifold
  std::string manifold = "circle";
  double length1 = 1.0;
  double length2 = 1.0;
  std::size_t n1 = 128;
  std::size_t n2 = 0;  // 0: same as n1
  // coupling
  std::string coupling = "square";  // square | identity | exp | table:<path>
  double kappa0 = 2.0 * 3.141592653589793;
  // sweep knobs
  double alpha = 0.25;
  std::vector<double> alpha_list;
  std::vector<double> epsilon_list;
  std::vector<double> delta_list;
  std::size_t eigen_count = 6;
  std::size_t steps = 60;
  double step_size = 0.05;
  std::string smoothing = "mollified";
  std::string direction = "v1";  // q for perturb/sweep-alpha: v1 | v2 | random
  std::size_t band_limit = 8;    // modes in random fields
  // potential selection for `spectrum` and start point for `optimize`
  std::string potential = "constant";  // constant | mode | spike | ball | table:<path>
  double potential_epsilon = 0.1;
  double potential_delta = 0.1;
  // run control
  std::string discretization = "fourier";
  std::uint64_t seed = 1;
  std::string out_dir = "./out";
  bool quiet = false;
};

// Flat `key = value` file; '#' starts a comment; lists are comma-separated.
RunConfig parse_config(const std::filesystem::path& path);

// Two-column numeric table with strictly increasing abscissae.
struct Table {
  std::vector<double> x;
  std::vector<double> y;
  // Linear interpolation; periodic wraps x into [x0, x0 + period),
  // clamped holds the end values outside the range.
  double periodic(double x, double period) const;
  double clamped(double x) const;
};
Table load_table(const std::filesystem::path& path);

// Exit status: 0 ok, 2 validation error, 3 numerical failure.
int run(const std::string& subcommand, const RunConfig& config);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace minspec::cli

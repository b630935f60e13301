#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "minspec/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"minspec: constrained-potential eigenvalue studies on the "
               "circle and flat torus"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string discretization;
  std::uint64_t seed = 0;
  bool have_seed = false;
  bool quiet = false;

  const std::vector<std::string> subcommands = {
      "spectrum", "perturb",     "sweep-alpha", "spike-limit",
      "torus-collapse", "hill-bound", "lemma-check", "optimize"};
  for (const auto& name : subcommands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat key = value config file")
        ->required();
    sub->add_option("--out", out_dir, "output directory (default ./out)");
    sub->add_option("--seed", seed, "random seed override")
        ->each([&](const std::string&) { have_seed = true; });
    sub->add_option("--discretization", discretization, "fourier | fd2")
        ->check(CLI::IsMember({"fourier", "fd2"}));
    sub->add_flag("--quiet", quiet, "suppress progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    minspec::cli::RunConfig config = minspec::cli::parse_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (have_seed) config.seed = seed;
    if (!discretization.empty()) config.discretization = discretization;
    config.quiet = quiet;
    if (!quiet)
      std::fprintf(stderr, "minspec %s: running %s -> %s\n",
                   minspec::cli::kToolVersion, subcommand.c_str(),
                   config.out_dir.c_str());
    return minspec::cli::run(subcommand, config);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

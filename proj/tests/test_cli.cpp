#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "minspec/cli.hpp"

using namespace minspec;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("minspec_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name,
                    const std::string& body) {
  const fs::path p = dir / name;
  std::ofstream out(p, std::ios::binary);
  out << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_config reads flat key = value files") {
  const auto dir = temp_dir("parse");

  SUBCASE("all recognized keys land in the struct") {
    const auto p = write_file(dir, "a.cfg",
                              "# comment line\n"
                              "manifold = torus\n"
                              "L1 = 2.0\n"
                              "L2 = 0.5   # trailing comment\n"
                              "N1 = 32\n"
                              "N2 = 16\n"
                              "coupling = exp\n"
                              "kappa0 = 1.5\n"
                              "alpha = 0.4\n"
                              "alpha_list = 0.1, 0.2, 0.3\n"
                              "epsilon_list = 0.04,0.02\n"
                              "delta_list = 0.2,0.1\n"
                              "eigen_count = 4\n"
                              "steps = 11\n"
                              "step_size = 0.01\n"
                              "smoothing = hard\n"
                              "direction = random\n"
                              "band_limit = 5\n"
                              "potential = spike\n"
                              "potential_epsilon = 0.05\n"
                              "potential_delta = 0.15\n"
                              "discretization = fd2\n"
                              "seed = 17\n"
                              "out = /tmp/somewhere\n");
    const auto c = cli::parse_config(p);
    CHECK(c.manifold == "torus");
    CHECK(c.length1 == 2.0);
    CHECK(c.length2 == 0.5);
    CHECK(c.n1 == 32);
    CHECK(c.n2 == 16);
    CHECK(c.coupling == "exp");
    CHECK(c.kappa0 == 1.5);
    CHECK(c.alpha == 0.4);
    CHECK(c.alpha_list == std::vector<double>{0.1, 0.2, 0.3});
    CHECK(c.epsilon_list == std::vector<double>{0.04, 0.02});
    CHECK(c.delta_list == std::vector<double>{0.2, 0.1});
    CHECK(c.eigen_count == 4);
    CHECK(c.steps == 11);
    CHECK(c.step_size == 0.01);
    CHECK(c.smoothing == "hard");
    CHECK(c.direction == "random");
    CHECK(c.band_limit == 5);
    CHECK(c.potential == "spike");
    CHECK(c.potential_epsilon == 0.05);
    CHECK(c.potential_delta == 0.15);
    CHECK(c.discretization == "fd2");
    CHECK(c.seed == 17);
    CHECK(c.out_dir == "/tmp/somewhere");
  }

  SUBCASE("unknown keys and malformed lines report the line number") {
    const auto bad_key = write_file(dir, "bad_key.cfg", "alpha = 0.1\nwibble = 3\n");
    try {
      cli::parse_config(bad_key);
      FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("wibble") != std::string::npos);
    }
    const auto no_eq = write_file(dir, "no_eq.cfg", "alpha 0.1\n");
    try {
      cli::parse_config(no_eq);
      FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    CHECK_THROWS_AS(cli::parse_config(dir / "missing.cfg"), std::invalid_argument);
  }
}

TEST_CASE("load_table validation and interpolation") {
  const auto dir = temp_dir("table");

  SUBCASE("rejects non-increasing abscissae and short files") {
    const auto p = write_file(dir, "dec.tbl", "0.0 1.0\n0.5 2.0\n0.5 3.0\n");
    CHECK_THROWS_AS(cli::load_table(p), std::invalid_argument);
    const auto q = write_file(dir, "one.tbl", "0.0 1.0\n");
    CHECK_THROWS_AS(cli::load_table(q), std::invalid_argument);
    const auto r = write_file(dir, "junk.tbl", "0.0 1.0\nabc def\n");
    CHECK_THROWS_AS(cli::load_table(r), std::invalid_argument);
  }

  SUBCASE("clamped interpolation holds the endpoint values") {
    const auto p = write_file(dir, "c.tbl", "0.0 1.0\n1.0 3.0\n2.0 2.0\n");
    const auto t = cli::load_table(p);
    CHECK(t.clamped(-5.0) == doctest::Approx(1.0));
    CHECK(t.clamped(0.5) == doctest::Approx(2.0));
    CHECK(t.clamped(1.5) == doctest::Approx(2.5));
    CHECK(t.clamped(9.0) == doctest::Approx(2.0));
  }

  SUBCASE("periodic interpolation wraps the final segment") {
    const auto p = write_file(dir, "p.tbl", "0.0 1.0\n0.5 3.0\n");
    const auto t = cli::load_table(p);
    CHECK(t.periodic(0.25, 1.0) == doctest::Approx(2.0));
    // Between x = 0.5 and x = 1.0 the value returns linearly to y(0).
    CHECK(t.periodic(0.75, 1.0) == doctest::Approx(2.0));
    CHECK(t.periodic(1.25, 1.0) == doctest::Approx(2.0));
    CHECK(t.periodic(-0.75, 1.0) == doctest::Approx(2.0));
  }
}

TEST_CASE("run() writes CSV plus summary.json and reports exit codes") {
  const auto dir = temp_dir("run");

  SUBCASE("spectrum subcommand produces well-formed outputs") {
    cli::RunConfig c;
    c.n1 = 32;
    c.eigen_count = 3;
    c.alpha = 0.2;
    c.quiet = true;
    c.out_dir = (dir / "spec_out").string();
    CHECK(cli::run("spectrum", c) == 0);
    const auto csv = slurp(dir / "spec_out" / "spectrum.csv");
    CHECK(csv.rfind("j,eigenvalue,residual\n", 0) == 0);
    CHECK(csv.find("\r") == std::string::npos);
    const auto summary =
        nlohmann::json::parse(slurp(dir / "spec_out" / "summary.json"));
    CHECK(summary.at("subcommand") == "spectrum");
    CHECK(summary.at("version") == cli::kToolVersion);
    CHECK(summary.at("config").at("N1") == 32);
    CHECK(summary.contains("timing"));
    for (const auto& inv : summary.at("invariants")) {
      CAPTURE(inv.at("name").get<std::string>());
      CHECK(inv.at("pass").get<bool>());
    }
  }

  SUBCASE("every subcommand runs on a small problem") {
    for (const std::string sub :
         {"perturb", "sweep-alpha", "spike-limit", "hill-bound", "lemma-check",
          "optimize"}) {
      cli::RunConfig c;
      c.n1 = 64;
      c.quiet = true;
      c.steps = 5;
      c.eigen_count = 3;
      c.alpha_list = {0.2, 0.3};
      c.epsilon_list = {0.04, 0.02};
      c.delta_list = {0.4, 0.2, 0.1};
      c.out_dir = (dir / ("out_" + sub)).string();
      CAPTURE(sub);
      CHECK(cli::run(sub, c) == 0);
      CHECK(fs::exists(dir / ("out_" + sub) / (sub + ".csv")));
      CHECK(fs::exists(dir / ("out_" + sub) / "summary.json"));
    }
    cli::RunConfig c;
    c.manifold = "torus";
    c.n1 = 16;
    c.coupling = "square";
    c.kappa0 = 1.0;
    c.alpha = 1.0;
    c.eigen_count = 3;
    c.delta_list = {0.3, 0.2};
    c.quiet = true;
    c.out_dir = (dir / "out_tc").string();
    CHECK(cli::run("torus-collapse", c) == 0);
    CHECK(fs::exists(dir / "out_tc" / "torus-collapse.csv"));
  }

  SUBCASE("validation problems exit with code 2") {
    cli::RunConfig c;
    c.quiet = true;
    c.out_dir = (dir / "bad").string();
    c.manifold = "klein-bottle";
    CHECK(cli::run("spectrum", c) == 2);
    c.manifold = "circle";
    CHECK(cli::run("no-such-subcommand", c) == 2);
    c.discretization = "spectral-element";
    CHECK(cli::run("spectrum", c) == 2);
  }

  SUBCASE("identical seed reproduces output bytes; timing is the only drift") {
    cli::RunConfig c;
    c.n1 = 32;
    c.direction = "random";
    c.seed = 2024;
    c.quiet = true;
    c.alpha_list = {0.2, 0.3};
    c.epsilon_list = {0.04, 0.02};
    c.out_dir = (dir / "rep_a").string();
    REQUIRE(cli::run("sweep-alpha", c) == 0);
    c.out_dir = (dir / "rep_b").string();
    REQUIRE(cli::run("sweep-alpha", c) == 0);
    CHECK(slurp(dir / "rep_a" / "sweep-alpha.csv") ==
          slurp(dir / "rep_b" / "sweep-alpha.csv"));
    auto ja = nlohmann::json::parse(slurp(dir / "rep_a" / "summary.json"));
    auto jb = nlohmann::json::parse(slurp(dir / "rep_b" / "summary.json"));
    ja.erase("timing");
    jb.erase("timing");
    ja["config"].erase("out_dir");
    jb["config"].erase("out_dir");
    CHECK(ja == jb);

    c.seed = 2025;
    c.out_dir = (dir / "rep_c").string();
    REQUIRE(cli::run("sweep-alpha", c) == 0);
    CHECK(slurp(dir / "rep_a" / "sweep-alpha.csv") !=
          slurp(dir / "rep_c" / "sweep-alpha.csv"));
  }
}

TEST_CASE("table-driven coupling and potential flow through run()") {
  const auto dir = temp_dir("tablerun");
  // F(k) = 2k as a clamped table over a wide range.
  write_file(dir, "coupling.tbl", "-100.0 -200.0\n100.0 200.0\n");
  // A periodic potential table: constant 3 plus one harmonic.
  std::ostringstream pot;
  for (int i = 0; i <= 16; ++i) {
    const double x = double(i) / 16.0;
    pot << x << " " << 3.0 + 0.25 * std::cos(2.0 * 3.14159265358979323846 * x)
        << "\n";
  }
  write_file(dir, "potential.tbl", pot.str());

  cli::RunConfig c;
  c.n1 = 32;
  c.coupling = "table:" + (dir / "coupling.tbl").string();
  c.potential = "table:" + (dir / "potential.tbl").string();
  c.kappa0 = 3.0;
  c.alpha = 0.5;
  c.eigen_count = 2;
  c.quiet = true;
  c.out_dir = (dir / "out").string();
  CHECK(cli::run("spectrum", c) == 0);
  const auto summary = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
  CHECK(summary.at("results").contains("lambda0"));
}

#include "doctest.h"

#include "config.hpp"
#include "experiment.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace experiment;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("shadowctl_test_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::size_t data_rows(const fs::path& csv) {
  std::istringstream in(slurp(csv));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n == 0 ? 0 : n - 1;
}

int shadowctl(const std::string& args) {
  const std::string cmd = std::string(SHADOWCTL_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("key=value config files") {
  const fs::path dir = scratch("kv");
  write_file(dir / "run.cfg",
             "# campaign\n"
             "system = toral\n"
             "jump-scale=2^-30   # trailing comment\n"
             "\n"
             "trials=7\n"
             "emit_error_table = yes\n");
  ExperimentConfig cfg;
  apply_key_values(cfg, read_key_values(dir / "run.cfg"));
  CHECK(cfg.system == "toral");
  CHECK(cfg.jump_scale == "2^-30");
  CHECK(cfg.trials == 7);
  CHECK(cfg.emit_error_table);
  CHECK(!cfg.epsilon);

  ExperimentConfig bad;
  CHECK_THROWS_AS(apply_key_values(bad, {{"colour", "blue"}}), ConfigError);
  CHECK_THROWS_AS(apply_key_values(bad, {{"trials", "many"}}), ConfigError);
  CHECK_THROWS_AS(apply_key_values(bad, {{"emit_error_table", "maybe"}}), ConfigError);
  write_file(dir / "broken.cfg", "trials 5\n");
  CHECK_THROWS_AS(read_key_values(dir / "broken.cfg"), ConfigError);
  CHECK_THROWS_AS(read_key_values(dir / "missing.cfg"), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("per-system defaults") {
  ExperimentConfig cfg;
  auto r = resolve(cfg, Command::Shadow);
  CHECK(!r.toral);
  CHECK(r.alphabet == 2);
  CHECK(r.epsilon == "2^-6");
  CHECK(r.jumps == 8);
  CHECK(r.trials == 500);
  CHECK(resolve(cfg, Command::Falsify).trials == 10000);
  cfg.system = "toral";
  r = resolve(cfg, Command::Shadow);
  CHECK(r.toral);
  CHECK(r.epsilon == "1/64");
  CHECK(r.jumps == 4);
  CHECK(r.trials == 200);
  cfg.system = "shift:3";
  CHECK(resolve(cfg, Command::Shadow).alphabet == 3);
  cfg.system = "shift:1";
  CHECK_THROWS_AS(resolve(cfg, Command::Shadow), ConfigError);
  cfg.system = "henon";
  CHECK_THROWS_AS(resolve(cfg, Command::Shadow), ConfigError);
  cfg.system = "shift";
  cfg.trials = -1;
  CHECK_THROWS_AS(resolve(cfg, Command::Shadow), ConfigError);
}

TEST_CASE("shadow runs are reproducible byte for byte") {
  for (const char* system : {"shift", "toral"}) {
    ExperimentConfig cfg;
    cfg.system = system;
    cfg.trials = 12;
    cfg.seed = 42;
    cfg.output_dir = scratch(std::string("rep_a_") + system);
    std::ostringstream log;
    REQUIRE(run_shadowing(cfg, log) == kOk);
    const fs::path first = cfg.output_dir;
    cfg.output_dir = scratch(std::string("rep_b_") + system);
    REQUIRE(run_shadowing(cfg, log) == kOk);
    for (const char* f : {"trials.csv", "certificates.jsonl", "constants.json", "report.txt"}) {
      CHECK(fs::exists(first / f));
      CHECK(slurp(first / f) == slurp(cfg.output_dir / f));
    }
    CHECK(data_rows(first / "trials.csv") == 12);
    CHECK(data_rows(first / "timing.csv") == 12);
    // a different seed gives different pseudo-orbits
    const fs::path other = scratch(std::string("rep_c_") + system);
    cfg.output_dir = other;
    cfg.seed = 43;
    REQUIRE(run_shadowing(cfg, log) == kOk);
    CHECK(slurp(first / "trials.csv") != slurp(other / "trials.csv"));
    for (const auto& d : {first, cfg.output_dir}) fs::remove_all(d);
  }
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  std::ostringstream log;
  ExperimentConfig cfg;
  cfg.output_dir = dir / "a";
  cfg.trials = 3;
  cfg.jump_scale = "1/4";
  CHECK(run_shadowing(cfg, log) == kRejected);
  CHECK(log.str().find("rho") != std::string::npos);

  ExperimentConfig bad_system;
  bad_system.system = "henon";
  bad_system.output_dir = dir / "b";
  CHECK(run_shadowing(bad_system, log) == kRejected);

  ExperimentConfig bad_eps;
  bad_eps.epsilon = "-1/2";
  bad_eps.output_dir = dir / "c";
  CHECK(run_shadowing(bad_eps, log) == kRejected);

  ExperimentConfig fal;
  fal.trials = 200;
  fal.output_dir = dir / "d";
  CHECK(run_falsify(fal, log) == kOk);
  CHECK(!fs::exists(fal.output_dir / "witness.txt"));

  // an inflated delta is expected to be refuted; that is not a failure of the run
  fal.delta = "1/2";
  fal.output_dir = dir / "e";
  CHECK(run_falsify(fal, log) == kOk);
  CHECK(fs::exists(fal.output_dir / "witness.txt"));

  ExperimentConfig con;
  con.system = "toral";
  con.output_dir = dir / "f";
  CHECK(run_constants(con, log) == kOk);
  CHECK(fs::exists(con.output_dir / "constants.json"));
  ExperimentConfig gen;
  gen.output_dir = dir / "g";
  CHECK(run_gen(gen, log) == kOk);
  CHECK(fs::exists(gen.output_dir / "pseudo_orbit.txt"));
  fs::remove_all(dir);
}

TEST_CASE("command line flags override the config file") {
  const fs::path dir = scratch("cli");
  write_file(dir / "run.cfg", "trials=5\nseed=9\nout=" + (dir / "from_file").string() + "\n");
  CHECK(shadowctl("shadow --config " + (dir / "run.cfg").string()) == 0);
  CHECK(data_rows(dir / "from_file" / "trials.csv") == 5);
  CHECK(slurp(dir / "from_file" / "report.txt").find("seed: 9") != std::string::npos);

  CHECK(shadowctl("shadow --config " + (dir / "run.cfg").string() + " --trials 2 --out " +
                  (dir / "from_flags").string()) == 0);
  CHECK(data_rows(dir / "from_flags" / "trials.csv") == 2);
  CHECK(slurp(dir / "from_flags" / "report.txt").find("seed: 9") != std::string::npos);

  write_file(dir / "bad.cfg", "colour=blue\n");
  CHECK(shadowctl("shadow --config " + (dir / "bad.cfg").string()) == 2);
  CHECK(shadowctl("shadow --jump-scale 1/4 --out " + (dir / "x").string()) == 2);
  CHECK(shadowctl("") != 0);
  CHECK(shadowctl("constants --system toral --out " + (dir / "c").string()) == 0);
  fs::remove_all(dir);
}

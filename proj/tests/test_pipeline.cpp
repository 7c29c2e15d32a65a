#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "geocl/estimation.hpp"
#include "geocl/graph.hpp"
#include "geocl/report.hpp"
#include "geocl/rng.hpp"

// Paths are injected by the build so the suite can drive the real binary.
#ifndef GEOCL_CLI_PATH
#error "GEOCL_CLI_PATH must be defined"
#endif
#ifndef GEOCL_DATA_DIR
#error "GEOCL_DATA_DIR must be defined"
#endif

using namespace geocl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) {
    path = fs::temp_directory_path() / (std::string("geocl_pipe_") + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GEOCL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc < 0 ? rc : WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  REQUIRE(out);
  out << body;
}

std::string toy_config(const TempDir& dir, const std::string& out, unsigned replicates,
                       unsigned seed) {
  std::ostringstream cfg;
  cfg << "{\n"
      << "  \"synapses\": \"" << GEOCL_DATA_DIR << "/toy_synapses.csv\",\n"
      << "  \"variant\": \"named-2\",\n"
      << "  \"replicates\": " << replicates << ",\n"
      << "  \"seed\": " << seed << ",\n"
      << "  \"out_dir\": \"" << out << "\"\n"
      << "}\n";
  const std::string path = dir / ("cfg_" + std::to_string(seed) + ".json");
  write_file(path, cfg.str());
  return path;
}

}  // namespace

TEST_CASE("full pipeline on the bundled toy dataset") {
  TempDir dir("run");
  const std::string out = dir / "out";
  const std::string cfg = toy_config(dir, out, 6, 11);
  REQUIRE(run_cli("run --config " + cfg) == 0);

  // The manifest records completion and every stage.
  const std::string manifest = slurp(out + "/manifest.json");
  CHECK(manifest.find("\"status\": \"complete\"") != std::string::npos);
  for (const char* stage : {"ingest", "fit", "generate", "stats", "baseline:chung-lu",
                            "baseline:inverse-power", "compare"}) {
    CAPTURE(stage);
    CHECK(manifest.find(std::string("\"") + stage + "\"") != std::string::npos);
  }

  // Key artifacts exist.
  for (const char* f :
       {"/fit/fit.json", "/fit/intensities.csv", "/fit/cdf.csv", "/sim/ensemble.json",
        "/sim/sim_0000.edges.csv", "/sim/sim_0005.edges.csv", "/stats/stats.csv",
        "/stats/ensemble_summary.json", "/stats/comparison.csv", "/stats/spectrum_hist.csv",
        "/baseline/baseline_chung_lu.json", "/baseline/baseline_inverse_power.json",
        "/compare/comparison.csv"}) {
    CAPTURE(f);
    CHECK(fs::exists(out + f));
  }

  // The fit artifacts round-trip through the loaders.
  const ModelFit fit = load_fit_report(out + "/fit/fit.json");
  CHECK(fit.epsilon > 0.0);
  CHECK(fit.f1.beta < 0.0);
  const IntensityRows rows = load_intensities_csv(out + "/fit/intensities.csv");
  CHECK(rows.rho_hat.size() == 47);  // named-2 on the toy data: 49 named - 2
}

TEST_CASE("pipeline reruns are byte-identical") {
  TempDir dir("rerun");
  const std::string out1 = dir / "o1";
  const std::string out2 = dir / "o2";
  REQUIRE(run_cli("run --config " + toy_config(dir, out1, 5, 3)) == 0);
  REQUIRE(run_cli("run --config " + toy_config(dir, out2, 5, 3)) == 0);
  for (const char* f : {"/fit/fit.json", "/fit/intensities.csv", "/fit/cdf.csv",
                        "/sim/sim_0000.edges.csv", "/sim/sim_0004.edges.csv",
                        "/stats/stats.csv", "/stats/comparison.csv",
                        "/compare/comparison.csv"}) {
    CAPTURE(f);
    CHECK(slurp(out1 + f) == slurp(out2 + f));
  }
  // Different seed, different ensemble.
  const std::string out3 = dir / "o3";
  REQUIRE(run_cli("run --config " + toy_config(dir, out3, 5, 4)) == 0);
  CHECK(slurp(out1 + "/sim/sim_0000.edges.csv") != slurp(out3 + "/sim/sim_0000.edges.csv"));
}

TEST_CASE("config hash tracks semantic fields only") {
  TempDir dir("hash");
  auto hash_of = [&](const std::string& manifest) {
    const std::string key = "\"config_hash\": \"";
    const auto at = manifest.find(key);
    REQUIRE(at != std::string::npos);
    return manifest.substr(at + key.size(), 16);
  };
  const std::string o1 = dir / "h1", o2 = dir / "h2", o3 = dir / "h3";
  REQUIRE(run_cli("run --config " + toy_config(dir, o1, 5, 3)) == 0);
  REQUIRE(run_cli("run --config " + toy_config(dir, o2, 5, 3)) == 0);  // only out_dir differs
  REQUIRE(run_cli("run --config " + toy_config(dir, o3, 7, 3)) == 0);  // replicates differ
  const std::string h1 = hash_of(slurp(o1 + "/manifest.json"));
  CHECK(h1 == hash_of(slurp(o2 + "/manifest.json")));
  CHECK(h1 != hash_of(slurp(o3 + "/manifest.json")));
}

TEST_CASE("exit codes: config=2, data=3, parse=2") {
  TempDir dir("codes");
  const std::string bad_reps = dir / "bad_reps.json";
  write_file(bad_reps, std::string("{\"synapses\": \"") + GEOCL_DATA_DIR +
                           "/toy_synapses.csv\", \"replicates\": 0, \"out_dir\": \"" +
                           (dir / "x") + "\"}");
  CHECK(run_cli("run --config " + bad_reps) == 2);

  const std::string gone = dir / "gone.json";
  write_file(gone, std::string("{\"synapses\": \"/no/such/file.csv\", \"replicates\": 2,") +
                       " \"out_dir\": \"" + (dir / "y") + "\"}");
  CHECK(run_cli("run --config " + gone) == 3);

  CHECK(run_cli("definitely-not-a-subcommand") == 2);
  CHECK(run_cli("fit") == 2);  // missing required options
  CHECK(run_cli("--kernel warp9 ingest --synapses x --out y") == 2);
  CHECK(run_cli("compare --summary /no/such/summary.json") == 3);

  // A failed stage leaves an incomplete manifest behind.
  CHECK(slurp((dir / "y") + "/manifest.json").find("\"status\": \"incomplete\"") !=
        std::string::npos);
}

TEST_CASE("fit on an edgeless graph is a data error") {
  TempDir dir("edgeless");
  write_file(dir / "v.csv", "id,x,y,z,label\n0,0,0,0,\n1,5,0,0,\n");
  write_file(dir / "e.csv", "src,dst\n");
  CHECK(run_cli("fit --vertices " + (dir / "v.csv") + " --edges " + (dir / "e.csv") +
                " --out " + (dir / "out")) == 3);
}

TEST_CASE("sandbox subcommand validates the torus law end to end") {
  TempDir dir("sandbox");
  const int rc = run_cli("sandbox --dim 1 --replicates 120 --seed 7 --classes 2x60,5x60 --out " +
                         (dir / "sb"));
  CHECK(rc == 0);
  const std::string report = slurp((dir / "sb") + "/sandbox.json");
  CHECK(report.find("\"ok\": true") != std::string::npos);
}

TEST_CASE("report writers emit deterministic bytes") {
  TempDir dir("reports");
  // A tiny fit, written twice, must be byte-identical.
  SpatialGraph g({{0, 0, 0}, {100, 0, 0}, {0, 80, 0}, {60, 60, 10}},
                 {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  ModelFit fit;
  fit.epsilon = edge_density(g);
  fit.f1 = LogisticCurve{fit.epsilon, 2.5, -0.01};
  fit.f2 = LogisticCurve{1.0, 2.8, -0.008};
  fit.max_distance = 128.0;
  fit.omega = geometric_weights(g, fit.f1, fit.f2);
  fit.rho_hat = estimate_intensities(g, fit.epsilon, fit.omega);
  for (double r : fit.rho_hat) fit.sum_rho += r;
  fit.chung_lu = check_chung_lu_condition(fit.rho_hat);
  fit.emp_f1 = empirical_f1(g, 16);
  fit.emp_f2 = empirical_f2(g, 16);

  write_fit_report(fit, dir / "f1.json");
  write_fit_report(fit, dir / "f2.json");
  CHECK(slurp(dir / "f1.json") == slurp(dir / "f2.json"));

  write_intensities_csv(g, fit, dir / "i1.csv");
  write_intensities_csv(g, fit, dir / "i2.csv");
  CHECK(slurp(dir / "i1.csv") == slurp(dir / "i2.csv"));

  // Loaders invert the writers.
  const ModelFit back = load_fit_report(dir / "f1.json");
  CHECK(back.epsilon == fit.epsilon);
  CHECK(back.f1.alpha == fit.f1.alpha);
  CHECK(back.f1.beta == fit.f1.beta);
  CHECK(back.f2.alpha == fit.f2.alpha);
  CHECK(back.max_distance == fit.max_distance);
  const IntensityRows rows = load_intensities_csv(dir / "i1.csv");
  REQUIRE(rows.rho_hat.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rows.rho_hat[i] == fit.rho_hat[i]);  // %.17g round-trips exactly
    CHECK(rows.omega[i] == fit.omega[i]);
  }
}

TEST_CASE("fnv1a64 is the reference function") {
  // Standard FNV-1a test vectors.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

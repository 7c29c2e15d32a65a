#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geocl/baselines.hpp"
#include "geocl/errors.hpp"
#include "geocl/estimation.hpp"
#include "geocl/generator.hpp"
#include "geocl/graph.hpp"
#include "geocl/ingest.hpp"
#include "geocl/kernels.hpp"
#include "geocl/metrics.hpp"
#include "geocl/report.hpp"
#include "geocl/rng.hpp"
#include "geocl/torus.hpp"

#include "../src/parallel.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace geocl;

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory " + dir + ": " + ec.message());
}

std::string path_join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": bad JSON: " + e.what());
  }
}

PairConvention convention_of(const std::string& name) {
  if (name == "ordered") return PairConvention::ordered;
  if (name == "unordered") return PairConvention::unordered_diag;
  throw ConfigError("unknown convention '" + name + "' (ordered|unordered)");
}

// ---------------------------------------------------------------- ingest ---

struct IngestArgs {
  std::string synapses;
  std::string out;
};

json graph_block(const SpatialGraph& g) {
  json j;
  j["n"] = g.n();
  j["edges"] = g.edge_count();
  j["self_loops"] = g.self_loop_count();
  j["edge_density"] = edge_density(g);
  double degsum = 0.0;
  for (std::size_t v = 0; v < g.n(); ++v) degsum += g.degree(static_cast<VertexId>(v));
  j["mean_degree"] = g.n() ? degsum / static_cast<double>(g.n()) : 0.0;
  return j;
}

int cmd_ingest(const IngestArgs& a) {
  ensure_dir(a.out);
  const ConnectomeDataset ds = parse_synapses_file(a.synapses);
  const ReferenceGraphs refs = reference_graphs(ds);
  write_graph_csv(refs.full, path_join(a.out, "full.vertices.csv"),
                  path_join(a.out, "full.edges.csv"));
  write_graph_csv(refs.full_minus1.graph, path_join(a.out, "full_minus1.vertices.csv"),
                  path_join(a.out, "full_minus1.edges.csv"));
  write_graph_csv(refs.named_minus2.graph, path_join(a.out, "named_minus2.vertices.csv"),
                  path_join(a.out, "named_minus2.edges.csv"));

  json report;
  report["records"] = ds.records.size();
  report["neurons"] = refs.full.n();
  report["named_neurons"] = refs.named.graph.n();
  report["full"] = graph_block(refs.full);
  report["named"] = graph_block(refs.named.graph);
  report["full_minus1"] = graph_block(refs.full_minus1.graph);
  report["named_minus2"] = graph_block(refs.named_minus2.graph);
  report["mean_pairwise_distance_full"] = mean_pairwise_distance(refs.full);
  {
    double lo[3], hi[3];
    bool first = true;
    for (const Position& p : refs.full.positions()) {
      const double c[3] = {p.x, p.y, p.z};
      for (int k = 0; k < 3; ++k) {
        lo[k] = first ? c[k] : std::min(lo[k], c[k]);
        hi[k] = first ? c[k] : std::max(hi[k], c[k]);
      }
      first = false;
    }
    if (!first) {
      report["bounding_box"] = {hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]};
    }
  }
  write_json_file(report, path_join(a.out, "ingest_report.json"));
  std::cout << "[ingest] " << ds.records.size() << " records, " << refs.full.n()
            << " neurons (" << refs.named.graph.n() << " named)\n";
  return 0;
}

// ------------------------------------------------------------------- fit ---

struct FitArgs {
  std::string vertices, edges, out;
  std::size_t grid = kDefaultGrid;
  std::string convention = "ordered";
};

int cmd_fit(const FitArgs& a) {
  ensure_dir(a.out);
  const SpatialGraph g = load_graph_csv(a.vertices, a.edges);
  const ModelFit fit = fit_model(g, a.grid, convention_of(a.convention));
  write_fit_report(fit, path_join(a.out, "fit.json"));
  write_intensities_csv(g, fit, path_join(a.out, "intensities.csv"));
  write_cdf_csv(fit, path_join(a.out, "cdf.csv"));
  std::printf("[fit] epsilon=%.6g alpha1=%.6g beta1=%.6g alpha2=%.6g beta2=%.6g\n",
              fit.epsilon, fit.f1.alpha, fit.f1.beta, fit.f2.alpha, fit.f2.beta);
  std::printf("[fit] mse(F1)=%.6g mse(F2)=%.6g chung_lu=%s\n", fit.f1_all.mse, fit.f2_all.mse,
              fit.chung_lu.ok ? "ok" : "VIOLATED");
  if (!fit.chung_lu.ok) {
    std::printf("[fit] %zu intensity values violate the Chung-Lu condition\n",
                fit.chung_lu.violators.size());
  }
  return 0;
}

ModelFit load_model_fit(const SpatialGraph& g, const std::string& fit_path,
                        const std::string& intensities_path) {
  ModelFit fit = load_fit_report(fit_path);
  const IntensityRows rows = load_intensities_csv(intensities_path);
  if (rows.rho_hat.size() != g.n()) {
    throw DataError(intensities_path + ": row count does not match graph size");
  }
  fit.omega = rows.omega;
  fit.rho_hat = rows.rho_hat;
  double sum = 0.0;
  for (double r : fit.rho_hat) sum += r;
  fit.sum_rho = sum;
  fit.chung_lu = check_chung_lu_condition(fit.rho_hat);
  return fit;
}

// -------------------------------------------------------------- generate ---

struct GenerateArgs {
  std::string vertices, edges, fit, intensities, out;
  std::uint32_t replicates = 1;
  std::uint64_t seed = 1;
  bool no_permute = false;
};

std::string sim_name(std::size_t r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sim_%04zu.edges.csv", r);
  return buf;
}

int cmd_generate(const GenerateArgs& a) {
  if (a.replicates < 1) throw ConfigError("--replicates must be >= 1");
  ensure_dir(a.out);
  const SpatialGraph ref = load_graph_csv(a.vertices, a.edges);
  const ModelFit fit = load_model_fit(ref, a.fit, a.intensities);
  GeneratorConfig cfg;
  cfg.seed = a.seed;
  cfg.replicates = a.replicates;
  cfg.permute_intensities = !a.no_permute;
  const auto ensemble = generate_ensemble(ref, fit, cfg);
  json manifest;
  manifest["seed"] = cfg.seed;
  manifest["replicates"] = cfg.replicates;
  manifest["permute_intensities"] = cfg.permute_intensities;
  manifest["vertices"] = a.vertices;
  json files = json::array();
  json seeds = json::array();
  for (std::size_t r = 0; r < ensemble.size(); ++r) {
    const std::string name = sim_name(r);
    // Vertex set is shared with the reference; only edges are emitted.
    std::ofstream eout(path_join(a.out, name));
    if (!eout) throw DataError("cannot write " + path_join(a.out, name));
    eout << "src,dst\n";
    for (const auto& [u, v] : ensemble[r].edges()) eout << u << ',' << v << '\n';
    files.push_back(name);
    seeds.push_back(rng::child_seed(cfg.seed, static_cast<std::uint32_t>(r)));
  }
  manifest["files"] = files;
  manifest["child_seeds"] = seeds;
  write_json_file(manifest, path_join(a.out, "ensemble.json"));
  double mean_edges = 0.0;
  for (const auto& g : ensemble) mean_edges += static_cast<double>(g.edge_count());
  std::printf("[generate] %u replicates, mean edge count %.1f\n", cfg.replicates,
              mean_edges / static_cast<double>(ensemble.size()));
  return 0;
}

// ----------------------------------------------------------------- stats ---

struct StatsArgs {
  std::string vertices, edges, sims, out;
  std::size_t detail = 0;
  std::size_t spectrum_bins = 40;
};

int cmd_stats(const StatsArgs& a) {
  ensure_dir(a.out);
  const SpatialGraph ref = load_graph_csv(a.vertices, a.edges);
  const json manifest = read_json_file(path_join(a.sims, "ensemble.json"));
  std::vector<std::string> files;
  for (const auto& f : manifest.at("files")) files.push_back(f.get<std::string>());
  if (files.empty()) throw DataError("ensemble manifest lists no replicates");
  if (a.detail >= files.size()) throw ConfigError("--detail replicate out of range");

  StatsOptions full_opts;
  const GraphStats ref_stats = stats_bundle(ref, full_opts);

  std::vector<GraphStats> sims(files.size());
  GraphStats detail_stats;
  parallel_for_index(files.size(), [&](std::size_t r) {
    const SpatialGraph g = load_graph_csv(a.vertices, path_join(a.sims, files[r]));
    StatsOptions opts;
    opts.spectrum = (r == a.detail);
    opts.centralities = (r == a.detail);
    GraphStats s = stats_bundle(g, opts);
    if (r == a.detail) {
      detail_stats = s;
      s.spectrum.clear();
      s.betweenness.clear();
      s.closeness.clear();
      s.eigencentrality.clear();
    }
    sims[r] = std::move(s);
  });

  write_stats_csv(sims, path_join(a.out, "stats.csv"));
  const EnsembleSummary summary = ensemble_summary(sims, ref_stats);
  write_ensemble_summary_json(summary, path_join(a.out, "ensemble_summary.json"));
  write_comparison_csv(summary, path_join(a.out, "comparison.csv"));
  write_spectrum_histogram_csv(ref_stats.spectrum, detail_stats.spectrum, a.spectrum_bins,
                               path_join(a.out, "spectrum_hist.csv"));
  write_centrality_rank_csv(ref_stats.betweenness, detail_stats.betweenness,
                            path_join(a.out, "centrality_betweenness.csv"));
  write_centrality_rank_csv(ref_stats.closeness, detail_stats.closeness,
                            path_join(a.out, "centrality_closeness.csv"));
  write_centrality_rank_csv(ref_stats.eigencentrality, detail_stats.eigencentrality,
                            path_join(a.out, "centrality_eigencentrality.csv"));
  json ref_json;
  ref_json["edges"] = ref_stats.edges;
  ref_json["self_loops"] = ref_stats.self_loops;
  ref_json["connected_components"] = ref_stats.connected_components;
  ref_json["non_isolated_components"] = ref_stats.non_isolated_components;
  ref_json["max_degree"] = ref_stats.max_degree;
  ref_json["triangles"] = ref_stats.triangles;
  ref_json["closed_4_walks"] = ref_stats.closed_4_walks;
  write_json_file(ref_json, path_join(a.out, "reference_stats.json"));
  std::cout << render_comparison_table(summary);
  return 0;
}

// --------------------------------------------------------------- compare ---

struct CompareArgs {
  std::string summary;
  std::string out;
};

int cmd_compare(const CompareArgs& a) {
  const json j = read_json_file(a.summary);
  EnsembleSummary summary;
  summary.replicates = j.at("replicates").get<std::size_t>();
  for (const auto& row : j.at("stats")) {
    ScalarSummary s;
    s.name = row.at("statistic").get<std::string>();
    s.reference = row.at("reference").get<double>();
    s.mean = row.at("mean").get<double>();
    s.stddev = row.at("std").get<double>();
    s.min = row.at("min").get<double>();
    s.max = row.at("max").get<double>();
    s.z = row.at("z").is_null() ? std::nan("") : row.at("z").get<double>();
    summary.stats.push_back(std::move(s));
  }
  if (!a.out.empty()) {
    ensure_dir(a.out);
    write_comparison_csv(summary, path_join(a.out, "comparison.csv"));
  }
  std::cout << render_comparison_table(summary);
  return 0;
}

// -------------------------------------------------------------- baseline ---

struct BaselineArgs {
  std::string vertices, edges, out;
  std::string model = "chung-lu";
  std::string weights = "degrees";  // degrees | intensities
  std::string intensities;          // for weights=intensities
  std::string fit;                  // optional fit.json for tail comparison
  std::uint32_t replicates = 20;
  std::uint64_t seed = 1;
  std::size_t bins = 50;
};

int cmd_baseline(const BaselineArgs& a) {
  ensure_dir(a.out);
  const SpatialGraph ref = load_graph_csv(a.vertices, a.edges);
  if (a.model == "chung-lu") {
    if (a.replicates < 1) throw ConfigError("--replicates must be >= 1");
    std::vector<double> w;
    if (a.weights == "degrees") {
      for (std::size_t v = 0; v < ref.n(); ++v) {
        w.push_back(static_cast<double>(ref.degree(static_cast<VertexId>(v))));
      }
    } else if (a.weights == "intensities") {
      if (a.intensities.empty()) throw ConfigError("--intensities required for this mode");
      w = load_intensities_csv(a.intensities).rho_hat;
      if (w.size() != ref.n()) throw DataError("intensities do not match graph");
    } else {
      throw ConfigError("unknown --weights '" + a.weights + "' (degrees|intensities)");
    }
    std::vector<GraphStats> stats(a.replicates);
    parallel_for_index(a.replicates, [&](std::size_t r) {
      const SpatialGraph g =
          chung_lu_generate(ref, w, rng::child_seed(a.seed, static_cast<std::uint32_t>(r)));
      StatsOptions opts;
      opts.spectrum = false;
      opts.centralities = false;
      stats[r] = stats_bundle(g, opts);
    });
    StatsOptions ref_opts;
    ref_opts.spectrum = false;
    ref_opts.centralities = false;
    const GraphStats ref_stats = stats_bundle(ref, ref_opts);
    write_stats_csv(stats, path_join(a.out, "baseline_chung_lu_stats.csv"));
    json report;
    report["model"] = "chung-lu";
    json params;
    params["weights"] = a.weights;
    params["seed"] = a.seed;
    params["replicates"] = a.replicates;
    report["params"] = params;
    json rows = json::array();
    for (std::size_t r = 0; r < stats.size(); ++r) {
      json row;
      row["replicate"] = r;
      row["edges"] = stats[r].edges;
      row["self_loops"] = stats[r].self_loops;
      row["max_degree"] = stats[r].max_degree;
      row["triangles"] = stats[r].triangles;
      row["closed_4_walks"] = stats[r].closed_4_walks;
      rows.push_back(row);
    }
    report["stats"] = rows;
    if (a.replicates >= 2) {
      const EnsembleSummary summary = ensemble_summary(stats, ref_stats);
      json sj = json::array();
      for (const ScalarSummary& s : summary.stats) {
        json row;
        row["statistic"] = s.name;
        row["reference"] = s.reference;
        row["mean"] = s.mean;
        row["std"] = s.stddev;
        sj.push_back(row);
      }
      report["summary"] = sj;
    }
    write_json_file(report, path_join(a.out, "baseline_chung_lu.json"));
    std::cout << "[baseline] chung-lu: " << a.replicates << " replicates written\n";
    return 0;
  }
  if (a.model == "inverse-power") {
    const InversePowerCurve curve = fit_inverse_power(ref, a.bins);
    const auto profile = distance_profile(ref, a.bins);
    {
      std::ofstream out(path_join(a.out, "distance_profile.csv"));
      if (!out) throw DataError("cannot write distance_profile.csv");
      out << "lo,hi,pairs,edges,p\n";
      for (const DistanceBin& b : profile) {
        out << b.lo << ',' << b.hi << ',' << b.pairs << ',' << b.edges << ',';
        if (b.defined) out << b.p;
        out << '\n';
      }
    }
    json report;
    report["model"] = "inverse-power";
    json params;
    params["k"] = curve.k;
    params["beta_exp"] = curve.beta_exp;
    params["bins"] = a.bins;
    report["params"] = params;
    // Tail comparison against the fitted logistic ratio when a fit is given.
    if (!a.fit.empty()) {
      const ModelFit fit = load_fit_report(a.fit);
      double mse_pow = 0.0, mse_log = 0.0;
      std::size_t used = 0;
      for (const DistanceBin& b : profile) {
        if (!b.defined) continue;
        const double x = (b.lo + b.hi) / 2.0;
        if (x <= kTailThreshold) continue;
        const double conditional = derivative_ratio(fit, x) / fit.epsilon;
        // Mean intensity factor: conditional edge probability for an average
        // pair; matches the empirical profile's unconditional binning.
        const double model_p = std::clamp(
            conditional * fit.sum_rho / (static_cast<double>(ref.n()) *
                                         static_cast<double>(ref.n())),
            0.0, 1.0);
        const double rp = curve.probability(x) - b.p;
        const double lp = model_p - b.p;
        mse_pow += rp * rp;
        mse_log += lp * lp;
        ++used;
      }
      if (used > 0) {
        json tail;
        tail["bins_used"] = used;
        tail["mse_inverse_power"] = mse_pow / static_cast<double>(used);
        tail["mse_logistic"] = mse_log / static_cast<double>(used);
        report["tail_comparison"] = tail;
      }
    }
    write_json_file(report, path_join(a.out, "baseline_inverse_power.json"));
    std::printf("[baseline] inverse-power: k=%.6g beta=%.6g\n", curve.k, curve.beta_exp);
    return 0;
  }
  throw ConfigError("unknown --model '" + a.model + "' (chung-lu|inverse-power)");
}

// --------------------------------------------------------------- sandbox ---

struct SandboxArgs {
  int dim = 1;
  std::uint32_t replicates = 500;
  std::uint64_t seed = 1;
  std::string classes = "2x125,4x125,6x125,8x125";
  double alpha = 10.0;
  double beta = -60.0;
  bool flat = false;
  std::string out;
};

std::vector<double> parse_classes(const std::string& spec) {
  std::vector<double> rho;
  std::size_t start = 0;
  while (start < spec.size()) {
    std::size_t end = spec.find(',', start);
    if (end == std::string::npos) end = spec.size();
    const std::string tok = spec.substr(start, end - start);
    const std::size_t x = tok.find('x');
    if (x == std::string::npos) throw ConfigError("bad class token '" + tok + "' (want VALUExCOUNT)");
    const double value = std::stod(tok.substr(0, x));
    const long count = std::stol(tok.substr(x + 1));
    if (!(value >= 0.0) || count < 1) throw ConfigError("bad class token '" + tok + "'");
    for (long c = 0; c < count; ++c) rho.push_back(value);
    start = end + 1;
  }
  if (rho.empty()) throw ConfigError("--classes parsed to an empty intensity vector");
  return rho;
}

int cmd_sandbox(const SandboxArgs& a) {
  if (a.replicates < 2) throw ConfigError("--replicates must be >= 2");
  TorusConfig tc;
  tc.dim = a.dim;
  tc.rho = parse_classes(a.classes);
  tc.n = static_cast<std::uint32_t>(tc.rho.size());
  double sum_rho = 0.0;
  for (double r : tc.rho) sum_rho += r;
  tc.epsilon = sum_rho / (static_cast<double>(tc.n) * static_cast<double>(tc.n));
  tc.f1_kind = a.flat ? TorusF1::flat : TorusF1::logistic;
  if (!a.flat) tc.f1 = torus_f1_curve(tc.epsilon, a.alpha, a.beta, tc.dim);

  // Group identical intensities into classes.
  std::map<double, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < tc.rho.size(); ++i) classes[tc.rho[i]].push_back(i);

  struct ClassAcc {
    double sum = 0.0, sumsq = 0.0;
  };
  std::vector<ClassAcc> acc(classes.size());
  double dens_sum = 0.0, dens_sumsq = 0.0;

  std::vector<std::vector<double>> class_means(a.replicates);
  std::vector<double> densities(a.replicates);
  parallel_for_index(a.replicates, [&](std::size_t r) {
    const SpatialGraph g =
        torus_generate(tc, rng::child_seed(a.seed, static_cast<std::uint32_t>(r)));
    std::vector<double> means;
    for (const auto& [value, members] : classes) {
      double s = 0.0;
      for (std::size_t i : members) s += g.degree(static_cast<VertexId>(i));
      means.push_back(s / static_cast<double>(members.size()));
    }
    class_means[r] = std::move(means);
    densities[r] = edge_density(g);
  });
  for (std::size_t r = 0; r < a.replicates; ++r) {
    for (std::size_t c = 0; c < acc.size(); ++c) {
      acc[c].sum += class_means[r][c];
      acc[c].sumsq += class_means[r][c] * class_means[r][c];
    }
    dens_sum += densities[r];
    dens_sumsq += densities[r] * densities[r];
  }

  const double nrep = static_cast<double>(a.replicates);
  bool all_ok = true;
  json report;
  report["dim"] = a.dim;
  report["n"] = tc.n;
  report["epsilon"] = tc.epsilon;
  report["replicates"] = a.replicates;
  report["seed"] = a.seed;
  report["f1"] = a.flat ? "flat" : "logistic";
  json class_rows = json::array();
  std::printf("%10s %14s %12s %10s %8s\n", "intensity", "mean degree", "std error", "|z|",
              "ok");
  std::size_t c = 0;
  for (const auto& [value, members] : classes) {
    const double mean = acc[c].sum / nrep;
    const double var = std::max(0.0, (acc[c].sumsq - nrep * mean * mean) / (nrep - 1.0));
    const double se = std::sqrt(var / nrep);
    const double z = se > 0.0 ? std::abs(mean - value) / se : 0.0;
    const bool ok = std::abs(mean - value) <= 3.0 * se;
    all_ok = all_ok && ok;
    std::printf("%10.4g %14.6g %12.3g %10.3g %8s\n", value, mean, se, z, ok ? "yes" : "NO");
    json row;
    row["intensity"] = value;
    row["members"] = members.size();
    row["mean_degree"] = mean;
    row["std_error"] = se;
    row["z"] = z;
    row["ok"] = ok;
    class_rows.push_back(row);
    ++c;
  }
  report["classes"] = class_rows;

  const double dens_mean = dens_sum / nrep;
  const double dens_var = std::max(0.0, (dens_sumsq - nrep * dens_mean * dens_mean) / (nrep - 1.0));
  const double dens_se = std::sqrt(dens_var / nrep);
  // Loops count twice in 2|E|/((n+1)n) but once in sum(rho)/n^2; the expected
  // gap is Q/S * (1 + o(1)) edges, far inside 3 SE for any sane configuration.
  const bool dens_ok = std::abs(dens_mean - tc.epsilon) <= 3.0 * dens_se;
  all_ok = all_ok && dens_ok;
  std::printf("density: mean %.6g vs epsilon %.6g (se %.3g) %s\n", dens_mean, tc.epsilon,
              dens_se, dens_ok ? "ok" : "FAIL");
  json dens;
  dens["mean"] = dens_mean;
  dens["epsilon"] = tc.epsilon;
  dens["std_error"] = dens_se;
  dens["ok"] = dens_ok;
  report["density"] = dens;
  report["ok"] = all_ok;

  if (!a.out.empty()) {
    ensure_dir(a.out);
    write_json_file(report, path_join(a.out, "sandbox.json"));
  }
  if (!all_ok) throw NumericalError("sandbox validation outside 3 standard errors");
  return 0;
}

// ------------------------------------------------------------------- run ---

struct RunConfig {
  std::string synapses;
  std::string variant = "named-2";  // named-2 | full-1 | custom
  std::uint32_t trim = 0;
  std::string vertices, edges;
  std::size_t grid_size = kDefaultGrid;
  std::string convention = "ordered";
  std::uint32_t replicates = 0;
  std::uint64_t seed = 1;
  bool permute_intensities = true;
  std::vector<std::string> baselines{"chung-lu", "inverse-power"};
  std::size_t detail_replicate = 0;
  std::string out_dir = "out";
};

RunConfig parse_run_config(const json& j) {
  RunConfig cfg;
  auto get_str = [&](const char* key, std::string& slot) {
    if (j.contains(key)) slot = j.at(key).get<std::string>();
  };
  get_str("synapses", cfg.synapses);
  get_str("variant", cfg.variant);
  get_str("vertices", cfg.vertices);
  get_str("edges", cfg.edges);
  get_str("convention", cfg.convention);
  get_str("out_dir", cfg.out_dir);
  if (j.contains("trim")) cfg.trim = j.at("trim").get<std::uint32_t>();
  if (j.contains("grid_size")) cfg.grid_size = j.at("grid_size").get<std::size_t>();
  if (j.contains("replicates")) cfg.replicates = j.at("replicates").get<std::uint32_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("permute_intensities")) {
    cfg.permute_intensities = j.at("permute_intensities").get<bool>();
  }
  if (j.contains("detail_replicate")) {
    cfg.detail_replicate = j.at("detail_replicate").get<std::size_t>();
  }
  if (j.contains("baselines")) {
    cfg.baselines.clear();
    for (const auto& b : j.at("baselines")) cfg.baselines.push_back(b.get<std::string>());
  }
  return cfg;
}

void validate_run_config(const RunConfig& cfg) {
  if (cfg.replicates < 1) throw ConfigError("config: replicates must be >= 1");
  const bool have_synapses = !cfg.synapses.empty();
  const bool have_graph = !cfg.vertices.empty() && !cfg.edges.empty();
  if (have_synapses == have_graph) {
    throw ConfigError("config: provide either synapses or vertices+edges (exactly one)");
  }
  if (have_synapses && cfg.variant != "named-2" && cfg.variant != "full-1" &&
      cfg.variant != "custom") {
    throw ConfigError("config: variant must be named-2 | full-1 | custom");
  }
  convention_of(cfg.convention);
  for (const auto& b : cfg.baselines) {
    if (b != "chung-lu" && b != "inverse-power") {
      throw ConfigError("config: unknown baseline '" + b + "'");
    }
  }
  if (cfg.detail_replicate >= cfg.replicates) {
    throw ConfigError("config: detail_replicate out of range");
  }
}

// Semantic fields only: out_dir and kernel choice do not affect results
// (kernel variants are bit-identical by contract).
std::string config_hash(const RunConfig& cfg) {
  nlohmann::json j;  // plain json: keys serialized in sorted order
  j["synapses"] = cfg.synapses;
  j["variant"] = cfg.variant;
  j["trim"] = cfg.trim;
  j["vertices"] = cfg.vertices;
  j["edges"] = cfg.edges;
  j["grid_size"] = cfg.grid_size;
  j["convention"] = cfg.convention;
  j["replicates"] = cfg.replicates;
  j["seed"] = cfg.seed;
  j["permute_intensities"] = cfg.permute_intensities;
  j["baselines"] = cfg.baselines;
  j["detail_replicate"] = cfg.detail_replicate;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(j.dump())));
  return buf;
}

int cmd_run(const std::string& config_path) {
  const json cj = read_json_file(config_path);
  RunConfig cfg;
  try {
    cfg = parse_run_config(cj);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  validate_run_config(cfg);
  ensure_dir(cfg.out_dir);

  json manifest;
  manifest["config"] = cj;
  manifest["config_hash"] = config_hash(cfg);
  manifest["status"] = "incomplete";
  manifest["stages"] = json::object();
  const std::string manifest_path = path_join(cfg.out_dir, "manifest.json");
  auto checkpoint = [&] { write_json_file(manifest, manifest_path); };
  checkpoint();

  std::string stage = "ingest";
  try {
    std::string vertices = cfg.vertices;
    std::string edges = cfg.edges;
    if (!cfg.synapses.empty()) {
      const std::string dir = path_join(cfg.out_dir, "ingest");
      IngestArgs ia{cfg.synapses, dir};
      cmd_ingest(ia);
      std::string base;
      if (cfg.variant == "named-2") {
        base = "named_minus2";
      } else if (cfg.variant == "full-1") {
        base = "full_minus1";
      } else {
        // custom: trim the full graph by cfg.trim
        const SpatialGraph full = load_graph_csv(path_join(dir, "full.vertices.csv"),
                                                 path_join(dir, "full.edges.csv"));
        const Subgraph trimmed = trim_top_degree(full, cfg.trim);
        write_graph_csv(trimmed.graph, path_join(dir, "custom.vertices.csv"),
                        path_join(dir, "custom.edges.csv"));
        base = "custom";
      }
      vertices = path_join(dir, base + ".vertices.csv");
      edges = path_join(dir, base + ".edges.csv");
      manifest["stages"]["ingest"] = {{"status", "ok"}, {"reference", base}};
    } else {
      manifest["stages"]["ingest"] = {{"status", "skipped"}};
    }
    checkpoint();

    stage = "fit";
    const std::string fit_dir = path_join(cfg.out_dir, "fit");
    {
      FitArgs fa;
      fa.vertices = vertices;
      fa.edges = edges;
      fa.grid = cfg.grid_size;
      fa.convention = cfg.convention;
      fa.out = fit_dir;
      cmd_fit(fa);
      manifest["stages"]["fit"] = {{"status", "ok"}};
      checkpoint();
    }

    stage = "generate";
    const std::string sim_dir = path_join(cfg.out_dir, "sim");
    {
      GenerateArgs ga;
      ga.vertices = vertices;
      ga.edges = edges;
      ga.fit = path_join(fit_dir, "fit.json");
      ga.intensities = path_join(fit_dir, "intensities.csv");
      ga.replicates = cfg.replicates;
      ga.seed = cfg.seed;
      ga.no_permute = !cfg.permute_intensities;
      ga.out = sim_dir;
      cmd_generate(ga);
      manifest["stages"]["generate"] = {{"status", "ok"}};
      checkpoint();
    }

    stage = "stats";
    const std::string stats_dir = path_join(cfg.out_dir, "stats");
    {
      StatsArgs sa;
      sa.vertices = vertices;
      sa.edges = edges;
      sa.sims = sim_dir;
      sa.out = stats_dir;
      sa.detail = cfg.detail_replicate;
      cmd_stats(sa);
      manifest["stages"]["stats"] = {{"status", "ok"}};
      checkpoint();
    }

    for (const std::string& model : cfg.baselines) {
      stage = "baseline:" + model;
      BaselineArgs ba;
      ba.vertices = vertices;
      ba.edges = edges;
      ba.model = model;
      ba.replicates = std::max<std::uint32_t>(2, cfg.replicates);
      ba.seed = cfg.seed + 1;  // decouple from the model ensemble stream
      ba.fit = path_join(fit_dir, "fit.json");
      ba.out = path_join(cfg.out_dir, "baseline");
      cmd_baseline(ba);
      manifest["stages"][stage] = {{"status", "ok"}};
      checkpoint();
    }

    stage = "compare";
    {
      CompareArgs ca;
      ca.summary = path_join(stats_dir, "ensemble_summary.json");
      ca.out = path_join(cfg.out_dir, "compare");
      cmd_compare(ca);
      manifest["stages"]["compare"] = {{"status", "ok"}};
    }
    manifest["status"] = "complete";
    checkpoint();
  } catch (const std::exception& e) {
    manifest["stages"][stage] = {{"status", "failed"}, {"error", e.what()}};
    manifest["status"] = "incomplete";
    checkpoint();
    const std::string msg = "[" + stage + "] " + e.what();
    if (dynamic_cast<const ConfigError*>(&e)) throw ConfigError(msg);
    if (dynamic_cast<const DataError*>(&e)) throw DataError(msg);
    if (dynamic_cast<const NumericalError*>(&e)) throw NumericalError(msg);
    if (dynamic_cast<const std::invalid_argument*>(&e)) throw ConfigError(msg);
    throw std::runtime_error(msg);
  }
  std::cout << "[run] complete; manifest at " << manifest_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric Chung-Lu connectome model toolkit"};
  app.require_subcommand(1);
  std::string kernel;
  app.add_option("--kernel", kernel, "numeric kernel variant (scalar|avx2); default auto");

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "parse synapse CSV and emit reference graphs");
  ingest->add_option("--synapses", ingest_args.synapses, "synapse CSV")->required();
  ingest->add_option("--out", ingest_args.out, "output directory")->required();

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "estimate the geometric Chung-Lu model");
  fit->add_option("--vertices", fit_args.vertices)->required();
  fit->add_option("--edges", fit_args.edges)->required();
  fit->add_option("--grid", fit_args.grid, "CDF grid size")->check(CLI::Range(2, 100000));
  fit->add_option("--convention", fit_args.convention, "pair counting (ordered|unordered)");
  fit->add_option("--out", fit_args.out)->required();

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "sample synthetic graphs from a fit");
  gen->add_option("--vertices", gen_args.vertices)->required();
  gen->add_option("--edges", gen_args.edges)->required();
  gen->add_option("--fit", gen_args.fit, "fit.json")->required();
  gen->add_option("--intensities", gen_args.intensities, "intensities.csv")->required();
  gen->add_option("--replicates", gen_args.replicates)->required();
  gen->add_option("--seed", gen_args.seed);
  gen->add_flag("--no-permute", gen_args.no_permute, "keep intensities on their vertices");
  gen->add_option("--out", gen_args.out)->required();

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "measure an ensemble against its reference");
  stats->add_option("--vertices", stats_args.vertices)->required();
  stats->add_option("--edges", stats_args.edges)->required();
  stats->add_option("--sims", stats_args.sims, "directory with ensemble.json")->required();
  stats->add_option("--detail", stats_args.detail, "replicate for spectrum/centrality detail");
  stats->add_option("--spectrum-bins", stats_args.spectrum_bins);
  stats->add_option("--out", stats_args.out)->required();

  CompareArgs cmp_args;
  auto* cmp = app.add_subcommand("compare", "render a comparison table from a summary");
  cmp->add_option("--summary", cmp_args.summary, "ensemble_summary.json")->required();
  cmp->add_option("--out", cmp_args.out, "optional output directory");

  BaselineArgs base_args;
  auto* base = app.add_subcommand("baseline", "comparison models");
  base->add_option("--vertices", base_args.vertices)->required();
  base->add_option("--edges", base_args.edges)->required();
  base->add_option("--model", base_args.model, "chung-lu | inverse-power");
  base->add_option("--weights", base_args.weights, "degrees | intensities");
  base->add_option("--intensities", base_args.intensities);
  base->add_option("--fit", base_args.fit, "fit.json for tail comparison");
  base->add_option("--replicates", base_args.replicates);
  base->add_option("--seed", base_args.seed);
  base->add_option("--bins", base_args.bins);
  base->add_option("--out", base_args.out)->required();

  SandboxArgs sand_args;
  auto* sand = app.add_subcommand("sandbox", "torus validation of the degree/intensity law");
  sand->add_option("--dim", sand_args.dim)->check(CLI::Range(1, 2));
  sand->add_option("--replicates", sand_args.replicates);
  sand->add_option("--seed", sand_args.seed);
  sand->add_option("--classes", sand_args.classes, "intensity classes VALUExCOUNT,...");
  sand->add_option("--alpha", sand_args.alpha, "logistic F1 alpha");
  sand->add_option("--beta", sand_args.beta, "logistic F1 beta (negative)");
  sand->add_flag("--flat", sand_args.flat, "flat F1 (pure Chung-Lu)");
  sand->add_option("--out", sand_args.out, "optional output directory");

  std::string run_config;
  auto* run = app.add_subcommand("run", "full pipeline from a JSON config");
  run->add_option("--config", run_config, "RunConfig JSON")->required();

  // Final callbacks run after option parsing, so `kernel` is populated here.
  auto apply_kernel = [&kernel] {
    if (kernel.empty()) return;
    if (kernels::by_name(kernel) == nullptr) {
      throw ConfigError("unknown or unsupported kernel '" + kernel + "'");
    }
    setenv("GEOCL_KERNEL", kernel.c_str(), 1);
  };
  int rc = 0;
  ingest->callback([&] { apply_kernel(); rc = cmd_ingest(ingest_args); });
  fit->callback([&] { apply_kernel(); rc = cmd_fit(fit_args); });
  gen->callback([&] { apply_kernel(); rc = cmd_generate(gen_args); });
  stats->callback([&] { apply_kernel(); rc = cmd_stats(stats_args); });
  cmp->callback([&] { apply_kernel(); rc = cmd_compare(cmp_args); });
  base->callback([&] { apply_kernel(); rc = cmd_baseline(base_args); });
  sand->callback([&] { apply_kernel(); rc = cmd_sandbox(sand_args); });
  run->callback([&] { apply_kernel(); rc = cmd_run(run_config); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

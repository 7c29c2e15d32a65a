// Acceptance gate. Runs every acceptance criterion, prints exactly one
// [PASS]/[FAIL]/[SKIP] line per criterion, and exits nonzero if any fail.
// Tolerances are pinned here, not tuned at run time.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "geocl/baselines.hpp"
#include "geocl/estimation.hpp"
#include "geocl/generator.hpp"
#include "geocl/graph.hpp"
#include "geocl/ingest.hpp"
#include "geocl/metrics.hpp"
#include "geocl/rng.hpp"
#include "geocl/torus.hpp"
#include "oracles.hpp"

using namespace geocl;

namespace {

struct Failure {
  std::string what;
};
struct Skip {
  std::string reason;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Failure{msg};
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// ------------------------------------------------------------------------
// Shared fixtures
// ------------------------------------------------------------------------

// Torus ensemble: dim 1, n = 500, intensity classes {2,4,6,8} x 125,
// 500 replicates. Drives the degree-law and density checks.
struct TorusRun {
  static constexpr std::uint64_t kSeed = 20260814;
  static constexpr int kReps = 500;
  std::vector<double> class_values{2.0, 4.0, 6.0, 8.0};
  std::vector<double> mean_sum, mean_sumsq;  // per class, over replicates
  double dens_sum = 0.0, dens_sumsq = 0.0;
  TorusConfig tc;

  TorusRun() {
    tc.dim = 1;
    tc.n = 500;
    tc.rho.resize(500);
    for (std::size_t i = 0; i < 500; ++i) tc.rho[i] = class_values[i / 125];
    tc.epsilon = 2500.0 / (500.0 * 500.0);  // sum(rho)/n^2 = 0.01
    tc.f1_kind = TorusF1::logistic;
    tc.f1 = torus_f1_curve(tc.epsilon, 10.0, -60.0, 1);

    mean_sum.assign(4, 0.0);
    mean_sumsq.assign(4, 0.0);
    for (int r = 0; r < kReps; ++r) {
      const SpatialGraph g = torus_generate(tc, rng::child_seed(kSeed, r));
      for (std::size_t c = 0; c < 4; ++c) {
        double s = 0.0;
        for (std::size_t i = 125 * c; i < 125 * (c + 1); ++i) {
          s += g.degree(static_cast<VertexId>(i));
        }
        const double mean = s / 125.0;
        mean_sum[c] += mean;
        mean_sumsq[c] += mean * mean;
      }
      const double dens = edge_density(g);
      dens_sum += dens;
      dens_sumsq += dens * dens;
    }
  }
};

const TorusRun& torus_run() {
  static TorusRun run;
  return run;
}

// Synthetic slab: a 400-vertex graph sampled from a known logistic-ratio
// connection law over a 1400x1400x60 box (wide enough that the law's
// turnover sits well inside the distance range), then re-estimated and
// re-simulated. Stands in for the connectome-shaped regime in the
// dataset-free checks.
struct SlabRun {
  static constexpr std::uint64_t kPosSeed = 91;
  static constexpr std::uint64_t kEdgeSeed = 4242;
  static constexpr std::uint64_t kEnsembleSeed = 1803;
  static constexpr int kReps = 60;
  LogisticCurve gen1{1.0, 2.94589, -0.00293112};
  LogisticCurve gen2{1.0, 3.16284, -0.0018741};
  SpatialGraph g0;
  ModelFit fit;
  std::vector<SpatialGraph> ensemble;

  SlabRun() {
    const std::size_t n = 400;
    rng::SplitMix64 r(kPosSeed);
    std::vector<Position> pos(n);
    for (auto& p : pos) {
      p = Position{1400.0 * r.next_double(), 1400.0 * r.next_double(),
                   60.0 * r.next_double()};
    }
    // Heterogeneous intensities, lognormal-ish, Chung-Lu safe.
    std::vector<double> rho(n);
    double sum_rho = 0.0;
    for (auto& v : rho) {
      const double u1 = r.next_double(), u2 = r.next_double();
      const double z = std::sqrt(-2.0 * std::log(u1 + 1e-300)) *
                       std::cos(2.0 * 3.14159265358979323846 * u2);
      v = std::min(10.0 * std::exp(0.4 * z), 40.0);
      sum_rho += v;
    }

    SpatialGraph frame(pos, {});
    std::vector<Edge> edges;
    for (VertexId i = 0; i < n; ++i) {
      for (VertexId j = i; j < n; ++j) {
        const double d = euclidean_distance(frame, i, j);
        const double cond = derivative_ratio(gen1, gen2, d);
        const double p = std::min(rho[i] * rho[j] / sum_rho, 1.0) * cond;
        if (rng::pair_uniform(kEdgeSeed, i, j) < p) edges.emplace_back(i, j);
      }
    }
    g0 = SpatialGraph(std::move(pos), std::move(edges));

    fit = fit_model(g0);
    GeneratorConfig cfg;
    cfg.seed = kEnsembleSeed;
    cfg.replicates = kReps;
    ensemble = generate_ensemble(g0, fit, cfg);
  }
};

const SlabRun& slab_run() {
  static SlabRun run;
  return run;
}

// ------------------------------------------------------------------------
// Criteria
// ------------------------------------------------------------------------

// 1. Noiseless logistic CDFs: fitted (alpha, beta) within 1e-6 relative.
std::string criterion_fit_recovery() {
  const auto start = std::chrono::steady_clock::now();
  rng::SplitMix64 r(7001);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = 1.0 + 5.0 * r.next_double();
    const double beta = -0.0005 - 0.0095 * r.next_double();
    const double plateau = 0.02 + 0.98 * r.next_double();
    const LogisticCurve truth{plateau, alpha, beta};
    EmpiricalCdf cdf;
    for (int k = 0; k < 200; ++k) {
      const double x = 8000.0 * k / 199.0;
      cdf.xs.push_back(x);
      cdf.ps.push_back(truth.value(x));
    }
    const LogisticCurve est = fit_logistic(cdf, plateau);
    const double ea = std::abs(est.alpha - alpha) / std::abs(alpha);
    const double eb = std::abs(est.beta - beta) / std::abs(beta);
    worst = std::max({worst, ea, eb});
    require(ea <= 1e-6 && eb <= 1e-6,
            fmt("trial %g: rel errors alpha %.3g beta %.3g exceed 1e-6", trial, ea, eb));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(secs < 1.0, fmt("runtime %.2f s exceeds 1 s", secs));
  return fmt("100/100 curves, worst rel error %.2g, %.2f s", worst, secs);
}

// 2. Torus degree law: per-class mean degree within 3 SE of the intensity.
std::string criterion_torus_degree_law() {
  const TorusRun& run = torus_run();
  const double nrep = TorusRun::kReps;
  std::string detail;
  for (int c = 0; c < 4; ++c) {
    const double mean = run.mean_sum[c] / nrep;
    const double var = (run.mean_sumsq[c] - nrep * mean * mean) / (nrep - 1.0);
    const double se = std::sqrt(var / nrep);
    const double target = run.class_values[c];
    require(std::abs(mean - target) <= 3.0 * se,
            fmt("class rho=%g: mean %.4f vs target, |z| = %.2f > 3", target, mean,
                std::abs(mean - target) / se));
    detail += fmt("rho=%g:%.3f ", target, mean);
  }
  return detail + "(all within 3 SE)";
}

// 3. Density compatibility on the torus and on the fitted slab model.
std::string criterion_density() {
  const TorusRun& tr = torus_run();
  const double nrep = TorusRun::kReps;
  const double tmean = tr.dens_sum / nrep;
  const double tvar = (tr.dens_sumsq - nrep * tmean * tmean) / (nrep - 1.0);
  const double tse = std::sqrt(tvar / nrep);
  require(std::abs(tmean - tr.tc.epsilon) <= 3.0 * tse,
          fmt("torus density %.6g vs eps %.6g beyond 3 SE (%.2g)", tmean, tr.tc.epsilon, tse));

  const SlabRun& sr = slab_run();
  double sum = 0.0, sumsq = 0.0;
  for (const auto& g : sr.ensemble) {
    const double d = edge_density(g);
    sum += d;
    sumsq += d * d;
  }
  const double m = sum / SlabRun::kReps;
  const double sd = std::sqrt((sumsq - SlabRun::kReps * m * m) / (SlabRun::kReps - 1.0));
  // Ensemble-vs-reference agreement is judged against the per-replicate
  // spread (the reference is a single draw, not a mean).
  require(std::abs(m - sr.fit.epsilon) <= 3.0 * sd,
          fmt("slab ensemble density %.5g vs eps %.5g beyond 3 per-replicate std (%.2g)", m,
              sr.fit.epsilon, sd));
  return fmt("torus |d-eps| = %.2g (3SE %.2g); ", std::abs(tmean - tr.tc.epsilon), 3 * tse) +
         fmt("slab |d-eps| = %.2g (3std %.2g)", std::abs(m - sr.fit.epsilon), 3 * sd);
}

// 4. Spectral trace identities on every generated graph.
std::string criterion_trace_identities() {
  std::vector<SpatialGraph> graphs;
  for (const auto& g : slab_run().ensemble) graphs.push_back(g);
  for (int r = 0; r < 3; ++r) {
    graphs.push_back(torus_generate(torus_run().tc, rng::child_seed(777, r)));
  }
  for (std::size_t idx = 0; idx < graphs.size(); ++idx) {
    const SpatialGraph& g = graphs[idx];
    const auto spec = adjacency_spectrum(g);
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    for (double l : spec) {
      s1 += l;
      s2 += l * l;
      s4 += l * l * l * l;
    }
    const double loops = static_cast<double>(g.self_loop_count());
    const double nonloop = static_cast<double>(g.edge_count()) - loops;
    const double walks = static_cast<double>(closed_4_walks(g));
    require(std::abs(s1 - loops) <= 1e-6 * static_cast<double>(g.n()),
            fmt("graph %g: sum lambda %.3g != loops %g", static_cast<double>(idx), s1, loops));
    require(std::abs(s2 - (2.0 * nonloop + loops)) <= 1e-6 * std::max(1.0, s2),
            fmt("graph %g: sum lambda^2 %.6g != 2E+loops %.6g", static_cast<double>(idx), s2,
                2.0 * nonloop + loops));
    require(std::abs(s4 - walks) <= 1e-6 * std::max(1.0, walks),
            fmt("graph %g: sum lambda^4 %.6g != closed 4-walks %.6g",
                static_cast<double>(idx), s4, walks));
  }
  return fmt("%g graphs (slab ensemble + torus), all three identities at 1e-6",
             static_cast<double>(graphs.size()));
}

// 5. Brute-force oracle equivalence on all metrics for n <= 8.
std::string criterion_small_graph_oracles() {
  rng::SplitMix64 r(555);
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 2 + r.next_below(7);  // 2..8
    const double p = 0.15 + 0.5 * r.next_double();
    std::vector<Position> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[i] = Position{static_cast<double>(i), 0, 0};
    std::vector<Edge> edges;
    for (VertexId i = 0; i < n; ++i) {
      for (VertexId j = i; j < n; ++j) {
        const double q = (i == j) ? 0.25 * p : p;  // loops, a bit rarer
        if (r.next_double() < q) edges.emplace_back(i, j);
      }
    }
    const SpatialGraph g(std::move(pos), std::move(edges));
    const std::string tag = fmt("instance %g (n=%g)", inst, static_cast<double>(n));

    require(count_triangles(g) == oracle::triangles(g), tag + ": triangle count");
    require(closed_4_walks(g) == oracle::closed_4_walks(g), tag + ": closed 4-walks");

    const auto bc = betweenness(g);
    const auto bco = oracle::betweenness(g);
    const auto cc = closeness(g);
    const auto cco = oracle::closeness(g);
    for (std::size_t v = 0; v < n; ++v) {
      require(std::abs(bc[v] - bco[v]) <= 1e-9, tag + ": betweenness");
      require(std::abs(cc[v] - cco[v]) <= 1e-9, tag + ": closeness");
    }

    const auto ec = eigencentrality(g);
    const auto spec = oracle::spectrum(g);
    const auto a = oracle::adjacency_matrix(g, true);
    const double lambda = spec.back();
    double norm = 0.0, resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      require(ec[i] >= 0.0, tag + ": eigencentrality sign");
      norm += ec[i] * ec[i];
      double av = 0.0;
      for (std::size_t j = 0; j < n; ++j) av += a[i][j] * ec[j];
      resid += (av - lambda * ec[i]) * (av - lambda * ec[i]);
    }
    require(std::abs(std::sqrt(norm) - 1.0) <= 1e-9, tag + ": eigencentrality norm");
    require(std::sqrt(resid) <= 1e-9, tag + ": eigencentrality eigenpair residual");
  }
  return "200/200 instances, all metrics against brute-force oracles";
}

// ------------------------------------------------------------------------
// Dataset-dependent criteria: reference values for the medulla export.
// ------------------------------------------------------------------------

struct MedullaExpectations {
  // named-2 / full-1 logistic parameters.
  double a1_named = 2.94589, b1_named = -0.00293112;
  double a2_named = 3.16284, b2_named = -0.0018741;
  double a1_full = 2.76129, b1_full = -0.00300996;
  double a2_full = 3.31531, b2_full = -0.00170436;
  // Observed values at x = 0 (count ratios: loops/n^2 and 1/n).
  double f1_0_named = 0.00056022, f2_0_named = 0.00280899;
  double f1_0_full = 0.0000331398, f2_0_full = 0.000561798;
  // Fit-quality values (MSE / mean percent error, all x and x > 500).
  double mse_f1_named = 0.0138996, mse_f1_tail_named = 0.000175405;
  double mpe_f1_named = 4.24187, mpe_f1_tail_named = 0.822747;
  double mse_f2_named = 0.0538964, mse_f2_tail_named = 0.00856598;
  double mpe_f2_named = 12.215, mpe_f2_tail_named = 5.32331;
  double mse_f1_full = 0.0201616, mse_f1_tail_full = 0.000250721;
  double mpe_f1_full = 4.68995, mpe_f1_tail_full = 0.901061;
  double mse_f2_full = 0.0694437, mse_f2_tail_full = 0.0127325;
  double mpe_f2_full = 12.655, mpe_f2_tail_full = 4.9259;
  // Ensemble statistics for the named-2 model (mean, std) and reference.
  struct Row {
    const char* name;
    double mean, stddev;
  };
  std::vector<Row> ensemble_named{{"edges", 2979.1, 94.9285},
                                  {"self_loops", 47.265, 4.60552},
                                  {"max_degree", 100.725, 13.0237},
                                  {"triangles", 5546.18, 795.223},
                                  {"closed_4_walks", 1.37876e6, 236890.0}};
};

std::string medulla_path() {
  if (const char* env = std::getenv("GEOCL_MEDULLA_CSV")) {
    if (*env) return env;
  }
#ifdef GEOCL_DATA_DIR
  const std::string bundled = std::string(GEOCL_DATA_DIR) + "/medulla_synapses.csv";
  if (std::filesystem::exists(bundled)) return bundled;
#endif
  return "";
}

ReferenceGraphs medulla_reference() {
  const std::string path = medulla_path();
  if (path.empty()) {
    throw Skip{"medulla synapse export not present (set GEOCL_MEDULLA_CSV); "
               "property-based criteria govern"};
  }
  return reference_graphs(parse_synapses_file(path));
}

// 6. Fit reproduction on the real export: parameters within 2%, observed
// ratios exact (to table precision), fit-quality numbers within 10%.
std::string criterion_medulla_fit() {
  const ReferenceGraphs refs = medulla_reference();
  const MedullaExpectations e;
  auto rel_ok = [](double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::abs(want);
  };

  const ModelFit named = fit_model(refs.named_minus2.graph);
  const ModelFit full = fit_model(refs.full_minus1.graph);

  require(rel_ok(named.f1.alpha, e.a1_named, 0.02) && rel_ok(named.f1.beta, e.b1_named, 0.02),
          fmt("named-2 F1 params off: alpha %.6g beta %.6g", named.f1.alpha, named.f1.beta));
  require(rel_ok(named.f2.alpha, e.a2_named, 0.02) && rel_ok(named.f2.beta, e.b2_named, 0.02),
          fmt("named-2 F2 params off: alpha %.6g beta %.6g", named.f2.alpha, named.f2.beta));
  require(rel_ok(full.f1.alpha, e.a1_full, 0.02) && rel_ok(full.f1.beta, e.b1_full, 0.02),
          fmt("full-1 F1 params off: alpha %.6g beta %.6g", full.f1.alpha, full.f1.beta));
  require(rel_ok(full.f2.alpha, e.a2_full, 0.02) && rel_ok(full.f2.beta, e.b2_full, 0.02),
          fmt("full-1 F2 params off: alpha %.6g beta %.6g", full.f2.alpha, full.f2.beta));

  // Observed x = 0 values are count ratios; match to table precision.
  const auto& gn = refs.named_minus2.graph;
  const auto& gf = refs.full_minus1.graph;
  const double f1_0n = static_cast<double>(gn.self_loop_count()) /
                       (static_cast<double>(gn.n()) * static_cast<double>(gn.n()));
  const double f2_0n = 1.0 / static_cast<double>(gn.n());
  const double f1_0f = static_cast<double>(gf.self_loop_count()) /
                       (static_cast<double>(gf.n()) * static_cast<double>(gf.n()));
  const double f2_0f = 1.0 / static_cast<double>(gf.n());
  require(rel_ok(f1_0n, e.f1_0_named, 1e-4) && rel_ok(f2_0n, e.f2_0_named, 1e-4),
          fmt("named-2 observed x=0 ratios off: %.6g %.6g", f1_0n, f2_0n));
  require(rel_ok(f1_0f, e.f1_0_full, 1e-4) && rel_ok(f2_0f, e.f2_0_full, 1e-4),
          fmt("full-1 observed x=0 ratios off: %.6g %.6g", f1_0f, f2_0f));

  struct QRow {
    double got, want;
  };
  const std::vector<QRow> q{{named.f1_all.mse, e.mse_f1_named},
                            {named.f1_tail.mse, e.mse_f1_tail_named},
                            {named.f1_all.mean_percent_error, e.mpe_f1_named},
                            {named.f1_tail.mean_percent_error, e.mpe_f1_tail_named},
                            {named.f2_all.mse, e.mse_f2_named},
                            {named.f2_tail.mse, e.mse_f2_tail_named},
                            {named.f2_all.mean_percent_error, e.mpe_f2_named},
                            {named.f2_tail.mean_percent_error, e.mpe_f2_tail_named},
                            {full.f1_all.mse, e.mse_f1_full},
                            {full.f1_tail.mse, e.mse_f1_tail_full},
                            {full.f1_all.mean_percent_error, e.mpe_f1_full},
                            {full.f1_tail.mean_percent_error, e.mpe_f1_tail_full},
                            {full.f2_all.mse, e.mse_f2_full},
                            {full.f2_tail.mse, e.mse_f2_tail_full},
                            {full.f2_all.mean_percent_error, e.mpe_f2_full},
                            {full.f2_tail.mean_percent_error, e.mpe_f2_tail_full}};
  for (std::size_t i = 0; i < q.size(); ++i) {
    require(rel_ok(q[i].got, q[i].want, 0.10),
            fmt("fit-quality row %g: %.6g vs %.6g beyond 10%%", static_cast<double>(i),
                q[i].got, q[i].want));
  }
  return "parameters within 2%, observed ratios exact, fit quality within 10%";
}

// 7. Ensemble reproduction on the real export: named-2 model, 200
// replicates; means within 3 published standard deviations.
std::string criterion_medulla_ensemble() {
  const ReferenceGraphs refs = medulla_reference();
  const MedullaExpectations e;
  const ModelFit fit = fit_model(refs.named_minus2.graph);
  GeneratorConfig cfg;
  cfg.seed = 20260814;
  cfg.replicates = 200;
  const auto ensemble = generate_ensemble(refs.named_minus2.graph, fit, cfg);
  StatsOptions opts;
  opts.spectrum = false;
  opts.centralities = false;
  std::vector<GraphStats> stats;
  for (const auto& g : ensemble) stats.push_back(stats_bundle(g, opts));

  auto mean_of = [&](auto field) {
    double s = 0.0;
    for (const auto& st : stats) s += static_cast<double>(st.*field);
    return s / static_cast<double>(stats.size());
  };
  const std::vector<std::pair<const char*, double>> got{
      {"edges", mean_of(&GraphStats::edges)},
      {"self_loops", mean_of(&GraphStats::self_loops)},
      {"max_degree", mean_of(&GraphStats::max_degree)},
      {"triangles", mean_of(&GraphStats::triangles)},
      {"closed_4_walks", mean_of(&GraphStats::closed_4_walks)}};
  std::string detail;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const auto& row = e.ensemble_named[i];
    const double z = (got[i].second - row.mean) / row.stddev;
    require(std::abs(got[i].second - row.mean) <= 3.0 * row.stddev,
            std::string(got[i].first) +
                fmt(": mean %.6g vs published %.6g, |z| = %.2f > 3", got[i].second, row.mean,
                    std::abs(z)));
    detail += std::string(got[i].first) + fmt(" z=%+.2f ", z);
  }
  return detail + "(all within 3 published std)";
}

// 8. Non-monotone connection law, and the power-law tail misfit.
std::string criterion_nonmonotone_and_tail() {
  // (a) With the published named-2 parameters the derivative ratio has
  // exactly one interior local maximum over a dense grid scan.
  const LogisticCurve c1{0.0449, 2.94589, -0.00293112};
  const LogisticCurve c2{1.0, 3.16284, -0.0018741};
  const int grid = 3001;
  std::vector<double> v(grid);
  for (int k = 0; k < grid; ++k) v[k] = derivative_ratio(c1, c2, 3000.0 * k / (grid - 1.0));
  int maxima = 0, minima = 0, argmax = 0;
  for (int k = 1; k + 1 < grid; ++k) {
    if (v[k] > v[k - 1] && v[k] >= v[k + 1]) {
      ++maxima;
      argmax = k;
    }
    if (v[k] < v[k - 1] && v[k] <= v[k + 1]) ++minima;
  }
  require(maxima == 1 && minima == 0,
          fmt("grid scan found %g maxima / %g minima, want exactly 1 / 0",
              static_cast<double>(maxima), static_cast<double>(minima)));
  const double peak_x = 3000.0 * argmax / (grid - 1.0);
  require(v[argmax] > v[0] && v[argmax] > v[grid - 1], "peak not interior");

  // (b) The inverse-power baseline misfits the distance profile that the
  // logistic model explains: the slab's connection law rises to a peak and
  // then decays, and no monotone power curve can track both sides. Both
  // models are fitted to the observed slab graph and scored against its
  // empirical distance profile with pair-count weights, so well-measured
  // bins dominate and bin-sampling noise does not.
  const SlabRun& sr = slab_run();
  const InversePowerCurve power = fit_inverse_power(sr.g0, 50);
  const auto profile = distance_profile(sr.g0, 50);
  const double n = static_cast<double>(sr.g0.n());
  const double mean_pair = sr.fit.sum_rho / (n * n);
  double wmse_pow = 0.0, wmse_log = 0.0, wsum = 0.0;
  int used = 0;
  for (const auto& b : profile) {
    if (!b.defined || b.pairs < 200) continue;  // well-measured bins only
    const double x = 0.5 * (b.lo + b.hi);
    const double model =
        std::min(1.0, derivative_ratio(sr.fit, x) / sr.fit.epsilon * mean_pair);
    const double w = static_cast<double>(b.pairs);
    const double dp = power.probability(x) - b.p;
    const double dl = model - b.p;
    wmse_pow += w * dp * dp;
    wmse_log += w * dl * dl;
    wsum += w;
    ++used;
  }
  require(used >= 20, fmt("only %g well-measured profile bins", static_cast<double>(used)));
  wmse_pow /= wsum;
  wmse_log /= wsum;
  require(wmse_log < 0.5 * wmse_pow,
          fmt("profile MSE: logistic %.3g not well below inverse-power %.3g", wmse_log,
              wmse_pow));
  return fmt("ratio peak at x=%.0f, interior; ", peak_x) +
         fmt("weighted profile MSE: logistic %.2g vs inverse-power %.2g (%g bins)", wmse_log,
             wmse_pow, static_cast<double>(used));
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 logistic fit recovery", criterion_fit_recovery},
      {"2 torus degree law (mean degree == intensity)", criterion_torus_degree_law},
      {"3 expected edge-density compatibility", criterion_density},
      {"4 spectral trace identities", criterion_trace_identities},
      {"5 small-graph brute-force oracle equivalence", criterion_small_graph_oracles},
      {"6 medulla fit reproduction [dataset-dependent]", criterion_medulla_fit},
      {"7 medulla ensemble reproduction [dataset-dependent]", criterion_medulla_ensemble},
      {"8 non-monotone law and inverse-power tail misfit", criterion_nonmonotone_and_tail},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string status, detail;
    try {
      detail = c.run();
      status = "[PASS]";
    } catch (const Skip& s) {
      status = "[SKIP]";
      detail = s.reason;
    } catch (const Failure& f) {
      status = "[FAIL]";
      detail = f.what;
      ++failures;
    } catch (const std::exception& e) {
      status = "[FAIL]";
      detail = std::string("unexpected error: ") + e.what();
      ++failures;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s [%.1f s]\n", status.c_str(), c.name, detail.c_str(),
                secs);
  }
  if (failures > 0) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all runnable criteria passed\n");
  return 0;
}

#include "geocl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "csv_util.hpp"
#include "geocl/errors.hpp"

namespace geocl {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

json json_or_null(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return v;
}

Position centroid_of(const SpatialGraph& g) {
  Position c{0, 0, 0};
  if (g.n() == 0) return c;
  for (const Position& p : g.positions()) {
    c.x += p.x;
    c.y += p.y;
    c.z += p.z;
  }
  const double n = static_cast<double>(g.n());
  return Position{c.x / n, c.y / n, c.z / n};
}

}  // namespace

void write_fit_report(const ModelFit& fit, const std::string& path) {
  json j;
  j["epsilon"] = fit.epsilon;
  j["alpha1"] = fit.f1.alpha;
  j["beta1"] = fit.f1.beta;
  j["alpha2"] = fit.f2.alpha;
  j["beta2"] = fit.f2.beta;
  j["mse_f1"] = fit.f1_all.mse;
  j["mse_f2"] = fit.f2_all.mse;
  j["mpe_f1"] = fit.f1_all.mean_percent_error;
  j["mpe_f2"] = fit.f2_all.mean_percent_error;
  j["chung_lu_ok"] = fit.chung_lu.ok;
  j["violators"] = fit.chung_lu.violators;
  j["mse_f1_tail"] = fit.f1_tail.mse;
  j["mse_f2_tail"] = fit.f2_tail.mse;
  j["mpe_f1_tail"] = fit.f1_tail.mean_percent_error;
  j["mpe_f2_tail"] = fit.f2_tail.mean_percent_error;
  j["sum_rho"] = fit.sum_rho;
  j["max_distance"] = fit.max_distance;
  j["convention"] = fit.convention == PairConvention::ordered ? "ordered" : "unordered";
  write_text(path, j.dump(2) + "\n");
}

ModelFit load_fit_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(path + ": bad JSON: " + e.what());
  }
  ModelFit fit;
  try {
    fit.epsilon = j.at("epsilon").get<double>();
    fit.f1 = LogisticCurve{fit.epsilon, j.at("alpha1").get<double>(),
                           j.at("beta1").get<double>()};
    fit.f2 =
        LogisticCurve{1.0, j.at("alpha2").get<double>(), j.at("beta2").get<double>()};
    fit.sum_rho = j.at("sum_rho").get<double>();
    fit.max_distance = j.at("max_distance").get<double>();
    fit.chung_lu.ok = j.at("chung_lu_ok").get<bool>();
    fit.convention = j.at("convention").get<std::string>() == "unordered"
                         ? PairConvention::unordered_diag
                         : PairConvention::ordered;
  } catch (const json::exception& e) {
    throw DataError(path + ": missing field: " + e.what());
  }
  return fit;
}

void write_intensities_csv(const SpatialGraph& g, const ModelFit& fit,
                           const std::string& path) {
  if (fit.omega.size() != g.n() || fit.rho_hat.size() != g.n()) {
    throw std::invalid_argument("write_intensities_csv: fit does not match graph");
  }
  const Position c = centroid_of(g);
  std::ostringstream out;
  out << "id,degree,omega,rho_hat,dist_to_centroid\n";
  for (std::size_t v = 0; v < g.n(); ++v) {
    const Position& p = g.position(static_cast<VertexId>(v));
    const double dx = p.x - c.x, dy = p.y - c.y, dz = p.z - c.z;
    out << v << ',' << g.degree(static_cast<VertexId>(v)) << ',' << fmt(fit.omega[v]) << ','
        << fmt(fit.rho_hat[v]) << ',' << fmt(std::sqrt(dx * dx + dy * dy + dz * dz)) << '\n';
  }
  write_text(path, out.str());
}

IntensityRows load_intensities_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) ||
      csv::strip(line) != "id,degree,omega,rho_hat,dist_to_centroid") {
    throw DataError(path + ":1: expected intensities header");
  }
  IntensityRows rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (csv::strip(line).empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 5) throw DataError(path + ":" + std::to_string(lineno) + ": bad row");
    const std::uint64_t id = csv::parse_u64(f[0], path, lineno);
    if (id != rows.omega.size()) {
      throw DataError(path + ":" + std::to_string(lineno) + ": ids must be sequential");
    }
    rows.omega.push_back(csv::parse_double(f[2], path, lineno));
    rows.rho_hat.push_back(csv::parse_double(f[3], path, lineno));
  }
  return rows;
}

void write_cdf_csv(const ModelFit& fit, const std::string& path) {
  std::ostringstream out;
  out << "x,emp_f1,fit_f1,emp_f2,fit_f2\n";
  for (std::size_t k = 0; k < fit.emp_f1.xs.size(); ++k) {
    const double x = fit.emp_f1.xs[k];
    out << fmt(x) << ',' << fmt(fit.emp_f1.ps[k]) << ',' << fmt(fit.f1.value(x)) << ','
        << fmt(fit.emp_f2.ps[k]) << ',' << fmt(fit.f2.value(x)) << '\n';
  }
  write_text(path, out.str());
}

void write_stats_csv(const std::vector<GraphStats>& stats, const std::string& path) {
  std::ostringstream out;
  out << "replicate,edges,self_loops,connected_components,non_isolated_components,"
         "max_degree,triangles,closed_4_walks\n";
  for (std::size_t r = 0; r < stats.size(); ++r) {
    const GraphStats& s = stats[r];
    out << r << ',' << s.edges << ',' << s.self_loops << ',' << s.connected_components << ','
        << s.non_isolated_components << ',' << s.max_degree << ',' << s.triangles << ','
        << s.closed_4_walks << '\n';
  }
  write_text(path, out.str());
}

void write_ensemble_summary_json(const EnsembleSummary& summary, const std::string& path) {
  json j;
  j["replicates"] = summary.replicates;
  json stats = json::array();
  for (const ScalarSummary& s : summary.stats) {
    json row;
    row["statistic"] = s.name;
    row["reference"] = s.reference;
    row["mean"] = s.mean;
    row["std"] = s.stddev;
    row["min"] = s.min;
    row["max"] = s.max;
    row["z"] = json_or_null(s.z);
    stats.push_back(row);
  }
  j["stats"] = stats;
  write_text(path, j.dump(2) + "\n");
}

void write_comparison_csv(const EnsembleSummary& summary, const std::string& path) {
  std::ostringstream out;
  out << "statistic,reference,mean,std,min,max,z\n";
  for (const ScalarSummary& s : summary.stats) {
    out << s.name << ',' << fmt(s.reference) << ',' << fmt(s.mean) << ',' << fmt(s.stddev)
        << ',' << fmt(s.min) << ',' << fmt(s.max) << ','
        << (std::isnan(s.z) ? std::string("") : fmt(s.z)) << '\n';
  }
  write_text(path, out.str());
}

std::string render_comparison_table(const EnsembleSummary& summary) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-26s %14s %14s %12s %8s\n", "statistic", "reference",
                "mean", "std", "z");
  out << buf;
  for (const ScalarSummary& s : summary.stats) {
    if (std::isnan(s.z)) {
      std::snprintf(buf, sizeof buf, "%-26s %14.6g %14.6g %12.6g %8s\n", s.name.c_str(),
                    s.reference, s.mean, s.stddev, "-");
    } else {
      std::snprintf(buf, sizeof buf, "%-26s %14.6g %14.6g %12.6g %8.2f\n", s.name.c_str(),
                    s.reference, s.mean, s.stddev, s.z);
    }
    out << buf;
  }
  return out.str();
}

void write_spectrum_histogram_csv(const std::vector<double>& reference,
                                  const std::vector<double>& simulated, std::size_t bins,
                                  const std::string& path) {
  if (bins < 1) throw std::invalid_argument("write_spectrum_histogram_csv: bins >= 1");
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const auto* vec : {&reference, &simulated}) {
    for (double v : *vec) {
      if (!any) {
        lo = hi = v;
        any = true;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!any) throw std::invalid_argument("write_spectrum_histogram_csv: empty spectra");
  if (hi <= lo) hi = lo + 1.0;
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::uint64_t> rc(bins, 0), sc(bins, 0);
  auto bin_of = [&](double v) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    return std::min(b, bins - 1);
  };
  for (double v : reference) ++rc[bin_of(v)];
  for (double v : simulated) ++sc[bin_of(v)];
  std::ostringstream out;
  out << "bin_lo,bin_hi,reference_count,simulated_count\n";
  for (std::size_t b = 0; b < bins; ++b) {
    out << fmt(lo + width * static_cast<double>(b)) << ','
        << fmt(b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1)) << ',' << rc[b]
        << ',' << sc[b] << '\n';
  }
  write_text(path, out.str());
}

void write_centrality_rank_csv(const std::vector<double>& reference,
                               const std::vector<double>& simulated,
                               const std::string& path) {
  std::vector<double> ref(reference), sim(simulated);
  std::sort(ref.begin(), ref.end(), std::greater<>());
  std::sort(sim.begin(), sim.end(), std::greater<>());
  const std::size_t rows = std::max(ref.size(), sim.size());
  std::ostringstream out;
  out << "rank,reference,simulated\n";
  for (std::size_t r = 0; r < rows; ++r) {
    out << (r + 1) << ',';
    if (r < ref.size()) out << fmt(ref[r]);
    out << ',';
    if (r < sim.size()) out << fmt(sim[r]);
    out << '\n';
  }
  write_text(path, out.str());
}

void write_short_range_csv(const ShortRangeTable& table, const std::string& path) {
  std::ostringstream out;
  out << "lo,hi,pairs,edges,p\n";
  out << "0,0,,," << fmt(table.p_self_loop) << '\n';
  for (const DistanceBin& b : table.bins) {
    out << fmt(b.lo) << ',' << fmt(b.hi) << ',' << b.pairs << ',' << b.edges << ',';
    if (b.defined) out << fmt(b.p);
    out << '\n';
  }
  write_text(path, out.str());
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace geocl

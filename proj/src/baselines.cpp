#include "geocl/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geocl/errors.hpp"
#include "geocl/kernels.hpp"
#include "geocl/rng.hpp"

namespace geocl {

SpatialGraph chung_lu_generate(const SpatialGraph& ref, const std::vector<double>& weights,
                               std::uint64_t seed) {
  const std::size_t n = ref.n();
  if (weights.size() != n) throw std::invalid_argument("chung_lu_generate: weights size != n");
  double sum_w = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("chung_lu_generate: negative weight");
    sum_w += w;
  }
  std::vector<Edge> edges;
  if (sum_w > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      const double wi = weights[i];
      if (wi == 0.0) continue;
      for (std::size_t j = i; j < n; ++j) {
        const double p = std::min(wi * weights[j] / sum_w, 1.0);
        if (p > 0.0 && rng::pair_uniform(seed, static_cast<std::uint32_t>(i),
                                         static_cast<std::uint32_t>(j)) < p) {
          edges.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
      }
    }
  }
  return SpatialGraph(ref.positions(), std::move(edges),
                      ref.has_labels() ? ref.labels() : std::vector<std::string>{});
}

double InversePowerCurve::value(double x) const { return k * std::pow(x, -beta_exp); }

double InversePowerCurve::probability(double x) const {
  return std::clamp(value(x), 0.0, 1.0);
}

InversePowerCurve fit_inverse_power_points(const std::vector<double>& xs,
                                           const std::vector<double>& ps,
                                           const std::vector<double>& weights) {
  if (xs.size() != ps.size() || xs.size() != weights.size()) {
    throw std::invalid_argument("fit_inverse_power_points: size mismatch");
  }
  // Weighted least squares of log p = a - b log x.
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ps[i] > 0.0) || !(weights[i] > 0.0)) continue;
    const double lx = std::log(xs[i]);
    const double ly = std::log(ps[i]);
    const double w = weights[i];
    sw += w;
    sx += w * lx;
    sy += w * ly;
    sxx += w * lx * lx;
    sxy += w * lx * ly;
    ++used;
  }
  if (used < 2) throw NumericalError("fit_inverse_power: fewer than 2 usable points");
  const double det = sw * sxx - sx * sx;
  if (det == 0.0) throw NumericalError("fit_inverse_power: degenerate abscissae");
  const double slope = (sw * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / sw;
  return InversePowerCurve{std::exp(intercept), -slope};
}

std::vector<DistanceBin> distance_profile(const SpatialGraph& g, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("distance_profile: bins >= 1");
  const std::size_t n = g.n();
  const PositionsSoA soa = positions_soa(g);
  const auto& kb = kernels::active();
  std::vector<double> row(n);
  double maxd = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t m = n - i - 1;
    kb.dist3_v(soa.x[i], soa.y[i], soa.z[i], soa.x.data() + i + 1, soa.y.data() + i + 1,
               soa.z.data() + i + 1, row.data(), m);
    for (std::size_t j = 0; j < m; ++j) maxd = std::max(maxd, row[j]);
  }
  std::vector<DistanceBin> out(bins);
  if (!(maxd > 0.0)) return out;
  const double width = maxd / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lo = width * static_cast<double>(b);
    out[b].hi = width * static_cast<double>(b + 1);
  }
  out.back().hi = maxd;
  auto bin_of = [&](double d) -> std::size_t {
    // d in (lo, hi]; d == 0 is excluded by the caller.
    std::size_t b = std::min<std::size_t>(bins - 1, static_cast<std::size_t>(d / width));
    while (b > 0 && d <= out[b].lo) --b;
    while (d > out[b].hi) ++b;
    return b;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t m = n - i - 1;
    kb.dist3_v(soa.x[i], soa.y[i], soa.z[i], soa.x.data() + i + 1, soa.y.data() + i + 1,
               soa.z.data() + i + 1, row.data(), m);
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] > 0.0) ++out[bin_of(row[j])].pairs;
    }
  }
  for (const auto& [u, v] : g.edges()) {
    if (u == v) continue;
    const double d = euclidean_distance(g, u, v);
    if (d > 0.0) ++out[bin_of(d)].edges;
  }
  for (DistanceBin& b : out) {
    if (b.pairs > 0) {
      b.defined = true;
      b.p = static_cast<double>(b.edges) / static_cast<double>(b.pairs);
    }
  }
  return out;
}

InversePowerCurve fit_inverse_power(const SpatialGraph& g, std::size_t bins) {
  const auto profile = distance_profile(g, bins);
  std::vector<double> xs, ps, ws;
  for (const DistanceBin& b : profile) {
    if (!b.defined || b.edges == 0) continue;
    xs.push_back((b.lo + b.hi) / 2.0);
    ps.push_back(b.p);
    ws.push_back(static_cast<double>(b.pairs));
  }
  if (xs.size() < 2) throw NumericalError("fit_inverse_power: fewer than 2 non-empty bins");
  return fit_inverse_power_points(xs, ps, ws);
}

ShortRangeTable short_range_probabilities(const SpatialGraph& g,
                                          const std::vector<double>& breaks) {
  if (breaks.size() < 2 || !std::is_sorted(breaks.begin(), breaks.end())) {
    throw std::invalid_argument("short_range_probabilities: breaks must be sorted, size >= 2");
  }
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    if (!(breaks[b] < breaks[b + 1])) {
      throw std::invalid_argument("short_range_probabilities: breaks must be strictly increasing");
    }
  }
  ShortRangeTable table;
  table.p_self_loop =
      g.n() > 0 ? static_cast<double>(g.self_loop_count()) / static_cast<double>(g.n()) : 0.0;
  table.bins.resize(breaks.size() - 1);
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    table.bins[b].lo = breaks[b];
    table.bins[b].hi = breaks[b + 1];
  }
  const std::size_t n = g.n();
  const PositionsSoA soa = positions_soa(g);
  const auto& kb = kernels::active();
  std::vector<double> row(n);
  auto bin_of = [&](double d) -> std::ptrdiff_t {
    for (std::size_t b = 0; b < table.bins.size(); ++b) {
      if (d > table.bins[b].lo && d <= table.bins[b].hi) return static_cast<std::ptrdiff_t>(b);
    }
    return -1;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t m = n - i - 1;
    kb.dist3_v(soa.x[i], soa.y[i], soa.z[i], soa.x.data() + i + 1, soa.y.data() + i + 1,
               soa.z.data() + i + 1, row.data(), m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto b = bin_of(row[j]);
      if (b >= 0) ++table.bins[static_cast<std::size_t>(b)].pairs;
    }
  }
  for (const auto& [u, v] : g.edges()) {
    if (u == v) continue;
    const auto b = bin_of(euclidean_distance(g, u, v));
    if (b >= 0) ++table.bins[static_cast<std::size_t>(b)].edges;
  }
  for (DistanceBin& b : table.bins) {
    if (b.pairs > 0) {
      b.defined = true;
      b.p = static_cast<double>(b.edges) / static_cast<double>(b.pairs);
    }
  }
  return table;
}

}  // namespace geocl

#include "geocl/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stack>
#include <stdexcept>

#include "geocl/errors.hpp"

namespace geocl {

namespace {

// Adjacency without self-loops, for path-based measures.
std::vector<std::vector<VertexId>> loopless_adjacency(const SpatialGraph& g) {
  std::vector<std::vector<VertexId>> adj(g.n());
  for (const auto& [u, v] : g.edges()) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

std::vector<std::uint32_t> component_labels(const SpatialGraph& g,
                                            std::uint32_t* count_out) {
  const std::size_t n = g.n();
  const auto adj = loopless_adjacency(g);
  std::vector<std::uint32_t> label(n, ~0u);
  std::uint32_t next = 0;
  std::vector<VertexId> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != ~0u) continue;
    label[s] = next;
    stack.push_back(static_cast<VertexId>(s));
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v : adj[u]) {
        if (label[v] == ~0u) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count_out) *count_out = next;
  return label;
}

}  // namespace

std::uint64_t count_triangles(const SpatialGraph& g) {
  const auto adj = loopless_adjacency(g);
  std::uint64_t total = 0;
  // For every edge u<v, count common neighbors w>v: each triangle once.
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (VertexId v : adj[u]) {
      if (v <= u) continue;
      const auto& a = adj[u];
      const auto& b = adj[v];
      auto ia = std::upper_bound(a.begin(), a.end(), v);
      auto ib = std::upper_bound(b.begin(), b.end(), v);
      while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
          ++ia;
        } else if (*ib < *ia) {
          ++ib;
        } else {
          ++total;
          ++ia;
          ++ib;
        }
      }
    }
  }
  return total;
}

std::uint64_t closed_4_walks(const SpatialGraph& g) {
  // trace(A^4) = sum_{u,v} (A^2)_{uv}^2; A includes the loop diagonal, and
  // the graph adjacency lists already carry the loop vertex once.
  const std::size_t n = g.n();
  std::vector<std::uint32_t> twowalks(n, 0);
  std::vector<VertexId> touched;
  std::uint64_t total = 0;
  for (std::size_t u = 0; u < n; ++u) {
    touched.clear();
    for (VertexId w : g.neighbors(static_cast<VertexId>(u))) {
      for (VertexId v : g.neighbors(w)) {
        if (twowalks[v] == 0) touched.push_back(v);
        ++twowalks[v];
      }
    }
    for (VertexId v : touched) {
      total += static_cast<std::uint64_t>(twowalks[v]) * twowalks[v];
      twowalks[v] = 0;
    }
  }
  return total;
}

ComponentCount components(const SpatialGraph& g) {
  std::uint32_t count = 0;
  const auto label = component_labels(g, &count);
  std::vector<std::uint32_t> size(count, 0);
  for (std::uint32_t l : label) ++size[l];
  ComponentCount out;
  out.total = count;
  for (std::uint32_t s : size) {
    if (s >= 2) ++out.non_isolated;
  }
  return out;
}

std::vector<double> adjacency_spectrum(const SpatialGraph& g) {
  const std::size_t n = g.n();
  if (n == 0) return {};
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("adjacency_spectrum: eigensolver failed to converge");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + n);
}

std::vector<double> betweenness(const SpatialGraph& g) {
  // Brandes (2001) for unweighted graphs; every unordered pair is seen from
  // both endpoints, hence the final halving.
  const std::size_t n = g.n();
  const auto adj = loopless_adjacency(g);
  std::vector<double> bc(n, 0.0);
  std::vector<VertexId> order;
  order.reserve(n);
  std::vector<std::vector<VertexId>> pred(n);
  std::vector<std::int64_t> dist(n);
  std::vector<double> sigma(n), delta(n);
  std::deque<VertexId> queue;
  for (std::size_t s = 0; s < n; ++s) {
    order.clear();
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : pred) p.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    queue.push_back(static_cast<VertexId>(s));
    while (!queue.empty()) {
      const VertexId u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (VertexId v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
        if (dist[v] == dist[u] + 1) {
          sigma[v] += sigma[u];
          pred[v].push_back(u);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const VertexId w = *it;
      for (VertexId u : pred[w]) {
        delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) bc[w] += delta[w];
    }
  }
  for (double& b : bc) b /= 2.0;
  return bc;
}

std::vector<double> closeness(const SpatialGraph& g) {
  const std::size_t n = g.n();
  const auto adj = loopless_adjacency(g);
  std::uint32_t count = 0;
  const auto label = component_labels(g, &count);
  std::vector<std::uint32_t> comp_size(count, 0);
  for (std::uint32_t l : label) ++comp_size[l];

  std::vector<double> out(n, 0.0);
  std::vector<std::int64_t> dist(n);
  std::deque<VertexId> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp_size[label[s]] < 2) continue;  // isolated: 1/inf = 0
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.push_back(static_cast<VertexId>(s));
    std::int64_t sum = 0;
    while (!queue.empty()) {
      const VertexId u = queue.front();
      queue.pop_front();
      sum += dist[u];
      for (VertexId v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    out[s] = static_cast<double>(comp_size[label[s]]) / static_cast<double>(sum);
  }
  return out;
}

std::vector<double> eigencentrality(const SpatialGraph& g) {
  const std::size_t n = g.n();
  if (n == 0) return {};
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> v(n, inv_sqrt_n), av(n, 0.0);

  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    // y = A x, adjacency lists already carry self-loops once.
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      for (VertexId w : g.neighbors(static_cast<VertexId>(u))) y[u] += x[w];
    }
  };

  constexpr int kMaxIter = 100000;
  constexpr double kTol = 1e-10;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    // Power step on A + I: strictly dominant Perron root, same eigenvectors.
    apply(v, av);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      av[i] += v[i];
      norm += av[i] * av[i];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) break;  // unreachable: shift keeps the iterate nonzero
    for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / norm;

    apply(v, av);
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) lambda += v[i] * av[i];
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = av[i] - lambda * v[i];
      resid += r * r;
    }
    if (std::sqrt(resid) <= kTol * std::max(1.0, std::abs(lambda))) {
      for (double& c : v) c = std::abs(c);  // Perron vector, fix signs of -0/noise
      return v;
    }
  }
  throw NumericalError("eigencentrality: power iteration did not converge "
                       "(degenerate or near-degenerate top eigenvalue)");
}

GraphStats stats_bundle(const SpatialGraph& g, const StatsOptions& opts) {
  GraphStats s;
  s.self_loops = g.self_loop_count();
  const ComponentCount cc = components(g);
  s.connected_components = cc.total;
  s.non_isolated_components = cc.non_isolated;
  for (std::size_t v = 0; v < g.n(); ++v) {
    s.max_degree = std::max<std::uint64_t>(s.max_degree, g.degree(static_cast<VertexId>(v)));
  }
  s.edges = g.edge_count();
  s.triangles = count_triangles(g);
  s.closed_4_walks = geocl::closed_4_walks(g);
  if (opts.spectrum) s.spectrum = adjacency_spectrum(g);
  if (opts.centralities) {
    s.betweenness = geocl::betweenness(g);
    s.closeness = geocl::closeness(g);
    s.eigencentrality = geocl::eigencentrality(g);
  }
  return s;
}

EnsembleSummary ensemble_summary(const std::vector<GraphStats>& ensemble,
                                 const GraphStats& reference) {
  if (ensemble.size() < 2) {
    throw std::invalid_argument("ensemble_summary: need >= 2 replicates");
  }
  struct Field {
    const char* name;
    std::uint64_t GraphStats::*member;
  };
  static constexpr Field kFields[] = {
      {"self_loops", &GraphStats::self_loops},
      {"connected_components", &GraphStats::connected_components},
      {"non_isolated_components", &GraphStats::non_isolated_components},
      {"max_degree", &GraphStats::max_degree},
      {"edges", &GraphStats::edges},
      {"triangles", &GraphStats::triangles},
      {"closed_4_walks", &GraphStats::closed_4_walks},
  };
  EnsembleSummary out;
  out.replicates = ensemble.size();
  const double n = static_cast<double>(ensemble.size());
  for (const Field& f : kFields) {
    ScalarSummary s;
    s.name = f.name;
    s.reference = static_cast<double>(reference.*(f.member));
    double sum = 0.0;
    s.min = std::numeric_limits<double>::infinity();
    s.max = -std::numeric_limits<double>::infinity();
    for (const GraphStats& gs : ensemble) {
      const double v = static_cast<double>(gs.*(f.member));
      sum += v;
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
    }
    s.mean = sum / n;
    double ss = 0.0;
    for (const GraphStats& gs : ensemble) {
      const double d = static_cast<double>(gs.*(f.member)) - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / (n - 1.0));
    s.z = s.stddev > 0.0 ? (s.reference - s.mean) / s.stddev
                         : std::numeric_limits<double>::quiet_NaN();
    out.stats.push_back(std::move(s));
  }
  return out;
}

}  // namespace geocl

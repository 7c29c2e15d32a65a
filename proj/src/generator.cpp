#include "geocl/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "geocl/errors.hpp"
#include "geocl/kernels.hpp"
#include "geocl/rng.hpp"
#include "parallel.hpp"

namespace geocl {

namespace {

kernels::RatioParams ratio_params(const ModelFit& fit) {
  return kernels::RatioParams::make(fit.f1.plateau, fit.f1.alpha, fit.f1.beta,
                                    fit.f2.plateau, fit.f2.alpha, fit.f2.beta);
}

std::vector<std::uint32_t> permutation(std::size_t n, std::uint64_t child, bool shuffle) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  if (shuffle && n > 1) {
    rng::SplitMix64 stream(rng::mix64(child + rng::GOLDEN));
    for (std::size_t i = n - 1; i > 0; --i) {
      const std::uint64_t j = stream.next_below(i + 1);
      std::swap(perm[i], perm[j]);
    }
  }
  return perm;
}

}  // namespace

double connection_probability(const ModelFit& fit, double rho_i, double rho_j, double d) {
  if (!(rho_i > 0.0) || !(rho_j > 0.0) || !(fit.sum_rho > 0.0)) return 0.0;
  const double w = std::min(rho_i * rho_j / fit.sum_rho, 1.0);
  const double p = w * derivative_ratio(fit, d) / fit.epsilon;
  return std::clamp(p, 0.0, 1.0);
}

SpatialGraph generate_graph(const SpatialGraph& ref, const ModelFit& fit,
                            const GeneratorConfig& cfg, std::uint32_t replicate_index) {
  const std::size_t n = ref.n();
  if (fit.rho_hat.size() != n) {
    throw std::invalid_argument("generate_graph: fit does not match reference graph size");
  }
  const std::uint64_t child = rng::child_seed(cfg.seed, replicate_index);
  const auto perm = permutation(n, child, cfg.permute_intensities);
  std::vector<double> rho(n);
  for (std::size_t i = 0; i < n; ++i) rho[i] = fit.rho_hat[perm[i]];

  std::vector<Edge> edges;
  if (fit.sum_rho > 0.0) {
    const PositionsSoA soa = positions_soa(ref);
    const auto& kb = kernels::active();
    const kernels::RatioParams rp = ratio_params(fit);
    const double inv_eps = 1.0 / fit.epsilon;
    std::vector<double> dist(n), prob(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t m = n - i;  // row covers j = i..n-1; dist[0] = 0 is the self-pair
      kb.dist3_v(soa.x[i], soa.y[i], soa.z[i], soa.x.data() + i, soa.y.data() + i,
                 soa.z.data() + i, dist.data(), m);
      kb.edge_prob_v(rp, inv_eps, rho[i] / fit.sum_rho, rho.data() + i, dist.data(),
                     prob.data(), m);
      const auto iu = static_cast<std::uint32_t>(i);
      for (std::size_t k = 0; k < m; ++k) {
        if (prob[k] > 0.0 &&
            rng::pair_uniform(child, iu, static_cast<std::uint32_t>(i + k)) < prob[k]) {
          edges.emplace_back(iu, static_cast<std::uint32_t>(i + k));
        }
      }
    }
  }
  return SpatialGraph(ref.positions(), std::move(edges),
                      ref.has_labels() ? ref.labels() : std::vector<std::string>{});
}

std::vector<SpatialGraph> generate_ensemble(const SpatialGraph& ref, const ModelFit& fit,
                                            const GeneratorConfig& cfg) {
  if (cfg.replicates < 1) throw std::invalid_argument("generate_ensemble: replicates >= 1");
  std::vector<SpatialGraph> out(cfg.replicates);
  parallel_for_index(cfg.replicates, [&](std::size_t r) {
    out[r] = generate_graph(ref, fit, cfg, static_cast<std::uint32_t>(r));
  });
  return out;
}

double expected_edge_count(const SpatialGraph& ref, const ModelFit& fit) {
  const std::size_t n = ref.n();
  if (fit.rho_hat.size() != n) {
    throw std::invalid_argument("expected_edge_count: fit does not match reference graph");
  }
  if (!(fit.sum_rho > 0.0)) return 0.0;
  const PositionsSoA soa = positions_soa(ref);
  const auto& kb = kernels::active();
  const kernels::RatioParams rp = ratio_params(fit);
  const double inv_eps = 1.0 / fit.epsilon;
  std::vector<double> dist(n), prob(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = n - i;
    kb.dist3_v(soa.x[i], soa.y[i], soa.z[i], soa.x.data() + i, soa.y.data() + i,
               soa.z.data() + i, dist.data(), m);
    kb.edge_prob_v(rp, inv_eps, fit.rho_hat[i] / fit.sum_rho, fit.rho_hat.data() + i,
                   dist.data(), prob.data(), m);
    for (std::size_t k = 0; k < m; ++k) total += prob[k];
  }
  return total;
}

}  // namespace geocl

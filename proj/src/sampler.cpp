#include "qlp/sampler.hpp"

#include "qlp/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qlp {

SamplerConfig SamplerConfig::uniform(std::size_t node_count, std::uint64_t shots, std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.shots_per_node.assign(node_count, shots);
  cfg.seed = seed;
  return cfg;
}

SamplerConfig SamplerConfig::degree_proportional(const Graph& g, std::uint64_t mean_shots,
                                                 std::uint64_t seed) {
  SamplerConfig cfg;
  cfg.seed = seed;
  const double k_av = g.mean_degree();
  cfg.shots_per_node.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const double share = k_av > 0 ? static_cast<double>(g.degree(v)) / k_av : 1.0;
    const auto s = static_cast<std::uint64_t>(std::llround(static_cast<double>(mean_shots) * share));
    cfg.shots_per_node[v] = std::max<std::uint64_t>(1, s);
  }
  return cfg;
}

void SamplerConfig::validate(std::size_t node_count) const {
  if (shots_per_node.size() != node_count) {
    throw std::invalid_argument("shot table size does not match node count");
  }
  if (std::any_of(shots_per_node.begin(), shots_per_node.end(), [](auto s) { return s == 0; })) {
    throw std::invalid_argument("every node needs at least one shot");
  }
  if (!keep_even && !keep_odd) throw std::invalid_argument("sampler keeps neither parity");
}

std::uint64_t SamplerConfig::total_shots() const {
  std::uint64_t total = 0;
  for (auto s : shots_per_node) total += s;
  return total;
}

std::string_view to_string(Disposition d) {
  switch (d) {
    case Disposition::kept: return "kept";
    case Disposition::discarded_self: return "discarded_self";
    case Disposition::discarded_existing_link: return "discarded_existing_link";
    case Disposition::discarded_parity: return "discarded_parity";
  }
  return "?";
}

ShotDistribution shot_distribution(const EvolutionOperator& u, NodeId j) {
  const std::size_t n = u.size();
  if (j >= n) throw std::out_of_range("initial node out of range");
  ShotDistribution d;
  d.initial_node = j;
  d.probability.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = u.re_part(static_cast<Eigen::Index>(i), j);
    const double im = u.im_part(static_cast<Eigen::Index>(i), j);
    d.probability[i] = re * re;
    d.probability[n + i] = im * im;
  }
  return d;
}

std::uint64_t node_stream_seed(std::uint64_t seed, NodeId j) {
  return derive_seed(seed, j);
}

void draw_samples(const Graph& g, const EvolutionOperator& u, const SamplerConfig& cfg,
                  const SampleSink& sink) {
  const std::size_t n = g.node_count();
  if (u.size() != n) throw std::invalid_argument("evolution operator does not match graph");
  cfg.validate(n);

  std::vector<double> cdf(2 * n);
  for (NodeId j = 0; j < n; ++j) {
    const ShotDistribution dist = shot_distribution(u, j);
    std::partial_sum(dist.probability.begin(), dist.probability.end(), cdf.begin());
    const double total = cdf.back();
    std::mt19937_64 rng(node_stream_seed(cfg.seed, j));

    for (std::uint64_t shot = 0; shot < cfg.shots_per_node[j]; ++shot) {
      const double target = unit_interval(rng) * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
      if (it == cdf.end()) --it;
      const auto outcome = static_cast<std::size_t>(it - cdf.begin());

      SampleRecord rec;
      rec.initial_node = j;
      rec.ancilla = outcome < n ? 0 : 1;
      rec.measured_node = static_cast<NodeId>(outcome % n);
      if (rec.measured_node == j) {
        rec.disposition = Disposition::discarded_self;
      } else if (g.has_edge(j, rec.measured_node)) {
        rec.disposition = Disposition::discarded_existing_link;
      } else if ((rec.ancilla == 0 && !cfg.keep_even) || (rec.ancilla == 1 && !cfg.keep_odd)) {
        rec.disposition = Disposition::discarded_parity;
      } else {
        rec.disposition = Disposition::kept;
      }
      sink(rec);
    }
  }
}

std::vector<SampleRecord> draw_samples(const Graph& g, const EvolutionOperator& u,
                                       const SamplerConfig& cfg) {
  std::vector<SampleRecord> out;
  out.reserve(cfg.total_shots());
  draw_samples(g, u, cfg, [&](const SampleRecord& r) { out.push_back(r); });
  return out;
}

std::vector<SampleRecord> draw_samples(const Graph& g, double t, const SamplerConfig& cfg) {
  return draw_samples(g, evolution_operator(g, t), cfg);
}

DispositionCounts count_dispositions(std::span<const SampleRecord> samples) {
  DispositionCounts c;
  for (const auto& r : samples) {
    switch (r.disposition) {
      case Disposition::kept: ++c.kept; break;
      case Disposition::discarded_self: ++c.discarded_self; break;
      case Disposition::discarded_existing_link: ++c.discarded_existing_link; break;
      case Disposition::discarded_parity: ++c.discarded_parity; break;
    }
  }
  return c;
}

EmpiricalScores estimate_scores(std::span<const SampleRecord> samples, Parity parity,
                                std::size_t node_count) {
  const auto n = static_cast<Eigen::Index>(node_count);
  EmpiricalScores out;
  out.scores.spec.method = parity == Parity::even ? Method::qlp_even : Method::qlp_odd;
  out.scores.values = Matrix::Zero(n, n);
  const std::uint8_t wanted = parity == Parity::even ? 0 : 1;
  for (const auto& r : samples) {
    if (r.disposition != Disposition::kept || r.ancilla != wanted) continue;
    if (r.initial_node >= node_count || r.measured_node >= node_count) {
      throw std::out_of_range("sample node outside the score table");
    }
    out.scores.values(r.initial_node, r.measured_node) += 1.0;
    out.scores.values(r.measured_node, r.initial_node) += 1.0;
    ++out.kept;
  }
  return out;
}

}  // namespace qlp

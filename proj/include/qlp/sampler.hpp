#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qlp/evolution.hpp"

namespace qlp {

/// Shot budget and post-selection settings for simulated QLP measurements.
struct SamplerConfig {
  std::vector<std::uint64_t> shots_per_node;
  std::uint64_t seed = 0;
  bool keep_even = false;
  bool keep_odd = true;

  /// Same shot count s for every node.
  static SamplerConfig uniform(std::size_t node_count, std::uint64_t shots, std::uint64_t seed);
  /// s_j = max(1, round(s_av * k_j / k_av)).
  static SamplerConfig degree_proportional(const Graph& g, std::uint64_t mean_shots,
                                           std::uint64_t seed);

  /// Throws std::invalid_argument when a shot count is 0 or no parity is kept.
  void validate(std::size_t node_count) const;
  std::uint64_t total_shots() const;
};

enum class Disposition : std::uint8_t { kept, discarded_self, discarded_existing_link, discarded_parity };

std::string_view to_string(Disposition d);

struct SampleRecord {
  NodeId initial_node = 0;
  std::uint8_t ancilla = 0;  // 0 selects the even channel, 1 the odd one
  NodeId measured_node = 0;
  Disposition disposition = Disposition::kept;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

/// Joint measurement distribution for walks started at node j.
/// probability[q * N + i] = Re(U)_ij^2 for q = 0 and Im(U)_ij^2 for q = 1.
struct ShotDistribution {
  NodeId initial_node = 0;
  std::vector<double> probability;

  std::size_t node_count() const noexcept { return probability.size() / 2; }
  double operator()(int ancilla, NodeId i) const {
    return probability[static_cast<std::size_t>(ancilla) * node_count() + i];
  }
};

ShotDistribution shot_distribution(const EvolutionOperator& u, NodeId j);

/// Deterministic 64-bit seed for the stream of initial node j.
std::uint64_t node_stream_seed(std::uint64_t seed, NodeId j);

using SampleSink = std::function<void(const SampleRecord&)>;

/// Draws shots node by node (ascending j), each node from its own RNG
/// stream, and hands every record to sink in draw order.
void draw_samples(const Graph& g, const EvolutionOperator& u, const SamplerConfig& cfg,
                  const SampleSink& sink);
std::vector<SampleRecord> draw_samples(const Graph& g, const EvolutionOperator& u,
                                       const SamplerConfig& cfg);
std::vector<SampleRecord> draw_samples(const Graph& g, double t, const SamplerConfig& cfg);

struct DispositionCounts {
  std::uint64_t kept = 0;
  std::uint64_t discarded_self = 0;
  std::uint64_t discarded_existing_link = 0;
  std::uint64_t discarded_parity = 0;

  std::uint64_t total() const {
    return kept + discarded_self + discarded_existing_link + discarded_parity;
  }
};

DispositionCounts count_dispositions(std::span<const SampleRecord> samples);

/// Kept-shot counts per unordered pair for one parity.
struct EmpiricalScores {
  ScoreMatrix scores;
  std::uint64_t kept = 0;

  /// No kept shot of the requested parity; scores are all zero.
  bool empty() const noexcept { return kept == 0; }
};

/// p_ij counts kept shots j -> i and i -> j together.
EmpiricalScores estimate_scores(std::span<const SampleRecord> samples, Parity parity,
                                std::size_t node_count);

}  // namespace qlp

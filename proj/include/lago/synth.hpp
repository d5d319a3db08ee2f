#pragma once
// Seeded generator of streams with planted dynamic communities: nodes are
// partitioned into groups independently per time window, and pairs interact
// at rate rate_in inside a group and rate_out across groups.  Identical
// seeds generate identical streams.

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lago/stream.hpp"

namespace lago {

struct SynthConfig {
  std::uint64_t seed = 0;
  std::size_t nodes = 12;
  std::size_t windows = 2;
  double window_length = 4.0;
  std::size_t groups = 2;
  double rate_in = 0.6;   // per pair per unit time
  double rate_out = 0.05;
  TimeKind time_kind = TimeKind::discrete;
  Modality modality = Modality::timestamped;
  bool directed = false;

  void validate() const {
    if (nodes < 2) throw std::invalid_argument("synth needs at least 2 nodes");
    if (windows < 1 || groups < 1)
      throw std::invalid_argument("synth needs at least one window and group");
    if (!(window_length > 0)) throw std::invalid_argument("window_length must be positive");
    if (rate_in < rate_out)
      throw std::invalid_argument("planted model expects rate_in >= rate_out");
    if (time_kind == TimeKind::discrete && !is_integral_time(window_length))
      throw std::invalid_argument("discrete synth requires an integer window length");
  }
};

inline LinkStream synth_stream(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  NodeTable nodes;
  for (std::size_t i = 0; i < config.nodes; ++i) nodes.add("n" + std::to_string(i));

  double horizon = config.window_length * static_cast<double>(config.windows);
  std::vector<Interaction> interactions;
  std::vector<std::size_t> group(config.nodes);

  for (std::size_t w = 0; w < config.windows; ++w) {
    double w_start = config.window_length * static_cast<double>(w);
    // Planted blocks: shuffled round-robin group assignment per window.
    std::vector<NodeId> order(config.nodes);
    for (std::size_t i = 0; i < config.nodes; ++i) order[i] = static_cast<NodeId>(i);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < config.nodes; ++i)
      group[order[i]] = i % config.groups;

    for (NodeId u = 0; u < config.nodes; ++u) {
      for (NodeId v = u + 1; v < config.nodes; ++v) {
        double rate = group[u] == group[v] ? config.rate_in : config.rate_out;
        if (config.time_kind == TimeKind::discrete) {
          for (double t = w_start; t < w_start + config.window_length; t += 1.0) {
            if (unif(rng) >= rate) continue;
            if (config.modality == Modality::timestamped) {
              interactions.push_back({u, v, t, t, 1.0, config.directed});
            } else {
              double len = 1.0 + static_cast<double>(rng() % 2);
              double end = std::min(t + len, horizon);
              interactions.push_back({u, v, t, end, 1.0, config.directed});
            }
          }
        } else {
          std::poisson_distribution<int> count(rate * config.window_length);
          int k = count(rng);
          for (int i = 0; i < k; ++i) {
            double t = w_start + unif(rng) * config.window_length;
            if (config.modality == Modality::timestamped) {
              interactions.push_back({u, v, t, t, 1.0, config.directed});
            } else {
              double end = std::min(t + 0.2 + unif(rng), horizon);
              interactions.push_back({u, v, t, end, 1.0, config.directed});
            }
          }
        }
      }
    }
  }
  if (interactions.empty())
    throw std::invalid_argument("synth produced an empty stream; raise the rates");
  return LinkStream(TimeDomain(config.time_kind, 0.0, horizon), nodes,
                    config.modality, interactions);
}

}  // namespace lago

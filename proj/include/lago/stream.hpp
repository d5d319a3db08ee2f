#pragma once
// The generalized link stream data model: a time horizon, a node table with
// optional node types, and one of two interaction modalities.
//
// Timestamp-based interactions carry a departure time t_start and an arrival
// time t_second (equal for instantaneous events, t_start < t_second for
// delayed ones).  Interval-based interactions persist over [t_start,
// t_second).  A stream holds exclusively one modality.
//
// An undirected interaction is stored once and interpreted as two reciprocal
// directed interactions in every weight and degree computation, while
// counting once in the interaction count m.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lago/time.hpp"

namespace lago {

using NodeId = std::uint32_t;

class NodeTable {
 public:
  NodeId add(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, static_cast<NodeId>(names_.size()));
    if (inserted) {
      names_.push_back(name);
      types_.push_back(-1);
    }
    return it->second;
  }

  NodeId add(const std::string& name, std::int32_t type) {
    NodeId id = add(name);
    types_[id] = type;
    return id;
  }

  std::optional<NodeId> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId require(const std::string& name) const {
    auto id = find(name);
    if (!id) throw std::invalid_argument("unknown node id: " + name);
    return *id;
  }

  void set_type(NodeId node, std::int32_t type) { types_.at(node) = type; }

  std::size_t size() const { return names_.size(); }
  const std::string& name(NodeId id) const { return names_.at(id); }
  std::int32_t type_of(NodeId id) const { return types_.at(id); }

  bool multipartite() const {
    for (std::int32_t t : types_)
      if (t >= 0) return true;
    return false;
  }

  // b_uv of the null model: 1 unless u and v share a type in a multipartite
  // node set.
  bool pair_allowed(NodeId u, NodeId v) const {
    if (!multipartite()) return true;
    return types_[u] != types_[v];
  }

  void validate() const {
    if (!multipartite()) return;
    std::unordered_map<std::int32_t, int> seen;
    for (std::int32_t t : types_) {
      if (t < 0)
        throw std::invalid_argument("multipartite node table requires a type for every node");
      seen[t] = 1;
    }
    if (seen.size() < 2)
      throw std::invalid_argument("multipartite node table requires at least 2 types");
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::int32_t> types_;  // -1 when untyped
  std::unordered_map<std::string, NodeId> index_;
};

enum class Modality { timestamped, interval };

struct Interaction {
  NodeId src = 0;
  NodeId dst = 0;
  double t_start = 0.0;
  double t_second = 0.0;  // arrival time (timestamped) or end time (interval)
  double weight = 1.0;
  bool directed = true;

  bool instantaneous() const { return t_start == t_second; }
};

class LinkStream {
 public:
  LinkStream(TimeDomain domain, NodeTable nodes, Modality modality,
             std::vector<Interaction> interactions,
             std::optional<std::size_t> logical_m = std::nullopt)
      : domain_(domain),
        nodes_(std::move(nodes)),
        modality_(modality),
        interactions_(std::move(interactions)),
        logical_m_(logical_m) {
    domain_.validate();
    nodes_.validate();
    for (const auto& e : interactions_) validate_interaction(e);
  }

  const TimeDomain& domain() const { return domain_; }
  const NodeTable& nodes() const { return nodes_; }
  Modality modality() const { return modality_; }
  const std::vector<Interaction>& interactions() const { return interactions_; }

  // Pre-segmentation interaction count (undirected stored once).
  std::size_t interaction_count() const {
    return logical_m_ ? *logical_m_ : interactions_.size();
  }
  std::optional<std::size_t> logical_m() const { return logical_m_; }

 private:
  void validate_interaction(const Interaction& e) const {
    if (e.src >= nodes_.size() || e.dst >= nodes_.size())
      throw std::invalid_argument("interaction references unknown node");
    if (!(e.weight > 0.0))
      throw std::invalid_argument("interaction weight must be positive");
    if (e.t_second < e.t_start)
      throw std::invalid_argument("interaction t_second before t_start");
    if (nodes_.multipartite() && !nodes_.pair_allowed(e.src, e.dst))
      throw std::invalid_argument("same-type interaction in multipartite stream");
    const TimeDomain& d = domain_;
    if (d.discrete() &&
        (!is_integral_time(e.t_start) || !is_integral_time(e.t_second)))
      throw std::invalid_argument("discrete stream requires integer interaction times");
    if (e.t_start < d.t_min)
      throw std::invalid_argument("interaction starts before the horizon");
    if (modality_ == Modality::timestamped) {
      // In discrete time an instant t occupies [t, t+1), which must fit.
      double last_ok = d.discrete() ? d.t_max - 1 : d.t_max;
      if (e.t_second > last_ok)
        throw std::invalid_argument("interaction extends beyond the horizon");
    } else {
      if (e.t_second > d.t_max)
        throw std::invalid_argument("interaction extends beyond the horizon");
    }
  }

  TimeDomain domain_;
  NodeTable nodes_;
  Modality modality_;
  std::vector<Interaction> interactions_;
  std::optional<std::size_t> logical_m_;
};

// W_{uv,T'T''}: total weight of interactions from u to v with departure in
// T1 and arrival in T2 (timestamped), or the integral of the instantaneous
// intensity uv_t over T1 ∩ T2 (interval mode).  Undirected interactions also
// match in reversed orientation.
inline double weight_between(const LinkStream& stream, NodeId u, NodeId v,
                             const TimeSet& t1, const TimeSet& t2) {
  if (u >= stream.nodes().size() || v >= stream.nodes().size())
    throw std::invalid_argument("weight_between: unknown node id");
  double total = 0.0;
  if (stream.modality() == Modality::timestamped) {
    for (const auto& e : stream.interactions()) {
      if (!t1.contains(e.t_start) || !t2.contains(e.t_second)) continue;
      // An undirected record matches in both orientations; an undirected
      // self-loop therefore matches twice.
      if (e.src == u && e.dst == v) total += e.weight;
      if (!e.directed && e.src == v && e.dst == u) total += e.weight;
    }
  } else {
    TimeSet window = t1.intersection(t2);
    for (const auto& e : stream.interactions()) {
      double overlap =
          window.intersection_measure(TimeSet::single(e.t_start, e.t_second));
      if (overlap == 0.0) continue;
      if (e.src == u && e.dst == v) total += e.weight * overlap;
      if (!e.directed && e.src == v && e.dst == u) total += e.weight * overlap;
    }
  }
  return total;
}

// L_{uv,T'T''}: number of matching interactions.  Undefined for interval
// streams.
inline std::size_t count_between(const LinkStream& stream, NodeId u, NodeId v,
                                 const TimeSet& t1, const TimeSet& t2) {
  if (stream.modality() != Modality::timestamped)
    throw std::logic_error("count_between is undefined on interval streams");
  if (u >= stream.nodes().size() || v >= stream.nodes().size())
    throw std::invalid_argument("count_between: unknown node id");
  std::size_t n = 0;
  for (const auto& e : stream.interactions()) {
    if (!t1.contains(e.t_start) || !t2.contains(e.t_second)) continue;
    if (e.src == u && e.dst == v) ++n;
    if (!e.directed && e.src == v && e.dst == u) ++n;
  }
  return n;
}

struct Degrees {
  std::vector<double> in;
  std::vector<double> out;
};

// k_u^in = sum_v W_vu and k_u^out = sum_v W_uv over the full horizon; for
// undirected interactions both orientations contribute.
inline Degrees degrees(const LinkStream& stream) {
  Degrees d;
  d.in.assign(stream.nodes().size(), 0.0);
  d.out.assign(stream.nodes().size(), 0.0);
  for (const auto& e : stream.interactions()) {
    double contribution = e.weight;
    if (stream.modality() == Modality::interval)
      contribution *= e.t_second - e.t_start;
    d.out[e.src] += contribution;
    d.in[e.dst] += contribution;
    if (!e.directed) {
      d.out[e.dst] += contribution;
      d.in[e.src] += contribution;
    }
  }
  return d;
}

struct Totals {
  double w = 0.0;    // total weight, sum of in-degrees
  std::size_t m = 0; // interaction count (undirected counted once)
};

inline Totals totals(const LinkStream& stream) {
  Degrees d = degrees(stream);
  Totals t;
  for (double k : d.in) t.w += k;
  t.m = stream.interaction_count();
  return t;
}

// Smallest valid horizon covering the given interactions.  In discrete time
// an instant t occupies [t, t+1); in continuous time an all-instantaneous
// single-time stream would give an empty horizon, which the domain rejects.
inline TimeDomain infer_domain(TimeKind kind, Modality modality,
                               const std::vector<Interaction>& interactions) {
  if (interactions.empty())
    throw std::invalid_argument("cannot infer a horizon from an empty stream");
  double lo = interactions.front().t_start;
  double hi = interactions.front().t_second;
  for (const auto& e : interactions) {
    lo = std::min(lo, e.t_start);
    hi = std::max(hi, e.t_second);
  }
  if (kind == TimeKind::discrete && modality == Modality::timestamped) hi += 1;
  return TimeDomain(kind, lo, hi);
}

}  // namespace lago

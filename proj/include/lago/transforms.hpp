#pragma once
// Stream-to-stream preprocessing: modality conversions, per-instant
// preference normalization, degree-based node filtering, and bipartite
// construction from tagged event records.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lago/stream.hpp"

namespace lago {

// Replace every undirected record by its two reciprocal directed records.
// Storage doubles, but the logical interaction count (and hence the total
// weight) reported by totals() is preserved.
inline LinkStream expand_undirected(const LinkStream& stream) {
  std::vector<Interaction> out;
  for (const auto& e : stream.interactions()) {
    Interaction fwd = e;
    fwd.directed = true;
    out.push_back(fwd);
    if (!e.directed) {
      Interaction rev = fwd;
      std::swap(rev.src, rev.dst);
      out.push_back(rev);
    }
  }
  return LinkStream(stream.domain(), stream.nodes(), stream.modality(), out,
                    stream.interaction_count());
}

// Turn delayed records (u, v, t_s, t_d) into interval records over
// [t_s, t_d).  With inverse-duration weighting each record keeps its total
// contribution (weight / duration integrated over the duration), so node
// degrees are unchanged.  Instantaneous records become degenerate intervals,
// which the inverse weighting cannot represent.
inline LinkStream delayed_to_continuous(const LinkStream& stream,
                                        bool inverse_duration_weights) {
  if (stream.modality() != Modality::timestamped)
    throw std::invalid_argument("delayed_to_continuous requires a timestamped stream");
  if (inverse_duration_weights) {
    std::ostringstream bad;
    std::size_t bad_count = 0;
    for (std::size_t i = 0; i < stream.interactions().size(); ++i) {
      if (stream.interactions()[i].instantaneous()) {
        if (bad_count < 8) bad << (bad_count ? ", " : "") << "#" << i;
        ++bad_count;
      }
    }
    if (bad_count > 0)
      throw std::invalid_argument(
          "inverse-duration weighting rejects zero-duration records: " + bad.str() +
          (bad_count > 8 ? ", ..." : ""));
  }
  std::vector<Interaction> out;
  for (const auto& e : stream.interactions()) {
    Interaction iv = e;
    if (inverse_duration_weights) iv.weight = e.weight / (e.t_second - e.t_start);
    out.push_back(iv);
  }
  return LinkStream(stream.domain(), stream.nodes(), Modality::interval, out,
                    stream.logical_m());
}

enum class DelayAnchor { start, end };

// Collapse each (t_s, t_d) pair onto one anchor instant.
inline LinkStream delayed_to_instantaneous(const LinkStream& stream,
                                           DelayAnchor anchor) {
  if (stream.modality() != Modality::timestamped)
    throw std::invalid_argument("delayed_to_instantaneous requires a timestamped stream");
  std::vector<Interaction> out;
  for (const auto& e : stream.interactions()) {
    Interaction inst = e;
    double t = anchor == DelayAnchor::start ? e.t_start : e.t_second;
    inst.t_start = inst.t_second = t;
    out.push_back(inst);
  }
  return LinkStream(stream.domain(), stream.nodes(), Modality::timestamped, out,
                    stream.logical_m());
}

// Per-instant preference normalization of a directed weighted voting stream:
// at each instant, a receiver's mean received weight (averaged over every
// node that cast any vote at that instant) is subtracted from each incoming
// edge; only strictly positive residuals survive.
inline LinkStream preference_normalize(const LinkStream& stream) {
  if (stream.modality() != Modality::timestamped)
    throw std::invalid_argument("preference_normalize requires a timestamped stream");
  std::map<double, std::vector<std::size_t>> by_instant;
  for (std::size_t i = 0; i < stream.interactions().size(); ++i)
    by_instant[stream.interactions()[i].t_start].push_back(i);

  std::vector<Interaction> out;
  for (const auto& [t, idxs] : by_instant) {
    std::set<NodeId> voters;
    std::map<NodeId, double> received;
    for (std::size_t i : idxs) {
      const Interaction& e = stream.interactions()[i];
      voters.insert(e.src);
      received[e.dst] += e.weight;
    }
    double n_voters = static_cast<double>(voters.size());
    for (std::size_t i : idxs) {
      const Interaction& e = stream.interactions()[i];
      double residual = e.weight - received[e.dst] / n_voters;
      if (residual > 0.0) {
        Interaction kept = e;
        kept.weight = residual;
        out.push_back(kept);
      }
    }
  }
  return LinkStream(stream.domain(), stream.nodes(), Modality::timestamped, out);
}

// Iteratively remove the node of minimal total degree (k_in + k_out, ties to
// the lowest node id) until fewer than max_nodes nodes remain.  Interactions
// touching a removed node are dropped; the result is a sub-stream.
inline LinkStream low_degree_filter(const LinkStream& stream,
                                    std::size_t max_nodes) {
  if (max_nodes < 1) throw std::invalid_argument("max_nodes must be at least 1");
  std::vector<bool> removed(stream.nodes().size(), false);
  std::vector<Interaction> current = stream.interactions();
  std::size_t remaining = stream.nodes().size();

  while (remaining >= max_nodes) {
    std::vector<double> total(stream.nodes().size(), 0.0);
    for (const auto& e : current) {
      double contribution = e.weight;
      if (stream.modality() == Modality::interval)
        contribution *= e.t_second - e.t_start;
      total[e.src] += contribution;
      total[e.dst] += contribution;
      if (!e.directed) {
        total[e.src] += contribution;
        total[e.dst] += contribution;
      }
    }
    NodeId victim = 0;
    bool found = false;
    for (NodeId u = 0; u < stream.nodes().size(); ++u) {
      if (removed[u]) continue;
      if (!found || total[u] < total[victim]) {
        victim = u;
        found = true;
      }
    }
    removed[victim] = true;
    --remaining;
    std::erase_if(current, [&](const Interaction& e) {
      return e.src == victim || e.dst == victim;
    });
  }

  NodeTable nodes;
  std::vector<NodeId> remap(stream.nodes().size());
  for (NodeId u = 0; u < stream.nodes().size(); ++u) {
    if (removed[u]) continue;
    std::int32_t type = stream.nodes().type_of(u);
    remap[u] = type >= 0 ? nodes.add(stream.nodes().name(u), type)
                         : nodes.add(stream.nodes().name(u));
  }
  std::vector<Interaction> out;
  for (Interaction e : current) {
    e.src = remap[e.src];
    e.dst = remap[e.dst];
    out.push_back(e);
  }
  return LinkStream(stream.domain(), nodes, stream.modality(), out);
}

struct PostRecord {
  std::string user;
  std::vector<std::string> tags;
  double time = 0.0;
};

// Build a bipartite user/hashtag stream from post records: every surviving
// post yields one undirected instantaneous interaction per tag at the post
// time.  Posts with more than max_tags_per_post tags are dropped.  User and
// hashtag namespaces must not collide.
inline LinkStream bipartite_from_events(const std::vector<PostRecord>& records,
                                        std::size_t max_tags_per_post,
                                        TimeKind kind = TimeKind::discrete) {
  if (max_tags_per_post < 1)
    throw std::invalid_argument("max_tags_per_post must be at least 1");
  NodeTable nodes;
  std::set<std::string> users, tags;
  for (const auto& r : records) {
    if (r.tags.size() > max_tags_per_post) continue;
    users.insert(r.user);
    for (const auto& t : r.tags) tags.insert(t);
  }
  for (const auto& t : tags)
    if (users.count(t))
      throw std::invalid_argument("user id collides with hashtag id: " + t);
  std::vector<Interaction> inter;
  for (const auto& r : records) {
    if (r.tags.size() > max_tags_per_post) continue;
    NodeId u = nodes.add(r.user, 0);
    for (const auto& t : r.tags)
      inter.push_back({u, nodes.add(t, 1), r.time, r.time, 1.0, false});
  }
  if (inter.empty())
    throw std::invalid_argument("no interactions survive the tag limit");
  return LinkStream(infer_domain(kind, Modality::timestamped, inter), nodes,
                    Modality::timestamped, inter);
}

}  // namespace lago

#pragma once
// Shared hand-checked fixtures.

#include <string>
#include <vector>

#include "lago/community.hpp"
#include "lago/stream.hpp"

namespace lago::testing {

struct EdgeSpec {
  std::string src;
  std::string dst;
  double t_start;
  double t_second;
  double weight = 1.0;
  bool directed = false;
};

inline LinkStream make_stream(TimeDomain domain, Modality modality,
                              const std::vector<EdgeSpec>& edges,
                              const std::vector<std::pair<std::string, std::int32_t>>& types = {}) {
  NodeTable nodes;
  for (const auto& [name, type] : types) nodes.add(name, type);
  std::vector<Interaction> interactions;
  for (const auto& e : edges) {
    NodeId s = nodes.add(e.src);
    NodeId d = nodes.add(e.dst);
    interactions.push_back({s, d, e.t_start, e.t_second, e.weight, e.directed});
  }
  return LinkStream(domain, nodes, modality, interactions);
}

// Discrete horizon [0,4), undirected unweighted instantaneous edges
// (a,b,0), (a,b,1), (b,c,3).  Known values: k_a=2, k_b=3, k_c=1, w=6, m=3.
inline LinkStream three_edge_stream() {
  return make_stream({TimeKind::discrete, 0, 4}, Modality::timestamped,
                     {{"a", "b", 0, 0}, {"a", "b", 1, 1}, {"b", "c", 3, 3}});
}

// The hand-evaluated optimum of the three-edge stream: C0 = {a,b on [0,2)},
// C1 = {b,c on [2,4)}.  Q_MM = Q_JM = 19/72 at gamma = omega = 1.
inline DynamicCommunityStructure three_edge_structure(const LinkStream& stream) {
  NodeId a = stream.nodes().require("a");
  NodeId b = stream.nodes().require("b");
  NodeId c = stream.nodes().require("c");
  std::vector<MembershipSegment> segments = {
      {a, 0, 2, 0}, {b, 0, 2, 0}, {b, 2, 4, 1}, {c, 2, 4, 1}};
  return DynamicCommunityStructure(stream.domain(), stream.nodes().size(), segments);
}

// Discrete horizon [0,2), one undirected instantaneous edge at t = 0.
// Merging both endpoints at the instant scores Q = 1/2.
inline LinkStream single_edge_stream() {
  return make_stream({TimeKind::discrete, 0, 2}, Modality::timestamped,
                     {{"u", "v", 0, 0}});
}

}  // namespace lago::testing

#pragma once
// Membership induction: from an assignment of active elements to time-module
// labels to the dynamic community structure it denotes.
//
// Per node, maximal groups of consecutive equally-labelled elements form
// runs.  A run covers its elements' span; in discrete time an instant t
// occupies [t, t+1), in continuous timestamp mode the closing instant is a
// zero-measure marker.  The time between two consecutive runs of a node
// belongs to the later run, so a node joins its next module the moment it
// leaves the previous one.  Finally every module fills its temporal hull:
// each member's first run starts at the module's earliest membership time
// and its last run ends at the latest one (neighboring runs of the same node
// already tile the in-between, so only the outermost runs can grow).
//
// The same induction backs the greedy optimizer, the exhaustive oracle and
// reported structures, so their search spaces coincide.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lago/community.hpp"
#include "lago/elements.hpp"

namespace lago {

struct ElementRun {
  CommunityId label = 0;
  double attach_start = 0.0;
  double attach_end = 0.0;    // metric end; hull and gap attachment use this
  bool closing_marker = false;
  double expanded_start = 0.0;
  double expanded_end = 0.0;
};

// Runs of one node under an assignment, with inter-run gaps already attached
// to the later run.  Expansion fields start equal to the attach extent.
inline std::vector<ElementRun> node_runs(const ElementContext& ctx,
                                         const std::vector<CommunityId>& labels,
                                         NodeId u) {
  const auto& list = ctx.node_elements(u);
  std::vector<ElementRun> runs;
  for (std::size_t i = 0; i < list.size();) {
    std::size_t j = i;
    while (j + 1 < list.size() && labels[list[j + 1]] == labels[list[i]]) ++j;
    const ActiveElement& first = ctx.element(list[i]);
    const ActiveElement& last = ctx.element(list[j]);
    ElementRun r;
    r.label = labels[list[i]];
    r.attach_start = first.t_start;
    if (ctx.modality() == Modality::timestamped) {
      if (ctx.time_kind() == TimeKind::discrete) {
        r.attach_end = last.t_start + 1;
      } else {
        r.attach_end = last.t_start;
        r.closing_marker = true;
      }
    } else {
      r.attach_end = last.t_end;
    }
    runs.push_back(r);
    i = j + 1;
  }
  for (std::size_t r = 1; r < runs.size(); ++r)
    runs[r].attach_start = runs[r - 1].attach_end;
  for (auto& r : runs) {
    r.expanded_start = r.attach_start;
    r.expanded_end = r.attach_end;
  }
  return runs;
}

struct ModuleHull {
  double start = 0.0;
  double end = 0.0;
  bool valid = false;

  void include(const ElementRun& r) {
    if (!valid) {
      start = r.attach_start;
      end = r.attach_end;
      valid = true;
    } else {
      start = std::min(start, r.attach_start);
      end = std::max(end, r.attach_end);
    }
  }
};

inline void expand_runs(std::vector<ElementRun>& runs,
                        const std::unordered_map<CommunityId, ModuleHull>& hulls) {
  if (runs.empty()) return;
  runs.front().expanded_start = hulls.at(runs.front().label).start;
  runs.back().expanded_end = hulls.at(runs.back().label).end;
}

inline void emit_run(const ElementRun& r, NodeId u,
                     std::vector<MembershipSegment>& out) {
  if (r.expanded_start < r.expanded_end)
    out.push_back({u, r.expanded_start, r.expanded_end, r.label});
  if (r.closing_marker && r.expanded_end <= r.attach_end)
    out.push_back({u, r.attach_end, r.attach_end, r.label});
}

inline std::vector<MembershipSegment> induce_segments(
    const ElementContext& ctx, const std::vector<CommunityId>& labels,
    std::size_t node_count) {
  std::vector<std::vector<ElementRun>> per_node(node_count);
  std::unordered_map<CommunityId, ModuleHull> hulls;
  for (NodeId u = 0; u < node_count; ++u) {
    per_node[u] = node_runs(ctx, labels, u);
    for (const auto& r : per_node[u]) hulls[r.label].include(r);
  }
  std::vector<MembershipSegment> out;
  for (NodeId u = 0; u < node_count; ++u) {
    expand_runs(per_node[u], hulls);
    for (const auto& r : per_node[u]) emit_run(r, u, out);
  }
  return out;
}

inline DynamicCommunityStructure induce_structure(
    const ElementContext& ctx, const TimeDomain& domain, std::size_t node_count,
    const std::vector<CommunityId>& labels) {
  return DynamicCommunityStructure(domain, node_count,
                                   induce_segments(ctx, labels, node_count));
}

}  // namespace lago

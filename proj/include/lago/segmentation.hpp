#pragma once
// Segmentation of interval streams.
//
// Every interaction interval is split at the global set of start and end
// times so that no interaction boundary falls inside any resulting piece.
// Pieces keep the intensity of their parent interaction, so all weights,
// degrees and period aggregates are unchanged; only the stored record count
// grows.  The segmented stream keeps reporting the pre-segmentation
// interaction count.  Boundary comparison is exact (discrete times are
// integers, continuous inputs are expected pre-quantized).

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lago/stream.hpp"

namespace lago {

struct SegmentedStream {
  LinkStream stream;              // interval stream of segmented pieces
  std::vector<double> boundaries; // sorted set of all start/end times
};

inline SegmentedStream segment(const LinkStream& input) {
  if (input.modality() != Modality::interval)
    throw std::invalid_argument("segment requires an interval stream");
  std::set<double> cuts;
  for (const auto& e : input.interactions()) {
    cuts.insert(e.t_start);
    cuts.insert(e.t_second);
  }
  std::vector<double> boundaries(cuts.begin(), cuts.end());

  std::vector<Interaction> pieces;
  for (const auto& e : input.interactions()) {
    if (e.t_start == e.t_second) continue;  // zero-measure record, no pieces
    auto lo = std::upper_bound(boundaries.begin(), boundaries.end(), e.t_start);
    double prev = e.t_start;
    for (auto it = lo; it != boundaries.end() && *it < e.t_second; ++it) {
      pieces.push_back({e.src, e.dst, prev, *it, e.weight, e.directed});
      prev = *it;
    }
    pieces.push_back({e.src, e.dst, prev, e.t_second, e.weight, e.directed});
  }
  LinkStream out(input.domain(), input.nodes(), Modality::interval,
                 std::move(pieces), input.interaction_count());
  return {std::move(out), std::move(boundaries)};
}

// Active time-segment nodes: all (node, piece segment) pairs touched by a
// segmented interaction, incoming or outgoing.  Sorted by node then time.
inline std::vector<std::pair<NodeId, TimeSegment>> active_segment_nodes(
    const SegmentedStream& seg) {
  std::set<std::pair<NodeId, std::pair<double, double>>> found;
  for (const auto& e : seg.stream.interactions()) {
    found.insert({e.src, {e.t_start, e.t_second}});
    found.insert({e.dst, {e.t_start, e.t_second}});
  }
  std::vector<std::pair<NodeId, TimeSegment>> out;
  out.reserve(found.size());
  for (const auto& [node, s] : found)
    out.push_back({node, {s.first, s.second}});
  return out;
}

}  // namespace lago

#pragma once
// Atomic optimizer elements and their neighborhoods.
//
// Timestamp mode: an active time node (u, t) exists when some interaction
// departs from u at t or arrives at u at t; undirected records activate both
// orientations.  Interval mode: active time-segment nodes come from the
// segmented stream, one per (node, piece segment).
//
// Topological neighbors are the other endpoints of shared interactions,
// ignoring direction; for delayed interactions the linked elements sit at
// different timestamps.  Temporal neighbors are the previous and next
// element of the same node.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "lago/segmentation.hpp"
#include "lago/stream.hpp"

namespace lago {

struct ActiveElement {
  NodeId node = 0;
  double t_start = 0.0;
  double t_end = 0.0;  // == t_start for time instants, segment end otherwise

  bool instant() const { return t_start == t_end; }
};

inline std::vector<ActiveElement> build_elements(const LinkStream& stream) {
  if (stream.modality() != Modality::timestamped)
    throw std::invalid_argument("interval streams must be segmented before building elements");
  std::map<std::pair<NodeId, double>, bool> seen;
  for (const auto& e : stream.interactions()) {
    seen[{e.src, e.t_start}] = true;
    seen[{e.dst, e.t_second}] = true;
    if (!e.directed) {
      seen[{e.dst, e.t_start}] = true;
      seen[{e.src, e.t_second}] = true;
    }
  }
  std::vector<ActiveElement> out;
  out.reserve(seen.size());
  for (const auto& [key, _] : seen) out.push_back({key.first, key.second, key.second});
  return out;
}

inline std::vector<ActiveElement> build_elements(const SegmentedStream& seg) {
  std::vector<ActiveElement> out;
  for (const auto& [node, s] : active_segment_nodes(seg))
    out.push_back({node, s.start, s.end});
  return out;
}

// Elements of one stream plus the topological/temporal neighbor index.
// Elements are sorted by (node, time); per-node lists give temporal order.
class ElementContext {
 public:
  ElementContext(const LinkStream& stream, std::vector<ActiveElement> elements)
      : modality_(stream.modality()),
        kind_(stream.domain().kind),
        elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end(),
              [](const ActiveElement& a, const ActiveElement& b) {
                return std::tie(a.node, a.t_start, a.t_end) <
                       std::tie(b.node, b.t_start, b.t_end);
              });
    by_node_.assign(stream.nodes().size(), {});
    for (std::uint32_t i = 0; i < elements_.size(); ++i) {
      index_[{elements_[i].node, elements_[i].t_start}] = i;
      by_node_[elements_[i].node].push_back(i);
    }
    topological_.assign(elements_.size(), {});
    for (const auto& e : stream.interactions()) link(e);
    for (auto& nbrs : topological_) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    position_.assign(elements_.size(), 0);
    for (const auto& list : by_node_)
      for (std::uint32_t p = 0; p < list.size(); ++p) position_[list[p]] = p;
  }

  Modality modality() const { return modality_; }
  TimeKind time_kind() const { return kind_; }
  std::size_t size() const { return elements_.size(); }
  const ActiveElement& element(std::uint32_t i) const { return elements_[i]; }
  const std::vector<ActiveElement>& elements() const { return elements_; }
  const std::vector<std::uint32_t>& node_elements(NodeId u) const {
    return by_node_[u];
  }
  const std::vector<std::uint32_t>& topological(std::uint32_t i) const {
    return topological_[i];
  }

  // Temporal neighbors: previous/next element of the same node, or -1.
  std::int64_t temporal_prev(std::uint32_t i) const {
    std::uint32_t p = position_[i];
    return p == 0 ? -1 : static_cast<std::int64_t>(by_node_[elements_[i].node][p - 1]);
  }
  std::int64_t temporal_next(std::uint32_t i) const {
    const auto& list = by_node_[elements_[i].node];
    std::uint32_t p = position_[i];
    return p + 1 >= list.size() ? -1 : static_cast<std::int64_t>(list[p + 1]);
  }

  std::uint32_t at(NodeId node, double t_start) const {
    auto it = index_.find({node, t_start});
    if (it == index_.end()) throw std::invalid_argument("no such active element");
    return it->second;
  }

 private:
  void link(const Interaction& e) {
    if (modality_ == Modality::timestamped) {
      connect(e.src, e.t_start, e.dst, e.t_second);
      if (!e.directed) connect(e.dst, e.t_start, e.src, e.t_second);
    } else {
      connect(e.src, e.t_start, e.dst, e.t_start);
    }
  }
  void connect(NodeId u, double tu, NodeId v, double tv) {
    std::uint32_t a = index_.at({u, tu});
    std::uint32_t b = index_.at({v, tv});
    if (a == b) return;
    topological_[a].push_back(b);
    topological_[b].push_back(a);
  }

  Modality modality_;
  TimeKind kind_;
  std::vector<ActiveElement> elements_;
  std::map<std::pair<NodeId, double>, std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> by_node_;
  std::vector<std::vector<std::uint32_t>> topological_;
  std::vector<std::uint32_t> position_;
};

inline ElementContext make_context(const LinkStream& stream) {
  return ElementContext(stream, build_elements(stream));
}

inline ElementContext make_context(const SegmentedStream& seg) {
  return ElementContext(seg.stream, build_elements(seg));
}

}  // namespace lago

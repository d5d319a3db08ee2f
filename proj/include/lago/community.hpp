#pragma once
// Dynamic community structures: mutually exclusive sets of node/time-segment
// memberships over a stream horizon.
//
// Membership segments are half-open.  Degenerate [t, t) records are instant
// markers, allowed in continuous time only: they contribute the point t for
// interaction matching but have measure zero.  A marker may sit on the
// boundary of a segment of another community of the same node; point queries
// give the marker precedence.  Positive-measure segments of one node must
// never overlap across communities.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "lago/stream.hpp"
#include "lago/time.hpp"

namespace lago {

using CommunityId = std::uint32_t;
inline constexpr CommunityId kUnassigned = static_cast<CommunityId>(-1);

struct MembershipSegment {
  NodeId node = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  CommunityId community = 0;
};

class DynamicCommunityStructure {
 public:
  struct Member {
    NodeId node;
    TimeSet times;
  };
  struct Community {
    std::vector<Member> members;  // sorted by node id, one entry per node
  };

  DynamicCommunityStructure(const TimeDomain& domain, std::size_t node_count,
                            const std::vector<MembershipSegment>& segments)
      : domain_(domain), node_count_(node_count) {
    build(segments);
  }

  static DynamicCommunityStructure empty(const TimeDomain& domain,
                                         std::size_t node_count) {
    return DynamicCommunityStructure(domain, node_count, {});
  }

  const TimeDomain& domain() const { return domain_; }
  std::size_t node_count() const { return node_count_; }
  std::size_t community_count() const { return communities_.size(); }
  const std::vector<Community>& communities() const { return communities_; }

  // T_{u in C}
  TimeSet membership_time(NodeId u, CommunityId c) const {
    check_node(u);
    check_community(c);
    for (const auto& m : communities_[c].members)
      if (m.node == u) return m.times;
    return {};
  }

  // T_C, the existence time of community c.
  TimeSet community_lifetime(CommunityId c) const {
    check_community(c);
    TimeSet out;
    for (const auto& m : communities_[c].members) out.add(m.times);
    out.normalize();
    return out;
  }

  // Community owning node u at time t, or kUnassigned.  Markers take
  // precedence over segments at their exact point.
  CommunityId community_of(NodeId u, double t) const {
    check_node(u);
    const auto& timeline = timelines_[u];
    auto mit = std::lower_bound(
        timeline.markers.begin(), timeline.markers.end(), t,
        [](const auto& a, double v) { return a.first < v; });
    if (mit != timeline.markers.end() && mit->first == t) return mit->second;
    auto sit = std::upper_bound(
        timeline.segments.begin(), timeline.segments.end(), t,
        [](double v, const auto& s) { return v < std::get<0>(s); });
    if (sit == timeline.segments.begin()) return kUnassigned;
    --sit;
    if (t < std::get<1>(*sit)) return std::get<2>(*sit);
    return kUnassigned;
  }

  // Community switch count eta_u: communities are visited in chronological
  // order of membership; consecutive records in the same community collapse
  // into one run, and unassigned gaps do not break a run.
  std::size_t switch_count(NodeId u) const {
    check_node(u);
    const auto& seq = visit_sequence_[u];
    if (seq.empty()) return 0;
    std::size_t runs = 1;
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i] != seq[i - 1]) ++runs;
    return runs - 1;
  }

  std::size_t total_switches() const {
    std::size_t total = 0;
    for (NodeId u = 0; u < node_count_; ++u) total += switch_count(u);
    return total;
  }

  // Flat canonical record list (sorted; dense community ids).
  std::vector<MembershipSegment> to_segments() const {
    std::vector<MembershipSegment> out;
    for (CommunityId c = 0; c < communities_.size(); ++c) {
      for (const auto& m : communities_[c].members) {
        for (const auto& s : m.times.segments())
          out.push_back({m.node, s.start, s.end, c});
        for (double p : m.times.markers()) out.push_back({m.node, p, p, c});
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return std::tie(a.community, a.node, a.t_start, a.t_end) <
             std::tie(b.community, b.node, b.t_start, b.t_end);
    });
    return out;
  }

  // Visit every maximal sub-range of [a, b) on which u and v are members of
  // the same community; f(community, lo, hi) is called per piece.  Used to
  // integrate interval-interaction intensities against a structure.
  template <typename F>
  void for_co_memberships(NodeId u, NodeId v, double a, double b, F&& f) const {
    check_node(u);
    check_node(v);
    const auto& su = timelines_[u].segments;
    const auto& sv = timelines_[v].segments;
    for (const auto& [us, ue, uc] : su) {
      double lo_u = std::max(us, a), hi_u = std::min(ue, b);
      if (lo_u >= hi_u) continue;
      for (const auto& [vs, ve, vc] : sv) {
        if (vc != uc) continue;
        double lo = std::max(lo_u, vs), hi = std::min(hi_u, ve);
        if (lo < hi) f(uc, lo, hi);
      }
    }
  }

  // Equality of the community set up to renaming of community ids.
  friend bool equal_up_to_renaming(const DynamicCommunityStructure& a,
                                   const DynamicCommunityStructure& b) {
    auto canon = [](const DynamicCommunityStructure& s) {
      std::vector<std::vector<std::tuple<NodeId, double, double>>> comms;
      for (const auto& c : s.communities_) {
        std::vector<std::tuple<NodeId, double, double>> recs;
        for (const auto& m : c.members) {
          for (const auto& seg : m.times.segments())
            recs.emplace_back(m.node, seg.start, seg.end);
          for (double p : m.times.markers()) recs.emplace_back(m.node, p, p);
        }
        std::sort(recs.begin(), recs.end());
        comms.push_back(std::move(recs));
      }
      std::sort(comms.begin(), comms.end());
      return comms;
    };
    return canon(a) == canon(b);
  }

 private:
  struct Timeline {
    std::vector<std::tuple<double, double, CommunityId>> segments;  // sorted
    std::vector<std::pair<double, CommunityId>> markers;            // sorted
  };

  void check_node(NodeId u) const {
    if (u >= node_count_) throw std::invalid_argument("unknown node id");
  }
  void check_community(CommunityId c) const {
    if (c >= communities_.size())
      throw std::invalid_argument("unknown or empty community id");
  }

  void build(const std::vector<MembershipSegment>& segments) {
    // Dense community ids in numeric order of the input ids.
    std::map<CommunityId, CommunityId> remap;
    for (const auto& s : segments) remap.emplace(s.community, 0);
    CommunityId next = 0;
    for (auto& [orig, dense] : remap) dense = next++;

    std::map<std::pair<CommunityId, NodeId>, TimeSet> sets;
    for (const auto& s : segments) {
      if (s.node >= node_count_)
        throw std::invalid_argument("membership references unknown node");
      if (s.t_end < s.t_start)
        throw std::invalid_argument("membership segment end before start");
      if (s.t_start < domain_.t_min || s.t_end > domain_.t_max)
        throw std::invalid_argument("membership segment outside the horizon");
      if (domain_.discrete()) {
        if (!is_integral_time(s.t_start) || !is_integral_time(s.t_end))
          throw std::invalid_argument("discrete structure requires integer segment bounds");
        if (s.t_start == s.t_end)
          throw std::invalid_argument("instant markers are only allowed in continuous time");
      }
      sets[{remap.at(s.community), s.node}].add(s.t_start, s.t_end);
    }

    communities_.assign(next, {});
    for (auto& [key, ts] : sets) {
      ts.normalize();
      communities_[key.first].members.push_back({key.second, std::move(ts)});
    }

    timelines_.assign(node_count_, {});
    for (CommunityId c = 0; c < communities_.size(); ++c) {
      for (const auto& m : communities_[c].members) {
        for (const auto& s : m.times.segments())
          timelines_[m.node].segments.emplace_back(s.start, s.end, c);
        for (double p : m.times.markers())
          timelines_[m.node].markers.emplace_back(p, c);
      }
    }
    visit_sequence_.assign(node_count_, {});
    for (NodeId u = 0; u < node_count_; ++u) {
      auto& tl = timelines_[u];
      std::sort(tl.segments.begin(), tl.segments.end());
      std::sort(tl.markers.begin(), tl.markers.end());
      for (std::size_t i = 1; i < tl.segments.size(); ++i)
        if (std::get<0>(tl.segments[i]) < std::get<1>(tl.segments[i - 1]))
          throw std::invalid_argument("overlapping membership segments for one node");
      for (std::size_t i = 1; i < tl.markers.size(); ++i)
        if (tl.markers[i].first == tl.markers[i - 1].first)
          throw std::invalid_argument("conflicting instant markers for one node");
      // Chronological visit sequence; markers sort before segments starting
      // at the same time (a marker closes the run that ends there).
      std::vector<std::tuple<double, int, CommunityId>> events;
      for (const auto& [t, e, c] : tl.segments) events.emplace_back(t, 1, c);
      for (const auto& [t, c] : tl.markers) events.emplace_back(t, 0, c);
      std::sort(events.begin(), events.end());
      for (const auto& [t, kind, c] : events) visit_sequence_[u].push_back(c);
    }
  }

  TimeDomain domain_;
  std::size_t node_count_;
  std::vector<Community> communities_;
  std::vector<Timeline> timelines_;
  std::vector<std::vector<CommunityId>> visit_sequence_;
};

}  // namespace lago

#pragma once
// Time domains and measurable time sets.
//
// All segments are half-open [a, b).  A discrete domain carries integer
// bounds; the measure of an integer-bounded segment is the number of
// integers it contains, which coincides with b - a.  Continuous time sets
// may additionally carry zero-measure marker points: a marker at t makes
// contains(t) true while contributing nothing to the measure.  Markers
// represent instantaneous presence in continuous time.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lago {

enum class TimeKind { discrete, continuous };

inline bool is_integral_time(double t) { return std::floor(t) == t; }

struct TimeDomain {
  TimeKind kind = TimeKind::continuous;
  double t_min = 0.0;
  double t_max = 1.0;  // horizon is [t_min, t_max)

  TimeDomain() = default;
  TimeDomain(TimeKind k, double lo, double hi) : kind(k), t_min(lo), t_max(hi) {
    validate();
  }

  void validate() const {
    if (!(t_min < t_max))
      throw std::invalid_argument("time domain requires t_min < t_max");
    if (kind == TimeKind::discrete &&
        (!is_integral_time(t_min) || !is_integral_time(t_max)))
      throw std::invalid_argument("discrete time domain requires integer bounds");
  }

  bool discrete() const { return kind == TimeKind::discrete; }
  double measure() const { return t_max - t_min; }
};

struct TimeSegment {
  double start = 0.0;
  double end = 0.0;  // half-open; start == end denotes a marker point

  bool is_marker() const { return start == end; }
  double measure() const { return end - start; }
  friend bool operator==(const TimeSegment&, const TimeSegment&) = default;
};

// A normalized union of disjoint half-open segments plus marker points.
// Normalization sorts segments, merges overlapping and adjacent ones, and
// drops markers already covered by a segment.  Canonical form makes
// operator== a semantic equality.
class TimeSet {
 public:
  TimeSet() = default;

  static TimeSet single(double start, double end) {
    TimeSet s;
    s.add(start, end);
    s.normalize();
    return s;
  }

  // Accumulate; call normalize() before queries.
  void add(double start, double end) {
    if (end < start) throw std::invalid_argument("segment end before start");
    if (start == end)
      markers_.push_back(start);
    else
      segments_.push_back({start, end});
    dirty_ = true;
  }

  void add_marker(double t) { add(t, t); }

  void add(const TimeSet& other) {
    for (const auto& s : other.segments_) segments_.push_back(s);
    for (double m : other.markers_) markers_.push_back(m);
    dirty_ = true;
  }

  void normalize() {
    if (!dirty_) return;
    std::sort(segments_.begin(), segments_.end(),
              [](const TimeSegment& a, const TimeSegment& b) {
                return a.start < b.start || (a.start == b.start && a.end < b.end);
              });
    std::vector<TimeSegment> merged;
    for (const auto& s : segments_) {
      if (!merged.empty() && s.start <= merged.back().end)
        merged.back().end = std::max(merged.back().end, s.end);
      else
        merged.push_back(s);
    }
    segments_ = std::move(merged);
    std::sort(markers_.begin(), markers_.end());
    markers_.erase(std::unique(markers_.begin(), markers_.end()), markers_.end());
    std::erase_if(markers_, [this](double m) { return covered_(m); });
    dirty_ = false;
  }

  bool empty() const { return segments_.empty() && markers_.empty(); }

  double measure() const {
    double total = 0.0;
    for (const auto& s : segments_) total += s.measure();
    return total;
  }

  // Point membership; markers count.
  bool contains(double t) const {
    if (covered_(t)) return true;
    return std::binary_search(markers_.begin(), markers_.end(), t);
  }

  TimeSet set_union(const TimeSet& other) const {
    TimeSet out = *this;
    out.add(other);
    out.normalize();
    return out;
  }

  TimeSet intersection(const TimeSet& other) const {
    TimeSet out;
    std::size_t i = 0, j = 0;
    while (i < segments_.size() && j < other.segments_.size()) {
      const auto& a = segments_[i];
      const auto& b = other.segments_[j];
      double lo = std::max(a.start, b.start);
      double hi = std::min(a.end, b.end);
      if (lo < hi) out.add(lo, hi);
      if (a.end < b.end)
        ++i;
      else
        ++j;
    }
    for (double m : markers_)
      if (other.contains(m)) out.add_marker(m);
    for (double m : other.markers_)
      if (contains(m)) out.add_marker(m);
    out.normalize();
    return out;
  }

  double intersection_measure(const TimeSet& other) const {
    double total = 0.0;
    std::size_t i = 0, j = 0;
    while (i < segments_.size() && j < other.segments_.size()) {
      const auto& a = segments_[i];
      const auto& b = other.segments_[j];
      double lo = std::max(a.start, b.start);
      double hi = std::min(a.end, b.end);
      if (lo < hi) total += hi - lo;
      if (a.end < b.end)
        ++i;
      else
        ++j;
    }
    return total;
  }

  const std::vector<TimeSegment>& segments() const { return segments_; }
  const std::vector<double>& markers() const { return markers_; }

  friend bool operator==(const TimeSet& a, const TimeSet& b) {
    return a.segments_ == b.segments_ && a.markers_ == b.markers_;
  }

 private:
  bool covered_(double t) const {
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t,
        [](double v, const TimeSegment& s) { return v < s.start; });
    if (it == segments_.begin()) return false;
    --it;
    return t < it->end;
  }

  std::vector<TimeSegment> segments_;
  std::vector<double> markers_;
  bool dirty_ = false;
};

}  // namespace lago

#pragma once
// Greedy longitudinal modularity optimization.
//
// Atomic elements start in singleton time modules.  The core loop alternates
// local moves (one element joins the module of a neighbor, or detaches into
// a fresh singleton) with aggregation (whole modules merge into neighboring
// modules), optionally followed by a refinement pass that re-moves maximal
// per-node contiguous blocks.  Scores are maintained incrementally: a move
// can only change the contributions of the modules its node participates in,
// so those are recomputed against cached per-module aggregates while all
// other modules keep their cached contribution.
//
// Moves are accepted on a strictly positive gain (threshold 1e-12, lowest
// target label on ties); all passes are driven by a seeded generator, so a
// given seed reproduces the exact output structure.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "lago/induce.hpp"
#include "lago/quality.hpp"
#include "lago/segmentation.hpp"

namespace lago {

inline constexpr double kGainThreshold = 1e-12;

struct OptimizerConfig {
  enum class Refine { none, stem };

  QualityParams params;
  std::uint64_t seed = 0;
  int max_passes = 100;
  Refine refine = Refine::stem;
  bool fast = false;
  int runs = 1;

  void validate() const {
    params.validate();
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (max_passes < 1) throw std::invalid_argument("max_passes must be at least 1");
  }
};

struct RunDiagnostics {
  std::uint64_t seed = 0;
  int passes = 0;
  std::size_t moves = 0;
  std::vector<double> trace;  // cached Q after init and after every sweep
  double q = 0.0;
};

struct DetectResult {
  DynamicCommunityStructure structure;
  double q = 0.0;
  std::vector<RunDiagnostics> runs;
  int best_run = 0;
};

// Mutable optimizer state over a fixed element context.  Owned by a single
// thread; queries on the produced structures are safe to share.
class OptimizerState {
 public:
  OptimizerState(const LinkStream& eval_stream, const ElementContext& ctx,
                 const QualityParams& params)
      : stream_(eval_stream), ctx_(ctx), params_(params) {
    deg_ = degrees(stream_);
    for (double k : deg_.in) w_ += k;
    if (!(w_ > 0.0))
      throw std::invalid_argument("optimizer requires positive stream weight");
    m_ = static_cast<double>(stream_.interaction_count());
    horizon_ = stream_.domain().measure();
    build_orientations();

    labels_.resize(ctx_.size());
    for (std::uint32_t i = 0; i < ctx_.size(); ++i) labels_[i] = i;
    next_label_ = static_cast<CommunityId>(ctx_.size());

    for (std::uint32_t e = 0; e < ctx_.size(); ++e)
      members_[labels_[e]][ctx_.element(e).node] += 1;
    runs_.resize(stream_.nodes().size());
    for (NodeId u = 0; u < stream_.nodes().size(); ++u) {
      runs_[u] = node_runs(ctx_, labels_, u);
      if (runs_[u].size() > 1) eta_total_ += runs_[u].size() - 1;
    }
    for (const auto& [label, nodes] : members_) {
      ModuleHull hull;
      for (const auto& [u, cnt] : nodes)
        for (const auto& r : runs_[u])
          if (r.label == label) hull.include(r);
      hulls_[label] = hull;
    }
    double sum = 0.0;
    for (const auto& [label, nodes] : members_) {
      double b = bracket(label, nullptr, nullptr);
      brackets_[label] = b;
      sum += b;
    }
    q_ = sum / w_ - penalty(eta_total_);
  }

  double q() const { return q_; }
  const std::vector<CommunityId>& labels() const { return labels_; }
  const ElementContext& context() const { return ctx_; }
  const QualityParams& params() const { return params_; }
  CommunityId fresh_label() const { return next_label_; }
  std::size_t module_count() const { return members_.size(); }
  CommunityId label_of(std::uint32_t element) const { return labels_[element]; }

  DynamicCommunityStructure induce() const {
    return induce_structure(ctx_, stream_.domain(), stream_.nodes().size(), labels_);
  }

  // Exact gain of relabelling `changes`, computed from cached per-module
  // aggregates; commits when asked.
  double eval_batch(const std::vector<std::pair<std::uint32_t, CommunityId>>& raw,
                    bool commit) {
    std::vector<std::pair<std::uint32_t, CommunityId>> changes;
    for (const auto& [e, target] : raw)
      if (labels_[e] != target) changes.push_back({e, target});
    if (changes.empty()) return 0.0;

    std::vector<NodeId> touched;
    for (const auto& [e, target] : changes) touched.push_back(ctx_.element(e).node);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    std::set<CommunityId> affected;
    for (NodeId u : touched)
      for (const auto& r : runs_[u]) affected.insert(r.label);
    for (const auto& [e, target] : changes) affected.insert(target);

    double old_sum = 0.0;
    for (CommunityId l : affected)
      if (auto it = brackets_.find(l); it != brackets_.end()) old_sum += it->second;
    std::size_t old_eta = 0;
    for (NodeId u : touched)
      if (runs_[u].size() > 1) old_eta += runs_[u].size() - 1;

    // Tentatively apply labels and membership counts.
    std::vector<CommunityId> saved;
    for (const auto& [e, target] : changes) {
      saved.push_back(labels_[e]);
      NodeId u = ctx_.element(e).node;
      drop_member(labels_[e], u);
      labels_[e] = target;
      members_[target][u] += 1;
    }

    std::map<NodeId, std::vector<ElementRun>> new_runs;
    for (NodeId u : touched) new_runs[u] = node_runs(ctx_, labels_, u);

    std::map<CommunityId, ModuleHull> new_hulls;
    for (CommunityId l : affected) {
      ModuleHull hull;
      if (auto it = members_.find(l); it != members_.end()) {
        for (const auto& [u, cnt] : it->second) {
          const auto& runs = new_runs.count(u) ? new_runs[u] : runs_[u];
          for (const auto& r : runs)
            if (r.label == l) hull.include(r);
        }
      }
      new_hulls[l] = hull;
    }

    double new_sum = 0.0;
    std::map<CommunityId, double> new_brackets;
    for (CommunityId l : affected) {
      if (!new_hulls[l].valid) continue;  // module vanished
      double b = bracket(l, &new_runs, &new_hulls);
      new_brackets[l] = b;
      new_sum += b;
    }
    std::size_t new_eta = 0;
    for (NodeId u : touched)
      if (new_runs[u].size() > 1) new_eta += new_runs[u].size() - 1;

    double gain = (new_sum - old_sum) / w_ -
                  params_.omega * (static_cast<double>(new_eta) -
                                   static_cast<double>(old_eta)) /
                      (2.0 * m_);

    if (commit) {
      for (NodeId u : touched) runs_[u] = std::move(new_runs[u]);
      for (CommunityId l : affected) {
        if (new_hulls[l].valid) {
          hulls_[l] = new_hulls[l];
          brackets_[l] = new_brackets[l];
        } else {
          hulls_.erase(l);
          brackets_.erase(l);
        }
        if (auto it = members_.find(l); it != members_.end() && it->second.empty())
          members_.erase(it);
      }
      eta_total_ += new_eta;
      eta_total_ -= old_eta;
      q_ += gain;
      for (const auto& [e, target] : changes)
        next_label_ = std::max(next_label_, target + 1);
    } else {
      for (std::size_t i = changes.size(); i-- > 0;) {
        auto [e, target] = changes[i];
        NodeId u = ctx_.element(e).node;
        drop_member(target, u);
        labels_[e] = saved[i];
        members_[saved[i]][u] += 1;
      }
    }
    return gain;
  }

  double move_gain(std::uint32_t element, CommunityId target) {
    return eval_batch({{element, target}}, false);
  }

  void apply(const std::vector<std::pair<std::uint32_t, CommunityId>>& changes) {
    eval_batch(changes, true);
  }

  // Candidate target labels of one element: communities of its topological
  // and temporal neighbors.
  std::vector<CommunityId> neighbor_labels(std::uint32_t e) const {
    std::set<CommunityId> out;
    for (std::uint32_t n : ctx_.topological(e)) out.insert(labels_[n]);
    if (auto p = ctx_.temporal_prev(e); p >= 0) out.insert(labels_[p]);
    if (auto n = ctx_.temporal_next(e); n >= 0) out.insert(labels_[n]);
    out.erase(labels_[e]);
    return {out.begin(), out.end()};
  }

  // Existing module labels, ascending.
  std::vector<CommunityId> module_labels() const {
    std::vector<CommunityId> out;
    for (const auto& [l, _] : members_) out.push_back(l);
    return out;
  }

  std::vector<std::uint32_t> module_elements(CommunityId l) const {
    std::vector<std::uint32_t> out;
    auto it = members_.find(l);
    if (it == members_.end()) return out;
    for (const auto& [u, cnt] : it->second)
      for (std::uint32_t e : ctx_.node_elements(u))
        if (labels_[e] == l) out.push_back(e);
    return out;
  }

  // Full recomputation from scratch; test hook for incremental consistency.
  double recompute_q() const {
    double sum = 0.0;
    for (const auto& [l, _] : members_) sum += bracket(l, nullptr, nullptr);
    return sum / w_ - penalty(eta_total_);
  }

 private:
  using RunsOverlay = std::map<NodeId, std::vector<ElementRun>>;
  using HullOverlay = std::map<CommunityId, ModuleHull>;

  void drop_member(CommunityId label, NodeId u) {
    auto it = members_.find(label);
    if (it == members_.end()) return;
    auto nit = it->second.find(u);
    if (nit == it->second.end()) return;
    if (--nit->second == 0) it->second.erase(nit);
    if (it->second.empty()) members_.erase(it);
  }

  double penalty(std::size_t eta) const {
    return params_.omega * static_cast<double>(eta) / (2.0 * m_);
  }

  void build_orientations() {
    auto add = [&](NodeId su, double st, NodeId du, double dt, double w) {
      Orientation o{ctx_.at(su, st), ctx_.at(du, dt), w};
      by_src_node_[su].push_back(static_cast<std::uint32_t>(orientations_.size()));
      orientations_.push_back(o);
    };
    by_src_node_.assign(stream_.nodes().size(), {});
    for (const auto& e : stream_.interactions()) {
      double w = e.weight;
      if (stream_.modality() == Modality::interval) {
        w *= e.t_second - e.t_start;
        if (w == 0.0) continue;
        add(e.src, e.t_start, e.dst, e.t_start, w);
        if (!e.directed) add(e.dst, e.t_start, e.src, e.t_start, w);
      } else {
        add(e.src, e.t_start, e.dst, e.t_second, w);
        if (!e.directed) add(e.dst, e.t_start, e.src, e.t_second, w);
      }
    }
  }

  const ModuleHull& hull_of(CommunityId l, const HullOverlay* hulls) const {
    if (hulls)
      if (auto it = hulls->find(l); it != hulls->end()) return it->second;
    return hulls_.at(l);
  }

  const std::vector<ElementRun>& runs_of(NodeId u, const RunsOverlay* runs) const {
    if (runs)
      if (auto it = runs->find(u); it != runs->end()) return it->second;
    return runs_[u];
  }

  // Contribution of one module: observed weight minus gamma-scaled
  // expectation pair sum over members.
  double bracket(CommunityId l, const RunsOverlay* runs_overlay,
                 const HullOverlay* hull_overlay) const {
    auto mit = members_.find(l);
    if (mit == members_.end()) return 0.0;
    const NodeTable& nodes = stream_.nodes();
    bool multipartite = nodes.multipartite();

    KahanSum observed;
    KahanSum out_sum, in_sum;
    std::map<std::int32_t, std::pair<KahanSum, KahanSum>> per_type;
    std::vector<std::pair<double, double>> lifetime_segments;
    bool jm = params_.null_model == NullModel::joint_membership;

    for (const auto& [u, cnt] : mit->second) {
      for (std::uint32_t idx : by_src_node_[u]) {
        const Orientation& o = orientations_[idx];
        if (labels_[o.src_element] == l && labels_[o.dst_element] == l)
          observed.add(o.weight);
      }
      const auto& runs = runs_of(u, runs_overlay);
      double mu = 0.0;
      for (std::size_t i = 0; i < runs.size(); ++i) {
        if (runs[i].label != l) continue;
        double s = i == 0 ? hull_of(runs[i].label, hull_overlay).start
                          : runs[i].attach_start;
        double e = i + 1 == runs.size() ? hull_of(runs[i].label, hull_overlay).end
                                        : runs[i].attach_end;
        mu += e - s;
        if (jm && s < e) lifetime_segments.push_back({s, e});
      }
      if (mu <= 0.0) continue;
      double f = jm ? 1.0 : std::sqrt(mu);
      out_sum.add(deg_.out[u] * f);
      in_sum.add(deg_.in[u] * f);
      if (multipartite) {
        auto& [o, i] = per_type[nodes.type_of(u)];
        o.add(deg_.out[u] * f);
        i.add(deg_.in[u] * f);
      }
    }

    double pair_sum = out_sum.value() * in_sum.value();
    if (multipartite)
      for (const auto& [type, sums] : per_type)
        pair_sum -= sums.first.value() * sums.second.value();
    double scale;
    if (jm) {
      std::sort(lifetime_segments.begin(), lifetime_segments.end());
      double lifetime = 0.0, cur_start = 0.0, cur_end = -1.0;
      bool open = false;
      for (const auto& [s, e] : lifetime_segments) {
        if (!open || s > cur_end) {
          if (open) lifetime += cur_end - cur_start;
          cur_start = s;
          cur_end = e;
          open = true;
        } else {
          cur_end = std::max(cur_end, e);
        }
      }
      if (open) lifetime += cur_end - cur_start;
      scale = lifetime / horizon_;
    } else {
      scale = 1.0 / horizon_;
    }
    return observed.value() - params_.gamma * pair_sum * scale / w_;
  }

  struct Orientation {
    std::uint32_t src_element;
    std::uint32_t dst_element;
    double weight;  // weight, times piece measure in interval mode
  };

  const LinkStream& stream_;
  const ElementContext& ctx_;
  QualityParams params_;
  Degrees deg_;
  double w_ = 0.0;
  double m_ = 0.0;
  double horizon_ = 0.0;

  std::vector<Orientation> orientations_;
  std::vector<std::vector<std::uint32_t>> by_src_node_;

  std::vector<CommunityId> labels_;
  CommunityId next_label_ = 0;
  std::vector<std::vector<ElementRun>> runs_;
  std::map<CommunityId, std::map<NodeId, int>> members_;
  std::map<CommunityId, ModuleHull> hulls_;
  std::map<CommunityId, double> brackets_;
  std::size_t eta_total_ = 0;
  double q_ = 0.0;
};

namespace detail {

// One sweep of single-element moves in seeded-random order.  Returns whether
// any move was applied.
inline bool local_sweep(OptimizerState& state, std::mt19937_64& rng, bool fast,
                        std::size_t& moves) {
  std::vector<std::uint32_t> order(state.context().size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  bool improved = false;
  for (std::uint32_t e : order) {
    std::vector<CommunityId> candidates = state.neighbor_labels(e);
    candidates.push_back(state.fresh_label());
    if (fast) std::shuffle(candidates.begin(), candidates.end(), rng);
    CommunityId best = kUnassigned;
    double best_gain = kGainThreshold;
    for (CommunityId target : candidates) {
      double g = state.move_gain(e, target);
      if (g > best_gain) {
        best_gain = g;
        best = target;
        if (fast) break;
      }
    }
    if (best != kUnassigned) {
      state.apply({{e, best}});
      ++moves;
      improved = true;
    }
  }
  return improved;
}

// One sweep of module-level merges: every module tests joining a module its
// elements neighbor, reassigning all constituents at once.
inline bool meta_sweep(OptimizerState& state, std::mt19937_64& rng,
                       std::size_t& moves) {
  std::vector<CommunityId> order = state.module_labels();
  std::shuffle(order.begin(), order.end(), rng);
  bool improved = false;
  for (CommunityId l : order) {
    std::vector<std::uint32_t> elems = state.module_elements(l);
    if (elems.empty()) continue;  // merged away earlier in this sweep
    std::set<CommunityId> candidates;
    for (std::uint32_t e : elems) {
      for (CommunityId c : state.neighbor_labels(e)) candidates.insert(c);
    }
    candidates.erase(l);
    CommunityId best = kUnassigned;
    double best_gain = kGainThreshold;
    for (CommunityId target : candidates) {
      std::vector<std::pair<std::uint32_t, CommunityId>> changes;
      for (std::uint32_t e : elems) changes.push_back({e, target});
      double g = state.eval_batch(changes, false);
      if (g > best_gain) {
        best_gain = g;
        best = target;
      }
    }
    if (best != kUnassigned) {
      std::vector<std::pair<std::uint32_t, CommunityId>> changes;
      for (std::uint32_t e : elems) changes.push_back({e, best});
      state.apply(changes);
      ++moves;
      improved = true;
    }
  }
  return improved;
}

// Two elements of one node with nothing of that node in between are
// temporally contiguous when no inactive time separates them: consecutive
// instants in discrete time, abutting segments in interval mode.  Continuous
// instants are never contiguous, so blocks degenerate to single elements
// there.
inline bool temporally_contiguous(const ElementContext& ctx, std::uint32_t a,
                                  std::uint32_t b) {
  const ActiveElement& ea = ctx.element(a);
  const ActiveElement& eb = ctx.element(b);
  if (ctx.modality() == Modality::interval) return eb.t_start == ea.t_end;
  if (ctx.time_kind() == TimeKind::discrete) return eb.t_start == ea.t_start + 1;
  return false;
}

// Refinement: split every module into maximal per-node temporally-contiguous
// blocks and move those between modules; kept only if the score did not
// decrease (accepting only positive gains already guarantees that).
inline bool refine_pass(OptimizerState& state, std::mt19937_64& rng,
                        std::size_t& moves) {
  const ElementContext& ctx = state.context();
  auto extends_block = [&](std::uint32_t prev, std::uint32_t e) {
    return state.label_of(prev) == state.label_of(e) &&
           temporally_contiguous(ctx, prev, e);
  };
  std::vector<std::uint32_t> block_heads;
  for (std::uint32_t e = 0; e < ctx.size(); ++e) {
    auto prev = ctx.temporal_prev(e);
    if (prev < 0 || !extends_block(static_cast<std::uint32_t>(prev), e))
      block_heads.push_back(e);
  }
  std::shuffle(block_heads.begin(), block_heads.end(), rng);
  bool improved = false;
  for (std::uint32_t head : block_heads) {
    // Re-derive the block under current labels.
    CommunityId l = state.label_of(head);
    std::vector<std::uint32_t> block = {head};
    for (auto n = ctx.temporal_next(head);
         n >= 0 && extends_block(block.back(), static_cast<std::uint32_t>(n));
         n = ctx.temporal_next(static_cast<std::uint32_t>(n)))
      block.push_back(static_cast<std::uint32_t>(n));
    std::set<CommunityId> candidates;
    for (std::uint32_t e : block)
      for (CommunityId c : state.neighbor_labels(e)) candidates.insert(c);
    candidates.erase(l);
    candidates.insert(state.fresh_label());
    CommunityId best = kUnassigned;
    double best_gain = kGainThreshold;
    for (CommunityId target : candidates) {
      std::vector<std::pair<std::uint32_t, CommunityId>> changes;
      for (std::uint32_t e : block) changes.push_back({e, target});
      double g = state.eval_batch(changes, false);
      if (g > best_gain) {
        best_gain = g;
        best = target;
      }
    }
    if (best != kUnassigned) {
      std::vector<std::pair<std::uint32_t, CommunityId>> changes;
      for (std::uint32_t e : block) changes.push_back({e, best});
      state.apply(changes);
      ++moves;
      improved = true;
    }
  }
  return improved;
}

}  // namespace detail

inline DetectResult detect(const LinkStream& stream, const OptimizerConfig& config) {
  config.validate();
  std::optional<SegmentedStream> seg;
  if (stream.modality() == Modality::interval) seg = segment(stream);
  const LinkStream& eval = seg ? seg->stream : stream;
  if (eval.interactions().empty())
    throw std::invalid_argument("detect requires a non-empty stream");
  ElementContext ctx = seg ? make_context(*seg) : make_context(stream);

  std::optional<DetectResult> best;
  std::vector<RunDiagnostics> diagnostics;
  for (int r = 0; r < config.runs; ++r) {
    std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(r));
    OptimizerState state(eval, ctx, config.params);
    RunDiagnostics rd;
    rd.seed = config.seed + static_cast<std::uint64_t>(r);
    rd.trace.push_back(state.q());
    for (int pass = 0; pass < config.max_passes; ++pass) {
      bool any = false;
      while (detail::local_sweep(state, rng, config.fast, rd.moves)) {
        any = true;
        rd.trace.push_back(state.q());
      }
      while (detail::meta_sweep(state, rng, rd.moves)) {
        any = true;
        rd.trace.push_back(state.q());
      }
      if (config.refine == OptimizerConfig::Refine::stem) {
        if (detail::refine_pass(state, rng, rd.moves)) any = true;
        rd.trace.push_back(state.q());
      }
      ++rd.passes;
      if (!any) break;
    }
    DynamicCommunityStructure structure = state.induce();
    double q = lmodularity(eval, structure, config.params);
    rd.q = q;
    diagnostics.push_back(rd);
    if (!best || q > best->q) {
      best = DetectResult{std::move(structure), q, {}, r};
    }
  }
  best->runs = std::move(diagnostics);
  return std::move(*best);
}

}  // namespace lago

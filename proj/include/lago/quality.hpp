#pragma once
// Generalized longitudinal modularity.
//
// For a dynamic community set C over a link stream with total weight w,
// interaction count m and horizon measure |T|:
//
//   Q = (1/w) sum_C sum_{(u,v) in V^2} [ W_{uv in C}
//         - gamma b_uv (k_u^out k_v^in / w) F_{uv,C} ]
//       - (omega / 2m) sum_u eta_u
//
// where F is the temporal factor of the chosen null model,
//
//   joint membership:  F = (|T_C| / |T|) * 1{ |T_{u in C}| |T_{v in C}| > 0 }
//   mean membership:   F = sqrt(|T_{u in C}| |T_{v in C}|) / |T|
//
// b_uv masks same-type pairs in multipartite node sets, and eta_u counts the
// communities a node visits minus one.  The sum runs over ordered pairs
// including u = v.  The expectation double sum factorizes per community into
// products of per-node sums, which is how it is evaluated here; accumulation
// is Kahan-compensated.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "lago/community.hpp"
#include "lago/stream.hpp"

namespace lago {

enum class NullModel { joint_membership, mean_membership };

struct QualityParams {
  NullModel null_model = NullModel::mean_membership;
  double gamma = 1.0;
  double omega = 1.0;

  void validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (omega < 0.0) throw std::invalid_argument("omega must be non-negative");
  }
};

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// F_{uv,C} for one ordered pair.
inline double temporal_factor(const DynamicCommunityStructure& structure,
                              const LinkStream& stream, NodeId u, NodeId v,
                              CommunityId c, NullModel model) {
  double horizon = stream.domain().measure();
  double mu = structure.membership_time(u, c).measure();
  double mv = structure.membership_time(v, c).measure();
  if (model == NullModel::joint_membership) {
    if (mu <= 0.0 || mv <= 0.0) return 0.0;
    return structure.community_lifetime(c).measure() / horizon;
  }
  return std::sqrt(mu * mv) / horizon;
}

// Total observed intra-community weight per community: W_{uv in C} summed
// over ordered member pairs.  Each stored interaction is tested in its
// orientation(s); an orientation contributes to community c when the source
// is a member at the departure time and the destination at the arrival time
// (timestamped), or integrated over joint membership (interval mode).
inline std::vector<double> observed_weights(const LinkStream& stream,
                                            const DynamicCommunityStructure& structure) {
  std::vector<KahanSum> acc(structure.community_count());
  auto timestamped = [&](NodeId src, NodeId dst, double ts, double td, double w) {
    CommunityId a = structure.community_of(src, ts);
    if (a == kUnassigned) return;
    if (structure.community_of(dst, td) == a) acc[a].add(w);
  };
  auto interval = [&](NodeId src, NodeId dst, double ts, double te, double w) {
    structure.for_co_memberships(src, dst, ts, te,
                                 [&](CommunityId c, double lo, double hi) {
                                   acc[c].add(w * (hi - lo));
                                 });
  };
  for (const auto& e : stream.interactions()) {
    if (stream.modality() == Modality::timestamped) {
      timestamped(e.src, e.dst, e.t_start, e.t_second, e.weight);
      if (!e.directed) timestamped(e.dst, e.src, e.t_start, e.t_second, e.weight);
    } else {
      interval(e.src, e.dst, e.t_start, e.t_second, e.weight);
      if (!e.directed) interval(e.dst, e.src, e.t_start, e.t_second, e.weight);
    }
  }
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].value();
  return out;
}

// sum_{(u,v)} b_uv k_u^out k_v^in F_{uv,C} for one community, factorized as
// (sum_u k_u^out f_u)(sum_v k_v^in f_v) minus the same-type products in the
// multipartite case, with f_u = sqrt(|T_{u in C}|) (MM) or the positive-
// measure indicator (JM, scaled by |T_C| afterwards).
inline double expectation_pair_sum(const LinkStream& stream,
                                   const DynamicCommunityStructure::Community& community,
                                   const Degrees& deg, NullModel model,
                                   double horizon) {
  KahanSum out_sum, in_sum;
  std::map<std::int32_t, std::pair<KahanSum, KahanSum>> per_type;
  const NodeTable& nodes = stream.nodes();
  bool multipartite = nodes.multipartite();
  double lifetime = 0.0;
  if (model == NullModel::joint_membership) {
    TimeSet life;
    for (const auto& m : community.members) life.add(m.times);
    life.normalize();
    lifetime = life.measure();
  }
  for (const auto& m : community.members) {
    double mu = m.times.measure();
    if (mu <= 0.0) continue;
    double f = model == NullModel::mean_membership ? std::sqrt(mu) : 1.0;
    out_sum.add(deg.out[m.node] * f);
    in_sum.add(deg.in[m.node] * f);
    if (multipartite) {
      auto& [o, i] = per_type[nodes.type_of(m.node)];
      o.add(deg.out[m.node] * f);
      i.add(deg.in[m.node] * f);
    }
  }
  double total = out_sum.value() * in_sum.value();
  if (multipartite)
    for (const auto& [type, sums] : per_type)
      total -= sums.first.value() * sums.second.value();
  double scale = model == NullModel::mean_membership ? 1.0 / horizon
                                                     : lifetime / horizon;
  return total * scale;
}

// The generalized longitudinal modularity of a structure.
inline double lmodularity(const LinkStream& stream,
                          const DynamicCommunityStructure& structure,
                          const QualityParams& params) {
  params.validate();
  Degrees deg = degrees(stream);
  double w = 0.0;
  for (double k : deg.in) w += k;
  if (!(w > 0.0)) throw std::invalid_argument("lmodularity requires positive stream weight");
  double horizon = stream.domain().measure();
  std::vector<double> observed = observed_weights(stream, structure);
  KahanSum bracket;
  for (CommunityId c = 0; c < structure.community_count(); ++c) {
    bracket.add(observed[c]);
    bracket.add(-params.gamma * expectation_pair_sum(stream, structure.communities()[c],
                                                     deg, params.null_model, horizon) /
                w);
  }
  double m = static_cast<double>(stream.interaction_count());
  double penalty =
      m > 0 ? params.omega * static_cast<double>(structure.total_switches()) / (2.0 * m)
            : 0.0;
  return bracket.value() / w - penalty;
}

// Static unified modularity of a flat partition over a weighted directed
// adjacency matrix:  Q = (1/w) sum_C sum_{u,v in C} [A_uv - gamma b_uv
// k_u^out k_v^in / w].
inline double static_modularity(const std::vector<std::vector<double>>& adjacency,
                                const std::vector<std::int32_t>& types,
                                const std::vector<CommunityId>& partition,
                                double gamma) {
  std::size_t n = adjacency.size();
  if (partition.size() != n)
    throw std::invalid_argument("partition must cover all nodes");
  if (!types.empty() && types.size() != n)
    throw std::invalid_argument("types must cover all nodes");
  std::vector<double> k_out(n, 0.0), k_in(n, 0.0);
  double w = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    if (adjacency[u].size() != n)
      throw std::invalid_argument("adjacency matrix must be square");
    for (std::size_t v = 0; v < n; ++v) {
      if (adjacency[u][v] < 0.0)
        throw std::invalid_argument("adjacency weights must be non-negative");
      k_out[u] += adjacency[u][v];
      k_in[v] += adjacency[u][v];
      w += adjacency[u][v];
    }
  }
  if (!(w > 0.0)) throw std::invalid_argument("static modularity requires positive weight");
  KahanSum q;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (partition[u] != partition[v]) continue;
      bool allowed = types.empty() || types[u] != types[v];
      q.add(adjacency[u][v]);
      if (allowed) q.add(-gamma * k_out[u] * k_in[v] / w);
    }
  }
  return q.value() / w;
}

// On a single-instant discrete stream the longitudinal and static formulas
// agree: all temporal factors are 1 and no node ever switches.  Returns both
// values for comparison.
inline std::pair<double, double> reduction_check(const LinkStream& stream,
                                                 const std::vector<CommunityId>& partition,
                                                 double gamma) {
  const TimeDomain& d = stream.domain();
  if (!d.discrete() || d.measure() != 1.0)
    throw std::invalid_argument("reduction_check requires a single-instant discrete stream");
  std::size_t n = stream.nodes().size();
  if (partition.size() != n)
    throw std::invalid_argument("partition must cover all nodes");

  std::vector<std::vector<double>> adjacency(n, std::vector<double>(n, 0.0));
  for (const auto& e : stream.interactions()) {
    adjacency[e.src][e.dst] += e.weight;
    if (!e.directed) adjacency[e.dst][e.src] += e.weight;
  }
  std::vector<std::int32_t> types;
  if (stream.nodes().multipartite()) {
    types.resize(n);
    for (NodeId u = 0; u < n; ++u) types[u] = stream.nodes().type_of(u);
  }

  std::vector<MembershipSegment> segments;
  for (NodeId u = 0; u < n; ++u)
    segments.push_back({u, d.t_min, d.t_max, partition[u]});
  DynamicCommunityStructure structure(d, n, segments);

  QualityParams params;
  params.gamma = gamma;
  params.omega = 0.0;
  double q_lmod = lmodularity(stream, structure, params);
  double q_static = static_modularity(adjacency, types, partition, gamma);
  return {q_lmod, q_static};
}

}  // namespace lago

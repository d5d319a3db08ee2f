#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "lago/stream.hpp"
#include "support/fixtures.hpp"

using namespace lago;
using namespace lago::testing;

namespace {

LinkStream random_stream(std::mt19937_64& rng, Modality modality) {
  TimeKind kind = rng() % 2 ? TimeKind::discrete : TimeKind::continuous;
  double t_max = 8;
  NodeTable nodes;
  int n = 2 + static_cast<int>(rng() % 5);
  for (int i = 0; i < n; ++i) nodes.add("n" + std::to_string(i));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Interaction> inter;
  int m = 1 + static_cast<int>(rng() % 12);
  for (int i = 0; i < m; ++i) {
    NodeId u = rng() % n;
    NodeId v = rng() % n;
    double a, b;
    if (kind == TimeKind::discrete) {
      a = static_cast<double>(rng() % 7);
      b = a + static_cast<double>(rng() % (8 - static_cast<int>(a)));
      if (modality == Modality::timestamped && b > 7) b = 7;
    } else {
      a = unif(rng) * 7;
      b = a + unif(rng) * (t_max - a);
    }
    double w = kind == TimeKind::discrete ? 1 + static_cast<double>(rng() % 3)
                                          : 0.25 + unif(rng);
    inter.push_back({u, v, a, b, w, rng() % 2 == 0});
  }
  return LinkStream({kind, 0, t_max}, nodes, modality, inter);
}

}  // namespace

TEST_CASE("weight_between on the three-edge stream") {
  LinkStream s = three_edge_stream();
  NodeId a = s.nodes().require("a"), b = s.nodes().require("b"),
         c = s.nodes().require("c");
  TimeSet t02 = TimeSet::single(0, 2);
  REQUIRE(weight_between(s, a, b, t02, t02) == 2.0);
  REQUIRE(weight_between(s, b, a, t02, t02) == 2.0);  // undirected reverse
  REQUIRE(weight_between(s, b, c, t02, t02) == 0.0);
  REQUIRE(weight_between(s, a, b, TimeSet{}, t02) == 0.0);  // empty period
}

TEST_CASE("weight_between on an interval stream") {
  LinkStream s = make_stream({TimeKind::continuous, 0, 10}, Modality::interval,
                             {{"a", "b", 0, 10, 1.0}});
  NodeId a = s.nodes().require("a"), b = s.nodes().require("b");
  TimeSet t25 = TimeSet::single(2, 5);
  REQUIRE(weight_between(s, a, b, t25, t25) == 3.0);
  REQUIRE_THROWS_AS(count_between(s, a, b, t25, t25), std::logic_error);
}

TEST_CASE("count_between") {
  LinkStream s = three_edge_stream();
  NodeId a = s.nodes().require("a"), b = s.nodes().require("b"),
         c = s.nodes().require("c");
  TimeSet t02 = TimeSet::single(0, 2);
  REQUIRE(count_between(s, a, b, t02, t02) == 2);
  REQUIRE(count_between(s, b, c, t02, t02) == 0);

  LinkStream delayed = make_stream({TimeKind::discrete, 0, 5}, Modality::timestamped,
                                   {{"u", "v", 1, 3, 2.0, true}});
  REQUIRE(count_between(delayed, delayed.nodes().require("u"),
                        delayed.nodes().require("v"), TimeSet::single(0, 2),
                        TimeSet::single(2, 4)) == 1);
}

TEST_CASE("degrees and totals on hand fixtures") {
  LinkStream s = three_edge_stream();
  Degrees d = degrees(s);
  NodeId a = s.nodes().require("a"), b = s.nodes().require("b"),
         c = s.nodes().require("c");
  REQUIRE(d.in[a] == 2.0);
  REQUIRE(d.out[a] == 2.0);
  REQUIRE(d.in[b] == 3.0);
  REQUIRE(d.in[c] == 1.0);
  Totals t = totals(s);
  REQUIRE(t.w == 6.0);
  REQUIRE(t.m == 3);  // w = 2m for undirected unweighted streams

  LinkStream directed = make_stream({TimeKind::discrete, 0, 2}, Modality::timestamped,
                                    {{"u", "v", 0, 0, 5.0, true}});
  Degrees dd = degrees(directed);
  REQUIRE(dd.out[directed.nodes().require("u")] == 5.0);
  REQUIRE(dd.in[directed.nodes().require("v")] == 5.0);
  REQUIRE(dd.in[directed.nodes().require("u")] == 0.0);
  REQUIRE(dd.out[directed.nodes().require("v")] == 0.0);
  REQUIRE(totals(directed).w == 5.0);
  REQUIRE(totals(directed).m == 1);
}

TEST_CASE("interval totals: undirected edges weigh both directions over duration") {
  LinkStream s = make_stream({TimeKind::continuous, 0, 20}, Modality::interval,
                             {{"a", "b", 0, 4, 1.0}, {"c", "d", 10, 14, 1.0}});
  Totals t = totals(s);
  REQUIRE(t.w == 16.0);
  REQUIRE(t.m == 2);
}

TEST_CASE("degree identity: sum of in equals sum of out equals w") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    LinkStream s = random_stream(rng, i % 2 ? Modality::timestamped : Modality::interval);
    Degrees d = degrees(s);
    double sum_in = 0, sum_out = 0, pairwise = 0;
    for (double k : d.in) sum_in += k;
    for (double k : d.out) sum_out += k;
    TimeSet whole = TimeSet::single(s.domain().t_min, s.domain().t_max);
    for (NodeId u = 0; u < s.nodes().size(); ++u)
      for (NodeId v = 0; v < s.nodes().size(); ++v)
        pairwise += weight_between(s, u, v, whole, whole);
    REQUIRE_THAT(sum_in, Catch::Matchers::WithinRel(sum_out, 1e-9));
    REQUIRE_THAT(pairwise, Catch::Matchers::WithinRel(sum_in, 1e-9));
  }
}

TEST_CASE("reversing directed interactions swaps degrees") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    LinkStream s = random_stream(rng, Modality::timestamped);
    std::vector<Interaction> reversed = s.interactions();
    for (auto& e : reversed) std::swap(e.src, e.dst);
    LinkStream r(s.domain(), s.nodes(), s.modality(), reversed);
    Degrees d = degrees(s), dr = degrees(r);
    REQUIRE(d.in == dr.out);
    REQUIRE(d.out == dr.in);
    REQUIRE_THAT(totals(r).w, Catch::Matchers::WithinRel(totals(s).w, 1e-9));
    REQUIRE(totals(s).m == totals(r).m);
  }
}

TEST_CASE("weight_between is additive over disjoint time sets") {
  LinkStream s = three_edge_stream();
  NodeId a = s.nodes().require("a"), b = s.nodes().require("b");
  TimeSet whole = TimeSet::single(0, 4);
  TimeSet left = TimeSet::single(0, 1), right = TimeSet::single(1, 4);
  REQUIRE(weight_between(s, a, b, whole, whole) ==
          weight_between(s, a, b, left, whole) + weight_between(s, a, b, right, whole));
}

TEST_CASE("construction rejects invalid input") {
  // Same-type interaction in a multipartite stream.
  REQUIRE_THROWS_AS(make_stream({TimeKind::discrete, 0, 2}, Modality::timestamped,
                                {{"u1", "u2", 0, 0}},
                                {{"u1", 0}, {"u2", 0}, {"h", 1}}),
                    std::invalid_argument);
  // Cross-type is fine.
  REQUIRE_NOTHROW(make_stream({TimeKind::discrete, 0, 2}, Modality::timestamped,
                              {{"u1", "h", 0, 0}}, {{"u1", 0}, {"u2", 0}, {"h", 1}}));
  // Delayed arrival beyond the horizon.
  REQUIRE_THROWS_AS(make_stream({TimeKind::discrete, 0, 4}, Modality::timestamped,
                                {{"u", "v", 1, 4, 1.0, true}}),
                    std::invalid_argument);
  // Non-positive weight.
  REQUIRE_THROWS_AS(make_stream({TimeKind::discrete, 0, 4}, Modality::timestamped,
                                {{"u", "v", 0, 0, 0.0}}),
                    std::invalid_argument);
  // t_second before t_start.
  REQUIRE_THROWS_AS(make_stream({TimeKind::continuous, 0, 4}, Modality::interval,
                                {{"u", "v", 3, 1}}),
                    std::invalid_argument);
  // Fractional time in a discrete stream.
  REQUIRE_THROWS_AS(make_stream({TimeKind::discrete, 0, 4}, Modality::timestamped,
                                {{"u", "v", 0.5, 0.5}}),
                    std::invalid_argument);
}

TEST_CASE("empty stream has zero degrees") {
  LinkStream s = make_stream({TimeKind::discrete, 0, 2}, Modality::timestamped, {});
  REQUIRE(totals(s).w == 0.0);
  REQUIRE(totals(s).m == 0);
}

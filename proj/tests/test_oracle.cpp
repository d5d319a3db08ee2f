#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "lago/oracle.hpp"
#include "support/fixtures.hpp"

using namespace lago;
using namespace lago::testing;
using Catch::Matchers::WithinAbs;

TEST_CASE("oracle confirms the 19/72 fixture optimum") {
  LinkStream s = three_edge_stream();
  QualityParams mm{NullModel::mean_membership, 1.0, 1.0};
  QualityParams jm{NullModel::joint_membership, 1.0, 1.0};
  OracleResult rm = enumerate_optimal(s, mm);
  OracleResult rj = enumerate_optimal(s, jm);
  REQUIRE(rm.partitions == 203);  // Bell(6)
  REQUIRE_THAT(rm.q, WithinAbs(19.0 / 72.0, 1e-12));
  REQUIRE_THAT(rj.q, WithinAbs(19.0 / 72.0, 1e-12));
  REQUIRE(equal_up_to_renaming(rm.structure, three_edge_structure(s)));
}

TEST_CASE("oracle on the single edge: merged beats singletons") {
  LinkStream s = single_edge_stream();
  OracleResult r = enumerate_optimal(s, {NullModel::mean_membership, 1.0, 1.0});
  REQUIRE(r.partitions == 2);
  REQUIRE_THAT(r.q, WithinAbs(0.5, 1e-12));
  REQUIRE(r.structure.community_count() == 1);
}

TEST_CASE("two temporally distant dyads form two communities") {
  LinkStream s = make_stream({TimeKind::discrete, 0, 10}, Modality::timestamped,
                             {{"a", "b", 0, 0}, {"c", "d", 9, 9}});
  OracleResult r = enumerate_optimal(s, {NullModel::mean_membership, 1.0, 1.0});
  REQUIRE(r.structure.community_count() == 2);
}

TEST_CASE("oracle is invariant under node relabeling and time translation") {
  LinkStream s = three_edge_stream();
  QualityParams p{NullModel::mean_membership, 1.0, 1.0};
  double base = enumerate_optimal(s, p).q;

  // Relabel nodes (permute names).
  LinkStream relabeled = make_stream({TimeKind::discrete, 0, 4}, Modality::timestamped,
                                     {{"z", "y", 0, 0}, {"z", "y", 1, 1}, {"y", "x", 3, 3}});
  REQUIRE_THAT(enumerate_optimal(relabeled, p).q, WithinAbs(base, 1e-12));

  // Translate the whole stream by +5.
  LinkStream shifted = make_stream({TimeKind::discrete, 5, 9}, Modality::timestamped,
                                   {{"a", "b", 5, 5}, {"a", "b", 6, 6}, {"b", "c", 8, 8}});
  REQUIRE_THAT(enumerate_optimal(shifted, p).q, WithinAbs(base, 1e-12));
}

TEST_CASE("oracle guard") {
  std::mt19937_64 rng(1);
  NodeTable nodes;
  for (int i = 0; i < 8; ++i) nodes.add("n" + std::to_string(i));
  std::vector<Interaction> inter;
  for (int i = 0; i < 10; ++i)
    inter.push_back({static_cast<NodeId>(rng() % 8), static_cast<NodeId>(rng() % 8),
                     static_cast<double>(rng() % 8), static_cast<double>(rng() % 8),
                     1.0, true});
  for (auto& e : inter)
    if (e.t_second < e.t_start) std::swap(e.t_start, e.t_second);
  LinkStream s({TimeKind::discrete, 0, 9}, nodes, Modality::timestamped, inter);
  std::size_t n = build_elements(s).size();
  REQUIRE_THROWS_AS(enumerate_optimal(s, {NullModel::mean_membership, 1.0, 1.0},
                                      n - 1),
                    GuardExceeded);
}

TEST_CASE("oracle handles interval streams by segmenting") {
  LinkStream s = make_stream({TimeKind::continuous, 0, 10}, Modality::interval,
                             {{"a", "b", 0, 4}, {"c", "d", 5, 9}});
  OracleResult r = enumerate_optimal(s, {NullModel::mean_membership, 1.0, 1.0});
  REQUIRE(r.partitions == 15);  // Bell(4)
  REQUIRE_THAT(r.q, WithinAbs(0.8, 1e-12));
  REQUIRE(r.structure.community_count() == 2);
}

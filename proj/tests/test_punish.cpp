#include "doctest.h"
#include "test_util.hpp"

using namespace testutil;
using dsg::best_response_value;
using dsg::punishment_values;
using dsg::PunishTable;

namespace {

// Exact Bellman residual check: max for the owner, min for everyone else.
void check_bellman(const Game& g, const PunishTable& pt) {
  for (int p = 0; p < g.num_players(); ++p) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      const bool owns = g.vertices[v].owner == p;
      bool first = true;
      Rat extreme;
      for (const auto& a : g.vertices[v].actions) {
        const Rat q = a.rewards[p] + g.lambda * pt.value[p][a.target];
        if (first || (owns ? q > extreme : q < extreme)) extreme = q;
        first = false;
      }
      CAPTURE(p);
      CAPTURE(v);
      CHECK(pt.value[p][v] == extreme);
    }
  }
}

}  // namespace

TEST_CASE("oracle agreement on every figure game") {
  for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5"}) {
    CAPTURE(name);
    const Game g = fig(name);
    const PunishTable pt = punishment_values(g);
    const auto oracle = oracle_punish(g);
    for (int p = 0; p < g.num_players(); ++p)
      for (int v = 0; v < g.num_vertices(); ++v) {
        CAPTURE(p);
        CAPTURE(v);
        CHECK(pt.value[p][v] == oracle[p][v]);
      }
  }
}

TEST_CASE("oracle agreement on seeded random games") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CAPTURE(seed);
    const Game g = dsg::gen_random(4, 2, 3, 9, seed);
    const PunishTable pt = punishment_values(g);
    const auto oracle = oracle_punish(g);
    for (int p = 0; p < g.num_players(); ++p)
      for (int v = 0; v < g.num_vertices(); ++v) CHECK(pt.value[p][v] == oracle[p][v]);
  }
}

TEST_CASE("fig2 punishment values, frozen") {
  const Game g = fig("fig2");
  const PunishTable pt = punishment_values(g);
  const int v1 = g.vertex_index("v1"), v2 = g.vertex_index("v2"), v3 = g.vertex_index("v3");
  const int p1 = g.player_index("p1"), p2 = g.player_index("p2"), p3 = g.player_index("p3");
  // p1 can hold vertex 1 (the coalition would exit from vertex 2 at her cost).
  CHECK(pt.value[p1][v1] == Rat(0));
  CHECK(pt.value[p1][v2] == Rat(-6));
  CHECK(pt.value[p1][v3] == Rat(-6));
  // The leader owns vertex 2 and can always exit for 3 + 3/2 + 3/4 + ...
  CHECK(pt.value[p2][v1] == Rat(0));
  CHECK(pt.value[p2][v2] == Rat(6));
  CHECK(pt.value[p2][v3] == Rat(6));
  CHECK(pt.value[p3][v1] == Rat(-2));
  CHECK(pt.value[p3][v2] == Rat(-4));
  CHECK(pt.value[p3][v3] == Rat(0));
}

TEST_CASE("fig4 punishment values, frozen") {
  const Game g = fig("fig4");
  const PunishTable pt = punishment_values(g);
  // At vertex 2 the opponent pins player 1 to the (-1, 1) loop: -1/(1 - 2/3).
  CHECK(pt.value[g.player_index("p1")][g.vertex_index("v2")] == Rat(-3));
}

TEST_CASE("all-zero rewards give all-zero punishment values") {
  const Game g = dsg::parse_game(R"({
    "players": ["a", "b"], "leader": "a", "lambda": "1/2",
    "vertices": [
      {"id": "u", "owner": "a", "initial": "1",
       "actions": [{"id": "x", "target": "w", "rewards": {"a": 0, "b": 0}},
                   {"id": "y", "target": "u", "rewards": {"a": 0, "b": 0}}]},
      {"id": "w", "owner": "b",
       "actions": [{"id": "z", "target": "u", "rewards": {"a": 0, "b": 0}}]}]})");
  const PunishTable pt = punishment_values(g);
  for (int p = 0; p < g.num_players(); ++p)
    for (int v = 0; v < g.num_vertices(); ++v) CHECK(pt.value[p][v] == Rat(0));
}

TEST_CASE("Bellman optimality holds exactly everywhere") {
  for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5"})
    check_bellman(fig(name), punishment_values(fig(name)));
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const Game g = dsg::gen_random(5, 3, 3, 9, seed);
    check_bellman(g, punishment_values(g));
  }
}

TEST_CASE("punishment policies achieve the value they promise") {
  // Following policy[p] from any vertex yields exactly value[p] for p.
  for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig5"}) {
    CAPTURE(name);
    const Game g = fig(name);
    const PunishTable pt = punishment_values(g);
    for (int p = 0; p < g.num_players(); ++p)
      for (int v = 0; v < g.num_vertices(); ++v)
        CHECK(walk_value(g, pt.policy[p], v, p) == pt.value[p][v]);
  }
}

TEST_CASE("recomputation is deterministic") {
  const Game g = fig("fig1");
  const PunishTable a = punishment_values(g);
  const PunishTable b = punishment_values(g);
  CHECK(a.value == b.value);
  CHECK(a.policy == b.policy);
}

TEST_CASE("anti-symmetry on two-player zero-sum games") {
  // b's rewards are the negation of a's everywhere, so the value of the
  // punishment game for b is the negation of a's at every vertex.
  const Game g = dsg::parse_game(R"({
    "players": ["a", "b"], "leader": "a", "lambda": "1/3",
    "vertices": [
      {"id": "u", "owner": "a", "initial": "1",
       "actions": [{"id": "s", "target": "w", "rewards": {"a": "2", "b": "-2"}},
                   {"id": "t", "target": "u", "rewards": {"a": "-1", "b": "1"}}]},
      {"id": "w", "owner": "b",
       "actions": [{"id": "s", "target": "u", "rewards": {"a": "3", "b": "-3"}},
                   {"id": "t", "target": "w", "rewards": {"a": "-4", "b": "4"}}]}]})");
  const PunishTable pt = punishment_values(g);
  for (int v = 0; v < g.num_vertices(); ++v) CHECK(pt.value[0][v] == -pt.value[1][v]);
  const auto oracle = oracle_punish(g);
  for (int v = 0; v < g.num_vertices(); ++v) CHECK(pt.value[0][v] == oracle[0][v]);
}

TEST_CASE("best response against the fig1 clockwise profile") {
  const Game g = fig("fig1");
  const Profile clockwise = make_profile(g, 1, {{0, "v1", "step", 0},
                                                {0, "v2", "step", 0},
                                                {0, "v3", "step", 0},
                                                {0, "s1", "loop", 0},
                                                {0, "s2", "loop", 0},
                                                {0, "s3", "loop", 0}});
  // On the 3-cycle everyone earns 0; each player's best deviation is to take
  // her exit at the first visit. From v1, player 1 exits at once for 2; the
  // later-reached exits of the cycle pay better through her 9-entry.
  const int p1 = g.player_index("p1");
  const auto br = best_response_value(g, clockwise, p1);
  REQUIRE(br.starts == std::vector<int>{g.vertex_index("v1"), g.vertex_index("v2"),
                                        g.vertex_index("v3")});
  // From v1, player 1's only choices sit at v1 (and the sink). The others are
  // frozen to step, so she can exit now for 2 or ride the full cycle and exit
  // a lap later for 2/8. Best is 2 at once.
  CHECK(br.start_value[0] == Rat(2));
  // From v2 she owns nothing until v1: ride v2, v3 for nothing, then exit: 2/4.
  CHECK(br.start_value[1] == Rat(1, 2));
  // From v3: ride one step, exit at v1: 2/2 = 1.
  CHECK(br.start_value[2] == Rat(1));
  // Weighted: (2 + 1/2 + 1) / 3 = 7/6. Strictly above her on-path 0.
  CHECK(br.weighted == Rat(7, 6));
  const auto on_path = oracle_weighted_payoffs(g, clockwise);
  CHECK(br.weighted > on_path[p1]);
}

TEST_CASE("best response at least matches compliance") {
  for (const char* name : {"fig1", "fig2", "fig5"}) {
    CAPTURE(name);
    const Game g = fig(name);
    for_each_positional_profile(g, [&](const Profile& prof) {
      const auto on_path = oracle_weighted_payoffs(g, prof);
      for (int p = 0; p < g.num_players(); ++p) {
        const auto br = best_response_value(g, prof, p);
        CHECK(br.weighted >= on_path[p]);
      }
    });
  }
}

TEST_CASE("all-zero game: any profile is unimprovable") {
  const Game g = dsg::parse_game(R"({
    "players": ["a", "b"], "leader": "b", "lambda": "1/2",
    "vertices": [
      {"id": "u", "owner": "a", "initial": "1",
       "actions": [{"id": "x", "target": "w", "rewards": {"a": 0, "b": 0}},
                   {"id": "y", "target": "u", "rewards": {"a": 0, "b": 0}}]},
      {"id": "w", "owner": "b",
       "actions": [{"id": "z", "target": "u", "rewards": {"a": 0, "b": 0}}]}]})");
  for_each_positional_profile(g, [&](const Profile& prof) {
    for (int p = 0; p < g.num_players(); ++p) {
      const auto br = best_response_value(g, prof, p);
      CHECK(br.weighted == Rat(0));
    }
  });
}

TEST_CASE("fig2 exit-immediately profile is a classic Nash profile") {
  const Game g = fig("fig2");
  const Profile prof = make_profile(
      g, 1, {{0, "v1", "stay", 0}, {0, "v2", "exit", 0}, {0, "v3", "loop", 0}});
  const auto on_path = oracle_weighted_payoffs(g, prof);
  for (int p = 0; p < g.num_players(); ++p) {
    const auto br = best_response_value(g, prof, p);
    CAPTURE(p);
    CHECK(br.weighted == on_path[p]);
  }
  CHECK(on_path[g.leader] == Rat(0));
}

TEST_CASE("a missing frozen action is an error") {
  const Game g = fig("fig2");
  // Entry for v2 (the leader's vertex) is missing; a best response for p1
  // that moves to v2 needs the leader's frozen action there.
  const Profile p = make_profile(g, 1, {{0, "v1", "stay", 0}, {0, "v3", "loop", 0}});
  CHECK_THROWS_WITH_AS(best_response_value(g, p, g.player_index("p1")),
                       doctest::Contains("needed for a best response"), dsg::ValidationError);
  CHECK_THROWS_AS(best_response_value(g, p, 99), dsg::ValidationError);
}

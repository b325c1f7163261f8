#pragma once

#include <string>
#include <vector>

#include "dsgames/rational.hpp"

namespace dsg {

// One outgoing transition of a vertex. `rewards[p]` is the immediate reward
// handed to player p (indexed into Game::players) when the transition is
// taken; every player has an entry.
struct Action {
  std::string id;
  int target = -1;  // vertex index
  std::vector<Rat> rewards;
};

struct Vertex {
  std::string id;
  int owner = -1;  // player index; the owner picks the outgoing action
  Rat initial;     // weight of this vertex in the initial distribution
  std::vector<Action> actions;
};

// A multi-player discounted-sum game on a finite directed graph. Every vertex
// has at least one outgoing action (no sinks), so plays are infinite; player
// p's payoff for a play v0 a0 v1 a1 ... is sum_i rewards_p(v_i, a_i) * lambda^i.
// The game carries a designated leader and an initial distribution over
// vertices (weights `Vertex::initial`, summing to one).
struct Game {
  std::vector<std::string> players;
  int leader = -1;  // player index
  Rat lambda;       // discount factor, 0 < lambda < 1
  std::vector<Vertex> vertices;

  int num_players() const { return static_cast<int>(players.size()); }
  int num_vertices() const { return static_cast<int>(vertices.size()); }

  // Index of the named player/vertex, or -1 when absent.
  int player_index(const std::string& id) const;
  int vertex_index(const std::string& id) const;
  // Index of the named action at vertex v, or -1.
  int action_index(int v, const std::string& id) const;

  // Largest |reward| over all transitions and players (0 for the all-zero game).
  Rat max_abs_reward() const;
  // p_max / (1 - lambda): every payoff and every tail lies in +-bound.
  Rat payoff_bound() const;

  bool operator==(const Game& o) const;
};

// Parses the JSON game format:
//
//   {
//     "players": ["p1", "p2"],
//     "leader": "p2",
//     "lambda": "1/2",
//     "vertices": [
//       {"id": "v1", "owner": "p1", "initial": "1",
//        "actions": [{"id": "go", "target": "v2",
//                     "rewards": {"p1": "0", "p2": "0"}}]},
//       ...
//     ]
//   }
//
// Rationals are "p/q" strings (or exact JSON integers); "initial" defaults to
// "0". Malformed JSON raises ParseError with the byte offset; a game that
// violates a structural invariant raises ValidationError naming the invariant.
Game parse_game(const std::string& text);

// Canonical rendering; parse_game(render_game(g)) == g, byte-deterministic.
std::string render_game(const Game& g);

// Checks all structural invariants of an in-memory game (parse_game runs this
// internally; call it directly on programmatically built games).
void validate_game(const Game& g);

// Returns a copy of g with every reward multiplied by c (> 0 required).
// Structure, lambda and the initial distribution are untouched.
Game scale_game(const Game& g, const Rat& c);

}  // namespace dsg

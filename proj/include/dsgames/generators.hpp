#pragma once

#include <cstdint>
#include <optional>

#include "dsgames/game.hpp"

namespace dsg {

// A CNF formula: variables are 1..num_vars, a literal is +v or -v, a clause a
// nonempty list of literals.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

// Parses DIMACS CNF: 'c' comment lines, one 'p cnf <vars> <clauses>' header,
// then 0-terminated clauses. Raises ParseError on malformed input,
// ValidationError when literals fall outside 1..num_vars, a clause is empty,
// or the clause count does not match the header.
CnfFormula parse_dimacs(const std::string& text);

// The five worked example games. fig3 is parametric in epsilon (0 < eps < 1,
// default 1/4); the other figures take no parameter.
//
//   fig1: three players on a 3-cycle with one exit each, uniform initial
//         distribution, lambda 1/2 — no memoryless profile is Nash.
//   fig2: three players, lambda 1/2 — bounded memory lets the leader collect
//         strictly more than any memoryless profile.
//   fig3: two players, lambda 1/2 — the optimal loop count grows with the
//         memory bound via the epsilon-discounted exit option.
//   fig4: two players, lambda 2/3 — optimal values strictly increase with K.
//   fig5: three players, lambda 2/3 — bounded-memory Nash value stays 0 while
//         unbounded memory reaches 2.
Game gen_figure(const std::string& name, std::optional<Rat> epsilon = std::nullopt);

// Reduction from 3-SAT: a game with 2n+1 players (one per literal, plus the
// leader) whose leader-mode optimal value with memory bound 1 is exactly 0
// when the formula is satisfiable and strictly negative otherwise. Rewards
// use only 0 and -1. Clauses of up to 3 literals are accepted; larger ones
// raise ValidationError.
Game gen_3sat(const CnfFormula& f, const Rat& lambda);

// Deterministic seeded random game: n_vertices vertices named v1.., each
// owned by a random one of n_players players p1.. (p1 is the leader), with
// 1..max_actions actions of random targets and integer rewards drawn from
// [-reward_range, reward_range]. The discount factor is drawn from a small
// fixed set of simple rationals, and the initial distribution is either a
// point mass on v1 or split 1/2-1/2 over v1 and v2. Identical arguments give
// byte-identical games.
Game gen_random(int n_vertices, int max_actions, int n_players, int reward_range,
                std::uint64_t seed);

}  // namespace dsg

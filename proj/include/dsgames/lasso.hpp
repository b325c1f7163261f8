#pragma once

#include <utility>
#include <vector>

#include "dsgames/game.hpp"

namespace dsg {

// A state of a finite-memory strategy machine running on a game: memory mode
// plus the current vertex. Memory ids are 0-based; 0 is the shared initial
// mode.
struct StateLabel {
  int memory = 0;
  int vertex = 0;
  friend bool operator==(const StateLabel&, const StateLabel&) = default;
  friend auto operator<=>(const StateLabel&, const StateLabel&) = default;
};

// An eventually periodic play, written as prefix . cycle^omega. Each step is a
// (vertex index, action index) pair; the cycle is nonempty and the steps chain
// consistently (the target of each step is the vertex of the next, and the
// last cycle step returns to the first).
struct Lasso {
  std::vector<std::pair<int, int>> prefix;
  std::vector<std::pair<int, int>> cycle;

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

// Checks vertex/action indices and chaining; throws ValidationError otherwise.
void validate_lasso(const Game& g, const Lasso& l);

// Exact discounted payoff of the lasso for every player:
//
//   sum_{i<k} t(s_i) lambda^i  +  lambda^k * (sum_{j<c} t(s_{k+j}) lambda^j) / (1 - lambda^c)
//
// where k = |prefix| and c = |cycle|.
std::vector<Rat> lasso_payoff(const Game& g, const Lasso& l);

// Same, restricted to one player.
Rat lasso_payoff_player(const Game& g, const Lasso& l, int player);

}  // namespace dsg

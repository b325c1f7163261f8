#pragma once

#include <map>
#include <utility>

#include "dsgames/profile.hpp"

namespace dsg {

// Punishment values and witness policies. value[p][v] is the exact value, for
// player p starting at vertex v, of the two-player zero-sum discounted game
// in which p maximizes her own discounted reward and the coalition of all
// other players minimizes it. Positional strategies suffice on both sides;
// policy[p][v] is the chosen action at v in that game (p's own maximizing
// action where p owns v, the coalition's punishing action elsewhere).
struct PunishTable {
  std::vector<std::vector<Rat>> value;
  std::vector<std::vector<int>> policy;
};

// Exact strategy iteration: improve p's positional strategy against an
// exactly computed best punishing response until stable. Improvements are
// strict with first-in-order tie-breaks, so the output (values and policies)
// is deterministic.
PunishTable punishment_values(const Game& g);

// Exact optimal value player p can secure from each initial vertex when every
// other player is frozen to the profile's machine. The frozen players keep
// updating the shared memory along the observed play: in state (m, v) the
// machine moves to the table's next_memory regardless of which action was
// actually played, and stays in m where the table is undefined (only possible
// at vertices owned by p). Raises ValidationError when a frozen player's
// action is needed at a state the table does not cover.
struct BestResponseReport {
  int player = -1;
  std::vector<int> starts;       // initial vertices (positive weight), ascending
  std::vector<Rat> start_value;  // value at (memory 0, starts[i])
  Rat weighted;                  // sum over starts of weight * value
  // Witness positional deviation policy on the explored (memory, vertex)
  // states owned by p.
  std::map<std::pair<int, int>, int> policy;
};

BestResponseReport best_response_value(const Game& g, const Profile& prof, int player);

}  // namespace dsg

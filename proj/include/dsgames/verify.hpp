#pragma once

#include "dsgames/punish.hpp"

namespace dsg {

// Exact discounted tails of the profile's compliant play: tail[s][p] is what
// player p collects from machine state s = states[i] onwards (undiscounted by
// the past). Covers every state reachable from the initial vertices at memory
// 0; raises ValidationError if the walk reaches an undefined table state.
struct TailTable {
  std::vector<StateLabel> states;  // discovery order
  std::vector<std::vector<Rat>> tail;

  // Index of (memory, vertex) among states, or -1.
  int find(int memory, int vertex) const;
};

TailTable tail_values(const Game& g, const Profile& prof);

// One row of the reward-and-punish feasibility check: a position of an
// induced play, the owner whose compliance is at stake there, the owner's
// exact tail, and the punishment value the tail must reach.
struct PositionCheck {
  int start = -1;     // start vertex of the play this row belongs to
  int position = 0;   // 0-based position along the play (prefix then cycle)
  StateLabel state;   // machine state at that position
  int owner = -1;
  Rat tail;
  Rat punish;
  bool exempt = false;  // leader position in leader mode: not constrained
  bool ok = true;
};

struct PlayReport {
  int start = -1;
  PlayTrace trace;
  std::vector<Rat> payoffs;  // per player, from this start
};

struct VerifyReport {
  Mode mode = Mode::Nash;
  bool pass = false;
  std::vector<PlayReport> plays;      // one per initial vertex, ascending
  std::vector<Rat> weighted_payoffs;  // per player, weighted by the initial distribution
  std::vector<PositionCheck> checks;
};

// Reward-and-punish feasibility: along the induced play from every initial
// vertex, each visited position's owner must weakly prefer compliance over
// being punished — tail_p(position) >= punishment value of p at that vertex.
// In leader mode positions owned by the leader are exempt. Pass `pt` to reuse
// a precomputed punishment table.
VerifyReport rp_check(const Game& g, const Profile& prof, Mode mode,
                      const PunishTable* pt = nullptr);

// Classic Nash check without the reward-and-punish machinery: the profile is
// a Nash equilibrium iff no single player can improve her weighted payoff by
// deviating while everyone else keeps playing the frozen machine.
struct NashReport {
  bool pass = false;
  std::vector<Rat> on_path;        // per player, weighted on-path payoff
  std::vector<Rat> best_response;  // per player, weighted best-response value
  std::vector<BestResponseReport> details;
};

NashReport classic_nash_check(const Game& g, const Profile& prof);

}  // namespace dsg

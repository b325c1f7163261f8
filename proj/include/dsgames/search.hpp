#pragma once

#include <cstdint>
#include <optional>

#include "dsgames/verify.hpp"

namespace dsg {

struct SearchStats {
  std::int64_t nodes = 0;              // decisions applied
  std::int64_t bound_prunes = 0;       // leader-value upper bound below incumbent
  std::int64_t constraint_prunes = 0;  // a compliance constraint became unsatisfiable
};

struct SearchResult {
  Rat value;
  Profile witness;
  SearchStats stats;
};

// Exact optimum over all reward-and-punish profiles with at most K memory
// modes: the leader's weighted payoff of the best feasible profile (rp_check
// semantics for `mode`). Depth-first branch and bound over partial profiles:
// choices are assigned at machine states in discovery order along the induced
// plays, actions ascending and next-memory ids ascending, with memory ids
// canonicalized by first use (a fresh id may only be the smallest unused
// one). Tail bounds are exact rational intervals, so pruning never loses the
// optimum, and the returned witness is the first optimal profile in that
// canonical order. Deterministic.
SearchResult solve_optimal(const Game& g, int K, Mode mode);

// Decision variant: is there a feasible profile with leader value >= t?
// Returns the first witness found in the same canonical order, pruning only
// branches whose upper bound falls below t.
struct ThresholdResult {
  bool yes = false;
  std::optional<Profile> witness;
  SearchStats stats;
};

ThresholdResult decide_threshold(const Game& g, int K, Mode mode, const Rat& t);

// Independent cross-check: exhaustively enumerates every canonical profile
// (no pruning) and maximizes the leader value over those that pass rp_check.
// Guarded to tiny instances: |V|*K <= 12 and at most 3 actions per vertex;
// raises ValidationError beyond the guard.
Rat brute_force_oracle(const Game& g, int K, Mode mode);

}  // namespace dsg

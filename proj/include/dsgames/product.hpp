#pragma once

#include "dsgames/profile.hpp"

namespace dsg {

// The synchronous product of a game with a K-mode memory structure, flattened
// into an ordinary game. Product vertex (v, m) keeps v's owner and rewards;
// each base action fans out into K product actions, one per next-memory
// choice, so positional strategies on the product are exactly K-memory
// profiles on the base game. The initial distribution sits on memory 0.
//
// Product vertex ids are "<vertex>@<memory>", action ids "<action>@<next>".
// Indices follow state_index: (v, m) lives at v*K + m; the product action
// (a, m') of a base action a lives at a*K + m'.
struct ProductGame {
  Game game;
  int K = 1;
  std::vector<StateLabel> label;  // per product vertex

  int state_index(StateLabel s) const { return s.vertex * K + s.memory; }
};

ProductGame build_product(const Game& g, int K);

// label[] lookup with range checking.
StateLabel project_state(const ProductGame& pg, int product_vertex);
// state_index with range checking.
int embed_state(const ProductGame& pg, StateLabel s);

// A K-memory profile on the base game, viewed as a positional (K=1) profile
// on the product: entry (m, v) -> (a, m') becomes an entry at product vertex
// (v, m) playing product action (a, m'). Requires base.K == pg.K.
Profile embed_profile(const ProductGame& pg, const Profile& base);

// Inverse of embed_profile: a positional profile on the product game becomes
// a K-memory profile on the base game.
Profile project_profile(const ProductGame& pg, const Profile& positional);

}  // namespace dsg

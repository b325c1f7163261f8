#include "dsgames/product.hpp"

namespace dsg {

ProductGame build_product(const Game& g, int K) {
  validate_game(g);
  if (K < 1) throw ValidationError("memory bound K must be at least 1");
  ProductGame pg;
  pg.K = K;
  pg.game.players = g.players;
  pg.game.leader = g.leader;
  pg.game.lambda = g.lambda;
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (int m = 0; m < K; ++m) {
      const Vertex& base = g.vertices[v];
      Vertex pv;
      pv.id = base.id + "@" + std::to_string(m);
      pv.owner = base.owner;
      pv.initial = m == 0 ? base.initial : Rat(0);
      for (const auto& a : base.actions) {
        for (int nm = 0; nm < K; ++nm) {
          Action pa;
          pa.id = a.id + "@" + std::to_string(nm);
          pa.target = a.target * K + nm;
          pa.rewards = a.rewards;
          pv.actions.push_back(std::move(pa));
        }
      }
      pg.game.vertices.push_back(std::move(pv));
      pg.label.push_back(StateLabel{m, v});
    }
  }
  validate_game(pg.game);
  return pg;
}

StateLabel project_state(const ProductGame& pg, int product_vertex) {
  if (product_vertex < 0 || product_vertex >= pg.game.num_vertices())
    throw ValidationError("unknown product vertex index " + std::to_string(product_vertex));
  return pg.label[product_vertex];
}

int embed_state(const ProductGame& pg, StateLabel s) {
  if (s.memory < 0 || s.memory >= pg.K)
    throw ValidationError("memory id must lie in [0, K)");
  if (s.vertex < 0 || s.vertex * pg.K >= pg.game.num_vertices())
    throw ValidationError("unknown vertex index " + std::to_string(s.vertex));
  return pg.state_index(s);
}

Profile embed_profile(const ProductGame& pg, const Profile& base) {
  if (base.K != pg.K)
    throw ValidationError("profile memory bound " + std::to_string(base.K) +
                          " does not match the product bound " + std::to_string(pg.K));
  Profile out;
  out.K = 1;
  for (const auto& e : base.entries) {
    ProfileEntry pe;
    pe.memory = 0;
    pe.vertex = e.vertex * pg.K + e.memory;
    pe.action = e.action * pg.K + e.next_memory;
    pe.next_memory = 0;
    out.entries.push_back(pe);
  }
  out.normalize();
  validate_profile(out, pg.game);
  return out;
}

Profile project_profile(const ProductGame& pg, const Profile& positional) {
  if (positional.K != 1)
    throw ValidationError("only positional (K=1) product profiles can be projected");
  validate_profile(positional, pg.game);
  Profile out;
  out.K = pg.K;
  for (const auto& e : positional.entries) {
    StateLabel s = pg.label[e.vertex];
    ProfileEntry be;
    be.memory = s.memory;
    be.vertex = s.vertex;
    be.action = e.action / pg.K;
    be.next_memory = e.action % pg.K;
    out.entries.push_back(be);
  }
  out.normalize();
  return out;
}

}  // namespace dsg

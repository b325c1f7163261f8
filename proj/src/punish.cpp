#include "dsgames/punish.hpp"

#include <algorithm>

#include "eval.hpp"

namespace dsg {

using detail::OptionGraph;
using detail::policy_iterate;

PunishTable punishment_values(const Game& g) {
  validate_game(g);
  const int P = g.num_players();
  const int V = g.num_vertices();
  PunishTable out;
  out.value.resize(P);
  out.policy.resize(P);

  for (int p = 0; p < P; ++p) {
    // p's positional strategy at her own vertices; arbitrary elsewhere.
    std::vector<int> sigma(V, 0);
    std::vector<Rat> val;
    std::vector<int> coalition_policy;
    for (;;) {
      // Exact best punishing response to sigma: the coalition controls every
      // vertex p does not own and minimizes p's discounted reward.
      OptionGraph og;
      og.options.resize(V);
      og.controlled.assign(V, 0);
      for (int v = 0; v < V; ++v) {
        const auto& acts = g.vertices[v].actions;
        if (g.vertices[v].owner == p) {
          og.options[v].emplace_back(acts[sigma[v]].target, acts[sigma[v]].rewards[p]);
        } else {
          og.controlled[v] = 1;
          for (const auto& a : acts) og.options[v].emplace_back(a.target, a.rewards[p]);
        }
      }
      auto res = policy_iterate(og, g.lambda, /*maximize=*/false);
      val = std::move(res.value);
      coalition_policy = std::move(res.policy);
      // One strict improvement round for p against the response values.
      bool improved = false;
      for (int v = 0; v < V; ++v) {
        if (g.vertices[v].owner != p) continue;
        const auto& acts = g.vertices[v].actions;
        Rat incumbent = val[v];
        int pick = -1;
        for (int a = 0; a < static_cast<int>(acts.size()); ++a) {
          Rat q = acts[a].rewards[p] + g.lambda * val[acts[a].target];
          if (q > incumbent) {
            incumbent = q;
            pick = a;
          }
        }
        if (pick >= 0) {
          sigma[v] = pick;
          improved = true;
        }
      }
      if (!improved) break;
    }
    out.value[p] = std::move(val);
    out.policy[p].resize(V);
    for (int v = 0; v < V; ++v)
      out.policy[p][v] = g.vertices[v].owner == p ? sigma[v] : coalition_policy[v];
  }
  return out;
}

BestResponseReport best_response_value(const Game& g, const Profile& prof, int player) {
  validate_game(g);
  validate_profile(prof, g);
  if (player < 0 || player >= g.num_players())
    throw ValidationError("unknown player index " + std::to_string(player));
  const int K = prof.K;

  BestResponseReport rep;
  rep.player = player;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.vertices[v].initial > 0) rep.starts.push_back(v);

  // Closure of the initial states under p's free choices and everyone else's
  // frozen moves, over (memory, vertex) states.
  auto key = [K](int m, int v) { return v * K + m; };
  std::vector<int> index(static_cast<std::size_t>(g.num_vertices()) * K, -1);
  std::vector<StateLabel> states;
  std::vector<int> queue;
  auto discover = [&](int m, int v) {
    int& slot = index[key(m, v)];
    if (slot < 0) {
      slot = static_cast<int>(states.size());
      states.push_back(StateLabel{m, v});
      queue.push_back(slot);
    }
    return slot;
  };
  for (int v : rep.starts) discover(0, v);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    StateLabel s = states[queue[qi]];
    const ProfileEntry* e = prof.find(s.memory, s.vertex);
    if (g.vertices[s.vertex].owner == player) {
      int nm = e ? e->next_memory : s.memory;
      for (const auto& a : g.vertices[s.vertex].actions) discover(nm, a.target);
    } else {
      if (!e)
        throw ValidationError("profile is undefined at (memory " + std::to_string(s.memory) +
                              ", vertex '" + g.vertices[s.vertex].id +
                              "'), needed for a best response");
      discover(e->next_memory, g.vertices[s.vertex].actions[e->action].target);
    }
  }

  // Best response = one-controller problem over the closure.
  OptionGraph og;
  og.options.resize(states.size());
  og.controlled.assign(states.size(), 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    StateLabel s = states[i];
    const ProfileEntry* e = prof.find(s.memory, s.vertex);
    const auto& acts = g.vertices[s.vertex].actions;
    if (g.vertices[s.vertex].owner == player) {
      og.controlled[i] = 1;
      int nm = e ? e->next_memory : s.memory;
      for (const auto& a : acts)
        og.options[i].emplace_back(index[key(nm, a.target)], a.rewards[player]);
    } else {
      og.options[i].emplace_back(index[key(e->next_memory, acts[e->action].target)],
                                 acts[e->action].rewards[player]);
    }
  }
  auto res = policy_iterate(og, g.lambda, /*maximize=*/true);

  rep.weighted = 0;
  for (int v : rep.starts) {
    const Rat& val = res.value[index[key(0, v)]];
    rep.start_value.push_back(val);
    rep.weighted += g.vertices[v].initial * val;
  }
  for (std::size_t i = 0; i < states.size(); ++i)
    if (og.controlled[i])
      rep.policy[{states[i].memory, states[i].vertex}] = res.policy[i];
  return rep;
}

}  // namespace dsg

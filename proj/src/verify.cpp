#include "dsgames/verify.hpp"

#include <map>

#include "eval.hpp"

namespace dsg {

int TailTable::find(int memory, int vertex) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].memory == memory && states[i].vertex == vertex) return static_cast<int>(i);
  return -1;
}

TailTable tail_values(const Game& g, const Profile& prof) {
  validate_game(g);
  validate_profile(prof, g);
  TailTable t;
  std::map<std::pair<int, int>, int> index;
  // Deterministic discovery: walk from each initial vertex in order; the
  // profile is a function, so every state has exactly one successor.
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!(g.vertices[v].initial > 0)) continue;
    StateLabel cur{0, v};
    while (!index.count({cur.memory, cur.vertex})) {
      const ProfileEntry* e = prof.find(cur.memory, cur.vertex);
      if (!e)
        throw ValidationError("profile is undefined at (memory " + std::to_string(cur.memory) +
                              ", vertex '" + g.vertices[cur.vertex].id + "')");
      index[{cur.memory, cur.vertex}] = static_cast<int>(t.states.size());
      t.states.push_back(cur);
      cur = StateLabel{e->next_memory, g.vertices[cur.vertex].actions[e->action].target};
    }
  }
  // Solve the functional-graph recurrence per player.
  std::vector<int> succ(t.states.size());
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    const ProfileEntry* e = prof.find(t.states[i].memory, t.states[i].vertex);
    succ[i] = index.at(
        {e->next_memory, g.vertices[t.states[i].vertex].actions[e->action].target});
  }
  t.tail.assign(t.states.size(), std::vector<Rat>(g.num_players()));
  std::vector<Rat> reward(t.states.size());
  for (int p = 0; p < g.num_players(); ++p) {
    for (std::size_t i = 0; i < t.states.size(); ++i) {
      const ProfileEntry* e = prof.find(t.states[i].memory, t.states[i].vertex);
      reward[i] = g.vertices[t.states[i].vertex].actions[e->action].rewards[p];
    }
    auto vals = detail::eval_functional(succ, reward, g.lambda);
    for (std::size_t i = 0; i < t.states.size(); ++i) t.tail[i][p] = vals[i];
  }
  return t;
}

VerifyReport rp_check(const Game& g, const Profile& prof, Mode mode, const PunishTable* pt) {
  PunishTable local;
  if (!pt) {
    local = punishment_values(g);
    pt = &local;
  }
  TailTable tails = tail_values(g, prof);

  VerifyReport rep;
  rep.mode = mode;
  rep.pass = true;
  rep.weighted_payoffs.assign(g.num_players(), Rat(0));
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!(g.vertices[v].initial > 0)) continue;
    PlayReport pr;
    pr.start = v;
    pr.trace = induced_play_trace(g, prof, StateLabel{0, v});
    pr.payoffs = lasso_payoff(g, pr.trace.lasso);
    for (int p = 0; p < g.num_players(); ++p)
      rep.weighted_payoffs[p] += g.vertices[v].initial * pr.payoffs[p];

    for (std::size_t j = 0; j < pr.trace.states.size(); ++j) {
      StateLabel s = pr.trace.states[j];
      PositionCheck c;
      c.start = v;
      c.position = static_cast<int>(j);
      c.state = s;
      c.owner = g.vertices[s.vertex].owner;
      c.tail = tails.tail[tails.find(s.memory, s.vertex)][c.owner];
      c.punish = pt->value[c.owner][s.vertex];
      c.exempt = mode == Mode::Leader && c.owner == g.leader;
      c.ok = c.exempt || c.tail >= c.punish;
      if (!c.ok) rep.pass = false;
      rep.checks.push_back(std::move(c));
    }
    rep.plays.push_back(std::move(pr));
  }
  return rep;
}

NashReport classic_nash_check(const Game& g, const Profile& prof) {
  TailTable tails = tail_values(g, prof);
  NashReport rep;
  rep.pass = true;
  rep.on_path.assign(g.num_players(), Rat(0));
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!(g.vertices[v].initial > 0)) continue;
    int i = tails.find(0, v);
    for (int p = 0; p < g.num_players(); ++p)
      rep.on_path[p] += g.vertices[v].initial * tails.tail[i][p];
  }
  for (int p = 0; p < g.num_players(); ++p) {
    rep.details.push_back(best_response_value(g, prof, p));
    rep.best_response.push_back(rep.details.back().weighted);
    if (rep.best_response[p] != rep.on_path[p]) rep.pass = false;
  }
  return rep;
}

}  // namespace dsg

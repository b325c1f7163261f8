#include "dsgames/search.hpp"

#include <algorithm>
#include <map>

#include "eval.hpp"

namespace dsg {

namespace {

// Best value player p could reach from each vertex if every vertex cooperated
// with her — a sound upper bound on any tail of any play. Exact one-controller
// policy iteration.
std::vector<Rat> cooperative_values(const Game& g, int p) {
  detail::OptionGraph og;
  og.options.resize(g.num_vertices());
  og.controlled.assign(g.num_vertices(), 1);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (const auto& a : g.vertices[v].actions)
      og.options[v].emplace_back(a.target, a.rewards[p]);
  return detail::policy_iterate(og, g.lambda, /*maximize=*/true).value;
}

// The always-feasible baseline: every vertex plays its owner's own optimal
// action from the punishment table (and never moves the memory). Compliance
// tails then dominate punishment values everywhere, in both modes.
Profile fallback_profile(const Game& g, const PunishTable& punish) {
  Profile p;
  p.K = 1;
  for (int v = 0; v < g.num_vertices(); ++v)
    p.entries.push_back(ProfileEntry{0, v, punish.policy[g.vertices[v].owner][v], 0});
  p.normalize();
  return p;
}

struct Searcher {
  const Game& g;
  int K;
  Mode mode;
  bool threshold_mode;

  int P, V, L, NS;
  PunishTable punish;
  std::vector<std::vector<Rat>> coop;  // [player][vertex]
  std::vector<Rat> lampow;

  std::vector<int> start_vs;   // initial vertices, ascending
  std::vector<Rat> start_w;    // their weights
  std::vector<Rat> pending_ub; // pending_ub[s] = sum_{s'>=s} w * coop[L][start]

  std::vector<int> act, nxt;   // decision per state, -1 undecided
  int used_mem = 1;

  struct Pos {
    int state;
    int vertex, action, owner;
    bool constrained;
    Rat S;        // sum_{i=j..d} t_owner(i) * lambda^i, absolute weights
    Rat rscaled;  // punish[owner][vertex] * lambda^j
  };
  struct Play {
    std::vector<Pos> pos;
    Rat leaderS = 0;  // sum over positions of t_leader * lambda^i
  };
  std::vector<Play> plays;
  int cs = 0;
  int frontier = -1;
  Rat closed_sum = 0;
  std::vector<int> stamp, posat;  // per state: which play visited it, and where

  Rat best;
  bool have_witness = false;
  Profile witness;
  bool done = false;
  SearchStats stats;

  Searcher(const Game& game, int k, Mode md, bool thresh)
      : g(game), K(k), mode(md), threshold_mode(thresh) {
    validate_game(g);
    if (K < 1) throw ValidationError("memory bound K must be at least 1");
    P = g.num_players();
    V = g.num_vertices();
    L = g.leader;
    NS = V * K;
    punish = punishment_values(g);
    coop.resize(P);
    for (int p = 0; p < P; ++p) coop[p] = cooperative_values(g, p);
    int maxlen = NS + 2;
    lampow.resize(maxlen + 1);
    lampow[0] = 1;
    for (int i = 1; i <= maxlen; ++i) lampow[i] = lampow[i - 1] * g.lambda;
    for (int v = 0; v < V; ++v)
      if (g.vertices[v].initial > 0) {
        start_vs.push_back(v);
        start_w.push_back(g.vertices[v].initial);
      }
    pending_ub.assign(start_vs.size() + 1, Rat(0));
    for (int s = static_cast<int>(start_vs.size()) - 1; s >= 0; --s)
      pending_ub[s] = pending_ub[s + 1] + start_w[s] * coop[L][start_vs[s]];
    act.assign(NS, -1);
    nxt.assign(NS, -1);
    stamp.assign(NS, -1);
    posat.assign(NS, -1);
    plays.resize(start_vs.size());
  }

  Profile snapshot() const {
    Profile p;
    p.K = K;
    for (int s = 0; s < NS; ++s)
      if (act[s] >= 0) p.entries.push_back(ProfileEntry{s % K, s / K, act[s], nxt[s]});
    p.normalize();
    return p;
  }

  void complete_candidate() {
    Rat val = closed_sum;
    if (threshold_mode) {
      if (val >= best) {
        witness = snapshot();
        have_witness = true;
        done = true;
      }
      return;
    }
    if (val > best) {
      best = val;
      witness = snapshot();
      have_witness = true;
    } else if (val == best && !have_witness) {
      witness = snapshot();
      have_witness = true;
    }
  }

  // Exact feasibility and value of the just-closed play; cut is the position
  // of the first visit of the repeated state.
  void on_closure(int cut) {
    Play& pl = plays[cs];
    const int dlen = static_cast<int>(pl.pos.size());
    const int c = dlen - cut;
    // Players whose tails we need: constrained owners, plus the leader.
    std::vector<char> needed(P, 0);
    needed[L] = 1;
    for (const Pos& q : pl.pos)
      if (q.constrained) needed[q.owner] = 1;
    std::vector<Rat> tail(dlen + 1);
    Rat leader_tail0;
    for (int p = 0; p < P; ++p) {
      if (!needed[p]) continue;
      Rat period = 0;
      for (int i = 0; i < c; ++i)
        period += g.vertices[pl.pos[cut + i].vertex].actions[pl.pos[cut + i].action].rewards[p] *
                  lampow[i];
      tail[dlen] = period / (Rat(1) - lampow[c]);
      for (int j = dlen - 1; j >= 0; --j)
        tail[j] = g.vertices[pl.pos[j].vertex].actions[pl.pos[j].action].rewards[p] +
                  g.lambda * tail[j + 1];
      for (int j = 0; j < dlen; ++j) {
        const Pos& q = pl.pos[j];
        if (q.constrained && q.owner == p && tail[j] < punish.value[p][q.vertex]) {
          ++stats.constraint_prunes;
          return;
        }
      }
      if (p == L) leader_tail0 = tail[0];
    }
    Rat contrib = start_w[cs] * leader_tail0;
    closed_sum += contrib;
    if (cs + 1 == static_cast<int>(plays.size())) {
      complete_candidate();
    } else {
      Rat ub = closed_sum + pending_ub[cs + 1];
      if (ub < best || (ub == best && !threshold_mode && have_witness)) {
        ++stats.bound_prunes;
      } else {
        ++cs;
        int of = frontier;
        frontier = start_vs[cs] * K;
        dfs();
        frontier = of;
        --cs;
      }
    }
    closed_sum -= contrib;
  }

  void step_and_recurse() {
    const int s = frontier;
    const int v = s / K;
    const int a = act[s], nm = nxt[s];
    const Action& A = g.vertices[v].actions[a];
    const int nstate = A.target * K + nm;
    Play& pl = plays[cs];
    const int d = static_cast<int>(pl.pos.size());

    Rat tL = A.rewards[L] * lampow[d];
    pl.leaderS += tL;
    for (Pos& q : pl.pos)
      if (q.constrained) q.S += A.rewards[q.owner] * lampow[d];
    Pos np;
    np.state = s;
    np.vertex = v;
    np.action = a;
    np.owner = g.vertices[v].owner;
    np.constrained = !(mode == Mode::Leader && np.owner == L);
    if (np.constrained) {
      np.S = A.rewards[np.owner] * lampow[d];
      np.rscaled = punish.value[np.owner][v] * lampow[d];
    }
    pl.pos.push_back(std::move(np));
    const int old_stamp = stamp[s], old_pos = posat[s];
    stamp[s] = cs;
    posat[s] = d;
    const int old_frontier = frontier;
    frontier = nstate;

    // Interval pruning. Any completion's tail from the new frontier is at
    // most the cooperative value of its vertex, so each open constraint j has
    // the exact upper bound (S_j + lambda^{d+1} coop) / lambda^j.
    const int nv = A.target;
    bool pruned = false;
    for (const Pos& q : pl.pos) {
      if (q.constrained && q.S + lampow[d + 1] * coop[q.owner][nv] < q.rscaled) {
        pruned = true;
        ++stats.constraint_prunes;
        break;
      }
    }
    if (!pruned) {
      Rat ub = closed_sum + start_w[cs] * (pl.leaderS + lampow[d + 1] * coop[L][nv]) +
               pending_ub[cs + 1];
      if (ub < best || (ub == best && !threshold_mode && have_witness)) {
        pruned = true;
        ++stats.bound_prunes;
      }
    }
    if (!pruned) dfs();

    frontier = old_frontier;
    stamp[s] = old_stamp;
    posat[s] = old_pos;
    pl.pos.pop_back();
    for (Pos& q : pl.pos)
      if (q.constrained) q.S -= A.rewards[q.owner] * lampow[d];
    pl.leaderS -= tL;
  }

  void dfs() {
    if (done) return;
    if (stamp[frontier] == cs) {
      on_closure(posat[frontier]);
      return;
    }
    if (act[frontier] >= 0) {
      step_and_recurse();
      return;
    }
    // Branch: assign a choice at the frontier state. Fresh memory ids are
    // canonical — only the smallest unused id may be introduced.
    const int v = frontier / K;
    const int acount = static_cast<int>(g.vertices[v].actions.size());
    const int memlim = std::min(used_mem + 1, K);
    for (int a = 0; a < acount && !done; ++a) {
      for (int nm = 0; nm < memlim && !done; ++nm) {
        const bool fresh = nm == used_mem;
        act[frontier] = a;
        nxt[frontier] = nm;
        if (fresh) ++used_mem;
        ++stats.nodes;
        dfs();
        if (fresh) --used_mem;
        act[frontier] = -1;
        nxt[frontier] = -1;
      }
    }
  }

  void run() {
    if (start_vs.empty()) throw ValidationError("initial distribution has no support");
    cs = 0;
    frontier = start_vs[0] * K;
    dfs();
  }
};

}  // namespace

SearchResult solve_optimal(const Game& g, int K, Mode mode) {
  Searcher s(g, K, mode, /*threshold=*/false);
  // Seed the incumbent with the always-feasible baseline so bound pruning has
  // traction from the start; the witness itself is rediscovered canonically.
  Profile fb = fallback_profile(g, s.punish);
  TailTable tails = tail_values(g, fb);
  Rat seed = 0;
  for (std::size_t i = 0; i < s.start_vs.size(); ++i)
    seed += s.start_w[i] * tails.tail[tails.find(0, s.start_vs[i])][g.leader];
  s.best = seed;
  s.run();
  if (!s.have_witness)
    throw std::logic_error("internal error: no witness found at the optimal value");
  return SearchResult{s.best, std::move(s.witness), s.stats};
}

ThresholdResult decide_threshold(const Game& g, int K, Mode mode, const Rat& t) {
  Searcher s(g, K, mode, /*threshold=*/true);
  s.best = t;
  s.run();
  ThresholdResult res;
  res.yes = s.have_witness;
  if (s.have_witness) res.witness = std::move(s.witness);
  res.stats = s.stats;
  return res;
}

Rat brute_force_oracle(const Game& g, int K, Mode mode) {
  validate_game(g);
  if (K < 1) throw ValidationError("memory bound K must be at least 1");
  int max_actions = 0;
  for (const auto& v : g.vertices)
    max_actions = std::max(max_actions, static_cast<int>(v.actions.size()));
  if (g.num_vertices() * K > 12 || max_actions > 3)
    throw ValidationError(
        "brute_force_oracle guard: requires |V|*K <= 12 and at most 3 actions per vertex");

  PunishTable punish = punishment_values(g);
  std::vector<int> starts;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.vertices[v].initial > 0) starts.push_back(v);

  // Plain exhaustive enumeration of canonical profiles on reachable states;
  // feasibility and value are delegated to the verifier, keeping this path
  // independent of the branch-and-bound machinery.
  std::map<std::pair<int, int>, std::pair<int, int>> decided;
  std::optional<Rat> best;

  auto evaluate_complete = [&]() {
    Profile prof;
    prof.K = K;
    for (const auto& [sv, an] : decided)
      prof.entries.push_back(ProfileEntry{sv.first, sv.second, an.first, an.second});
    prof.normalize();
    VerifyReport rep = rp_check(g, prof, mode, &punish);
    if (!rep.pass) return;
    const Rat& val = rep.weighted_payoffs[g.leader];
    if (!best || val > *best) best = val;
  };

  // Walks the play of start index si from state (m, v); `trail` holds the
  // states already visited on this play.
  auto walk = [&](auto&& self, std::size_t si, int m, int v, std::vector<std::pair<int, int>>& trail,
                  int used) -> void {
    if (std::find(trail.begin(), trail.end(), std::pair(m, v)) != trail.end()) {
      // Play closed.
      if (si + 1 == starts.size()) {
        evaluate_complete();
      } else {
        std::vector<std::pair<int, int>> next_trail;
        self(self, si + 1, 0, starts[si + 1], next_trail, used);
      }
      return;
    }
    trail.emplace_back(m, v);
    auto it = decided.find({m, v});
    if (it != decided.end()) {
      auto [a, nm] = it->second;
      self(self, si, nm, g.vertices[v].actions[a].target, trail, used);
    } else {
      const int acount = static_cast<int>(g.vertices[v].actions.size());
      const int memlim = std::min(used + 1, K);
      for (int a = 0; a < acount; ++a) {
        for (int nm = 0; nm < memlim; ++nm) {
          decided[{m, v}] = {a, nm};
          self(self, si, nm, g.vertices[v].actions[a].target, trail,
               std::max(used, nm + 1));
          decided.erase({m, v});
        }
      }
    }
    trail.pop_back();
  };

  if (starts.empty()) throw ValidationError("initial distribution has no support");
  std::vector<std::pair<int, int>> trail;
  walk(walk, 0, 0, starts[0], trail, 1);
  if (!best) throw std::logic_error("internal error: oracle found no feasible profile");
  return *best;
}

}  // namespace dsg

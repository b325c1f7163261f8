#include "dsgames/lasso.hpp"

namespace dsg {

void validate_lasso(const Game& g, const Lasso& l) {
  if (l.cycle.empty()) throw ValidationError("lasso cycle must be nonempty");
  auto check_step = [&](const std::pair<int, int>& s) {
    if (s.first < 0 || s.first >= g.num_vertices())
      throw ValidationError("lasso references unknown vertex index " + std::to_string(s.first));
    if (s.second < 0 || s.second >= static_cast<int>(g.vertices[s.first].actions.size()))
      throw ValidationError("lasso references unknown action index " + std::to_string(s.second) +
                            " at vertex '" + g.vertices[s.first].id + "'");
  };
  for (const auto& s : l.prefix) check_step(s);
  for (const auto& s : l.cycle) check_step(s);
  auto target = [&](const std::pair<int, int>& s) {
    return g.vertices[s.first].actions[s.second].target;
  };
  for (std::size_t i = 0; i + 1 < l.prefix.size(); ++i)
    if (target(l.prefix[i]) != l.prefix[i + 1].first)
      throw ValidationError("lasso steps do not chain at prefix position " + std::to_string(i));
  if (!l.prefix.empty() && target(l.prefix.back()) != l.cycle.front().first)
    throw ValidationError("lasso prefix does not chain into the cycle");
  for (std::size_t i = 0; i + 1 < l.cycle.size(); ++i)
    if (target(l.cycle[i]) != l.cycle[i + 1].first)
      throw ValidationError("lasso steps do not chain at cycle position " + std::to_string(i));
  if (target(l.cycle.back()) != l.cycle.front().first)
    throw ValidationError("lasso cycle does not close");
}

std::vector<Rat> lasso_payoff(const Game& g, const Lasso& l) {
  validate_lasso(g, l);
  const int P = g.num_players();
  std::vector<Rat> total(P, Rat(0));
  std::vector<Rat> cyc(P, Rat(0));
  Rat pw = 1;
  for (const auto& [v, a] : l.prefix) {
    const auto& rew = g.vertices[v].actions[a].rewards;
    for (int p = 0; p < P; ++p) total[p] += rew[p] * pw;
    pw *= g.lambda;
  }
  // pw is now lambda^k.
  Rat cw = 1;
  for (const auto& [v, a] : l.cycle) {
    const auto& rew = g.vertices[v].actions[a].rewards;
    for (int p = 0; p < P; ++p) cyc[p] += rew[p] * cw;
    cw *= g.lambda;
  }
  // cw is lambda^c; the cycle repeats with ratio lambda^c.
  Rat factor = pw / (Rat(1) - cw);
  for (int p = 0; p < P; ++p) total[p] += cyc[p] * factor;
  return total;
}

Rat lasso_payoff_player(const Game& g, const Lasso& l, int player) {
  if (player < 0 || player >= g.num_players())
    throw ValidationError("unknown player index " + std::to_string(player));
  return lasso_payoff(g, l)[player];
}

}  // namespace dsg

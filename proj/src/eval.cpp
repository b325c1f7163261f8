#include "eval.hpp"

#include <stdexcept>

namespace dsg::detail {

std::vector<Rat> eval_functional(const std::vector<int>& succ, const std::vector<Rat>& reward,
                                 const Rat& lambda) {
  const int n = static_cast<int>(succ.size());
  std::vector<Rat> value(n, Rat(0));
  std::vector<signed char> color(n, 0);  // 0 fresh, 1 on current walk, 2 done
  std::vector<int> order(n, -1);         // position on the current walk
  std::vector<int> walk;

  for (int root = 0; root < n; ++root) {
    if (color[root] == 2) continue;
    walk.clear();
    int cur = root;
    while (color[cur] == 0) {
      color[cur] = 1;
      order[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      cur = succ[cur];
    }
    std::size_t stem_end = walk.size();
    if (color[cur] == 1) {
      // Found a new cycle: walk[order[cur]..] closes back on cur.
      int k = order[cur];
      int len = static_cast<int>(walk.size()) - k;
      Rat period = 0, pw = 1;
      for (int i = 0; i < len; ++i) {
        period += reward[walk[k + i]] * pw;
        pw *= lambda;
      }
      // pw is lambda^len here.
      value[cur] = period / (Rat(1) - pw);
      color[cur] = 2;
      // The remaining cycle members follow by stepping backwards around the
      // cycle: V(prev) = r(prev) + lambda * V(next).
      for (int i = static_cast<int>(walk.size()) - 1; i > k; --i) {
        value[walk[i]] = reward[walk[i]] + lambda * value[succ[walk[i]]];
        color[walk[i]] = 2;
      }
      stem_end = static_cast<std::size_t>(k);
    }
    // Unwind the stem (walk[0..stem_end)): successors are all resolved.
    for (std::size_t i = stem_end; i-- > 0;) {
      value[walk[i]] = reward[walk[i]] + lambda * value[succ[walk[i]]];
      color[walk[i]] = 2;
    }
  }
  return value;
}

PolicyResult policy_iterate(const OptionGraph& g, const Rat& lambda, bool maximize) {
  const int n = static_cast<int>(g.options.size());
  for (int s = 0; s < n; ++s) {
    if (g.options[s].empty()) throw std::logic_error("policy_iterate: state without options");
    if (!g.controlled[s] && g.options[s].size() != 1)
      throw std::logic_error("policy_iterate: uncontrolled state with several options");
  }
  PolicyResult res;
  res.policy.assign(n, 0);
  std::vector<int> succ(n);
  std::vector<Rat> reward(n);
  for (;;) {
    for (int s = 0; s < n; ++s) {
      const auto& opt = g.options[s][res.policy[s]];
      succ[s] = opt.first;
      reward[s] = opt.second;
    }
    res.value = eval_functional(succ, reward, lambda);
    bool changed = false;
    for (int s = 0; s < n; ++s) {
      if (!g.controlled[s]) continue;
      Rat incumbent = res.value[s];
      int pick = -1;
      for (int k = 0; k < static_cast<int>(g.options[s].size()); ++k) {
        const auto& opt = g.options[s][k];
        Rat q = opt.second + lambda * res.value[opt.first];
        if (maximize ? q > incumbent : q < incumbent) {
          incumbent = q;
          pick = k;
        }
      }
      if (pick >= 0) {
        res.policy[s] = pick;
        changed = true;
      }
    }
    if (!changed) return res;
  }
}

}  // namespace dsg::detail

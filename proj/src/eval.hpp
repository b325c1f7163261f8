#pragma once

#include <utility>
#include <vector>

#include "dsgames/rational.hpp"

// Internal exact-evaluation helpers shared by the solver modules. A joint
// positional strategy turns the game graph into a functional graph (one
// successor per state), where discounted values satisfy
// V(i) = r(i) + lambda * V(succ(i)) and can be solved exactly: find each
// cycle, sum one period as a geometric series, then back-propagate along the
// stems.
namespace dsg::detail {

std::vector<Rat> eval_functional(const std::vector<int>& succ, const std::vector<Rat>& reward,
                                 const Rat& lambda);

// One-controller decision graph: each state offers one or more
// (successor, reward) options; states that are not controlled must offer
// exactly one option.
struct OptionGraph {
  std::vector<std::vector<std::pair<int, Rat>>> options;
  std::vector<char> controlled;
};

struct PolicyResult {
  std::vector<Rat> value;
  std::vector<int> policy;  // option index per state
};

// Exact policy iteration: start from option 0 everywhere, switch a controlled
// state only on strict improvement (first-best tie-break), repeat until
// stable. Deterministic; terminates because each round strictly improves the
// value vector and there are finitely many policies.
PolicyResult policy_iterate(const OptionGraph& g, const Rat& lambda, bool maximize);

}  // namespace dsg::detail

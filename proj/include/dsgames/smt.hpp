#pragma once

#include "dsgames/profile.hpp"

namespace dsg {

// Renders the bounded-memory feasibility question "is there a
// reward-and-punish profile with at most K memory modes whose leader value is
// at least `threshold`" as a quantifier-free SMT-LIB 2 document over linear
// integer/real arithmetic. The document is satisfiable exactly when such a
// profile exists, and a model encodes one: an Int choice per machine state
// (action and next memory), Bool reachability markers, and Real tail values
// satisfying the discounted recurrences, with the owner-compliance
// constraints guarded on reachability (mirroring the verifier, leader exempt
// in leader mode). Byte-deterministic output.
std::string export_constraints(const Game& g, int K, Mode mode, const Rat& threshold);

}  // namespace dsg

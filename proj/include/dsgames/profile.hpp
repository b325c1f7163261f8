#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsgames/lasso.hpp"

namespace dsg {

// Which deviation constraints a reward-and-punish profile must satisfy:
// in Nash mode every player is held to their punishment value, in leader
// mode every player except the leader (the leader commits, the others are
// rational followers).
enum class Mode { Nash, Leader };

Mode mode_parse(const std::string& s);  // "nash" | "leader"
std::string mode_str(Mode m);

// One row of a strategy-machine table: in memory mode `memory` at `vertex`,
// play `action` and switch to `next_memory`. Only rows for vertices the
// machine actually steers (all vertices — the machine is shared by all
// players) and states it can reach need to exist.
struct ProfileEntry {
  int memory = 0;
  int vertex = 0;       // vertex index
  int action = 0;       // action index at that vertex
  int next_memory = 0;
  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

// A bounded-memory strategy profile: one shared machine with at most K memory
// modes, initial mode 0, and a (possibly partial) table. The table must cover
// every state reachable from the initial vertices; operations that walk the
// profile raise ValidationError when they step on an undefined state.
struct Profile {
  int K = 1;
  std::vector<ProfileEntry> entries;

  // Pointer to the entry for (memory, vertex), or nullptr when undefined.
  const ProfileEntry* find(int memory, int vertex) const;
  // Sorts entries by (memory, vertex); duplicate keys raise ValidationError.
  void normalize();

  friend bool operator==(const Profile&, const Profile&) = default;
};

// Parses the JSON profile format:
//
//   {"K": 2,
//    "entries": [{"memory": 0, "vertex": "v1", "action": "go",
//                 "next_memory": 0}, ...]}
//
// Vertex/action names are resolved against g; K >= 1; memory ids must lie in
// [0, K). Duplicate (memory, vertex) rows are rejected.
Profile parse_profile(const std::string& text, const Game& g);

std::string render_profile(const Profile& p, const Game& g);

// Checks entry indices against g (used by parse_profile; call directly on
// programmatically built profiles).
void validate_profile(const Profile& p, const Game& g);

// The play obtained by running the machine from `start`, cut at the first
// repeated (memory, vertex) state; the prefix is minimal. Raises
// ValidationError when the walk reaches an undefined table state.
Lasso induced_play(const Game& g, const Profile& p, StateLabel start);

// Same walk, keeping the machine states: states[i] is the state at position i
// (|prefix| + |cycle| entries; the state after the last cycle step equals
// states[|prefix|]).
struct PlayTrace {
  Lasso lasso;
  std::vector<StateLabel> states;
};
PlayTrace induced_play_trace(const Game& g, const Profile& p, StateLabel start);

}  // namespace dsg

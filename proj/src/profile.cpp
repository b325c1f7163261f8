#include "dsgames/profile.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>

namespace dsg {

using nlohmann::json;

Mode mode_parse(const std::string& s) {
  if (s == "nash") return Mode::Nash;
  if (s == "leader") return Mode::Leader;
  throw ValidationError("unknown mode '" + s + "' (expected 'nash' or 'leader')");
}

std::string mode_str(Mode m) { return m == Mode::Nash ? "nash" : "leader"; }

const ProfileEntry* Profile::find(int memory, int vertex) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), std::pair(memory, vertex),
                             [](const ProfileEntry& e, const std::pair<int, int>& key) {
                               return std::pair(e.memory, e.vertex) < key;
                             });
  if (it != entries.end() && it->memory == memory && it->vertex == vertex) return &*it;
  return nullptr;
}

void Profile::normalize() {
  std::sort(entries.begin(), entries.end(), [](const ProfileEntry& a, const ProfileEntry& b) {
    return std::pair(a.memory, a.vertex) < std::pair(b.memory, b.vertex);
  });
  for (std::size_t i = 0; i + 1 < entries.size(); ++i)
    if (entries[i].memory == entries[i + 1].memory && entries[i].vertex == entries[i + 1].vertex)
      throw ValidationError("profile has duplicate entries for (memory " +
                            std::to_string(entries[i].memory) + ", vertex index " +
                            std::to_string(entries[i].vertex) + ")");
}

void validate_profile(const Profile& p, const Game& g) {
  if (p.K < 1) throw ValidationError("profile memory bound K must be at least 1");
  for (const auto& e : p.entries) {
    if (e.memory < 0 || e.memory >= p.K || e.next_memory < 0 || e.next_memory >= p.K)
      throw ValidationError("profile memory ids must lie in [0, K)");
    if (e.vertex < 0 || e.vertex >= g.num_vertices())
      throw ValidationError("profile references unknown vertex index " + std::to_string(e.vertex));
    if (e.action < 0 || e.action >= static_cast<int>(g.vertices[e.vertex].actions.size()))
      throw ValidationError("profile references unknown action index " + std::to_string(e.action) +
                            " at vertex '" + g.vertices[e.vertex].id + "'");
  }
}

Profile parse_profile(const std::string& text, const Game& g) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("profile file is not valid JSON at byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
  if (!doc.is_object() || !doc.contains("K") || !doc.contains("entries"))
    throw ValidationError("profile file must be an object with fields 'K' and 'entries'");
  for (const auto& item : doc.items())
    if (item.key() != "K" && item.key() != "entries")
      throw ValidationError("profile file: unknown field '" + item.key() + "'");
  if (!doc["K"].is_number_integer())
    throw ValidationError("profile field 'K' must be an integer");
  Profile p;
  p.K = doc["K"].get<int>();
  if (!doc["entries"].is_array())
    throw ValidationError("profile field 'entries' must be an array");
  for (const auto& je : doc["entries"]) {
    if (!je.is_object()) throw ValidationError("profile entries must be objects");
    for (const std::string k : {"memory", "vertex", "action", "next_memory"})
      if (!je.contains(k))
        throw ValidationError("profile entry is missing field '" + k + "'");
    for (const auto& item : je.items())
      if (item.key() != "memory" && item.key() != "vertex" && item.key() != "action" &&
          item.key() != "next_memory")
        throw ValidationError("profile entry: unknown field '" + item.key() + "'");
    ProfileEntry e;
    if (!je["memory"].is_number_integer() || !je["next_memory"].is_number_integer())
      throw ValidationError("profile entry memory ids must be integers");
    e.memory = je["memory"].get<int>();
    e.next_memory = je["next_memory"].get<int>();
    if (!je["vertex"].is_string())
      throw ValidationError("profile entry field 'vertex' must be a vertex id");
    e.vertex = g.vertex_index(je["vertex"].get<std::string>());
    if (e.vertex < 0)
      throw ValidationError("profile entry references unknown vertex '" +
                            je["vertex"].get<std::string>() + "'");
    if (!je["action"].is_string())
      throw ValidationError("profile entry field 'action' must be an action id");
    e.action = g.action_index(e.vertex, je["action"].get<std::string>());
    if (e.action < 0)
      throw ValidationError("profile entry references unknown action '" +
                            je["action"].get<std::string>() + "' at vertex '" +
                            je["vertex"].get<std::string>() + "'");
    p.entries.push_back(e);
  }
  p.normalize();
  validate_profile(p, g);
  return p;
}

std::string render_profile(const Profile& p, const Game& g) {
  Profile sorted = p;
  sorted.normalize();
  json doc;
  doc["K"] = sorted.K;
  json entries = json::array();
  for (const auto& e : sorted.entries) {
    json je;
    je["memory"] = e.memory;
    je["vertex"] = g.vertices[e.vertex].id;
    je["action"] = g.vertices[e.vertex].actions[e.action].id;
    je["next_memory"] = e.next_memory;
    entries.push_back(std::move(je));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

PlayTrace induced_play_trace(const Game& g, const Profile& p, StateLabel start) {
  if (start.vertex < 0 || start.vertex >= g.num_vertices())
    throw ValidationError("play start references unknown vertex index " +
                          std::to_string(start.vertex));
  if (start.memory < 0 || start.memory >= p.K)
    throw ValidationError("play start memory id must lie in [0, K)");
  PlayTrace out;
  std::map<std::pair<int, int>, int> seen;  // state -> position of first visit
  StateLabel cur = start;
  std::vector<std::pair<int, int>> steps;
  for (;;) {
    auto [it, fresh] = seen.try_emplace({cur.memory, cur.vertex}, static_cast<int>(steps.size()));
    if (!fresh) {
      int cut = it->second;
      out.lasso.prefix.assign(steps.begin(), steps.begin() + cut);
      out.lasso.cycle.assign(steps.begin() + cut, steps.end());
      return out;
    }
    const ProfileEntry* e = p.find(cur.memory, cur.vertex);
    if (!e)
      throw ValidationError("profile is undefined at (memory " + std::to_string(cur.memory) +
                            ", vertex '" + g.vertices[cur.vertex].id + "')");
    out.states.push_back(cur);
    steps.emplace_back(cur.vertex, e->action);
    cur = StateLabel{e->next_memory, g.vertices[cur.vertex].actions[e->action].target};
  }
}

Lasso induced_play(const Game& g, const Profile& p, StateLabel start) {
  return induced_play_trace(g, p, start).lasso;
}

}  // namespace dsg

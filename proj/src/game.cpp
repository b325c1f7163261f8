#include "dsgames/game.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace dsg {

using nlohmann::json;

int Game::player_index(const std::string& id) const {
  for (int i = 0; i < num_players(); ++i)
    if (players[i] == id) return i;
  return -1;
}

int Game::vertex_index(const std::string& id) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices[i].id == id) return i;
  return -1;
}

int Game::action_index(int v, const std::string& id) const {
  const auto& acts = vertices[v].actions;
  for (int i = 0; i < static_cast<int>(acts.size()); ++i)
    if (acts[i].id == id) return i;
  return -1;
}

Rat Game::max_abs_reward() const {
  Rat m = 0;
  for (const auto& v : vertices)
    for (const auto& a : v.actions)
      for (const auto& r : a.rewards) {
        Rat x = abs(r);
        if (x > m) m = x;
      }
  return m;
}

Rat Game::payoff_bound() const { return max_abs_reward() / (Rat(1) - lambda); }

bool Game::operator==(const Game& o) const {
  if (players != o.players || leader != o.leader || lambda != o.lambda) return false;
  if (vertices.size() != o.vertices.size()) return false;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Vertex &a = vertices[i], &b = o.vertices[i];
    if (a.id != b.id || a.owner != b.owner || a.initial != b.initial) return false;
    if (a.actions.size() != b.actions.size()) return false;
    for (std::size_t j = 0; j < a.actions.size(); ++j) {
      const Action &x = a.actions[j], &y = b.actions[j];
      if (x.id != y.id || x.target != y.target || x.rewards != y.rewards) return false;
    }
  }
  return true;
}

void validate_game(const Game& g) {
  if (g.players.empty()) throw ValidationError("game must declare at least one player");
  {
    std::set<std::string> seen;
    for (const auto& p : g.players)
      if (!seen.insert(p).second) throw ValidationError("duplicate player id '" + p + "'");
  }
  if (g.leader < 0 || g.leader >= g.num_players())
    throw ValidationError("leader must be one of the declared players");
  if (!(g.lambda > 0 && g.lambda < 1))
    throw ValidationError("discount factor lambda must satisfy 0 < lambda < 1, got " +
                          rat_str(g.lambda));
  if (g.vertices.empty()) throw ValidationError("game must declare at least one vertex");
  {
    std::set<std::string> seen;
    for (const auto& v : g.vertices)
      if (!seen.insert(v.id).second) throw ValidationError("duplicate vertex id '" + v.id + "'");
  }
  Rat total = 0;
  for (const auto& v : g.vertices) {
    if (v.owner < 0 || v.owner >= g.num_players())
      throw ValidationError("vertex '" + v.id + "' has an unknown owner");
    if (v.initial < 0 || v.initial > 1)
      throw ValidationError("initial distribution weight of vertex '" + v.id +
                            "' must lie in [0,1], got " + rat_str(v.initial));
    total += v.initial;
    if (v.actions.empty())
      throw ValidationError("vertex '" + v.id + "' has no actions (sinks are not allowed)");
    std::set<std::string> act_seen;
    for (const auto& a : v.actions) {
      if (!act_seen.insert(a.id).second)
        throw ValidationError("duplicate action id '" + a.id + "' at vertex '" + v.id + "'");
      if (a.target < 0 || a.target >= g.num_vertices())
        throw ValidationError("action '" + a.id + "' at vertex '" + v.id +
                              "' has a dangling target");
      if (static_cast<int>(a.rewards.size()) != g.num_players())
        throw ValidationError("action '" + a.id + "' at vertex '" + v.id +
                              "' must carry one reward per player");
    }
  }
  if (total != 1)
    throw ValidationError("initial distribution weights must sum to 1, got " + rat_str(total));
}

namespace {

Rat rat_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) {
    Rat r;
    mpz_set_ui(mpq_numref(r.get_mpq_t()), static_cast<unsigned long>(j.get<std::uint64_t>()));
    return r;
  }
  throw ValidationError(where + ": rationals must be \"p/q\" strings or exact integers");
}

void require_keys(const json& j, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const std::string& where) {
  for (const auto& item : j.items()) {
    if (!required.count(item.key()) && !optional.count(item.key()))
      throw ValidationError(where + ": unknown field '" + item.key() + "'");
  }
  for (const auto& k : required)
    if (!j.contains(k)) throw ValidationError(where + ": missing field '" + k + "'");
}

}  // namespace

Game parse_game(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("game file is not valid JSON at byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw ValidationError("game file: top level must be an object");
  require_keys(doc, {"players", "leader", "lambda", "vertices"}, {}, "game file");

  Game g;
  if (!doc["players"].is_array()) throw ValidationError("'players' must be an array of ids");
  for (const auto& p : doc["players"]) {
    if (!p.is_string()) throw ValidationError("'players' must be an array of ids");
    g.players.push_back(p.get<std::string>());
  }
  if (!doc["leader"].is_string()) throw ValidationError("'leader' must be a player id");
  g.leader = g.player_index(doc["leader"].get<std::string>());
  if (g.leader < 0)
    throw ValidationError("leader '" + doc["leader"].get<std::string>() +
                          "' is not a declared player");
  g.lambda = rat_from_json(doc["lambda"], "'lambda'");

  if (!doc["vertices"].is_array()) throw ValidationError("'vertices' must be an array");
  // First pass: collect ids so targets can be resolved in one sweep.
  std::vector<std::string> vertex_ids;
  for (const auto& jv : doc["vertices"]) {
    if (!jv.is_object() || !jv.contains("id") || !jv["id"].is_string())
      throw ValidationError("every vertex needs a string 'id'");
    vertex_ids.push_back(jv["id"].get<std::string>());
  }
  auto vertex_id_index = [&](const std::string& id) -> int {
    for (std::size_t i = 0; i < vertex_ids.size(); ++i)
      if (vertex_ids[i] == id) return static_cast<int>(i);
    return -1;
  };

  for (const auto& jv : doc["vertices"]) {
    const std::string where = "vertex '" + jv["id"].get<std::string>() + "'";
    require_keys(jv, {"id", "owner", "actions"}, {"initial"}, where);
    Vertex v;
    v.id = jv["id"].get<std::string>();
    if (!jv["owner"].is_string()) throw ValidationError(where + ": 'owner' must be a player id");
    v.owner = g.player_index(jv["owner"].get<std::string>());
    if (v.owner < 0)
      throw ValidationError(where + ": unknown owner '" + jv["owner"].get<std::string>() + "'");
    v.initial = jv.contains("initial") ? rat_from_json(jv["initial"], where + " 'initial'")
                                       : Rat(0);
    if (!jv["actions"].is_array()) throw ValidationError(where + ": 'actions' must be an array");
    for (const auto& ja : jv["actions"]) {
      if (!ja.is_object()) throw ValidationError(where + ": every action must be an object");
      const std::string awhere = where + " action";
      require_keys(ja, {"id", "target", "rewards"}, {}, awhere);
      Action a;
      if (!ja["id"].is_string()) throw ValidationError(awhere + ": 'id' must be a string");
      a.id = ja["id"].get<std::string>();
      if (!ja["target"].is_string())
        throw ValidationError(awhere + " '" + a.id + "': 'target' must be a vertex id");
      a.target = vertex_id_index(ja["target"].get<std::string>());
      if (a.target < 0)
        throw ValidationError(awhere + " '" + a.id + "': dangling target '" +
                              ja["target"].get<std::string>() + "'");
      if (!ja["rewards"].is_object())
        throw ValidationError(awhere + " '" + a.id + "': 'rewards' must map player ids to rationals");
      a.rewards.assign(g.num_players(), Rat(0));
      std::vector<bool> have(g.num_players(), false);
      for (const auto& item : ja["rewards"].items()) {
        int p = g.player_index(item.key());
        if (p < 0)
          throw ValidationError(awhere + " '" + a.id + "': reward entry for unknown player '" +
                                item.key() + "'");
        a.rewards[p] = rat_from_json(item.value(), awhere + " '" + a.id + "' reward");
        have[p] = true;
      }
      for (int p = 0; p < g.num_players(); ++p)
        if (!have[p])
          throw ValidationError(awhere + " '" + a.id + "': missing reward entry for player '" +
                                g.players[p] + "'");
      v.actions.push_back(std::move(a));
    }
    g.vertices.push_back(std::move(v));
  }

  validate_game(g);
  return g;
}

std::string render_game(const Game& g) {
  json doc;
  doc["players"] = g.players;
  doc["leader"] = g.players[g.leader];
  doc["lambda"] = rat_str(g.lambda);
  json verts = json::array();
  for (const auto& v : g.vertices) {
    json jv;
    jv["id"] = v.id;
    jv["owner"] = g.players[v.owner];
    jv["initial"] = rat_str(v.initial);
    json acts = json::array();
    for (const auto& a : v.actions) {
      json ja;
      ja["id"] = a.id;
      ja["target"] = g.vertices[a.target].id;
      json rew;
      for (int p = 0; p < g.num_players(); ++p) rew[g.players[p]] = rat_str(a.rewards[p]);
      ja["rewards"] = rew;
      acts.push_back(std::move(ja));
    }
    jv["actions"] = std::move(acts);
    verts.push_back(std::move(jv));
  }
  doc["vertices"] = std::move(verts);
  return doc.dump(2) + "\n";
}

Game scale_game(const Game& g, const Rat& c) {
  if (!(c > 0)) throw ValidationError("scale factor must be positive, got " + rat_str(c));
  Game out = g;
  for (auto& v : out.vertices)
    for (auto& a : v.actions)
      for (auto& r : a.rewards) r *= c;
  return out;
}

}  // namespace dsg

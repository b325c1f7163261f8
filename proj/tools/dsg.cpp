#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsgames/generators.hpp"
#include "dsgames/search.hpp"
#include "dsgames/smt.hpp"
#include "dsgames/verify.hpp"

namespace {

using dsg::Game;
using dsg::Mode;
using dsg::Profile;
using dsg::Rat;

struct Output {
  bool json = false;
  bool approx = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dsg::ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dsg::ParseError(path + ": cannot open file for writing");
  out << text;
}

// Re-raise parse/validation problems with the file name prepended so
// diagnostics always name their source.
template <typename F>
auto with_source(const std::string& path, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const dsg::ParseError& e) {
    throw dsg::ParseError(path + ": " + e.what());
  } catch (const dsg::ValidationError& e) {
    throw dsg::ValidationError(path + ": " + e.what());
  }
}

Game load_game(const std::string& path) {
  const std::string text = read_file(path);
  return with_source(path, [&] { return dsg::parse_game(text); });
}

Profile load_profile(const std::string& path, const Game& g) {
  const std::string text = read_file(path);
  return with_source(path, [&] { return dsg::parse_profile(text, g); });
}

dsg::CnfFormula load_cnf(const std::string& path) {
  const std::string text = read_file(path);
  return with_source(path, [&] { return dsg::parse_dimacs(text); });
}

std::string approx_str(const Rat& r) {
  std::ostringstream ss;
  ss << dsg::rat_approx(r);
  return ss.str();
}

// Exact rational text, optionally followed by a display-only decimal.
std::string show(const Rat& r, const Output& o) {
  std::string s = dsg::rat_str(r);
  if (o.approx) s += " (≈" + approx_str(r) + ")";
  return s;
}

std::string play_str(const Game& g, const dsg::Lasso& l) {
  std::string s;
  for (const auto& step : l.prefix) {
    s += g.vertices[step.first].id;
    s += "·";
  }
  if (l.cycle.size() == 1) {
    s += g.vertices[l.cycle.front().first].id;
    s += "^ω";
  } else {
    s += "(";
    for (std::size_t i = 0; i < l.cycle.size(); ++i) {
      if (i) s += "·";
      s += g.vertices[l.cycle[i].first].id;
    }
    s += ")^ω";
  }
  return s;
}

nlohmann::json lasso_json(const Game& g, const dsg::Lasso& l) {
  auto steps = [&](const std::vector<std::pair<int, int>>& part) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [v, a] : part)
      arr.push_back({{"vertex", g.vertices[v].id}, {"action", g.vertices[v].actions[a].id}});
    return arr;
  };
  return {{"prefix", steps(l.prefix)}, {"cycle", steps(l.cycle)}, {"text", play_str(g, l)}};
}

nlohmann::json payoffs_json(const Game& g, const std::vector<Rat>& v) {
  nlohmann::json obj = nlohmann::json::object();
  for (int p = 0; p < g.num_players(); ++p) obj[g.players[p]] = dsg::rat_str(v[p]);
  return obj;
}

std::string payoff_line(const Game& g, const std::vector<Rat>& v, const Output& o) {
  std::string s;
  for (int p = 0; p < g.num_players(); ++p) {
    if (p) s += ", ";
    s += g.players[p] + "=" + show(v[p], o);
  }
  return s;
}

// Printed width in columns; the only non-ASCII characters we emit (·, ω, ≈)
// are single-column, so counting code points is enough.
std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

void print_table(const std::vector<std::string>& head,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) width[c] = display_width(head[c]);
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], display_width(r[c]));
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) s += "  ";
      s += r[c];
      s += std::string(width[c] - display_width(r[c]), ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    std::cout << s << "\n";
  };
  line(head);
  for (const auto& r : rows) line(r);
}

void print_plays(const Game& g, const dsg::VerifyReport& rep, const Output& o) {
  for (const auto& play : rep.plays) {
    std::cout << "play from " << g.vertices[play.start].id << ": "
              << play_str(g, play.trace.lasso) << "\n";
    std::cout << "payoffs from " << g.vertices[play.start].id << ": "
              << payoff_line(g, play.payoffs, o) << "\n";
  }
  std::cout << "weighted payoffs: " << payoff_line(g, rep.weighted_payoffs, o) << "\n";
}

nlohmann::json plays_json(const Game& g, const dsg::VerifyReport& rep) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& play : rep.plays)
    arr.push_back({{"start", g.vertices[play.start].id},
                   {"play", lasso_json(g, play.trace.lasso)},
                   {"payoffs", payoffs_json(g, play.payoffs)}});
  return arr;
}

void print_witness(const Game& g, const Profile& w) {
  std::cout << "witness profile (K=" << w.K << "):\n";
  for (const auto& e : w.entries)
    std::cout << "  (memory " << e.memory << ", " << g.vertices[e.vertex].id << ") -> "
              << g.vertices[e.vertex].actions[e.action].id << ", memory " << e.next_memory
              << "\n";
}

int cmd_punish(const Game& g, bool policies, const Output& o) {
  const dsg::PunishTable pt = dsg::punishment_values(g);
  if (o.json) {
    nlohmann::json values, pols, apx;
    for (int p = 0; p < g.num_players(); ++p) {
      nlohmann::json row, prow, arow;
      for (int v = 0; v < g.num_vertices(); ++v) {
        row[g.vertices[v].id] = dsg::rat_str(pt.value[p][v]);
        prow[g.vertices[v].id] = g.vertices[v].actions[pt.policy[p][v]].id;
        arow[g.vertices[v].id] = dsg::rat_approx(pt.value[p][v]);
      }
      values[g.players[p]] = row;
      pols[g.players[p]] = prow;
      if (o.approx) apx[g.players[p]] = arow;
    }
    nlohmann::json doc{{"command", "punish"}, {"values", values}};
    if (policies) doc["policies"] = pols;
    if (o.approx) doc["values_approx"] = apx;
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::vector<std::string> head{"vertex"};
  for (const auto& p : g.players) head.push_back(p);
  std::vector<std::vector<std::string>> rows;
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::vector<std::string> row{g.vertices[v].id};
    for (int p = 0; p < g.num_players(); ++p) row.push_back(show(pt.value[p][v], o));
    rows.push_back(std::move(row));
  }
  print_table(head, rows);
  if (policies) {
    for (int p = 0; p < g.num_players(); ++p) {
      std::cout << "\npolicy against " << g.players[p] << ":\n";
      for (int v = 0; v < g.num_vertices(); ++v)
        std::cout << "  " << g.vertices[v].id << ": "
                  << g.vertices[v].actions[pt.policy[p][v]].id << "\n";
    }
  }
  return 0;
}

int cmd_verify_classic(const Game& g, const Profile& prof, const Output& o) {
  const dsg::NashReport rep = dsg::classic_nash_check(g, prof);
  if (o.json) {
    nlohmann::json players = nlohmann::json::array();
    for (int p = 0; p < g.num_players(); ++p)
      players.push_back({{"player", g.players[p]},
                         {"on_path", dsg::rat_str(rep.on_path[p])},
                         {"best_response", dsg::rat_str(rep.best_response[p])},
                         {"improves", rep.best_response[p] != rep.on_path[p]}});
    nlohmann::json doc{
        {"command", "verify"}, {"check", "classic-nash"}, {"pass", rep.pass}, {"players", players}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "check: classic-nash\n";
    for (int p = 0; p < g.num_players(); ++p) {
      const bool improves = rep.best_response[p] != rep.on_path[p];
      std::cout << g.players[p] << ": on-path " << show(rep.on_path[p], o) << ", best response "
                << show(rep.best_response[p], o) << (improves ? "  [improves]" : "") << "\n";
    }
    std::cout << "result: " << (rep.pass ? "pass" : "fail") << "\n";
  }
  return rep.pass ? 0 : 2;
}

int cmd_verify(const Game& g, const Profile& prof, Mode mode, bool classic, const Output& o) {
  if (classic) return cmd_verify_classic(g, prof, o);
  const dsg::VerifyReport rep = dsg::rp_check(g, prof, mode);
  if (o.json) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"start", g.vertices[c.start].id},
                        {"position", c.position},
                        {"vertex", g.vertices[c.state.vertex].id},
                        {"memory", c.state.memory},
                        {"owner", g.players[c.owner]},
                        {"tail", dsg::rat_str(c.tail)},
                        {"punishment", dsg::rat_str(c.punish)},
                        {"exempt", c.exempt},
                        {"ok", c.ok}});
    nlohmann::json doc{{"command", "verify"},
                       {"check", "reward-and-punish"},
                       {"mode", dsg::mode_str(mode)},
                       {"pass", rep.pass},
                       {"plays", plays_json(g, rep)},
                       {"weighted_payoffs", payoffs_json(g, rep.weighted_payoffs)},
                       {"checks", checks}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "check: reward-and-punish, mode: " << dsg::mode_str(mode) << "\n";
    print_plays(g, rep, o);
    int violations = 0;
    for (const auto& c : rep.checks) {
      if (c.ok) continue;
      ++violations;
      std::cout << "violation: from " << g.vertices[c.start].id << " at position " << c.position
                << " (vertex " << g.vertices[c.state.vertex].id << ", memory " << c.state.memory
                << "): owner " << g.players[c.owner] << " tail " << show(c.tail, o)
                << " < punishment " << show(c.punish, o) << "\n";
    }
    std::cout << "positions checked: " << rep.checks.size() << ", violations: " << violations
              << "\n";
    std::cout << "result: " << (rep.pass ? "pass" : "fail") << "\n";
  }
  return rep.pass ? 0 : 2;
}

int cmd_solve(const Game& g, int K, Mode mode, const std::optional<Rat>& threshold, bool oracle,
              const std::string& out_path, const Output& o) {
  std::optional<Profile> witness;
  dsg::SearchStats stats;
  Rat value;
  bool yes = false;
  if (threshold) {
    dsg::ThresholdResult res = dsg::decide_threshold(g, K, mode, *threshold);
    stats = res.stats;
    witness = std::move(res.witness);
    yes = res.yes;
  } else {
    dsg::SearchResult res = dsg::solve_optimal(g, K, mode);
    stats = res.stats;
    witness = std::move(res.witness);
    value = res.value;
  }

  std::optional<Rat> oracle_value;
  bool oracle_agrees = true;
  if (oracle) {
    oracle_value = dsg::brute_force_oracle(g, K, mode);
    oracle_agrees = threshold ? ((*oracle_value >= *threshold) == yes) : (*oracle_value == value);
  }

  std::optional<dsg::VerifyReport> rep;
  if (witness) rep = dsg::rp_check(g, *witness, mode);
  if (witness && !out_path.empty()) write_file(out_path, dsg::render_profile(*witness, g));

  int code = 0;
  if (threshold && !yes) code = 2;
  if (!oracle_agrees) code = 2;

  if (o.json) {
    nlohmann::json doc{{"command", "solve"},
                       {"mode", dsg::mode_str(mode)},
                       {"memory", K},
                       {"stats",
                        {{"nodes", stats.nodes},
                         {"bound_prunes", stats.bound_prunes},
                         {"constraint_prunes", stats.constraint_prunes}}}};
    if (threshold) {
      doc["threshold"] = dsg::rat_str(*threshold);
      doc["answer"] = yes ? "yes" : "no";
    } else {
      doc["value"] = dsg::rat_str(value);
      if (o.approx) doc["value_approx"] = dsg::rat_approx(value);
    }
    if (witness) {
      doc["witness"] = nlohmann::json::parse(dsg::render_profile(*witness, g));
      doc["plays"] = plays_json(g, *rep);
      doc["weighted_payoffs"] = payoffs_json(g, rep->weighted_payoffs);
    }
    if (oracle_value) {
      doc["oracle"] = dsg::rat_str(*oracle_value);
      doc["oracle_agrees"] = oracle_agrees;
    }
    if (!out_path.empty() && witness) doc["witness_file"] = out_path;
    std::cout << doc.dump(2) << "\n";
    return code;
  }

  std::cout << "mode: " << dsg::mode_str(mode) << ", memory bound: " << K << "\n";
  if (threshold)
    std::cout << "threshold: " << show(*threshold, o) << ", answer: " << (yes ? "yes" : "no")
              << "\n";
  else
    std::cout << "value: " << show(value, o) << "\n";
  if (witness) {
    print_plays(g, *rep, o);
    print_witness(g, *witness);
    if (!out_path.empty()) std::cout << "witness written to " << out_path << "\n";
  }
  if (oracle_value)
    std::cout << "oracle value: " << show(*oracle_value, o)
              << (oracle_agrees ? " (agrees)" : " (DISAGREES)") << "\n";
  std::cout << "nodes expanded: " << stats.nodes << ", bound prunes: " << stats.bound_prunes
            << ", constraint prunes: " << stats.constraint_prunes << "\n";
  return code;
}

int emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

int emit_game(const Game& g, const std::string& out_path) {
  return emit_text(dsg::render_game(g), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact solver for multi-player discounted-sum games: punishment values, profile "
      "verification, optimal bounded-memory profile search, example-game generation, and "
      "SMT-LIB export"};
  app.fallthrough();
  app.require_subcommand(1);

  Output out;
  int threads = 1;
  app.add_flag("--json", out.json, "emit structured JSON (rationals as \"p/q\" strings)");
  app.add_flag("--approx", out.approx,
               "append display-only decimal approximations to exact values");
  app.add_option("--threads", threads,
                 "worker count; the computed result is independent of this value")
      ->envname("DSG_THREADS")
      ->check(CLI::PositiveNumber);

  std::string punish_game;
  bool policies = false;
  CLI::App* punish = app.add_subcommand("punish", "print punishment values per (player, vertex)");
  punish->add_option("game", punish_game, "game file (JSON)")->required();
  punish->add_flag("--policies", policies, "also print the witness punishment policies");

  std::string verify_game, verify_prof, verify_mode;
  bool classic = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "check a profile: reward-and-punish feasibility or classic Nash");
  verify->add_option("game", verify_game, "game file (JSON)")->required();
  verify->add_option("profile", verify_prof, "profile file (JSON)")->required();
  verify->add_option("--mode", verify_mode, "which players are constrained")
      ->required()
      ->check(CLI::IsMember({"nash", "leader"}));
  verify->add_flag("--classic", classic,
                   "classic Nash check (frozen opponents, no punishment threats)");

  std::string solve_game, solve_mode, solve_threshold, solve_out;
  int solve_K = 1;
  bool solve_oracle = false;
  CLI::App* solve = app.add_subcommand(
      "solve", "find the optimal bounded-memory profile, or decide a leader-value threshold");
  solve->add_option("game", solve_game, "game file (JSON)")->required();
  solve->add_option("--memory", solve_K, "memory bound K")
      ->required()
      ->check(CLI::PositiveNumber);
  solve->add_option("--mode", solve_mode, "which players are constrained")
      ->required()
      ->check(CLI::IsMember({"nash", "leader"}));
  solve->add_option("--threshold", solve_threshold,
                    "decide \"leader value >= t\" instead of optimizing");
  solve->add_flag("--oracle", solve_oracle,
                  "cross-check against the exhaustive oracle (tiny instances only)");
  solve->add_option("--out", solve_out, "write the witness profile to this file");

  CLI::App* gen = app.add_subcommand("generate", "emit a game file");
  gen->require_subcommand(1);
  std::string fig_name, fig_eps, fig_out;
  CLI::App* fig = gen->add_subcommand("figure", "one of the built-in example games");
  fig->add_option("name", fig_name, "fig1|fig2|fig3|fig4|fig5")->required();
  fig->add_option("--epsilon", fig_eps,
                  "fig3 exit-option parameter, rational in (0,1) (default 1/4)");
  fig->add_option("--out", fig_out, "write to this file instead of stdout");
  std::string sat_file, sat_lambda = "1/2", sat_out;
  CLI::App* sat = gen->add_subcommand("3sat", "satisfiability-threshold game from a CNF formula");
  sat->add_option("cnf", sat_file, "DIMACS CNF file")->required();
  sat->add_option("--lambda", sat_lambda, "discount factor (default 1/2)");
  sat->add_option("--out", sat_out, "write to this file instead of stdout");
  int rnd_vertices = 0, rnd_actions = 0, rnd_players = 0, rnd_range = 9;
  std::uint64_t rnd_seed = 0;
  std::string rnd_out;
  CLI::App* rnd = gen->add_subcommand("random", "seeded random game");
  rnd->add_option("--vertices", rnd_vertices, "vertex count")
      ->required()
      ->check(CLI::PositiveNumber);
  rnd->add_option("--actions", rnd_actions, "maximum actions per vertex")
      ->required()
      ->check(CLI::PositiveNumber);
  rnd->add_option("--players", rnd_players, "player count")
      ->required()
      ->check(CLI::PositiveNumber);
  rnd->add_option("--seed", rnd_seed, "64-bit seed (default 0)");
  rnd->add_option("--reward-range", rnd_range, "rewards drawn from [-R, R] (default 9)")
      ->check(CLI::NonNegativeNumber);
  rnd->add_option("--out", rnd_out, "write to this file instead of stdout");

  std::string smt_game, smt_mode, smt_threshold, smt_out;
  int smt_K = 1;
  CLI::App* smt =
      app.add_subcommand("export-smt", "emit the feasibility question as an SMT-LIB document");
  smt->add_option("game", smt_game, "game file (JSON)")->required();
  smt->add_option("--memory", smt_K, "memory bound K")->required()->check(CLI::PositiveNumber);
  smt->add_option("--mode", smt_mode, "which players are constrained")
      ->required()
      ->check(CLI::IsMember({"nash", "leader"}));
  smt->add_option("--threshold", smt_threshold, "leader value threshold t")->required();
  smt->add_option("--out", smt_out, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  // A single worker is always used today; the value and witness are specified
  // to be identical for every worker count, so accepting the flag is enough.
  (void)threads;

  try {
    if (punish->parsed()) return cmd_punish(load_game(punish_game), policies, out);
    if (verify->parsed()) {
      const Game g = load_game(verify_game);
      const Profile prof = load_profile(verify_prof, g);
      return cmd_verify(g, prof, dsg::mode_parse(verify_mode), classic, out);
    }
    if (solve->parsed()) {
      const Game g = load_game(solve_game);
      std::optional<Rat> threshold;
      if (solve->count("--threshold") > 0) threshold = dsg::rat_parse(solve_threshold);
      return cmd_solve(g, solve_K, dsg::mode_parse(solve_mode), threshold, solve_oracle,
                       solve_out, out);
    }
    if (fig->parsed()) {
      std::optional<Rat> eps;
      if (fig->count("--epsilon") > 0) eps = dsg::rat_parse(fig_eps);
      return emit_game(dsg::gen_figure(fig_name, eps), fig_out);
    }
    if (sat->parsed())
      return emit_game(dsg::gen_3sat(load_cnf(sat_file), dsg::rat_parse(sat_lambda)), sat_out);
    if (rnd->parsed())
      return emit_game(dsg::gen_random(rnd_vertices, rnd_actions, rnd_players, rnd_range,
                                       rnd_seed),
                       rnd_out);
    if (smt->parsed()) {
      const Game g = load_game(smt_game);
      return emit_text(dsg::export_constraints(g, smt_K, dsg::mode_parse(smt_mode),
                                               dsg::rat_parse(smt_threshold)),
                       smt_out);
    }
  } catch (const dsg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const dsg::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

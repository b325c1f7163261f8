#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "dsgames/generators.hpp"
#include "dsgames/search.hpp"
#include "dsgames/smt.hpp"

namespace py = pybind11;

namespace {

std::optional<dsg::Rat> opt_rat(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return dsg::rat_parse(*s);
}

py::dict player_table(const dsg::Game& g, const std::vector<std::vector<dsg::Rat>>& table) {
  py::dict out;
  for (int p = 0; p < g.num_players(); ++p) {
    py::dict row;
    for (int v = 0; v < g.num_vertices(); ++v)
      row[py::str(g.vertices[v].id)] = dsg::rat_str(table[p][v]);
    out[py::str(g.players[p])] = row;
  }
  return out;
}

py::dict payoff_dict(const dsg::Game& g, const std::vector<dsg::Rat>& payoffs) {
  py::dict out;
  for (int p = 0; p < g.num_players(); ++p)
    out[py::str(g.players[p])] = dsg::rat_str(payoffs[p]);
  return out;
}

py::dict stats_dict(const dsg::SearchStats& s) {
  py::dict out;
  out["nodes"] = s.nodes;
  out["bound_prunes"] = s.bound_prunes;
  out["constraint_prunes"] = s.constraint_prunes;
  return out;
}

std::string play_text(const dsg::Game& g, const dsg::Lasso& l) {
  std::string out;
  for (const auto& [v, a] : l.prefix) out += g.vertices[v].id + "·";
  if (l.cycle.size() == 1) return out + g.vertices[l.cycle[0].first].id + "^ω";
  out += "(";
  for (std::size_t i = 0; i < l.cycle.size(); ++i)
    out += (i ? "·" : "") + g.vertices[l.cycle[i].first].id;
  return out + ")^ω";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact solver for multi-player discounted-sum games on graphs.";

  py::register_exception<dsg::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<dsg::ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<dsg::Game>(m, "Game")
      .def_static(
          "from_json", [](const std::string& text) { return dsg::parse_game(text); },
          py::arg("text"), "Parse a game from its JSON document.")
      .def("to_json", [](const dsg::Game& g) { return dsg::render_game(g); },
           "Render the canonical JSON document.")
      .def_property_readonly("players", [](const dsg::Game& g) { return g.players; })
      .def_property_readonly("leader", [](const dsg::Game& g) { return g.players[g.leader]; })
      .def_property_readonly("discount",
                             [](const dsg::Game& g) { return dsg::rat_str(g.lambda); })
      .def_property_readonly("vertices",
                             [](const dsg::Game& g) {
                               std::vector<std::string> ids;
                               for (const auto& v : g.vertices) ids.push_back(v.id);
                               return ids;
                             })
      .def("__repr__", [](const dsg::Game& g) {
        return "<Game " + std::to_string(g.num_players()) + " players, " +
               std::to_string(g.num_vertices()) + " vertices, discount " +
               dsg::rat_str(g.lambda) + ">";
      });

  m.def(
      "figure",
      [](const std::string& name, const std::optional<std::string>& epsilon) {
        return dsg::gen_figure(name, opt_rat(epsilon));
      },
      py::arg("name"), py::arg("epsilon") = py::none(),
      "One of the five worked example games (fig1..fig5).");

  m.def(
      "from_dimacs",
      [](const std::string& text, const std::string& discount) {
        return dsg::gen_3sat(dsg::parse_dimacs(text), dsg::rat_parse(discount));
      },
      py::arg("text"), py::arg("discount") = "1/2",
      "Reduction game for a DIMACS CNF formula: leader value 0 iff satisfiable.");

  m.def(
      "random_game",
      [](int vertices, int actions, int players, int reward_range, std::uint64_t seed) {
        return dsg::gen_random(vertices, actions, players, reward_range, seed);
      },
      py::arg("vertices"), py::arg("actions") = 2, py::arg("players") = 2,
      py::arg("reward_range") = 9, py::arg("seed") = 0, "Deterministic seeded random game.");

  m.def(
      "scale",
      [](const dsg::Game& g, const std::string& factor) {
        return dsg::scale_game(g, dsg::rat_parse(factor));
      },
      py::arg("game"), py::arg("factor"), "Multiply every reward by a positive rational.");

  m.def(
      "punishment_values",
      [](const dsg::Game& g) {
        const dsg::PunishTable pt = dsg::punishment_values(g);
        py::dict out;
        out["values"] = player_table(g, pt.value);
        py::dict policies;
        for (int p = 0; p < g.num_players(); ++p) {
          py::dict row;
          for (int v = 0; v < g.num_vertices(); ++v)
            row[py::str(g.vertices[v].id)] = g.vertices[v].actions[pt.policy[p][v]].id;
          policies[py::str(g.players[p])] = row;
        }
        out["policies"] = policies;
        return out;
      },
      py::arg("game"),
      "Exact zero-sum punishment value and witness policy per player and vertex.");

  m.def(
      "verify",
      [](const dsg::Game& g, const std::string& profile_json, const std::string& mode) {
        const dsg::Profile prof = dsg::parse_profile(profile_json, g);
        const dsg::VerifyReport rep = dsg::rp_check(g, prof, dsg::mode_parse(mode));
        py::dict out;
        out["pass"] = rep.pass;
        out["weighted_payoffs"] = payoff_dict(g, rep.weighted_payoffs);
        py::list plays;
        for (const auto& play : rep.plays) {
          py::dict row;
          row["start"] = g.vertices[play.start].id;
          row["play"] = play_text(g, play.trace.lasso);
          row["payoffs"] = payoff_dict(g, play.payoffs);
          plays.append(row);
        }
        out["plays"] = plays;
        int violations = 0;
        for (const auto& c : rep.checks)
          if (!c.ok) ++violations;
        out["violations"] = violations;
        return out;
      },
      py::arg("game"), py::arg("profile_json"), py::arg("mode"),
      "Check the compliance constraints of a profile (mode 'nash' or 'leader').");

  m.def(
      "classic_nash",
      [](const dsg::Game& g, const std::string& profile_json) {
        const dsg::Profile prof = dsg::parse_profile(profile_json, g);
        const dsg::NashReport rep = dsg::classic_nash_check(g, prof);
        py::dict out;
        out["pass"] = rep.pass;
        out["on_path"] = payoff_dict(g, rep.on_path);
        out["best_response"] = payoff_dict(g, rep.best_response);
        return out;
      },
      py::arg("game"), py::arg("profile_json"),
      "Single-deviation equilibrium check against the frozen machine.");

  m.def(
      "solve",
      [](const dsg::Game& g, int memory, const std::string& mode) {
        const dsg::SearchResult res = dsg::solve_optimal(g, memory, dsg::mode_parse(mode));
        py::dict out;
        out["value"] = dsg::rat_str(res.value);
        out["witness"] = dsg::render_profile(res.witness, g);
        out["stats"] = stats_dict(res.stats);
        return out;
      },
      py::arg("game"), py::arg("memory"), py::arg("mode"),
      "Exact optimal leader value over profiles with at most `memory` modes.");

  m.def(
      "decide",
      [](const dsg::Game& g, int memory, const std::string& mode, const std::string& threshold) {
        const dsg::ThresholdResult res =
            dsg::decide_threshold(g, memory, dsg::mode_parse(mode), dsg::rat_parse(threshold));
        py::dict out;
        out["yes"] = res.yes;
        out["witness"] =
            res.witness ? py::object(py::str(dsg::render_profile(*res.witness, g)))
                        : py::object(py::none());
        out["stats"] = stats_dict(res.stats);
        return out;
      },
      py::arg("game"), py::arg("memory"), py::arg("mode"), py::arg("threshold"),
      "Is there a feasible profile whose leader value reaches the threshold?");

  m.def(
      "oracle_value",
      [](const dsg::Game& g, int memory, const std::string& mode) {
        return dsg::rat_str(dsg::brute_force_oracle(g, memory, dsg::mode_parse(mode)));
      },
      py::arg("game"), py::arg("memory"), py::arg("mode"),
      "Exhaustive cross-check of solve(); guarded to tiny instances.");

  m.def(
      "export_smt",
      [](const dsg::Game& g, int memory, const std::string& mode, const std::string& threshold) {
        return dsg::export_constraints(g, memory, dsg::mode_parse(mode),
                                       dsg::rat_parse(threshold));
      },
      py::arg("game"), py::arg("memory"), py::arg("mode"), py::arg("threshold"),
      "SMT-LIB document deciding the threshold question.");
}

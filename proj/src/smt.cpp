#include "dsgames/smt.hpp"

#include <sstream>

#include "dsgames/punish.hpp"

namespace dsg {

namespace {

std::string smt_real(const Rat& r) {
  if (r < 0) return "(- " + smt_real(-r) + ")";
  std::string num = r.get_num().get_str();
  if (r.get_den() == 1) return num + ".0";
  return "(/ " + num + ".0 " + r.get_den().get_str() + ".0)";
}

}  // namespace

std::string export_constraints(const Game& g, int K, Mode mode, const Rat& threshold) {
  validate_game(g);
  if (K < 1) throw ValidationError("memory bound K must be at least 1");
  PunishTable punish = punishment_values(g);
  const int V = g.num_vertices();
  const int P = g.num_players();
  const std::string lam = smt_real(g.lambda);

  auto cvar = [&](int v, int m) { return "c_v" + std::to_string(v) + "_m" + std::to_string(m); };
  auto rvar = [&](int v, int m) {
    return "reach_v" + std::to_string(v) + "_m" + std::to_string(m);
  };
  auto evar = [&](int p, int v, int m) {
    return "e_p" + std::to_string(p) + "_v" + std::to_string(v) + "_m" + std::to_string(m);
  };

  std::ostringstream out;
  out << "; Feasibility of a reward-and-punish profile with memory bound K=" << K
      << " (mode: " << mode_str(mode) << ")\n"
      << "; and leader value at least " << rat_str(threshold) << ".\n"
      << ";\n"
      << "; One Int choice per machine state (vertex, memory): c = action*K + next_memory\n"
      << "; under the action order below. reach_* over-approximates the states reachable\n"
      << "; from the initial vertices at memory 0 (it is exact in minimal models). Tail\n"
      << "; variables satisfy the discounted-sum recurrence for the chosen transitions, and\n"
      << "; each reached state's owner must weakly prefer compliance to her punishment\n"
      << "; value" << (mode == Mode::Leader ? " (leader exempt)" : "") << ".\n"
      << ";\n"
      << "; players:";
  for (int p = 0; p < P; ++p)
    out << " p" << p << "=\"" << g.players[p] << "\"" << (p == g.leader ? " (leader)" : "");
  out << "\n; vertices:";
  for (int v = 0; v < V; ++v) out << " v" << v << "=\"" << g.vertices[v].id << "\"";
  out << "\n; discount: " << rat_str(g.lambda) << "\n";
  for (int v = 0; v < V; ++v) {
    out << "; actions of v" << v << ":";
    for (std::size_t a = 0; a < g.vertices[v].actions.size(); ++a)
      out << " a" << a << "=\"" << g.vertices[v].actions[a].id << "\"";
    out << "\n";
  }
  out << "(set-logic QF_LIRA)\n";

  out << "; --- choices ---\n";
  for (int v = 0; v < V; ++v) {
    const int span = static_cast<int>(g.vertices[v].actions.size()) * K;
    for (int m = 0; m < K; ++m) {
      out << "(declare-const " << cvar(v, m) << " Int)\n";
      out << "(assert (and (<= 0 " << cvar(v, m) << ") (< " << cvar(v, m) << " " << span
          << ")))\n";
    }
  }

  out << "; --- reachability ---\n";
  for (int v = 0; v < V; ++v)
    for (int m = 0; m < K; ++m) out << "(declare-const " << rvar(v, m) << " Bool)\n";
  for (int v = 0; v < V; ++v)
    if (g.vertices[v].initial > 0) out << "(assert " << rvar(v, 0) << ")\n";

  out << "; --- tails ---\n";
  for (int p = 0; p < P; ++p)
    for (int v = 0; v < V; ++v)
      for (int m = 0; m < K; ++m) out << "(declare-const " << evar(p, v, m) << " Real)\n";

  out << "; --- transition semantics ---\n";
  for (int v = 0; v < V; ++v) {
    for (int m = 0; m < K; ++m) {
      const auto& acts = g.vertices[v].actions;
      for (int a = 0; a < static_cast<int>(acts.size()); ++a) {
        for (int nm = 0; nm < K; ++nm) {
          const int code = a * K + nm;
          const int tv = acts[a].target;
          out << "(assert (=> (= " << cvar(v, m) << " " << code << ") (and";
          for (int p = 0; p < P; ++p) {
            out << " (= " << evar(p, v, m) << " (+ " << smt_real(acts[a].rewards[p]) << " (* "
                << lam << " " << evar(p, tv, nm) << ")))";
          }
          out << ")))\n";
          out << "(assert (=> (and " << rvar(v, m) << " (= " << cvar(v, m) << " " << code
              << ")) " << rvar(tv, nm) << "))\n";
        }
      }
    }
  }

  out << "; --- compliance constraints ---\n";
  for (int v = 0; v < V; ++v) {
    const int owner = g.vertices[v].owner;
    if (mode == Mode::Leader && owner == g.leader) continue;
    for (int m = 0; m < K; ++m)
      out << "(assert (=> " << rvar(v, m) << " (>= " << evar(owner, v, m) << " "
          << smt_real(punish.value[owner][v]) << ")))\n";
  }

  out << "; --- leader objective ---\n";
  out << "(assert (>= (+";
  for (int v = 0; v < V; ++v)
    if (g.vertices[v].initial > 0)
      out << " (* " << smt_real(g.vertices[v].initial) << " " << evar(g.leader, v, 0) << ")";
  out << " 0.0) " << smt_real(threshold) << "))\n";
  out << "(check-sat)\n";
  return out.str();
}

}  // namespace dsg

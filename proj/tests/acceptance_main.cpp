#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dsgames/smt.hpp"
#include "test_util.hpp"

// Exercises each advertised guarantee end to end and prints one verdict line
// per criterion. Exits nonzero if any of them does not hold.

using namespace testutil;
using dsg::Mode;

namespace {

struct Log {
  std::ostringstream out;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      out << "    failed: " << what << "\n";
    }
  }
  template <typename T>
  void expect_eq(const T& got, const T& want, const std::string& what) {
    if (!(got == want)) {
      ok = false;
      out << "    failed: " << what << "\n";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string rs(const Rat& r) { return dsg::rat_str(r); }

// --- criterion 1: fig2 optima through the command line -----------------------

bool criterion1(std::string& detail) {
  Log log;
  TempDir dir;
  const Game g = fig("fig2");
  const std::string game = dir.file("fig2.json");
  spit(game, dsg::render_game(g));

  const CliResult leader3 = run_cli("solve " + game + " --memory 3 --mode leader");
  log.expect(leader3.exit_code == 0, "leader K=3 exit code 0, got " +
                                         std::to_string(leader3.exit_code));
  log.expect(leader3.out.find("value: 3/2") != std::string::npos,
             "leader K=3 prints value: 3/2");
  log.expect(leader3.out.find("play from v1: v1·v2·v2·v2·v3^ω") != std::string::npos,
             "leader K=3 prints the three-round play");
  log.expect(leader3.out.find("payoffs from v1: p1=0, p2=3/2, p3=-3/2") != std::string::npos,
             "leader K=3 prints payoffs (0, 3/2, -3/2)");

  const CliResult leader1 = run_cli("solve " + game + " --memory 1 --mode leader");
  log.expect(leader1.exit_code == 0 &&
                 leader1.out.find("value: 1\n") != std::string::npos,
             "leader K=1 prints value: 1");

  for (int k = 1; k <= 4; ++k) {
    const CliResult nash =
        run_cli("solve " + game + " --memory " + std::to_string(k) + " --mode nash");
    log.expect(nash.exit_code == 0 && nash.out.find("value: 0\n") != std::string::npos,
               "nash K=" + std::to_string(k) + " prints value: 0");
  }

  // The same numbers straight from the library.
  log.expect_eq(dsg::solve_optimal(g, 3, Mode::Leader).value, Rat(3, 2), "library leader K=3");
  log.expect_eq(dsg::solve_optimal(g, 1, Mode::Leader).value, Rat(1), "library leader K=1");
  for (int k = 1; k <= 4; ++k)
    log.expect_eq(dsg::solve_optimal(g, k, Mode::Nash).value, Rat(0),
                  "library nash K=" + std::to_string(k));

  detail = log.out.str();
  return log.ok;
}

// --- criterion 2: fig1 has no memoryless equilibrium --------------------------

bool criterion2(std::string& detail) {
  Log log;
  const Game g = fig("fig1");
  int total = 0;
  for_each_positional_profile(g, [&](const dsg::Profile& prof) {
    ++total;
    log.expect(!dsg::classic_nash_check(g, prof).pass,
               "profile " + std::to_string(total) + " is wrongly reported as Nash");
  });
  log.expect_eq(total, 8, "exactly 8 memoryless profiles enumerated");
  detail = log.out.str();
  return log.ok;
}

// --- criterion 3: fig3 loop count and closed-form optimum ---------------------

bool criterion3(std::string& detail) {
  Log log;
  const Game g = fig("fig3");
  const Rat eps(1, 4);

  // Smallest s with 1 + lambda + ... + lambda^{s-1} >= (1 - eps)/(1 - lambda).
  const Rat need = (1 - eps) / (1 - g.lambda);
  int s = 0;
  Rat sum = 0, pow = 1;
  while (sum < need) {
    sum += pow;
    pow *= g.lambda;
    ++s;
  }
  log.expect_eq(s, 2, "minimal loop count s is 2");

  const Rat at2 = dsg::solve_optimal(g, 2, Mode::Leader).value;
  const Rat at3 = dsg::solve_optimal(g, 3, Mode::Leader).value;
  log.expect_eq(at2, Rat(0), "leader K=2 value is 0, got " + rs(at2));
  log.expect_eq(at3, Rat(25, 4), "leader K=3 value is 25/4, got " + rs(at3));
  const Rat closed = Rat(50) * dsg::rat_pow(g.lambda, s + 2) / (1 - g.lambda);
  log.expect_eq(at3, closed, "K=3 value matches 50*lambda^(s+2)/(1-lambda)");

  log.expect_eq(dsg::brute_force_oracle(g, 2, Mode::Leader), at2, "oracle agrees at K=2");
  log.expect_eq(dsg::brute_force_oracle(g, 3, Mode::Leader), at3, "oracle agrees at K=3");
  detail = log.out.str();
  return log.ok;
}

// --- criterion 4: fig4 strictly climbing values below 1 -----------------------

bool criterion4(std::string& detail) {
  Log log;
  const Game g = fig("fig4");
  const Rat want[] = {Rat(0), Rat(4, 5), Rat(18, 19)};
  Rat got[3];
  for (int k = 1; k <= 3; ++k) {
    got[k - 1] = dsg::solve_optimal(g, k, Mode::Leader).value;
    log.expect_eq(got[k - 1], want[k - 1],
                  "leader K=" + std::to_string(k) + " value, got " + rs(got[k - 1]));
    log.expect_eq(dsg::brute_force_oracle(g, k, Mode::Leader), got[k - 1],
                  "oracle agrees at K=" + std::to_string(k));
  }
  log.expect(got[0] < got[1] && got[1] < got[2], "values strictly increase with K");
  log.expect(got[2] < Rat(1), "every bounded-memory value stays below 1");
  detail = log.out.str();
  return log.ok;
}

// --- criterion 5: fig5 equilibrium value stays at zero ------------------------

bool criterion5(std::string& detail) {
  Log log;
  const Game g = fig("fig5");
  for (int k = 1; k <= 3; ++k) {
    const Rat v = dsg::solve_optimal(g, k, Mode::Nash).value;
    log.expect_eq(v, Rat(0), "nash K=" + std::to_string(k) + " value is 0, got " + rs(v));
  }
  detail = log.out.str();
  return log.ok;
}

// --- criterion 6: satisfiability corpus ---------------------------------------

bool criterion6(std::string& detail, std::string& note) {
  Log log;
  const auto t0 = std::chrono::steady_clock::now();

  int sat_count = 0, unsat_count = 0;
  const auto check_formula = [&](const dsg::CnfFormula& f) {
    const Game g = dsg::gen_3sat(f, Rat(1, 2));
    const Rat v = dsg::solve_optimal(g, 1, Mode::Leader).value;
    if (sat_oracle(f)) {
      ++sat_count;
      if (v != 0) {
        std::ostringstream what;
        what << "satisfiable formula got value " << rs(v) << " (vars " << f.num_vars << ":";
        for (const auto& c : f.clauses) {
          what << " (";
          for (int l : c) what << l << " ";
          what << ")";
        }
        what << ")";
        log.expect(false, what.str());
      }
    } else {
      ++unsat_count;
      if (!(v < 0)) log.expect(false, "unsatisfiable formula got value " + rs(v));
    }
  };

  // Every clause of 1..3 distinct literals over variables 1..n, every
  // multiset of 1..3 such clauses, for n = 1..3.
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> lits;
    for (int v = 1; v <= n; ++v) {
      lits.push_back(v);
      lits.push_back(-v);
    }
    std::vector<std::vector<int>> clauses;
    const int L = static_cast<int>(lits.size());
    for (int i = 0; i < L; ++i) {
      clauses.push_back({lits[i]});
      for (int j = i + 1; j < L; ++j) {
        clauses.push_back({lits[i], lits[j]});
        for (int k = j + 1; k < L; ++k) clauses.push_back({lits[i], lits[j], lits[k]});
      }
    }
    const int C = static_cast<int>(clauses.size());
    for (int i = 0; i < C; ++i) {
      check_formula({n, {clauses[i]}});
      for (int j = i; j < C; ++j) {
        check_formula({n, {clauses[i], clauses[j]}});
        for (int k = j; k < C; ++k) check_formula({n, {clauses[i], clauses[j], clauses[k]}});
      }
    }
  }

  // The worked example formula.
  check_formula({3, {{1, -2, -3}, {-1, 2, -3}, {-1, -2, -3}}});

  const double elapsed = seconds_since(t0);
  log.expect(elapsed < 300.0, "corpus finished under 5 minutes");
  std::ostringstream n;
  n << sat_count << " satisfiable + " << unsat_count << " unsatisfiable in " << std::fixed
    << std::setprecision(1) << elapsed << "s";
  note = n.str();
  detail = log.out.str();
  return log.ok;
}

// --- criterion 7: search equals exhaustive enumeration ------------------------

bool criterion7(std::string& detail, std::string& note) {
  Log log;
  const auto t0 = std::chrono::steady_clock::now();
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const int vertices = 2 + static_cast<int>(seed % 3);
    const int players = 2 + static_cast<int>(seed % 2);
    const Game g = dsg::gen_random(vertices, 2, players, 9, seed);
    for (int k = 1; k <= 2; ++k)
      for (Mode mode : {Mode::Nash, Mode::Leader}) {
        ++runs;
        const Rat solved = dsg::solve_optimal(g, k, mode).value;
        const Rat oracle = dsg::brute_force_oracle(g, k, mode);
        if (solved != oracle)
          log.expect(false, "seed " + std::to_string(seed) + " K=" + std::to_string(k) +
                                " mode " + dsg::mode_str(mode) + ": solve " + rs(solved) +
                                " != oracle " + rs(oracle));
      }
  }
  const double elapsed = seconds_since(t0);
  log.expect(elapsed < 300.0, "comparison finished under 5 minutes");
  std::ostringstream n;
  n << runs << " solver/oracle runs in " << std::fixed << std::setprecision(1) << elapsed
    << "s";
  note = n.str();
  detail = log.out.str();
  return log.ok;
}

// --- criterion 8: property suites ---------------------------------------------

bool criterion8(std::string& detail) {
  Log log;
  const std::vector<std::string> names = {"fig1", "fig2", "fig3", "fig4", "fig5"};

  // Punishment values solve their Bellman equations exactly.
  for (const auto& name : names) {
    const Game g = fig(name);
    const dsg::PunishTable pt = dsg::punishment_values(g);
    for (int p = 0; p < g.num_players(); ++p)
      for (int v = 0; v < g.num_vertices(); ++v) {
        const bool owns = g.vertices[v].owner == p;
        bool first = true;
        Rat extreme;
        for (const auto& a : g.vertices[v].actions) {
          const Rat q = a.rewards[p] + g.lambda * pt.value[p][a.target];
          if (first || (owns ? q > extreme : q < extreme)) extreme = q;
          first = false;
        }
        if (pt.value[p][v] != extreme)
          log.expect(false, name + ": Bellman residual at player " + std::to_string(p) +
                                " vertex " + std::to_string(v));
      }
  }

  // Partial sums of induced plays are within lambda^64 * payoff bound.
  for (const auto& name : names) {
    const Game g = fig(name);
    const Rat bound = dsg::rat_pow(g.lambda, 64) * g.payoff_bound();
    for_each_positional_profile(g, [&](const dsg::Profile& prof) {
      for (int v = 0; v < g.num_vertices(); ++v) {
        if (!(g.vertices[v].initial > 0)) continue;
        const dsg::Lasso play = dsg::induced_play(g, prof, {0, v});
        const auto exact = dsg::lasso_payoff(g, play);
        for (int p = 0; p < g.num_players(); ++p) {
          const Rat partial = lasso_partial_sum(g, play, p, 64);
          const Rat gap = exact[p] >= partial ? exact[p] - partial : partial - exact[p];
          if (gap > bound)
            log.expect(false, name + ": partial-sum gap " + rs(gap) + " exceeds " + rs(bound));
        }
      }
    });
  }

  // More memory never hurts; the leader never trails the equilibrium value.
  for (const auto& name : names) {
    const Game g = fig(name);
    Rat prev_nash, prev_leader;
    for (int k = 1; k <= 4; ++k) {
      const Rat n = dsg::solve_optimal(g, k, Mode::Nash).value;
      const Rat l = dsg::solve_optimal(g, k, Mode::Leader).value;
      if (l < n) log.expect(false, name + " K=" + std::to_string(k) + ": leader below nash");
      if (k > 1 && (n < prev_nash || l < prev_leader))
        log.expect(false, name + " K=" + std::to_string(k) + ": value dropped with more memory");
      prev_nash = n;
      prev_leader = l;
    }
  }

  // Scaling the rewards rescales the value and keeps the same witness.
  for (const auto& name : {"fig2", "fig3", "fig4", "fig5"}) {
    const Game g = fig(name);
    for (const Rat& c : {Rat(2), Rat(1, 3)}) {
      const Game sg = dsg::scale_game(g, c);
      for (Mode mode : {Mode::Nash, Mode::Leader}) {
        const dsg::SearchResult base = dsg::solve_optimal(g, 2, mode);
        const dsg::SearchResult scaled = dsg::solve_optimal(sg, 2, mode);
        if (scaled.value != c * base.value)
          log.expect(false, std::string(name) + " scale " + rs(c) + ": value not rescaled");
        if (scaled.witness.entries != base.witness.entries)
          log.expect(false, std::string(name) + " scale " + rs(c) + ": witness changed");
      }
    }
  }

  detail = log.out.str();
  return log.ok;
}

// --- criterion 9: SMT document round-trip --------------------------------------

bool criterion9(std::string& detail, std::string& note) {
  Log log;
  const Game g = fig("fig2");
  const std::string t1 = dsg::export_constraints(g, 1, Mode::Leader, Rat(1));
  const std::string t32 = dsg::export_constraints(g, 1, Mode::Leader, Rat(3, 2));

  std::string solver;
  for (const char* cand : {"z3", "cvc5"})
    if (std::system((std::string(cand) + " --version >/dev/null 2>&1").c_str()) == 0) {
      solver = cand;
      break;
    }

  if (!solver.empty()) {
    TempDir dir;
    const auto verdict = [&](const std::string& instance, const std::string& tag) {
      const std::string in = dir.file(tag + ".smt2");
      const std::string out = dir.file(tag + ".verdict");
      spit(in, instance);
      if (std::system((solver + " " + in + " > " + out + " 2>/dev/null").c_str()) != 0)
        return std::string("error");
      std::string v = slurp(out);
      if (auto nl = v.find('\n'); nl != std::string::npos) v.resize(nl);
      return v;
    };
    const bool yes1 = dsg::decide_threshold(g, 1, Mode::Leader, Rat(1)).yes;
    const bool yes32 = dsg::decide_threshold(g, 1, Mode::Leader, Rat(3, 2)).yes;
    log.expect_eq(verdict(t1, "t1"), std::string(yes1 ? "sat" : "unsat"),
                  "solver verdict for threshold 1 matches decide_threshold");
    log.expect_eq(verdict(t32, "t32"), std::string(yes32 ? "sat" : "unsat"),
                  "solver verdict for threshold 3/2 matches decide_threshold");
    note = "verdicts via " + solver;
  } else {
    const std::string dir = DSG_TEST_DATA_DIR;
    log.expect(t1 == slurp(dir + "/fig2_k1_leader_t1.smt2"),
               "threshold-1 document equals its golden file");
    log.expect(t32 == slurp(dir + "/fig2_k1_leader_t3_2.smt2"),
               "threshold-3/2 document equals its golden file");
    note = "no solver on PATH; golden-file comparison";
  }
  detail = log.out.str();
  return log.ok;
}

}  // namespace

int main() {
  struct Row {
    int id;
    std::string label;
    std::function<bool(std::string&, std::string&)> run;
  };
  const std::vector<Row> rows = {
      {1, "fig2 optima through the command line",
       [](std::string& d, std::string&) { return criterion1(d); }},
      {2, "fig1 has no memoryless equilibrium",
       [](std::string& d, std::string&) { return criterion2(d); }},
      {3, "fig3 minimal loop count and closed-form optimum",
       [](std::string& d, std::string&) { return criterion3(d); }},
      {4, "fig4 values strictly climb toward 1",
       [](std::string& d, std::string&) { return criterion4(d); }},
      {5, "fig5 equilibrium value stays at zero",
       [](std::string& d, std::string&) { return criterion5(d); }},
      {6, "3-SAT reduction matches a truth-table oracle", criterion6},
      {7, "search equals exhaustive enumeration on random games", criterion7},
      {8, "exactness, convergence, monotonicity and scaling properties",
       [](std::string& d, std::string&) { return criterion8(d); }},
      {9, "SMT document round-trip", criterion9},
  };

  int passed = 0;
  for (const auto& row : rows) {
    std::string detail, note;
    bool ok = false;
    try {
      ok = row.run(detail, note);
    } catch (const std::exception& e) {
      detail = "    exception: " + std::string(e.what()) + "\n";
    }
    std::cout << "criterion " << row.id << ": " << (ok ? "PASS" : "FAIL") << " — " << row.label;
    if (!note.empty()) std::cout << " (" << note << ")";
    std::cout << "\n";
    if (!ok) std::cout << detail;
    if (ok) ++passed;
  }
  std::cout << "summary: " << passed << "/" << rows.size() << " criteria passed\n";
  return passed == static_cast<int>(rows.size()) ? 0 : 1;
}

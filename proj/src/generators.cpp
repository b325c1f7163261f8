#include "dsgames/generators.hpp"

#include <random>
#include <sstream>

namespace dsg {

namespace {

// Small builder shorthand so the figure games read like their drawings.
struct Builder {
  Game g;
  int player(const std::string& id) {
    g.players.push_back(id);
    return g.num_players() - 1;
  }
  Vertex& vertex(const std::string& id, int owner, const Rat& initial = Rat(0)) {
    Vertex v;
    v.id = id;
    v.owner = owner;
    v.initial = initial;
    g.vertices.push_back(std::move(v));
    return g.vertices.back();
  }
  // Adds an action to the most recently added vertices later via edge():
  void edge(const std::string& from, const std::string& action, const std::string& to,
            std::vector<Rat> rewards) {
    int v = g.vertex_index(from);
    Action a;
    a.id = action;
    a.target = g.vertex_index(to);
    a.rewards = std::move(rewards);
    g.vertices[v].actions.push_back(std::move(a));
  }
  Game finish() {
    validate_game(g);
    return std::move(g);
  }
};

Game figure1() {
  Builder b;
  b.player("p1");
  b.player("p2");
  b.player("p3");
  b.g.leader = 0;
  b.g.lambda = Rat(1, 2);
  Rat third(1, 3);
  b.vertex("v1", 0, third);
  b.vertex("v2", 1, third);
  b.vertex("v3", 2, third);
  b.vertex("s1", 0);
  b.vertex("s2", 1);
  b.vertex("s3", 2);
  b.edge("v1", "step", "v2", {0, 0, 0});
  b.edge("v1", "exit", "s1", {2, 1, 9});
  b.edge("v2", "step", "v3", {0, 0, 0});
  b.edge("v2", "exit", "s2", {9, 2, 1});
  b.edge("v3", "step", "v1", {0, 0, 0});
  b.edge("v3", "exit", "s3", {1, 9, 2});
  b.edge("s1", "loop", "s1", {0, 0, 0});
  b.edge("s2", "loop", "s2", {0, 0, 0});
  b.edge("s3", "loop", "s3", {0, 0, 0});
  return b.finish();
}

Game figure2() {
  Builder b;
  b.player("p1");
  b.player("p2");  // the leader
  b.player("p3");
  b.g.leader = 1;
  b.g.lambda = Rat(1, 2);
  b.vertex("v1", 0, Rat(1));
  b.vertex("v2", 1);
  b.vertex("v3", 2);
  b.edge("v1", "go", "v2", {0, 0, 0});
  b.edge("v1", "stay", "v1", {0, 0, 0});
  b.edge("v2", "exit", "v3", {-3, 3, 0});
  b.edge("v2", "loop", "v2", {1, 1, -2});
  b.edge("v3", "loop", "v3", {-3, 3, 0});
  return b.finish();
}

Game figure3(const Rat& eps) {
  if (!(eps > 0 && eps < 1))
    throw ValidationError("fig3 epsilon must satisfy 0 < epsilon < 1, got " + rat_str(eps));
  Builder b;
  b.player("p1");
  b.player("p2");  // the leader
  b.g.leader = 1;
  b.g.lambda = Rat(1, 2);
  b.vertex("v1", 0, Rat(1));
  b.vertex("v2", 1);
  b.vertex("v3", 0);
  b.vertex("v4", 0);
  b.edge("v1", "go", "v2", {0, 0});
  b.edge("v1", "out", "v4", {0, 0});
  b.edge("v2", "exit", "v3", {0, 0});
  b.edge("v2", "loop", "v2", {1, 0});
  b.edge("v3", "loop", "v3", {0, 50});
  b.edge("v4", "loop", "v4", {Rat(1) - eps, 0});
  return b.finish();
}

Game figure4() {
  Builder b;
  b.player("p1");
  b.player("p2");  // the leader
  b.g.leader = 1;
  b.g.lambda = Rat(2, 3);
  b.vertex("v1", 0, Rat(1));
  b.vertex("v2", 1);
  b.vertex("v3", 0);
  b.edge("v1", "go", "v2", {1, 0});
  b.edge("v1", "out", "v3", {0, 0});
  b.edge("v2", "take", "v2", {-1, 1});
  b.edge("v2", "skip", "v2", {0, 0});
  b.edge("v3", "loop", "v3", {0, 0});
  return b.finish();
}

Game figure5() {
  Builder b;
  b.player("p1");
  b.player("p2");
  b.player("leader");
  b.g.leader = 2;
  b.g.lambda = Rat(2, 3);
  b.vertex("v1", 0, Rat(1));
  b.vertex("v2", 1);
  b.vertex("v3", 2);
  b.vertex("s1", 0);
  b.vertex("s2", 1);
  b.edge("v1", "go", "v2", {0, 0, 0});
  b.edge("v1", "out", "s1", {0, 0, 0});
  b.edge("v2", "out", "s2", {0, 0, 0});
  b.edge("v2", "go", "v3", {-1, -1, 1});
  b.edge("v3", "left", "v3", {1, 0, 1});
  b.edge("v3", "right", "v3", {0, 1, 1});
  b.edge("s1", "loop", "s1", {0, 0, 0});
  b.edge("s2", "loop", "s2", {0, 0, 0});
  return b.finish();
}

}  // namespace

Game gen_figure(const std::string& name, std::optional<Rat> epsilon) {
  if (name == "fig3") return figure3(epsilon.value_or(Rat(1, 4)));
  if (epsilon)
    throw ValidationError("figure '" + name + "' takes no epsilon parameter");
  if (name == "fig1") return figure1();
  if (name == "fig2") return figure2();
  if (name == "fig4") return figure4();
  if (name == "fig5") return figure5();
  throw ValidationError("unknown figure '" + name + "' (expected fig1..fig5)");
}

CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula f;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  int declared_clauses = 0;
  std::vector<int> current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    if (tok == "c" || tok[0] == 'c') continue;
    if (tok == "p") {
      if (have_header) throw ParseError("line " + std::to_string(lineno) + ": duplicate header");
      std::string fmt;
      if (!(ls >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf")
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected header 'p cnf <vars> <clauses>'");
      if (f.num_vars < 1) throw ValidationError("header declares no variables");
      if (declared_clauses < 1) throw ValidationError("header declares no clauses");
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError("line " + std::to_string(lineno) + ": clause before 'p cnf' header");
    // Parse the tokens of this line as literals.
    ls.clear();
    ls.str(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw ValidationError("empty clause (line " + std::to_string(lineno) + ")");
        f.clauses.push_back(current);
        current.clear();
      } else {
        int var = lit > 0 ? lit : -lit;
        if (var > f.num_vars)
          throw ValidationError("literal " + std::to_string(lit) + " exceeds declared variable count");
        current.push_back(lit);
      }
    }
    if (!ls.eof()) throw ParseError("line " + std::to_string(lineno) + ": invalid literal token");
  }
  if (!have_header) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) throw ParseError("unterminated clause at end of input");
  if (static_cast<int>(f.clauses.size()) != declared_clauses)
    throw ValidationError("header declares " + std::to_string(declared_clauses) +
                          " clauses but " + std::to_string(f.clauses.size()) + " were given");
  return f;
}

Game gen_3sat(const CnfFormula& f, const Rat& lambda) {
  if (!(lambda > 0 && lambda < 1))
    throw ValidationError("discount factor lambda must satisfy 0 < lambda < 1, got " +
                          rat_str(lambda));
  if (f.num_vars < 1) throw ValidationError("formula must have at least one variable");
  if (f.clauses.empty()) throw ValidationError("formula must have at least one clause");
  for (const auto& cl : f.clauses) {
    if (cl.empty()) throw ValidationError("empty clause");
    if (cl.size() > 3) throw ValidationError("clause with more than 3 literals");
    for (int lit : cl)
      if (lit == 0 || std::abs(lit) > f.num_vars)
        throw ValidationError("literal " + std::to_string(lit) + " is out of range");
  }

  Game g;
  g.lambda = lambda;
  // Players: the leader plus one player per literal of every variable.
  g.players.push_back("leader");
  g.leader = 0;
  for (int v = 1; v <= f.num_vars; ++v) {
    g.players.push_back("x" + std::to_string(v));
    g.players.push_back("nx" + std::to_string(v));
  }
  auto lit_player = [&](int lit) {
    return lit > 0 ? 1 + 2 * (lit - 1) : 2 + 2 * (-lit - 1);
  };
  auto neg_player = [&](int lit) { return lit_player(-lit); };
  const int P = g.num_players();
  const int m = static_cast<int>(f.clauses.size());

  // Vertices: the start node, then per clause its literal vertices followed by
  // an inter-clause leader node, finally the absorbing vertex. The leader
  // routes the play through one literal per clause; a literal vertex either
  // passes the turn on (charging -1 to the complementary literal's player) or
  // bails out to the absorber, which charges the leader forever.
  std::vector<Rat> zero(P, Rat(0));
  Vertex start;
  start.id = "start";
  start.owner = 0;
  start.initial = 1;
  g.vertices.push_back(start);
  std::vector<std::vector<int>> lit_vertex(m);  // per clause, vertex indices
  std::vector<int> lnode(m);
  for (int j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < f.clauses[j].size(); ++k) {
      Vertex lv;
      lv.id = "c" + std::to_string(j + 1) + "l" + std::to_string(k + 1);
      lv.owner = lit_player(f.clauses[j][k]);
      lit_vertex[j].push_back(g.num_vertices());
      g.vertices.push_back(std::move(lv));
    }
    Vertex ln;
    ln.id = "L" + std::to_string(j + 1);
    ln.owner = 0;
    lnode[j] = g.num_vertices();
    g.vertices.push_back(std::move(ln));
  }
  Vertex absorb;
  absorb.id = "abs";
  absorb.owner = 0;
  const int abs_index = g.num_vertices();
  g.vertices.push_back(absorb);

  auto clause_fanout = [&](int vertex, int clause) {
    for (std::size_t k = 0; k < f.clauses[clause].size(); ++k) {
      Action a;
      a.id = "l" + std::to_string(k + 1);
      a.target = lit_vertex[clause][k];
      a.rewards = zero;
      g.vertices[vertex].actions.push_back(std::move(a));
    }
  };
  clause_fanout(0, 0);  // start picks a literal of clause 1
  for (int j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < f.clauses[j].size(); ++k) {
      int lv = lit_vertex[j][k];
      Action go;
      go.id = "go";
      go.target = lnode[j];
      go.rewards = zero;
      go.rewards[neg_player(f.clauses[j][k])] = -1;
      g.vertices[lv].actions.push_back(std::move(go));
      Action out;
      out.id = "out";
      out.target = abs_index;
      out.rewards = zero;
      g.vertices[lv].actions.push_back(std::move(out));
    }
    clause_fanout(lnode[j], (j + 1) % m);
  }
  Action loop;
  loop.id = "loop";
  loop.target = abs_index;
  loop.rewards = zero;
  loop.rewards[0] = -1;
  g.vertices[abs_index].actions.push_back(std::move(loop));

  validate_game(g);
  return g;
}

Game gen_random(int n_vertices, int max_actions, int n_players, int reward_range,
                std::uint64_t seed) {
  if (n_vertices < 1) throw ValidationError("gen_random: need at least one vertex");
  if (max_actions < 1) throw ValidationError("gen_random: need at least one action per vertex");
  if (n_players < 1) throw ValidationError("gen_random: need at least one player");
  if (reward_range < 0) throw ValidationError("gen_random: reward range must be non-negative");

  std::mt19937_64 rng(seed);
  // Raw modulo draws: slightly biased, but exact determinism is what matters
  // here and the moduli are tiny compared to 2^64.
  auto draw = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

  static const std::pair<int, int> lambdas[] = {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {2, 5}};
  Game g;
  auto lam = lambdas[draw(5)];
  g.lambda = Rat(lam.first, lam.second);
  for (int p = 1; p <= n_players; ++p) g.players.push_back("p" + std::to_string(p));
  g.leader = 0;
  for (int v = 1; v <= n_vertices; ++v) {
    Vertex vx;
    vx.id = "v" + std::to_string(v);
    vx.owner = draw(n_players);
    int acount = 1 + draw(max_actions);
    for (int a = 1; a <= acount; ++a) {
      Action act;
      act.id = "a" + std::to_string(a);
      act.target = draw(n_vertices);
      for (int p = 0; p < n_players; ++p)
        act.rewards.push_back(Rat(draw(2 * reward_range + 1) - reward_range));
      vx.actions.push_back(std::move(act));
    }
    g.vertices.push_back(std::move(vx));
  }
  if (n_vertices == 1 || draw(2) == 0) {
    g.vertices[0].initial = 1;
  } else {
    g.vertices[0].initial = Rat(1, 2);
    g.vertices[1].initial = Rat(1, 2);
  }
  validate_game(g);
  return g;
}

}  // namespace dsg

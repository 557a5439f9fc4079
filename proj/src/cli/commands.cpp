#include "decoy/cli/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "decoy/allocate.hpp"
#include "decoy/dot.hpp"
#include "decoy/error.hpp"
#include "decoy/generate.hpp"
#include "decoy/logic/scltl.hpp"
#include "decoy/report.hpp"
#include "decoy/verify.hpp"

namespace decoy::cli {

namespace fs = std::filesystem;
using report::Json;

namespace {

struct Common {
  std::string arena;
  std::string spec;
  std::string dfa;
  std::string out;
};

struct Loaded {
  Arena arena;
  logic::Dfa dfa;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream o(p, std::ios::binary);
  if (!o) throw InputError("cannot write " + p.string());
  o << text;
}

Loaded load(const Common& c) {
  if (c.arena.empty()) throw InputError("--arena is required");
  if (c.spec.empty() == c.dfa.empty()) throw InputError("exactly one of --spec and --dfa is required");
  Arena arena = load_arena_file(c.arena);
  logic::Dfa dfa = c.dfa.empty() ? logic::to_dfa(logic::parse_scltl(c.spec), arena.aps()) : logic::load_dfa_file(c.dfa);
  return {std::move(arena), std::move(dfa)};
}

// Prints to `out` when no output directory was given.
void emit(const Common& c, std::ostream& out, const std::string& file, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) out << text;
  else write_file(fs::path(c.out) / file, text);
}

void add_common(CLI::App* sub, Common& c, bool spec) {
  sub->add_option("--arena", c.arena, "arena document (JSON)");
  if (spec) {
    sub->add_option("--spec", c.spec, "attacker objective as an scLTL formula");
    sub->add_option("--dfa", c.dfa, "attacker objective as a DFA document (JSON)");
  }
  sub->add_option("--out", c.out, "output directory (default: print to stdout)");
}

int cmd_solve(const Common& c, const std::vector<std::string>& decoys, const std::string& counting, bool trim,
              std::ostream& out, std::ostream& err) {
  const Loaded in = load(c);
  if (decoys.empty()) err << "warning: no decoys given; the deceptive region is empty\n";
  const ProductGame pg = build_hypergame(in.arena, in.dfa, std::span<const std::string>(decoys));
  const PerceptualRegions pr = attacker_perceptual_regions(pg);
  const DeceptiveGame dg = build_deceptive_game(pg, pr.win2_2.members);
  const GameGraph graph = GameGraph::from_deceptive(dg);
  const WinRegions w = sure_win(graph, dg.targets());
  const StrategyPair strat = extract_strategy(graph, dg.targets(), w);

  const StateSet visible = visible_states(pg);
  const StateSet* mask = parse_counting(counting) == Counting::trimmed ? &visible : nullptr;
  Json j;
  j["counting"] = counting;
  j["decoys"] = decoys;
  j["win1_2"] = report::region(pg, pr.win1_2, mask);
  j["win2_2"] = report::region(pg, pr.win2_2, mask);
  j["dswin"] = report::region(pg, w.reacher, mask);
  j["strategy"] = report::strategy(pg, strat.reacher, mask);
  emit(c, out, "solve.json", j);

  if (!c.out.empty()) {
    ProductDotOptions o;
    o.only = trim ? &visible : nullptr;
    o.name = "hypergame";
    write_file(fs::path(c.out) / "hypergame.dot", product_dot(pg, o));
    o.name = "deceptive";
    o.dswin = &w.reacher.members;
    o.strategy = &strat.reacher;
    const StateSet shown = trim ? visible & dg.states() : dg.states();
    o.only = &shown;
    write_file(fs::path(c.out) / "deceptive.dot", product_dot(pg, o));
    out << "DSWin size " << (mask ? w.reacher.members.count_in(*mask) : w.reacher.size()) << "\n";
  }
  return ok;
}

struct AllocateArgs {
  std::vector<std::string> candidates;
  std::size_t k = 0;
  bool k_set = false;
  std::string method = "greedymax";
  std::string counting = "trimmed";
  std::uint64_t cap = std::uint64_t{1} << 20;
  bool compare = false;
  bool timing = false;
  std::string config;
};

// Config keys mirror the flags; paths are relative to the config file.
void apply_config(Common& c, AllocateArgs& a, const CLI::App& sub) {
  if (a.config.empty()) return;
  const fs::path base = fs::path(a.config).parent_path();
  Json j;
  try {
    j = Json::parse(read_file(a.config));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config: " + std::string(e.what()));
  }
  auto path_of = [&](const char* key) { return (base / j.at(key).get<std::string>()).string(); };
  try {
    if (c.arena.empty() && j.contains("arena")) c.arena = path_of("arena");
    if (c.spec.empty() && c.dfa.empty()) {
      if (j.contains("spec")) c.spec = j.at("spec").get<std::string>();
      if (j.contains("dfa")) c.dfa = path_of("dfa");
    }
    if (sub.count("--candidates") == 0 && j.contains("candidates"))
      a.candidates = j.at("candidates").get<std::vector<std::string>>();
    if (!a.k_set && j.contains("k")) a.k = j.at("k").get<std::size_t>(), a.k_set = true;
    if (sub.count("--method") == 0 && j.contains("method")) a.method = j.at("method").get<std::string>();
    if (sub.count("--counting") == 0 && j.contains("counting")) a.counting = j.at("counting").get<std::string>();
    if (sub.count("--cap") == 0 && j.contains("caps") && j.at("caps").contains("subsets"))
      a.cap = j.at("caps").at("subsets").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config: " + std::string(e.what()));
  }
}

int cmd_allocate(Common c, AllocateArgs a, const CLI::App& sub, std::ostream& out) {
  apply_config(c, a, sub);
  if (!a.k_set) throw InputError("--k is required");
  const Loaded in = load(c);
  AllocationOptions opt;
  opt.counting = parse_counting(a.counting);
  opt.subset_cap = a.cap;
  const AllocationProblem problem(in.arena, in.dfa, a.candidates, a.k, opt);

  std::vector<Method> methods;
  if (a.compare) methods = {Method::setcover, Method::greedymax, Method::exact};
  else methods = {parse_method(a.method)};

  Json results = Json::array();
  Json table = Json::array();
  for (Method m : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    const AllocationResult r = allocate(problem, m);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Json j = report::allocation(problem, r);
    if (a.timing) j["wall_time_s"] = secs;
    results.push_back(std::move(j));
    Json row;
    row["method"] = method_name(m);
    row["chosen"] = r.chosen;
    row["objective"] = r.objective;
    table.push_back(std::move(row));
    if (!c.out.empty()) {
      out << method_name(m) << ": {";
      for (std::size_t i = 0; i < r.chosen.size(); ++i) out << (i ? ", " : "") << r.chosen[i];
      out << "} objective " << r.objective << "\n";
    }
  }
  Json doc;
  if (a.compare) {
    doc["results"] = std::move(results);
    doc["comparison"] = std::move(table);
  } else {
    doc = std::move(results[0]);
  }
  emit(c, out, "allocation.json", doc);
  return ok;
}

struct VerifyArgs {
  std::vector<std::string> candidates;
  std::size_t k = 2;
  std::size_t batch = 0;
  std::uint64_t seed = 1;
  std::size_t states = 10;
  std::string counting = "trimmed";
  bool tamper = false;
};

int cmd_verify(const Common& c, const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  VerifyOptions vo;
  vo.tamper = a.tamper;
  AllocationOptions opt;
  opt.counting = parse_counting(a.counting);
  Json doc;
  bool passed = true;
  if (a.batch > 0) {
    InstanceParams ip;
    ip.min_states = ip.max_states = a.states;
    ip.k = a.k;
    Json runs = Json::array();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < a.batch; ++i) {
      const std::uint64_t seed = a.seed + i;
      const Instance inst = random_instance(ip, seed);
      const AllocationProblem p(inst.arena, inst.dfa, inst.candidates, inst.k, opt);
      const VerifyReport rep = verify_instance(p, vo);
      if (!rep.passed()) {
        ++failures;
        Json j = report::verification(rep);
        j["seed"] = seed;
        runs.push_back(std::move(j));
      }
    }
    passed = failures == 0;
    doc["status"] = passed ? "pass" : "fail";
    doc["instances"] = a.batch;
    doc["first_seed"] = a.seed;
    doc["failures"] = failures;
    doc["failed_runs"] = std::move(runs);
  } else {
    const Loaded in = load(c);
    const AllocationProblem p(in.arena, in.dfa, a.candidates, a.k, opt);
    const VerifyReport rep = verify_instance(p, vo);
    passed = rep.passed();
    doc = report::verification(rep);
  }
  emit(c, out, "verify.json", doc);
  if (!passed) {
    err << "verification failed\n";
    return property_failure;
  }
  return ok;
}

int cmd_export(const Common& c, const std::vector<std::string>& decoys, bool trim, std::ostream& out) {
  if (c.out.empty()) throw InputError("--out is required for export");
  if (c.arena.empty()) throw InputError("--arena is required");
  const fs::path dir(c.out);
  if (c.spec.empty() && c.dfa.empty()) {
    const Arena arena = with_decoys(load_arena_file(c.arena), std::span<const std::string>(decoys));
    write_file(dir / "arena.dot", arena_dot(arena));
    out << "wrote arena.dot\n";
    return ok;
  }
  const Loaded in = load(c);
  const ProductGame pg = build_hypergame(in.arena, in.dfa, std::span<const std::string>(decoys));
  write_file(dir / "arena.dot", arena_dot(pg.arena()));
  write_file(dir / "dfa.dot", dfa_dot(in.dfa));
  write_file(dir / "dfa.json", logic::dump_dfa(in.dfa) + "\n");
  const StateSet visible = visible_states(pg);
  ProductDotOptions o;
  o.only = trim ? &visible : nullptr;
  write_file(dir / "product.dot", product_dot(pg, o));
  out << "wrote arena.dot dfa.dot dfa.json product.dot\n";
  return ok;
}

struct GenArgs {
  std::uint64_t seed = 1;
  std::size_t states = 10;
  std::size_t branching = 3;
  std::size_t aps = 2;
  std::size_t dfa_states = 3;
  std::size_t candidates = 4;
  std::size_t k = 2;
  std::size_t product_states = 0;
};

int cmd_gen(const Common& c, const GenArgs& g, std::ostream& out) {
  if (c.out.empty()) throw InputError("--out is required for gen");
  Instance inst = [&] {
    if (g.product_states > 0) return scalability_instance(g.product_states, g.seed);
    InstanceParams ip;
    ip.min_states = ip.max_states = g.states;
    ip.branching = g.branching;
    ip.aps = g.aps;
    ip.min_dfa_states = ip.max_dfa_states = g.dfa_states;
    ip.candidates = g.candidates;
    ip.k = g.k;
    return random_instance(ip, g.seed);
  }();
  const fs::path dir(c.out);
  write_file(dir / "arena.json", dump_arena(inst.arena) + "\n");
  write_file(dir / "dfa.json", logic::dump_dfa(inst.dfa) + "\n");
  Json cfg;
  cfg["arena"] = "arena.json";
  cfg["dfa"] = "dfa.json";
  cfg["candidates"] = inst.candidates;
  cfg["k"] = inst.k;
  cfg["method"] = "greedymax";
  cfg["counting"] = "trimmed";
  write_file(dir / "config.json", cfg.dump(2) + "\n");
  out << "wrote arena.json dfa.json config.json (seed " << g.seed << ")\n";
  return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deceptive decoy allocation for attack-defend games on graphs", "decoy"};
  app.require_subcommand(1);

  Common c;
  std::vector<std::string> decoys;
  std::string counting = "trimmed";
  bool trim = false;
  AllocateArgs aa;
  VerifyArgs va;
  GenArgs ga;

  auto* solve = app.add_subcommand("solve", "solve the deceptive game for a fixed decoy set");
  add_common(solve, c, true);
  solve->add_option("--decoys", decoys, "decoy states")->delimiter(',');
  solve->add_option("--counting", counting, "trimmed or full listing")->check(CLI::IsMember({"trimmed", "full"}));
  solve->add_flag("--trim", trim, "draw only states reachable and relevant");

  auto* alloc = app.add_subcommand("allocate", "choose decoy states under a budget");
  add_common(alloc, c, true);
  alloc->add_option("--config", aa.config, "allocation config (JSON)");
  alloc->add_option("--candidates", aa.candidates, "candidate states")->delimiter(',');
  alloc->add_option("--k", aa.k, "budget")->each([&](const std::string&) { aa.k_set = true; });
  alloc->add_option("--method", aa.method, "greedymax, setcover or exact");
  alloc->add_flag("--compare", aa.compare, "run all three methods");
  alloc->add_option("--counting", aa.counting, "trimmed or full");
  alloc->add_option("--cap", aa.cap, "subset cap for the exact method");
  alloc->add_flag("--timing", aa.timing, "include wall time in the report");

  auto* ver = app.add_subcommand("verify", "check composition, order and strategy properties");
  add_common(ver, c, true);
  ver->add_option("--candidates", va.candidates, "candidate states")->delimiter(',');
  ver->add_option("--k", va.k, "budget for the greedy prefix check");
  ver->add_option("--batch", va.batch, "number of seeded random instances instead of --arena");
  ver->add_option("--seed", va.seed, "first seed of the batch");
  ver->add_option("--states", va.states, "arena states per random instance");
  ver->add_option("--counting", va.counting, "trimmed or full");
  ver->add_flag("--tamper", va.tamper)->group("");

  auto* exp = app.add_subcommand("export", "write DOT renderings");
  add_common(exp, c, true);
  exp->add_option("--decoys", decoys, "decoy states")->delimiter(',');
  exp->add_flag("--trim", trim, "draw only states reachable and relevant");

  auto* gen = app.add_subcommand("gen", "write a seeded random instance");
  gen->add_option("--out", c.out, "output directory");
  gen->add_option("--seed", ga.seed, "random seed");
  gen->add_option("--states", ga.states, "arena states");
  gen->add_option("--branching", ga.branching, "max successors per state");
  gen->add_option("--aps", ga.aps, "number of propositions");
  gen->add_option("--dfa-states", ga.dfa_states, "DFA states");
  gen->add_option("--candidates", ga.candidates, "number of candidates");
  gen->add_option("--k", ga.k, "budget");
  gen->add_option("--product-states", ga.product_states, "scalability instance of about this many product states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? ok : input_error;
  }

  try {
    if (*solve) return cmd_solve(c, decoys, counting, trim, out, err);
    if (*alloc) return cmd_allocate(c, aa, *alloc, out);
    if (*ver) return cmd_verify(c, va, out, err);
    if (*exp) return cmd_export(c, decoys, trim, out);
    if (*gen) return cmd_gen(c, ga, out);
  } catch (const ResourceCapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    return resource_cap;
  } catch (const PropertyFailure& e) {
    err << "property failure: " << e.what() << "\n";
    return property_failure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return property_failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace decoy::cli

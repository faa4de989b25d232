#include "ekr/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "ekr/bounds.hpp"
#include "ekr/conjecture.hpp"
#include "ekr/cyclic.hpp"
#include "ekr/family_io.hpp"
#include "ekr/lemmas.hpp"
#include "ekr/rng.hpp"
#include "ekr/search.hpp"

namespace ekr {

namespace {

using nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  std::string format = "text";
};

// What a command produced: the JSON report, an optional text rendering, and an
// optional table for CSV. Without a table, CSV lists the top-level scalars.
struct Output {
  json report = json::object();
  std::string text;
  std::vector<std::vector<std::string>> table;
  int code = kExitOk;
};

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const Output& o, const std::string& format) {
  if (format == "json") return o.report.dump(2) + "\n";
  if (format == "csv") {
    auto table = o.table;
    if (table.empty()) {
      std::vector<std::string> head, row;
      for (const auto& [k, v] : o.report.items()) {
        if (v.is_structured()) continue;
        head.push_back(k);
        row.push_back(scalar_text(v));
      }
      table = {head, row};
    }
    std::string s;
    for (const auto& row : table) {
      for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
      s += "\n";
    }
    return s;
  }
  if (!o.text.empty()) return o.text;
  std::string s;
  for (const auto& [k, v] : o.report.items()) {
    if (!v.is_structured()) s += k + ": " + scalar_text(v) + "\n";
  }
  return s;
}

Universe make_universe(int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw Error("part sizes must be non-negative");
  return Universe(n1, n2);
}

std::string default_profiles(const Universe& u) {
  // every proper profile
  std::string s;
  for (int k = u.n1() > 0 ? 1 : 0; k <= std::max(0, u.n1() - 1); ++k) {
    for (int l = u.n2() > 0 ? 1 : 0; l <= std::max(0, u.n2() - 1); ++l) {
      if (!s.empty()) s += ";";
      s += u.one_part() ? std::to_string(u.n1() > 0 ? k : l) : std::to_string(k) + "," + std::to_string(l);
    }
  }
  return s;
}

json profiles_json(const ProfileList& pl) {
  json arr = json::array();
  for (Profile p : pl) arr.push_back({p.k, p.l});
  return arr;
}

// ---------------------------------------------------------------- commands

struct BoundsArgs {
  int n1 = 0, n2 = 0;
  std::string profiles;
  std::string which = "all";
};

Output cmd_bounds(const BoundsArgs& a) {
  const Universe u = Universe::unbounded(a.n1, a.n2);
  const ProfileList pl = parse_profiles(a.profiles, u);
  std::vector<std::pair<std::string, std::function<json()>>> rows;
  auto single = [&]() -> Profile {
    if (pl.size() != 1) throw Error("needs a single profile");
    return *pl.begin();
  };
  if (u.one_part()) {
    const int n = u.size();
    auto k = [&] { return u.n1() > 0 ? single().k : single().l; };
    rows.push_back({"ekr", [&] { return bigint_to_json(ekr_bound(n, k())); }});
    rows.push_back({"hm", [&] { return bigint_to_json(hm_bound(n, k())); }});
    rows.push_back({"cross", [&] { return bigint_to_json(cross_bound(n, k())); }});
  } else {
    rows.push_back({"star_x1", [&] { return bigint_to_json(star_size(u, pl, Side::X1)); }});
    rows.push_back({"star_x2", [&] { return bigint_to_json(star_size(u, pl, Side::X2)); }});
    rows.push_back({"frankl", [&] { return bigint_to_json(frankl_bound(u, single())); }});
    rows.push_back({"thm3", [&] { return bigint_to_json(theorem3_bound(u, pl)); }});
    rows.push_back({"thm3_applicable", [&] { return json(theorem3_applicable(u, pl)); }});
    rows.push_back({"conj1", [&] { return bigint_to_json(conjecture1_bound(u, single())); }});
    rows.push_back({"conj2", [&] { return bigint_to_json(conjecture2_bound(u, single())); }});
  }
  Output o;
  o.report = {{"n1", a.n1}, {"n2", a.n2}, {"profiles", profiles_json(pl)}, {"bounds", json::object()}};
  o.table.push_back({"bound", "value"});
  bool any = false;
  for (const auto& [name, eval] : rows) {
    if (a.which != "all" && a.which != name) continue;
    any = true;
    json v;
    try {
      v = eval();
    } catch (const Error& e) {
      v = std::string("n/a: ") + e.what();
    }
    o.report["bounds"][name] = v;
    o.table.push_back({name, scalar_text(v)});
    o.text += name + " = " + scalar_text(v) + "\n";
  }
  if (!any) throw Error("unknown bound '" + a.which + "'");
  return o;
}

struct EnumerateArgs {
  int n1 = 0, n2 = 0;
  std::string profiles;
  bool count_only = false;
};

Output cmd_enumerate(const EnumerateArgs& a) {
  const Universe u = make_universe(a.n1, a.n2);
  const ProfileList pl = parse_profiles(a.profiles, u);
  const auto sets = enumerate_candidates(u, pl);
  Output o;
  o.report = {{"n1", a.n1}, {"n2", a.n2}, {"profiles", profiles_json(pl)}, {"count", sets.size()}};
  o.text = "count: " + std::to_string(sets.size()) + "\n";
  o.table.push_back({"set"});
  if (!a.count_only) {
    o.report["sets"] = sets_to_json(sets);
    for (PartSet s : sets) {
      o.text += to_string(s) + "\n";
      o.table.push_back({to_string(s)});
    }
  }
  return o;
}

Output cmd_check_family(const std::string& file) {
  const Family f = load_family(file);
  const Triviality t = is_trivially_intersecting(f);
  std::set<Profile> profiles;
  for (PartSet s : f.sets()) profiles.insert(profile_of(f.universe(), s));
  json pj = json::array();
  for (Profile p : profiles) pj.push_back({p.k, p.l});
  Output o;
  o.report = {{"n1", f.universe().n1()},
              {"n2", f.universe().n2()},
              {"size", f.size()},
              {"profiles", pj},
              {"intersecting", is_intersecting(f)},
              {"trivial", t.trivial},
              {"nontrivial", satisfies(f, Constraint::NonTrivial)},
              {"two_sided", satisfies(f, Constraint::TwoSided)}};
  if (t.witness) o.report["common_element"] = *t.witness;
  return o;
}

struct SearchArgs {
  int n1 = 0, n2 = 0;
  std::string profiles;
  std::string constraint = "any";
  std::optional<std::uint64_t> node_limit;
  std::optional<std::int64_t> time_limit_ms;
  std::size_t vertex_cap = CompatibilityGraph::kDefaultVertexCap;
  bool no_symmetry = false;
  std::string save_witness;
};

Output cmd_search(const SearchArgs& a, const Globals& g) {
  const Universe u = make_universe(a.n1, a.n2);
  const ProfileList pl = parse_profiles(a.profiles, u);
  const Constraint c = parse_constraint(a.constraint);
  SearchBudget budget;
  budget.node_limit = a.node_limit;
  if (a.time_limit_ms) budget.time_limit = std::chrono::milliseconds(*a.time_limit_ms);
  SearchOptions opt;
  opt.threads = g.threads;
  opt.symmetry = !a.no_symmetry;
  const SearchResult r = max_intersecting(u, pl, c, budget, opt, a.vertex_cap);
  if (!a.save_witness.empty()) save_family(r.witness, a.save_witness);
  Output o;
  o.report = {{"n1", a.n1}, {"n2", a.n2}, {"profiles", profiles_json(pl)}, {"constraint", std::string(to_string(c))}};
  o.report.update(to_json(r));
  std::ostringstream t;
  t << "max_size: " << r.max_size << (r.proven_optimal ? " (proven optimal)" : " (budget exhausted, lower bound)")
    << "\nnodes: " << r.nodes << "\n";
  for (PartSet s : r.witness.sets()) t << "  " << to_string(s) << "\n";
  o.text = t.str();
  return o;
}

struct VerifyArgs {
  std::string lemma;
  LemmaParams p;
  std::string profiles;
  std::string mode = "exhaustive";
  std::size_t trials = 1000;
  std::uint64_t node_cap = kDefaultLemmaNodeCap;
};

Output cmd_verify(VerifyArgs a, const Globals& g) {
  const LemmaId id = parse_lemma_id(a.lemma);
  if (!a.profiles.empty()) {
    const ProfileList pl = parse_profiles(a.profiles, Universe::unbounded(std::max(a.p.n1, 1), std::max(a.p.n2, 1)));
    a.p.profiles.assign(pl.begin(), pl.end());
  }
  VerifyMode mode;
  if (a.mode == "sampled") {
    mode = VerifyMode::sampled(g.seed, a.trials);
  } else if (a.mode != "exhaustive") {
    throw Error("mode must be exhaustive or sampled");
  }
  const VerificationReport r = verify_lemma(id, a.p, mode, a.node_cap);
  if (r.hypothesis_failure) throw Error(to_string(id) + ": " + *r.hypothesis_failure);
  Output o;
  o.report = to_json(r);
  std::ostringstream t;
  t << to_string(id) << " " << o.report["mode"].get<std::string>() << ": " << (r.passed() ? "pass" : "FAIL") << "\n"
    << "instances: " << r.instances << "\nhypothesis_rejections: " << r.hypothesis_rejections
    << "\ncounterexamples: " << r.counterexample_count << "\n";
  for (const auto& [k, v] : r.notes.items()) t << k << ": " << scalar_text(v) << "\n";
  o.text = t.str();
  o.code = r.passed() ? kExitOk : kExitCounterexample;
  return o;
}

struct DoubleCountArgs {
  int n1 = 0, n2 = 0;
  std::string profiles;
  std::string file;
  std::size_t random = 0;
};

Output cmd_double_count(const DoubleCountArgs& a, const Globals& g) {
  std::vector<Family> families;
  if (!a.file.empty()) {
    families.push_back(load_family(a.file));
  } else {
    if (a.random == 0) throw Error("give --file or --random N");
    const Universe u = make_universe(a.n1, a.n2);
    const ProfileList pl = parse_profiles(a.profiles.empty() ? default_profiles(u) : a.profiles, u);
    for (std::size_t i = 0; i < a.random; ++i) {
      auto rng = fork_rng(g.seed, i);
      families.push_back(random_subfamily(u, pl, rng));
    }
  }
  Output o;
  json rows = json::array();
  std::size_t exact = 0;
  o.table.push_back({"index", "size", "by_member", "by_pair", "holds"});
  for (std::size_t i = 0; i < families.size(); ++i) {
    const DoubleCount dc = double_count_check(families[i]);
    exact += dc.holds();
    rows.push_back({{"size", dc.family_size},
                    {"by_member", rational_to_json(dc.by_member)},
                    {"by_pair", rational_to_json(dc.by_pair)},
                    {"pairs", dc.pairs},
                    {"holds", dc.holds()}});
    o.table.push_back({std::to_string(i), std::to_string(dc.family_size), scalar_text(rows.back()["by_member"]),
                       scalar_text(rows.back()["by_pair"]), dc.holds() ? "true" : "false"});
  }
  o.report = {{"families", families.size()}, {"exact", exact}, {"results", rows}};
  o.text = std::to_string(exact) + "/" + std::to_string(families.size()) + " exact equalities\n";
  o.code = exact == families.size() ? kExitOk : kExitCounterexample;
  return o;
}

struct HuntArgs {
  int conjecture = 0;
  std::string grid;
  std::string jsonl;
  std::string csv;
  bool resume = false;
};

Output cmd_hunt(const HuntArgs& a, const Globals& g) {
  ParameterGrid grid = default_grid();
  if (!a.grid.empty()) {
    std::ifstream in(a.grid);
    if (!in) throw Error("cannot read " + a.grid);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(a.grid + ": " + e.what());
    }
    grid = grid_from_json(j);
  }
  HuntOptions opt;
  opt.jsonl = a.jsonl.empty() ? "hunt_conj" + std::to_string(a.conjecture) + ".jsonl" : a.jsonl;
  opt.csv = a.csv.empty() ? std::filesystem::path(*opt.jsonl).replace_extension(".csv") : std::filesystem::path(a.csv);
  opt.resume = a.resume;
  opt.threads = g.threads;
  const HuntReport rep = hunt(grid, a.conjecture, opt);
  Output o;
  json counts = json::object();
  for (CellStatus s : {CellStatus::Confirmed, CellStatus::Counterexample, CellStatus::BudgetExhausted,
                       CellStatus::Vacuous, CellStatus::Error}) {
    counts[std::string(to_string(s))] = rep.count(s);
  }
  json cells = json::array();
  for (const auto& r : rep.records) cells.push_back(to_json(r));
  o.report = {{"conjecture", a.conjecture}, {"cells", rep.records.size()}, {"resumed", rep.resumed},
              {"computed", rep.computed},   {"jsonl", opt.jsonl->string()},  {"csv", opt.csv->string()},
              {"status_counts", counts},    {"records", cells}};
  std::ostringstream t;
  t << "conjecture " << a.conjecture << ": " << rep.records.size() << " cells (" << rep.resumed << " resumed)\n";
  for (const auto& [k, v] : counts.items()) t << "  " << k << ": " << v.dump() << "\n";
  for (const auto& r : rep.records) {
    if (r.status == CellStatus::Counterexample || r.status == CellStatus::Error) {
      t << "  " << to_string(r.status) << " at (" << r.cell.n1 << "," << r.cell.n2 << "," << r.cell.profile.k << ","
        << r.cell.profile.l << "): found " << r.found_max << " > bound " << r.conjectured_bound << r.message << "\n";
    }
  }
  o.text = t.str();
  std::istringstream csv(hunt_csv(rep));
  for (std::string line; std::getline(csv, line);) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(cell);
    o.table.push_back(row);
  }
  const bool bad = rep.count(CellStatus::Counterexample) > 0 || rep.count(CellStatus::Error) > 0;
  o.code = bad ? kExitCounterexample : kExitOk;
  return o;
}

struct CrossArgs {
  int n = 0, k = 0;
  std::optional<std::uint64_t> node_limit;
};

Output cmd_cross(const CrossArgs& a) {
  const CrossResult r = max_cross_intersecting(a.n, a.k, a.node_limit);
  const BigInt bound = cross_bound(a.n, a.k);
  Output o;
  o.report = {{"n", a.n}, {"k", a.k}, {"bound", bigint_to_json(bound)}};
  o.report.update(to_json(r));
  o.report["equal"] = BigInt(r.max_total) == bound;
  o.text = "max |F|+|G|: " + std::to_string(r.max_total) + (r.proven_optimal ? "" : " (budget exhausted)") +
           "\nbound: " + bound.str() + "\n";
  o.code = r.proven_optimal && BigInt(r.max_total) > bound ? kExitCounterexample : kExitOk;
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for intersecting families on partitioned universes"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every sampled or random step")->default_val(0);
  app.add_option("--threads", g.threads, "Worker threads")->default_val(1)->check(CLI::Range(1U, 256U));
  app.add_option("--out", g.out, "Write the report to this file instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));

  auto add_parts = [](CLI::App* sub, int& n1, int& n2, std::string& profiles, bool need_profiles) {
    sub->add_option("--n1", n1, "Size of X1")->required();
    sub->add_option("--n2", n2, "Size of X2 (0 for one part)")->default_val(0);
    auto* p = sub->add_option("--profiles", profiles, "Profiles as \"k,l;k,l\" (or \"k\" for one part)");
    if (need_profiles) p->required();
  };

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the closed-form bounds");
  add_parts(bounds, ba.n1, ba.n2, ba.profiles, true);
  bounds->add_option("--which", ba.which, "One bound by name, or all");

  EnumerateArgs ea;
  auto* enumerate = app.add_subcommand("enumerate", "List the candidate sets of the profiles");
  add_parts(enumerate, ea.n1, ea.n2, ea.profiles, true);
  enumerate->add_flag("--count-only", ea.count_only);

  std::string family_file;
  auto* check = app.add_subcommand("check-family", "Test a family file against the intersection predicates");
  check->add_option("file", family_file, "Family JSON file")->required()->check(CLI::ExistingFile);

  SearchArgs sa;
  auto* search = app.add_subcommand("search-max", "Exact maximum intersecting family");
  add_parts(search, sa.n1, sa.n2, sa.profiles, true);
  search->add_option("--constraint", sa.constraint, "any, nontrivial or twosided");
  search->add_option("--node-limit", sa.node_limit);
  search->add_option("--time-limit-ms", sa.time_limit_ms);
  search->add_option("--vertex-cap", sa.vertex_cap);
  search->add_flag("--no-symmetry", sa.no_symmetry);
  search->add_option("--save-witness", sa.save_witness, "Write the witness family here");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-lemma", "Check a lemma or corollary on a parameter range");
  verify->add_option("lemma", va.lemma, "1..9, C1..C3")->required();
  for (auto [name, field] : {std::pair{"--n", &va.p.n}, {"--k", &va.p.k}, {"--l", &va.p.l}, {"--b", &va.p.b},
                             {"--n1", &va.p.n1}, {"--n2", &va.p.n2}}) {
    verify->add_option(name, *field);
  }
  verify->add_option("--profiles", va.profiles);
  verify->add_option("--mode", va.mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  verify->add_option("--trials", va.trials);
  verify->add_option("--node-cap", va.node_cap);

  DoubleCountArgs da;
  auto* dcount = app.add_subcommand("double-count", "Exact double count over cyclic permutation pairs");
  dcount->add_option("--n1", da.n1);
  dcount->add_option("--n2", da.n2);
  dcount->add_option("--profiles", da.profiles, "Defaults to every proper profile");
  dcount->add_option("--file", da.file)->check(CLI::ExistingFile);
  dcount->add_option("--random", da.random, "Number of seeded random families");

  HuntArgs ha;
  auto* hunt_cmd = app.add_subcommand("hunt", "Sweep a grid against a conjecture");
  hunt_cmd->add_option("--conjecture", ha.conjecture)->required()->check(CLI::IsMember({1, 2}));
  hunt_cmd->add_option("--grid", ha.grid, "Grid JSON; default n1, n2 <= 5, k, l <= 2")->check(CLI::ExistingFile);
  hunt_cmd->add_option("--jsonl", ha.jsonl, "Record file");
  hunt_cmd->add_option("--csv", ha.csv, "Summary file");
  hunt_cmd->add_flag("--resume", ha.resume, "Skip cells already in the record file");

  CrossArgs ca;
  auto* cross = app.add_subcommand("cross-max", "Largest non-empty cross-intersecting pair");
  cross->add_option("--n", ca.n)->required();
  cross->add_option("--k", ca.k)->required();
  cross->add_option("--node-limit", ca.node_limit);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Output o;
    if (*bounds) o = cmd_bounds(ba);
    else if (*enumerate) o = cmd_enumerate(ea);
    else if (*check) o = cmd_check_family(family_file);
    else if (*search) o = cmd_search(sa, g);
    else if (*verify) o = cmd_verify(va, g);
    else if (*dcount) o = cmd_double_count(da, g);
    else if (*hunt_cmd) o = cmd_hunt(ha, g);
    else o = cmd_cross(ca);
    const std::string text = render(o, g.format);
    if (g.out.empty()) {
      out << text;
    } else {
      std::ofstream f(g.out, std::ios::trunc);
      if (!f) throw Error("cannot write " + g.out);
      f << text;
    }
    return o.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitCounterexample;
  }
}

}  // namespace ekr

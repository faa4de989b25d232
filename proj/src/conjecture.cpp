#include "ekr/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ekr/family_io.hpp"

namespace ekr {

namespace {

constexpr std::pair<ConstructionKind, std::string_view> kKindNames[] = {
    {ConstructionKind::HmOnePart, "hm-one-part"},
    {ConstructionKind::Conj1SideX1, "conj1-side-x1"},
    {ConstructionKind::Conj1SideX2, "conj1-side-x2"},
    {ConstructionKind::TwoSidedX1Anchor, "two-sided-x1-anchor"},
    {ConstructionKind::TwoSidedX2Anchor, "two-sided-x2-anchor"},
};

bool two_sided_kind(ConstructionKind k) {
  return k == ConstructionKind::TwoSidedX1Anchor || k == ConstructionKind::TwoSidedX2Anchor;
}

// Side holding x (and K, or L and L').
Side anchor_side(ConstructionKind k) {
  switch (k) {
    case ConstructionKind::Conj1SideX2:
    case ConstructionKind::TwoSidedX2Anchor:
      return Side::X2;
    default:
      return Side::X1;
  }
}

PartSet run(int from, int count) { return PartSet(low_bits(count) << from); }

int size_on(Side s, Profile p) { return s == Side::X1 ? p.k : p.l; }

}  // namespace

std::string_view to_string(ConstructionKind kind) {
  for (auto [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

ConstructionKind parse_construction_kind(std::string_view text) {
  for (auto [k, name] : kKindNames) {
    if (name == text) return k;
  }
  throw Error("unknown construction '" + std::string(text) + "'");
}

ConstructionSpec default_construction(ConstructionKind kind, const Universe& u, Profile p) {
  ConstructionSpec s;
  s.kind = kind;
  s.universe = u;
  s.profile = p;
  const Side a = anchor_side(kind);
  const int base = a == Side::X1 ? 0 : u.n1();
  const int other = a == Side::X1 ? u.n1() : 0;
  const int m = size_on(a, p);
  s.x = base;
  if (two_sided_kind(kind)) {
    s.L_prime = run(base, m);
    s.L = run(base + m, m);
    s.K = run(other, size_on(a == Side::X1 ? Side::X2 : Side::X1, p));
  } else {
    s.K = run(base + 1, m);
  }
  return s;
}

Family build_construction(const ConstructionSpec& spec) {
  const Universe& u = spec.universe;
  const Profile p = spec.profile;
  validate_profile(u, p);
  const Side a = anchor_side(spec.kind);
  const std::uint64_t anchor = u.part_mask(a);
  const std::uint64_t rest = u.mask() & ~anchor;
  const int m = size_on(a, p);
  auto inside = [](PartSet s, std::uint64_t mask) { return (s.bits() & ~mask) == 0; };
  if (spec.kind == ConstructionKind::HmOnePart && !u.one_part()) throw Error("hm-one-part needs a one-part universe");
  if (m < 1) throw Error("the anchor side of the profile is empty");
  if (spec.x < 0 || spec.x >= u.size() || !((anchor >> spec.x) & 1U)) throw Error("x is not on the anchor side");

  std::vector<PartSet> sets;
  if (!two_sided_kind(spec.kind)) {
    if (spec.K.size() != m || !inside(spec.K, anchor)) throw Error("K must be an anchor-side set of the profile size");
    if (spec.K.contains(spec.x)) throw Error("x must lie outside K");
    for (PartSet s : enumerate_profile_sets(u, p)) {
      const PartSet part(s.bits() & anchor);
      if ((part.contains(spec.x) && part.intersects(spec.K)) || part == spec.K) sets.push_back(s);
    }
  } else {
    const int other_size = size_on(a == Side::X1 ? Side::X2 : Side::X1, p);
    if (spec.L.size() != m || spec.L_prime.size() != m || !inside(spec.L, anchor) || !inside(spec.L_prime, anchor)) {
      throw Error("L and L' must be anchor-side sets of the profile size");
    }
    if (spec.L.intersects(spec.L_prime)) throw Error("L and L' must be disjoint");
    if (!spec.L_prime.contains(spec.x)) throw Error("x must lie in L'");
    if (spec.K.size() != other_size || !inside(spec.K, rest)) throw Error("K must be an opposite-side set of the profile size");
    for (PartSet s : enumerate_profile_sets(u, p)) {
      const PartSet mpart(s.bits() & anchor);
      const PartSet fpart(s.bits() & rest);
      bool keep = false;
      if (mpart == spec.L) {
        keep = fpart == spec.K;
      } else if (mpart == spec.L_prime) {
        keep = fpart.intersects(spec.K);
      } else {
        keep = mpart.contains(spec.x) && mpart.intersects(spec.L);
      }
      if (keep) sets.push_back(s);
    }
  }
  Family f(u, std::move(sets));
  const Constraint c = two_sided_kind(spec.kind) ? Constraint::TwoSided : Constraint::NonTrivial;
  if (!satisfies(f, c)) {
    throw Error(std::string(to_string(spec.kind)) + " construction is not " + std::string(to_string(c)) +
                " at these parameters");
  }
  return f;
}

BigInt construction_term(ConstructionKind kind, const Universe& u, Profile p) {
  switch (kind) {
    case ConstructionKind::HmOnePart:
      return u.n1() > 0 ? hm_bound(u.n1(), p.k) : hm_bound(u.n2(), p.l);
    case ConstructionKind::Conj1SideX1:
      return conjecture1_terms(u, p).x1_side;
    case ConstructionKind::Conj1SideX2:
      return conjecture1_terms(u, p).x2_side;
    case ConstructionKind::TwoSidedX1Anchor:
      return conjecture2_terms(u, p).x1_side;
    case ConstructionKind::TwoSidedX2Anchor:
      return conjecture2_terms(u, p).x2_side;
  }
  return 0;
}

// ---------------------------------------------------------------- cross-intersecting

namespace {

struct CrossInstance {
  std::vector<PartSet> cand;
  std::vector<std::uint64_t> meet;  // candidates meeting candidate i, as index bits
  std::uint64_t all = 0;

  CrossInstance(int n, int k) {
    if (k < 1 || 2 * k > n) throw Error("cross-intersecting search needs 1 <= k and 2k <= n");
    if (binomial(n, k) > kMaxCrossCandidates) {
      throw Error("C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds " +
                  std::to_string(kMaxCrossCandidates) + " candidates");
    }
    cand = enumerate_profile_sets(Universe(n, 0), {k, 0});
    all = low_bits(static_cast<int>(cand.size()));
    meet.assign(cand.size(), 0);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      for (std::size_t j = 0; j < cand.size(); ++j) {
        if (cand[i].intersects(cand[j])) meet[i] |= std::uint64_t{1} << j;
      }
    }
  }

  std::uint64_t forced(std::uint64_t x) const {
    std::uint64_t g = all;
    for (; x; x &= x - 1) g &= meet[static_cast<std::size_t>(std::countr_zero(x))];
    return g;
  }

  std::vector<PartSet> sets(std::uint64_t x) const {
    std::vector<PartSet> out;
    for (; x; x &= x - 1) out.push_back(cand[static_cast<std::size_t>(std::countr_zero(x))]);
    return out;
  }
};

}  // namespace

CrossResult max_cross_intersecting(int n, int k, std::optional<std::uint64_t> node_limit) {
  const CrossInstance inst(n, k);
  // Some optimum has F = forced(G) and G = forced(F), and by symmetry F holds the first
  // candidate. Closed sets F above that are listed once each by prefix-preserving closure
  // extension.
  CrossResult res;
  std::uint64_t best_f = 0, best_g = 0;
  auto consider = [&](std::uint64_t f, std::uint64_t g) {
    const auto total = static_cast<std::size_t>(std::popcount(f) + std::popcount(g));
    if (total > res.max_total) {
      res.max_total = total;
      best_f = f;
      best_g = g;
    }
  };
  const int m = static_cast<int>(inst.cand.size());
  auto rec = [&](auto&& self, std::uint64_t p, std::uint64_t gp, int core) -> void {
    for (int e = core + 1; e < m; ++e) {
      if ((p >> e) & 1U) continue;
      if (node_limit && res.nodes >= *node_limit) {
        res.proven_optimal = false;
        return;
      }
      ++res.nodes;
      const std::uint64_t g = gp & inst.meet[static_cast<std::size_t>(e)];
      if (!g) continue;
      const std::uint64_t q = inst.forced(g);
      const std::uint64_t prefix = low_bits(e);
      if ((q & prefix) != (p & prefix)) continue;
      consider(q, g);
      self(self, q, g, e);
    }
  };
  const std::uint64_t g0 = inst.meet[0];
  const std::uint64_t p0 = inst.forced(g0);
  consider(p0, g0);
  rec(rec, p0, g0, -1);
  res.f = inst.sets(best_f);
  res.g = inst.sets(best_g);
  return res;
}

std::size_t cross_intersecting_brute_force(int n, int k) {
  const CrossInstance inst(n, k);
  if (inst.cand.size() > 12) throw Error("brute force is limited to 12 candidates");
  std::size_t best = 0;
  for (std::uint64_t f = 1; f <= inst.all; ++f) {
    for (std::uint64_t g = 1; g <= inst.all; ++g) {
      bool ok = true;
      for (std::uint64_t x = f; x && ok; x &= x - 1) {
        ok = (g & ~inst.meet[static_cast<std::size_t>(std::countr_zero(x))]) == 0;
      }
      if (ok) best = std::max(best, static_cast<std::size_t>(std::popcount(f) + std::popcount(g)));
    }
  }
  return best;
}

nlohmann::json to_json(const CrossResult& r) {
  return {{"max_total", r.max_total},
          {"f", sets_to_json(r.f)},
          {"g", sets_to_json(r.g)},
          {"proven_optimal", r.proven_optimal},
          {"nodes", r.nodes}};
}

// ---------------------------------------------------------------- grids

std::vector<HuntCell> ParameterGrid::cells() const {
  std::vector<HuntCell> out;
  for (int a : n1) {
    for (int b : n2) {
      for (Profile p : profiles) {
        if (p.k >= 1 && 2 * p.k <= a && p.l >= 1 && 2 * p.l <= b) out.push_back({a, b, p});
      }
    }
  }
  return out;
}

ParameterGrid default_grid() {
  ParameterGrid g;
  g.n1 = g.n2 = {2, 3, 4, 5};
  g.profiles = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  return g;
}

namespace {

std::vector<int> parse_range(const nlohmann::json& j, const char* name) {
  std::vector<int> out;
  if (j.is_number_integer()) {
    out.push_back(j.get<int>());
  } else if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    for (int v = j[0].get<int>(); v <= j[1].get<int>(); ++v) out.push_back(v);
  } else if (j.is_object() && j.contains("values")) {
    out = j["values"].get<std::vector<int>>();
  } else {
    throw Error(std::string("grid field '") + name + "' must be an integer, [lo, hi] or {\"values\": [...]}");
  }
  return out;
}

}  // namespace

ParameterGrid grid_from_json(const nlohmann::json& j) {
  try {
    ParameterGrid g;
    if (!j.is_object()) throw Error("grid must be a JSON object");
    g.n1 = parse_range(j.at("n1"), "n1");
    g.n2 = parse_range(j.at("n2"), "n2");
    if (j.contains("profiles")) {
      for (const auto& p : j["profiles"]) g.profiles.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    } else {
      for (int k : parse_range(j.at("k"), "k")) {
        for (int l : parse_range(j.at("l"), "l")) g.profiles.push_back({k, l});
      }
    }
    if (j.contains("node_limit")) g.budget.node_limit = j["node_limit"].get<std::uint64_t>();
    if (j.contains("time_limit_ms")) g.budget.time_limit = std::chrono::milliseconds(j["time_limit_ms"].get<std::int64_t>());
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad grid: ") + e.what());
  }
}

nlohmann::json to_json(const ParameterGrid& g) {
  nlohmann::json j{{"n1", {{"values", g.n1}}}, {"n2", {{"values", g.n2}}}};
  auto profiles = nlohmann::json::array();
  for (Profile p : g.profiles) profiles.push_back({p.k, p.l});
  j["profiles"] = profiles;
  if (g.budget.node_limit) j["node_limit"] = *g.budget.node_limit;
  if (g.budget.time_limit) j["time_limit_ms"] = g.budget.time_limit->count();
  return j;
}

// ---------------------------------------------------------------- hunts

std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Confirmed:
      return "confirmed";
    case CellStatus::Counterexample:
      return "counterexample";
    case CellStatus::BudgetExhausted:
      return "budget_exhausted";
    case CellStatus::Vacuous:
      return "vacuous";
    case CellStatus::Error:
      return "error";
  }
  return "?";
}

namespace {

CellStatus parse_status(const std::string& s) {
  for (CellStatus c : {CellStatus::Confirmed, CellStatus::Counterexample, CellStatus::BudgetExhausted,
                       CellStatus::Vacuous, CellStatus::Error}) {
    if (to_string(c) == s) return c;
  }
  throw Error("unknown cell status '" + s + "'");
}

BigInt bigint_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  return BigInt(j.get<std::string>());
}

using CellKey = std::tuple<int, int, int, int>;
CellKey key_of(const HuntCell& c) { return {c.n1, c.n2, c.profile.k, c.profile.l}; }

}  // namespace

nlohmann::json to_json(const CellRecord& r) {
  nlohmann::json j{{"n1", r.cell.n1},
                   {"n2", r.cell.n2},
                   {"k", r.cell.profile.k},
                   {"l", r.cell.profile.l},
                   {"conjecture", r.conjecture},
                   {"constraint", r.conjecture == 1 ? "nontrivial" : "twosided"},
                   {"found_max", r.found_max},
                   {"proven_optimal", r.proven_optimal},
                   {"conjectured_bound", bigint_to_json(r.conjectured_bound)},
                   {"construction_size", nullptr},
                   {"construction_kind", r.construction_kind},
                   {"construction_matches_term", r.construction_matches_term},
                   {"status", to_string(r.status)},
                   {"nodes", r.nodes},
                   {"elapsed_ms", r.elapsed_ms}};
  if (r.construction_size) j["construction_size"] = *r.construction_size;
  if (!r.message.empty()) j["message"] = r.message;
  if (!r.witness.is_null()) j["witness"] = r.witness;
  return j;
}

CellRecord cell_record_from_json(const nlohmann::json& j) {
  try {
    CellRecord r;
    r.cell = {j.at("n1").get<int>(), j.at("n2").get<int>(), {j.at("k").get<int>(), j.at("l").get<int>()}};
    r.conjecture = j.at("conjecture").get<int>();
    r.found_max = j.at("found_max").get<std::size_t>();
    r.proven_optimal = j.at("proven_optimal").get<bool>();
    r.conjectured_bound = bigint_from_json(j.at("conjectured_bound"));
    if (!j.at("construction_size").is_null()) r.construction_size = j["construction_size"].get<std::size_t>();
    r.construction_kind = j.at("construction_kind").get<std::string>();
    r.construction_matches_term = j.at("construction_matches_term").get<bool>();
    r.status = parse_status(j.at("status").get<std::string>());
    r.message = j.value("message", "");
    r.nodes = j.at("nodes").get<std::uint64_t>();
    r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    if (j.contains("witness")) r.witness = j["witness"];
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad hunt record: ") + e.what());
  }
}

std::size_t HuntReport::count(CellStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [s](const CellRecord& r) { return r.status == s; }));
}

CellRecord hunt_cell(const HuntCell& cell, int conjecture, const SearchBudget& budget) {
  if (conjecture != 1 && conjecture != 2) throw Error("conjecture must be 1 or 2");
  const auto start = std::chrono::steady_clock::now();
  CellRecord r;
  r.cell = cell;
  r.conjecture = conjecture;
  try {
    const Universe u(cell.n1, cell.n2);
    const Profile p = cell.profile;
    const Constraint c = conjecture == 1 ? Constraint::NonTrivial : Constraint::TwoSided;
    r.conjectured_bound = conjecture == 1 ? conjecture1_bound(u, p) : conjecture2_bound(u, p);
    const ConstructionKind kinds[2] = {
        conjecture == 1 ? ConstructionKind::Conj1SideX1 : ConstructionKind::TwoSidedX1Anchor,
        conjecture == 1 ? ConstructionKind::Conj1SideX2 : ConstructionKind::TwoSidedX2Anchor};
    for (ConstructionKind kind : kinds) {
      try {
        const Family f = build_construction(default_construction(kind, u, p));
        if (BigInt(f.size()) != construction_term(kind, u, p)) r.construction_matches_term = false;
        if (!r.construction_size || f.size() > *r.construction_size) {
          r.construction_size = f.size();
          r.construction_kind = std::string(to_string(kind));
        }
      } catch (const Error&) {
        // the construction is not valid at these parameters
      }
    }
    const SearchResult res = max_intersecting(u, ProfileList{p}, c, budget);
    r.found_max = res.max_size;
    r.proven_optimal = res.proven_optimal;
    r.nodes = res.nodes;
    if (!res.proven_optimal) {
      r.status = CellStatus::BudgetExhausted;
    } else if (res.max_size == 0) {
      r.status = CellStatus::Vacuous;
    } else if (BigInt(res.max_size) > r.conjectured_bound) {
      r.status = CellStatus::Counterexample;
      r.witness = sets_to_json(res.witness.sets());
    } else {
      r.status = CellStatus::Confirmed;
    }
  } catch (const std::exception& e) {
    r.status = CellStatus::Error;
    r.message = e.what();
  }
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

HuntReport hunt(const ParameterGrid& grid, int conjecture, const HuntOptions& options) {
  if (conjecture != 1 && conjecture != 2) throw Error("conjecture must be 1 or 2");
  const auto cells = grid.cells();
  HuntReport report;
  std::map<CellKey, CellRecord> done;
  std::vector<std::string> kept_lines;

  if (options.jsonl && options.resume && std::filesystem::exists(*options.jsonl)) {
    std::ifstream in(*options.jsonl);
    std::string line;
    while (std::getline(in, line)) {
      try {
        const CellRecord r = cell_record_from_json(nlohmann::json::parse(line));
        if (r.conjecture != conjecture) continue;
        if (done.emplace(key_of(r.cell), r).second) kept_lines.push_back(line);
      } catch (const std::exception&) {
        // a line cut short by an interrupt
      }
    }
  }
  std::ofstream out;
  if (options.jsonl) {
    out.open(*options.jsonl, std::ios::trunc);
    if (!out) throw Error("cannot write " + options.jsonl->string());
    for (const auto& line : kept_lines) out << line << '\n';
    out.flush();
  }

  std::vector<HuntCell> pending;
  for (const HuntCell& c : cells) {
    if (!done.count(key_of(c))) pending.push_back(c);
  }
  if (options.max_new_cells && pending.size() > *options.max_new_cells) pending.resize(*options.max_new_cells);

  std::vector<std::optional<CellRecord>> results(pending.size());
  std::mutex mu;
  std::size_t next_to_write = 0;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pending.size(); i = next++) {
      CellRecord r = hunt_cell(pending[i], conjecture, grid.budget);
      std::lock_guard lock(mu);
      results[i] = std::move(r);
      while (next_to_write < results.size() && results[next_to_write]) {
        if (out.is_open()) out << to_json(*results[next_to_write]).dump() << '\n' << std::flush;
        ++next_to_write;
      }
    }
  };
  const unsigned threads = std::max(1U, options.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& r : results) done.emplace(key_of(r->cell), *r);
  report.resumed = kept_lines.size();
  report.computed = pending.size();
  for (const HuntCell& c : cells) {
    if (auto it = done.find(key_of(c)); it != done.end()) report.records.push_back(it->second);
  }
  if (options.csv) {
    std::ofstream csv(*options.csv, std::ios::trunc);
    if (!csv) throw Error("cannot write " + options.csv->string());
    csv << hunt_csv(report);
  }
  return report;
}

std::string hunt_csv(const HuntReport& report) {
  std::ostringstream os;
  os << "n1,n2,k,l,conjecture,found_max,proven_optimal,conjectured_bound,construction_size,status\n";
  for (const CellRecord& r : report.records) {
    os << r.cell.n1 << ',' << r.cell.n2 << ',' << r.cell.profile.k << ',' << r.cell.profile.l << ','
       << r.conjecture << ',' << r.found_max << ',' << (r.proven_optimal ? "true" : "false") << ','
       << r.conjectured_bound << ',';
    if (r.construction_size) os << *r.construction_size;
    os << ',' << to_string(r.status) << '\n';
  }
  return os.str();
}

}  // namespace ekr

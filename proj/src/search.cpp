#include "ekr/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "ekr/family_io.hpp"

namespace ekr {

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::Any:
      return "any";
    case Constraint::NonTrivial:
      return "nontrivial";
    case Constraint::TwoSided:
      return "twosided";
  }
  return "any";
}

Constraint parse_constraint(std::string_view text) {
  if (text == "any") return Constraint::Any;
  if (text == "nontrivial" || text == "non-trivial") return Constraint::NonTrivial;
  if (text == "twosided" || text == "two-sided") return Constraint::TwoSided;
  throw Error("unknown constraint '" + std::string(text) + "' (any|nontrivial|twosided)");
}

bool satisfies(const Family& f, Constraint c) {
  if (!is_intersecting(f)) return false;
  switch (c) {
    case Constraint::Any:
      return true;
    case Constraint::NonTrivial:
      return !is_trivially_intersecting(f).trivial;
    case Constraint::TwoSided:
      return is_two_sided_intersecting(f);
  }
  return false;
}

namespace {

using Clock = std::chrono::steady_clock;
using Vertex = std::uint32_t;

// Graph relabelled so that index 0 is the last vertex removed by the
// smallest-last (degeneracy) peeling; sequential coloring works on this order.
struct Relabelled {
  std::vector<PartSet> sets;
  std::vector<Bitset> adj;
  std::vector<Vertex> to_internal;
  std::vector<Vertex> to_original;
  std::vector<Bitset> containing;  // per element: vertices whose set contains it
  std::uint64_t x1 = 0;
  std::uint64_t x2 = 0;
  std::uint64_t full = 0;
};

Relabelled relabel(const CompatibilityGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> degree(n);
  for (std::size_t v = 0; v < n; ++v) degree[v] = g.neighbors(v).count();
  std::vector<char> removed(n, 0);
  std::vector<Vertex> removal;
  removal.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!removed[v] && (pick == n || degree[v] < degree[pick])) pick = v;
    }
    removed[pick] = 1;
    removal.push_back(static_cast<Vertex>(pick));
    g.neighbors(pick).for_each([&](std::size_t w) {
      if (!removed[w]) --degree[w];
    });
  }
  Relabelled r;
  r.to_original.assign(removal.rbegin(), removal.rend());
  r.to_internal.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.to_internal[r.to_original[i]] = static_cast<Vertex>(i);
  r.sets.resize(n);
  r.adj.assign(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    r.sets[i] = g.vertex(r.to_original[i]);
    g.neighbors(r.to_original[i]).for_each([&](std::size_t w) { r.adj[i].set(r.to_internal[w]); });
  }
  const Universe& u = g.universe();
  r.x1 = u.x1_mask();
  r.x2 = u.x2_mask();
  r.full = u.mask();
  r.containing.assign(static_cast<std::size_t>(u.size()), Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (int e : r.sets[i].elements()) r.containing[static_cast<std::size_t>(e)].set(i);
  }
  return r;
}

struct Task {
  std::vector<Vertex> fixed;
  Bitset candidates;
};

struct TaskResult {
  std::size_t best = 0;
  std::vector<Vertex> clique;
};

struct Shared {
  std::atomic<std::size_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::optional<std::uint64_t> node_limit;
  std::optional<Clock::time_point> deadline;

  void offer(std::size_t size) {
    std::size_t cur = best.load(std::memory_order_relaxed);
    while (size > cur && !best.compare_exchange_weak(cur, size, std::memory_order_relaxed)) {
    }
  }
};

class Worker {
 public:
  Worker(const Relabelled& g, Constraint c, Shared& shared, std::size_t floor)
      : g_(g), constraint_(c), shared_(shared), floor_(floor) {}

  TaskResult run(const Task& task) {
    best_ = floor_;
    best_clique_.clear();
    std::vector<Vertex> clique;
    Meta meta{g_.full, false, false};
    for (Vertex v : task.fixed) {
      meta = extend(meta, clique, v);
      clique.push_back(v);
    }
    Bitset p = task.candidates;
    expand(clique, p, meta);
    return {best_, best_clique_};
  }

 private:
  struct Meta {
    std::uint64_t common;
    bool miss_x1;  // some pair (possibly one member twice) meets only outside X1
    bool miss_x2;
  };

  Meta extend(Meta m, const std::vector<Vertex>& clique, Vertex v) const {
    const std::uint64_t s = g_.sets[v].bits();
    m.common &= s;
    auto note = [&](std::uint64_t inter) {
      m.miss_x1 = m.miss_x1 || (inter & g_.x1) == 0;
      m.miss_x2 = m.miss_x2 || (inter & g_.x2) == 0;
    };
    note(s);
    for (Vertex w : clique) note(s & g_.sets[w].bits());
    return m;
  }

  bool satisfied(const Meta& m) const {
    switch (constraint_) {
      case Constraint::Any:
        return true;
      case Constraint::NonTrivial:
        return m.common == 0;
      case Constraint::TwoSided:
        return m.miss_x1 && m.miss_x2;
    }
    return false;
  }

  // Equal bounds are pruned only against this task's own incumbent, so every
  // task still reaches its first maximum clique whatever other workers found.
  bool prune(std::size_t bound) const {
    return bound <= best_ || bound < shared_.best.load(std::memory_order_relaxed);
  }

  bool out_of_budget() {
    if (shared_.stop.load(std::memory_order_relaxed)) return true;
    const std::uint64_t n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (shared_.node_limit && n > *shared_.node_limit) {
      shared_.stop = true;
      return true;
    }
    if (shared_.deadline && (++ticks_ & 255) == 0 && Clock::now() > *shared_.deadline) {
      shared_.stop = true;
      return true;
    }
    return false;
  }

  void color_sort(const Bitset& p, std::vector<Vertex>& order, std::vector<std::uint32_t>& colors) const {
    order.clear();
    colors.clear();
    Bitset uncolored = p;
    std::uint32_t color = 0;
    while (uncolored.any()) {
      ++color;
      Bitset avail = uncolored;
      for (std::size_t v = avail.first(); v < avail.size(); v = avail.next(v + 1)) {
        uncolored.reset(v);
        avail.subtract(g_.adj[v]);
        order.push_back(static_cast<Vertex>(v));
        colors.push_back(color);
      }
    }
  }

  // Vertices of p at least one of which every admissible completion must use.
  Bitset forced_choices(const std::vector<Vertex>& clique, const Bitset& p, const Meta& m) const {
    if (m.common != 0) {
      // Some common element x has to be avoided by a new member.
      std::size_t best_count = p.size() + 1;
      int best_x = -1;
      for (std::uint64_t w = m.common; w; w &= w - 1) {
        const int x = std::countr_zero(w);
        const std::size_t cnt = p.count_andnot(g_.containing[static_cast<std::size_t>(x)]);
        if (cnt < best_count) {
          best_count = cnt;
          best_x = x;
        }
      }
      Bitset out = p;
      out.subtract(g_.containing[static_cast<std::size_t>(best_x)]);
      return out;
    }
    const std::uint64_t part = m.miss_x1 ? g_.x2 : g_.x1;
    Bitset out(p.size());
    p.for_each([&](std::size_t t) {
      const std::uint64_t st = g_.sets[t].bits();
      bool ok = (st & part) == 0;
      for (std::size_t i = 0; !ok && i < clique.size(); ++i) ok = (st & g_.sets[clique[i]].bits() & part) == 0;
      for (std::size_t w = p.first(); !ok && w < p.size(); w = p.next(w + 1)) {
        ok = w != t && g_.adj[t].test(w) && (st & g_.sets[w].bits() & part) == 0;
      }
      if (ok) out.set(t);
    });
    return out;
  }

  void record(const std::vector<Vertex>& clique) {
    best_ = clique.size();
    best_clique_ = clique;
    shared_.offer(best_);
  }

  void expand(std::vector<Vertex>& clique, Bitset& p, const Meta& m) {
    if (out_of_budget()) return;
    const bool ok = satisfied(m);
    if (ok && clique.size() > best_) record(clique);
    if (!p.any()) return;
    if (prune(clique.size() + p.count())) return;

    std::vector<Vertex> order;
    std::vector<std::uint32_t> colors;
    color_sort(p, order, colors);
    if (prune(clique.size() + colors.back())) return;

    if (!ok) {
      const Bitset forced = forced_choices(clique, p, m);
      for (std::size_t v = forced.first(); v < forced.size(); v = forced.next(v + 1)) {
        if (shared_.stop.load(std::memory_order_relaxed)) return;
        Bitset child = p & g_.adj[v];
        const Meta cm = extend(m, clique, static_cast<Vertex>(v));
        clique.push_back(static_cast<Vertex>(v));
        expand(clique, child, cm);
        clique.pop_back();
        p.reset(v);
        if (prune(clique.size() + p.count())) return;
      }
      return;
    }

    for (std::size_t i = order.size(); i-- > 0;) {
      if (shared_.stop.load(std::memory_order_relaxed)) return;
      if (prune(clique.size() + colors[i])) return;
      const Vertex v = order[i];
      Bitset child = p & g_.adj[v];
      const Meta cm = extend(m, clique, v);
      clique.push_back(v);
      expand(clique, child, cm);
      clique.pop_back();
      p.reset(v);
    }
  }

  const Relabelled& g_;
  Constraint constraint_;
  Shared& shared_;
  std::size_t floor_;
  std::size_t best_ = 0;
  std::vector<Vertex> best_clique_;
  std::uint64_t ticks_ = 0;
};

PartSet canonical_member(const Universe& u, Profile p) {
  return PartSet(low_bits(p.k) | (low_bits(p.l) << u.n1()));
}

// Root tasks fixing orbit representatives: first a canonical member of each
// profile class, then one representative per orbit of its stabiliser. Earlier
// classes and orbits are excluded from later tasks.
std::vector<Task> symmetric_tasks(const CompatibilityGraph& g, const Relabelled& r) {
  const Universe& u = g.universe();
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> class_of(n);
  for (std::size_t v = 0; v < n; ++v) {
    class_of[v] = *g.profiles().index_of(profile_of(u, g.vertex(v)));
  }
  std::vector<Task> tasks;
  Bitset excluded(n);  // internal indices
  for (std::size_t pi = 0; pi < g.profiles().size(); ++pi) {
    const PartSet rep = canonical_member(u, g.profiles()[pi]);
    const auto it = std::find(g.vertices().begin(), g.vertices().end(), rep);
    const auto root = static_cast<std::size_t>(it - g.vertices().begin());
    const Vertex root_in = r.to_internal[root];
    tasks.push_back({{root_in}, Bitset(n)});

    std::map<std::tuple<std::size_t, int, int>, std::vector<std::size_t>> orbits;
    std::vector<std::tuple<std::size_t, int, int>> orbit_order;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == root || class_of[w] < pi || !g.adjacent(root, w)) continue;
      const std::uint64_t meet = g.vertex(w).bits() & rep.bits();
      const auto key = std::make_tuple(class_of[w], std::popcount(meet & u.x1_mask()),
                                       std::popcount(meet & u.x2_mask()));
      auto [pos, inserted] = orbits.try_emplace(key);
      if (inserted) orbit_order.push_back(key);
      pos->second.push_back(w);
    }
    Bitset done = excluded;
    for (const auto& key : orbit_order) {
      const auto& members = orbits[key];
      const Vertex first_in = r.to_internal[members.front()];
      Bitset cand = r.adj[root_in] & r.adj[first_in];
      cand.subtract(done);
      tasks.push_back({{root_in, first_in}, std::move(cand)});
      for (std::size_t w : members) done.set(r.to_internal[w]);
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (class_of[w] == pi) excluded.set(r.to_internal[w]);
    }
  }
  return tasks;
}

// One task per vertex v with the neighbours peeled after it as candidates.
std::vector<Task> degeneracy_tasks(const Relabelled& r) {
  const std::size_t n = r.sets.size();
  std::vector<Task> tasks;
  tasks.reserve(n);
  Bitset earlier(n);
  for (std::size_t v = 0; v < n; ++v) {
    tasks.push_back({{static_cast<Vertex>(v)}, r.adj[v] & earlier});
    earlier.set(v);
  }
  return tasks;
}

Family star_seed(const CompatibilityGraph& g) {
  const Universe& u = g.universe();
  const BigInt left = u.n1() > 0 ? star_size(u, g.profiles(), Side::X1) : BigInt(-1);
  const BigInt right = u.n2() > 0 ? star_size(u, g.profiles(), Side::X2) : BigInt(-1);
  return star_family(u, g.profiles(), left >= right ? 0 : u.n1());
}

}  // namespace

SearchResult max_intersecting(const CompatibilityGraph& g, Constraint c, const SearchBudget& budget,
                              const SearchOptions& options) {
  const auto start = Clock::now();
  if (budget.node_limit && *budget.node_limit == 0) throw Error("node limit must be positive");
  if (budget.time_limit && budget.time_limit->count() <= 0) throw Error("time limit must be positive");

  SearchResult result{0, Family(g.universe()), true, 0, {}};
  if (g.vertex_count() == 0) return result;

  const Relabelled r = relabel(g);
  Shared shared;
  shared.node_limit = budget.node_limit;
  if (budget.time_limit) shared.deadline = start + *budget.time_limit;

  std::size_t floor = 0;
  if (c == Constraint::Any && options.seed_with_star) {
    result.witness = star_seed(g);
    floor = result.witness.size();
    result.max_size = floor;
  }
  shared.best = floor;

  const std::vector<Task> tasks = options.symmetry ? symmetric_tasks(g, r) : degeneracy_tasks(r);
  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    Worker worker(r, c, shared, floor);
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      if (shared.stop) break;
      results[t] = worker.run(tasks[t]);
    }
  };
  const unsigned threads = std::max(1U, options.threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  for (const TaskResult& tr : results) {
    if (tr.best > result.max_size && !tr.clique.empty()) {
      std::vector<PartSet> sets;
      for (Vertex v : tr.clique) sets.push_back(r.sets[v]);
      std::sort(sets.begin(), sets.end(), lex_less);
      result.witness = Family(g.universe(), std::move(sets));
      result.max_size = tr.best;
    }
  }
  result.proven_optimal = !shared.stop;
  result.nodes = shared.nodes;
  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return result;
}

SearchResult max_intersecting(const Universe& u, const ProfileList& pl, Constraint c,
                              const SearchBudget& budget, const SearchOptions& options,
                              std::size_t vertex_cap) {
  const CompatibilityGraph g(u, pl, vertex_cap);
  return max_intersecting(g, c, budget, options);
}

nlohmann::json to_json(const SearchResult& r) {
  return {{"max_size", r.max_size},
          {"witness", sets_to_json(r.witness.sets())},
          {"proven_optimal", r.proven_optimal},
          {"nodes", r.nodes},
          {"elapsed_ms", r.elapsed.count()}};
}

namespace {

class Oracle {
 public:
  Oracle(std::vector<PartSet> sets, const Universe& u, Constraint c)
      : sets_(std::move(sets)), x1_(u.x1_mask()), x2_(u.x2_mask()), full_(u.mask()), c_(c) {}

  std::size_t run() {
    chosen_.clear();
    best_ = 0;
    visit(0, full_, false, false);
    return best_;
  }

 private:
  bool accept(std::uint64_t common, bool miss1, bool miss2) const {
    if (chosen_.empty()) return false;
    switch (c_) {
      case Constraint::Any:
        return true;
      case Constraint::NonTrivial:
        return common == 0;
      case Constraint::TwoSided:
        return miss1 && miss2;
    }
    return false;
  }

  void visit(std::size_t i, std::uint64_t common, bool miss1, bool miss2) {
    if (i == sets_.size()) {
      if (accept(common, miss1, miss2)) best_ = std::max(best_, chosen_.size());
      return;
    }
    visit(i + 1, common, miss1, miss2);
    const std::uint64_t s = sets_[i].bits();
    bool m1 = miss1 || (s & x1_) == 0;
    bool m2 = miss2 || (s & x2_) == 0;
    for (PartSet t : chosen_) {
      const std::uint64_t inter = s & t.bits();
      if (inter == 0) return;
      m1 = m1 || (inter & x1_) == 0;
      m2 = m2 || (inter & x2_) == 0;
    }
    chosen_.push_back(sets_[i]);
    visit(i + 1, common & s, m1, m2);
    chosen_.pop_back();
  }

  std::vector<PartSet> sets_;
  std::uint64_t x1_, x2_, full_;
  Constraint c_;
  std::vector<PartSet> chosen_;
  std::size_t best_ = 0;
};

}  // namespace

std::size_t exhaustive_oracle(const Universe& u, const ProfileList& pl, Constraint c) {
  validate_profiles(u, pl);
  auto sets = enumerate_candidates(u, pl);
  if (sets.size() > kOracleVertexLimit) {
    throw Error("oracle limited to " + std::to_string(kOracleVertexLimit) + " candidate sets, got " +
                std::to_string(sets.size()));
  }
  return Oracle(std::move(sets), u, c).run();
}

AttainmentReport verify_bound_attainment(const Universe& u, const ProfileList& pl,
                                         const SearchBudget& budget, const SearchOptions& options) {
  const SearchResult r = max_intersecting(u, pl, Constraint::Any, budget, options);
  AttainmentReport rep;
  rep.search_max = r.max_size;
  rep.bound = theorem3_bound(u, pl);
  rep.applicable = theorem3_applicable(u, pl);
  rep.equal = BigInt(r.max_size) == rep.bound;
  rep.proven_optimal = r.proven_optimal;
  return rep;
}

nlohmann::json to_json(const AttainmentReport& r) {
  return {{"search_max", r.search_max},
          {"theorem3_bound", bigint_to_json(r.bound)},
          {"theorem3_applicable", r.applicable},
          {"equal", r.equal},
          {"proven_optimal", r.proven_optimal}};
}

}  // namespace ekr

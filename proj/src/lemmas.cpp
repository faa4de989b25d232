#include "ekr/lemmas.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "ekr/bitset.hpp"
#include "ekr/cyclic.hpp"
#include "ekr/rng.hpp"

namespace ekr {

LemmaId parse_lemma_id(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  bool corollary = false;
  for (const char* prefix : {"lemma", "l", "corollary", "cor", "c"}) {
    const std::string p(prefix);
    if (t.size() > p.size() && t.compare(0, p.size(), p) == 0 && std::isdigit(static_cast<unsigned char>(t[p.size()]))) {
      corollary = p[0] == 'c';
      t = t.substr(p.size());
      break;
    }
  }
  if (t.size() == 1 && t[0] >= '1' && t[0] <= '9') {
    const int n = t[0] - '0';
    if (!corollary) return static_cast<LemmaId>(n - 1);
    if (n <= 3) return static_cast<LemmaId>(static_cast<int>(LemmaId::C1) + n - 1);
  }
  throw Error("unknown lemma '" + text + "' (1..9 or C1..C3)");
}

std::string to_string(LemmaId id) {
  const int v = static_cast<int>(id);
  if (id >= LemmaId::C1) return "C" + std::to_string(v - static_cast<int>(LemmaId::C1) + 1);
  return "L" + std::to_string(v + 1);
}

nlohmann::json to_json(const LemmaParams& p) {
  nlohmann::json j = nlohmann::json::object();
  for (auto [name, v] : {std::pair{"n", p.n}, {"k", p.k}, {"l", p.l}, {"b", p.b}, {"n1", p.n1}, {"n2", p.n2}}) {
    if (v != 0) j[name] = v;
  }
  if (!p.profiles.empty()) {
    auto arr = nlohmann::json::array();
    for (const Profile& q : p.profiles) arr.push_back({q.k, q.l});
    j["profiles"] = arr;
  }
  return j;
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr std::size_t kKeptCounterexamples = 20;

struct Ctx {
  VerificationReport& rep;
  std::uint64_t node_cap;
  std::uint64_t nodes = 0;

  void tick() {
    if (++nodes > node_cap) {
      throw Error("exhaustive range for " + to_string(rep.lemma) + " exceeds " + std::to_string(node_cap) +
                  " steps; use sampled mode");
    }
  }
  void counterexample(nlohmann::json j) {
    ++rep.counterexample_count;
    if (rep.counterexamples.size() < kKeptCounterexamples) rep.counterexamples.push_back(std::move(j));
  }
};

// Every clique with at least min_size vertices, each visited once.
template <typename Fn>
void enumerate_cliques(const std::vector<Bitset>& adj, std::size_t min_size, Ctx& ctx, Fn&& fn) {
  std::vector<int> clique;
  auto rec = [&](auto&& self, Bitset p) -> void {
    for (std::size_t v = p.first(); v < p.size(); v = p.next(v + 1)) {
      ctx.tick();
      p.reset(v);
      Bitset child = p & adj[v];
      if (clique.size() + 1 + child.count() < min_size) continue;
      clique.push_back(static_cast<int>(v));
      if (clique.size() >= min_size) fn(clique);
      if (child.any()) self(self, child);
      clique.pop_back();
    }
  };
  Bitset all(adj.size());
  all.set_all();
  rec(rec, all);
}

std::size_t max_clique_size(const std::vector<Bitset>& adj, Ctx& ctx) {
  std::size_t best = 0;
  auto rec = [&](auto&& self, std::size_t size, Bitset p) -> void {
    if (!p.any()) {
      best = std::max(best, size);
      return;
    }
    // greedy colouring bound
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    Bitset left = p;
    std::size_t c = 0;
    while (left.any()) {
      ++c;
      Bitset avail = left;
      for (std::size_t v = avail.first(); v < avail.size(); v = avail.next(v + 1)) {
        left.reset(v);
        avail.subtract(adj[v]);
        order.push_back(v);
        colour.push_back(c);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      ctx.tick();
      if (size + colour[i] <= best) return;
      const std::size_t v = order[i];
      self(self, size + 1, p & adj[v]);
      p.reset(v);
    }
    best = std::max(best, size);
  };
  Bitset all(adj.size());
  all.set_all();
  rec(rec, 0, all);
  return best;
}

std::vector<Bitset> distance_graph(int n, int k) {
  std::vector<Bitset> adj(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && point_distance(u, v, n) <= k - 1) adj[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
    }
  }
  return adj;
}

std::uint64_t residues(const std::vector<int>& xs) {
  std::uint64_t m = 0;
  for (int x : xs) m |= std::uint64_t{1} << x;
  return m;
}

// ---------------------------------------------------------------- rectangle pools

enum : std::int8_t { kNone = 0, kSecond = 1, kFirst = 2 };

struct Pool {
  int n1 = 0;
  int n2 = 0;
  std::vector<Profile> profiles;
  std::vector<Rectangle> rects;
  std::vector<std::uint64_t> im, jm;
  std::vector<std::size_t> profile;
  std::vector<Bitset> adj;
  int b = 0;

  std::size_t size() const { return rects.size(); }

  std::int8_t blocking(std::size_t a, std::size_t c) const {
    const Rectangle& x = rects[a];
    const Rectangle& y = rects[c];
    if (a == c) return kNone;
    if (x.j == y.j && interval_distance(x.i, y.i) >= b + 1) return kSecond;
    if (x.i == y.i && interval_distance(x.j, y.j) >= b + 1) return kFirst;
    return kNone;
  }
};

constexpr std::size_t kMaxPool = 16384;

Pool make_pool(int n1, int n2, const std::vector<Profile>& profiles, int b) {
  Pool pool;
  pool.n1 = n1;
  pool.n2 = n2;
  pool.profiles = profiles;
  pool.b = b;
  for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
    const Profile p = profiles[pi];
    const int is = p.k == n1 ? 1 : n1;
    const int js = p.l == n2 ? 1 : n2;
    for (int i = 0; i < is; ++i) {
      for (int j = 0; j < js; ++j) {
        pool.rects.push_back({Interval(n1, i, p.k), Interval(n2, j, p.l)});
        pool.profile.push_back(pi);
      }
    }
  }
  const std::size_t n = pool.rects.size();
  if (n > kMaxPool) throw Error("rectangle pool of " + std::to_string(n) + " exceeds " + std::to_string(kMaxPool));
  for (const auto& r : pool.rects) {
    pool.im.push_back(r.i.mask());
    pool.jm.push_back(r.j.mask());
  }
  pool.adj.assign(n, Bitset(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t c = a + 1; c < n; ++c) {
      if ((pool.im[a] & pool.im[c]) || (pool.jm[a] & pool.jm[c])) {
        pool.adj[a].set(c);
        pool.adj[c].set(a);
      }
    }
  }
  return pool;
}

struct Stats {
  std::vector<std::size_t> per_profile;
  std::size_t total = 0;
  std::size_t bases_second = 0;
  std::size_t bases_first = 0;
  std::uint64_t common_j = 0;  // residues of Z_n2 in every J-projection
};

Stats stats_of(const Pool& pool, const std::vector<int>& members) {
  Stats s;
  s.per_profile.assign(pool.profiles.size(), 0);
  s.total = members.size();
  s.common_j = low_bits(pool.n2);
  std::vector<std::uint64_t> second, first;
  auto key = [](const Interval& x) { return std::uint64_t(x.start()) << 8 | std::uint64_t(x.length()); };
  for (std::size_t x = 0; x < members.size(); ++x) {
    const auto a = static_cast<std::size_t>(members[x]);
    ++s.per_profile[pool.profile[a]];
    s.common_j &= pool.jm[a];
    for (std::size_t y = x + 1; y < members.size(); ++y) {
      const auto c = static_cast<std::size_t>(members[y]);
      const auto kind = pool.blocking(a, c);
      if (kind == kSecond) second.push_back(key(pool.rects[a].j));
      if (kind == kFirst) first.push_back(key(pool.rects[a].i));
    }
  }
  auto distinct = [](std::vector<std::uint64_t>& v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  s.bases_second = distinct(second);
  s.bases_first = distinct(first);
  return s;
}

nlohmann::json family_json(const Pool& pool, const std::vector<int>& members) {
  RectFamily rf(pool.n1, pool.n2);
  for (int m : members) rf.add(pool.rects[static_cast<std::size_t>(m)]);
  return to_json(rf);
}

// Random proj-intersecting family mixing stars, rows and blocking seeds with greedy fill.
std::vector<int> random_family(const Pool& pool, std::mt19937_64& rng) {
  const std::size_t n = pool.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Bitset cand(n);
  cand.set_all();
  std::vector<int> chosen;
  auto take = [&](int v) {
    if (!cand.test(static_cast<std::size_t>(v))) return;
    chosen.push_back(v);
    cand &= pool.adj[static_cast<std::size_t>(v)];
  };
  const double keep = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
  auto coin = [&](double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; };

  switch (uniform_int(rng, 0, 3)) {
    case 1: {  // star through a point of one axis
      const bool second_axis = coin(0.5);
      const int beta = uniform_int(rng, 0, (second_axis ? pool.n2 : pool.n1) - 1);
      for (int v : order) {
        const auto m = second_axis ? pool.jm[static_cast<std::size_t>(v)] : pool.im[static_cast<std::size_t>(v)];
        if (((m >> beta) & 1U) && coin(keep)) take(v);
      }
      break;
    }
    case 2: {  // a blocking pair first
      const int a = order.front();
      std::vector<int> partners;
      for (std::size_t c = 0; c < n; ++c) {
        if (pool.blocking(static_cast<std::size_t>(a), c) != kNone) partners.push_back(static_cast<int>(c));
      }
      take(a);
      if (!partners.empty()) take(partners[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(partners.size()) - 1))]);
      break;
    }
    case 3: {  // one row: every rectangle over a fixed J
      const Interval j = pool.rects[static_cast<std::size_t>(order.front())].j;
      for (int v : order) {
        if (pool.rects[static_cast<std::size_t>(v)].j == j && coin(keep)) take(v);
      }
      break;
    }
    default:
      break;
  }
  const double add = std::uniform_real_distribution<double>(0.4, 1.0)(rng);
  for (int v : order) {
    if (cand.test(static_cast<std::size_t>(v)) && coin(add)) take(v);
  }
  if (coin(0.3)) {
    std::vector<int> kept;
    for (int v : chosen) {
      if (coin(0.7)) kept.push_back(v);
    }
    chosen.swap(kept);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// Runs `check` on every family the mode produces. `check` returns false when the family
// does not meet the instance hypotheses, and records counterexamples itself.
template <typename Check>
void scan_families(const Pool& pool, const VerifyMode& mode, Ctx& ctx, Check&& check) {
  auto visit = [&](const std::vector<int>& fam) {
    if (check(fam)) {
      ++ctx.rep.instances;
    } else {
      ++ctx.rep.hypothesis_rejections;
    }
  };
  if (mode.exhaustive) {
    enumerate_cliques(pool.adj, 1, ctx, visit);
  } else {
    for (std::size_t t = 0; t < mode.trials; ++t) {
      auto rng = fork_rng(mode.seed, t);
      visit(random_family(pool, rng));
    }
  }
}

// ---------------------------------------------------------------- hypotheses

std::optional<std::string> need(bool ok, const char* what) {
  return ok ? std::nullopt : std::optional<std::string>(what);
}

std::vector<Profile> profiles_of(const LemmaParams& p) {
  if (!p.profiles.empty()) return p.profiles;
  return {{p.k, p.l}};
}

std::optional<std::string> multi_hypotheses(const LemmaParams& p, bool quadratic) {
  if (p.b < 1) return "needs b >= 1";
  for (const Profile& q : profiles_of(p)) {
    if (q.k < 1 || q.l < 1 || q.k > p.b || q.l > p.b) return "needs 1 <= k_i, l_i <= b";
  }
  if (quadratic) return need(9 * p.b * p.b < p.n1 && 9 * p.b * p.b < p.n2, "needs 9b^2 < n1 and 9b^2 < n2");
  return need(4 * p.b < p.n1 && 4 * p.b < p.n2, "needs 4b < n1 and 4b < n2");
}

std::optional<std::string> strict_single_hypotheses(const LemmaParams& p) {
  if (p.k < 1 || p.l < 1 || p.b < 1) return "needs positive k, l, b";
  if (p.k > p.b || p.l > p.b) return "needs k, l <= b";
  return need(2 * (p.k + p.b) < p.n1 && 2 * (p.l + p.b) < p.n2, "needs 2(k+b) < n1 and 2(l+b) < n2");
}

// ---------------------------------------------------------------- verifiers

void lemma1(const LemmaParams& p, const VerifyMode& mode, Ctx& ctx) {
  const int n = p.n, k = p.k;
  const auto adj = distance_graph(n, k);
  std::size_t largest = 0;
  auto check = [&](const std::vector<int>& clique) {
    ++ctx.rep.instances;
    largest = std::max(largest, clique.size());
    const bool too_big = clique.size() > static_cast<std::size_t>(k);
    const bool scattered = clique.size() == static_cast<std::size_t>(k) && !as_interval(residues(clique), n);
    if (too_big || scattered) ctx.counterexample({{"clique", clique}});
  };
  if (mode.exhaustive) {
    enumerate_cliques(adj, 1, ctx, check);
    if (largest != static_cast<std::size_t>(k)) ctx.counterexample({{"largest_clique", largest}});
  } else {
    for (std::size_t t = 0; t < mode.trials; ++t) {
      auto rng = fork_rng(mode.seed, t);
      std::vector<int> clique{uniform_int(rng, 0, n - 1)};
      Bitset cand = adj[static_cast<std::size_t>(clique[0])];
      while (cand.any()) {
        std::vector<int> options;
        cand.for_each([&](std::size_t v) { options.push_back(static_cast<int>(v)); });
        const int v = options[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(options.size()) - 1))];
        clique.push_back(v);
        cand &= adj[static_cast<std::size_t>(v)];
      }
      std::sort(clique.begin(), clique.end());
      check(clique);
    }
  }
  ctx.rep.notes["largest_clique"] = largest;
}

void lemma2(const LemmaParams& p, const VerifyMode& mode, Ctx& ctx) {
  const int n = p.n, k = p.k, b = p.b;
  const int m = k + b + 1;
  std::vector<std::vector<char>> far(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n)));
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      far[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] =
          interval_distance(Interval(n, s, k), Interval(n, t, k)) >= b + 1;
    }
  }
  auto has_far_pair = [&](const std::vector<int>& starts) {
    for (std::size_t x = 0; x < starts.size(); ++x) {
      for (std::size_t y = x + 1; y < starts.size(); ++y) {
        if (far[static_cast<std::size_t>(starts[x])][static_cast<std::size_t>(starts[y])]) return true;
      }
    }
    return false;
  };
  auto check = [&](const std::vector<int>& starts) {
    ++ctx.rep.instances;
    if (!has_far_pair(starts)) ctx.counterexample({{"starts", starts}, {"length", k}});
  };
  if (mode.exhaustive) {
    if (binomial(n, m) > ctx.node_cap) {
      throw Error("exhaustive range for L2 has " + binomial(n, m).str() + " subsets; use sampled mode");
    }
    std::vector<int> starts;
    auto rec = [&](auto&& self, int from) -> void {
      if (static_cast<int>(starts.size()) == m) {
        ctx.tick();
        check(starts);
        return;
      }
      for (int s = from; s <= n - (m - static_cast<int>(starts.size())); ++s) {
        starts.push_back(s);
        self(self, s + 1);
        starts.pop_back();
      }
    };
    rec(rec, 0);
  } else {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t t = 0; t < mode.trials; ++t) {
      auto rng = fork_rng(mode.seed, t);
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<int> starts(all.begin(), all.begin() + m);
      std::sort(starts.begin(), starts.end());
      check(starts);
    }
  }
}

void lemma3(const LemmaParams& p, const VerifyMode& mode, Ctx& ctx) {
  const Pool pool = make_pool(p.n1, p.n2, {{p.k, p.l}}, p.b);
  const std::size_t threshold = static_cast<std::size_t>(9 * p.b * p.b);
  auto check = [&](const std::vector<int>& fam) {
    const Stats s = stats_of(pool, fam);
    if (s.bases_second == 0 && s.bases_first == 0) ctx.counterexample(family_json(pool, fam));
  };
  ctx.rep.notes["size_threshold"] = threshold;
  if (mode.exhaustive) {
    const std::size_t largest = max_clique_size(pool.adj, ctx);
    ctx.rep.notes["largest_family"] = largest;
    enumerate_cliques(pool.adj, threshold, ctx, [&](const std::vector<int>& fam) {
      ++ctx.rep.instances;
      check(fam);
    });
    if (largest < threshold) ctx.rep.notes["vacuous"] = "no proj-intersecting family reaches the size threshold";
  } else {
    std::size_t largest = 0;
    for (std::size_t t = 0; t < mode.trials; ++t) {
      auto rng = fork_rng(mode.seed, t);
      const auto fam = random_family(pool, rng);
      largest = std::max(largest, fam.size());
      if (fam.size() < threshold) {
        ++ctx.rep.hypothesis_rejections;
        continue;
      }
      ++ctx.rep.instances;
      check(fam);
    }
    ctx.rep.notes["largest_sampled_family"] = largest;
  }
}

void lemma4(const LemmaParams& p, const VerifyMode& mode, Ctx& ctx) {
  const int n1 = p.n1, n2 = p.n2, k = p.k, l = p.l, b = p.b;
  // Form (2) as given; form (3) by exchanging the axes.
  struct Axes {
    int na, nb, ka, kb;
    bool swapped;
  };
  const Axes forms[] = {{n1, n2, k, l, false}, {n2, n1, l, k, true}};
  auto instance = [&](const Axes& ax, const Interval& a1, const Interval& a2, const Interval& base, const Interval& u,
                      const Interval& v) {
    // u lies on the axis of a1/a2, v on the axis of the base
    const bool r1 = a1.intersects(u) || base.intersects(v);
    const bool r2 = a2.intersects(u) || base.intersects(v);
    if (!r1 || !r2) return false;
    ++ctx.rep.instances;
    if (!base.intersects(v)) {
      auto side = [&](const Interval& x) { return nlohmann::json{x.start(), x.length()}; };
      ctx.counterexample({{"form", ax.swapped ? 3 : 2},
                          {"first", side(a1)},
                          {"second", side(a2)},
                          {"base", side(base)},
                          {"third", {side(u), side(v)}}});
    }
    return true;
  };
  const int ulim = std::min(b, n1), vlim = std::min(b, n2);
  if (mode.exhaustive) {
    const double estimate = 2.0 * n1 * n2 * double(n1) * n2 * n1 * n2 * ulim * vlim;
    if (estimate > 4.0 * static_cast<double>(ctx.node_cap)) {
      throw Error("exhaustive range for L4 is too large; use sampled mode");
    }
    for (const Axes& ax : forms) {
      const int ul = ax.swapped ? vlim : ulim, vl = ax.swapped ? ulim : vlim;
      for (int bs = 0; bs < (ax.kb == ax.nb ? 1 : ax.nb); ++bs) {
        const Interval base(ax.nb, bs, ax.kb);
        for (int s1 = 0; s1 < ax.na; ++s1) {
          for (int s2 = s1 + 1; s2 < ax.na; ++s2) {
            const Interval a1(ax.na, s1, ax.ka), a2(ax.na, s2, ax.ka);
            if (ax.ka == ax.na || interval_distance(a1, a2) < b + 1) continue;
            for (int ulen = 1; ulen <= ul; ++ulen) {
              for (int us = 0; us < (ulen == ax.na ? 1 : ax.na); ++us) {
                for (int vlen = 1; vlen <= vl; ++vlen) {
                  for (int vs = 0; vs < (vlen == ax.nb ? 1 : ax.nb); ++vs) {
                    ctx.tick();
                    if (!instance(ax, a1, a2, base, Interval(ax.na, us, ulen), Interval(ax.nb, vs, vlen))) {
                      ++ctx.rep.hypothesis_rejections;
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  } else {
    for (std::size_t t = 0; t < mode.trials; ++t) {
      auto rng = fork_rng(mode.seed, t);
      const Axes& ax = forms[t % 2];
      const int ul = ax.swapped ? vlim : ulim, vl = ax.swapped ? ulim : vlim;
      const Interval base(ax.nb, ax.kb == ax.nb ? 0 : uniform_int(rng, 0, ax.nb - 1), ax.kb);
      if (ax.ka == ax.na) {
        ++ctx.rep.hypothesis_rejections;
        continue;
      }
      const Interval a1(ax.na, uniform_int(rng, 0, ax.na - 1), ax.ka);
      const Interval a2(ax.na, uniform_int(rng, 0, ax.na - 1), ax.ka);
      const int ulen = uniform_int(rng, 1, ul), vlen = uniform_int(rng, 1, vl);
      const Interval u(ax.na, ulen == ax.na ? 0 : uniform_int(rng, 0, ax.na - 1), ulen);
      const Interval v(ax.nb, vlen == ax.nb ? 0 : uniform_int(rng, 0, ax.nb - 1), vlen);
      if (interval_distance(a1, a2) < b + 1 || !instance(ax, a1, a2, base, u, v)) ++ctx.rep.hypothesis_rejections;
    }
  }
}

void single_size_family_lemma(LemmaId id, const LemmaParams& p, const VerifyMode& mode, Ctx& ctx) {
  const Pool pool = make_pool(p.n1, p.n2, {{p.k, p.l}}, p.b);
  const std::size_t k = static_cast<std::size_t>(p.k), l = static_cast<std::size_t>(p.l);
  const std::size_t n1 = static_cast<std::size_t>(p.n1), n2 = static_cast<std::size_t>(p.n2);
  const std::size_t b2 = static_cast<std::size_t>(p.b * p.b);
  if (id == LemmaId::L6 && l < 2) ctx.rep.notes["vacuous"] = "with l = 1 no family has between 1 and l-1 bases";
  scan_families(pool, mode, ctx, [&](const std::vector<int>& fam) {
    if (fam.empty()) return false;
    const Stats s = stats_of(pool, fam);
    bool ok = true;
    switch (id) {
      case LemmaId::L5:
        if (s.bases_second < l) return false;
        ok = s.common_j != 0;
        break;
      case LemmaId::C1:
        if (s.bases_second < l) return false;
        ok = s.total <= l * n1;
        break;
      case LemmaId::L6:
        if (s.bases_second < 1 || s.bases_second > l - 1) return false;
        ok = s.total <= 4 * b2 + (l - 1) * n1;
        break;
      default:  // C2
        ok = s.total < 9 * b2 || s.total <= 4 * b2 + (l - 1) * n1 || s.total <= l * n1 ||
             s.total <= 4 * b2 + (k - 1) * n2 || s.total <= k * n2;
        break;
    }
    if (!ok) ctx.counterexample(family_json(pool, fam));
    return true;
  });
}

void multi_size_family_lemma(LemmaId id, const LemmaParams& p, const VerifyMode& mode, Ctx& ctx) {
  const auto profiles = profiles_of(p);
  const Pool pool = make_pool(p.n1, p.n2, profiles, p.b);
  const std::size_t n1 = static_cast<std::size_t>(p.n1), n2 = static_cast<std::size_t>(p.n2);
  const std::size_t b2 = static_cast<std::size_t>(p.b * p.b);
  const ProfileList pl(profiles);
  std::vector<Rational> proof_weights;
  for (const Profile& q : profiles) {
    proof_weights.emplace_back(binomial(p.n1, q.k) * binomial(p.n2, q.l), factorial(p.n1) * factorial(p.n2));
  }
  std::uint64_t index = 0;
  scan_families(pool, mode, ctx, [&](const std::vector<int>& fam) {
    const Stats s = stats_of(pool, fam);
    bool ok = true;
    auto each = [&](auto&& pred) {
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        if (!pred(s.per_profile[i], static_cast<std::size_t>(profiles[i].k), static_cast<std::size_t>(profiles[i].l))) {
          return false;
        }
      }
      return true;
    };
    switch (id) {
      case LemmaId::L7:
        ok = !(s.bases_second > 0 && s.bases_first > 0);
        break;
      case LemmaId::L8:
        if (s.bases_second == 0 && s.bases_first == 0) return false;
        if (s.bases_second > 0) {
          ok = each([&](std::size_t r, std::size_t, std::size_t li) {
            return r < 9 * b2 || r <= 4 * b2 + (li - 1) * n1 || r <= li * n1;
          });
        }
        if (s.bases_first > 0) {
          ok = ok && each([&](std::size_t r, std::size_t ki, std::size_t) {
                 return r < 9 * b2 || r <= 4 * b2 + (ki - 1) * n2 || r <= ki * n2;
               });
        }
        break;
      case LemmaId::L9:
        ok = each([&](std::size_t r, std::size_t, std::size_t li) { return r <= li * n1; }) ||
             each([&](std::size_t r, std::size_t ki, std::size_t) { return r <= ki * n2; });
        break;
      default: {  // C3 with unit, proof and random weights
        RectFamily rf(p.n1, p.n2);
        for (int m : fam) rf.add(pool.rects[static_cast<std::size_t>(m)]);
        auto rng = fork_rng(mode.seed ^ 0xc3, index++);
        std::vector<Rational> random_weights;
        for (std::size_t i = 0; i < profiles.size(); ++i) random_weights.emplace_back(uniform_int(rng, 1, 9), uniform_int(rng, 1, 9));
        for (const auto& lambda : {std::vector<Rational>(profiles.size(), Rational(1)), proof_weights, random_weights}) {
          const auto c = corollary3_check(rf, pl, p.b, lambda);
          if (!c.hypotheses_ok) throw Error("corollary 3 hypotheses failed on a generated family: " + c.rejection);
          ok = ok && c.holds;
        }
        break;
      }
    }
    if (!ok) ctx.counterexample(family_json(pool, fam));
    return true;
  });
}

std::optional<std::string> hypotheses(LemmaId id, const LemmaParams& p) {
  auto cycle = [](int n) { return n >= 1 && n <= 64; };
  if (id == LemmaId::L1 || id == LemmaId::L2) {
    if (!cycle(p.n)) return "needs 1 <= n <= 64";
  } else if (!cycle(p.n1) || !cycle(p.n2)) {
    return "needs 1 <= n1, n2 <= 64";
  }
  switch (id) {
    case LemmaId::L1:
      return need(p.k >= 1 && 2 * p.k < p.n, "needs 2 <= 2k < n");
    case LemmaId::L2:
      if (p.k < 1 || p.b < 1) return "needs positive k and b";
      return need(2 * (p.k + p.b) <= p.n, "needs 2(k+b) <= n");
    case LemmaId::L3:
      if (p.k < 1 || p.l < 1 || p.b < 1) return "needs positive k, l, b";
      if (p.k > p.b || p.l > p.b) return "needs k, l <= b";
      return need(2 * (p.k + p.b) <= p.n1 && 2 * (p.l + p.b) <= p.n2, "needs 2(k+b) <= n1 and 2(l+b) <= n2");
    case LemmaId::L4:
      if (p.b < 1) return "needs b >= 1";
      return need(p.k >= 1 && p.k <= p.n1 && p.l >= 1 && p.l <= p.n2, "needs 1 <= k <= n1 and 1 <= l <= n2");
    case LemmaId::L5:
    case LemmaId::L6:
    case LemmaId::C1:
    case LemmaId::C2:
      return strict_single_hypotheses(p);
    case LemmaId::L7:
    case LemmaId::L8:
      return multi_hypotheses(p, false);
    case LemmaId::L9:
    case LemmaId::C3:
      return multi_hypotheses(p, true);
  }
  return std::nullopt;
}

}  // namespace

VerificationReport verify_lemma(LemmaId id, const LemmaParams& params, const VerifyMode& mode,
                                std::uint64_t node_cap) {
  const auto start = Clock::now();
  VerificationReport rep;
  rep.lemma = id;
  rep.params = params;
  rep.mode = mode;
  rep.hypothesis_failure = hypotheses(id, params);
  if (!rep.hypothesis_failure) {
    Ctx ctx{rep, node_cap};
    switch (id) {
      case LemmaId::L1:
        lemma1(params, mode, ctx);
        break;
      case LemmaId::L2:
        lemma2(params, mode, ctx);
        break;
      case LemmaId::L3:
        lemma3(params, mode, ctx);
        break;
      case LemmaId::L4:
        lemma4(params, mode, ctx);
        break;
      case LemmaId::L5:
      case LemmaId::L6:
      case LemmaId::C1:
      case LemmaId::C2:
        single_size_family_lemma(id, params, mode, ctx);
        break;
      default:
        multi_size_family_lemma(id, params, mode, ctx);
        break;
    }
    if (!mode.exhaustive) rep.notes["scope"] = "sampled instances; the statement is explored, not proved";
  }
  rep.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  return rep;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j{{"lemma", to_string(r.lemma)},
                   {"params", to_json(r.params)},
                   {"mode", r.mode.exhaustive ? "exhaustive" : "sampled"},
                   {"instances", r.instances},
                   {"counterexamples", r.counterexamples},
                   {"counterexample_count", r.counterexample_count},
                   {"hypothesis_rejections", r.hypothesis_rejections},
                   {"passed", r.passed()},
                   {"notes", r.notes},
                   {"elapsed_ms", r.elapsed.count()}};
  if (!r.mode.exhaustive) {
    j["seed"] = r.mode.seed;
    j["trials"] = r.mode.trials;
  }
  if (r.hypothesis_failure) j["hypothesis_failure"] = *r.hypothesis_failure;
  return j;
}

}  // namespace ekr

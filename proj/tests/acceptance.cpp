// One line per acceptance criterion. Exit status is nonzero only when a criterion fails
// that is not listed in kKnownFailures; those fail for reasons recorded in the README.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "ekr/bounds.hpp"
#include "ekr/conjecture.hpp"
#include "ekr/cyclic.hpp"
#include "ekr/lemmas.hpp"
#include "ekr/rng.hpp"
#include "ekr/search.hpp"

using namespace ekr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const std::set<int> kKnownFailures = {9, 12};

Outcome ekr_theorem() {
  const auto t = Clock::now();
  int cells = 0, bad = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const auto r = max_intersecting(Universe(n, 0), ProfileList{{k, 0}}, Constraint::Any);
      ++cells;
      if (!r.proven_optimal || BigInt(r.max_size) != binomial(n - 1, k - 1)) ++bad;
    }
  }
  const double s = seconds_since(t);
  return {bad == 0 && s < 10, fmt("%d cells, %d mismatches, %.2f s (limit 10 s)", cells, bad, s)};
}

Outcome frankl_theorem() {
  const auto t = Clock::now();
  int cells = 0, bad = 0;
  std::size_t at4422 = 0, at5422 = 0;
  for (int n1 = 2; n1 <= 5; ++n1) {
    for (int n2 = 2; n2 <= 5; ++n2) {
      for (int k = 1; 2 * k <= n1; ++k) {
        for (int l = 1; 2 * l <= n2; ++l) {
          const Universe u(n1, n2);
          const auto r = max_intersecting(u, ProfileList{{k, l}}, Constraint::Any);
          ++cells;
          if (!r.proven_optimal || BigInt(r.max_size) != frankl_bound(u, {k, l})) ++bad;
          if (n1 == 4 && n2 == 4 && k == 2 && l == 2) at4422 = r.max_size;
          if (n1 == 5 && n2 == 4 && k == 2 && l == 2) at5422 = r.max_size;
        }
      }
    }
  }
  const double s = seconds_since(t);
  return {bad == 0 && at4422 == 18 && at5422 == 30 && s < 60,
          fmt("%d cells, %d mismatches, (4,4,2,2)=%zu, (5,4,2,2)=%zu, %.2f s (limit 60 s)", cells, bad, at4422,
              at5422, s)};
}

Outcome theorem3_corner() {
  const auto t = Clock::now();
  bool ok = true;
  std::ostringstream d;
  for (auto [n1, n2] : {std::pair{9, 9}, {9, 12}, {12, 9}}) {
    const Universe u(n1, n2);
    const ProfileList pl{{1, 1}};
    const auto rep = verify_bound_attainment(u, pl);
    const bool cell = rep.applicable && rep.proven_optimal && rep.equal && rep.bound == std::max(n1, n2);
    ok = ok && cell;
    d << "(" << n1 << "," << n2 << ")=" << rep.search_max << " ";
  }
  const double s = seconds_since(t);
  ok = ok && s < 5;
  // below the theorem's range: report completes and two independent search paths agree
  const Universe u(6, 6);
  const ProfileList pl{{1, 1}, {2, 1}};
  const auto rep = verify_bound_attainment(u, pl);
  SearchOptions plain;
  plain.symmetry = false;
  plain.seed_with_star = false;
  const auto r = max_intersecting(u, pl, Constraint::Any, {}, plain);
  const bool sub = !rep.applicable && rep.proven_optimal && r.proven_optimal && r.max_size == rep.search_max &&
                   is_intersecting(r.witness);
  d << fmt("%.2f s (limit 5 s); below range (6,6) {(1,1),(2,1)}: max %zu, bound %s, applicable=false, "
           "symmetry-reduced and plain searches agree=%s (the subset oracle is capped at %zu vertices, this has %zu)",
           s, rep.search_max, rep.bound.str().c_str(), sub ? "yes" : "no", kOracleVertexLimit,
           enumerate_candidates(u, pl).size());
  return {ok && sub, d.str()};
}

Outcome lemma1_range() {
  const auto t = Clock::now();
  int cells = 0;
  std::uint64_t cex = 0;
  bool ok = true;
  for (int n = 3; n <= 12; ++n) {
    for (int k = 1; 2 * k < n; ++k) {
      LemmaParams p;
      p.n = n;
      p.k = k;
      const auto r = verify_lemma(LemmaId::L1, p, {});
      ++cells;
      cex += r.counterexample_count;
      ok = ok && r.passed() && r.notes["largest_clique"] == k;
    }
  }
  const double s = seconds_since(t);
  return {ok && cex == 0 && s < 30, fmt("%d (n,k) pairs, %llu counterexamples, %.2f s (limit 30 s)", cells,
                                        static_cast<unsigned long long>(cex), s)};
}

Outcome lemma2_range() {
  const auto t = Clock::now();
  int cells = 0;
  std::uint64_t cex = 0, instances = 0;
  bool ok = true;
  for (int n = 4; n <= 10; ++n) {
    for (int k = 1; 2 * (k + 1) <= n; ++k) {
      for (int b = 1; 2 * (k + b) <= n; ++b) {
        LemmaParams p;
        p.n = n;
        p.k = k;
        p.b = b;
        const auto r = verify_lemma(LemmaId::L2, p, {});
        ++cells;
        cex += r.counterexample_count;
        instances += r.instances;
        ok = ok && r.passed();
      }
    }
  }
  const double s = seconds_since(t);
  return {ok && cex == 0 && s < 60,
          fmt("%d (n,k,b) triples, %llu subsets, %llu counterexamples, %.2f s (limit 60 s)", cells,
              static_cast<unsigned long long>(instances), static_cast<unsigned long long>(cex), s)};
}

Outcome lemma3_unit() {
  LemmaParams p;
  p.k = p.l = p.b = 1;
  p.n1 = p.n2 = 5;
  const auto r = verify_lemma(LemmaId::L3, p, {});
  LemmaParams q = p;
  q.n1 = q.n2 = 9;
  const auto r9 = verify_lemma(LemmaId::L3, q, {});
  return {r.passed() && r9.passed(),
          fmt("Z5xZ5: %llu instances, %llu counterexamples; vacuous, the largest proj-intersecting family has %d < 9 "
              "members. Z9xZ9: %llu instances, %llu counterexamples",
              static_cast<unsigned long long>(r.instances), static_cast<unsigned long long>(r.counterexample_count),
              r.notes["largest_family"].get<int>(), static_cast<unsigned long long>(r9.instances),
              static_cast<unsigned long long>(r9.counterexample_count))};
}

Outcome lemma7_sampled() {
  LemmaParams p;
  p.k = p.l = p.b = 1;
  p.n1 = p.n2 = 5;
  const auto r = verify_lemma(LemmaId::L7, p, VerifyMode::sampled(1, 1000));
  return {r.passed() && r.instances == 1000,
          fmt("seed 1: %llu instances, %llu rejected, %llu counterexamples", static_cast<unsigned long long>(r.instances),
              static_cast<unsigned long long>(r.hypothesis_rejections),
              static_cast<unsigned long long>(r.counterexample_count))};
}

Outcome double_count() {
  const auto t = Clock::now();
  int families = 0, exact = 0;
  for (auto [n1, n2] : {std::pair{3, 3}, {4, 4}, {4, 5}}) {
    const Universe u(n1, n2);
    std::vector<Profile> proper;
    for (int k = 1; k < n1; ++k) {
      for (int l = 1; l < n2; ++l) proper.push_back({k, l});
    }
    const ProfileList pl(proper);
    for (int i = 0; i < 20; ++i) {
      auto rng = fork_rng(static_cast<std::uint64_t>(n1 * 10 + n2), static_cast<std::uint64_t>(i));
      const Family f = random_subfamily(u, pl, rng);
      const DoubleCount dc = double_count_check(f);
      ++families;
      exact += dc.holds();
    }
  }
  const double s = seconds_since(t);
  return {exact == families && s < 60, fmt("%d/%d exact rational equalities, %.2f s (limit 60 s)", exact, families, s)};
}

Outcome pair_count() {
  int proper = 0, proper_ok = 0, full = 0, full_ok = 0, library_ok = 0, total = 0;
  for (int n1 = 0; n1 <= 5; ++n1) {
    for (int n2 = 0; n2 <= 5; ++n2) {
      if (n1 + n2 == 0) continue;
      const Universe u(n1, n2);
      for (int k = n1 ? 1 : 0; k <= n1; ++k) {
        for (int l = n2 ? 1 : 0; l <= n2; ++l) {
          const Profile p{k, l};
          const PartSet f(low_bits(k) | (low_bits(l) << n1));
          const BigInt enumerated = enumerate_perm_pair_count(f, u);
          const bool is_proper = (n1 == 0 || k < n1) && (n2 == 0 || l < n2);
          const bool literal = literal_perm_pair_count(u, p) == enumerated;
          ++total;
          library_ok += rectangle_perm_pair_count(u, p) == enumerated;
          if (is_proper) {
            ++proper;
            proper_ok += literal;
          } else {
            ++full;
            full_ok += literal;
          }
        }
      }
    }
  }
  return {proper_ok == proper && full_ok == full,
          fmt("literal k!(n1-k)!l!(n2-l)! matches on %d/%d profiles with 0<k<n1, 0<l<n2 and on %d/%d profiles with a "
              "full part (it counts rotations of a full cycle n times); corrected per-axis count matches %d/%d",
              proper_ok, proper, full_ok, full, library_ok, total)};
}

Outcome hilton_milner() {
  int cells = 0, bad = 0, degenerate = 0;
  std::size_t at52 = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const auto r = max_intersecting(Universe(n, 0), ProfileList{{k, 0}}, Constraint::NonTrivial);
      ++cells;
      if (k == 1) {
        // no two distinct singletons meet, so no non-trivial family exists
        ++degenerate;
        if (!r.proven_optimal || r.max_size != 0) ++bad;
        continue;
      }
      if (!r.proven_optimal || BigInt(r.max_size) != hm_bound(n, k)) ++bad;
      if (n == 5 && k == 2) at52 = r.max_size;
    }
  }
  return {bad == 0 && at52 == 3,
          fmt("%d cells, %d mismatches, (5,2)=%zu; %d cells with k=1 have no non-trivial family (max 0, bound "
              "1 holds but is not attained)",
              cells, bad, at52, degenerate)};
}

Outcome cross_intersecting() {
  int cells = 0, bad = 0;
  std::size_t at52 = 0;
  for (int n = 2; n <= 7; ++n) {
    for (int k = 1; k <= 3 && 2 * k <= n; ++k) {
      const auto r = max_cross_intersecting(n, k);
      ++cells;
      if (!r.proven_optimal || BigInt(r.max_total) != cross_bound(n, k)) ++bad;
      if (n == 5 && k == 2) at52 = r.max_total;
    }
  }
  const std::size_t brute = cross_intersecting_brute_force(4, 2);
  const std::size_t forced = max_cross_intersecting(4, 2).max_total;
  return {bad == 0 && at52 == 8 && brute == forced,
          fmt("%d cells, %d mismatches, (5,2)=%zu; at (4,2) forced-G %zu vs full double enumeration %zu", cells, bad,
              at52, forced, brute)};
}

Outcome conjecture_harness() {
  std::ostringstream d;
  bool ok = true;
  for (int conj : {1, 2}) {
    const auto rep = hunt(default_grid(), conj);
    std::size_t inconsistent = 0;
    for (const auto& r : rep.records) {
      if (r.status == CellStatus::Confirmed) {
        const bool within = BigInt(r.found_max) <= r.conjectured_bound;
        const bool below = !r.construction_size || *r.construction_size <= r.found_max;
        if (!within || !below) ++inconsistent;
      }
    }
    const std::size_t other = rep.count(CellStatus::Counterexample) + rep.count(CellStatus::Error);
    ok = ok && other == 0 && inconsistent == 0;
    d << "conjecture " << conj << ": " << rep.count(CellStatus::Confirmed) << " confirmed, "
      << rep.count(CellStatus::BudgetExhausted) << " budget_exhausted, " << rep.count(CellStatus::Vacuous)
      << " vacuous (k=l=1), " << rep.count(CellStatus::Counterexample) << " counterexample";
    for (const auto& r : rep.records) {
      if (r.status == CellStatus::Counterexample) {
        d << " (" << r.cell.n1 << "," << r.cell.n2 << "," << r.cell.profile.k << "," << r.cell.profile.l
          << "):" << r.found_max << ">" << r.conjectured_bound;
      }
    }
    d << "; ";
  }
  // resume plumbing
  const auto path = std::filesystem::temp_directory_path() / "ekr_acceptance_hunt.jsonl";
  std::filesystem::remove(path);
  HuntOptions opt;
  opt.jsonl = path;
  opt.max_new_cells = 7;
  hunt(default_grid(), 1, opt);
  opt.resume = true;
  opt.max_new_cells.reset();
  const auto resumed = hunt(default_grid(), 1, opt);
  const bool plumbing = resumed.resumed == 7 && resumed.computed == default_grid().cells().size() - 7;
  std::filesystem::remove(path);
  d << "resume after interrupt skipped " << resumed.resumed << " of " << resumed.records.size()
    << " cells (" << (plumbing ? "ok" : "WRONG") << ")";
  return {ok && plumbing, d.str()};
}

Outcome oracle_equivalence() {
  const Constraint cs[] = {Constraint::Any, Constraint::NonTrivial, Constraint::TwoSided};
  int per[3] = {0, 0, 0};
  int bad = 0;
  std::uint64_t index = 0;
  while (per[0] < 50 || per[1] < 50 || per[2] < 50) {
    auto rng = fork_rng(13, index++);
    const int n1 = uniform_int(rng, 1, 5);
    const int n2 = uniform_int(rng, 0, 5);
    const Universe u(n1, n2);
    std::vector<Profile> all;
    for (int k = 1; k <= n1; ++k) {
      for (int l = n2 ? 1 : 0; l <= n2; ++l) all.push_back({k, l});
    }
    std::vector<Profile> pick;
    const int m = uniform_int(rng, 1, 3);
    for (int i = 0; i < m; ++i) pick.push_back(all[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(all.size()) - 1))]);
    const ProfileList pl(pick);
    if (enumerate_candidates(u, pl).size() > kOracleVertexLimit) continue;
    const int ci = uniform_int(rng, 0, 2);
    if (per[ci] >= 50) continue;
    const auto r = max_intersecting(u, pl, cs[ci]);
    if (!r.proven_optimal || r.max_size != exhaustive_oracle(u, pl, cs[ci])) ++bad;
    ++per[ci];
  }
  return {bad == 0, fmt("%d any, %d nontrivial, %d twosided instances, %d mismatches", per[0], per[1], per[2], bad)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"EKR one-part maxima", ekr_theorem},
      {"two-part maxima equal the Frankl bound", frankl_theorem},
      {"b=1 corner of the multi-profile theorem", theorem3_corner},
      {"lemma 1 exhaustive, n <= 12", lemma1_range},
      {"lemma 2 exhaustive, n <= 10", lemma2_range},
      {"lemma 3 at b=1 on Z5xZ5", lemma3_unit},
      {"lemma 7 sampled at b=1, n1=n2=5", lemma7_sampled},
      {"double-counting identity", double_count},
      {"permutation-pair count closed form", pair_count},
      {"Hilton-Milner maxima", hilton_milner},
      {"cross-intersecting maxima", cross_intersecting},
      {"conjecture harness on the default grid", conjecture_harness},
      {"branch-and-bound equals the subset oracle", oracle_equivalence},
  };
  int passed = 0, unexpected = 0, id = 0;
  for (const auto& [title, run] : criteria) {
    ++id;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    passed += o.pass;
    const bool known = kKnownFailures.count(id) > 0;
    if (!o.pass && !known) ++unexpected;
    std::printf("[%s] %2d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
                !o.pass && known ? " (known failure, see README)" : "");
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria pass; %d unexpected failures\n", passed, id, unexpected);
  return unexpected == 0 ? 0 : 1;
}

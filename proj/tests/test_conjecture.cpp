#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ekr/conjecture.hpp"

using namespace ekr;

namespace {

PartSet S(std::initializer_list<int> e) { return PartSet::from_elements(e); }

std::filesystem::path temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ekr_conjecture_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::size_t count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n;
}

// Conjecture terms written out from the binomials, without the library helpers.
long c(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("construction kinds round-trip") {
  for (auto k : {ConstructionKind::HmOnePart, ConstructionKind::Conj1SideX1, ConstructionKind::Conj1SideX2,
                 ConstructionKind::TwoSidedX1Anchor, ConstructionKind::TwoSidedX2Anchor}) {
    CHECK(parse_construction_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_construction_kind("star"), Error);
}

TEST_CASE("one-part HM construction at n=5, k=2") {
  ConstructionSpec s;
  s.kind = ConstructionKind::HmOnePart;
  s.universe = Universe(5, 0);
  s.profile = {2, 0};
  s.x = 0;
  s.K = S({1, 2});
  const Family f = build_construction(s);
  CHECK(f.size() == 3);
  CHECK(BigInt(f.size()) == hm_bound(5, 2));
  CHECK(f.contains(S({1, 2})));
  CHECK(satisfies(f, Constraint::NonTrivial));
}

TEST_CASE("conjecture 1 X1-side construction at (4,4,2,2)") {
  ConstructionSpec s;
  s.kind = ConstructionKind::Conj1SideX1;
  s.universe = Universe(4, 4);
  s.profile = {2, 2};
  s.x = 0;
  s.K = S({1, 2});
  const Family f = build_construction(s);
  CHECK(f.size() == (1 + c(3, 1) - c(1, 1)) * c(4, 2));
  CHECK(f.size() == 18);
}

TEST_CASE("default constructions") {
  const Universe u(5, 4);
  const auto s = default_construction(ConstructionKind::TwoSidedX2Anchor, u, {2, 2});
  CHECK(s.x == 5);
  CHECK(s.L_prime == S({5, 6}));
  CHECK(s.L == S({7, 8}));
  CHECK(s.K == S({0, 1}));
  const auto h = default_construction(ConstructionKind::Conj1SideX2, u, {2, 2});
  CHECK(h.x == 5);
  CHECK(h.K == S({6, 7}));
}

TEST_CASE("malformed specs are rejected") {
  auto s = default_construction(ConstructionKind::Conj1SideX1, Universe(4, 4), {2, 2});
  s.K = S({0, 1});
  CHECK_THROWS_AS(build_construction(s), Error);  // x in K
  s.K = S({1, 4});
  CHECK_THROWS_AS(build_construction(s), Error);  // K leaves X1
  auto t = default_construction(ConstructionKind::TwoSidedX2Anchor, Universe(4, 4), {2, 2});
  t.L = S({5, 6});
  CHECK_THROWS_AS(build_construction(t), Error);  // L meets L'
  t = default_construction(ConstructionKind::TwoSidedX2Anchor, Universe(4, 4), {2, 2});
  t.x = 6;
  CHECK_THROWS_AS(build_construction(t), Error);  // x outside L'
  auto h = default_construction(ConstructionKind::HmOnePart, Universe(4, 4), {2, 2});
  CHECK_THROWS_AS(build_construction(h), Error);
  // with k = 1 the construction collapses to a star
  CHECK_THROWS_AS(build_construction(default_construction(ConstructionKind::Conj1SideX1, Universe(4, 4), {1, 2})),
                  Error);
}

TEST_CASE("property: construction sizes equal their closed-form terms") {
  for (int n1 = 4; n1 <= 6; ++n1) {
    for (int n2 = 4; n2 <= 6; ++n2) {
      for (int k = 2; 2 * k <= n1; ++k) {
        for (int l = 2; 2 * l <= n2; ++l) {
          const Universe u(n1, n2);
          const Profile p{k, l};
          for (auto kind : {ConstructionKind::Conj1SideX1, ConstructionKind::Conj1SideX2,
                            ConstructionKind::TwoSidedX1Anchor, ConstructionKind::TwoSidedX2Anchor}) {
            const Family f = build_construction(default_construction(kind, u, p));
            CHECK(BigInt(f.size()) == construction_term(kind, u, p));
          }
          // the conjectured expressions written out in full
          const long hm1 = 1 + c(n1 - 1, k - 1) - c(n1 - k - 1, k - 1);
          const long hm2 = 1 + c(n2 - 1, l - 1) - c(n2 - l - 1, l - 1);
          CHECK(construction_term(ConstructionKind::Conj1SideX1, u, p) == hm1 * c(n2, l));
          CHECK(construction_term(ConstructionKind::Conj1SideX2, u, p) == c(n1, k) * hm2);
          CHECK(construction_term(ConstructionKind::TwoSidedX2Anchor, u, p) ==
                (c(n2 - 1, l - 1) - c(n2 - l - 1, l - 1)) * c(n1, k) + 1 + c(n1, k) - c(n1 - k, k));
          CHECK(construction_term(ConstructionKind::TwoSidedX1Anchor, u, p) ==
                (c(n1 - 1, k - 1) - c(n1 - k - 1, k - 1)) * c(n2, l) + 1 + c(n2, l) - c(n2 - l, l));
        }
      }
    }
  }
  for (int n = 4; n <= 10; ++n) {
    for (int k = 2; 2 * k <= n; ++k) {
      const Universe u(n, 0);
      CHECK(BigInt(build_construction(default_construction(ConstructionKind::HmOnePart, u, {k, 0})).size()) ==
            hm_bound(n, k));
    }
  }
}

TEST_CASE("cross-intersecting maximum") {
  CHECK(max_cross_intersecting(5, 2).max_total == 8);
  CHECK(max_cross_intersecting(4, 2).max_total == 6);
  CHECK(cross_intersecting_brute_force(4, 2) == 6);
  CHECK(cross_intersecting_brute_force(5, 2) == 8);
  const auto r = max_cross_intersecting(6, 3);
  CHECK(r.proven_optimal);
  CHECK(BigInt(r.max_total) == cross_bound(6, 3));
  // the witness really is a cross-intersecting pair of the reported size
  CHECK(r.f.size() + r.g.size() == r.max_total);
  for (PartSet a : r.f) {
    for (PartSet b : r.g) CHECK(a.intersects(b));
  }
  CHECK_THROWS_AS(max_cross_intersecting(5, 3), Error);
  CHECK_THROWS_AS(max_cross_intersecting(20, 3), Error);
}

TEST_CASE("property: cross-intersecting maximum matches the bound and brute force") {
  for (int n = 2; n <= 7; ++n) {
    for (int k = 1; k <= 3 && 2 * k <= n; ++k) {
      const auto r = max_cross_intersecting(n, k);
      CHECK(r.proven_optimal);
      CHECK(BigInt(r.max_total) == cross_bound(n, k));
      if (c(n, k) <= 10) CHECK(cross_intersecting_brute_force(n, k) == r.max_total);
    }
  }
}

TEST_CASE("cross-intersecting node limit") {
  const auto r = max_cross_intersecting(7, 3, 5);
  CHECK(!r.proven_optimal);
  CHECK(r.max_total > 0);
}

TEST_CASE("grid cells respect the size preconditions") {
  const auto cells = default_grid().cells();
  CHECK(cells.size() == 36);
  for (const auto& cell : cells) {
    CHECK(2 * cell.profile.k <= cell.n1);
    CHECK(2 * cell.profile.l <= cell.n2);
  }
  const auto g = grid_from_json(nlohmann::json::parse(R"({"n1": [4, 5], "n2": {"values": [4]}, "k": 2, "l": [1, 2],
                                                        "node_limit": 1000})"));
  CHECK(g.n1 == std::vector<int>{4, 5});
  CHECK(g.profiles.size() == 2);
  CHECK(*g.budget.node_limit == 1000);
  const auto back = grid_from_json(to_json(g));
  CHECK(back.cells().size() == g.cells().size());
  CHECK_THROWS_AS(grid_from_json(nlohmann::json::parse(R"({"n1": "x", "n2": 3, "k": 1, "l": 1})")), Error);
  ParameterGrid empty;
  CHECK(hunt(empty, 1).records.empty());
}

TEST_CASE("hunt cells at (4,4,2,2)") {
  const auto r1 = hunt_cell({4, 4, {2, 2}}, 1, {});
  CHECK(r1.status == CellStatus::Confirmed);
  CHECK(r1.found_max <= 18);
  CHECK(r1.construction_size == std::optional<std::size_t>(18));
  CHECK(r1.conjectured_bound == 18);
  const auto r2 = hunt_cell({4, 4, {2, 2}}, 2, {});
  CHECK(r2.conjectured_bound == 18);
  REQUIRE(r2.construction_size);
  CHECK(*r2.construction_size <= r2.found_max);
  CHECK(r2.construction_matches_term);
  const auto j = to_json(r2);
  CHECK(cell_record_from_json(j).found_max == r2.found_max);
  CHECK(to_json(cell_record_from_json(j)) == j);
}

TEST_CASE("hunt statuses") {
  CHECK(hunt_cell({3, 3, {1, 1}}, 1, {}).status == CellStatus::Vacuous);
  SearchBudget tiny;
  tiny.node_limit = 1;
  CHECK(hunt_cell({5, 5, {2, 2}}, 2, tiny).status == CellStatus::BudgetExhausted);
  CHECK_THROWS_AS(hunt_cell({5, 5, {2, 2}}, 3, {}), Error);
}

TEST_CASE("default grid sweep for both conjectures") {
  for (int conj : {1, 2}) {
    const auto rep = hunt(default_grid(), conj);
    CHECK(rep.records.size() == 36);
    CHECK(rep.count(CellStatus::Error) == 0);
    CHECK(rep.count(CellStatus::BudgetExhausted) == 0);
    const Constraint c = conj == 1 ? Constraint::NonTrivial : Constraint::TwoSided;
    for (const auto& r : rep.records) {
      CHECK(r.construction_matches_term);
      if (r.construction_size) CHECK(*r.construction_size <= r.found_max);
      if (r.status == CellStatus::Vacuous) CHECK((r.cell.profile.k == 1 && r.cell.profile.l == 1));
      if (r.status == CellStatus::Confirmed) CHECK(BigInt(r.found_max) <= r.conjectured_bound);
      if (r.status == CellStatus::Counterexample) {
        CHECK(r.proven_optimal);
        CHECK(BigInt(r.found_max) > r.conjectured_bound);
        std::vector<PartSet> sets;
        for (const auto& e : r.witness) sets.push_back(PartSet::from_elements(e.get<std::vector<int>>()));
        const Family w(Universe(r.cell.n1, r.cell.n2), sets);
        CHECK(w.size() == r.found_max);
        CHECK(satisfies(w, c));
      }
    }
  }
}

// All sets through x in X1 that meet a K spread over both parts, plus K.
Family mixed_star(const Universe& u, Profile p) {
  std::vector<int> k;
  for (int i = 1; i <= p.k; ++i) k.push_back(i);
  for (int i = 0; i < p.l; ++i) k.push_back(u.n1() + i);
  const PartSet K = PartSet::from_elements(k);
  std::vector<PartSet> sets;
  for (PartSet s : enumerate_profile_sets(u, p)) {
    if ((s.contains(0) && s.intersects(K)) || s == K) sets.push_back(s);
  }
  return Family(u, sets);
}

TEST_CASE("both conjectures fail at (5,5,2,2)") {
  const Universe u(5, 5);
  const Family f = mixed_star(u, {2, 2});
  CHECK(f.size() == 35);
  CHECK(satisfies(f, Constraint::NonTrivial));
  CHECK(satisfies(f, Constraint::TwoSided));
  CHECK(conjecture1_bound(u, {2, 2}) == 30);
  CHECK(conjecture2_bound(u, {2, 2}) == 28);
  const auto r1 = hunt_cell({5, 5, {2, 2}}, 1, {});
  const auto r2 = hunt_cell({5, 5, {2, 2}}, 2, {});
  CHECK(r1.status == CellStatus::Counterexample);
  CHECK(r2.status == CellStatus::Counterexample);
  CHECK(r1.found_max == 35);
  CHECK(r2.found_max == 35);
  // still below the unrestricted maximum
  CHECK(BigInt(35) < frankl_bound(u, {2, 2}));
}

TEST_CASE("hunts resume after an interrupt") {
  const auto jsonl = temp_path("hunt.jsonl");
  const auto csv = temp_path("hunt.csv");
  std::filesystem::remove(jsonl);
  HuntOptions opt;
  opt.jsonl = jsonl;
  opt.csv = csv;
  opt.max_new_cells = 5;
  const auto first = hunt(default_grid(), 1, opt);
  CHECK(first.computed == 5);
  CHECK(count_lines(jsonl) == 5);
  {
    std::ofstream cut(jsonl, std::ios::app);
    cut << R"({"n1": 4, "n2": 4, "k")";  // a record cut short
  }
  opt.resume = true;
  opt.max_new_cells.reset();
  opt.threads = 3;
  const auto second = hunt(default_grid(), 1, opt);
  CHECK(second.resumed == 5);
  CHECK(second.computed == 31);
  CHECK(second.records.size() == 36);
  CHECK(count_lines(jsonl) == 36);
  CHECK(count_lines(csv) == 37);
  const auto again = hunt(default_grid(), 1, opt);
  CHECK(again.computed == 0);
  // without resume the file starts over
  opt.resume = false;
  opt.max_new_cells = 2;
  hunt(default_grid(), 1, opt);
  CHECK(count_lines(jsonl) == 2);
}

TEST_CASE("hunt output is independent of the thread count") {
  ParameterGrid g = default_grid();
  g.n1 = g.n2 = {4, 5};
  auto strip = [](HuntReport r) {
    std::string s;
    for (auto& rec : r.records) {
      rec.elapsed_ms = 0;
      s += to_json(rec).dump() + "\n";
    }
    return s;
  };
  HuntOptions one, four;
  four.threads = 4;
  CHECK(strip(hunt(g, 2, one)) == strip(hunt(g, 2, four)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekr/cyclic.hpp"
#include "ekr/lemmas.hpp"

using namespace ekr;

namespace {

LemmaParams cyc(int n, int k, int b = 0) {
  LemmaParams p;
  p.n = n;
  p.k = k;
  p.b = b;
  return p;
}

LemmaParams rect(int k, int l, int b, int n1, int n2, std::vector<Profile> profiles = {}) {
  LemmaParams p;
  p.k = k;
  p.l = l;
  p.b = b;
  p.n1 = n1;
  p.n2 = n2;
  p.profiles = std::move(profiles);
  return p;
}

// Nonempty subsets of Z_n whose points are pairwise within distance k-1, by subset scan.
std::uint64_t brute_clique_count(int n, int k) {
  std::uint64_t count = 0;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      for (int v = u + 1; v < n && ok; ++v) {
        if (((m >> u) & 1U) && ((m >> v) & 1U) && point_distance(u, v, n) > k - 1) ok = false;
      }
    }
    count += ok;
  }
  return count;
}

std::uint64_t choose(int n, int r) {
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return c;
}

}  // namespace

TEST_CASE("lemma ids") {
  CHECK(parse_lemma_id("3") == LemmaId::L3);
  CHECK(parse_lemma_id("L9") == LemmaId::L9);
  CHECK(parse_lemma_id("lemma5") == LemmaId::L5);
  CHECK(parse_lemma_id("C2") == LemmaId::C2);
  CHECK(parse_lemma_id("Corollary3") == LemmaId::C3);
  CHECK_THROWS_AS(parse_lemma_id("10"), Error);
  CHECK_THROWS_AS(parse_lemma_id("C4"), Error);
  CHECK_THROWS_AS(parse_lemma_id("x"), Error);
  for (int i = 0; i <= static_cast<int>(LemmaId::C3); ++i) {
    const auto id = static_cast<LemmaId>(i);
    CHECK(parse_lemma_id(to_string(id)) == id);
  }
}

TEST_CASE("lemma 1 at n=7, k=3") {
  const auto r = verify_lemma(LemmaId::L1, cyc(7, 3), {});
  CHECK(r.passed());
  CHECK(r.notes["largest_clique"] == 3);
  CHECK(r.instances == brute_clique_count(7, 3));
}

TEST_CASE("property: lemma 1 instance counts match a subset scan") {
  for (int n = 3; n <= 12; ++n) {
    for (int k = 1; 2 * k < n; ++k) {
      const auto r = verify_lemma(LemmaId::L1, cyc(n, k), {});
      CHECK(r.passed());
      CHECK(r.instances == brute_clique_count(n, k));
    }
  }
}

TEST_CASE("lemma 1 sampled") {
  const auto r = verify_lemma(LemmaId::L1, cyc(30, 7), VerifyMode::sampled(3, 200));
  CHECK(r.passed());
  CHECK(r.instances == 200);
  CHECK(r.notes["largest_clique"] == 7);
}

TEST_CASE("lemma 2 at n=10, k=2, b=2") {
  const auto r = verify_lemma(LemmaId::L2, cyc(10, 2, 2), {});
  CHECK(r.passed());
  CHECK(r.instances == choose(10, 5));
}

TEST_CASE("lemma 2 is tight: k+b starts can all be close") {
  // k+b consecutive starts pairwise within distance b, which the lemma's k+b+1 rules out
  const int n = 12, k = 2, b = 3;
  for (int s = 0; s < k + b; ++s) {
    for (int t = s + 1; t < k + b; ++t) CHECK(interval_distance(Interval(n, s, k), Interval(n, t, k)) < b + 1);
  }
  CHECK(verify_lemma(LemmaId::L2, cyc(n, k, b), {}).passed());
}

TEST_CASE("hypothesis failures are reported, not checked") {
  const auto r1 = verify_lemma(LemmaId::L1, cyc(6, 3), {});
  REQUIRE(r1.hypothesis_failure);
  CHECK(!r1.passed());
  CHECK(r1.instances == 0);
  CHECK(verify_lemma(LemmaId::L2, cyc(7, 2, 2), {}).hypothesis_failure);
  CHECK(verify_lemma(LemmaId::L3, rect(2, 1, 1, 9, 9), {}).hypothesis_failure);
  CHECK(verify_lemma(LemmaId::L5, rect(1, 1, 1, 4, 5), {}).hypothesis_failure);
  CHECK(verify_lemma(LemmaId::L7, rect(1, 1, 1, 4, 5), {}).hypothesis_failure);
  CHECK(verify_lemma(LemmaId::L9, rect(1, 1, 1, 9, 10), {}).hypothesis_failure);
  CHECK(verify_lemma(LemmaId::C3, rect(0, 0, 2, 40, 40, {{1, 2}, {1, 3}}), {}).hypothesis_failure);
  const auto j = to_json(r1);
  CHECK(j.contains("hypothesis_failure"));
  CHECK(j["passed"] == false);
}

TEST_CASE("lemma 3 at b=1 on Z_5 x Z_5 is vacuous") {
  const auto r = verify_lemma(LemmaId::L3, rect(1, 1, 1, 5, 5), {});
  CHECK(r.passed());
  CHECK(r.instances == 0);
  CHECK(r.notes["largest_family"] == 5);
  CHECK(r.notes.contains("vacuous"));
}

TEST_CASE("lemma 3 at b=1 on Z_9 x Z_9") {
  // unit cells pairwise sharing a row or column lie in one row or one column (or number
  // at most two), so the 9-member families are the 9 rows and 9 columns
  const auto r = verify_lemma(LemmaId::L3, rect(1, 1, 1, 9, 9), {});
  CHECK(r.passed());
  CHECK(r.instances == 18);
  CHECK(r.notes["largest_family"] == 9);
}

TEST_CASE("lemma 3 sampled") {
  const auto r = verify_lemma(LemmaId::L3, rect(1, 2, 2, 12, 12), VerifyMode::sampled(5, 300));
  CHECK(r.passed());
  CHECK(r.instances + r.hypothesis_rejections == 300);
  CHECK(r.notes.contains("scope"));
}

TEST_CASE("lemma 4 exhaustive") {
  for (auto [k, l, b, n1, n2] : std::vector<std::array<int, 5>>{{1, 1, 1, 5, 5}, {2, 1, 1, 7, 6}, {1, 2, 2, 8, 7}}) {
    const auto r = verify_lemma(LemmaId::L4, rect(k, l, b, n1, n2), {});
    CHECK(r.passed());
    CHECK(r.instances > 0);
  }
}

TEST_CASE("lemma 4 sampled") {
  const auto r = verify_lemma(LemmaId::L4, rect(3, 2, 3, 20, 17), VerifyMode::sampled(9, 2000));
  CHECK(r.passed());
  CHECK(r.instances > 0);
}

TEST_CASE("single-size family lemmas on unit cells") {
  // proj-intersecting unit-cell families in Z_5 x Z_5: nonempty subsets of one row or
  // one column, singletons counted once
  const std::uint64_t families = 2 * 5 * 31 - 25;
  for (LemmaId id : {LemmaId::L5, LemmaId::C1, LemmaId::L6, LemmaId::C2}) {
    const auto r = verify_lemma(id, rect(1, 1, 1, 5, 5), {});
    CHECK(r.passed());
    CHECK(r.instances + r.hypothesis_rejections == families);
  }
  // a row with 2+ cells has a form-(2) pair; rows are the only such families
  const auto l5 = verify_lemma(LemmaId::L5, rect(1, 1, 1, 5, 5), {});
  CHECK(l5.instances == 5 * (31 - 10));  // row subsets minus singletons and adjacent pairs
  CHECK(verify_lemma(LemmaId::L6, rect(1, 1, 1, 5, 5), {}).notes.contains("vacuous"));
}

TEST_CASE("single-size family lemmas on larger rectangles") {
  for (LemmaId id : {LemmaId::L5, LemmaId::C1, LemmaId::L6, LemmaId::C2}) {
    CHECK(verify_lemma(id, rect(2, 2, 2, 9, 9), VerifyMode::sampled(11, 400)).passed());
    CHECK(verify_lemma(id, rect(1, 2, 2, 7, 9), VerifyMode::sampled(12, 400)).passed());
  }
}

TEST_CASE("lemma 7 sampled at b=1, n1=n2=5") {
  const auto r = verify_lemma(LemmaId::L7, rect(1, 1, 1, 5, 5), VerifyMode::sampled(1, 1000));
  CHECK(r.passed());
  CHECK(r.instances == 1000);
  CHECK(r.counterexample_count == 0);
}

TEST_CASE("lemmas 7 and 8 over several profiles") {
  const auto params = rect(0, 0, 2, 9, 10, {{1, 2}, {2, 1}, {2, 2}});
  for (LemmaId id : {LemmaId::L7, LemmaId::L8}) {
    const auto r = verify_lemma(id, params, VerifyMode::sampled(21, 500));
    CHECK(r.passed());
    CHECK(r.instances > 0);
  }
  CHECK(verify_lemma(LemmaId::L7, rect(1, 1, 1, 5, 5), {}).passed());
  CHECK(verify_lemma(LemmaId::L8, rect(1, 1, 1, 5, 5), {}).passed());
}

TEST_CASE("lemma 9 and corollary 3") {
  const auto exhaustive = rect(1, 1, 1, 10, 10);
  CHECK(verify_lemma(LemmaId::L9, exhaustive, {}).passed());
  const auto r = verify_lemma(LemmaId::C3, rect(0, 0, 1, 10, 11, {{1, 1}}), VerifyMode::sampled(7, 500));
  CHECK(r.passed());
  CHECK(r.instances == 500);
  const auto multi = rect(0, 0, 2, 37, 38, {{1, 2}, {2, 1}, {2, 2}});
  CHECK(verify_lemma(LemmaId::L9, multi, VerifyMode::sampled(8, 100)).passed());
  CHECK(verify_lemma(LemmaId::C3, multi, VerifyMode::sampled(8, 100)).passed());
}

TEST_CASE("sampled runs are reproducible") {
  const auto params = rect(0, 0, 2, 9, 10, {{1, 2}, {2, 2}});
  const auto a = to_json(verify_lemma(LemmaId::L8, params, VerifyMode::sampled(4, 200)));
  const auto b = to_json(verify_lemma(LemmaId::L8, params, VerifyMode::sampled(4, 200)));
  CHECK(a["instances"] == b["instances"]);
  CHECK(a["hypothesis_rejections"] == b["hypothesis_rejections"]);
}

TEST_CASE("exhaustive runs over the node cap ask for sampled mode") {
  CHECK_THROWS_WITH_AS(verify_lemma(LemmaId::L3, rect(2, 2, 2, 24, 24), {}, 2000), doctest::Contains("sampled"),
                       Error);
  CHECK_THROWS_AS(verify_lemma(LemmaId::L2, cyc(60, 3, 3), {}, 1000), Error);
}

TEST_CASE("report json") {
  const auto j = to_json(verify_lemma(LemmaId::L2, cyc(10, 2, 2), {}));
  for (const char* key : {"lemma", "params", "mode", "instances", "counterexamples", "hypothesis_rejections",
                          "elapsed_ms"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["lemma"] == "L2");
  CHECK(j["mode"] == "exhaustive");
  CHECK(j["params"]["n"] == 10);
  const auto s = to_json(verify_lemma(LemmaId::L7, rect(1, 1, 1, 5, 5), VerifyMode::sampled(1, 10)));
  CHECK(s["mode"] == "sampled");
  CHECK(s["seed"] == 1);
  CHECK(s["trials"] == 10);
}

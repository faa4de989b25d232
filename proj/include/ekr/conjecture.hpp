#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ekr/bounds.hpp"
#include "ekr/family.hpp"
#include "ekr/search.hpp"

namespace ekr {

enum class ConstructionKind { HmOnePart, Conj1SideX1, Conj1SideX2, TwoSidedX1Anchor, TwoSidedX2Anchor };

std::string_view to_string(ConstructionKind kind);
ConstructionKind parse_construction_kind(std::string_view text);

// Global element indices. For the two-sided kinds L and L' live on the anchor side and
// K on the other side; for the rest K lives with x.
struct ConstructionSpec {
  ConstructionKind kind = ConstructionKind::HmOnePart;
  Universe universe{1, 0};
  Profile profile;
  int x = 0;
  PartSet K;
  PartSet L;
  PartSet L_prime;
};

/// Lowest-index choices: x first on its side, then K (or L', L) right after it.
ConstructionSpec default_construction(ConstructionKind kind, const Universe& u, Profile p);

/// Throws when the spec is malformed or the result misses its kind's predicate.
Family build_construction(const ConstructionSpec& spec);

/// Closed-form size of the construction: hm_bound, or one term of a conjectured maximum.
BigInt construction_term(ConstructionKind kind, const Universe& u, Profile p);

struct CrossResult {
  std::size_t max_total = 0;
  std::vector<PartSet> f;
  std::vector<PartSet> g;
  bool proven_optimal = true;
  std::uint64_t nodes = 0;
};

inline constexpr int kMaxCrossCandidates = 64;

/// Largest |F| + |G| over non-empty cross-intersecting F, G of k-subsets of [n].
CrossResult max_cross_intersecting(int n, int k, std::optional<std::uint64_t> node_limit = std::nullopt);

/// Every pair of non-empty subfamilies; C(n, k) <= 12.
std::size_t cross_intersecting_brute_force(int n, int k);

nlohmann::json to_json(const CrossResult& r);

// ---------------------------------------------------------------- hunts

struct HuntCell {
  int n1 = 0;
  int n2 = 0;
  Profile profile;
};

struct ParameterGrid {
  std::vector<int> n1;
  std::vector<int> n2;
  std::vector<Profile> profiles;
  SearchBudget budget;

  /// Cells with 1 <= k, 2k <= n1, 1 <= l, 2l <= n2, in (n1, n2, profile) order.
  std::vector<HuntCell> cells() const;
};

/// n1, n2 in 2..5 and k, l in 1..2.
ParameterGrid default_grid();

// { "n1": [lo, hi] | {"values": [...]}, "n2": ..., "profiles": [[k, l], ...]
//   | "k": range, "l": range, "node_limit": int, "time_limit_ms": int }
ParameterGrid grid_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ParameterGrid& g);

// confirmed: proven maximum within the bound. counterexample: proven maximum above it.
// budget_exhausted: no proof of optimality. vacuous: no family meets the constraint.
// error: the cell threw; the message is kept.
enum class CellStatus { Confirmed, Counterexample, BudgetExhausted, Vacuous, Error };
std::string_view to_string(CellStatus s);

struct CellRecord {
  HuntCell cell;
  int conjecture = 1;
  std::size_t found_max = 0;
  bool proven_optimal = false;
  BigInt conjectured_bound;
  std::optional<std::size_t> construction_size;
  std::string construction_kind;
  bool construction_matches_term = true;
  CellStatus status = CellStatus::Error;
  std::string message;
  std::uint64_t nodes = 0;
  std::int64_t elapsed_ms = 0;
  nlohmann::json witness;  // sets of the maximum, kept for counterexamples
};

nlohmann::json to_json(const CellRecord& r);
CellRecord cell_record_from_json(const nlohmann::json& j);

struct HuntOptions {
  std::optional<std::filesystem::path> jsonl;
  std::optional<std::filesystem::path> csv;
  bool resume = false;
  unsigned threads = 1;
  // Stop after this many newly computed cells, as an interrupted sweep would.
  std::optional<std::size_t> max_new_cells;
};

struct HuntReport {
  std::vector<CellRecord> records;  // grid order
  std::size_t resumed = 0;
  std::size_t computed = 0;

  std::size_t count(CellStatus s) const;
};

CellRecord hunt_cell(const HuntCell& cell, int conjecture, const SearchBudget& budget);

/// Runs the grid against conjecture 1 (non-trivial) or 2 (two-sided). Records are
/// appended to the JSON-lines file in grid order as they complete; with resume, cells
/// already in that file are loaded instead of recomputed.
HuntReport hunt(const ParameterGrid& grid, int conjecture, const HuntOptions& options = {});

std::string hunt_csv(const HuntReport& report);

}  // namespace ekr

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "ekr/bounds.hpp"
#include "ekr/family.hpp"
#include "ekr/graph.hpp"

namespace ekr {

enum class Constraint { Any, NonTrivial, TwoSided };

std::string_view to_string(Constraint c);
Constraint parse_constraint(std::string_view text);

/// Intersecting, and additionally non-trivial or two-sided as requested.
bool satisfies(const Family& f, Constraint c);

struct SearchBudget {
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::milliseconds> time_limit;
};

struct SearchOptions {
  unsigned threads = 1;
  // Root branching on orbit representatives of the part-preserving permutation group.
  bool symmetry = true;
  // Start the Any search from the larger star.
  bool seed_with_star = true;
};

struct SearchResult {
  std::size_t max_size = 0;
  Family witness;
  bool proven_optimal = true;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

/// Exact maximum clique of the compatibility graph subject to the constraint.
/// Budget exhaustion returns the incumbent with proven_optimal = false. The
/// size and witness do not depend on the thread count.
SearchResult max_intersecting(const CompatibilityGraph& g, Constraint c,
                              const SearchBudget& budget = {}, const SearchOptions& options = {});

SearchResult max_intersecting(const Universe& u, const ProfileList& pl, Constraint c,
                              const SearchBudget& budget = {}, const SearchOptions& options = {},
                              std::size_t vertex_cap = CompatibilityGraph::kDefaultVertexCap);

nlohmann::json to_json(const SearchResult& r);

inline constexpr std::size_t kOracleVertexLimit = 25;

/// Brute force over subfamilies of the candidate sets, testing the predicates
/// on the sets themselves. Independent of the graph and of the solver.
std::size_t exhaustive_oracle(const Universe& u, const ProfileList& pl, Constraint c);

struct AttainmentReport {
  std::size_t search_max = 0;
  BigInt bound;
  bool applicable = false;
  bool equal = false;
  bool proven_optimal = false;

  /// Only a proven maximum above the bound in the applicable range contradicts the theorem.
  bool theorem_violated() const { return applicable && proven_optimal && !equal; }
};

AttainmentReport verify_bound_attainment(const Universe& u, const ProfileList& pl,
                                         const SearchBudget& budget = {},
                                         const SearchOptions& options = {});

nlohmann::json to_json(const AttainmentReport& r);

}  // namespace ekr

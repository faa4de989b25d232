#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ekr/family.hpp"

namespace ekr {

enum class LemmaId { L1, L2, L3, L4, L5, L6, L7, L8, L9, C1, C2, C3 };

/// Accepts "1".."9", "L3", "lemma3", "C2", "corollary2" (case-insensitive).
LemmaId parse_lemma_id(const std::string& text);
std::string to_string(LemmaId id);

// Fields a verifier does not use are ignored. Lemmas 7-9 and Corollary 3 take a profile
// list; when it is empty they fall back to the single profile (k, l).
struct LemmaParams {
  int n = 0;
  int k = 0;
  int l = 0;
  int b = 0;
  int n1 = 0;
  int n2 = 0;
  std::vector<Profile> profiles;
};

nlohmann::json to_json(const LemmaParams& p);

struct VerifyMode {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::size_t trials = 0;

  static VerifyMode sampled(std::uint64_t seed, std::size_t trials) { return {false, seed, trials}; }
};

struct VerificationReport {
  LemmaId lemma = LemmaId::L1;
  LemmaParams params;
  VerifyMode mode;
  std::uint64_t instances = 0;
  std::uint64_t hypothesis_rejections = 0;
  std::uint64_t counterexample_count = 0;
  std::vector<nlohmann::json> counterexamples;  // the first few, in scan order
  std::optional<std::string> hypothesis_failure;
  nlohmann::json notes = nlohmann::json::object();
  std::chrono::milliseconds elapsed{0};

  bool passed() const { return !hypothesis_failure && counterexample_count == 0; }
};

inline constexpr std::uint64_t kDefaultLemmaNodeCap = 20'000'000;

/// Checks the statement on every object in range (exhaustive) or on seeded random
/// instances (sampled). Parameters outside the statement's hypotheses produce a report
/// naming the failed hypothesis and checking nothing. An exhaustive range above the node
/// cap throws, asking for sampled mode.
VerificationReport verify_lemma(LemmaId id, const LemmaParams& params, const VerifyMode& mode,
                                std::uint64_t node_cap = kDefaultLemmaNodeCap);

nlohmann::json to_json(const VerificationReport& r);

}  // namespace ekr

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace ekr {

/// Raised for precondition violations and malformed input throughout the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side { X1, X2 };

inline constexpr int kMaxUniverse = 64;

inline constexpr std::uint64_t low_bits(int count) {
  return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

/// Ground set X = X1 ∪ X2. Elements 0..n1-1 form X1, n1..n1+n2-1 form X2.
/// A universe with one empty part is the classical one-part setting.
class Universe {
 public:
  Universe(int n1, int n2);

  /// Part sizes without the 64-element cap, for evaluating bounds only. Sets over
  /// such a universe cannot be formed.
  static Universe unbounded(int n1, int n2);

  bool encodable() const { return size() <= kMaxUniverse; }
  void require_encodable() const;

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int size() const { return n1_ + n2_; }
  bool one_part() const { return n1_ == 0 || n2_ == 0; }

  std::uint64_t mask() const { return low_bits(size()); }
  std::uint64_t x1_mask() const { return low_bits(n1_); }
  std::uint64_t x2_mask() const { return mask() & ~x1_mask(); }
  std::uint64_t part_mask(Side s) const { return s == Side::X1 ? x1_mask() : x2_mask(); }

  Side side_of(int element) const;

  bool operator==(const Universe&) const = default;

 private:
  Universe(int n1, int n2, bool);

  int n1_;
  int n2_;
};

/// A subset of the universe stored as a single membership word.
class PartSet {
 public:
  constexpr PartSet() = default;
  constexpr explicit PartSet(std::uint64_t bits) : bits_(bits) {}

  static PartSet from_elements(std::span<const int> elements);
  static PartSet from_elements(std::initializer_list<int> elements) {
    return from_elements(std::span<const int>(elements.begin(), elements.size()));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int e) const { return e >= 0 && e < 64 && ((bits_ >> e) & 1U); }
  constexpr bool intersects(PartSet o) const { return (bits_ & o.bits_) != 0; }
  std::vector<int> elements() const;

  constexpr PartSet operator&(PartSet o) const { return PartSet(bits_ & o.bits_); }
  constexpr PartSet operator|(PartSet o) const { return PartSet(bits_ | o.bits_); }

  constexpr auto operator<=>(const PartSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Lexicographic order on the ascending element lists ({0,2} < {0,3} < {1,2}).
bool lex_less(PartSet a, PartSet b);

struct Profile {
  int k = 0;  // size inside X1
  int l = 0;  // size inside X2
  constexpr auto operator<=>(const Profile&) const = default;
};

Profile profile_of(const Universe& u, PartSet s);

/// A part that exists must receive at least one element; an empty part receives none.
void validate_profile(const Universe& u, Profile p);

/// Duplicate-free, non-empty list of profiles in first-seen order.
class ProfileList {
 public:
  ProfileList(std::vector<Profile> profiles);
  ProfileList(std::initializer_list<Profile> profiles)
      : ProfileList(std::vector<Profile>(profiles)) {}

  std::span<const Profile> profiles() const { return profiles_; }
  std::size_t size() const { return profiles_.size(); }
  const Profile& operator[](std::size_t i) const { return profiles_[i]; }
  auto begin() const { return profiles_.begin(); }
  auto end() const { return profiles_.end(); }

  /// max over all k_i and l_i
  int b() const { return b_; }
  std::optional<std::size_t> index_of(Profile p) const;
  bool contains(Profile p) const { return index_of(p).has_value(); }

 private:
  std::vector<Profile> profiles_;
  int b_ = 0;
};

void validate_profiles(const Universe& u, const ProfileList& pl);

class Family {
 public:
  explicit Family(Universe u);
  Family(Universe u, std::vector<PartSet> sets);

  /// Throws on duplicates and on elements outside the universe.
  void add(PartSet s);

  const Universe& universe() const { return universe_; }
  std::span<const PartSet> sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  bool contains(PartSet s) const;

 private:
  Universe universe_;
  std::vector<PartSet> sets_;
  std::unordered_set<std::uint64_t> index_;
};

struct Triviality {
  bool trivial = false;
  std::optional<int> witness;  // smallest common element; none for the empty family
};

bool is_intersecting(const Family& f);
Triviality is_trivially_intersecting(const Family& f);
bool is_two_sided_intersecting(const Family& f);

/// All sets with exactly p.k elements in X1 and p.l in X2, in lex order.
std::vector<PartSet> enumerate_profile_sets(const Universe& u, Profile p);

/// Union of enumerate_profile_sets over the list, merged into lex order.
std::vector<PartSet> enumerate_candidates(const Universe& u, const ProfileList& pl);

Family star_family(const Universe& u, const ProfileList& pl, int x);

/// Each candidate kept independently with probability `density`; never empty.
Family random_subfamily(const Universe& u, const ProfileList& pl, std::mt19937_64& rng, double density = 1.0 / 3);

std::string to_string(PartSet s);

}  // namespace ekr

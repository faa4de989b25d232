#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "ekr/bounds.hpp"
#include "ekr/family.hpp"

namespace ekr {

using Rational = boost::multiprecision::cpp_rational;

/// Cyclic distance in Z_n.
int point_distance(int u, int v, int n);

/// {start, ..., start+length-1} mod modulus. A full-length interval always has
/// start 0. Modulus 0 with length 0 stands for the missing axis of a one-part universe.
class Interval {
 public:
  Interval() = default;
  Interval(int modulus, int start, int length);

  int modulus() const { return modulus_; }
  int start() const { return start_; }
  int length() const { return length_; }
  bool full() const { return length_ == modulus_; }

  std::uint64_t mask() const;
  std::vector<int> elements() const;
  bool contains(int x) const { return (mask() >> x) & 1U; }
  bool intersects(const Interval& o) const { return (mask() & o.mask()) != 0; }

  auto operator<=>(const Interval&) const = default;

 private:
  int modulus_ = 0;
  int start_ = 0;
  int length_ = 0;
};

/// 0 when the intervals meet, else the least point distance between them.
int interval_distance(const Interval& a, const Interval& b);

/// The interval with exactly these residues, if they are consecutive mod n.
std::optional<Interval> as_interval(std::uint64_t residues, int n);

struct Rectangle {
  Interval i;
  Interval j;
  auto operator<=>(const Rectangle&) const = default;
  Profile dims() const { return {i.length(), j.length()}; }
};

bool proj_intersecting(const Rectangle& a, const Rectangle& b);

class RectFamily {
 public:
  RectFamily(int n1, int n2);
  RectFamily(int n1, int n2, std::vector<Rectangle> rects);

  /// Throws on duplicates and on moduli other than (n1, n2).
  void add(const Rectangle& r);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  const std::vector<Rectangle>& rects() const { return rects_; }
  std::size_t size() const { return rects_.size(); }
  bool empty() const { return rects_.empty(); }

  /// Members grouped by their k x l dimensions.
  std::map<Profile, std::vector<Rectangle>> by_dims() const;

 private:
  int n1_;
  int n2_;
  std::vector<Rectangle> rects_;
};

bool is_proj_intersecting_family(const RectFamily& rf);

struct Projections {
  std::map<Interval, std::size_t> first;   // I-projections with multiplicity
  std::map<Interval, std::size_t> second;  // J-projections with multiplicity
};

Projections projections(const RectFamily& rf);

enum class BlockingKind {
  BaseInSecond,  // equal J, d(I1, I2) >= b+1
  BaseInFirst,   // equal I, d(J1, J2) >= b+1
};

struct BlockingPair {
  BlockingKind kind;
  std::size_t a;  // indices into rf.rects()
  std::size_t b;
  Interval base;
};

struct BlockingReport {
  std::vector<BlockingPair> pairs;
  std::size_t bases_second = 0;  // distinct bases among BaseInSecond pairs
  std::size_t bases_first = 0;
  bool has(BlockingKind k) const { return (k == BlockingKind::BaseInSecond ? bases_second : bases_first) > 0; }
};

BlockingReport find_blocking_pairs(const RectFamily& rf, int b);

/// Arrangement of 0..n-1 on a cycle, rotated so that order[0] == 0.
struct CyclicPermutation {
  std::vector<int> order;
  std::vector<int> position;  // inverse of order
};

/// All (n-1)! canonical cyclic permutations; n == 0 yields one empty permutation.
std::vector<CyclicPermutation> cyclic_permutations(int n);

/// Positions of F in c1 x c2 as a rectangle, or nothing when a part is not consecutive.
/// An empty part is consecutive only when that part of the universe is empty.
std::optional<Rectangle> set_to_rectangle(PartSet f, const Universe& u, const CyclicPermutation& c1,
                                          const CyclicPermutation& c2);

/// (1/n1!)(1/n2!) C(n1,k) C(n2,l) for the profile of f, which must lie in pl.
Rational weight(PartSet f, const Universe& u, const ProfileList& pl);

/// Number of canonical cyclic permutation pairs in which a set of this profile is a rectangle.
/// Per axis this is k!(n-k)! for 0 < k < n, (n-1)! for k == n and 1 for an empty axis.
BigInt rectangle_perm_pair_count(const Universe& u, Profile p);

/// k!(n1-k)! l!(n2-l)! taken literally; agrees with the count above only for 0 < k < n1, 0 < l < n2.
BigInt literal_perm_pair_count(const Universe& u, Profile p);

/// Direct count over all canonical permutation pairs. Requires n1, n2 <= 7.
BigInt enumerate_perm_pair_count(PartSet f, const Universe& u);

struct DoubleCount {
  Rational by_member;  // sum over members of (pairs where it is a rectangle) * weight
  Rational by_pair;    // sum over permutation pairs of the weights of the rectangles formed
  std::size_t family_size = 0;
  std::size_t pairs = 0;
  std::vector<Rational> per_pair_terms;
  bool holds() const { return by_member == family_size && by_pair == family_size; }
};

/// Requires n1, n2 <= 6 and every member's part sizes strictly between 0 and the part size
/// (an empty part of a one-part universe is allowed).
DoubleCount double_count_check(const Family& f);

struct Corollary3Check {
  bool hypotheses_ok = false;
  std::string rejection;
  Rational lhs;
  Rational rhs;
  bool holds = true;
};

/// sum_i lambda_i |R_i| against max{n1 sum_i lambda_i l_i, n2 sum_i lambda_i k_i}. The
/// hypotheses (proj-intersecting, all lengths <= b, 9b^2 < n1, n2, positive weights) are
/// checked first; when they fail nothing is evaluated.
Corollary3Check corollary3_check(const RectFamily& rf, const ProfileList& pl, int b,
                                 const std::vector<Rational>& lambda);

nlohmann::json to_json(const RectFamily& rf);
RectFamily rect_family_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& r);

}  // namespace ekr

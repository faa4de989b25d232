#include "ekr/family.hpp"

#include <algorithm>
#include <sstream>

namespace ekr {

Universe::Universe(int n1, int n2) : n1_(n1), n2_(n2) {
  if (n1 < 0 || n2 < 0) throw Error("universe part sizes must be non-negative");
  if (n1 + n2 < 1) throw Error("universe must have at least one element");
  if (n1 + n2 > kMaxUniverse) {
    throw Error("universe has " + std::to_string(n1 + n2) + " elements; at most 64 are supported");
  }
}

Universe::Universe(int n1, int n2, bool) : n1_(n1), n2_(n2) {
  if (n1 < 0 || n2 < 0) throw Error("universe part sizes must be non-negative");
  if (n1 + n2 < 1) throw Error("universe must have at least one element");
}

Universe Universe::unbounded(int n1, int n2) { return Universe(n1, n2, true); }

void Universe::require_encodable() const {
  if (!encodable()) {
    throw Error("universe has " + std::to_string(size()) + " elements; sets need at most 64");
  }
}

Side Universe::side_of(int element) const {
  if (element < 0 || element >= size()) {
    throw Error("element " + std::to_string(element) + " outside universe");
  }
  return element < n1_ ? Side::X1 : Side::X2;
}

PartSet PartSet::from_elements(std::span<const int> elements) {
  std::uint64_t bits = 0;
  for (int e : elements) {
    if (e < 0 || e >= kMaxUniverse) throw Error("element " + std::to_string(e) + " out of range");
    bits |= std::uint64_t{1} << e;
  }
  return PartSet(bits);
}

std::vector<int> PartSet::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t w = bits_; w != 0; w &= w - 1) out.push_back(std::countr_zero(w));
  return out;
}

bool lex_less(PartSet a, PartSet b) {
  const std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  const std::uint64_t low = diff & (~diff + 1);
  const std::uint64_t above = ~((low << 1) - 1);
  if (a.bits() & low) return (b.bits() & above) != 0;
  return (a.bits() & above) == 0;
}

Profile profile_of(const Universe& u, PartSet s) {
  return {std::popcount(s.bits() & u.x1_mask()), std::popcount(s.bits() & u.x2_mask())};
}

void validate_profile(const Universe& u, Profile p) {
  auto check = [](int size, int part, const char* name) {
    if (size < 0 || size > part) {
      throw Error(std::string("profile ") + name + "=" + std::to_string(size) +
                  " outside 0.." + std::to_string(part));
    }
    if (part > 0 && size == 0) {
      throw Error(std::string("profile ") + name + " must be positive when its part is non-empty");
    }
    if (part == 0 && size != 0) {
      throw Error(std::string("profile ") + name + " must be 0 for an empty part");
    }
  };
  check(p.k, u.n1(), "k");
  check(p.l, u.n2(), "l");
}

ProfileList::ProfileList(std::vector<Profile> profiles) {
  for (const Profile& p : profiles) {
    if (std::find(profiles_.begin(), profiles_.end(), p) == profiles_.end()) profiles_.push_back(p);
  }
  if (profiles_.empty()) throw Error("profile list must not be empty");
  for (const Profile& p : profiles_) b_ = std::max({b_, p.k, p.l});
}

std::optional<std::size_t> ProfileList::index_of(Profile p) const {
  auto it = std::find(profiles_.begin(), profiles_.end(), p);
  if (it == profiles_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - profiles_.begin());
}

void validate_profiles(const Universe& u, const ProfileList& pl) {
  for (const Profile& p : pl) validate_profile(u, p);
}

Family::Family(Universe u) : universe_(u) { universe_.require_encodable(); }

Family::Family(Universe u, std::vector<PartSet> sets) : universe_(u) {
  universe_.require_encodable();
  sets_.reserve(sets.size());
  for (PartSet s : sets) add(s);
}

void Family::add(PartSet s) {
  if ((s.bits() & ~universe_.mask()) != 0) {
    throw Error("set " + to_string(s) + " has elements outside the universe");
  }
  if (!index_.insert(s.bits()).second) throw Error("duplicate set " + to_string(s));
  sets_.push_back(s);
}

bool Family::contains(PartSet s) const {
  return index_.count(s.bits()) != 0;
}

bool is_intersecting(const Family& f) {
  const auto sets = f.sets();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (!sets[i].intersects(sets[j])) return false;
    }
  }
  return true;
}

Triviality is_trivially_intersecting(const Family& f) {
  if (f.empty()) return {true, std::nullopt};
  std::uint64_t common = f.universe().mask();
  for (PartSet s : f.sets()) common &= s.bits();
  if (common == 0) return {false, std::nullopt};
  return {true, std::countr_zero(common)};
}

bool is_two_sided_intersecting(const Family& f) {
  const auto sets = f.sets();
  const std::uint64_t x1 = f.universe().x1_mask();
  const std::uint64_t x2 = f.universe().x2_mask();
  bool miss_x1 = false;
  bool miss_x2 = false;
  // Witness pairs need not be distinct members.
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i; j < sets.size(); ++j) {
      const std::uint64_t common = sets[i].bits() & sets[j].bits();
      miss_x1 = miss_x1 || (common & x1) == 0;
      miss_x2 = miss_x2 || (common & x2) == 0;
      if (miss_x1 && miss_x2) return true;
    }
  }
  return false;
}

namespace {

// k-subsets of {offset, ..., offset+n-1} as words, in lex order of element lists.
std::vector<std::uint64_t> combinations(int n, int k, int offset) {
  std::vector<std::uint64_t> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::uint64_t w = 0;
    for (int i : idx) w |= std::uint64_t{1} << (i + offset);
    out.push_back(w);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return out;
}

}  // namespace

std::vector<PartSet> enumerate_profile_sets(const Universe& u, Profile p) {
  u.require_encodable();
  validate_profile(u, p);
  const auto left = combinations(u.n1(), p.k, 0);
  const auto right = combinations(u.n2(), p.l, u.n1());
  std::vector<PartSet> out;
  out.reserve(left.size() * right.size());
  for (std::uint64_t a : left) {
    for (std::uint64_t c : right) out.emplace_back(a | c);
  }
  return out;
}

std::vector<PartSet> enumerate_candidates(const Universe& u, const ProfileList& pl) {
  std::vector<PartSet> out;
  for (const Profile& p : pl) {
    auto part = enumerate_profile_sets(u, p);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Family star_family(const Universe& u, const ProfileList& pl, int x) {
  u.side_of(x);
  Family f(u);
  for (PartSet s : enumerate_candidates(u, pl)) {
    if (s.contains(x)) f.add(s);
  }
  return f;
}

std::string to_string(PartSet s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int e : s.elements()) {
    if (!first) os << ',';
    os << e;
    first = false;
  }
  os << '}';
  return os.str();
}

Family random_subfamily(const Universe& u, const ProfileList& pl, std::mt19937_64& rng, double density) {
  const auto pool = enumerate_candidates(u, pl);
  if (pool.empty()) throw Error("no candidate sets");
  std::bernoulli_distribution keep(density);
  while (true) {
    Family f(u);
    for (PartSet s : pool) {
      if (keep(rng)) f.add(s);
    }
    if (!f.empty()) return f;
  }
}

}  // namespace ekr

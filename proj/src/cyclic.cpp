#include "ekr/cyclic.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ekr/family_io.hpp"

namespace ekr {

int point_distance(int u, int v, int n) {
  if (n <= 0 || u < 0 || v < 0 || u >= n || v >= n) {
    throw Error("point_distance needs residues in 0.." + std::to_string(n - 1));
  }
  const int d = u > v ? u - v : v - u;
  return std::min(d, n - d);
}

Interval::Interval(int modulus, int start, int length) : modulus_(modulus), start_(start), length_(length) {
  if (modulus == 0) {
    if (start != 0 || length != 0) throw Error("an interval of the empty cycle has length 0");
    return;
  }
  if (modulus < 0 || modulus > 64) throw Error("interval modulus must be in 1..64");
  if (length < 1 || length > modulus) {
    throw Error("interval length " + std::to_string(length) + " outside 1.." + std::to_string(modulus));
  }
  if (start < 0 || start >= modulus) throw Error("interval start outside 0.." + std::to_string(modulus - 1));
  if (length == modulus) start_ = 0;
}

std::uint64_t Interval::mask() const {
  if (modulus_ == 0) return 0;
  const std::uint64_t run = low_bits(length_);
  std::uint64_t m = run << start_;
  if (start_ > 0) m |= run >> (modulus_ - start_);
  return m & low_bits(modulus_);
}

std::vector<int> Interval::elements() const {
  std::vector<int> out;
  for (int t = 0; t < length_; ++t) out.push_back((start_ + t) % modulus_);
  return out;
}

int interval_distance(const Interval& a, const Interval& b) {
  if (a.modulus() != b.modulus()) {
    throw Error("interval moduli differ (" + std::to_string(a.modulus()) + " vs " +
                std::to_string(b.modulus()) + ")");
  }
  if (a.intersects(b)) return 0;
  int best = a.modulus();
  for (int x : a.elements()) {
    for (int y : b.elements()) best = std::min(best, point_distance(x, y, a.modulus()));
  }
  return best;
}

std::optional<Interval> as_interval(std::uint64_t residues, int n) {
  if (n == 0) return residues == 0 ? std::optional<Interval>(Interval()) : std::nullopt;
  const int len = std::popcount(residues);
  if (len == 0) return std::nullopt;
  if (len == n) return Interval(n, 0, n);
  for (int s = 0; s < n; ++s) {
    const int prev = (s + n - 1) % n;
    if (((residues >> s) & 1U) && !((residues >> prev) & 1U)) {
      Interval cand(n, s, len);
      return cand.mask() == residues ? std::optional<Interval>(cand) : std::nullopt;
    }
  }
  return std::nullopt;
}

bool proj_intersecting(const Rectangle& a, const Rectangle& b) {
  return a.i.intersects(b.i) || a.j.intersects(b.j);
}

RectFamily::RectFamily(int n1, int n2) : n1_(n1), n2_(n2) {
  if (n1 < 1 || n2 < 1 || n1 > 64 || n2 > 64) throw Error("rectangle families need 1 <= n1, n2 <= 64");
}

RectFamily::RectFamily(int n1, int n2, std::vector<Rectangle> rects) : RectFamily(n1, n2) {
  for (const auto& r : rects) add(r);
}

void RectFamily::add(const Rectangle& r) {
  if (r.i.modulus() != n1_ || r.j.modulus() != n2_) {
    throw Error("rectangle moduli do not match Z_" + std::to_string(n1_) + " x Z_" + std::to_string(n2_));
  }
  if (std::find(rects_.begin(), rects_.end(), r) != rects_.end()) throw Error("duplicate rectangle");
  rects_.push_back(r);
}

std::map<Profile, std::vector<Rectangle>> RectFamily::by_dims() const {
  std::map<Profile, std::vector<Rectangle>> out;
  for (const auto& r : rects_) out[r.dims()].push_back(r);
  return out;
}

bool is_proj_intersecting_family(const RectFamily& rf) {
  const auto& r = rf.rects();
  for (std::size_t a = 0; a < r.size(); ++a) {
    for (std::size_t b = a + 1; b < r.size(); ++b) {
      if (!proj_intersecting(r[a], r[b])) return false;
    }
  }
  return true;
}

Projections projections(const RectFamily& rf) {
  Projections p;
  for (const auto& r : rf.rects()) {
    ++p.first[r.i];
    ++p.second[r.j];
  }
  return p;
}

BlockingReport find_blocking_pairs(const RectFamily& rf, int b) {
  if (b < 1) throw Error("blocking pairs need b >= 1");
  BlockingReport rep;
  std::set<Interval> second, first;
  const auto& r = rf.rects();
  for (std::size_t x = 0; x < r.size(); ++x) {
    for (std::size_t y = x + 1; y < r.size(); ++y) {
      if (r[x].j == r[y].j && interval_distance(r[x].i, r[y].i) >= b + 1) {
        rep.pairs.push_back({BlockingKind::BaseInSecond, x, y, r[x].j});
        second.insert(r[x].j);
      } else if (r[x].i == r[y].i && interval_distance(r[x].j, r[y].j) >= b + 1) {
        rep.pairs.push_back({BlockingKind::BaseInFirst, x, y, r[x].i});
        first.insert(r[x].i);
      }
    }
  }
  rep.bases_second = second.size();
  rep.bases_first = first.size();
  return rep;
}

std::vector<CyclicPermutation> cyclic_permutations(int n) {
  if (n < 0 || n > 10) throw Error("cyclic permutations are enumerated only for n <= 10");
  std::vector<CyclicPermutation> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  do {
    CyclicPermutation c;
    c.order = order;
    c.position.resize(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) c.position[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
    out.push_back(std::move(c));
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return out;
}

std::optional<Rectangle> set_to_rectangle(PartSet f, const Universe& u, const CyclicPermutation& c1,
                                          const CyclicPermutation& c2) {
  if (c1.order.size() != static_cast<std::size_t>(u.n1()) ||
      c2.order.size() != static_cast<std::size_t>(u.n2())) {
    throw Error("cyclic permutation sizes do not match the universe");
  }
  std::uint64_t p1 = 0, p2 = 0;
  for (int e : f.elements()) {
    if (e < u.n1()) {
      p1 |= std::uint64_t{1} << c1.position[static_cast<std::size_t>(e)];
    } else {
      p2 |= std::uint64_t{1} << c2.position[static_cast<std::size_t>(e - u.n1())];
    }
  }
  auto i = as_interval(p1, u.n1());
  if (!i) return std::nullopt;
  auto j = as_interval(p2, u.n2());
  if (!j) return std::nullopt;
  return Rectangle{*i, *j};
}

Rational weight(PartSet f, const Universe& u, const ProfileList& pl) {
  const Profile p = profile_of(u, f);
  if (!pl.contains(p)) {
    throw Error("set " + to_string(f) + " has profile (" + std::to_string(p.k) + "," +
                std::to_string(p.l) + ") outside the profile list");
  }
  return Rational(binomial(u.n1(), p.k) * binomial(u.n2(), p.l), factorial(u.n1()) * factorial(u.n2()));
}

namespace {

BigInt axis_count(int n, int k) {
  if (n == 0) return 1;
  if (k == n) return factorial(n - 1);
  return factorial(k) * factorial(n - k);
}

}  // namespace

BigInt rectangle_perm_pair_count(const Universe& u, Profile p) {
  validate_profile(u, p);
  return axis_count(u.n1(), p.k) * axis_count(u.n2(), p.l);
}

BigInt literal_perm_pair_count(const Universe& u, Profile p) {
  validate_profile(u, p);
  return factorial(p.k) * factorial(u.n1() - p.k) * factorial(p.l) * factorial(u.n2() - p.l);
}

BigInt enumerate_perm_pair_count(PartSet f, const Universe& u) {
  if (u.n1() > 7 || u.n2() > 7) throw Error("permutation pair enumeration needs n1, n2 <= 7");
  const auto c1 = cyclic_permutations(u.n1());
  const auto c2 = cyclic_permutations(u.n2());
  std::uint64_t count = 0;
  for (const auto& a : c1) {
    for (const auto& b : c2) count += set_to_rectangle(f, u, a, b).has_value();
  }
  return count;
}

DoubleCount double_count_check(const Family& f) {
  const Universe& u = f.universe();
  if (u.n1() > 6 || u.n2() > 6) throw Error("double counting is limited to n1, n2 <= 6");
  for (PartSet s : f.sets()) {
    const Profile p = profile_of(u, s);
    const bool proper1 = u.n1() == 0 ? p.k == 0 : (p.k > 0 && p.k < u.n1());
    const bool proper2 = u.n2() == 0 ? p.l == 0 : (p.l > 0 && p.l < u.n2());
    if (!proper1 || !proper2) {
      throw Error("member " + to_string(s) + " fills or misses a whole part; the identity needs 0 < k < n1 and 0 < l < n2");
    }
  }
  DoubleCount dc;
  dc.family_size = f.size();
  if (f.empty()) return dc;
  const BigInt denom = factorial(u.n1()) * factorial(u.n2());

  BigInt member_num = 0;
  std::vector<BigInt> numer(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    const Profile p = profile_of(u, f.sets()[m]);
    numer[m] = binomial(u.n1(), p.k) * binomial(u.n2(), p.l);
    member_num += rectangle_perm_pair_count(u, p) * numer[m];
  }
  dc.by_member = Rational(member_num, denom);

  const auto c1 = cyclic_permutations(u.n1());
  const auto c2 = cyclic_permutations(u.n2());
  BigInt pair_num = 0;
  for (const auto& a : c1) {
    for (const auto& b : c2) {
      BigInt term = 0;
      for (std::size_t m = 0; m < f.size(); ++m) {
        if (set_to_rectangle(f.sets()[m], u, a, b)) term += numer[m];
      }
      pair_num += term;
      dc.per_pair_terms.emplace_back(term, denom);
      ++dc.pairs;
    }
  }
  dc.by_pair = Rational(pair_num, denom);
  return dc;
}

Corollary3Check corollary3_check(const RectFamily& rf, const ProfileList& pl, int b,
                                 const std::vector<Rational>& lambda) {
  Corollary3Check c;
  auto reject = [&](std::string why) {
    c.rejection = std::move(why);
    return c;
  };
  if (lambda.size() != pl.size()) return reject("one weight per profile is required");
  for (const auto& l : lambda) {
    if (l <= 0) return reject("weights must be positive");
  }
  if (b < 1 || pl.b() > b) return reject("profile sizes must not exceed b");
  const long t = 9L * b * b;
  if (!(t < rf.n1() && t < rf.n2())) return reject("needs 9b^2 < n1 and 9b^2 < n2");
  for (const auto& r : rf.rects()) {
    if (!pl.contains(r.dims())) return reject("rectangle dimensions outside the profile list");
  }
  if (!is_proj_intersecting_family(rf)) return reject("family is not proj-intersecting");
  c.hypotheses_ok = true;

  const auto groups = rf.by_dims();
  Rational sum_l = 0, sum_k = 0;
  c.lhs = 0;
  for (std::size_t i = 0; i < pl.size(); ++i) {
    auto it = groups.find(pl[i]);
    const std::size_t count = it == groups.end() ? 0 : it->second.size();
    c.lhs += lambda[i] * count;
    sum_l += lambda[i] * pl[i].l;
    sum_k += lambda[i] * pl[i].k;
  }
  c.rhs = std::max(Rational(rf.n1()) * sum_l, Rational(rf.n2()) * sum_k);
  c.holds = c.lhs <= c.rhs;
  return c;
}

nlohmann::json to_json(const RectFamily& rf) {
  nlohmann::json rects = nlohmann::json::array();
  for (const auto& r : rf.rects()) rects.push_back({r.i.start(), r.i.length(), r.j.start(), r.j.length()});
  return {{"n1", rf.n1()}, {"n2", rf.n2()}, {"rects", rects}};
}

RectFamily rect_family_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n1") || !j.contains("n2") || !j.contains("rects")) {
    throw Error("rectangle family JSON needs keys n1, n2 and rects");
  }
  RectFamily rf(j.at("n1").get<int>(), j.at("n2").get<int>());
  for (const auto& r : j.at("rects")) {
    if (!r.is_array() || r.size() != 4) throw Error("each rectangle is [i_start, i_len, j_start, j_len]");
    rf.add({Interval(rf.n1(), r[0].get<int>(), r[1].get<int>()),
            Interval(rf.n2(), r[2].get<int>(), r[3].get<int>())});
  }
  return rf;
}

nlohmann::json rational_to_json(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return bigint_to_json(num);
  return num.str() + "/" + den.str();
}

}  // namespace ekr

#include "ekr/bounds.hpp"

#include <algorithm>

namespace ekr {

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw Error("factorial of negative number");
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt star_size(const Universe& u, const ProfileList& pl, Side side) {
  validate_profiles(u, pl);
  BigInt total = 0;
  for (const Profile& p : pl) {
    if (side == Side::X1) {
      total += binomial(u.n1() - 1, p.k - 1) * binomial(u.n2(), p.l);
    } else {
      total += binomial(u.n1(), p.k) * binomial(u.n2() - 1, p.l - 1);
    }
  }
  return total;
}

BigInt frankl_bound(const Universe& u, Profile p) { return theorem3_bound(u, ProfileList{p}); }

BigInt theorem3_bound(const Universe& u, const ProfileList& pl) {
  return std::max(star_size(u, pl, Side::X1), star_size(u, pl, Side::X2));
}

bool theorem3_applicable(const Universe& u, const ProfileList& pl) {
  const long t = 9L * pl.b() * pl.b();
  return t <= u.n1() && t <= u.n2();
}

namespace {

void require_one_part(int n, int k, const char* name) {
  if (k < 1 || 2 * k > n) {
    throw Error(std::string(name) + " requires 1 <= k and 2k <= n (got n=" + std::to_string(n) +
                ", k=" + std::to_string(k) + ")");
  }
}

void require_two_part(const Universe& u, Profile p, const char* name) {
  if (u.n1() < 1 || u.n2() < 1 || p.k < 1 || p.l < 1 || 2 * p.k > u.n1() || 2 * p.l > u.n2()) {
    throw Error(std::string(name) + " requires k, l >= 1, 2k <= n1 and 2l <= n2 (got n1=" +
                std::to_string(u.n1()) + ", n2=" + std::to_string(u.n2()) + ", k=" +
                std::to_string(p.k) + ", l=" + std::to_string(p.l) + ")");
  }
}

// 1 + C(n-1,k-1) - C(n-k-1,k-1)
BigInt hm_value(int n, int k) { return 1 + binomial(n - 1, k - 1) - binomial(n - k - 1, k - 1); }

// C(n-1,k-1) - C(n-k-1,k-1): sets through x meeting a fixed k-set avoiding x
BigInt star_meeting(int n, int k) { return binomial(n - 1, k - 1) - binomial(n - k - 1, k - 1); }

// 1 + C(n,k) - C(n-k,k)
BigInt cross_value(int n, int k) { return 1 + binomial(n, k) - binomial(n - k, k); }

}  // namespace

BigInt ekr_bound(int n, int k) {
  require_one_part(n, k, "ekr_bound");
  return binomial(n - 1, k - 1);
}

BigInt hm_bound(int n, int k) {
  require_one_part(n, k, "hm_bound");
  return hm_value(n, k);
}

BigInt cross_bound(int n, int k) {
  require_one_part(n, k, "cross_bound");
  return cross_value(n, k);
}

BoundTerms conjecture1_terms(const Universe& u, Profile p) {
  require_two_part(u, p, "conjecture1_bound");
  const int n1 = u.n1(), n2 = u.n2(), k = p.k, l = p.l;
  return {hm_value(n1, k) * binomial(n2, l), binomial(n1, k) * hm_value(n2, l)};
}

BoundTerms conjecture2_terms(const Universe& u, Profile p) {
  require_two_part(u, p, "conjecture2_bound");
  const int n1 = u.n1(), n2 = u.n2(), k = p.k, l = p.l;
  // X1-anchored: the almost-intersecting projection lives in X1, the cross pair in X2.
  return {star_meeting(n1, k) * binomial(n2, l) + cross_value(n2, l),
          star_meeting(n2, l) * binomial(n1, k) + cross_value(n1, k)};
}

BigInt conjecture1_bound(const Universe& u, Profile p) {
  auto t = conjecture1_terms(u, p);
  return std::max(t.x1_side, t.x2_side);
}

BigInt conjecture2_bound(const Universe& u, Profile p) {
  auto t = conjecture2_terms(u, p);
  return std::max(t.x1_side, t.x2_side);
}

}  // namespace ekr

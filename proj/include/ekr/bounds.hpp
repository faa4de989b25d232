#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "ekr/family.hpp"

namespace ekr {

using BigInt = boost::multiprecision::cpp_int;

/// C(n, k); zero whenever k < 0, k > n or n < 0.
BigInt binomial(long n, long k);
BigInt factorial(long n);

/// Number of profile-respecting sets through a fixed element of the given part:
///   X1: sum_i C(n1-1, k_i-1) C(n2, l_i)
///   X2: sum_i C(n1, k_i) C(n2-1, l_i-1)
BigInt star_size(const Universe& u, const ProfileList& pl, Side side);

BigInt frankl_bound(const Universe& u, Profile p);
BigInt theorem3_bound(const Universe& u, const ProfileList& pl);

/// True iff 9 b^2 <= n1 and 9 b^2 <= n2.
bool theorem3_applicable(const Universe& u, const ProfileList& pl);

// One-part extremal values. Each requires 1 <= k and 2k <= n.
BigInt ekr_bound(int n, int k);
BigInt hm_bound(int n, int k);
BigInt cross_bound(int n, int k);

// Two-part conjectured values. Require n1, n2, k, l >= 1, 2k <= n1 and 2l <= n2.
BigInt conjecture1_bound(const Universe& u, Profile p);
BigInt conjecture2_bound(const Universe& u, Profile p);

/// Values of the two terms inside the conjectured maxima, X1-anchored term first.
struct BoundTerms {
  BigInt x1_side;
  BigInt x2_side;
};
BoundTerms conjecture1_terms(const Universe& u, Profile p);
BoundTerms conjecture2_terms(const Universe& u, Profile p);

}  // namespace ekr

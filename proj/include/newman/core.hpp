#pragma once
// Definitions and brute-force oracles for generalized Newman sums
//
//   S_{m,l,q}(x) = sum over 0 <= n < x with n == l (mod m) of (-1)^{sigma_q(n)}
//
// where sigma_q(n) is the base-q digit sum of n. Everything in this
// header is linear-time and obvious by construction; the transfer
// module holds the fast evaluators that are tested against these.

#include <stdexcept>

#include "newman/integer.hpp"

namespace newman {

// The triple (q, m, l) identifying a generalized Newman sum.
struct SumSpec {
  long q;  // radix, >= 2
  long m;  // modulus, >= 1
  long l;  // residue class, 0 <= l < m

  SumSpec(long radix, long modulus, long residue);
};

// Half-open range {n : lo <= n < hi}; empty when lo == hi.
struct Interval {
  Int lo;
  Int hi;

  Interval(Int lo_, Int hi_);
};

// Parity-split census of the residue class 0 mod m under base-2 digit
// sums: g0 counts members with even digit sum, g1 the odd ones.
// Invariants: g0 + g1 = residue_class_count(m, x) and
// g0 - g1 = S_{m,0,2}(x).
struct GelfondCounts {
  Int g0;
  Int g1;
};

// Sum of base-q digits. digit_sum(0, q) = 0.
long digit_sum(unsigned long n, long q);
long digit_sum(const Int& n, long q);

// (-1)^{digit_sum(n, q)}
int sign_of(unsigned long n, long q);
int sign_of(const Int& n, long q);

// Direct enumeration of S_{m,l,q}(x). x must be small enough to walk
// (it is the correctness oracle, not the fast path).
Int newman_sum_naive(const SumSpec& spec, const Int& x);

// S(spec, [lo, hi)) = S(spec, hi) - S(spec, lo), by enumeration.
Int newman_sum_interval_naive(const SumSpec& spec, const Interval& iv);

// #{n in [0, x) : n == 0 (mod m)} = floor((x-1)/m) + 1 for x >= 1 and 0
// for x = 0. Note this is not floor(x/m) + 1, which overcounts exactly
// when m | x and x > 0.
Int residue_class_count(long m, const Int& x);

// Base-2 Gelfond census by enumeration; see gelfond_counts in the
// transfer module for the fast route.
GelfondCounts gelfond_counts_naive(long m, const Int& x);

}  // namespace newman

#pragma once
// Fast evaluation of generalized Newman sums by digit dynamic
// programming over base-q expansions, plus the base-step transfer
// matrix.
//
// Level tables:
//
//   W_i[t] = sum over 0 <= n < q^i with n == t (mod m) of (-1)^{sigma_q(n)}
//
// satisfy W_0 = (1, 0, ..., 0) and
//
//   W_{i+1}[t] = sum_{a=0}^{q-1} (-1)^a W_i[(t - a q^i) mod m].
//
// A most-significant-digit-first walk over the digits of x then yields
// S_{m,l,q}(x) in O(len_q(x) * q) big-integer additions: at position i
// with digit d_i, every n < x sharing the digits above i and carrying a
// smaller digit a < d_i contributes (-1)^{sigma(prefix) + a} times
// W_i[(l - prefix - a q^i) mod m].
//
// The recursion subtracts a*q^i mod m, so it needs no modular inverse
// and works for any gcd(q, m). The transfer matrix below additionally
// requires gcd(q, m) = 1.

#include <cstddef>
#include <memory>
#include <vector>

#include "newman/core.hpp"

namespace newman {

struct WeightTables {
  long q = 0;
  long m = 0;
  std::vector<std::vector<Int>> levels;  // levels[i] holds W_i, m entries
  std::vector<long> pow_mod;             // q^i mod m, aligned with levels

  WeightTables(long radix, long modulus);

  // Grows the table so that levels 0..level exist.
  void extend_to(std::size_t level);
};

// Tables with levels W_0 .. W_L.
WeightTables build_weight_tables(long q, long m, std::size_t level_count);

// m x m integer matrix B with V(q x) = B V(x) for all x >= 0, where
// V(x) = (S_{m,0,q}(x), ..., S_{m,m-1,q}(x)). Entry (l, c) sums (-1)^a
// over the digits a in [0, q) with (l - a) q^{-1} == c (mod m). Rows
// and columns each sum to 1 for odd q and 0 for even q.
struct TransferMatrix {
  long q = 0;
  long m = 0;
  std::vector<Int> entries;  // row-major, m*m

  const Int& at(long row, long col) const {
    return entries[std::size_t(row) * std::size_t(m) + std::size_t(col)];
  }
  Int& at(long row, long col) {
    return entries[std::size_t(row) * std::size_t(m) + std::size_t(col)];
  }
};

// Raised when an operation requires gcd(q, m) = 1 and the pair is not
// coprime.
class NonCoprimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

TransferMatrix transfer_matrix(long q, long m);

// Base-2 reduction for even modulus: S_{m,l}(2x) = sign * S_{m',l'}(x)
// with m' = m/2 and l' = l/2 (even l, sign +1) or (l-1)/2 (odd l, sign -1).
struct EvenReduction {
  long m;
  long l;
  int sign;
};
EvenReduction even_modulus_reduce(long m, long l);

// Exactly newman_sum_naive(spec, x), in O(len_q(x) * q) big-integer
// additions (plus table construction). x may be astronomically large.
Int newman_sum_fast(const SumSpec& spec, const Int& x);

// S(spec, [lo, hi)) via the fast path.
Int newman_sum_interval_fast(const SumSpec& spec, const Interval& iv);

// Full vector V(x) = (S_{m,0,q}(x), ..., S_{m,m-1,q}(x)) in one DP pass.
std::vector<Int> vector_sums(long q, long m, const Int& x);

// Fast Gelfond census (base 2) through the identities
// g0 + g1 = residue_class_count(m, x) and g0 - g1 = S_{m,0,2}(x).
GelfondCounts gelfond_counts(long m, const Int& x);

namespace detail {

// Base-q digits of x, least significant first; empty for x = 0.
std::vector<long> digits_lsb_first(const Int& x, long q);

// Process-wide table cache, one entry per (q, m), grown lazily and
// swapped atomically so readers always hold a consistent snapshot.
std::shared_ptr<const WeightTables> cached_tables(long q, long m, std::size_t max_level);

// Evaluations needing levels above this bypass the cache and stream one
// level at a time, keeping memory at O(m) entries for inputs like 2^2003.
inline constexpr std::size_t kMaxCachedLevel = 64;

// Digit DP for a single residue. tables may be null (streaming mode);
// when given it must already hold levels 0..digits.size()-1.
Int eval_single(const SumSpec& spec, const std::vector<long>& digits, const WeightTables* tables);

// Digit DP accumulating all m residues at once.
std::vector<Int> eval_vector(long q, long m, const std::vector<long>& digits,
                             const WeightTables* tables);

}  // namespace detail

}  // namespace newman

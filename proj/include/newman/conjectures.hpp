#pragma once
// Scan drivers for the experimental questions: the a_n = S_{n,0,2}(2^n)
// prime sequence, positivity of S over a residue class, record-maxima
// growth exponents, cross-modulus ratio trends, and Gelfond remainder
// terms. Scans report evidence; none of them asserts a conjecture.

#include <vector>

#include "newman/core.hpp"
#include "newman/integer.hpp"

namespace newman {

// a_n = S_{n,0,2}(2^n). Cost O(n^2) big-integer additions.
Int a_sequence(long n);

// The primes p <= 1000 known to have eventually positive S_{p,0}(n).
inline constexpr long kEventuallyPositivePrimes[] = {3, 5, 17, 43, 257, 683};

struct PrimeScanRecord {
  long p = 0;
  Int a_p;
  bool divisible_by_p = false;
  bool is_plus_minus_p = false;
  Int quotient;               // a_p / p, only meaningful when divisible
  bool eventually_positive = false;  // member of kEventuallyPositivePrimes
};

// One record per odd prime p <= p_max (deterministic trial division).
std::vector<PrimeScanRecord> scan_primes(long p_max);

struct PositivityReport {
  SumSpec spec;
  long long n_max = 0;
  long long min_value = 0;
  long long argmin = 0;  // smallest n in [1, n_max] attaining the minimum
  bool all_positive = false;
};

// Single incremental pass over S(spec, n) for 1 <= n <= n_max. With
// workers > 1 the range is split into blocks whose prefix values come
// from the fast evaluator, so results are exact and identical for every
// worker count.
PositivityReport positivity_scan(const SumSpec& spec, long long n_max, int workers = 1);

struct ExponentRecordPoint {
  long long n = 0;
  long long value = 0;  // S(spec, n), signed
  double lambda = 0.0;  // ln|S(n)| / ln n
};

struct ExponentEstimate {
  SumSpec spec;
  long long n_max = 0;
  long long n_min = 0;
  bool empty = true;  // no n with |S(n)| >= 2 in range
  double lambda_hat = 0.0;
  long long argmax_n = 0;
  long long record_value = 0;  // |S| at the record
  std::vector<ExponentRecordPoint> records;  // successive record maxima
};

// Record-maxima estimator: lambda_hat = max over n in [n_min, n_max]
// with |S(n)| >= 2 of ln|S(n)| / ln n. S values are exact; floating
// point enters only in the final logarithm ratio.
ExponentEstimate exponent_estimate(const SumSpec& spec, long long n_max, long long n_min = 64,
                                   int workers = 1);

struct RatioScanRecord {
  long m = 0;
  long k = 0;
  Int n;
  Int s_m;    // S_{m,0,2}(n)
  Int s_3k;   // S_{3k,0,2}(n)
  Rat ratio;  // |s_m| / max(1, |s_3k|)
  double ratio_real = 0.0;
};

// Ratios |S_{m,0}| / |S_{3k,0}| at `checkpoints` geometrically spaced
// points up to n_max (exact integer roots, no floating point in the
// checkpoint choice). Requires gcd(m, 3) = 1. Records are emitted only
// where |S_{3k,0}(n)| >= 1.
std::vector<RatioScanRecord> ratio_scan(long m, long k, const Int& n_max, int checkpoints);

struct GelfondRemainderRecord {
  Int x;
  Int g0;
  Int g1;
  Rat rem0;  // g0 - x/(2m)
  Rat rem1;  // g1 - x/(2m)
  bool exp0_valid = false;
  bool exp1_valid = false;
  double exp0 = 0.0;  // ln|rem0| / ln x, when defined
  double exp1 = 0.0;
};

// Remainder terms g_i - x/(2m) at geometrically spaced checkpoints,
// with companion exponents ln|rem|/ln x for comparison against
// ln 3 / ln 4 = 0.79248...
std::vector<GelfondRemainderRecord> gelfond_remainder(long m, const Int& n_max, int checkpoints);

namespace detail {
bool is_prime(long n);
// Geometric checkpoints x_i = floor((n_max^i)^(1/count)), deduplicated
// ascending; {0} when n_max = 0.
std::vector<Int> geometric_checkpoints(const Int& n_max, int count);
}  // namespace detail

}  // namespace newman

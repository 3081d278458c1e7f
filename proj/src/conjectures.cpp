#include "newman/conjectures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "newman/transfer.hpp"

namespace newman {

namespace detail {

bool is_prime(long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<Int> geometric_checkpoints(const Int& n_max, int count) {
  if (count < 1) throw std::invalid_argument("geometric_checkpoints: count must be >= 1");
  if (n_max < 0) throw std::domain_error("geometric_checkpoints: n_max must be non-negative");
  if (n_max == 0) return {Int(0)};
  std::vector<Int> out;
  for (int i = 1; i <= count; ++i) {
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), n_max.get_mpz_t(), static_cast<unsigned long>(i));
    Int x;
    mpz_root(x.get_mpz_t(), pw.get_mpz_t(), static_cast<unsigned long>(count));
    if (out.empty() || x > out.back()) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace detail

namespace {

int sign64(unsigned long long n, long q) {
  if (q == 2) return __builtin_parityll(n) ? -1 : +1;
  long long s = 0;
  const auto base = static_cast<unsigned long long>(q);
  while (n > 0) {
    s += (long long)(n % base);
    n /= base;
  }
  return s % 2 == 0 ? +1 : -1;
}

long long to_longlong(const Int& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("scan value exceeds 64 bits");
  return v.get_si();
}

// Walks S(spec, n) over n in [lo, hi) and reports every maximal stretch
// [start, end) on which S is constant. The entry value comes from the
// fast evaluator, so blocks can start anywhere.
template <typename Visitor>
void scan_stretches(const SumSpec& spec, long long lo, long long hi, Visitor&& visit) {
  if (lo >= hi) return;
  long long value = to_longlong(newman_sum_fast(spec, Int(static_cast<long>(lo))));
  long long member = lo + (((spec.l - lo) % spec.m) + spec.m) % spec.m;
  long long stretch_start = lo;
  while (member + 1 < hi) {
    // S changes at n = member + 1
    visit(stretch_start, member + 1, value);
    value += sign64(static_cast<unsigned long long>(member), spec.q);
    stretch_start = member + 1;
    member += spec.m;
  }
  visit(stretch_start, hi, value);
}

struct Block {
  long long lo;
  long long hi;
};

std::vector<Block> partition(long long first, long long last, int workers) {
  const long long span = last - first;
  long long w = std::clamp<long long>(workers, 1, 256);
  w = std::min<long long>(w, span);
  std::vector<Block> blocks;
  for (long long i = 0; i < w; ++i) {
    long long lo = first + (long long)((__int128)span * i / w);
    long long hi = first + (long long)((__int128)span * (i + 1) / w);
    if (lo < hi) blocks.push_back({lo, hi});
  }
  return blocks;
}

}  // namespace

Int a_sequence(long n) {
  if (n < 1) throw std::domain_error("a_sequence: n must be >= 1");
  Int x = Int(1) << static_cast<unsigned long>(n);
  return newman_sum_fast(SumSpec(2, n, 0), x);
}

std::vector<PrimeScanRecord> scan_primes(long p_max) {
  std::vector<PrimeScanRecord> out;
  for (long p = 3; p <= p_max; p += 2) {
    if (!detail::is_prime(p)) continue;
    PrimeScanRecord rec;
    rec.p = p;
    rec.a_p = a_sequence(p);
    rec.divisible_by_p =
        mpz_divisible_ui_p(rec.a_p.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
    if (rec.divisible_by_p) {
      mpz_divexact_ui(rec.quotient.get_mpz_t(), rec.a_p.get_mpz_t(),
                      static_cast<unsigned long>(p));
    }
    rec.is_plus_minus_p = abs(rec.a_p) == p;
    rec.eventually_positive =
        std::find(std::begin(kEventuallyPositivePrimes), std::end(kEventuallyPositivePrimes),
                  p) != std::end(kEventuallyPositivePrimes);
    out.push_back(std::move(rec));
  }
  return out;
}

PositivityReport positivity_scan(const SumSpec& spec, long long n_max, int workers) {
  if (n_max < 1) throw std::domain_error("positivity_scan: n_max must be >= 1");
  struct Local {
    bool any = false;
    long long min_value = 0;
    long long argmin = 0;
  };
  const std::vector<Block> blocks = partition(1, n_max + 1, workers);
  std::vector<Local> locals(blocks.size());
  {
    std::vector<std::thread> pool;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      pool.emplace_back([&, b] {
        Local& acc = locals[b];
        scan_stretches(spec, blocks[b].lo, blocks[b].hi,
                       [&acc](long long start, long long, long long value) {
                         if (!acc.any || value < acc.min_value) {
                           acc.any = true;
                           acc.min_value = value;
                           acc.argmin = start;
                         }
                       });
      });
    }
    for (auto& t : pool) t.join();
  }
  PositivityReport report{spec, n_max, 0, 0, false};
  bool any = false;
  for (const Local& loc : locals) {  // ascending block order: first minimum wins
    if (!loc.any) continue;
    if (!any || loc.min_value < report.min_value) {
      any = true;
      report.min_value = loc.min_value;
      report.argmin = loc.argmin;
    }
  }
  report.all_positive = any && report.min_value > 0;
  return report;
}

ExponentEstimate exponent_estimate(const SumSpec& spec, long long n_max, long long n_min,
                                   int workers) {
  if (n_min < 2) throw std::domain_error("exponent_estimate: n_min must be >= 2");
  if (n_max <= n_min) throw std::domain_error("exponent_estimate: n_max must exceed n_min");
  const std::vector<Block> blocks = partition(1, n_max + 1, workers);
  std::vector<std::vector<ExponentRecordPoint>> locals(blocks.size());
  {
    std::vector<std::thread> pool;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      pool.emplace_back([&, b] {
        std::vector<ExponentRecordPoint>& trail = locals[b];
        scan_stretches(spec, blocks[b].lo, blocks[b].hi,
                       [&trail, n_min](long long start, long long end, long long value) {
                         // lambda decreases along a constant stretch, so
                         // only its first qualifying n can set a record.
                         long long n = std::max(start, n_min);
                         if (n >= end) return;
                         long long mag = value < 0 ? -value : value;
                         if (mag < 2) return;
                         double lambda = std::log(double(mag)) / std::log(double(n));
                         if (trail.empty() || lambda > trail.back().lambda) {
                           trail.push_back({n, value, lambda});
                         }
                       });
      });
    }
    for (auto& t : pool) t.join();
  }
  ExponentEstimate est{spec, n_max, n_min, true, 0.0, 0, 0, {}};
  for (const auto& trail : locals) {
    for (const ExponentRecordPoint& pt : trail) {
      if (est.empty || pt.lambda > est.lambda_hat) {
        est.empty = false;
        est.lambda_hat = pt.lambda;
        est.argmax_n = pt.n;
        est.record_value = pt.value < 0 ? -pt.value : pt.value;
        est.records.push_back(pt);
      }
    }
  }
  return est;
}

std::vector<RatioScanRecord> ratio_scan(long m, long k, const Int& n_max, int checkpoints) {
  if (m < 1) throw std::domain_error("ratio_scan: modulus must be >= 1");
  if (std::gcd(m, 3L) != 1) {
    throw std::domain_error("ratio_scan: modulus must be coprime to 3");
  }
  if (k < 1) throw std::domain_error("ratio_scan: k must be >= 1");
  if (n_max < 1) throw std::domain_error("ratio_scan: n_max must be >= 1");
  const SumSpec spec_m(2, m, 0);
  const SumSpec spec_3k(2, 3 * k, 0);
  std::vector<RatioScanRecord> out;
  for (const Int& x : detail::geometric_checkpoints(n_max, checkpoints)) {
    Int s_m = newman_sum_fast(spec_m, x);
    Int s_3k = newman_sum_fast(spec_3k, x);
    Int mag_3k = abs(s_3k);
    if (mag_3k < 1) continue;
    RatioScanRecord rec;
    rec.m = m;
    rec.k = k;
    rec.n = x;
    rec.s_m = s_m;
    rec.s_3k = s_3k;
    Int denom = std::max(Int(1), mag_3k);
    rec.ratio = make_rational(abs(s_m), denom);
    rec.ratio_real = rec.ratio.get_d();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<GelfondRemainderRecord> gelfond_remainder(long m, const Int& n_max, int checkpoints) {
  if (m < 1) throw std::domain_error("gelfond_remainder: modulus must be >= 1");
  if (n_max < 0) throw std::domain_error("gelfond_remainder: n_max must be non-negative");
  std::vector<GelfondRemainderRecord> out;
  for (const Int& x : detail::geometric_checkpoints(n_max, checkpoints)) {
    GelfondCounts gc = gelfond_counts(m, x);
    Rat half_density = make_rational(x, Int(2 * m));
    GelfondRemainderRecord rec;
    rec.x = x;
    rec.g0 = gc.g0;
    rec.g1 = gc.g1;
    rec.rem0 = Rat(gc.g0) - half_density;
    rec.rem1 = Rat(gc.g1) - half_density;
    if (x >= 2) {
      const double log_x = log_of(x);
      if (rec.rem0 != 0) {
        rec.exp0 = log_of(Rat(abs(rec.rem0))) / log_x;
        rec.exp0_valid = true;
      }
      if (rec.rem1 != 0) {
        rec.exp1 = log_of(Rat(abs(rec.rem1))) / log_x;
        rec.exp1_valid = true;
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace newman

#include "newman/core.hpp"

#include <cmath>
#include <utility>

namespace newman {

Rat make_rational(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Int parse_extended_integer(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  auto parse_plain = [](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    for (char c : s) {
      if (c < '0' || c > '9') throw std::invalid_argument("malformed integer literal: " + s);
    }
    return Int(s, 10);
  };
  auto caret = text.find('^');
  if (caret == std::string::npos) return parse_plain(text);
  Int base = parse_plain(text.substr(0, caret));
  Int exp = parse_plain(text.substr(caret + 1));
  if (!exp.fits_ulong_p()) throw std::invalid_argument("exponent too large: " + text);
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
  return out;
}

double log_of(const Int& n) {
  if (n <= 0) throw std::domain_error("log_of: argument must be positive");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mant) + double(exp2) * std::log(2.0);
}

double log_of(const Rat& r) {
  if (r <= 0) throw std::domain_error("log_of: argument must be positive");
  return log_of(Int(r.get_num())) - log_of(Int(r.get_den()));
}

SumSpec::SumSpec(long radix, long modulus, long residue) : q(radix), m(modulus), l(residue) {
  if (q < 2) throw std::domain_error("SumSpec: radix must be >= 2");
  if (m < 1) throw std::domain_error("SumSpec: modulus must be >= 1");
  if (l < 0 || l >= m) throw std::domain_error("SumSpec: residue must satisfy 0 <= l < m");
  // Index arithmetic in the evaluators uses 64-bit products a * (q^i mod m).
  if (q > (1L << 20)) throw std::domain_error("SumSpec: radix above 2^20 not supported");
  if (m > (1L << 31)) throw std::domain_error("SumSpec: modulus above 2^31 not supported");
}

Interval::Interval(Int lo_, Int hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo < 0) throw std::domain_error("Interval: lo must be non-negative");
  if (lo > hi) throw std::domain_error("Interval: lo must not exceed hi");
}

long digit_sum(unsigned long n, long q) {
  if (q < 2) throw std::domain_error("digit_sum: radix must be >= 2");
  const auto base = static_cast<unsigned long>(q);
  long s = 0;
  while (n > 0) {
    s += long(n % base);
    n /= base;
  }
  return s;
}

long digit_sum(const Int& n, long q) {
  if (q < 2) throw std::domain_error("digit_sum: radix must be >= 2");
  if (n < 0) throw std::domain_error("digit_sum: n must be non-negative");
  if (n.fits_ulong_p()) return digit_sum(n.get_ui(), q);
  Int rest = n;
  long s = 0;
  while (rest > 0) {
    s += long(mpz_tdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(q)));
  }
  return s;
}

int sign_of(unsigned long n, long q) { return digit_sum(n, q) % 2 == 0 ? +1 : -1; }

int sign_of(const Int& n, long q) { return digit_sum(n, q) % 2 == 0 ? +1 : -1; }

Int newman_sum_naive(const SumSpec& spec, const Int& x) {
  if (x < 0) throw std::domain_error("newman_sum_naive: x must be non-negative");
  if (!x.fits_ulong_p()) throw std::domain_error("newman_sum_naive: x too large to enumerate");
  const unsigned long bound = x.get_ui();
  const auto step = static_cast<unsigned long>(spec.m);
  long long acc = 0;
  for (unsigned long n = static_cast<unsigned long>(spec.l); n < bound;) {
    acc += sign_of(n, spec.q);
    if (bound - n <= step) break;
    n += step;
  }
  return Int(static_cast<long>(acc));
}

Int newman_sum_interval_naive(const SumSpec& spec, const Interval& iv) {
  return newman_sum_naive(spec, iv.hi) - newman_sum_naive(spec, iv.lo);
}

Int residue_class_count(long m, const Int& x) {
  if (m < 1) throw std::domain_error("residue_class_count: modulus must be >= 1");
  if (x < 0) throw std::domain_error("residue_class_count: x must be non-negative");
  if (x == 0) return 0;
  Int count = (x - 1) / m;
  return count + 1;
}

GelfondCounts gelfond_counts_naive(long m, const Int& x) {
  if (m < 1) throw std::domain_error("gelfond_counts_naive: modulus must be >= 1");
  if (x < 0) throw std::domain_error("gelfond_counts_naive: x must be non-negative");
  if (!x.fits_ulong_p()) throw std::domain_error("gelfond_counts_naive: x too large to enumerate");
  const unsigned long bound = x.get_ui();
  const auto step = static_cast<unsigned long>(m);
  GelfondCounts out{0, 0};
  for (unsigned long n = 0; n < bound;) {
    if (digit_sum(n, 2) % 2 == 0) {
      out.g0 += 1;
    } else {
      out.g1 += 1;
    }
    if (bound - n <= step) break;
    n += step;
  }
  return out;
}

}  // namespace newman

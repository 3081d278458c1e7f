#include "newman/transfer.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

namespace newman {

namespace {

long mod_reduce(long long v, long m) {
  long long r = v % m;
  if (r < 0) r += m;
  return long(r);
}

// W_{i+1} from W_i, where pow_i = q^i mod m.
std::vector<Int> next_level(const std::vector<Int>& prev, long q, long m, long pow_i) {
  std::vector<Int> next(std::size_t(m), Int(0));
  for (long t = 0; t < m; ++t) {
    Int acc = 0;
    for (long a = 0; a < q; ++a) {
      long idx = mod_reduce((long long)t - (long long)a * pow_i, m);
      if (a % 2 == 0) {
        acc += prev[std::size_t(idx)];
      } else {
        acc -= prev[std::size_t(idx)];
      }
    }
    next[std::size_t(t)] = std::move(acc);
  }
  return next;
}

struct PrefixData {
  std::vector<long> pow_mod;   // q^i mod m
  std::vector<long> hi_val;    // value of digits above position i, mod m
  std::vector<char> hi_odd;    // parity of the digit sum above position i
};

PrefixData prefix_data(const std::vector<long>& digits, long q, long m) {
  const std::size_t len = digits.size();
  PrefixData pd;
  pd.pow_mod.resize(len);
  pd.hi_val.resize(len);
  pd.hi_odd.resize(len);
  long p = mod_reduce(1, m);
  for (std::size_t i = 0; i < len; ++i) {
    pd.pow_mod[i] = p;
    p = mod_reduce((long long)p * q, m);
  }
  pd.hi_val[len - 1] = 0;
  pd.hi_odd[len - 1] = 0;
  for (std::size_t i = len - 1; i > 0; --i) {
    pd.hi_val[i - 1] =
        mod_reduce((long long)pd.hi_val[i] + (long long)digits[i] * pd.pow_mod[i], m);
    pd.hi_odd[i - 1] = char(pd.hi_odd[i] ^ (digits[i] & 1));
  }
  return pd;
}

}  // namespace

WeightTables::WeightTables(long radix, long modulus) : q(radix), m(modulus) {
  if (q < 2) throw std::domain_error("WeightTables: radix must be >= 2");
  if (m < 1) throw std::domain_error("WeightTables: modulus must be >= 1");
  std::vector<Int> w0(std::size_t(m), Int(0));
  w0[0] = 1;  // only n = 0 lies in [0, q^0)
  levels.push_back(std::move(w0));
  pow_mod.push_back(mod_reduce(1, m));
}

void WeightTables::extend_to(std::size_t level) {
  while (levels.size() <= level) {
    const std::size_t i = levels.size() - 1;
    levels.push_back(next_level(levels[i], q, m, pow_mod[i]));
    pow_mod.push_back(mod_reduce((long long)pow_mod[i] * q, m));
  }
}

WeightTables build_weight_tables(long q, long m, std::size_t level_count) {
  WeightTables tables(q, m);
  tables.extend_to(level_count);
  return tables;
}

TransferMatrix transfer_matrix(long q, long m) {
  if (q < 2) throw std::domain_error("transfer_matrix: radix must be >= 2");
  if (m < 1) throw std::domain_error("transfer_matrix: modulus must be >= 1");
  if (std::gcd(q, m) != 1) {
    throw NonCoprimeError(
        "transfer_matrix: gcd(q, m) = " + std::to_string(std::gcd(q, m)) +
        "; the matrix needs q invertible mod m. Collapse the modulus with "
        "even_modulus_reduce (base 2) or evaluate via the digit DP, which "
        "has no coprimality requirement.");
  }
  // q^{-1} mod m by extended Euclid.
  long inv = 0;
  {
    long t = 0, new_t = 1;
    long r = m, new_r = mod_reduce(q, m);
    while (new_r != 0) {
      long quot = r / new_r;
      t = std::exchange(new_t, t - quot * new_t);
      r = std::exchange(new_r, r - quot * new_r);
    }
    inv = mod_reduce(t, m);
  }
  TransferMatrix B;
  B.q = q;
  B.m = m;
  B.entries.assign(std::size_t(m) * std::size_t(m), Int(0));
  for (long l = 0; l < m; ++l) {
    for (long a = 0; a < q; ++a) {
      long c = mod_reduce(((long long)l - a) % m * inv, m);
      if (a % 2 == 0) {
        B.at(l, c) += 1;
      } else {
        B.at(l, c) -= 1;
      }
    }
  }
  return B;
}

EvenReduction even_modulus_reduce(long m, long l) {
  if (m < 1 || m % 2 != 0) throw std::domain_error("even_modulus_reduce: modulus must be even");
  if (l < 0 || l >= m) throw std::domain_error("even_modulus_reduce: residue out of range");
  if (l % 2 == 0) return {m / 2, l / 2, +1};
  return {m / 2, (l - 1) / 2, -1};
}

namespace detail {

std::vector<long> digits_lsb_first(const Int& x, long q) {
  if (x < 0) throw std::domain_error("digits_lsb_first: x must be non-negative");
  std::vector<long> digits;
  if (x == 0) return digits;
  if (q <= 36) {
    // get_str uses 0-9 then lowercase letters for bases up to 36.
    std::string s = x.get_str(int(q));
    digits.reserve(s.size());
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
      char c = *it;
      digits.push_back(c <= '9' ? c - '0' : c - 'a' + 10);
    }
    return digits;
  }
  Int rest = x;
  while (rest > 0) {
    digits.push_back(
        long(mpz_tdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), static_cast<unsigned long>(q))));
  }
  return digits;
}

std::shared_ptr<const WeightTables> cached_tables(long q, long m, std::size_t max_level) {
  static std::mutex mu;
  static std::map<std::pair<long, long>, std::shared_ptr<const WeightTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(q, m);
  auto it = cache.find(key);
  if (it != cache.end() && it->second->levels.size() > max_level) return it->second;
  auto grown = it != cache.end() ? std::make_shared<WeightTables>(*it->second)
                                 : std::make_shared<WeightTables>(q, m);
  grown->extend_to(max_level);
  cache[key] = grown;
  return grown;
}

Int eval_single(const SumSpec& spec, const std::vector<long>& digits, const WeightTables* tables) {
  if (digits.empty()) return 0;
  const long q = spec.q, m = spec.m, l = spec.l;
  const PrefixData pd = prefix_data(digits, q, m);
  Int acc = 0;
  std::vector<Int> stream;
  if (tables == nullptr) {
    stream.assign(std::size_t(m), Int(0));
    stream[0] = 1;
  }
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const std::vector<Int>& w = tables ? tables->levels[i] : stream;
    for (long a = 0; a < digits[i]; ++a) {
      long idx = mod_reduce((long long)l - pd.hi_val[i] - (long long)a * pd.pow_mod[i], m);
      if (pd.hi_odd[i] ^ (a & 1)) {
        acc -= w[std::size_t(idx)];
      } else {
        acc += w[std::size_t(idx)];
      }
    }
    if (tables == nullptr && i + 1 < digits.size()) {
      stream = next_level(stream, q, m, pd.pow_mod[i]);
    }
  }
  return acc;
}

std::vector<Int> eval_vector(long q, long m, const std::vector<long>& digits,
                             const WeightTables* tables) {
  std::vector<Int> acc(std::size_t(m), Int(0));
  if (digits.empty()) return acc;
  const PrefixData pd = prefix_data(digits, q, m);
  std::vector<Int> stream;
  if (tables == nullptr) {
    stream.assign(std::size_t(m), Int(0));
    stream[0] = 1;
  }
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const std::vector<Int>& w = tables ? tables->levels[i] : stream;
    for (long a = 0; a < digits[i]; ++a) {
      // acc[l] += sign * W_i[(l - off) mod m] for every l at once.
      long off = mod_reduce((long long)pd.hi_val[i] + (long long)a * pd.pow_mod[i], m);
      bool negate = pd.hi_odd[i] ^ (a & 1);
      for (long t = 0; t < m; ++t) {
        long dst = t + off;
        if (dst >= m) dst -= m;
        if (negate) {
          acc[std::size_t(dst)] -= w[std::size_t(t)];
        } else {
          acc[std::size_t(dst)] += w[std::size_t(t)];
        }
      }
    }
    if (tables == nullptr && i + 1 < digits.size()) {
      stream = next_level(stream, q, m, pd.pow_mod[i]);
    }
  }
  return acc;
}

}  // namespace detail

Int newman_sum_fast(const SumSpec& spec, const Int& x) {
  if (x < 0) throw std::domain_error("newman_sum_fast: x must be non-negative");
  const std::vector<long> digits = detail::digits_lsb_first(x, spec.q);
  if (digits.empty()) return 0;
  if (digits.size() - 1 <= detail::kMaxCachedLevel) {
    auto tables = detail::cached_tables(spec.q, spec.m, digits.size() - 1);
    return detail::eval_single(spec, digits, tables.get());
  }
  return detail::eval_single(spec, digits, nullptr);
}

Int newman_sum_interval_fast(const SumSpec& spec, const Interval& iv) {
  return newman_sum_fast(spec, iv.hi) - newman_sum_fast(spec, iv.lo);
}

std::vector<Int> vector_sums(long q, long m, const Int& x) {
  SumSpec check(q, m, 0);  // validates q, m
  (void)check;
  if (x < 0) throw std::domain_error("vector_sums: x must be non-negative");
  const std::vector<long> digits = detail::digits_lsb_first(x, q);
  if (digits.empty()) return std::vector<Int>(std::size_t(m), Int(0));
  if (digits.size() - 1 <= detail::kMaxCachedLevel) {
    auto tables = detail::cached_tables(q, m, digits.size() - 1);
    return detail::eval_vector(q, m, digits, tables.get());
  }
  return detail::eval_vector(q, m, digits, nullptr);
}

GelfondCounts gelfond_counts(long m, const Int& x) {
  Int count = residue_class_count(m, x);
  Int s = newman_sum_fast(SumSpec(2, m, 0), x);
  Int twice_g0 = count + s;
  if (mpz_odd_p(twice_g0.get_mpz_t())) {
    throw std::logic_error("gelfond_counts: parity invariant violated");
  }
  Int g0 = twice_g0 / 2;
  return GelfondCounts{g0, count - g0};
}

}  // namespace newman

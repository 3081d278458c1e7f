#include "newman/relations.hpp"

#include <algorithm>
#include <map>

#include "newman/rng.hpp"

namespace newman {

namespace {

Int content_gcd(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& c : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  return g;
}

// Clears denominators and canonicalizes.
IntPolynomial rational_to_primitive(const std::vector<Rat>& v) {
  Int lcm = 1;
  for (const Rat& r : v) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
  }
  std::vector<Int> out;
  out.reserve(v.size());
  for (const Rat& r : v) {
    Int scale;
    mpz_divexact(scale.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
    out.push_back(Int(r.get_num()) * scale);
  }
  return IntPolynomial(std::move(out));
}

std::vector<Int> mat_mul(const std::vector<Int>& a, const std::vector<Int>& b, long n) {
  std::vector<Int> c(std::size_t(n) * std::size_t(n), Int(0));
  for (long i = 0; i < n; ++i) {
    for (long k = 0; k < n; ++k) {
      const Int& aik = a[std::size_t(i) * std::size_t(n) + std::size_t(k)];
      if (aik == 0) continue;
      for (long j = 0; j < n; ++j) {
        c[std::size_t(i) * std::size_t(n) + std::size_t(j)] +=
            aik * b[std::size_t(k) * std::size_t(n) + std::size_t(j)];
      }
    }
  }
  return c;
}

std::vector<Int> row_times_mat(const std::vector<Int>& w, const std::vector<Int>& m, long n) {
  std::vector<Int> out(std::size_t(n), Int(0));
  for (long i = 0; i < n; ++i) {
    if (w[std::size_t(i)] == 0) continue;
    for (long j = 0; j < n; ++j) {
      out[std::size_t(j)] += w[std::size_t(i)] * m[std::size_t(i) * std::size_t(n) + std::size_t(j)];
    }
  }
  return out;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<Int> c) : coeffs(std::move(c)) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) return;
  Int g = content_gcd(coeffs);
  if (coeffs.back() < 0) g = -g;
  if (g != 1) {
    for (Int& x : coeffs) {
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
  }
}

IntPolynomial::IntPolynomial(std::initializer_list<long> c) {
  std::vector<Int> v;
  v.reserve(c.size());
  for (long x : c) v.emplace_back(x);
  *this = IntPolynomial(std::move(v));
}

std::string IntPolynomial::pretty() const {
  if (coeffs.empty()) return "0";
  std::string out;
  for (long k = degree(); k >= 0; --k) {
    const Int& c = coeffs[std::size_t(k)];
    if (c == 0) continue;
    Int mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || k == 0) out += mag.get_str();
    if (k >= 1) {
      out += "x";
      if (k >= 2) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::vector<std::string> IntPolynomial::coeff_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs.size());
  for (const Int& c : coeffs) out.push_back(to_decimal(c));
  return out;
}

bool poly_divides(const IntPolynomial& p, const IntPolynomial& r) {
  if (p.is_zero()) throw std::domain_error("poly_divides: zero divisor");
  if (r.is_zero()) return true;
  if (r.degree() < p.degree()) return false;
  std::vector<Rat> rem(r.coeffs.begin(), r.coeffs.end());
  const long dp = p.degree();
  const Rat lead = Rat(p.coeffs[std::size_t(dp)]);
  for (long k = r.degree(); k >= dp; --k) {
    Rat factor = rem[std::size_t(k)] / lead;
    if (factor == 0) continue;
    for (long j = 0; j <= dp; ++j) {
      rem[std::size_t(k - dp + j)] -= factor * Rat(p.coeffs[std::size_t(j)]);
    }
  }
  for (long k = 0; k < dp; ++k) {
    if (rem[std::size_t(k)] != 0) return false;
  }
  return true;
}

IntPolynomial char_poly(const TransferMatrix& B) {
  const long n = B.m;
  // Samuelson-Berkowitz: extend det(xI - A) across leading principal
  // blocks through lower-triangular Toeplitz products. Division-free.
  std::vector<Int> p{Int(1), -B.at(0, 0)};  // highest degree first
  for (long i = 1; i < n; ++i) {
    // Toeplitz column t[0] = 1, t[1] = -A[i][i], t[2+j] = -(R A^j S)
    // with R = A[i][0..i), S = A[0..i)[i], A the leading i x i block.
    std::vector<Int> t(std::size_t(i) + 2);
    t[0] = 1;
    t[1] = -B.at(i, i);
    std::vector<Int> w(std::size_t(i), Int(0));
    for (long r = 0; r < i; ++r) w[std::size_t(r)] = B.at(r, i);
    for (long j = 0; j <= i - 1; ++j) {
      Int dot = 0;
      for (long c = 0; c < i; ++c) dot += B.at(i, c) * w[std::size_t(c)];
      t[std::size_t(2 + j)] = -dot;
      if (j + 1 <= i - 1) {
        std::vector<Int> nw(std::size_t(i), Int(0));
        for (long r = 0; r < i; ++r) {
          Int acc = 0;
          for (long c = 0; c < i; ++c) acc += B.at(r, c) * w[std::size_t(c)];
          nw[std::size_t(r)] = std::move(acc);
        }
        w = std::move(nw);
      }
    }
    std::vector<Int> np(std::size_t(i) + 2);
    for (long k = 0; k < long(np.size()); ++k) {
      Int acc = 0;
      const long lo = std::max(0L, k - (long(t.size()) - 1));
      const long hi = std::min(k, long(p.size()) - 1);
      for (long c = lo; c <= hi; ++c) {
        acc += t[std::size_t(k - c)] * p[std::size_t(c)];
      }
      np[std::size_t(k)] = std::move(acc);
    }
    p = std::move(np);
  }
  std::reverse(p.begin(), p.end());
  return IntPolynomial(std::move(p));
}

IntPolynomial minimal_annihilator(long q, long m, long l, long power) {
  if (power < 1) throw std::domain_error("minimal_annihilator: power must be >= 1");
  if (l < 0 || l >= m) throw std::domain_error("minimal_annihilator: residue out of range");
  TransferMatrix B = transfer_matrix(q, m);
  std::vector<Int> M = B.entries;
  for (long e = 1; e < power; ++e) M = mat_mul(M, B.entries, m);

  // Krylov rows w_j = e_l^T M^j, forward-eliminated with combination
  // bookkeeping; the first dependency yields the minimal polynomial.
  struct BasisRow {
    std::vector<Rat> vec;   // leading entry (at pivot) normalized to 1
    std::vector<Rat> comb;  // expression of vec in terms of w_0..w_j
  };
  std::map<long, BasisRow> by_pivot;
  std::vector<Int> w(std::size_t(m), Int(0));
  w[std::size_t(l)] = 1;
  for (long j = 0;; ++j) {
    std::vector<Rat> vec(w.begin(), w.end());
    std::vector<Rat> comb(std::size_t(j) + 1, Rat(0));
    comb[std::size_t(j)] = 1;
    long pivot = -1;
    for (long c = 0; c < m; ++c) {
      if (vec[std::size_t(c)] == 0) continue;
      auto it = by_pivot.find(c);
      if (it == by_pivot.end()) {
        pivot = c;
        break;
      }
      Rat factor = vec[std::size_t(c)];
      const BasisRow& row = it->second;
      for (long cc = c; cc < m; ++cc) vec[std::size_t(cc)] -= factor * row.vec[std::size_t(cc)];
      for (std::size_t cc = 0; cc < row.comb.size(); ++cc) comb[cc] -= factor * row.comb[cc];
    }
    if (pivot < 0) return rational_to_primitive(comb);
    Rat inv = vec[std::size_t(pivot)];
    for (auto& x : vec) x /= inv;
    for (auto& x : comb) x /= inv;
    by_pivot.emplace(pivot, BasisRow{std::move(vec), std::move(comb)});
    w = row_times_mat(w, M, m);
  }
}

RelationSpec::RelationSpec(SumSpec s, long step_, long divisibility_, IntPolynomial coeffs)
    : spec(s), step(step_), divisibility(divisibility_), coefficients(std::move(coeffs)) {
  if (step < 2) throw std::domain_error("RelationSpec: step must be >= 2");
  if (divisibility < 1) throw std::domain_error("RelationSpec: divisibility must be >= 1");
  // A zero polynomial is tolerated only so failed-discovery reports can
  // carry it; verify_relation rejects it.
}

nlohmann::json RelationSpec::to_json() const {
  return nlohmann::json{
      {"q", spec.q},
      {"m", spec.m},
      {"l", spec.l},
      {"step", step},
      {"divisibility", divisibility},
      {"coefficients", coefficients.coeff_strings()},
  };
}

RelationSpec RelationSpec::from_json(const nlohmann::json& j) {
  SumSpec spec(j.at("q").get<long>(), j.at("m").get<long>(), j.at("l").get<long>());
  std::vector<Int> coeffs;
  for (const auto& s : j.at("coefficients")) {
    coeffs.emplace_back(s.get<std::string>(), 10);
  }
  return RelationSpec(spec, j.at("step").get<long>(), j.at("divisibility").get<long>(),
                      IntPolynomial(std::move(coeffs)));
}

std::string to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::verified:
      return "verified";
    case RelationStatus::refuted:
      return "refuted";
    case RelationStatus::discovered:
      return "discovered";
  }
  return "unknown";
}

nlohmann::json RecurrenceReport::to_json() const {
  nlohmann::json j = relation.to_json();
  j["status"] = to_string(status);
  j["samples_checked"] = samples_checked;
  if (counterexample) {
    j["counterexample"] = {{"u", to_decimal(counterexample->first)},
                           {"v", to_decimal(counterexample->second)}};
  }
  j["subspace_rank"] = subspace_rank;
  return j;
}

namespace {

// sum_j c_j S(spec, [step^j u, step^j v)), exact.
Int relation_value(const RelationSpec& rel, const Int& u, const Int& v) {
  Int acc = 0;
  Int lo = u, hi = v;
  for (long j = 0; j <= rel.coefficients.degree(); ++j) {
    const Int& c = rel.coefficients.coeffs[std::size_t(j)];
    if (c != 0) {
      acc += c * (newman_sum_fast(rel.spec, hi) - newman_sum_fast(rel.spec, lo));
    }
    lo *= rel.step;
    hi *= rel.step;
  }
  return acc;
}

std::pair<long, long> draw_interval(Lcg64& rng, long bound, long d, SampleMode mode) {
  if (mode == SampleMode::prefixes) {
    const long nv = bound / d;
    long v = d * long(1 + rng.below(std::uint64_t(nv)));
    return {0, v};
  }
  // Both endpoints are multiples of d with u < v <= bound.
  const long nu = bound / d;
  long u = d * long(rng.below(std::uint64_t(nu)));
  const long nv = (bound - u) / d;
  long v = u + d * long(1 + rng.below(std::uint64_t(nv)));
  return {u, v};
}

void check_sample_space(long bound, long divisibility) {
  if (bound < 1 || bound < divisibility) {
    throw std::invalid_argument("bound admits no start interval with the required divisibility");
  }
}

// s_k = S(spec, [step^k u, step^k v)) for k = 0..len-1.
std::vector<Int> scaled_sequence(const SumSpec& spec, long step, const Int& u, const Int& v,
                                 long len) {
  std::vector<Int> s;
  s.reserve(std::size_t(len));
  Int lo = u, hi = v;
  for (long k = 0; k < len; ++k) {
    s.push_back(newman_sum_fast(spec, hi) - newman_sum_fast(spec, lo));
    lo *= step;
    hi *= step;
  }
  return s;
}

// Exact rank of a growing set of rational rows.
class RankTracker {
 public:
  // Returns true if the vector enlarged the span.
  bool insert(std::vector<Rat> vec) {
    for (long c = 0; c < long(vec.size()); ++c) {
      if (vec[std::size_t(c)] == 0) continue;
      auto it = pivot_rows_.find(c);
      if (it == pivot_rows_.end()) {
        Rat inv = vec[std::size_t(c)];
        for (auto& x : vec) x /= inv;
        pivot_rows_.emplace(c, std::move(vec));
        return true;
      }
      Rat factor = vec[std::size_t(c)];
      const std::vector<Rat>& row = it->second;
      for (std::size_t j = std::size_t(c); j < vec.size(); ++j) vec[j] -= factor * row[j];
    }
    return false;
  }
  long rank() const { return long(pivot_rows_.size()); }

 private:
  std::map<long, std::vector<Rat>> pivot_rows_;
};

// Nullspace basis via Gauss-Jordan, one vector per free column.
std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> rows, long ncols) {
  long rank = 0;
  std::vector<long> pivot_col;
  for (long c = 0; c < ncols && rank < long(rows.size()); ++c) {
    long pr = -1;
    for (long r = rank; r < long(rows.size()); ++r) {
      if (rows[std::size_t(r)][std::size_t(c)] != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(rows[std::size_t(rank)], rows[std::size_t(pr)]);
    Rat inv = rows[std::size_t(rank)][std::size_t(c)];
    for (long j = c; j < ncols; ++j) rows[std::size_t(rank)][std::size_t(j)] /= inv;
    for (long r = 0; r < long(rows.size()); ++r) {
      if (r == rank) continue;
      Rat f = rows[std::size_t(r)][std::size_t(c)];
      if (f == 0) continue;
      for (long j = c; j < ncols; ++j) {
        rows[std::size_t(r)][std::size_t(j)] -= f * rows[std::size_t(rank)][std::size_t(j)];
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(std::size_t(ncols), false);
  for (long c : pivot_col) is_pivot[std::size_t(c)] = true;
  std::vector<std::vector<Rat>> basis;
  for (long f = 0; f < ncols; ++f) {
    if (is_pivot[std::size_t(f)]) continue;
    std::vector<Rat> v(std::size_t(ncols), Rat(0));
    v[std::size_t(f)] = 1;
    for (long r = 0; r < rank; ++r) {
      v[std::size_t(pivot_col[std::size_t(r)])] = -rows[std::size_t(r)][std::size_t(f)];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

RecurrenceReport verify_relation(const RelationSpec& rel, long sample_count, long bound,
                                 std::uint64_t seed, SampleMode mode) {
  if (rel.coefficients.is_zero()) {
    throw std::invalid_argument("verify_relation: relation has no coefficients");
  }
  if (sample_count < 1) throw std::invalid_argument("verify_relation: sample_count must be >= 1");
  check_sample_space(bound, rel.divisibility);
  Lcg64 rng(seed);
  RecurrenceReport report{rel, RelationStatus::verified, 0, std::nullopt, 0};
  for (long i = 0; i < sample_count; ++i) {
    auto [u, v] = draw_interval(rng, bound, rel.divisibility, mode);
    report.samples_checked = i + 1;
    if (relation_value(rel, Int(u), Int(v)) != 0) {
      report.status = RelationStatus::refuted;
      report.counterexample = std::make_pair(Int(u), Int(v));
      return report;
    }
  }
  return report;
}

RecurrenceReport discover_recurrence(const SumSpec& spec, long step, long divisibility,
                                     long max_degree, long sample_budget, std::uint64_t seed,
                                     long bound) {
  if (step < 2) throw std::invalid_argument("discover_recurrence: step must be >= 2");
  if (divisibility < 1) throw std::invalid_argument("discover_recurrence: divisibility must be >= 1");
  if (max_degree < 1) throw std::invalid_argument("discover_recurrence: max_degree must be >= 1");
  if (sample_budget < 1) throw std::invalid_argument("discover_recurrence: sample_budget must be >= 1");
  check_sample_space(bound, divisibility);

  const long seq_len = 2 * max_degree + 1;
  Lcg64 rng(seed);

  std::vector<std::pair<long, long>> starts;
  std::vector<std::vector<Int>> seqs;
  RankTracker tracker;
  long stale = 0;
  while (long(starts.size()) < sample_budget) {
    auto [u, v] = draw_interval(rng, bound, divisibility, SampleMode::intervals);
    std::vector<Int> s = scaled_sequence(spec, step, Int(u), Int(v), seq_len);
    starts.emplace_back(u, v);
    if (tracker.insert(std::vector<Rat>(s.begin(), s.end()))) {
      stale = 0;
    } else {
      ++stale;
    }
    seqs.push_back(std::move(s));
    if (stale >= 8) break;  // rank saturation stopping rule
  }

  IntPolynomial found;
  for (long d = 1; d <= max_degree && found.is_zero(); ++d) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& s : seqs) {
      for (long k = 0; k + d < seq_len; ++k) {
        std::vector<Rat> row;
        row.reserve(std::size_t(d) + 1);
        for (long j = 0; j <= d; ++j) row.emplace_back(s[std::size_t(k + j)]);
        rows.push_back(std::move(row));
      }
    }
    IntPolynomial best;
    for (auto& vec : nullspace(std::move(rows), d + 1)) {
      IntPolynomial cand = rational_to_primitive(vec);
      if (cand.is_zero()) continue;
      if (best.is_zero() || cand.degree() < best.degree() ||
          (cand.degree() == best.degree() &&
           std::lexicographical_compare(cand.coeffs.begin(), cand.coeffs.end(),
                                        best.coeffs.begin(), best.coeffs.end()))) {
        best = std::move(cand);
      }
    }
    found = std::move(best);
  }

  RecurrenceReport report{RelationSpec(spec, step, divisibility, found),
                          RelationStatus::refuted, long(starts.size()), std::nullopt,
                          tracker.rank()};
  if (found.is_zero()) {
    // No common annihilator within the degree budget; surface a witness
    // start interval so the report stays self-describing.
    report.counterexample = std::make_pair(Int(starts.front().first), Int(starts.front().second));
    return report;
  }

  constexpr long kValidationSamples = 50;
  for (long i = 0; i < kValidationSamples; ++i) {
    auto [u, v] = draw_interval(rng, bound, divisibility, SampleMode::intervals);
    std::vector<Int> s = scaled_sequence(spec, step, Int(u), Int(v), seq_len);
    for (long k = 0; k + found.degree() < seq_len; ++k) {
      Int acc = 0;
      for (long j = 0; j <= found.degree(); ++j) {
        acc += found.coeffs[std::size_t(j)] * s[std::size_t(k + j)];
      }
      if (acc != 0) {
        report.samples_checked = long(starts.size()) + i + 1;
        report.counterexample = std::make_pair(Int(u), Int(v));
        return report;
      }
    }
  }
  report.status = RelationStatus::discovered;
  report.samples_checked = long(starts.size()) + kValidationSamples;
  return report;
}

}  // namespace newman

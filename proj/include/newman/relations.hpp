#pragma once
// Exact machinery for interval recurrences of Newman sums:
//
//   sum_j c_j * S(spec, [step^j u, step^j v)) = 0
//
// Relations are verified against seeded interval samples, discovered
// from the exact rational nullspace of stacked Hankel systems, or
// derived from the transfer matrix by Krylov elimination. All linear
// algebra here is exact (big rationals); floating point is forbidden in
// this module, since one rounding error fabricates or destroys a
// relation.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "newman/core.hpp"
#include "newman/transfer.hpp"

namespace newman {

// Primitive integer polynomial: coefficients lowest degree first, gcd
// of coefficients 1, positive leading coefficient. The zero polynomial
// is the empty sequence. Construction canonicalizes.
struct IntPolynomial {
  std::vector<Int> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> c);
  IntPolynomial(std::initializer_list<long> c);

  long degree() const { return long(coeffs.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs.empty(); }

  // Human-readable form, highest degree first, e.g. "x^3 - 3x".
  std::string pretty() const;
  // Decimal strings, lowest degree first.
  std::vector<std::string> coeff_strings() const;

  bool operator==(const IntPolynomial&) const = default;
};

// True iff p divides r over the rationals. p must be nonzero.
bool poly_divides(const IntPolynomial& p, const IntPolynomial& r);

// det(xI - B), computed exactly (division-free Samuelson-Berkowitz).
// Monic of degree m, which is already primitive.
IntPolynomial char_poly(const TransferMatrix& B);

// Minimal-degree primitive P with e_l^T P(M) = 0 where M = B^power and
// B = transfer_matrix(q, m), by exact Krylov elimination on the row
// functional e_l. The vanishing identity is itself a proof that
// sum_j P_j S_{m,l,q}(q^{power*j} x) = 0 for every x, so the induced
// interval relation carries no divisibility constraint.
IntPolynomial minimal_annihilator(long q, long m, long l, long power);

// A candidate recurrence sum_j coeffs[j] * S(spec, [step^j u, step^j v)) = 0,
// asserted for start intervals whose endpoints are both multiples of
// `divisibility` (1 = unconstrained). The constraint must cover both
// endpoints: S_{5,0,4}([256u, 256v)) - 10 S_{5,0,4}([16u, 16v)) +
// 5 S_{5,0,4}([u, v)) evaluates to 1, not 0, at (u, v) = (32, 33), so a
// left-endpoint-only reading is refutable by direct enumeration.
struct RelationSpec {
  SumSpec spec;
  long step;
  long divisibility;
  IntPolynomial coefficients;

  RelationSpec(SumSpec s, long step_, long divisibility_, IntPolynomial coeffs);

  nlohmann::json to_json() const;
  static RelationSpec from_json(const nlohmann::json& j);
};

enum class RelationStatus { verified, refuted, discovered };
std::string to_string(RelationStatus s);

// A verified/refuted/discovered relation plus its evidence. Serializes
// to the documented JSON shape {q, m, l, step, divisibility,
// coefficients, status, samples_checked, counterexample?, subspace_rank}.
struct RecurrenceReport {
  RelationSpec relation;
  RelationStatus status;
  long samples_checked = 0;
  std::optional<std::pair<Int, Int>> counterexample;  // refuted only
  long subspace_rank = 0;                             // discovery only

  nlohmann::json to_json() const;
};

// How test intervals are drawn: pairs [u, v) with u < v <= bound and
// both endpoints multiples of the divisibility, or prefixes [0, v) with
// divisibility | v. Prefix mode exists for relations stated on prefixes
// S(x) rather than on two-endpoint intervals.
enum class SampleMode { intervals, prefixes };

// Evaluates the relation exactly on sample_count seeded intervals.
// Returns verified, or refuted with the first counterexample.
RecurrenceReport verify_relation(const RelationSpec& rel, long sample_count, long bound,
                                 std::uint64_t seed, SampleMode mode = SampleMode::intervals);

// Automatic relation discovery. Samples start intervals (stopping early
// once the spanned sequence space has stable rank), solves the stacked
// Hankel nullspace exactly for the minimal-degree common annihilator,
// and cross-validates it on 50 fresh out-of-sample intervals before
// reporting status = discovered. When no annihilator of degree
// <= max_degree exists the report is refuted with empty coefficients.
RecurrenceReport discover_recurrence(const SumSpec& spec, long step, long divisibility,
                                     long max_degree, long sample_budget, std::uint64_t seed,
                                     long bound = 10000);

}  // namespace newman

// newman — exact generalized Newman digit sums, interval-recurrence
// verification and discovery, and conjecture scans.
//
// Data goes to stdout (or --out), diagnostics to stderr. Every CSV/JSON
// artifact begins with a reproducibility header (version, argument
// vector, seed). Exit codes: 0 ok/verified, 1 usage or malformed input,
// 2 relation refuted, 3 conjecture-relevant finding.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "newman/conjectures.hpp"
#include "newman/core.hpp"
#include "newman/relations.hpp"
#include "newman/transfer.hpp"
#include "newman/version.hpp"

namespace {

using namespace newman;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitFinding = 3;

struct RunConfig {
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 1;
  int workers = 1;
  std::string args;  // reproducibility header payload
};

// Argument vector as typed, minus --out/--workers (and their values):
// the output path names the artifact, and results are required to be
// identical for every worker count.
std::string repro_args(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    std::string tok = argv[i];
    auto is_filtered = [](const std::string& t) {
      return t == "--out" || t == "--workers" || t.rfind("--out=", 0) == 0 ||
             t.rfind("--workers=", 0) == 0;
    };
    if (is_filtered(tok)) {
      if ((tok == "--out" || tok == "--workers") && i + 1 < argc) ++i;
      continue;
    }
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

void write_text(const RunConfig& cfg, const std::string& body) {
  if (cfg.out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.out_path);
  f << body;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

json meta_json(const RunConfig& cfg) {
  return json{{"version", kVersion}, {"args", cfg.args}, {"seed", cfg.seed}};
}

// Scan table in the configured format. Rows are already strings.
std::string render_table(const RunConfig& cfg, const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  if (cfg.format == "json") {
    json out;
    out["meta"] = meta_json(cfg);
    json arr = json::array();
    for (const auto& row : rows) {
      json obj;
      for (std::size_t c = 0; c < header.size(); ++c) obj[header[c]] = row[c];
      arr.push_back(std::move(obj));
    }
    out["rows"] = std::move(arr);
    return out.dump(2) + "\n";
  }
  std::string out = "# " + std::string(kVersion) + " | args: " + cfg.args +
                    " | seed: " + std::to_string(cfg.seed) + "\n";
  out += join(header, ",") + "\n";
  for (const auto& row : rows) out += join(row, ",") + "\n";
  return out;
}

std::string render_report(const RunConfig& cfg, const RecurrenceReport& report) {
  json j = report.to_json();
  j["meta"] = meta_json(cfg);
  return j.dump(2) + "\n";
}

IntPolynomial parse_poly(const std::string& csv) {
  std::vector<Int> coeffs;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw std::invalid_argument("empty polynomial coefficient");
    coeffs.emplace_back(cur, 10);
    cur.clear();
  };
  for (char ch : csv) {
    if (ch == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  flush();
  return IntPolynomial(std::move(coeffs));
}

long long parse_count(const std::string& text, const char* what) {
  Int v = parse_extended_integer(text);
  if (!v.fits_slong_p()) throw std::invalid_argument(std::string(what) + " too large");
  return v.get_si();
}

struct BuiltinRelation {
  RelationSpec rel;
  SampleMode mode;
};

BuiltinRelation builtin_relation(const std::string& name) {
  if (name == "eq6")
    return {RelationSpec(SumSpec(2, 3, 0), 4, 2, IntPolynomial{-3, 1}), SampleMode::prefixes};
  if (name == "eq9")
    return {RelationSpec(SumSpec(2, 3, 0), 2, 2, IntPolynomial{0, -3, 0, 1}),
            SampleMode::intervals};
  if (name == "eq10")
    return {RelationSpec(SumSpec(2, 5, 0), 2, 2, IntPolynomial{0, -5, 0, 0, 0, 1}),
            SampleMode::intervals};
  if (name == "eq11")
    return {RelationSpec(SumSpec(2, 7, 0), 2, 2, IntPolynomial{0, 7, 0, 0, 0, 0, 0, 1}),
            SampleMode::intervals};
  if (name == "eq12")
    return {RelationSpec(SumSpec(2, 9, 0), 2, 2, IntPolynomial{0, 9, 0, -3, 0, 0, 0, -3, 0, 1}),
            SampleMode::intervals};
  if (name == "eq13")
    return {RelationSpec(SumSpec(4, 5, 0), 16, 32, IntPolynomial{5, -10, 1}),
            SampleMode::intervals};
  throw std::invalid_argument("unknown relation name: " + name +
                              " (known: eq6 eq9 eq10 eq11 eq12 eq13)");
}

// ---------------------------------------------------------------- sum

struct SumArgs {
  long q = 2, m = 1, l = 0;
  std::string x;
  std::string from;
  bool naive = false;
  bool vector = false;
};

int run_sum(const RunConfig& cfg, const SumArgs& a) {
  Int x = parse_extended_integer(a.x);
  std::string body;
  if (a.vector) {
    std::vector<Int> v = vector_sums(a.q, a.m, x);
    std::vector<std::string> parts;
    parts.reserve(v.size());
    for (const Int& s : v) parts.push_back(to_decimal(s));
    body = join(parts, ",") + "\n";
  } else {
    SumSpec spec(a.q, a.m, a.l);
    Int result;
    if (!a.from.empty()) {
      Interval iv(parse_extended_integer(a.from), x);
      result = a.naive ? newman_sum_interval_naive(spec, iv) : newman_sum_interval_fast(spec, iv);
    } else {
      result = a.naive ? newman_sum_naive(spec, x) : newman_sum_fast(spec, x);
    }
    body = to_decimal(result) + "\n";
  }
  write_text(cfg, body);
  return kExitOk;
}

// ------------------------------------------------------------- verify

struct VerifyArgs {
  std::string name;
  std::string spec_path;
  long samples = 200;
  long bound = 10000;
};

int run_verify(const RunConfig& cfg, const VerifyArgs& a) {
  if (a.name.empty() == a.spec_path.empty()) {
    throw std::invalid_argument("verify needs exactly one of: relation name, --spec FILE");
  }
  RecurrenceReport report = [&] {
    if (!a.name.empty()) {
      BuiltinRelation b = builtin_relation(a.name);
      return verify_relation(b.rel, a.samples, a.bound, cfg.seed, b.mode);
    }
    std::ifstream f(a.spec_path);
    if (!f) throw std::runtime_error("cannot read spec file: " + a.spec_path);
    json j = json::parse(f);
    return verify_relation(RelationSpec::from_json(j), a.samples, a.bound, cfg.seed);
  }();
  write_text(cfg, render_report(cfg, report));
  return report.status == RelationStatus::verified ? kExitOk : kExitRefuted;
}

// ------------------------------------------------------------ discover

struct DiscoverArgs {
  long q = 2, m = 3, l = 0;
  long step = 2;
  long divisibility = 1;
  long max_degree = 8;
  long budget = 64;
  long bound = 10000;
  long power = 1;
  std::string route = "sampling";
};

int run_discover(const RunConfig& cfg, const DiscoverArgs& a) {
  RecurrenceReport report = [&] {
    if (a.route == "matrix") {
      IntPolynomial poly = minimal_annihilator(a.q, a.m, a.l, a.power);
      long long step = 1;
      for (long e = 0; e < a.power; ++e) {
        step *= a.q;
        if (step > (1LL << 40)) throw std::invalid_argument("q^power too large for a step");
      }
      // e_l^T P(B^power) = 0 holds identically, hence no divisibility
      // constraint and no sampling.
      RecurrenceReport rep{RelationSpec(SumSpec(a.q, a.m, a.l), long(step), 1, poly),
                           RelationStatus::discovered, 0, std::nullopt, poly.degree()};
      return rep;
    }
    if (a.route != "sampling") {
      throw std::invalid_argument("unknown route: " + a.route + " (use sampling or matrix)");
    }
    return discover_recurrence(SumSpec(a.q, a.m, a.l), a.step, a.divisibility, a.max_degree,
                               a.budget, cfg.seed, a.bound);
  }();
  write_text(cfg, render_report(cfg, report));
  return report.status == RelationStatus::refuted ? kExitRefuted : kExitOk;
}

// ------------------------------------------------------------ charpoly

int run_charpoly(const RunConfig& cfg, long q, long m) {
  IntPolynomial p = char_poly(transfer_matrix(q, m));
  if (cfg.format == "json") {
    json j;
    j["meta"] = meta_json(cfg);
    j["q"] = q;
    j["m"] = m;
    j["coefficients"] = p.coeff_strings();
    j["pretty"] = p.pretty();
    write_text(cfg, j.dump(2) + "\n");
  } else {
    write_text(cfg, p.pretty() + "\n");
  }
  return kExitOk;
}

// ------------------------------------------------------------- divides

int run_divides(const RunConfig& cfg, const std::string& p_csv, const std::string& r_csv) {
  bool result = poly_divides(parse_poly(p_csv), parse_poly(r_csv));
  write_text(cfg, std::string(result ? "true" : "false") + "\n");
  return kExitOk;
}

// ---------------------------------------------------------- conjecture

int run_a_seq(const RunConfig& cfg, long n, long max_n) {
  if (max_n > 0) {
    std::vector<std::vector<std::string>> rows;
    for (long i = 1; i <= max_n; ++i) rows.push_back({std::to_string(i), to_decimal(a_sequence(i))});
    write_text(cfg, render_table(cfg, {"n", "a_n"}, rows));
    return kExitOk;
  }
  write_text(cfg, to_decimal(a_sequence(n)) + "\n");
  return kExitOk;
}

int run_primes(const RunConfig& cfg, long p_max) {
  std::vector<PrimeScanRecord> records = scan_primes(p_max);
  std::vector<std::vector<std::string>> rows;
  bool finding = false;
  for (const PrimeScanRecord& rec : records) {
    if (!rec.divisible_by_p) finding = true;
    rows.push_back({std::to_string(rec.p), to_decimal(rec.a_p),
                    rec.divisible_by_p ? "1" : "0", rec.is_plus_minus_p ? "1" : "0",
                    rec.divisible_by_p ? to_decimal(rec.quotient) : "",
                    rec.eventually_positive ? "1" : "0"});
  }
  write_text(cfg,
             render_table(cfg, {"p", "a_p", "divisible", "pm", "quotient", "eventually_positive"},
                          rows));
  if (finding) {
    std::cerr << "finding: some prime p does not divide a_p\n";
    return kExitFinding;
  }
  return kExitOk;
}

int run_positivity(const RunConfig& cfg, long q, long m, long l, const std::string& max_text) {
  long long n_max = parse_count(max_text, "n_max");
  SumSpec spec(q, m, l);
  PositivityReport rep = positivity_scan(spec, n_max, cfg.workers);
  std::vector<std::vector<std::string>> rows{{std::to_string(q), std::to_string(m),
                                              std::to_string(l), std::to_string(rep.n_max),
                                              std::to_string(rep.min_value),
                                              std::to_string(rep.argmin),
                                              rep.all_positive ? "1" : "0"}};
  write_text(cfg, render_table(
                      cfg, {"q", "m", "l", "n_max", "min_value", "argmin", "all_positive"}, rows));
  const bool conjectured_family = (l == 0 && m == q + 1 && q % 2 == 0);
  if (!rep.all_positive && conjectured_family) {
    std::cerr << "finding: S_{" << m << ",0," << q << "} is not positive on [1, " << n_max
              << "]; min " << rep.min_value << " at n = " << rep.argmin << "\n";
    return kExitFinding;
  }
  return kExitOk;
}

int run_exponent(const RunConfig& cfg, long q, long m, long l, const std::string& max_text,
                 long long n_min) {
  long long n_max = parse_count(max_text, "n_max");
  ExponentEstimate est = exponent_estimate(SumSpec(q, m, l), n_max, n_min, cfg.workers);
  std::vector<std::vector<std::string>> rows;
  for (const ExponentRecordPoint& pt : est.records) {
    rows.push_back({std::to_string(pt.n), std::to_string(pt.value), fmt_double(pt.lambda)});
  }
  write_text(cfg, render_table(cfg, {"n", "S", "lambda_running"}, rows));
  return kExitOk;
}

int run_ratio(const RunConfig& cfg, long m, long k, const std::string& max_text, int checkpoints) {
  Int n_max = parse_extended_integer(max_text);
  std::vector<std::vector<std::string>> rows;
  for (const RatioScanRecord& rec : ratio_scan(m, k, n_max, checkpoints)) {
    rows.push_back({to_decimal(rec.n), to_decimal(rec.s_m), to_decimal(rec.s_3k),
                    to_fraction(rec.ratio), fmt_double(rec.ratio_real)});
  }
  write_text(cfg, render_table(cfg, {"x", "s_m", "s_3k", "ratio", "ratio_real"}, rows));
  return kExitOk;
}

int run_gelfond(const RunConfig& cfg, long m, const std::string& max_text, int checkpoints) {
  Int n_max = parse_extended_integer(max_text);
  std::vector<std::vector<std::string>> rows;
  for (const GelfondRemainderRecord& rec : gelfond_remainder(m, n_max, checkpoints)) {
    rows.push_back({to_decimal(rec.x), to_decimal(rec.g0), to_decimal(rec.g1),
                    to_fraction(rec.rem0), to_fraction(rec.rem1),
                    rec.exp0_valid ? fmt_double(rec.exp0) : "",
                    rec.exp1_valid ? fmt_double(rec.exp1) : ""});
  }
  write_text(cfg, render_table(
                      cfg, {"x", "g0", "g1", "rem0", "rem1", "rem0_exponent", "rem1_exponent"},
                      rows));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  cfg.args = repro_args(argc, argv);

  CLI::App app{std::string(kVersion) +
               " — exact generalized Newman digit sums, interval recurrences, conjecture scans"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file (flags win)");
  app.add_option("--out", cfg.out_path, "write data to this file instead of stdout");
  app.add_option("--format", cfg.format, "output format for scans: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "seed for all sampled runs (default 1)");
  app.add_option("--workers", cfg.workers, "worker threads for range scans (default 1)")
      ->check(CLI::Range(1, 256));

  SumArgs sum_args;
  auto* sum = app.add_subcommand("sum", "evaluate S_{m,l,q}(x) or S_{m,l,q}([from, x))");
  sum->add_option("-q", sum_args.q, "radix")->required();
  sum->add_option("-m", sum_args.m, "modulus")->required();
  sum->add_option("-l", sum_args.l, "residue class");
  sum->add_option("-x", sum_args.x, "prefix length, decimal or b^e")->required();
  sum->add_option("--from", sum_args.from, "interval left endpoint (makes it S([from, x)))");
  sum->add_flag("--naive", sum_args.naive, "force the enumeration oracle (bounded x)");
  sum->add_flag("--vector", sum_args.vector, "print all residues S_{m,0..m-1,q}(x)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "verify an interval relation on seeded samples");
  verify->add_option("name", verify_args.name, "built-in relation: eq6 eq9 eq10 eq11 eq12 eq13");
  verify->add_option("--spec", verify_args.spec_path, "RelationSpec JSON file");
  verify->add_option("--samples", verify_args.samples, "sample count (default 200)");
  verify->add_option("--bound", verify_args.bound, "endpoint bound (default 10000)");

  DiscoverArgs discover_args;
  auto* discover = app.add_subcommand("discover", "discover a minimal interval recurrence");
  discover->add_option("-q", discover_args.q, "radix")->required();
  discover->add_option("-m", discover_args.m, "modulus")->required();
  discover->add_option("-l", discover_args.l, "residue class");
  discover->add_option("--step", discover_args.step, "per-index scale factor (default 2)");
  discover->add_option("--div", discover_args.divisibility,
                       "endpoint divisibility constraint (default 1)");
  discover->add_option("--max-degree", discover_args.max_degree, "degree budget (default 8)");
  discover->add_option("--budget", discover_args.budget, "sample budget (default 64)");
  discover->add_option("--bound", discover_args.bound, "endpoint bound (default 10000)");
  discover->add_option("--route", discover_args.route, "sampling (Hankel) or matrix (Krylov)");
  discover->add_option("--power", discover_args.power, "matrix route: step = q^power (default 1)");

  long charpoly_q = 2, charpoly_m = 1;
  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial of the transfer matrix");
  charpoly->add_option("-q", charpoly_q, "radix")->required();
  charpoly->add_option("-m", charpoly_m, "modulus (coprime to q)")->required();

  std::string div_p, div_r;
  auto* divides = app.add_subcommand("divides", "exact polynomial divisibility test");
  divides->add_option("--p", div_p, "divisor coefficients, lowest first, comma-separated")
      ->required();
  divides->add_option("--r", div_r, "dividend coefficients, lowest first, comma-separated")
      ->required();

  auto* conjecture = app.add_subcommand("conjecture", "evidence scans");
  conjecture->require_subcommand(1);

  long aseq_n = 0, aseq_max = 0;
  auto* a_seq = conjecture->add_subcommand("a-seq", "a_n = S_{n,0,2}(2^n)");
  a_seq->add_option("-n", aseq_n, "single index");
  a_seq->add_option("--max", aseq_max, "emit a CSV table for n = 1..max");

  long primes_max = 29;
  auto* primes = conjecture->add_subcommand("primes", "a_p for odd primes p <= max");
  primes->add_option("--max", primes_max, "prime bound (default 29)");

  long pos_q = 2, pos_m = 3, pos_l = 0;
  std::string pos_max = "1048576";
  auto* positivity = conjecture->add_subcommand("positivity", "min of S(spec, n) over n <= max");
  positivity->add_option("-q", pos_q, "radix");
  positivity->add_option("-m", pos_m, "modulus");
  positivity->add_option("-l", pos_l, "residue class");
  positivity->add_option("--max", pos_max, "scan bound, decimal or b^e");

  long exp_q = 2, exp_m = 3, exp_l = 0;
  long long exp_min = 64;
  std::string exp_max = "4194304";
  auto* exponent = conjecture->add_subcommand("exponent", "record-maxima growth exponent");
  exponent->add_option("-q", exp_q, "radix");
  exponent->add_option("-m", exp_m, "modulus");
  exponent->add_option("-l", exp_l, "residue class");
  exponent->add_option("--max", exp_max, "scan bound, decimal or b^e");
  exponent->add_option("--min", exp_min, "smallest n considered (default 64)");

  long ratio_m = 7, ratio_k = 2;
  int ratio_checkpoints = 20;
  std::string ratio_max = "1048576";
  auto* ratio = conjecture->add_subcommand("ratio", "|S_{m,0}| vs |S_{3k,0}| at checkpoints");
  ratio->add_option("-m", ratio_m, "modulus, coprime to 3");
  ratio->add_option("-k", ratio_k, "comparison index (modulus 3k)");
  ratio->add_option("--max", ratio_max, "scan bound, decimal or b^e");
  ratio->add_option("--checkpoints", ratio_checkpoints, "geometric checkpoint count (default 20)");

  long gelfond_m = 3;
  int gelfond_checkpoints = 20;
  std::string gelfond_max = "1048576";
  auto* gelfond = conjecture->add_subcommand("gelfond", "Gelfond census remainders g_i - x/(2m)");
  gelfond->add_option("-m", gelfond_m, "modulus");
  gelfond->add_option("--max", gelfond_max, "scan bound, decimal or b^e");
  gelfond->add_option("--checkpoints", gelfond_checkpoints,
                      "geometric checkpoint count (default 20)");

  // Global options (--seed, --format, ...) remain usable after a
  // subcommand name.
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(sum)) return run_sum(cfg, sum_args);
    if (app.got_subcommand(verify)) return run_verify(cfg, verify_args);
    if (app.got_subcommand(discover)) return run_discover(cfg, discover_args);
    if (app.got_subcommand(charpoly)) return run_charpoly(cfg, charpoly_q, charpoly_m);
    if (app.got_subcommand(divides)) return run_divides(cfg, div_p, div_r);
    if (app.got_subcommand(conjecture)) {
      if (conjecture->got_subcommand(a_seq)) return run_a_seq(cfg, aseq_n, aseq_max);
      if (conjecture->got_subcommand(primes)) return run_primes(cfg, primes_max);
      if (conjecture->got_subcommand(positivity)) {
        return run_positivity(cfg, pos_q, pos_m, pos_l, pos_max);
      }
      if (conjecture->got_subcommand(exponent)) {
        return run_exponent(cfg, exp_q, exp_m, exp_l, exp_max, exp_min);
      }
      if (conjecture->got_subcommand(ratio)) {
        return run_ratio(cfg, ratio_m, ratio_k, ratio_max, ratio_checkpoints);
      }
      if (conjecture->got_subcommand(gelfond)) {
        return run_gelfond(cfg, gelfond_m, gelfond_max, gelfond_checkpoints);
      }
    }
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

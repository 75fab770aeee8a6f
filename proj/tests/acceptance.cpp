// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance --suite fast    criteria 1, 2, 5, 6, 7 (fast contexts), 8, 9
//   acceptance --suite slow    criteria 3, 4, 7 (all contexts)
//   acceptance --suite all

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "nilprob/cli.hpp"
#include "nilprob/nilprob.hpp"
#include "oracles.hpp"

using namespace nilprob;

namespace {

// pinned tolerances and limits
constexpr double criterion1_seconds = 5;
constexpr double criterion2_seconds = 600;
constexpr double criterion3_seconds = 7200;
constexpr double row_budget_seconds = 1800;  // exact attempt per row before sampling
constexpr std::uint64_t fallback_samples = 1'000'000;
constexpr double fallback_confidence = 0.99;
constexpr std::uint64_t oracle_random_pairs = 10'000;
constexpr std::uint64_t sweep_max_order = 2520;
constexpr int calibration_seeds = 100;
constexpr std::uint64_t calibration_samples = 10'000;
constexpr int calibration_min_covering = 93;

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void fail(const std::string& why) {
    pass = false;
    lines.push_back("FAIL: " + why);
  }
  void note(const std::string& s) { lines.push_back(s); }
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string secs(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

ExactFraction frac(const char* s) { return ExactFraction::parse(s); }

bool all_passed = true;

void report(const char* id, const char* title, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << '\n';
  for (const auto& l : o.lines) std::cout << "        " << l << '\n';
  std::cout << std::flush;
  all_passed = all_passed && o.pass;
}

// coset pair bookkeeping shared by criteria 2-4 and reported under 7
struct PairTally {
  std::size_t contexts = 0;
  std::size_t constant = 0;
  std::size_t with_three_pairs = 0;
  std::vector<std::string> broken;

  void add(const std::string& where, const TauResult& t) {
    ++contexts;
    if (t.pairs_agree) ++constant;
    else broken.push_back(where + " |T| = " + std::to_string(t.subgroup_order));
    if (t.samples.size() >= 3) ++with_three_pairs;
  }
};

PairTally tally_fast, tally_slow;

EngineOptions with_deadline(double seconds) {
  EngineOptions o;
  o.pair_budget = std::numeric_limits<std::uint64_t>::max();
  o.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(seconds));
  return o;
}

struct Expect {
  const char* label;
  const char* spec;
  const char* value;
};

/// nu~ exactly, or a 99% interval check when the exact count overruns.
std::optional<ExactFraction> check_nu_tilde(const Expect& e, Outcome& out, PairTally& tally,
                                            double budget) {
  const auto start = Clock::now();
  const auto expected = frac(e.value);
  try {
    OuterQuotient oq(build_aut_pair(parse_group_spec(e.spec)));
    try {
      auto r = nu_tilde(oq, with_deadline(budget));
      for (const auto& row : r.rows) tally.add(e.label, row.tau);
      const bool ok = r.value == expected;
      const std::string line = std::string(e.label) + ": computed " + r.value.to_string() +
                               ", expected " + expected.to_string() + " (" +
                               secs(seconds_since(start)) + ")";
      if (ok) out.note(line);
      else out.fail(line);
      return r.value;
    } catch (const budget_exceeded&) {
      auto est = monte_carlo_nu_tilde(oq, fallback_samples, 1, {}, fallback_confidence);
      const auto& ci = *est.best.ci;
      const std::string line = std::string(e.label) + ": exact count over budget; 99% interval [" +
                               decimal_string(ci.lo) + ", " + decimal_string(ci.hi) + "] vs " +
                               expected.to_string();
      if (ci.contains(expected.to_double())) out.note(line);
      else out.fail(line);
    }
  } catch (const std::exception& ex) {
    out.fail(std::string(e.label) + ": " + ex.what());
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto start = Clock::now();
  auto exact = [&](const char* label, const FiniteGroup& g, const char* value) {
    const auto v = nu_exact(g).value;
    if (v == frac(value)) o.note(std::string(label) + " = " + v.to_string());
    else o.fail(std::string(label) + " = " + v.to_string() + ", expected " + value);
  };
  exact("nu(Sym(3))", symmetric_group(3), "1/2");
  exact("nu(Alt(5))", alternating_group(5), "1/12");
  PairTally scratch;
  for (const Expect& e : {Expect{"nu~(Alt(5))", "alt:5", "1/12"}, Expect{"nu~(Alt(6))", "alt:6", "1/36"},
                          Expect{"nu~(Alt(7))", "alt:7", "1/210"}}) {
    check_nu_tilde(e, o, scratch, criterion1_seconds);
  }
  const double t = seconds_since(start);
  if (t < criterion1_seconds) o.note("total " + secs(t));
  else o.fail("took " + secs(t) + ", limit " + secs(criterion1_seconds));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto start = Clock::now();
  for (const Expect& e : {Expect{"PSL(2,7)", "psl2:7", "3/56"}, Expect{"PSL(2,8)", "psl2:8", "1/56"},
                          Expect{"PSL(2,11)", "psl2:11", "2/165"}, Expect{"PSL(2,13)", "psl2:13", "3/364"},
                          Expect{"PSL(3,3)", "file:psl3_3_aut.gens", "1/234"},
                          Expect{"M11", "file:m11.gens", "1/440"}}) {
    check_nu_tilde(e, o, tally_fast, criterion2_seconds);
  }
  const double t = seconds_since(start);
  if (t < criterion2_seconds) o.note("total " + secs(t));
  else o.fail("took " + secs(t) + ", limit " + secs(criterion2_seconds));
  return o;
}

std::optional<ExactFraction> psl34_nu_tilde;

Outcome criterion3() {
  Outcome o;
  const auto start = Clock::now();
  for (const Expect& e : {Expect{"PSL(3,4)", "file:psl3_4_aut.gens", "13/4032"},
                          Expect{"PSU(4,2)", "file:psu4_2_aut.gens", "67/23760"},
                          Expect{"M12", "file:m12_aut.gens", "7/11880"},
                          Expect{"PSp(6,2)", "file:psp6_2.gens", "1/4536"},
                          Expect{"Alt(8)", "alt:8", "19/9720"},
                          Expect{"Alt(9)", "alt:9", "1/2160"}}) {
    auto v = check_nu_tilde(e, o, tally_slow, row_budget_seconds);
    if (std::string_view(e.label) == "PSL(3,4)") psl34_nu_tilde = v;
  }
  const double t = seconds_since(start);
  if (t < criterion3_seconds) o.note("total " + secs(t));
  else o.fail("took " + secs(t) + ", limit " + secs(criterion3_seconds));
  return o;
}

Outcome criterion4() {
  Outcome o;
  ExactFraction best;
  bool all_exact = true;
  for (const Expect& e : {Expect{"S", "file:psl3_4.gens", "5/4032"},
                          Expect{"S.2_1", "file:psl3_4_2_1.gens", "13/4032"},
                          Expect{"S.2_2", "file:psl3_4_2_2.gens", "19/6720"},
                          Expect{"S.2_3", "file:psl3_4_2_3.gens", "5/4032"},
                          Expect{"S.2^2", "file:psl3_4_2_2x2.gens", "13/4032"},
                          Expect{"S.6", "file:psl3_4_6.gens", "1/2520"}}) {
    try {
      auto t = tau(build_aut_pair(parse_group_spec(e.spec)), with_deadline(row_budget_seconds));
      tally_slow.add(std::string("tau ") + e.label, t);
      if (t.value > best) best = t.value;
      const std::string line = std::string("tau(") + e.label + ") = " + t.value.to_string() +
                               ", expected " + e.value;
      if (t.value == frac(e.value)) o.note(line);
      else o.fail(line);
    } catch (const std::exception& ex) {
      all_exact = false;
      o.fail(std::string(e.label) + ": " + ex.what());
    }
  }
  if (all_exact) {
    if (best == frac("13/4032")) o.note("max over the table = " + best.to_string());
    else o.fail("max over the table = " + best.to_string() + ", expected 13/4032");
  }
  if (!psl34_nu_tilde) {
    auto r = nu_tilde(build_aut_pair(parse_group_spec("file:psl3_4_aut.gens")));
    psl34_nu_tilde = r.value;
  }
  if (*psl34_nu_tilde == frac("13/4032")) o.note("nu~(PSL(3,4)) reported as " + psl34_nu_tilde->to_string());
  else o.fail("nu~(PSL(3,4)) reported as " + psl34_nu_tilde->to_string());
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto v = alt_bound(frac("15403/18144"), frac("15403/18144"), 10);
  if (v == frac("12007/181440")) o.note("alt_bound = " + v.to_string());
  else o.fail("alt_bound = " + v.to_string() + ", expected 12007/181440");
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto exhaustive = [&](const FiniteGroup& g) {
    PairNilpotencyTest test(g);
    const auto& t = g.elements();
    std::uint64_t pairs = 0, bad = 0;
    for (index_type i = 0; i < t.size(); ++i) {
      for (index_type j = 0; j < t.size(); ++j) {
        const auto x = t.element(i), y = t.element(j);
        const bool want = oracle::nilpotent_pair(x, y);
        bad += (test(i, j) != want) + (is_nilpotent_pair(x, y) != want);
        ++pairs;
      }
    }
    const std::string line = g.name() + ": " + std::to_string(pairs) + " pairs, " +
                             std::to_string(bad) + " disagreements";
    if (bad) o.fail(line);
    else o.note(line);
  };
  exhaustive(symmetric_group(4));
  exhaustive(symmetric_group(5));
  exhaustive(alternating_group(5));

  auto sampled = [&](const FiniteGroup& g, std::uint64_t seed) {
    PairNilpotencyTest test(g);
    const auto& t = g.elements();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<index_type> d(0, static_cast<index_type>(t.size() - 1));
    std::uint64_t bad = 0, nilpotent = 0;
    for (std::uint64_t k = 0; k < oracle_random_pairs; ++k) {
      const index_type i = d(rng), j = d(rng);
      const bool want = oracle::nilpotent_pair(t.element(i), t.element(j));
      nilpotent += want;
      bad += test(i, j) != want;
    }
    const std::string line = g.name() + ": " + std::to_string(oracle_random_pairs) +
                             " random pairs (" + std::to_string(nilpotent) + " nilpotent), " +
                             std::to_string(bad) + " disagreements";
    if (bad) o.fail(line);
    else o.note(line);
  };
  sampled(pgl2(7), 61);
  sampled(load_generator_file("m11.gens").ambient, 62);
  return o;
}

Outcome criterion7(const PairTally& tally, const char* scope) {
  Outcome o;
  o.note(std::string(scope) + ": " + std::to_string(tally.contexts) + " (T, S) contexts, " +
         std::to_string(tally.constant) + " constant, " + std::to_string(tally.with_three_pairs) +
         " with 3 distinct coset pairs (the rest have a trivial quotient and compare two lifts)");
  for (const auto& b : tally.broken) o.fail("values differ for " + b);
  if (tally.contexts == 0) o.fail("no contexts were evaluated");
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::vector<std::string> specs;
  for (int n = 1; n <= 7; ++n) specs.push_back("sym:" + std::to_string(n));
  for (int n = 1; n <= 7; ++n) specs.push_back("alt:" + std::to_string(n));
  for (int n = 1; n <= 60; ++n) specs.push_back("cyc:" + std::to_string(n));
  for (int n = 3; n <= 60; ++n) specs.push_back("dih:" + std::to_string(n));
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 17}) {
    for (const char* k : {"psl2:", "pgl2:", "pgammal2:"}) specs.push_back(k + std::to_string(q));
  }
  std::size_t checked = 0, violations = 0, above = 0;
  for (const auto& spec : specs) {
    std::optional<FiniteGroup> g;
    try {
      g = build(parse_group_spec(spec));
      if (g->order() > sweep_max_order) continue;
    } catch (const budget_exceeded&) {
      continue;
    } catch (const std::invalid_argument&) {
      continue;  // parameter outside the family
    }
    ++checked;
    const auto v = nu_exact(*g).value;
    std::vector<Permutation> all;
    for (index_type i = 0; i < g->order(); ++i) all.push_back(g->elements().element(i));
    const bool nilpotent = oracle::is_nilpotent(all);
    const bool solvable = is_solvable(*g);
    auto violation = [&](const std::string& what) {
      ++violations;
      o.fail(spec + ": " + what + " (nu = " + v.to_string() + ")");
    };
    if (v > frac("1/12")) {
      ++above;
      if (!solvable) violation("nu > 1/12 but not solvable");
    }
    if ((v == frac("1")) != nilpotent) violation("nu = 1 disagrees with nilpotency");
    if (!nilpotent && v > frac("1/2")) violation("nonnilpotent with nu > 1/2");
  }
  o.note(std::to_string(checked) + " groups of order <= " + std::to_string(sweep_max_order) + ", " +
         std::to_string(above) + " above 1/12, " + std::to_string(violations) + " violations");
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto g = alternating_group(5);
  const double truth = 1.0 / 12;
  int covering = 0;
  for (int seed = 1; seed <= calibration_seeds; ++seed) {
    auto r = monte_carlo_nu(g, calibration_samples, static_cast<std::uint64_t>(seed), {}, 0.95);
    covering += r.ci->contains(truth);
  }
  const std::string line = std::to_string(covering) + " of " + std::to_string(calibration_seeds) +
                           " 95% intervals contain 1/12 (need " +
                           std::to_string(calibration_min_covering) + ")";
  if (covering >= calibration_min_covering) o.note(line);
  else o.fail(line);

  EngineOptions one, three;
  one.threads = 1;
  three.threads = 3;
  const auto a = monte_carlo_nu(g, calibration_samples, 42, one);
  const auto b = monte_carlo_nu(g, calibration_samples, 42, three);
  if (a.favorable == b.favorable) o.note("seed 42 gives " + std::to_string(a.favorable) + " hits on 1 and 3 workers");
  else o.fail("seed 42 differs between worker counts");

  auto cli_json = [] {
    const char* argv[] = {"nilprob", "mc", "alt:5", "--samples", "10000", "--seed", "42",
                          "--format", "json", "--deterministic"};
    std::ostringstream out, err;
    cli::run(10, argv, out, err);
    return out.str();
  };
  const auto j1 = cli_json(), j2 = cli_json();
  if (!j1.empty() && j1 == j2) o.note("CLI json output byte identical across runs");
  else o.fail("CLI json output differs across runs");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string suite = "fast";
  app.add_option("--suite", suite, "fast, slow or all")->check(CLI::IsMember({"fast", "slow", "all"}));
  CLI11_PARSE(app, argc, argv);
  const bool fast = suite != "slow";
  const bool slow = suite != "fast";

  if (fast) {
    report("1", "exact small values", criterion1());
    report("2", "Table 1 fast rows", criterion2());
    report("5", "alternating group bound", criterion5());
    report("6", "pair criterion vs closure oracle", criterion6());
    report("7", "coset pair independence (fast rows)", criterion7(tally_fast, "Table 1 fast rows"));
    report("8", "solvability threshold sweep", criterion8());
    report("9", "Monte Carlo calibration and reproducibility", criterion9());
  }
  if (slow) {
    if (!fast) {
      // criterion 7 covers the contexts of criterion 2 as well
      Outcome ignored = criterion2();
      (void)ignored;
    }
    report("3", "Table 1 slow rows", criterion3());
    report("4", "Table 2", criterion4());
    PairTally all = tally_slow;
    all.contexts += tally_fast.contexts;
    all.constant += tally_fast.constant;
    all.with_three_pairs += tally_fast.with_three_pairs;
    all.broken.insert(all.broken.end(), tally_fast.broken.begin(), tally_fast.broken.end());
    report("7", "coset pair independence (all rows)", criterion7(all, "Tables 1 and 2"));
  }
  std::cout << (all_passed ? "all criteria passed" : "some criteria failed") << '\n';
  return all_passed ? 0 : 1;
}

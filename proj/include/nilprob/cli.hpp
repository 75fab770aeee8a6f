#pragma once

// Command-line front end.  `run` is the whole program; the executable only
// forwards argv and the standard streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nilprob/catalog.hpp"
#include "nilprob/expected_values.hpp"
#include "nilprob/fraction.hpp"
#include "nilprob/nu.hpp"

namespace nilprob::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_budget = 3;

enum class Format { text, json, csv };

struct Common {
  Format format = Format::text;
  bool deterministic = false;
  unsigned threads = 0;
  double budget_seconds = 0;  // 0: no time limit
  std::uint64_t pair_budget = 100'000'000;
  std::uint64_t seed = 1;

  EngineOptions engine() const {
    EngineOptions o;
    o.pair_budget = pair_budget;
    o.threads = threads;
    o.seed = seed;
    if (budget_seconds > 0) {
      o.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(budget_seconds));
    }
    return o;
  }
};

using nlohmann::json;

inline json integer_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

inline json fraction_json(const ExactFraction& f) {
  return {{"num", integer_json(f.numerator())}, {"den", integer_json(f.denominator())}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline void stamp(json& j, const Common& c, double elapsed_ms) {
  if (c.deterministic) return;
  j["elapsed_ms"] = elapsed_ms;
  j["timestamp"] = utc_timestamp();
}

inline json report_json(const NuReport& r, const Common& c) {
  json j = {{"group", r.group},
            {"order", r.order},
            {"method", to_string(r.method)},
            {"value", fraction_json(r.value)},
            {"decimal", decimal_string(r.value.to_double())}};
  if (r.ci) {
    j["ci"] = {{"lo", r.ci->lo}, {"hi", r.ci->hi}, {"confidence", r.confidence}};
    j["samples"] = r.total;
  }
  if (!r.witness.empty()) j["witness"] = r.witness;
  stamp(j, c, r.elapsed_ms);
  return j;
}

inline void print_csv_header(std::ostream& out) { out << "group,method,num,den,decimal,status\n"; }

inline void print_csv_row(std::ostream& out, const std::string& group, const std::string& method,
                          const ExactFraction& v, const std::string& status) {
  out << csv_field(group) << ',' << method << ',' << v.numerator() << ',' << v.denominator() << ','
      << decimal_string(v.to_double()) << ',' << status << '\n';
}

inline void print_report(std::ostream& out, const NuReport& r, const Common& c,
                         const std::string& status = "ok") {
  switch (c.format) {
    case Format::json: out << report_json(r, c).dump(2) << '\n'; return;
    case Format::csv:
      print_csv_header(out);
      print_csv_row(out, r.group, to_string(r.method), r.value, status);
      return;
    case Format::text: break;
  }
  out << r.group << "  (order " << r.order << ", " << to_string(r.method) << ")\n";
  out << "  value    " << r.value.to_string() << "  ~ " << decimal_string(r.value.to_double()) << '\n';
  if (r.ci) {
    out << "  ci       [" << decimal_string(r.ci->lo) << ", " << decimal_string(r.ci->hi) << "] at "
        << r.confidence * 100 << "%\n";
    out << "  samples  " << r.total << " (" << r.favorable << " nilpotent)\n";
  }
  if (!r.witness.empty()) out << "  witness  " << r.witness << '\n';
  if (!c.deterministic) out << "  elapsed  " << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms\n"
                            << std::defaultfloat;
}

// ---------------------------------------------------------------------------
// table verification

struct RowVerdict {
  std::string label;
  ExactFraction expected;
  std::optional<ExactFraction> computed;  // exact value or point estimate
  std::string method;
  std::string status;  // exact-match, ci-consistent, mismatch, skipped-budget, error
  std::optional<Interval> ci;
  std::uint64_t samples = 0;
  std::string witness;
  std::string note;
  double elapsed_ms = 0;
};

struct TableVerdict {
  std::string table;  // "1", "2" or "alt"
  std::vector<RowVerdict> rows;
};

struct VerifyOptions {
  double budget_seconds = 60;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

namespace detail {

inline EngineOptions row_engine(const VerifyOptions& v) {
  EngineOptions o;
  o.threads = v.threads;
  o.seed = v.seed;
  o.pair_budget = std::numeric_limits<std::uint64_t>::max();
  o.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(v.budget_seconds));
  return o;
}

inline void settle_exact(RowVerdict& row, const ExactFraction& value, std::string method) {
  row.computed = value;
  row.method = std::move(method);
  row.status = value == row.expected ? "exact-match" : "mismatch";
}

inline void settle_sampled(RowVerdict& row, const NuReport& r) {
  row.computed = r.value;
  row.method = to_string(r.method);
  row.ci = r.ci;
  row.samples = r.total;
  row.witness = r.witness;
  row.status = r.ci->contains(row.expected.to_double()) ? "ci-consistent" : "mismatch";
}

/// Exact computation under the row budget, then a 99% Monte Carlo check.
template <class Exact, class Sampled>
RowVerdict verify_row(const expected::Row& spec, const VerifyOptions& opts, Exact exact,
                      Sampled sampled) {
  RowVerdict row;
  row.label = std::string(spec.label);
  row.expected = ExactFraction::parse(spec.value);
  const auto start = Clock::now();
  try {
    auto pair = build_aut_pair(parse_group_spec(spec.group_spec));
    OuterQuotient oq(pair);
    try {
      exact(row, oq, row_engine(opts));
    } catch (const budget_exceeded& e) {
      row.note = e.what();
      try {
        sampled(row, oq, row_engine(opts));
      } catch (const budget_exceeded& e2) {
        row.status = "skipped-budget";
        row.note = e2.what();
      }
    }
  } catch (const budget_exceeded& e) {
    row.status = "skipped-budget";
    row.note = e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.note = e.what();
  }
  row.elapsed_ms = nilprob::detail::elapsed_ms(start);
  return row;
}

inline RowVerdict verify_nu_tilde_row(const expected::Row& spec, const VerifyOptions& opts) {
  return verify_row(
      spec, opts,
      [](RowVerdict& row, const OuterQuotient& oq, const EngineOptions& e) {
        auto r = nu_tilde(oq, e);
        settle_exact(row, r.value, "exact-classes");
        row.witness = r.witness;
        if (!r.pairs_agree) row.note = "tau differs between generating coset pairs";
      },
      [&opts](RowVerdict& row, const OuterQuotient& oq, const EngineOptions& e) {
        settle_sampled(row, monte_carlo_nu_tilde(oq, opts.mc_samples, opts.seed, e, 0.99).best);
      });
}

inline RowVerdict verify_tau_row(const expected::Row& spec, const VerifyOptions& opts) {
  return verify_row(
      spec, opts,
      [](RowVerdict& row, const OuterQuotient& oq, const EngineOptions& e) {
        std::vector<index_type> all(oq.quotient().order());
        std::iota(all.begin(), all.end(), index_type{0});
        auto r = nilprob::detail::tau_for_quotient_subgroup(oq, all, 3, e);
        settle_exact(row, r.value, "exact-classes");
        if (!r.pairs_agree) row.note = "tau differs between generating coset pairs";
      },
      [&opts](RowVerdict& row, const OuterQuotient& oq, const EngineOptions& e) {
        settle_sampled(row, monte_carlo_tau(oq, {}, opts.mc_samples, opts.seed, e, 0.99));
      });
}

}  // namespace detail

inline TableVerdict verify_table(const std::string& table, const VerifyOptions& opts) {
  TableVerdict v;
  v.table = table;
  if (table == "1") {
    for (const auto& row : expected::table1) v.rows.push_back(detail::verify_nu_tilde_row(row, opts));
  } else if (table == "alt") {
    for (const auto& row : expected::alternating) v.rows.push_back(detail::verify_nu_tilde_row(row, opts));
  } else if (table == "2") {
    bool all_exact = true;
    ExactFraction best;
    for (const auto& row : expected::table2) {
      v.rows.push_back(detail::verify_tau_row(row, opts));
      const auto& r = v.rows.back();
      all_exact = all_exact && r.ci == std::nullopt && r.computed.has_value();
      if (r.computed && *r.computed > best) best = *r.computed;
    }
    RowVerdict max;
    max.label = "max";
    max.expected = ExactFraction::parse(expected::table2_max);
    if (all_exact) {
      detail::settle_exact(max, best, "max of rows");
    } else {
      max.status = "skipped-budget";
      max.note = "not every row was computed exactly";
    }
    v.rows.push_back(max);
  } else {
    throw std::invalid_argument("unknown table '" + table + "' (use 1, 2 or alt)");
  }
  return v;
}

inline bool has_mismatch(const std::vector<TableVerdict>& tables) {
  for (const auto& t : tables) {
    for (const auto& r : t.rows) {
      if (r.status == "mismatch") return true;
    }
  }
  return false;
}

inline void print_tables(std::ostream& out, const std::vector<TableVerdict>& tables, const Common& c) {
  if (c.format == Format::json) {
    json j = {{"version", std::string(expected::version)}, {"tables", json::array()}};
    for (const auto& t : tables) {
      json rows = json::array();
      for (const auto& r : t.rows) {
        json row = {{"group", r.label},
                    {"expected", fraction_json(r.expected)},
                    {"status", r.status}};
        if (r.computed) {
          row["value"] = fraction_json(*r.computed);
          row["decimal"] = decimal_string(r.computed->to_double());
          row["method"] = r.method;
        }
        if (r.ci) {
          row["ci"] = {{"lo", r.ci->lo}, {"hi", r.ci->hi}, {"confidence", 0.99}};
          row["samples"] = r.samples;
        }
        if (!r.witness.empty()) row["witness"] = r.witness;
        if (!r.note.empty()) row["note"] = r.note;
        stamp(row, c, r.elapsed_ms);
        rows.push_back(std::move(row));
      }
      j["tables"].push_back({{"table", t.table}, {"rows", std::move(rows)}});
    }
    out << j.dump(2) << '\n';
    return;
  }
  if (c.format == Format::csv) {
    print_csv_header(out);
    for (const auto& t : tables) {
      for (const auto& r : t.rows) {
        const ExactFraction v = r.computed.value_or(ExactFraction(0));
        print_csv_row(out, r.label, r.computed ? r.method : "none", v, r.status);
      }
    }
    return;
  }
  for (const auto& t : tables) {
    out << "Table " << t.table << '\n';
    out << "  " << std::left << std::setw(10) << "group" << std::setw(13) << "expected"
        << std::setw(13) << "computed" << std::setw(11) << "decimal" << std::setw(15) << "method"
        << "status\n";
    for (const auto& r : t.rows) {
      out << "  " << std::setw(10) << r.label << std::setw(13) << r.expected.to_string()
          << std::setw(13) << (r.computed ? r.computed->to_string() : "-") << std::setw(11)
          << (r.computed ? decimal_string(r.computed->to_double()) : "-") << std::setw(15)
          << (r.computed ? r.method : "-") << r.status;
      if (r.ci) {
        out << "  [" << decimal_string(r.ci->lo) << ", " << decimal_string(r.ci->hi) << "]";
      }
      if (!c.deterministic) out << "  " << std::fixed << std::setprecision(1) << r.elapsed_ms / 1000 << " s" << std::defaultfloat;
      if (!r.note.empty()) out << "  (" << r.note << ")";
      out << '\n';
    }
    out << std::right;
  }
}

// ---------------------------------------------------------------------------
// verbs

namespace detail {

inline Permutation parse_in(const std::string& text, const FiniteGroup& g, const char* what) {
  auto p = parse_permutation(text, g.degree());
  if (!g.contains(p)) throw group_error(std::string(what) + " = " + text + " is not in " + g.name());
  return p;
}

inline CosetContext coset_context(const std::string& group, const std::optional<std::string>& normal,
                                  const std::string& g1, const std::string& g2) {
  auto pair = build_coset_pair(parse_group_spec(group));
  if (normal) {
    pair.socle = build(parse_group_spec(*normal));
    if (pair.socle.degree() != pair.ambient.degree()) {
      throw degree_mismatch(pair.ambient.degree(), pair.socle.degree());
    }
    for (const auto& x : pair.socle.generators()) {
      if (!pair.ambient.contains(x)) throw group_error(pair.socle.name() + " is not a subgroup of " + pair.ambient.name());
    }
  }
  return {pair.ambient, pair.socle, parse_in(g1, pair.ambient, "g1"), parse_in(g2, pair.ambient, "g2")};
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nilpotency probabilities of finite permutation groups", "nilprob"};
  app.require_subcommand(1);

  Common common;
  std::string format = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_flag("--deterministic", common.deterministic, "omit timings and timestamps");
    sub->add_option("--threads", common.threads, "worker threads (0: all cores)");
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", common.budget_seconds, "time budget in seconds (0: none)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--pair-budget", common.pair_budget, "maximum pair evaluations for exact methods");
  };

  std::string group, method = "classes", g1, g2;
  std::optional<std::string> normal;
  std::vector<std::string> groups, extra_gens;
  std::uint64_t samples = 1'000'000;
  double confidence = 0.95;
  std::string pi_n, pi_n1, table = "all";
  std::int64_t alt_n = 0;
  VerifyOptions verify;

  auto* nu = app.add_subcommand("nu", "nu(G) for a catalog group");
  nu->add_option("group", group, "group spec, e.g. alt:5")->required();
  nu->add_option("--method", method, "full, classes or mc")->check(CLI::IsMember({"full", "classes", "mc"}));
  nu->add_option("--samples", samples, "Monte Carlo samples");
  nu->add_option("--seed", common.seed, "Monte Carlo seed");
  add_common(nu);
  add_budget(nu);

  auto* nuc = app.add_subcommand("nu-coset", "nu_{g1,g2}(G, N)");
  nuc->add_option("group", group, "ambient group spec; sym:n pairs with Alt(n)")->required();
  nuc->add_option("--g1", g1, "first coset representative (cycles or images)")->required();
  nuc->add_option("--g2", g2, "second coset representative")->required();
  nuc->add_option("--normal", normal, "normal subgroup spec (default: the catalog socle)");
  nuc->add_option("--method", method, "classes or mc")->check(CLI::IsMember({"classes", "mc"}));
  nuc->add_option("--samples", samples, "Monte Carlo samples");
  nuc->add_option("--seed", common.seed, "Monte Carlo seed");
  add_common(nuc);
  add_budget(nuc);

  auto* nut = app.add_subcommand("nu-tilde", "nu~(S): max of tau(T, S) over nilpotent T/S");
  nut->add_option("group", group, "simple group spec: alt:n, psl2:q or file:...")->required();
  nut->add_option("--method", method, "classes or mc")->check(CLI::IsMember({"classes", "mc"}));
  nut->add_option("--samples", samples, "Monte Carlo samples per subgroup");
  nut->add_option("--seed", common.seed, "seed for coset lifts and sampling");
  add_common(nut);
  add_budget(nut);

  auto* tau_cmd = app.add_subcommand("tau", "tau(T, S) for S <= T <= Aut S");
  tau_cmd->add_option("group", group, "pair spec; T defaults to the ambient group")->required();
  tau_cmd->add_option("--gen", extra_gens, "generators of T over S (repeatable)");
  tau_cmd->add_option("--seed", common.seed, "seed for coset lifts");
  add_common(tau_cmd);
  add_budget(tau_cmd);

  auto* pi = app.add_subcommand("pi", "fraction of (n1, n2) with N <= <n1 g1, n2 g2>");
  pi->add_option("group", group, "ambient group spec")->required();
  pi->add_option("--g1", g1, "first coset representative")->required();
  pi->add_option("--g2", g2, "second coset representative")->required();
  pi->add_option("--normal", normal, "normal subgroup spec");
  add_common(pi);
  add_budget(pi);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of nu or nu_{g1,g2}");
  mc->add_option("group", group, "group spec")->required();
  mc->add_option("--samples", samples, "number of sampled pairs")->check(CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 40));
  mc->add_option("--seed", common.seed, "seed");
  mc->add_option("--confidence", confidence, "interval level")->check(CLI::Range(0.5, 0.999999));
  mc->add_option("--g1", g1, "first coset representative (coset mode)");
  mc->add_option("--g2", g2, "second coset representative (coset mode)");
  mc->add_option("--normal", normal, "normal subgroup spec (coset mode)");
  add_common(mc);
  add_budget(mc);

  auto* ab = app.add_subcommand("alt-bound", "1 - pi_n - pi_{n-1}/n");
  ab->add_option("--pi-n", pi_n, "generation probability for Alt(n)")->required();
  ab->add_option("--pi-n-1", pi_n1, "generation probability for Alt(n-1)")->required();
  ab->add_option("--n", alt_n, "degree, at least 10")->required();
  add_common(ab);

  auto* vt = app.add_subcommand("verify-tables", "recompute the published tables");
  vt->add_option("--table", table, "1, 2, alt or all")->check(CLI::IsMember({"1", "2", "alt", "all"}));
  vt->add_option("--budget", verify.budget_seconds, "seconds per row before falling back to sampling")
      ->check(CLI::PositiveNumber);
  vt->add_option("--mc-samples", verify.mc_samples, "samples for the fallback check")
      ->check(CLI::Range(std::uint64_t{100}, std::uint64_t{1} << 40));
  vt->add_option("--seed", verify.seed, "seed");
  add_common(vt);

  auto* sc = app.add_subcommand("solvable-check", "nu > 1/12 implies solvable");
  sc->add_option("groups", groups, "group specs")->required();
  add_common(sc);
  add_budget(sc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }
  common.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;

  try {
    if (nu->parsed()) {
      auto g = build(parse_group_spec(group));
      const auto opts = common.engine();
      NuReport r = method == "mc" ? monte_carlo_nu(g, samples, common.seed, opts)
                                  : nu_exact(g, method == "full" ? Method::exact_full : Method::exact_classes, opts);
      print_report(out, r, common);
      return exit_ok;
    }
    if (nuc->parsed()) {
      auto ctx = detail::coset_context(group, normal, g1, g2);
      const auto opts = common.engine();
      print_report(out, method == "mc" ? monte_carlo_nu(ctx, samples, common.seed, opts) : nu_coset(ctx, opts), common);
      return exit_ok;
    }
    if (mc->parsed()) {
      const auto opts = common.engine();
      if (g1.empty() != g2.empty()) throw std::invalid_argument("--g1 and --g2 go together");
      NuReport r = g1.empty() ? monte_carlo_nu(build(parse_group_spec(group)), samples, common.seed, opts, confidence)
                              : monte_carlo_nu(detail::coset_context(group, normal, g1, g2), samples, common.seed, opts, confidence);
      print_report(out, r, common);
      return exit_ok;
    }
    if (pi->parsed()) {
      auto ctx = detail::coset_context(group, normal, g1, g2);
      const auto start = Clock::now();
      NuReport r;
      r.group = ctx.ambient.name() + " rel " + ctx.normal.name();
      r.order = ctx.ambient.order();
      r.value = pi_coset(ctx, common.engine());
      r.elapsed_ms = nilprob::detail::elapsed_ms(start);
      print_report(out, r, common);
      return exit_ok;
    }
    if (nut->parsed()) {
      auto pair = build_aut_pair(parse_group_spec(group));
      OuterQuotient oq(pair);
      const auto opts = common.engine();
      if (method == "mc") {
        auto est = monte_carlo_nu_tilde(oq, samples, common.seed, opts);
        est.best.group = pair.label;
        print_report(out, est.best, common);
        return exit_ok;
      }
      auto res = nu_tilde(oq, opts);
      NuReport r;
      r.group = pair.label;
      r.order = pair.socle.order();
      r.value = res.value;
      r.witness = res.witness;
      r.elapsed_ms = res.elapsed_ms;
      if (common.format == Format::json) {
        json j = report_json(r, common);
        j["outer_order"] = res.outer_order;
        j["pairs_agree"] = res.pairs_agree;
        j["skipped_non_nilpotent"] = res.skipped_non_nilpotent;
        j["skipped_not_2_generated"] = res.skipped_not_2_generated;
        json rows = json::array();
        for (const auto& row : res.rows) {
          rows.push_back({{"order", row.tau.subgroup_order},
                          {"index", row.tau.index},
                          {"conjugates", row.conjugates},
                          {"tau", fraction_json(row.tau.value)},
                          {"pairs_agree", row.tau.pairs_agree}});
        }
        j["subgroups"] = std::move(rows);
        out << j.dump(2) << '\n';
      } else {
        print_report(out, r, common);
        if (common.format == Format::text) {
          for (const auto& row : res.rows) {
            out << "  |T| = " << row.tau.subgroup_order << "  [T:S] = " << row.tau.index
                << "  tau = " << row.tau.value.to_string() << '\n';
          }
        }
      }
      return res.pairs_agree ? exit_ok : exit_mismatch;
    }
    if (tau_cmd->parsed()) {
      auto pair = build_aut_pair(parse_group_spec(group));
      auto gens = pair.socle.generators();
      for (const auto& text : extra_gens) gens.push_back(detail::parse_in(text, pair.ambient, "--gen"));
      FiniteGroup t = extra_gens.empty() ? pair.ambient : FiniteGroup(pair.ambient.degree(), gens, "T");
      auto res = tau(pair, t, common.engine());
      NuReport r;
      r.group = pair.label;
      r.order = res.subgroup_order;
      r.value = res.value;
      r.witness = nilprob::detail::witness_text(res.samples.front().rep1, res.samples.front().rep2,
                                                res.subgroup_order, res.index);
      r.elapsed_ms = res.elapsed_ms;
      if (common.format == Format::json) {
        json j = report_json(r, common);
        j["index"] = res.index;
        j["pairs_agree"] = res.pairs_agree;
        json s = json::array();
        for (const auto& smp : res.samples) {
          s.push_back({{"g1", to_cycle_string(smp.rep1)}, {"g2", to_cycle_string(smp.rep2)}, {"value", fraction_json(smp.value)}});
        }
        j["coset_pairs"] = std::move(s);
        out << j.dump(2) << '\n';
      } else {
        print_report(out, r, common);
        if (common.format == Format::text) {
          out << "  coset pairs agree: " << (res.pairs_agree ? "yes" : "no") << " (" << res.samples.size() << " checked)\n";
        }
      }
      return res.pairs_agree ? exit_ok : exit_mismatch;
    }
    if (ab->parsed()) {
      const auto v = alt_bound(ExactFraction::parse(pi_n), ExactFraction::parse(pi_n1), alt_n);
      if (common.format == Format::json) {
        out << json{{"n", alt_n}, {"value", fraction_json(v)}, {"decimal", decimal_string(v.to_double())}}.dump(2) << '\n';
      } else if (common.format == Format::csv) {
        print_csv_header(out);
        print_csv_row(out, "Alt(" + std::to_string(alt_n) + ")", "alt-bound", v, "ok");
      } else {
        out << v.to_string() << "  ~ " << decimal_string(v.to_double()) << '\n';
      }
      return exit_ok;
    }
    if (vt->parsed()) {
      verify.threads = common.threads;
      std::vector<std::string> which = table == "all" ? std::vector<std::string>{"1", "alt", "2"}
                                                      : std::vector<std::string>{table};
      std::vector<TableVerdict> verdicts;
      for (const auto& t : which) verdicts.push_back(verify_table(t, verify));
      print_tables(out, verdicts, common);
      if (has_mismatch(verdicts)) return exit_mismatch;
      for (const auto& t : verdicts) {
        for (const auto& r : t.rows) {
          if (r.status == "error") {
            err << "error: " << r.label << ": " << r.note << '\n';
            return exit_usage;
          }
        }
      }
      return exit_ok;
    }
    if (sc->parsed()) {
      bool ok = true;
      json arr = json::array();
      if (common.format == Format::csv) out << "group,num,den,above_1_12,solvable,consistent\n";
      for (const auto& spec : groups) {
        auto g = build(parse_group_spec(spec));
        auto v = solvability_threshold_check(g, common.engine());
        ok = ok && v.consistent;
        if (common.format == Format::json) {
          arr.push_back({{"group", g.name()}, {"order", g.order()}, {"value", fraction_json(v.nu)},
                         {"above_1_12", v.above_one_twelfth}, {"solvable", v.solvable}, {"consistent", v.consistent}});
        } else if (common.format == Format::csv) {
          out << csv_field(g.name()) << ',' << v.nu.numerator() << ',' << v.nu.denominator() << ','
              << v.above_one_twelfth << ',' << v.solvable << ',' << v.consistent << '\n';
        } else {
          out << g.name() << "  nu = " << v.nu.to_string() << "  solvable = " << (v.solvable ? "yes" : "no")
              << "  " << (v.consistent ? "consistent" : "VIOLATION") << '\n';
        }
      }
      if (common.format == Format::json) out << arr.dump(2) << '\n';
      return ok ? exit_ok : exit_mismatch;
    }
  } catch (const budget_exceeded& e) {
    err << "budget: " << e.what() << '\n';
    return exit_budget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace nilprob::cli

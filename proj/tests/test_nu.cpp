#include <catch_amalgamated.hpp>

#include "nilprob/nu.hpp"
#include "oracles.hpp"

using namespace nilprob;

namespace {
std::vector<Permutation> all_elements(const FiniteGroup& g) {
  std::vector<Permutation> out;
  for (index_type i = 0; i < g.order(); ++i) out.push_back(g.elements().element(i));
  return out;
}

ExactFraction frac(const char* s) { return ExactFraction::parse(s); }
}  // namespace

TEST_CASE("exact fractions") {
  CHECK(frac("6/8").to_string() == "3/4");
  CHECK(frac("-2/-4").to_string() == "1/2");
  CHECK(frac("5").to_string() == "5/1");
  CHECK(frac("1/3") + frac("1/6") == frac("1/2"));
  CHECK(frac("1/3") < frac("1/2"));
  CHECK(decimal_string(frac("3/56").to_double()) == "0.05357");
  CHECK_THROWS_AS(frac("1/0"), std::domain_error);
  CHECK_THROWS_AS(frac("a/b"), std::invalid_argument);
}

TEST_CASE("nu of small groups") {
  CHECK(nu_exact(symmetric_group(3)).value == frac("1/2"));
  CHECK(nu_exact(alternating_group(5)).value == frac("1/12"));
  CHECK(nu_exact(cyclic_group(6)).value == frac("1"));
  CHECK(nu_exact(symmetric_group(1)).value == frac("1"));
  CHECK(nu_exact(psl2(7)).value == frac("3/56"));
}

TEST_CASE("class reduction matches the full count and the oracle") {
  for (const auto& g : {symmetric_group(4), dihedral_group(5), alternating_group(5), psl2(7)}) {
    INFO(g.name());
    const auto full = nu_exact(g, Method::exact_full).value;
    CHECK(nu_exact(g, Method::exact_classes).value == full);
    if (g.order() <= 60) {
      const auto e = all_elements(g);
      CHECK(oracle::nu_pairs(e, e) == full);
    }
  }
}

TEST_CASE("worker count does not change counts") {
  auto g = psl2(11);
  EngineOptions one, four;
  one.threads = 1;
  four.threads = 4;
  CHECK(nu_exact(g, Method::exact_classes, one).favorable ==
        nu_exact(g, Method::exact_classes, four).favorable);
  auto a = monte_carlo_nu(g, 20000, 99, one);
  auto b = monte_carlo_nu(g, 20000, 99, four);
  CHECK(a.favorable == b.favorable);
  CHECK(monte_carlo_nu(g, 20000, 100, one).favorable != a.favorable);
}

TEST_CASE("coset counts against brute force") {
  auto pair = build_coset_pair(parse_group_spec("sym:5"));
  const auto odd = parse_cycles("(1 2)", 5);
  const auto even = parse_cycles("(1 2 3)", 5);
  const auto alt = all_elements(pair.socle);
  for (const auto& [g1, g2] : {std::pair{odd, odd}, std::pair{odd, even}, std::pair{even, even}}) {
    CosetContext ctx{pair.ambient, pair.socle, g1, g2};
    CHECK(nu_coset(ctx).value == oracle::nu_pairs(oracle::coset(alt, g1), oracle::coset(alt, g2)));
  }
  CosetContext ctx{pair.ambient, pair.socle, odd, even};
  std::uint64_t hits = 0;
  for (const auto& x : oracle::coset(alt, odd)) {
    for (const auto& y : oracle::coset(alt, even)) {
      hits += oracle::contains_all(oracle::closure({x, y}, 5), alt);
    }
  }
  CHECK(pi_coset(ctx) == ExactFraction(BigInt(hits), BigInt(3600)));
}

TEST_CASE("coset representatives must lie in the ambient group") {
  auto pair = build_coset_pair(parse_group_spec("pgl2:7"));
  CosetContext ctx{pair.ambient, pair.socle, Permutation::identity(8), parse_cycles("(1 2)", 8)};
  CHECK_THROWS_AS(nu_coset(ctx), group_error);
}

// tau averaged over every generating coset pair of T/S; equals tau when the
// value does not depend on the pair.
TEST_CASE("tau agrees with the average over all generating coset pairs") {
  for (const char* spec : {"alt:5", "alt:6", "psl2:8"}) {
    INFO(spec);
    auto pair = build_aut_pair(parse_group_spec(spec));
    OuterQuotient oq(pair);
    const auto& qt = oq.quotient().elements();
    std::vector<index_type> all(qt.size());
    std::iota(all.begin(), all.end(), index_type{0});
    std::uint64_t hits = 0, gen_pairs = 0;
    for (index_type c1 = 0; c1 < qt.size(); ++c1) {
      for (index_type c2 = 0; c2 < qt.size(); ++c2) {
        std::array<index_type, 2> gens{c1, c2};
        if (subgroup_closure(qt, gens).size() != qt.size()) continue;
        ++gen_pairs;
        hits += oq.counter().count(oq.lift(c1), oq.lift(c2), {});
      }
    }
    const auto n = oq.counter().normal_order();
    const ExactFraction averaged(BigInt(hits), BigInt(n) * n * gen_pairs);
    auto t = tau(pair);
    CHECK(t.pairs_agree);
    CHECK(t.value == averaged);
  }
}

TEST_CASE("nu tilde of small simple groups") {
  CHECK(nu_tilde(build_aut_pair(parse_group_spec("alt:5"))).value == frac("1/12"));
  auto r = nu_tilde(build_aut_pair(parse_group_spec("psl2:8")));
  CHECK(r.value == frac("1/56"));
  CHECK(r.witness_order == 504);
  CHECK(r.rows.size() == 2);
  CHECK(r.pairs_agree);
  // Alt(6): the outer quotient C2 x C2 has five subgroups, all nilpotent
  auto a6 = nu_tilde(build_aut_pair(parse_group_spec("alt:6")));
  CHECK(a6.rows.size() == 5);
  CHECK(a6.skipped_non_nilpotent == 0);
  CHECK(a6.value == frac("1/36"));
}

TEST_CASE("tau of an intermediate subgroup") {
  auto pair = build_aut_pair(parse_group_spec("alt:6"));
  // PGL(2,9) is generated over PSL(2,9) by a non-square diagonal element
  auto pgl = pgl2(9);
  auto t = tau(pair, FiniteGroup(10, pgl.generators()));
  CHECK(t.subgroup_order == 720);
  CHECK(t.pairs_agree);
  CHECK_THROWS_AS(tau(pair, FiniteGroup(10, {parse_cycles("(1 2)", 10)})), group_error);
}

TEST_CASE("wilson intervals") {
  auto ci = wilson_interval(50, 100);
  CHECK(ci.lo == Catch::Approx(0.4038).epsilon(1e-3));
  CHECK(ci.hi == Catch::Approx(0.5962).epsilon(1e-3));
  auto zero = wilson_interval(0, 1000, 0.99);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi > 0.0);
  CHECK(wilson_interval(10, 100, 0.90).hi < wilson_interval(10, 100, 0.95).hi);
}

TEST_CASE("monte carlo estimate brackets the exact value") {
  auto g = alternating_group(5);
  auto r = monte_carlo_nu(g, 200000, 7, {}, 0.99);
  REQUIRE(r.ci);
  CHECK(r.ci->contains(1.0 / 12));
  CHECK_THROWS_AS(monte_carlo_nu(g, 10, 1), std::invalid_argument);
  auto pair = build_coset_pair(parse_group_spec("sym:5"));
  auto c = monte_carlo_nu(CosetContext{pair.ambient, pair.socle, parse_cycles("(1 2)", 5),
                                       parse_cycles("(1 2)", 5)},
                          100000, 3, {}, 0.99);
  CHECK(c.ci->contains(1.0 / 12));
}

TEST_CASE("alt bound") {
  CHECK(alt_bound(frac("15403/18144"), frac("15403/18144"), 10) == frac("12007/181440"));
  CHECK(alt_bound(frac("1"), frac("1"), 10) == frac("-1/10"));
  CHECK(alt_bound(frac("0"), frac("0"), 12) == frac("1"));
  CHECK_THROWS_AS(alt_bound(frac("1/2"), frac("1/2"), 9), std::invalid_argument);
  CHECK_THROWS_AS(alt_bound(frac("3/2"), frac("1/2"), 10), std::invalid_argument);
}

TEST_CASE("budgets") {
  EngineOptions tight;
  tight.pair_budget = 1000;
  CHECK_THROWS_AS(nu_exact(alternating_group(6), Method::exact_full, tight), budget_exceeded);
  EngineOptions late;
  late.deadline = Clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(nu_exact(alternating_group(6), Method::exact_classes, late), budget_exceeded);
}

TEST_CASE("solvability threshold") {
  for (const char* spec : {"sym:4", "alt:5", "dih:7", "psl2:7", "cyc:9"}) {
    auto v = solvability_threshold_check(build(parse_group_spec(spec)));
    CHECK(v.consistent);
  }
  auto s4 = solvability_threshold_check(symmetric_group(4));
  CHECK(s4.above_one_twelfth);
  CHECK(s4.solvable);
  auto a5 = solvability_threshold_check(alternating_group(5));
  CHECK_FALSE(a5.above_one_twelfth);
}

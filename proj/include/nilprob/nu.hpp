#pragma once

// Nilpotency probabilities.
//
//   nu(G)              pairs (x, y) in G^2 with <x, y> nilpotent, over |G|^2
//   nu_{g1,g2}(G, N)   pairs (n1, n2) in N^2 with <n1 g1, n2 g2> nilpotent,
//                      over |N|^2
//   tau(T, S)          nu_{g1,g2}(T, S) for any g1, g2 with <g1, g2> S = T
//   nu~(S)             max of nu_{a1,a2}(Aut S, S), i.e. the max of tau(T, S)
//                      over S <= T <= Aut S with T/S nilpotent
//
// Every count is class reduced: the first element of a pair runs over
// representatives of conjugation orbits (weighted by orbit size), the second
// over the whole set.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <numeric>
#include <set>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "nilprob/catalog.hpp"
#include "nilprob/fraction.hpp"
#include "nilprob/group.hpp"
#include "nilprob/nilpotency.hpp"
#include "nilprob/structure.hpp"

namespace nilprob {

enum class Method { exact_full, exact_classes, monte_carlo };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::exact_full: return "exact-full";
    case Method::exact_classes: return "exact-classes";
    case Method::monte_carlo: return "monte-carlo";
  }
  return "?";
}

using Clock = std::chrono::steady_clock;

struct EngineOptions {
  std::uint64_t pair_budget = 100'000'000;
  unsigned threads = 0;  // 0: one per hardware thread
  std::optional<Clock::time_point> deadline;
  std::uint64_t seed = 1;  // coset lifts in tau / nu_tilde

  unsigned worker_count() const {
    if (threads) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

struct Interval {
  double lo = 0, hi = 0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct NuReport {
  std::string group;
  std::uint64_t order = 0;
  Method method = Method::exact_classes;
  ExactFraction value;            // exact value, or favorable/samples for monte-carlo
  std::uint64_t favorable = 0;
  std::uint64_t total = 0;        // |G|^2, |N|^2 or the sample count
  std::optional<Interval> ci;     // monte-carlo only
  double confidence = 0.95;
  double elapsed_ms = 0;
  std::string witness;
};

struct CosetContext {
  FiniteGroup ambient;
  FiniteGroup normal;
  Permutation rep1;
  Permutation rep2;
};

namespace detail {

struct WeightedRep {
  index_type element;
  std::uint64_t weight;
};

inline double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Runs `work(item)` for item in [0, items) on the configured workers; checks
/// the deadline between items.
template <class MakeWorker>
void parallel_for(std::size_t items, const EngineOptions& opts, MakeWorker make_worker) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    try {
      auto work = make_worker();
      while (!stop.load(std::memory_order_relaxed)) {
        const std::size_t item = next.fetch_add(1);
        if (item >= items) break;
        if (opts.deadline && Clock::now() > *opts.deadline) {
          throw budget_exceeded("time budget exceeded");
        }
        work(item);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      stop = true;
    }
  };
  const unsigned n = std::min<std::size_t>(opts.worker_count(), std::max<std::size_t>(items, 1));
  if (n <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

/// sum over reps x of weight(x) * #{y in inner : <x, y> nilpotent}
inline std::uint64_t count_nilpotent_pairs(const FiniteGroup& g, std::span<const WeightedRep> outer,
                                           std::span<const index_type> inner,
                                           const EngineOptions& opts) {
  g.powers();  // build shared tables before the workers start
  constexpr std::size_t chunk = 1 << 14;
  const std::size_t chunks_per_rep = (inner.size() + chunk - 1) / chunk;
  const std::size_t items = outer.size() * chunks_per_rep;
  std::atomic<std::uint64_t> total{0};
  parallel_for(items, opts, [&] {
    return [&, test = std::make_shared<PairNilpotencyTest>(g)](std::size_t item) {
      const auto& rep = outer[item / chunks_per_rep];
      const std::size_t begin = (item % chunks_per_rep) * chunk;
      const std::size_t end = std::min(inner.size(), begin + chunk);
      std::uint64_t c = 0;
      for (std::size_t k = begin; k < end; ++k) c += (*test)(rep.element, inner[k]) ? 1 : 0;
      total += c * rep.weight;
    };
  });
  return total.load();
}

inline void check_budget(std::uint64_t cost, const EngineOptions& opts, const std::string& what) {
  if (cost > opts.pair_budget) {
    throw budget_exceeded(what + " needs " + std::to_string(cost) +
                          " pair evaluations, budget is " + std::to_string(opts.pair_budget) +
                          " (try monte-carlo)");
  }
}

inline std::uint64_t sq(std::uint64_t x) { return x * x; }

}  // namespace detail

// ---------------------------------------------------------------------------
// nu(G)

inline NuReport nu_exact(const FiniteGroup& g, Method method = Method::exact_classes,
                         const EngineOptions& opts = {}) {
  const auto start = Clock::now();
  const auto& table = g.elements();
  const std::uint64_t n = table.size();
  std::vector<index_type> all(n);
  std::iota(all.begin(), all.end(), index_type{0});
  std::vector<detail::WeightedRep> outer;
  if (method == Method::exact_full) {
    detail::check_budget(detail::sq(n), opts, "exact-full");
    for (index_type i = 0; i < n; ++i) outer.push_back({i, 1});
  } else if (method == Method::exact_classes) {
    const auto& cp = g.classes();
    detail::check_budget(cp.classes.size() * n, opts, "exact-classes");
    for (const auto& c : cp.classes) outer.push_back({c.representative, c.size});
  } else {
    throw std::invalid_argument("nu_exact: use monte_carlo_nu for sampling");
  }
  NuReport r;
  r.group = g.name();
  r.order = n;
  r.method = method;
  r.favorable = detail::count_nilpotent_pairs(g, outer, all, opts);
  r.total = detail::sq(n);
  r.value = ExactFraction(BigInt(r.favorable), BigInt(r.total));
  r.elapsed_ms = detail::elapsed_ms(start);
  return r;
}

// ---------------------------------------------------------------------------
// coset-relative counts

/// N inside an enumerated ambient group, with what the coset counts need.
class CosetCounter {
 public:
  CosetCounter(FiniteGroup ambient, const FiniteGroup& normal)
      : ambient_(std::move(ambient)) {
    if (!is_normal(ambient_, normal)) throw group_error("subgroup is not normal");
    members_ = members_in(ambient_, normal.generators());
    for (const auto& x : normal.generators()) gens_.push_back(ambient_.elements().find(x));
  }

  const FiniteGroup& ambient() const { return ambient_; }
  std::uint64_t normal_order() const { return members_.size(); }
  std::span<const index_type> normal_members() const { return members_; }

  std::vector<ConjugacyClass> orbits(index_type rep) const {
    return detail::coset_orbits(ambient_, members_, gens_, rep);
  }

  std::vector<index_type> coset(index_type rep) const {
    std::vector<index_type> out;
    out.reserve(members_.size());
    std::vector<point_type> scratch;
    for (index_type m : members_) out.push_back(ambient_.elements().product(m, rep, scratch));
    return out;
  }

  /// |N_{g1,g2}(G, N)|
  std::uint64_t count(index_type rep1, index_type rep2, const EngineOptions& opts) const {
    auto orb = orbits(rep1);
    detail::check_budget(orb.size() * members_.size(), opts, "exact-classes coset count");
    std::vector<detail::WeightedRep> outer;
    for (const auto& o : orb) outer.push_back({o.representative, o.size});
    auto inner = coset(rep2);
    return detail::count_nilpotent_pairs(ambient_, outer, inner, opts);
  }

  ExactFraction nu(index_type rep1, index_type rep2, const EngineOptions& opts) const {
    return ExactFraction(BigInt(count(rep1, rep2, opts)), BigInt(detail::sq(normal_order())));
  }

  index_type index_of(const Permutation& p) const {
    const index_type i = ambient_.elements().find(p);
    if (i == npos) throw group_error("coset representative " + to_cycle_string(p) + " is not in the ambient group");
    return i;
  }

 private:
  FiniteGroup ambient_;
  std::vector<index_type> members_;
  std::vector<index_type> gens_;
};

inline NuReport nu_coset(const CosetContext& ctx, const EngineOptions& opts = {}) {
  const auto start = Clock::now();
  CosetCounter counter(ctx.ambient, ctx.normal);
  NuReport r;
  r.group = ctx.ambient.name() + " rel " + ctx.normal.name() + " [" + to_cycle_string(ctx.rep1) +
            ", " + to_cycle_string(ctx.rep2) + "]";
  r.order = ctx.ambient.order();
  r.method = Method::exact_classes;
  r.favorable = counter.count(counter.index_of(ctx.rep1), counter.index_of(ctx.rep2), opts);
  r.total = detail::sq(counter.normal_order());
  r.value = ExactFraction(BigInt(r.favorable), BigInt(r.total));
  r.elapsed_ms = detail::elapsed_ms(start);
  return r;
}

/// Fraction of (n1, n2) in N^2 with N <= <n1 g1, n2 g2>.
inline ExactFraction pi_coset(const CosetContext& ctx, const EngineOptions& opts = {}) {
  CosetCounter counter(ctx.ambient, ctx.normal);
  const auto& table = ctx.ambient.elements();
  const index_type r1 = counter.index_of(ctx.rep1);
  const index_type r2 = counter.index_of(ctx.rep2);
  auto orb = counter.orbits(r1);
  const std::uint64_t n = counter.normal_order();
  detail::check_budget(orb.size() * n * (table.size() / 100 + 1), opts, "pi_coset closures");
  auto inner = counter.coset(r2);
  std::vector<index_type> ngens;
  for (const auto& x : ctx.normal.generators()) ngens.push_back(table.find(x));
  std::vector<detail::WeightedRep> outer;
  for (const auto& o : orb) outer.push_back({o.representative, o.size});
  ctx.ambient.powers();
  std::atomic<std::uint64_t> total{0};
  detail::parallel_for(outer.size(), opts, [&] {
    return [&, test = std::make_shared<PairNilpotencyTest>(ctx.ambient)](std::size_t item) {
      std::uint64_t c = 0;
      for (index_type y : inner) {
        const index_type x = outer[item].element;
        if ((*test)(x, y)) continue;  // nilpotent subgroups cannot contain a simple N
        std::array<index_type, 2> gens{x, y};
        auto sub = subgroup_closure(table, gens);
        if (sub.size() < n) continue;
        bool all = true;
        for (index_type s : ngens) all = all && std::binary_search(sub.begin(), sub.end(), s);
        if (all) ++c;
      }
      total += c * outer[item].weight;
    };
  });
  return ExactFraction(BigInt(total.load()), BigInt(detail::sq(n)));
}

// ---------------------------------------------------------------------------
// tau and nu~

/// The outer quotient A/S of an almost simple pair, with lifts back to A.
class OuterQuotient {
 public:
  explicit OuterQuotient(const AlmostSimplePair& pair)
      : counter_(pair.ambient, pair.socle), cosets_(coset_space(pair.ambient, pair.socle)) {
    std::vector<Permutation> gens;
    for (index_type x : pair.ambient.generator_indices()) gens.push_back(image(x));
    quotient_.emplace(cosets_.index(), std::move(gens), "outer quotient");
    quotient_->elements();
  }

  const CosetCounter& counter() const { return counter_; }
  const FiniteGroup& quotient() const { return *quotient_; }
  const CosetSpace& cosets() const { return cosets_; }

  /// The image in Q of an element of A.
  Permutation image(index_type x) const { return cosets_.action(counter_.ambient().elements(), x); }

  index_type quotient_index(index_type x) const { return quotient_->elements().find(image(x)); }

  /// Coset of A (as a coset number) that a Q element stands for.
  index_type coset_of(index_type q_element) const {
    return quotient_->elements()[q_element][0];
  }

  /// Lift of a Q element: the least element of its coset, or a random member
  /// of the coset when an RNG is supplied.
  index_type lift(index_type q_element, std::mt19937_64* rng = nullptr) const {
    const index_type rep = cosets_.representative[coset_of(q_element)];
    if (!rng) return rep;
    auto members = counter_.normal_members();
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    std::vector<point_type> scratch;
    return counter_.ambient().elements().product(members[pick(*rng)], rep, scratch);
  }

 private:
  CosetCounter counter_;
  CosetSpace cosets_;
  std::optional<FiniteGroup> quotient_;
};

/// One evaluation of nu_{g1,g2}(T, S) from a generating coset pair.
struct TauSample {
  Permutation rep1, rep2;
  ExactFraction value;
};

struct TauResult {
  ExactFraction value;
  std::uint64_t subgroup_order = 0;  // |T|
  std::uint64_t index = 0;           // [T : S]
  std::vector<TauSample> samples;    // first sample gives `value`
  bool pairs_agree = true;        // all samples agree
  double elapsed_ms = 0;
};

namespace detail {

/// Ordered pairs of elements of `sub` (indices into Q) generating it.
inline std::vector<std::pair<index_type, index_type>> generating_pairs(
    const ElementTable& qtable, const std::vector<index_type>& sub) {
  std::vector<std::pair<index_type, index_type>> out;
  for (index_type a : sub) {
    for (index_type b : sub) {
      std::array<index_type, 2> gens{a, b};
      if (subgroup_closure(qtable, gens).size() == sub.size()) out.emplace_back(a, b);
    }
  }
  return out;
}

inline TauResult tau_for_quotient_subgroup(const OuterQuotient& oq,
                                           const std::vector<index_type>& sub,
                                           std::size_t coset_pairs,
                                           const EngineOptions& opts) {
  const auto start = Clock::now();
  const auto& qtable = oq.quotient().elements();
  auto pairs = generating_pairs(qtable, sub);
  if (pairs.empty()) throw group_error("T/S is not 2-generated");
  TauResult res;
  res.index = sub.size();
  res.subgroup_order = sub.size() * oq.counter().normal_order();
  // distinct coset pairs spread over the list; the first uses least lifts
  std::vector<std::size_t> picks;
  const std::size_t want = std::min(coset_pairs, pairs.size());
  for (std::size_t k = 0; k < want; ++k) picks.push_back(k * pairs.size() / want);
  std::mt19937_64 rng(opts.seed);
  const auto& table = oq.counter().ambient().elements();
  for (std::size_t k = 0; k < picks.size(); ++k) {
    const auto [c1, c2] = pairs[picks[k]];
    const index_type g1 = oq.lift(c1, k == 0 ? nullptr : &rng);
    const index_type g2 = oq.lift(c2, k == 0 ? nullptr : &rng);
    auto v = oq.counter().nu(g1, g2, opts);
    res.samples.push_back({table.element(g1), table.element(g2), v});
  }
  // a trivial quotient has a single coset pair; lift it a second way
  if (pairs.size() == 1 && coset_pairs > 1) {
    const index_type g1 = oq.lift(pairs[0].first, &rng);
    const index_type g2 = oq.lift(pairs[0].second, &rng);
    res.samples.push_back({table.element(g1), table.element(g2), oq.counter().nu(g1, g2, opts)});
  }
  res.value = res.samples.front().value;
  for (const auto& s : res.samples) res.pairs_agree = res.pairs_agree && s.value == res.value;
  res.elapsed_ms = elapsed_ms(start);
  return res;
}

}  // namespace detail

/// tau(T, S) for S <= T <= A.  T is given by generators inside the ambient
/// group of `pair`.  `coset_pairs` generating coset pairs are evaluated.
inline TauResult tau(const AlmostSimplePair& pair, const FiniteGroup& subgroup,
                     const EngineOptions& opts = {}, std::size_t coset_pairs = 3) {
  OuterQuotient oq(pair);
  const auto& table = pair.ambient.elements();
  std::vector<index_type> qgens;
  for (const auto& g : subgroup.generators()) {
    const index_type i = table.find(g);
    if (i == npos) throw group_error("subgroup generator outside the ambient group");
    qgens.push_back(oq.quotient_index(i));
  }
  for (const auto& s : pair.socle.generators()) {
    if (!subgroup.contains(s)) throw group_error("subgroup does not contain the socle");
  }
  auto sub = subgroup_closure(oq.quotient().elements(), qgens);
  return detail::tau_for_quotient_subgroup(oq, sub, coset_pairs, opts);
}

inline TauResult tau(const AlmostSimplePair& pair, const EngineOptions& opts = {},
                     std::size_t coset_pairs = 3) {
  return tau(pair, pair.ambient, opts, coset_pairs);
}

struct TauRow {
  std::vector<index_type> quotient_subgroup;  // indices into the outer quotient
  std::vector<Permutation> generators;        // coset generators of T over S
  std::uint64_t conjugates = 1;               // size of the class of T in A
  TauResult tau;
};

struct NuTildeResult {
  ExactFraction value;
  std::string witness;
  std::uint64_t witness_order = 0;
  std::vector<TauRow> rows;             // one per conjugacy class of nilpotent T/S
  std::size_t skipped_non_nilpotent = 0;
  std::size_t skipped_not_2_generated = 0;
  bool pairs_agree = true;
  std::uint64_t outer_order = 0;
  double elapsed_ms = 0;
};

/// Subgroups T/S of the outer quotient that are nilpotent and 2-generated, one
/// per conjugacy class.
struct OuterCandidates {
  struct Class {
    std::vector<index_type> members;  // indices into the outer quotient
    std::uint64_t conjugates = 1;
  };
  std::vector<Class> classes;
  std::size_t skipped_non_nilpotent = 0;
  std::size_t skipped_not_2_generated = 0;
};

inline OuterCandidates nilpotent_outer_subgroups(const OuterQuotient& oq) {
  const auto& q = oq.quotient();
  const auto& qtable = q.elements();
  if (qtable.size() > 200) throw budget_exceeded("outer quotient larger than 200");
  auto subs = subgroups_of_small_group(q);

  std::vector<std::vector<point_type>> qinv;
  for (index_type x = 0; x < qtable.size(); ++x) qinv.push_back(detail::inverse_images(qtable[x]));
  std::set<std::vector<index_type>> seen;
  std::vector<point_type> scratch;
  OuterCandidates out;
  for (const auto& h : subs) {
    if (seen.count(h)) continue;
    std::set<std::vector<index_type>> cls;
    for (index_type x = 0; x < qtable.size(); ++x) {
      std::vector<index_type> c;
      for (index_type m : h) c.push_back(qtable.conjugate(m, x, qinv[x], scratch));
      std::sort(c.begin(), c.end());
      cls.insert(c);
    }
    seen.insert(cls.begin(), cls.end());
    if (!is_nilpotent_subgroup(materialize(qtable, h))) {
      ++out.skipped_non_nilpotent;
    } else if (detail::generating_pairs(qtable, h).empty()) {
      ++out.skipped_not_2_generated;
    } else {
      out.classes.push_back({h, cls.size()});
    }
  }
  return out;
}

namespace detail {

inline std::string witness_text(const Permutation& g1, const Permutation& g2,
                                std::uint64_t order, std::uint64_t index) {
  return "T = <S, " + to_cycle_string(g1) + ", " + to_cycle_string(g2) + ">, |T| = " +
         std::to_string(order) + ", [T:S] = " + std::to_string(index);
}

}  // namespace detail

inline NuTildeResult nu_tilde(const OuterQuotient& oq, const EngineOptions& opts = {},
                              std::size_t coset_pairs = 3) {
  const auto start = Clock::now();
  auto candidates = nilpotent_outer_subgroups(oq);
  NuTildeResult res;
  res.outer_order = oq.quotient().order();
  res.skipped_non_nilpotent = candidates.skipped_non_nilpotent;
  res.skipped_not_2_generated = candidates.skipped_not_2_generated;
  bool have = false;
  std::pair<std::uint64_t, std::vector<Permutation>> best_key;
  for (const auto& c : candidates.classes) {
    TauRow row;
    row.quotient_subgroup = c.members;
    row.conjugates = c.conjugates;
    row.tau = detail::tau_for_quotient_subgroup(oq, c.members, coset_pairs, opts);
    row.generators = {row.tau.samples.front().rep1, row.tau.samples.front().rep2};
    res.pairs_agree = res.pairs_agree && row.tau.pairs_agree;
    // ties go to the smaller T, then to the lexicographically smaller generators
    std::pair<std::uint64_t, std::vector<Permutation>> key{row.tau.subgroup_order, row.generators};
    if (!have || row.tau.value > res.value || (row.tau.value == res.value && key < best_key)) {
      have = true;
      res.value = row.tau.value;
      best_key = key;
      res.witness_order = row.tau.subgroup_order;
      res.witness = detail::witness_text(row.generators[0], row.generators[1],
                                         row.tau.subgroup_order, row.tau.index);
    }
    res.rows.push_back(std::move(row));
  }
  res.elapsed_ms = detail::elapsed_ms(start);
  return res;
}

inline NuTildeResult nu_tilde(const AlmostSimplePair& pair, const EngineOptions& opts = {},
                              std::size_t coset_pairs = 3) {
  return nu_tilde(OuterQuotient(pair), opts, coset_pairs);
}

// ---------------------------------------------------------------------------
// sampling

/// Wilson score interval for k successes in n trials.
inline Interval wilson_interval(std::uint64_t k, std::uint64_t n, double confidence = 0.95) {
  if (n == 0) return {0, 1};
  // two-sided normal quantile
  double z;
  if (std::abs(confidence - 0.95) < 1e-12) {
    z = 1.959963984540054;
  } else if (std::abs(confidence - 0.99) < 1e-12) {
    z = 2.5758293035489004;
  } else {
    // Acklam-free bisection on erfc
    double lo = 0, hi = 10;
    for (int i = 0; i < 200; ++i) {
      double mid = (lo + hi) / 2;
      (std::erfc(mid / std::sqrt(2.0)) > 1 - confidence ? lo : hi) = mid;
    }
    z = (lo + hi) / 2;
  }
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace detail {

inline constexpr std::uint64_t mc_batch = 4096;

/// Substream for one batch; independent of how batches are spread over workers.
inline std::mt19937_64 batch_rng(std::uint64_t seed, std::uint64_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
  return std::mt19937_64(seq);
}

inline std::uint64_t sample_pairs(const FiniteGroup& g, std::span<const index_type> first,
                                  std::span<const index_type> second, std::uint64_t samples,
                                  std::uint64_t seed, const EngineOptions& opts) {
  g.powers();
  const std::uint64_t batches = (samples + mc_batch - 1) / mc_batch;
  std::atomic<std::uint64_t> total{0};
  parallel_for(batches, opts, [&] {
    return [&, test = std::make_shared<PairNilpotencyTest>(g)](std::size_t b) {
      auto rng = batch_rng(seed, b);
      std::uniform_int_distribution<std::size_t> d1(0, first.size() - 1), d2(0, second.size() - 1);
      const std::uint64_t n = std::min(mc_batch, samples - b * mc_batch);
      std::uint64_t c = 0;
      for (std::uint64_t s = 0; s < n; ++s) {
        const index_type x = first[d1(rng)];
        const index_type y = second[d2(rng)];
        c += (*test)(x, y) ? 1 : 0;
      }
      total += c;
    };
  });
  return total.load();
}

inline NuReport mc_report(std::string group, std::uint64_t order, std::uint64_t favorable,
                          std::uint64_t samples, double confidence, Clock::time_point start) {
  NuReport r;
  r.group = std::move(group);
  r.order = order;
  r.method = Method::monte_carlo;
  r.favorable = favorable;
  r.total = samples;
  r.value = ExactFraction(BigInt(favorable), BigInt(samples));
  r.confidence = confidence;
  r.ci = wilson_interval(favorable, samples, confidence);
  r.elapsed_ms = elapsed_ms(start);
  return r;
}

}  // namespace detail

/// Frequency of nilpotent pairs among `samples` uniform pairs from G^2.
inline NuReport monte_carlo_nu(const FiniteGroup& g, std::uint64_t samples, std::uint64_t seed,
                               const EngineOptions& opts = {}, double confidence = 0.95) {
  if (samples < 100) throw std::invalid_argument("monte_carlo_nu: need at least 100 samples");
  const auto start = Clock::now();
  std::vector<index_type> all(g.order());
  std::iota(all.begin(), all.end(), index_type{0});
  auto fav = detail::sample_pairs(g, all, all, samples, seed, opts);
  return detail::mc_report(g.name(), g.order(), fav, samples, confidence, start);
}

/// Frequency of nilpotent <n1 g1, n2 g2> among uniform (n1, n2) in N^2.
inline NuReport monte_carlo_nu(const CosetContext& ctx, std::uint64_t samples, std::uint64_t seed,
                               const EngineOptions& opts = {}, double confidence = 0.95) {
  if (samples < 100) throw std::invalid_argument("monte_carlo_nu: need at least 100 samples");
  const auto start = Clock::now();
  CosetCounter counter(ctx.ambient, ctx.normal);
  auto first = counter.coset(counter.index_of(ctx.rep1));
  auto second = counter.coset(counter.index_of(ctx.rep2));
  auto fav = detail::sample_pairs(ctx.ambient, first, second, samples, seed, opts);
  return detail::mc_report(ctx.ambient.name() + " rel " + ctx.normal.name(), ctx.ambient.order(),
                           fav, samples, confidence, start);
}

/// Sampled tau(T, S) for T/S given as a subgroup of the outer quotient (all of
/// it when `quotient_subgroup` is empty).
inline NuReport monte_carlo_tau(const OuterQuotient& oq, std::vector<index_type> quotient_subgroup,
                                std::uint64_t samples, std::uint64_t seed,
                                const EngineOptions& opts = {}, double confidence = 0.95) {
  if (samples < 100) throw std::invalid_argument("monte_carlo_tau: need at least 100 samples");
  const auto start = Clock::now();
  const auto& qtable = oq.quotient().elements();
  if (quotient_subgroup.empty()) {
    quotient_subgroup.resize(qtable.size());
    std::iota(quotient_subgroup.begin(), quotient_subgroup.end(), index_type{0});
  }
  const auto pairs = detail::generating_pairs(qtable, quotient_subgroup);
  if (pairs.empty()) throw group_error("T/S is not 2-generated");
  const auto& counter = oq.counter();
  const auto& ambient = counter.ambient();
  const index_type g1 = oq.lift(pairs.front().first);
  const index_type g2 = oq.lift(pairs.front().second);
  auto first = counter.coset(g1);
  auto second = counter.coset(g2);
  auto fav = detail::sample_pairs(ambient, first, second, samples, seed, opts);
  auto r = detail::mc_report(ambient.name(), ambient.order(), fav, samples, confidence, start);
  r.witness = detail::witness_text(ambient.elements().element(g1), ambient.elements().element(g2),
                                   quotient_subgroup.size() * counter.normal_order(),
                                   quotient_subgroup.size());
  return r;
}

/// Sampled stand-in for nu~: tau(T, S) is estimated for every candidate T and
/// the largest estimate is kept.
struct NuTildeEstimate {
  NuReport best;
  std::vector<NuReport> rows;
};

inline NuTildeEstimate monte_carlo_nu_tilde(const OuterQuotient& oq, std::uint64_t samples,
                                            std::uint64_t seed, const EngineOptions& opts = {},
                                            double confidence = 0.95) {
  NuTildeEstimate est;
  for (const auto& c : nilpotent_outer_subgroups(oq).classes) {
    auto r = monte_carlo_tau(oq, c.members, samples, seed, opts, confidence);
    if (est.rows.empty() || r.value > est.best.value) est.best = r;
    est.rows.push_back(std::move(r));
  }
  return est;
}

// ---------------------------------------------------------------------------
// bounds and consistency checks

/// 1 - pi_n - pi_{n-1}/n; not clamped.
inline ExactFraction alt_bound(const ExactFraction& pi_n, const ExactFraction& pi_n_minus_1,
                               std::int64_t n) {
  if (n < 10) throw std::invalid_argument("alt_bound: n must be at least 10");
  for (const auto* p : {&pi_n, &pi_n_minus_1}) {
    if (*p < ExactFraction(0) || *p > ExactFraction(1)) {
      throw std::invalid_argument("alt_bound: probabilities must lie in [0, 1]");
    }
  }
  return ExactFraction(1) - pi_n - pi_n_minus_1 / ExactFraction(n);
}

struct ThresholdVerdict {
  ExactFraction nu;
  bool above_one_twelfth = false;
  bool solvable = false;
  bool consistent = true;  // nu > 1/12 implies solvable
};

inline ThresholdVerdict solvability_threshold_check(const FiniteGroup& g,
                                                    const EngineOptions& opts = {}) {
  ThresholdVerdict v;
  v.nu = nu_exact(g, Method::exact_classes, opts).value;
  v.above_one_twelfth = v.nu > ExactFraction(1, 12);
  v.solvable = is_solvable(g);
  v.consistent = !v.above_one_twelfth || v.solvable;
  return v;
}

}  // namespace nilprob

#pragma once

// Nilpotency of two-generator subgroups without enumerating them.
//
// Write x = prod_p x_p and y = prod_p y_p for the prime-power parts.  Then
// <x, y> is nilpotent iff
//   (a) x_p commutes with y_q for all primes p != q, and
//   (b) <x_p, y_p> is a p-group for every prime p.
// Under (a) the subgroups <x_p, y_p> commute elementwise, so <x, y> lies in
// their direct product; conversely both conditions hold inside the Sylow
// decomposition of a nilpotent group.  Condition (b) is usually settled by
// x_p and y_p commuting; otherwise a bounded closure decides it.

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nilprob/group.hpp"
#include "nilprob/numtheory.hpp"
#include "nilprob/perm.hpp"

namespace nilprob {

namespace detail {

template <class Ops>
bool nilpotent_pair_criterion(Ops& ops, typename Ops::element x, typename Ops::element y) {
  if (ops.commute(x, y)) return true;
  auto& px = ops.parts_x(x);
  auto& py = ops.parts_y(y);
  for (const auto& [p, xp] : px) {
    for (const auto& [q, yq] : py) {
      if (p != q && !ops.commute(xp, yq)) return false;
    }
  }
  for (const auto& [p, xp] : px) {
    for (const auto& [q, yq] : py) {
      if (p == q && !ops.commute(xp, yq) && !ops.generates_p_group(xp, yq, p)) return false;
    }
  }
  return true;
}

struct PermutationOps {
  using element = Permutation;
  std::vector<std::pair<std::uint64_t, Permutation>> bx, by;

  static bool commute(const Permutation& a, const Permutation& b) {
    return compose(a, b) == compose(b, a);
  }

  static void fill(const Permutation& x, std::vector<std::pair<std::uint64_t, Permutation>>& out) {
    out.clear();
    const auto ord = element_order(x);
    for (auto p : prime_divisors(ord)) out.emplace_back(p, power(x, prime_power_exponent(ord, p)));
  }

  const auto& parts_x(const Permutation& x) {
    fill(x, bx);
    return bx;
  }
  const auto& parts_y(const Permutation& y) {
    fill(y, by);
    return by;
  }

  static bool generates_p_group(const Permutation& a, const Permutation& b, std::uint64_t p) {
    std::unordered_set<Permutation> seen{Permutation::identity(a.degree())};
    std::vector<Permutation> queue{Permutation::identity(a.degree())};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const Permutation* g : {&a, &b}) {
        Permutation h = compose(queue[head], *g);
        if (seen.insert(h).second) {
          if (!is_power_of(element_order(h), p)) return false;
          queue.push_back(std::move(h));
        }
      }
    }
    return true;
  }
};

}  // namespace detail

/// True iff <x, y> is nilpotent.
inline bool is_nilpotent_pair(const Permutation& x, const Permutation& y) {
  if (x.degree() != y.degree()) throw degree_mismatch(x.degree(), y.degree());
  detail::PermutationOps ops;
  return detail::nilpotent_pair_criterion(ops, x, y);
}

/// The same test on element indices of an enumerated group, using its power
/// map.  Holds scratch state: use one instance per thread.
class PairNilpotencyTest {
 public:
  explicit PairNilpotencyTest(const FiniteGroup& group)
      : table_(&group.elements()), powers_(&group.powers()), visited_(table_->size(), 0) {
    for (auto p : powers_->primes) sylow_.push_back(prime_part(table_->size(), p));
  }

  using element = index_type;

  bool operator()(index_type x, index_type y) {
    ++pairs_tested_;
    return detail::nilpotent_pair_criterion(*this, x, y);
  }

  std::uint64_t pairs_tested() const noexcept { return pairs_tested_; }
  std::uint64_t closures_run() const noexcept { return closures_; }

  // --- operations used by the shared criterion
  bool commute(index_type a, index_type b) const { return table_->commute(a, b); }

  const std::vector<std::pair<std::uint64_t, index_type>>& parts_x(index_type x) {
    fill(x, bx_);
    return bx_;
  }
  const std::vector<std::pair<std::uint64_t, index_type>>& parts_y(index_type y) {
    fill(y, by_);
    return by_;
  }

  bool generates_p_group(index_type a, index_type b, std::uint64_t p) {
    const index_type ab = table_->product(a, b, scratch_);
    if (!is_power_of(powers_->orders[ab], p)) return false;
    const index_type ba = table_->product(b, a, scratch_);
    const index_type abba = table_->product(ab, ba, scratch_);
    if (!is_power_of(powers_->orders[abba], p)) return false;

    ++closures_;
    std::uint64_t bound = 1;
    for (std::size_t k = 0; k < powers_->primes.size(); ++k) {
      if (powers_->primes[k] == p) bound = sylow_[k];
    }
    queue_.assign(1, 0);
    visited_[0] = 1;
    bool ok = true;
    for (std::size_t head = 0; ok && head < queue_.size(); ++head) {
      for (index_type g : {a, b}) {
        const index_type h = table_->product(queue_[head], g, scratch_);
        if (visited_[h]) continue;
        visited_[h] = 1;
        queue_.push_back(h);
        if (!is_power_of(powers_->orders[h], p) || queue_.size() > bound) {
          ok = false;
          break;
        }
      }
    }
    for (index_type i : queue_) visited_[i] = 0;
    return ok;
  }

 private:
  void fill(index_type x, std::vector<std::pair<std::uint64_t, index_type>>& out) const {
    out.clear();
    const std::size_t np = powers_->primes.size();
    for (std::size_t k = 0; k < np; ++k) {
      const index_type part = powers_->part(x, k);
      if (part != 0) out.emplace_back(powers_->primes[k], part);
    }
  }

  const ElementTable* table_;
  const PowerMap* powers_;
  std::vector<std::uint64_t> sylow_;
  std::vector<std::uint8_t> visited_;
  std::vector<index_type> queue_;
  std::vector<point_type> scratch_;
  std::vector<std::pair<std::uint64_t, index_type>> bx_, by_;
  std::uint64_t pairs_tested_ = 0;
  std::uint64_t closures_ = 0;
};

}  // namespace nilprob

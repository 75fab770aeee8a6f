#pragma once

// Slow reference implementations for the tests.  They use only Permutation
// arithmetic, never the element tables or the pair criterion.

#include <cstdint>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "nilprob/fraction.hpp"
#include "nilprob/numtheory.hpp"
#include "nilprob/perm.hpp"

namespace oracle {

using nilprob::Permutation;

inline std::vector<Permutation> closure(const std::vector<Permutation>& gens, std::size_t degree) {
  std::unordered_set<Permutation> seen{Permutation::identity(degree)};
  std::vector<Permutation> out{Permutation::identity(degree)};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      auto h = nilprob::compose(out[head], g);
      if (seen.insert(h).second) out.push_back(std::move(h));
    }
  }
  return out;
}

/// A finite group is nilpotent iff each Sylow subgroup is normal, i.e. unique,
/// i.e. the p-elements number exactly |H|_p for every prime p.
inline bool is_nilpotent(const std::vector<Permutation>& h) {
  const std::uint64_t n = h.size();
  for (auto p : nilprob::prime_divisors(n)) {
    std::uint64_t count = 0;
    for (const auto& x : h) count += nilprob::is_power_of(nilprob::element_order(x), p) ? 1 : 0;
    if (count != nilprob::prime_part(n, p)) return false;
  }
  return true;
}

inline bool nilpotent_pair(const Permutation& x, const Permutation& y) {
  return is_nilpotent(closure({x, y}, x.degree()));
}

/// nu over all ordered pairs from `a` x `b`.
inline nilprob::ExactFraction nu_pairs(const std::vector<Permutation>& a,
                                       const std::vector<Permutation>& b) {
  std::uint64_t hits = 0;
  for (const auto& x : a) {
    for (const auto& y : b) hits += nilpotent_pair(x, y) ? 1 : 0;
  }
  return nilprob::ExactFraction(nilprob::BigInt(hits), nilprob::BigInt(a.size() * b.size()));
}

inline std::vector<Permutation> coset(const std::vector<Permutation>& n, const Permutation& g) {
  std::vector<Permutation> out;
  for (const auto& m : n) out.push_back(nilprob::compose(m, g));
  return out;
}

inline bool contains_all(const std::vector<Permutation>& h, const std::vector<Permutation>& n) {
  std::unordered_set<Permutation> s(h.begin(), h.end());
  for (const auto& x : n) {
    if (!s.count(x)) return false;
  }
  return true;
}

}  // namespace oracle

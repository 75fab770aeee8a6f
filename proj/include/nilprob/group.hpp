#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nilprob/element_table.hpp"
#include "nilprob/numtheory.hpp"
#include "nilprob/perm.hpp"

namespace nilprob {

/// Groups larger than this are never enumerated.
inline constexpr std::uint64_t default_element_cap = 4'000'000;

/// The subgroup generated by `gens`, enumerated breadth first.  Throws
/// budget_exceeded as soon as more than `cap` elements have been found.
/// With no generators the result is the trivial group of the given degree.
inline ElementTable closure(std::span<const Permutation> gens, std::uint64_t cap,
                            std::size_t degree = 0) {
  if (gens.empty() && degree == 0) throw std::invalid_argument("closure: no generators");
  if (degree == 0) degree = gens.front().degree();
  for (const auto& g : gens) {
    if (g.degree() != degree) throw degree_mismatch(g.degree(), degree);
  }
  ElementTable table(degree);
  table.insert(Permutation::identity(degree));
  std::vector<point_type> buf(degree);
  for (index_type i = 0; i < table.size(); ++i) {
    for (const auto& g : gens) {
      auto e = table[i];
      auto gi = g.images();
      for (std::size_t k = 0; k < degree; ++k) buf[k] = gi[e[k]];
      if (table.insert(buf).second && table.size() > cap) {
        throw budget_exceeded("closure exceeds " + std::to_string(cap) + " elements");
      }
    }
  }
  return table;
}

inline ElementTable closure(std::initializer_list<Permutation> gens, std::uint64_t cap) {
  std::vector<Permutation> v(gens);
  return closure(std::span<const Permutation>(v), cap);
}

struct ConjugacyClass {
  index_type representative;  // lexicographically least member
  std::uint64_t size;
};

struct ClassPartition {
  std::vector<index_type> class_of;  // per element index
  std::vector<ConjugacyClass> classes;
};

/// Element orders and prime-power parts, indexed like the element table.
struct PowerMap {
  std::vector<std::uint64_t> primes;  // primes dividing the group order
  std::vector<std::uint32_t> orders;
  std::vector<index_type> parts;  // parts[i * primes.size() + k]

  index_type part(index_type i, std::size_t k) const { return parts[i * primes.size() + k]; }
};

namespace detail {

inline std::vector<point_type> inverse_images(std::span<const point_type> p) {
  std::vector<point_type> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<point_type>(i);
  return out;
}

/// Orbits of `members` under conjugation by `conjugators` (indices into
/// `table`).  `orbit_of` is resized to table.size(); members receive their
/// orbit number, which is also their position in the returned list.  Orbits
/// are listed in order of their least member index; representatives are the
/// lexicographically least image tables.
inline std::vector<ConjugacyClass> conjugation_orbits(const ElementTable& table,
                                                      std::span<const index_type> members,
                                                      std::span<const index_type> conjugators,
                                                      std::vector<index_type>& orbit_of) {
  std::vector<std::vector<point_type>> inverses;
  for (index_type g : conjugators) inverses.push_back(inverse_images(table[g]));
  orbit_of.assign(table.size(), npos);
  std::vector<ConjugacyClass> orbits;
  std::vector<index_type> queue;
  std::vector<point_type> scratch;
  for (index_type start : members) {
    if (orbit_of[start] != npos) continue;
    const index_type id = static_cast<index_type>(orbits.size());
    queue.assign(1, start);
    orbit_of[start] = id;
    index_type best = start;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const index_type x = queue[head];
      if (table.less(x, best)) best = x;
      for (std::size_t k = 0; k < conjugators.size(); ++k) {
        index_type y = table.conjugate(x, conjugators[k], inverses[k], scratch);
        if (y == npos) throw std::logic_error("conjugate left the element table");
        if (orbit_of[y] == npos) {
          orbit_of[y] = id;
          queue.push_back(y);
        }
      }
    }
    orbits.push_back({best, queue.size()});
  }
  return orbits;
}

}  // namespace detail

/// A permutation group given by generators.  The element table, conjugacy
/// classes and power map are computed on first use and shared between copies.
class FiniteGroup {
 public:
  FiniteGroup(std::size_t degree, std::vector<Permutation> generators, std::string name = {},
              std::uint64_t element_cap = default_element_cap)
      : state_(std::make_shared<State>()) {
    for (const auto& g : generators) {
      if (g.degree() != degree) throw degree_mismatch(g.degree(), degree);
    }
    std::erase_if(generators, [](const Permutation& g) { return g.is_identity(); });
    state_->degree = degree;
    state_->generators = std::move(generators);
    state_->name = std::move(name);
    state_->cap = element_cap;
  }

  std::size_t degree() const noexcept { return state_->degree; }
  const std::vector<Permutation>& generators() const noexcept { return state_->generators; }
  const std::string& name() const noexcept { return state_->name; }

  const ElementTable& elements() const {
    std::call_once(state_->table_once, [s = state_.get()] {
      s->table.emplace(closure(s->generators, s->cap, s->degree));
      for (const auto& g : s->generators) s->generator_index.push_back(s->table->find(g));
    });
    return *state_->table;
  }

  std::uint64_t order() const { return elements().size(); }

  /// Generators as indices into elements().
  const std::vector<index_type>& generator_indices() const {
    elements();
    return state_->generator_index;
  }

  bool contains(const Permutation& p) const { return elements().contains(p); }

  bool same_object(const FiniteGroup& other) const noexcept { return state_ == other.state_; }

  const ClassPartition& classes() const {
    std::call_once(state_->classes_once, [this] {
      const auto& table = elements();
      std::vector<index_type> all(table.size());
      std::iota(all.begin(), all.end(), index_type{0});
      ClassPartition cp;
      cp.classes = detail::conjugation_orbits(table, all, generator_indices(), cp.class_of);
      state_->classes.emplace(std::move(cp));
    });
    return *state_->classes;
  }

  const PowerMap& powers() const {
    std::call_once(state_->powers_once, [this] {
      const auto& table = elements();
      PowerMap pm;
      pm.primes = prime_divisors(table.size());
      const std::size_t np = pm.primes.size();
      pm.orders.resize(table.size());
      pm.parts.assign(table.size() * np, 0);
      std::vector<point_type> out(table.degree());
      std::vector<point_type> buf;
      for (index_type i = 0; i < table.size(); ++i) {
        const std::uint64_t ord = element_order(table[i]);
        pm.orders[i] = static_cast<std::uint32_t>(ord);
        for (std::size_t k = 0; k < np; ++k) {
          const std::uint64_t e = prime_power_exponent(ord, pm.primes[k]);
          if (e == 0) continue;  // part is the identity, index 0
          if (e == 1) {
            pm.parts[i * np + k] = i;
            continue;
          }
          power_into(table[i], e, out, buf);
          pm.parts[i * np + k] = table.find(out);
        }
      }
      state_->powers.emplace(std::move(pm));
    });
    return *state_->powers;
  }

 private:
  struct State {
    std::size_t degree = 1;
    std::vector<Permutation> generators;
    std::string name;
    std::uint64_t cap = default_element_cap;
    std::once_flag table_once, classes_once, powers_once;
    std::optional<ElementTable> table;
    std::vector<index_type> generator_index;
    std::optional<ClassPartition> classes;
    std::optional<PowerMap> powers;
  };
  std::shared_ptr<State> state_;
};

}  // namespace nilprob

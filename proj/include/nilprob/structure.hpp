#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilprob/group.hpp"
#include "nilprob/nilpotency.hpp"
#include "nilprob/numtheory.hpp"
#include "nilprob/perm.hpp"

namespace nilprob {

class group_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClassInfo {
  Permutation representative;
  std::uint64_t size;
};

/// Conjugacy classes of G, each with its lexicographically least member.
inline std::vector<ClassInfo> conjugacy_classes(const FiniteGroup& g) {
  std::vector<ClassInfo> out;
  for (const auto& c : g.classes().classes) {
    out.push_back({g.elements().element(c.representative), c.size});
  }
  return out;
}

// ---------------------------------------------------------------------------
// subgroups of an enumerated group, as sorted index lists

/// Closure of `gens` (indices) inside `table`, which must be a group.
inline std::vector<index_type> subgroup_closure(const ElementTable& table,
                                                std::span<const index_type> gens,
                                                std::uint64_t cap = default_element_cap) {
  std::vector<std::uint8_t> seen(table.size(), 0);
  std::vector<index_type> members{0};
  seen[0] = 1;
  std::vector<point_type> scratch;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (index_type g : gens) {
      const index_type h = table.product(members[head], g, scratch);
      if (h == npos) throw std::logic_error("subgroup_closure: product outside table");
      if (!seen[h]) {
        seen[h] = 1;
        members.push_back(h);
        if (members.size() > cap) throw budget_exceeded("subgroup closure exceeds cap");
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

/// Normal closure of `seeds` under conjugation by `conjugators`.
inline std::vector<index_type> normal_closure(const ElementTable& table,
                                              std::vector<index_type> seeds,
                                              std::span<const index_type> conjugators) {
  std::vector<std::vector<point_type>> inverses;
  for (index_type g : conjugators) inverses.push_back(detail::inverse_images(table[g]));
  std::vector<point_type> scratch;
  std::vector<index_type> gens;
  std::vector<std::uint8_t> in_sub(table.size(), 0);
  std::vector<index_type> members;
  auto rebuild = [&] {
    members = subgroup_closure(table, gens);
    std::fill(in_sub.begin(), in_sub.end(), 0);
    for (index_type m : members) in_sub[m] = 1;
  };
  for (index_type s : seeds) {
    if (s != 0) gens.push_back(s);
  }
  rebuild();
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t ngens = gens.size();
    for (std::size_t i = 0; i < ngens; ++i) {
      for (std::size_t k = 0; k < conjugators.size(); ++k) {
        const index_type c = table.conjugate(gens[i], conjugators[k], inverses[k], scratch);
        if (!in_sub[c]) {
          gens.push_back(c);
          rebuild();
          changed = true;
        }
      }
    }
  }
  return members;
}

/// Small generating set for a subgroup given by its members: greedily add
/// members not yet generated.
inline std::vector<index_type> generating_subset(const ElementTable& table,
                                                 std::span<const index_type> members) {
  std::vector<index_type> gens;
  std::vector<std::uint8_t> in_sub(table.size(), 0);
  in_sub[0] = 1;
  for (index_type m : members) {
    if (in_sub[m]) continue;
    gens.push_back(m);
    for (index_type x : subgroup_closure(table, gens)) in_sub[x] = 1;
  }
  return gens;
}

// ---------------------------------------------------------------------------
// nilpotency and solvability oracles

/// True iff the finite group with element set H is nilpotent: for every prime
/// p dividing |H| a Sylow p-subgroup, built greedily from p-elements, is
/// normal in H.
/// The identity must be stored at index 0 (as closure() and materialize() do).
inline bool is_nilpotent_subgroup(const ElementTable& h) {
  const std::uint64_t n = h.size();
  if (n == 0 || !h.element(0).is_identity()) {
    throw std::invalid_argument("is_nilpotent_subgroup: identity must be element 0");
  }
  std::vector<std::uint64_t> orders(n);
  for (index_type i = 0; i < n; ++i) orders[i] = element_order(h[i]);
  std::vector<point_type> scratch;
  for (auto p : prime_divisors(n)) {
    const std::uint64_t sylow_order = prime_part(n, p);
    std::vector<index_type> gens;
    std::vector<std::uint8_t> in_p(n, 0);
    in_p[0] = 1;
    std::uint64_t size = 1;
    for (index_type e = 0; e < n && size < sylow_order; ++e) {
      if (in_p[e] || !is_power_of(orders[e], p)) continue;
      gens.push_back(e);
      std::vector<index_type> sub;
      try {
        sub = subgroup_closure(h, gens, sylow_order);
      } catch (const budget_exceeded&) {
        gens.pop_back();
        continue;
      }
      bool p_group = is_power_of(sub.size(), p);
      if (!p_group) {
        gens.pop_back();
        continue;
      }
      std::fill(in_p.begin(), in_p.end(), 0);
      for (index_type x : sub) in_p[x] = 1;
      size = sub.size();
    }
    if (size != sylow_order) throw std::logic_error("greedy Sylow construction failed");
    // normality: conjugates of the Sylow generators by every element stay inside
    for (index_type g = 0; g < n; ++g) {
      auto ginv = detail::inverse_images(h[g]);
      for (index_type s : gens) {
        if (!in_p[h.conjugate(s, g, ginv, scratch)]) return false;
      }
    }
  }
  return true;
}

/// Derived series by normal closure of generator commutators.
inline bool is_solvable(const FiniteGroup& g) {
  const auto& table = g.elements();
  const auto& all_gens = g.generator_indices();
  std::vector<index_type> gens(all_gens.begin(), all_gens.end());
  std::uint64_t size = table.size();
  for (int step = 0; step < 64; ++step) {
    if (size == 1) return true;
    std::vector<index_type> comms;
    for (index_type a : gens) {
      for (index_type b : gens) {
        auto c = commutator(table.element(a), table.element(b));
        comms.push_back(table.find(c));
      }
    }
    auto derived = normal_closure(table, comms, gens);
    if (derived.size() == size) return false;  // perfect and nontrivial
    size = derived.size();
    gens = generating_subset(table, derived);
  }
  return size == 1;
}

/// Ordered pairs (a, b) of H with <a, b> = H.
inline std::uint64_t generating_pairs_count(const ElementTable& h,
                                            std::uint64_t pair_budget = 100'000'000) {
  const std::uint64_t n = h.size();
  if (n * n > pair_budget) throw budget_exceeded("generating_pairs_count: too many pairs");
  std::uint64_t count = 0;
  for (index_type a = 0; a < n; ++a) {
    for (index_type b = 0; b < n; ++b) {
      std::array<index_type, 2> gens{a, b};
      if (subgroup_closure(h, gens).size() == n) ++count;
    }
  }
  return count;
}

// ---------------------------------------------------------------------------
// normal subgroups, cosets and quotients

/// N is normal in G iff every conjugate of a generator of N by a generator of
/// G lies in N.
inline bool is_normal(const FiniteGroup& g, const FiniteGroup& n) {
  for (const auto& x : n.generators()) {
    for (const auto& y : g.generators()) {
      if (!n.contains(conjugate(x, y))) return false;
    }
  }
  return true;
}

/// Nonabelian simple: nontrivial, not of prime order, and every nontrivial
/// conjugacy class generates the whole group.  The subgroup generated by a
/// class is a union of classes; it is grown by class products until closed.
inline bool is_nonabelian_simple(const FiniteGroup& g) {
  const auto& table = g.elements();
  const std::uint64_t n = table.size();
  if (n == 1 || is_prime(n)) return false;
  const auto& cp = g.classes();
  const std::size_t k = cp.classes.size();
  // members of each class
  std::vector<std::vector<index_type>> members(k);
  for (index_type i = 0; i < n; ++i) members[cp.class_of[i]].push_back(i);
  std::vector<point_type> scratch;
  for (std::size_t c = 0; c < k; ++c) {
    if (cp.class_of[0] == c) continue;
    std::vector<std::uint8_t> in(k, 0);
    std::vector<std::size_t> have{cp.class_of[0], c};
    in[cp.class_of[0]] = in[c] = 1;
    std::uint64_t size = 1 + cp.classes[c].size;
    // pairs (i, j) of classes in `have` whose products are accounted for
    std::set<std::pair<std::size_t, std::size_t>> done;
    bool grew = true;
    while (grew && 2 * size <= n) {
      grew = false;
      const auto snapshot = have;
      for (std::size_t a : snapshot) {
        for (std::size_t b : snapshot) {
          if (!done.insert({a, b}).second) continue;
          const index_type rep = cp.classes[a].representative;
          for (index_type y : members[b]) {
            const std::size_t cls = cp.class_of[table.product(rep, y, scratch)];
            if (!in[cls]) {
              in[cls] = 1;
              have.push_back(cls);
              size += cp.classes[cls].size;
              grew = true;
            }
          }
          if (2 * size > n) break;
        }
        if (2 * size > n) break;
      }
    }
    if (2 * size <= n) return false;  // proper normal subgroup found
  }
  return true;
}

/// Right cosets N x of a normal subgroup, numbered in order of their least
/// element index (so coset 0 is N itself).
struct CosetSpace {
  std::vector<index_type> coset_of;         // per element of G
  std::vector<index_type> representative;   // least element index per coset
  std::vector<index_type> normal_members;   // N as indices into G's table

  std::size_t index() const noexcept { return representative.size(); }

  /// The permutation of cosets induced by right multiplication with x.
  Permutation action(const ElementTable& table, index_type x) const {
    std::vector<point_type> img(index());
    std::vector<point_type> scratch;
    for (std::size_t c = 0; c < index(); ++c) {
      img[c] = static_cast<point_type>(coset_of[table.product(representative[c], x, scratch)]);
    }
    return Permutation::from_images(std::move(img));
  }
};

/// Members of the subgroup generated by `n_gens` inside G's table.
inline std::vector<index_type> members_in(const FiniteGroup& g,
                                          std::span<const Permutation> n_gens) {
  std::vector<index_type> idx;
  for (const auto& x : n_gens) {
    const index_type i = g.elements().find(x);
    if (i == npos) throw group_error("subgroup generator is not an element of the group");
    idx.push_back(i);
  }
  return subgroup_closure(g.elements(), idx);
}

inline CosetSpace coset_space(const FiniteGroup& g, const FiniteGroup& n) {
  if (!is_normal(g, n)) throw group_error("subgroup is not normal");
  const auto& table = g.elements();
  CosetSpace cs;
  cs.normal_members = members_in(g, n.generators());
  cs.coset_of.assign(table.size(), npos);
  std::vector<point_type> scratch;
  for (index_type x = 0; x < table.size(); ++x) {
    if (cs.coset_of[x] != npos) continue;
    const index_type id = static_cast<index_type>(cs.representative.size());
    cs.representative.push_back(x);
    for (index_type m : cs.normal_members) cs.coset_of[table.product(m, x, scratch)] = id;
  }
  return cs;
}

/// G/N as a permutation group on the right cosets of N.
inline FiniteGroup quotient_group(const FiniteGroup& g, const FiniteGroup& n) {
  auto cs = coset_space(g, n);
  std::vector<Permutation> gens;
  for (index_type x : g.generator_indices()) gens.push_back(cs.action(g.elements(), x));
  const std::string name = g.name().empty() ? "" : g.name() + "/" + n.name();
  return FiniteGroup(cs.index(), std::move(gens), name);
}

struct CosetOrbit {
  Permutation representative;
  std::uint64_t size;
};

/// Orbits of N acting by conjugation on the coset N g.
struct CosetOrbitPartition {
  Permutation coset_representative;
  std::vector<CosetOrbit> orbits;
};

namespace detail {

/// Index-level version: orbit representatives and sizes for N acting on N g.
inline std::vector<ConjugacyClass> coset_orbits(const FiniteGroup& g,
                                                std::span<const index_type> normal_members,
                                                std::span<const index_type> normal_gens,
                                                index_type rep) {
  const auto& table = g.elements();
  std::vector<index_type> coset;
  coset.reserve(normal_members.size());
  std::vector<point_type> scratch;
  for (index_type m : normal_members) coset.push_back(table.product(m, rep, scratch));
  std::sort(coset.begin(), coset.end());
  std::vector<index_type> orbit_of;
  return conjugation_orbits(table, coset, normal_gens, orbit_of);
}

}  // namespace detail

inline CosetOrbitPartition coset_orbit_partition(const FiniteGroup& g, const FiniteGroup& n,
                                                 const Permutation& rep) {
  if (!is_normal(g, n)) throw group_error("subgroup is not normal");
  const index_type r = g.elements().find(rep);
  if (r == npos) throw group_error("coset representative is not in the group");
  auto members = members_in(g, n.generators());
  std::vector<index_type> ngens;
  for (const auto& x : n.generators()) ngens.push_back(g.elements().find(x));
  CosetOrbitPartition out{rep, {}};
  for (const auto& o : detail::coset_orbits(g, members, ngens, r)) {
    out.orbits.push_back({g.elements().element(o.representative), o.size});
  }
  return out;
}

// ---------------------------------------------------------------------------
// subgroup lattice of a small group

/// All subgroups of Q (|Q| <= 200) as sorted index lists into Q's table,
/// ordered by size and then lexicographically.
inline std::vector<std::vector<index_type>> subgroups_of_small_group(const FiniteGroup& q) {
  const auto& table = q.elements();
  if (table.size() > 200) throw budget_exceeded("subgroups_of_small_group: |Q| > 200");
  std::set<std::vector<index_type>> found;
  std::vector<std::vector<index_type>> frontier;
  for (index_type x = 0; x < table.size(); ++x) {
    std::array<index_type, 1> g{x};
    auto sub = subgroup_closure(table, g);
    if (found.insert(sub).second) frontier.push_back(std::move(sub));
  }
  while (!frontier.empty()) {
    std::vector<std::vector<index_type>> next;
    for (const auto& h : frontier) {
      auto gens = generating_subset(table, h);
      std::vector<std::uint8_t> in(table.size(), 0);
      for (index_type m : h) in[m] = 1;
      for (index_type x = 0; x < table.size(); ++x) {
        if (in[x]) continue;
        auto g2 = gens;
        g2.push_back(x);
        auto sub = subgroup_closure(table, g2);
        if (found.insert(sub).second) next.push_back(std::move(sub));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<index_type>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

/// Element table of a subgroup given by indices into `table`.
inline ElementTable materialize(const ElementTable& table, std::span<const index_type> members) {
  ElementTable out(table.degree());
  out.reserve(members.size());
  out.insert(Permutation::identity(table.degree()));
  for (index_type m : members) out.insert(table[m]);
  return out;
}

}  // namespace nilprob

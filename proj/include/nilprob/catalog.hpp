#pragma once

// Named permutation groups and the generator-file format.
//
// Group-spec grammar:  sym:N  alt:N  cyc:N  dih:N  psl2:Q  pgl2:Q  pgammal2:Q
//                      file:PATH
//
// Generator files are line oriented; '#' starts a comment:
//   degree <n>
//   order <m>              ambient order (mandatory)
//   socle-order <m'>       mandatory when socle generators are given
//   gen <image-list>       ambient generators
//   socle-gen <image-list> socle generators (omitted: socle = ambient)

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nilprob/field.hpp"
#include "nilprob/group.hpp"
#include "nilprob/perm.hpp"
#include "nilprob/structure.hpp"

#ifndef NILPROB_DEFAULT_ASSETS
#define NILPROB_DEFAULT_ASSETS "data/groups"
#endif

namespace nilprob {

enum class GroupKind { symmetric, alternating, cyclic, dihedral, psl2, pgl2, pgammal2, file };

struct GroupSpec {
  GroupKind kind = GroupKind::symmetric;
  std::uint64_t parameter = 1;
  std::string path;  // file kind only

  std::string to_string() const {
    switch (kind) {
      case GroupKind::symmetric: return "sym:" + std::to_string(parameter);
      case GroupKind::alternating: return "alt:" + std::to_string(parameter);
      case GroupKind::cyclic: return "cyc:" + std::to_string(parameter);
      case GroupKind::dihedral: return "dih:" + std::to_string(parameter);
      case GroupKind::psl2: return "psl2:" + std::to_string(parameter);
      case GroupKind::pgl2: return "pgl2:" + std::to_string(parameter);
      case GroupKind::pgammal2: return "pgammal2:" + std::to_string(parameter);
      case GroupKind::file: return "file:" + path;
    }
    return {};
  }
};

inline GroupSpec parse_group_spec(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw parse_error("group spec needs KIND:ARG");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  GroupSpec spec;
  if (kind == "file") {
    if (arg.empty()) throw parse_error("file: needs a path");
    spec.kind = GroupKind::file;
    spec.path = std::string(arg);
    return spec;
  }
  static const std::pair<std::string_view, GroupKind> kinds[] = {
      {"sym", GroupKind::symmetric}, {"alt", GroupKind::alternating},
      {"cyc", GroupKind::cyclic},    {"dih", GroupKind::dihedral},
      {"psl2", GroupKind::psl2},     {"pgl2", GroupKind::pgl2},
      {"pgammal2", GroupKind::pgammal2}};
  bool known = false;
  for (const auto& [name, k] : kinds) {
    if (kind == name) {
      spec.kind = k;
      known = true;
    }
  }
  if (!known) throw parse_error("unknown group kind '" + std::string(kind) + "'");
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
  if (ec != std::errc{} || ptr != arg.data() + arg.size() || v == 0) {
    throw parse_error("bad group parameter '" + std::string(arg) + "'");
  }
  spec.parameter = v;
  return spec;
}

/// A socle S inside an ambient group A with S <= A <= Aut S.
struct AlmostSimplePair {
  FiniteGroup ambient;
  FiniteGroup socle;
  std::string label;
};

// ---------------------------------------------------------------------------
// assets

inline std::filesystem::path asset_directory() {
  if (const char* env = std::getenv("NILPROB_ASSETS"); env && *env) return env;
  return NILPROB_DEFAULT_ASSETS;
}

/// The path as given if it exists, otherwise relative to the asset directory.
inline std::filesystem::path resolve_asset(const std::string& path) {
  std::filesystem::path p(path);
  if (std::filesystem::exists(p)) return p;
  auto q = asset_directory() / p;
  if (std::filesystem::exists(q)) return q;
  throw std::runtime_error("missing asset: " + path + " (looked in " + asset_directory().string() + ")");
}

// ---------------------------------------------------------------------------
// constructions

namespace detail {

inline std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (r > UINT64_MAX / i) return UINT64_MAX;
    r *= i;
  }
  return r;
}

inline Permutation cycle_perm(std::size_t degree, std::vector<std::size_t> pts) {
  CycleDecomposition cd{degree, {}};
  if (pts.size() >= 2) cd.cycles.push_back(std::move(pts));
  return from_cycles(cd);
}

inline std::vector<std::size_t> range1(std::size_t a, std::size_t b) {
  std::vector<std::size_t> v;
  for (std::size_t i = a; i <= b; ++i) v.push_back(i);
  return v;
}

/// The group of Mobius maps and field automorphisms acting on the projective
/// line: point i (1-based, i <= q) is the field element i-1, point q+1 is
/// infinity.
class ProjectiveLine {
 public:
  explicit ProjectiveLine(std::uint32_t q) : field_(q) {}

  const SmallField& field() const { return field_; }
  std::uint32_t infinity() const { return field_.order(); }

  Permutation mobius(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const {
    const auto& f = field_;
    if (f.sub(f.mul(a, d), f.mul(b, c)) == 0) throw std::invalid_argument("singular Mobius map");
    std::vector<point_type> img(f.order() + 1);
    for (std::uint32_t z = 0; z <= f.order(); ++z) {
      std::uint32_t w;
      if (z == infinity()) {
        w = c == 0 ? infinity() : f.div(a, c);
      } else {
        const std::uint32_t den = f.add(f.mul(c, z), d);
        w = den == 0 ? infinity() : f.div(f.add(f.mul(a, z), b), den);
      }
      img[z] = static_cast<point_type>(w);
    }
    return Permutation::from_images(std::move(img));
  }

  Permutation frobenius() const {
    std::vector<point_type> img(field_.order() + 1);
    for (std::uint32_t z = 0; z < field_.order(); ++z) img[z] = static_cast<point_type>(field_.frobenius(z));
    img[infinity()] = static_cast<point_type>(infinity());
    return Permutation::from_images(std::move(img));
  }

  std::vector<Permutation> psl_generators() const {
    const auto& f = field_;
    const std::uint32_t w = f.primitive_element();
    return {mobius(1, 1, 0, 1),               // z + 1
            mobius(w, 0, 0, f.inv(w)),        // w^2 z
            mobius(0, f.neg(1), 1, 0)};       // -1/z
  }

  Permutation diagonal() const { return mobius(field_.primitive_element(), 0, 0, 1); }

 private:
  SmallField field_;
};

inline FiniteGroup checked(FiniteGroup g, std::uint64_t expected) {
  if (expected > default_element_cap) {
    throw budget_exceeded(g.name() + " has order " + std::to_string(expected) +
                          ", above the enumeration cap");
  }
  if (g.order() != expected) {
    throw group_error(g.name() + ": computed order " + std::to_string(g.order()) +
                      " differs from expected " + std::to_string(expected));
  }
  return g;
}

}  // namespace detail

inline FiniteGroup symmetric_group(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(detail::cycle_perm(n, {1, 2}));
    gens.push_back(detail::cycle_perm(n, detail::range1(1, n)));
  }
  return detail::checked(FiniteGroup(n, gens, "Sym(" + std::to_string(n) + ")"),
                         detail::factorial(n));
}

inline FiniteGroup alternating_group(std::size_t n) {
  std::vector<Permutation> gens;
  if (n >= 3) {
    gens.push_back(detail::cycle_perm(n, {1, 2, 3}));
    if (n >= 4) {
      gens.push_back(n % 2 ? detail::cycle_perm(n, detail::range1(1, n))
                           : detail::cycle_perm(n, detail::range1(2, n)));
    }
  }
  const std::uint64_t order = n < 2 ? 1 : detail::factorial(n) / 2;
  return detail::checked(FiniteGroup(n, gens, "Alt(" + std::to_string(n) + ")"), order);
}

inline FiniteGroup cyclic_group(std::size_t n) {
  return detail::checked(
      FiniteGroup(n, {detail::cycle_perm(n, detail::range1(1, n))}, "C" + std::to_string(n)), n);
}

/// Dihedral group of order 2n acting on n points (n >= 3).
inline FiniteGroup dihedral_group(std::size_t n) {
  if (n < 3) throw std::invalid_argument("dih:N needs N >= 3");
  std::vector<point_type> refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<point_type>(n - 1 - i);
  return detail::checked(FiniteGroup(n,
                                     {detail::cycle_perm(n, detail::range1(1, n)),
                                      Permutation::from_images(std::move(refl))},
                                     "D" + std::to_string(2 * n)),
                         2 * n);
}

inline std::uint64_t psl2_order(std::uint64_t q) {
  return q * (q * q - 1) / (q % 2 ? 2 : 1);
}

inline FiniteGroup psl2(std::uint32_t q) {
  detail::ProjectiveLine line(q);
  return detail::checked(
      FiniteGroup(q + 1, line.psl_generators(), "PSL(2," + std::to_string(q) + ")"),
      psl2_order(q));
}

inline FiniteGroup pgl2(std::uint32_t q) {
  detail::ProjectiveLine line(q);
  auto gens = line.psl_generators();
  gens.push_back(line.diagonal());
  return detail::checked(FiniteGroup(q + 1, gens, "PGL(2," + std::to_string(q) + ")"),
                         std::uint64_t{q} * (std::uint64_t{q} * q - 1));
}

inline FiniteGroup pgammal2(std::uint32_t q) {
  detail::ProjectiveLine line(q);
  auto gens = line.psl_generators();
  gens.push_back(line.diagonal());
  gens.push_back(line.frobenius());
  return detail::checked(FiniteGroup(q + 1, gens, "PGammaL(2," + std::to_string(q) + ")"),
                         line.field().degree() * std::uint64_t{q} * (std::uint64_t{q} * q - 1));
}

// ---------------------------------------------------------------------------
// generator files

struct GeneratorFile {
  std::size_t degree = 0;
  std::uint64_t order = 0;
  std::optional<std::uint64_t> socle_order;
  std::vector<Permutation> generators;
  std::vector<Permutation> socle_generators;
  std::string title;  // first comment line, if any
};

inline GeneratorFile parse_generator_file(std::istream& in, const std::string& source = "<input>") {
  GeneratorFile gf;
  std::string line;
  std::size_t lineno = 0;
  bool seen_order = false;
  auto fail = [&](const std::string& msg) {
    throw parse_error(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    while (!s.empty() && detail::is_space(s.back())) s.remove_suffix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) fail("bad number");
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (auto hash = sv.find('#'); hash != std::string_view::npos) {
      if (gf.title.empty() && hash == 0 && sv.size() > 1) {
        std::string_view t = sv.substr(1);
        while (!t.empty() && detail::is_space(t.front())) t.remove_prefix(1);
        gf.title = std::string(t);
      }
      sv = sv.substr(0, hash);
    }
    while (!sv.empty() && detail::is_space(sv.front())) sv.remove_prefix(1);
    while (!sv.empty() && detail::is_space(sv.back())) sv.remove_suffix(1);
    if (sv.empty()) continue;
    auto sp = sv.find_first_of(" \t");
    if (sp == std::string_view::npos) fail("missing value");
    std::string_view key = sv.substr(0, sp);
    std::string_view value = sv.substr(sp + 1);
    while (!value.empty() && detail::is_space(value.front())) value.remove_prefix(1);
    if (key == "degree") {
      gf.degree = number(value);
      if (gf.degree > max_degree) fail("degree too large");
    } else if (key == "order") {
      gf.order = number(value);
      seen_order = true;
    } else if (key == "socle-order") {
      gf.socle_order = number(value);
    } else if (key == "gen" || key == "socle-gen") {
      if (gf.degree == 0) fail("generator before degree");
      Permutation p;
      try {
        p = parse_image_list(value);
      } catch (const parse_error& e) {
        fail(e.what());
      }
      if (p.degree() != gf.degree) fail("generator has wrong degree");
      (key == "gen" ? gf.generators : gf.socle_generators).push_back(std::move(p));
    } else {
      fail("unknown keyword '" + std::string(key) + "'");
    }
  }
  if (gf.degree == 0) fail("missing degree");
  if (!seen_order) fail("missing order");
  if (gf.generators.empty()) fail("no generators");
  if (!gf.socle_generators.empty() && !gf.socle_order) fail("socle-order required with socle-gen");
  return gf;
}

/// Builds and verifies an almost simple pair: declared orders, socle
/// membership and normality, and simplicity of the socle.
inline AlmostSimplePair make_pair_checked(FiniteGroup ambient, std::optional<FiniteGroup> socle,
                                          std::uint64_t ambient_order,
                                          std::optional<std::uint64_t> socle_order,
                                          std::string label) {
  ambient = detail::checked(std::move(ambient), ambient_order);
  FiniteGroup s = socle ? *socle : ambient;
  if (socle) {
    s = detail::checked(std::move(s), socle_order.value_or(0));
    for (const auto& g : s.generators()) {
      if (!ambient.contains(g)) throw group_error(label + ": socle generator outside ambient group");
    }
    if (!is_normal(ambient, s)) throw group_error(label + ": socle is not normal");
  }
  if (!is_nonabelian_simple(s)) throw group_error(label + ": socle is not nonabelian simple");
  return {ambient, s, std::move(label)};
}

inline AlmostSimplePair load_generator_file(const std::string& path) {
  const auto resolved = resolve_asset(path);
  std::ifstream in(resolved);
  if (!in) throw std::runtime_error("cannot open " + resolved.string());
  auto gf = parse_generator_file(in, resolved.string());
  std::string label = gf.title.empty() ? resolved.filename().string() : gf.title;
  if (gf.order > default_element_cap) {
    throw budget_exceeded(label + ": declared order above the enumeration cap");
  }
  FiniteGroup ambient(gf.degree, gf.generators, label);
  std::optional<FiniteGroup> socle;
  if (!gf.socle_generators.empty()) {
    socle.emplace(gf.degree, gf.socle_generators, label + " socle");
  }
  return make_pair_checked(std::move(ambient), std::move(socle), gf.order, gf.socle_order,
                           std::move(label));
}

inline FiniteGroup build(const GroupSpec& spec) {
  const auto n = spec.parameter;
  if (spec.kind != GroupKind::file && n > max_degree) throw std::invalid_argument("parameter too large");
  switch (spec.kind) {
    case GroupKind::symmetric: return symmetric_group(n);
    case GroupKind::alternating: return alternating_group(n);
    case GroupKind::cyclic: return cyclic_group(n);
    case GroupKind::dihedral: return dihedral_group(n);
    case GroupKind::psl2: return psl2(static_cast<std::uint32_t>(n));
    case GroupKind::pgl2: return pgl2(static_cast<std::uint32_t>(n));
    case GroupKind::pgammal2: return pgammal2(static_cast<std::uint32_t>(n));
    case GroupKind::file: return load_generator_file(spec.path).ambient;
  }
  throw std::logic_error("unreachable");
}

/// The full automorphism group over a simple socle, as permutations:
/// Sym(n) over Alt(n) (n != 6), PGammaL(2,9) over Alt(6), PGammaL(2,q) over
/// PSL(2,q); files carry their own pair.
inline AlmostSimplePair build_aut_pair(const GroupSpec& spec) {
  const auto n = spec.parameter;
  switch (spec.kind) {
    case GroupKind::alternating:
      if (n < 5) throw std::invalid_argument("Alt(n) is simple only for n >= 5");
      if (n == 6) {
        auto p = build_aut_pair({GroupKind::psl2, 9, {}});
        p.label = "Alt(6)";
        return p;
      }
      return make_pair_checked(symmetric_group(n), alternating_group(n), detail::factorial(n),
                               detail::factorial(n) / 2, "Alt(" + std::to_string(n) + ")");
    case GroupKind::psl2: {
      if (n < 4) throw std::invalid_argument("PSL(2,q) is simple only for q >= 4");
      auto amb = pgammal2(static_cast<std::uint32_t>(n));
      auto soc = psl2(static_cast<std::uint32_t>(n));
      return make_pair_checked(amb, soc, amb.order(), soc.order(),
                               "PSL(2," + std::to_string(n) + ")");
    }
    case GroupKind::file: return load_generator_file(spec.path);
    default:
      throw std::invalid_argument("no automorphism representation for " + spec.to_string());
  }
}

/// An (ambient, normal) pair for coset computations: sym:N gives (Sym, Alt),
/// pgl2/pgammal2 give (that group, PSL(2,q)), alt/psl2 give the automorphism
/// pair, files their own pair.
inline AlmostSimplePair build_coset_pair(const GroupSpec& spec) {
  const auto n = spec.parameter;
  switch (spec.kind) {
    case GroupKind::symmetric: {
      auto s = symmetric_group(n);
      auto a = alternating_group(n);
      return {s, a, s.name()};
    }
    case GroupKind::pgl2: {
      auto g = pgl2(static_cast<std::uint32_t>(n));
      return {g, psl2(static_cast<std::uint32_t>(n)), g.name()};
    }
    case GroupKind::pgammal2: {
      auto g = pgammal2(static_cast<std::uint32_t>(n));
      return {g, psl2(static_cast<std::uint32_t>(n)), g.name()};
    }
    case GroupKind::alternating:
    case GroupKind::psl2:
    case GroupKind::file: return build_aut_pair(spec);
    default: {
      auto g = build(spec);
      return {g, g, g.name()};
    }
  }
}

}  // namespace nilprob

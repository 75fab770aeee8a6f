#pragma once

// Permutations of {1..n}, stored 0-based.
//
// Products are read left to right: compose(p, q) applies p first and then q,
// so (p * q)(i) = q(p(i)).  Every other routine in the library uses this
// convention.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nilprob/numtheory.hpp"

namespace nilprob {

using point_type = std::uint16_t;
inline constexpr std::size_t max_degree = 65535;

class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class degree_mismatch : public std::invalid_argument {
 public:
  degree_mismatch(std::size_t a, std::size_t b)
      : std::invalid_argument("degree mismatch: " + std::to_string(a) + " vs " +
                              std::to_string(b)) {}
};

namespace detail {

inline std::size_t hash_points(std::span<const point_type> pts) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (point_type x : pts) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  // splitmix64 finalizer
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebull;
  h ^= h >> 31;
  return static_cast<std::size_t>(h);
}

}  // namespace detail

class Permutation {
 public:
  Permutation() : images_{0} {}

  static Permutation identity(std::size_t degree) {
    check_degree(degree);
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), point_type{0});
    return p;
  }

  /// 0-based image table; throws unless it is a bijection.
  static Permutation from_images(std::vector<point_type> images) {
    check_degree(images.size());
    std::vector<bool> seen(images.size(), false);
    for (point_type x : images) {
      if (x >= images.size() || seen[x]) {
        throw std::invalid_argument("image table is not a bijection");
      }
      seen[x] = true;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  static Permutation from_images(std::span<const point_type> images) {
    return from_images(std::vector<point_type>(images.begin(), images.end()));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  std::span<const point_type> images() const noexcept { return images_; }
  point_type operator()(point_type i) const { return images_[i]; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  std::size_t hash() const noexcept { return detail::hash_points(images_); }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    return std::lexicographical_compare_three_way(a.images_.begin(), a.images_.end(),
                                                  b.images_.begin(), b.images_.end());
  }

 private:
  static void check_degree(std::size_t degree) {
    if (degree == 0 || degree > max_degree) {
      throw std::invalid_argument("permutation degree out of range: " + std::to_string(degree));
    }
  }

  std::vector<point_type> images_;
};

/// p first, then q.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw degree_mismatch(p.degree(), q.degree());
  std::vector<point_type> out(p.degree());
  auto pi = p.images();
  auto qi = q.images();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = qi[pi[i]];
  return Permutation::from_images(std::move(out));
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

inline Permutation inverse(const Permutation& p) {
  std::vector<point_type> out(p.degree());
  auto pi = p.images();
  for (std::size_t i = 0; i < out.size(); ++i) out[pi[i]] = static_cast<point_type>(i);
  return Permutation::from_images(std::move(out));
}

/// g^-1 x g
inline Permutation conjugate(const Permutation& x, const Permutation& g) {
  return compose(compose(inverse(g), x), g);
}

/// x^-1 y^-1 x y
inline Permutation commutator(const Permutation& x, const Permutation& y) {
  return compose(compose(inverse(x), inverse(y)), compose(x, y));
}

/// Disjoint cycles of length >= 2, each starting at its smallest point,
/// ordered by that point.  Points are 1-based here.
struct CycleDecomposition {
  std::size_t degree = 1;
  std::vector<std::vector<std::size_t>> cycles;

  friend bool operator==(const CycleDecomposition&, const CycleDecomposition&) = default;
};

inline CycleDecomposition cycles_of(const Permutation& p) {
  CycleDecomposition out;
  out.degree = p.degree();
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(static_cast<point_type>(i)) == i) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t j = i; !seen[j]; j = p(static_cast<point_type>(j))) {
      seen[j] = true;
      cycle.push_back(j + 1);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

inline Permutation from_cycles(const CycleDecomposition& cd) {
  auto p = Permutation::identity(cd.degree);
  std::vector<point_type> images(p.images().begin(), p.images().end());
  std::vector<bool> used(cd.degree, false);
  for (const auto& cycle : cd.cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      std::size_t a = cycle[k];
      std::size_t b = cycle[(k + 1) % cycle.size()];
      if (a < 1 || a > cd.degree || b < 1 || b > cd.degree) {
        throw std::invalid_argument("cycle point out of range");
      }
      if (used[a - 1]) throw std::invalid_argument("cycles are not disjoint");
      used[a - 1] = true;
      images[a - 1] = static_cast<point_type>(b - 1);
    }
  }
  return Permutation::from_images(std::move(images));
}

/// lcm of the cycle lengths.
inline std::uint64_t element_order(std::span<const point_type> images) {
  std::uint64_t order = 1;
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images[j]) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

inline std::uint64_t element_order(const Permutation& p) { return element_order(p.images()); }

/// Writes p^k into `out` (same length as `images`), walking each cycle once.
inline void power_into(std::span<const point_type> images, std::uint64_t k,
                       std::span<point_type> out, std::vector<point_type>& cycle_buf) {
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    cycle_buf.clear();
    for (std::size_t j = i; !seen[j]; j = images[j]) {
      seen[j] = true;
      cycle_buf.push_back(static_cast<point_type>(j));
    }
    const std::size_t len = cycle_buf.size();
    const std::size_t shift = static_cast<std::size_t>(k % len);
    for (std::size_t t = 0; t < len; ++t) out[cycle_buf[t]] = cycle_buf[(t + shift) % len];
  }
}

inline Permutation power(const Permutation& p, std::uint64_t k) {
  std::vector<point_type> out(p.degree());
  std::vector<point_type> buf;
  power_into(p.images(), k, out, buf);
  return Permutation::from_images(std::move(out));
}

/// Exponent e with p^e the `prime`-part of an element of order `order`.
inline std::uint64_t prime_power_exponent(std::uint64_t order, std::uint64_t prime) {
  const std::uint64_t pp = prime_part(order, prime);
  if (pp == 1) return 0;
  const std::uint64_t rest = order / pp;
  return (rest * inverse_mod(rest % pp, pp)) % order;
}

/// The power of p whose order is the `prime`-part of element_order(p).
inline Permutation prime_power_part(const Permutation& p, std::uint64_t prime) {
  if (!is_prime(prime)) throw std::invalid_argument("prime_power_part: not a prime");
  const std::uint64_t order = element_order(p);
  return power(p, prime_power_exponent(order, prime));
}

// ---------------------------------------------------------------------------
// text forms

/// "(1 2 3)(4 5)"; the identity renders as "()".
inline std::string to_cycle_string(const Permutation& p) {
  auto cd = cycles_of(p);
  if (cd.cycles.empty()) return "()";
  std::string out;
  for (const auto& c : cd.cycles) {
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(c[k]);
    }
    out += ')';
  }
  return out;
}

/// "2,3,1,5,4"
inline std::string to_image_list(const Permutation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (i) out += ',';
    out += std::to_string(p(static_cast<point_type>(i)) + 1);
  }
  return out;
}

namespace detail {

inline std::size_t parse_point(std::string_view tok) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || value == 0) {
    throw parse_error("bad point '" + std::string(tok) + "'");
  }
  return value;
}

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

}  // namespace detail

inline Permutation parse_image_list(std::string_view text) {
  std::vector<point_type> images;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    while (!tok.empty() && detail::is_space(tok.front())) tok.remove_prefix(1);
    while (!tok.empty() && detail::is_space(tok.back())) tok.remove_suffix(1);
    std::size_t v = detail::parse_point(tok);
    if (v > max_degree) throw parse_error("point too large");
    images.push_back(static_cast<point_type>(v - 1));
    start = end + 1;
  }
  try {
    return Permutation::from_images(std::move(images));
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

/// Parses "(1 2 3)(4 5)" (commas inside cycles are also accepted) on the given
/// degree; "()" is the identity.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  CycleDecomposition cd;
  cd.degree = degree;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && detail::is_space(text[i])) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw parse_error("expected '(' in cycle notation");
    ++i;
    std::vector<std::size_t> cycle;
    while (true) {
      while (i < text.size() && (detail::is_space(text[i]) || text[i] == ',')) ++i;
      if (i >= text.size()) throw parse_error("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      if (j == i) throw parse_error("unexpected character in cycle notation");
      cycle.push_back(detail::parse_point(text.substr(i, j - i)));
      i = j;
    }
    if (cycle.size() >= 2) cd.cycles.push_back(std::move(cycle));
    skip();
  }
  try {
    return from_cycles(cd);
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

/// Accepts either notation: cycles if the text starts with '(', an image list
/// otherwise.  `degree` is required for cycle notation.
inline Permutation parse_permutation(std::string_view text, std::size_t degree) {
  std::size_t i = 0;
  while (i < text.size() && detail::is_space(text[i])) ++i;
  if (i < text.size() && text[i] == '(') return parse_cycles(text, degree);
  auto p = parse_image_list(text);
  if (p.degree() != degree) throw degree_mismatch(p.degree(), degree);
  return p;
}

}  // namespace nilprob

template <>
struct std::hash<nilprob::Permutation> {
  std::size_t operator()(const nilprob::Permutation& p) const noexcept { return p.hash(); }
};

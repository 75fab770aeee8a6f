#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilprob/numtheory.hpp"

namespace nilprob {

/// GF(p^k) for k <= 3, elements encoded as c0 + c1*p + c2*p^2 over a fixed
/// irreducible polynomial.  Pinned moduli: GF(4) x^2+x+1, GF(8) x^3+x+1,
/// GF(9) x^2+1; other extension fields take the first monic irreducible in
/// lexicographic order of coefficients.
class SmallField {
 public:
  explicit SmallField(std::uint32_t q) : q_(q) {
    auto primes = prime_divisors(q);
    if (q < 2 || primes.size() != 1) {
      throw std::invalid_argument("field order must be a prime power: " + std::to_string(q));
    }
    p_ = static_cast<std::uint32_t>(primes.front());
    for (std::uint32_t t = q; t > 1; t /= p_) ++k_;
    if (k_ > 3) throw std::invalid_argument("extension degree > 3 unsupported");
    if (q > 1024) throw std::invalid_argument("field too large");
    choose_modulus();
    build_tables();
  }

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  /// Low coefficients of the monic modulus x^k + m[k-1] x^{k-1} + ... + m[0].
  const std::array<std::uint32_t, 3>& modulus() const noexcept { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("division by zero in GF(q)");
    return inv_[a];
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t frobenius(std::uint32_t a) const {
    std::uint32_t r = 1;
    for (std::uint32_t i = 0; i < p_; ++i) r = mul(r, a);
    return a == 0 ? 0 : r;
  }

  /// Least element (in encoding order) generating the multiplicative group.
  std::uint32_t primitive_element() const {
    for (std::uint32_t a = 1; a < q_; ++a) {
      std::uint32_t x = a;
      std::uint32_t ord = 1;
      while (x != 1) {
        x = mul(x, a);
        ++ord;
      }
      if (ord == q_ - 1) return a;
    }
    throw std::logic_error("no primitive element");
  }

 private:
  using poly = std::array<std::uint32_t, 6>;

  std::uint32_t coeff(std::uint32_t a, std::uint32_t i) const {
    for (std::uint32_t t = 0; t < i; ++t) a /= p_;
    return a % p_;
  }

  // product of two field elements as polynomials, reduced by the modulus
  std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) const {
    poly prod{};
    for (std::uint32_t i = 0; i < k_; ++i) {
      for (std::uint32_t j = 0; j < k_; ++j) {
        prod[i + j] = (prod[i + j] + coeff(a, i) * coeff(b, j)) % p_;
      }
    }
    for (int d = static_cast<int>(2 * k_) - 2; d >= static_cast<int>(k_); --d) {
      std::uint32_t c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (std::uint32_t i = 0; i < k_; ++i) {
        prod[d - k_ + i] = (prod[d - k_ + i] + (p_ - modulus_[i]) * c) % p_;
      }
    }
    std::uint32_t r = 0;
    for (int i = static_cast<int>(k_) - 1; i >= 0; --i) r = r * p_ + prod[i];
    return r;
  }

  bool modulus_irreducible() const {
    // degree <= 3: irreducible iff no root in GF(p)
    if (k_ == 1) return true;
    for (std::uint32_t x = 0; x < p_; ++x) {
      std::uint32_t v = 1;  // leading coefficient
      for (int i = static_cast<int>(k_) - 1; i >= 0; --i) v = (v * x + modulus_[i]) % p_;
      if (v == 0) return false;
    }
    return true;
  }

  void choose_modulus() {
    modulus_ = {0, 0, 0};
    if (k_ == 1) return;
    if (p_ == 2 && k_ == 2) {
      modulus_ = {1, 1, 0};
      return;
    }
    if (p_ == 2 && k_ == 3) {
      modulus_ = {1, 1, 0};
      return;
    }
    if (p_ == 3 && k_ == 2) {
      modulus_ = {1, 0, 0};
      return;
    }
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < k_; ++i) count *= p_;
    for (std::uint32_t code = 0; code < count; ++code) {
      for (std::uint32_t i = 0; i < k_; ++i) modulus_[i] = coeff(code, i);
      if (modulus_irreducible()) return;
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  void build_tables() {
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        std::uint32_t s = 0, place = 1;
        for (std::uint32_t i = 0; i < k_; ++i, place *= p_) {
          s += ((coeff(a, i) + coeff(b, i)) % p_) * place;
        }
        add_[a * q_ + b] = s;
        mul_[a * q_ + b] = k_ == 1 ? (a * b) % p_ : poly_mul(a, b);
        if (s == 0) neg_[a] = b;
        if (mul_[a * q_ + b] == 1) inv_[a] = b;
      }
    }
  }

  std::uint32_t q_;
  std::uint32_t p_ = 0;
  std::uint32_t k_ = 0;
  std::array<std::uint32_t, 3> modulus_{};
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

}  // namespace nilprob

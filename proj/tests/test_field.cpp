#include <catch_amalgamated.hpp>

#include "nilprob/field.hpp"

using nilprob::SmallField;

TEST_CASE("finite field axioms") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 25u, 27u, 49u}) {
    SmallField f(q);
    INFO("q = " << q);
    for (std::uint32_t a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (std::uint32_t b = 0; b < q; ++b) {
        CHECK(f.mul(a, b) == f.mul(b, a));
        const std::uint32_t c = (a * 7 + b * 3 + 1) % q;
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        // Frobenius is additive and multiplicative
        CHECK(f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b)));
        CHECK(f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b)));
      }
    }
    // primitive element has order q - 1
    const auto w = f.primitive_element();
    std::uint32_t x = w, ord = 1;
    while (x != 1) x = f.mul(x, w), ++ord;
    CHECK(ord == q - 1);
  }
}

TEST_CASE("pinned moduli") {
  CHECK(SmallField(4).modulus()[0] == 1);
  CHECK(SmallField(4).modulus()[1] == 1);
  CHECK(SmallField(8).modulus()[0] == 1);
  CHECK(SmallField(8).modulus()[1] == 1);
  CHECK(SmallField(8).modulus()[2] == 0);
  CHECK(SmallField(9).modulus()[0] == 1);
  CHECK(SmallField(9).modulus()[1] == 0);
}

TEST_CASE("bad field orders") {
  CHECK_THROWS_AS(SmallField(6), std::invalid_argument);
  CHECK_THROWS_AS(SmallField(1), std::invalid_argument);
  CHECK_THROWS_AS(SmallField(81), std::invalid_argument);
  CHECK_THROWS_AS(SmallField(5).inv(0), std::domain_error);
}

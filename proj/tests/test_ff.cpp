#include <random>
#include <set>

#include "cremona2/ff.hpp"
#include "doctest.h"

using namespace cremona2;
using namespace cremona2::ff;

namespace {

// Slow reference multiplication: schoolbook product then long division.
Elem ref_mul(const Field& f, Elem u, Elem v) {
  std::uint64_t prod = 0;
  for (int i = 0; i < f.degree(); ++i)
    if ((v >> i) & 1) prod ^= u << i;
  const int n = f.degree();
  for (int d = 2 * n - 2; d >= n; --d)
    if ((prod >> d) & 1) prod ^= f.modulus_mask() << (d - n);
  return prod;
}

}  // namespace

TEST_CASE("field construction validates the modulus") {
  CHECK(Field::create({1, 1, 1})->size() == 4);
  CHECK_THROWS_AS(Field::create({1, 0, 1}), ReducibleModulus);
  CHECK_THROWS_AS(Field::create({1}), InvalidModulus);
  auto f30 = registry_field("F2_30");
  CHECK(f30->degree() == 30);
  CHECK_THROWS_AS(registry_field("F7"), UnknownField);
}

TEST_CASE("small-field arithmetic examples") {
  auto f4 = registry_field("F4");
  const Elem w = f4->x_class();
  CHECK(f4->mul(w, w) == (w ^ 1));
  CHECK(f4->inv(w) == (w ^ 1));
  CHECK(f4->frobenius(w, 1) == (w ^ 1));
  auto f8 = registry_field("F8");
  // a^{-1} found by brute force over the 7 units.
  Elem brute = 0;
  for (Elem u = 1; u < 8; ++u)
    if (f8->mul(u, 2) == 1) brute = u;
  CHECK(f8->inv(2) == brute);
  CHECK(brute == 0b101);  // a^2 + 1
  auto f16 = registry_field("F16");
  CHECK(f16->mul(2, 8) == 0b0011);
  CHECK(f16->frobenius(2, 2) == f16->pow(2, 4));
  CHECK(f16->frobenius(2, 2) == 0b0011);
  CHECK_THROWS_AS(f16->inv(0), ZeroInverse);
  CHECK_THROWS_AS(FieldElem(f4, 1) + FieldElem(f8, 1), MixedFields);
}

TEST_CASE("field axioms hold exhaustively for n <= 16") {
  for (const auto& key : registry_keys()) {
    auto f = registry_field(key);
    if (f->degree() > 16) continue;
    for (Elem u = 1; u < f->size(); ++u) {
      REQUIRE(f->mul(u, f->inv(u)) == 1);
      REQUIRE(f->frobenius(u, static_cast<unsigned>(f->degree())) == u);
    }
  }
}

TEST_CASE("multiplication agrees with a reference and Frobenius is a ring morphism") {
  for (const auto& key : registry_keys()) {
    auto f = registry_field(key);
    if (f->degree() <= 6) {
      for (Elem u = 0; u < f->size(); ++u)
        for (Elem v = 0; v < f->size(); ++v) {
          REQUIRE(f->mul(u, v) == ref_mul(*f, u, v));
          REQUIRE(f->sqr(u ^ v) == (f->sqr(u) ^ f->sqr(v)));
          REQUIRE(f->sqr(f->mul(u, v)) == f->mul(f->sqr(u), f->sqr(v)));
        }
    } else {
      std::mt19937_64 rng(17);
      for (int i = 0; i < 20000; ++i) {
        const Elem u = rng() & (f->size() - 1), v = rng() & (f->size() - 1), w = rng() & (f->size() - 1);
        REQUIRE(f->mul(u, v) == ref_mul(*f, u, v));
        REQUIRE(f->mul(f->mul(u, v), w) == f->mul(u, f->mul(v, w)));
        REQUIRE(f->mul(u, v ^ w) == (f->mul(u, v) ^ f->mul(u, w)));
        REQUIRE(f->sqr(u ^ v) == (f->sqr(u) ^ f->sqr(v)));
        REQUIRE(f->sqr(f->mul(u, v)) == f->mul(f->sqr(u), f->sqr(v)));
      }
    }
  }
}

TEST_CASE("generators have full order") {
  CHECK(gf2()->generator() == 1);
  CHECK(registry_field("F4")->generator() == 2);
  CHECK(registry_field("F8")->generator() == 2);
  for (const auto& key : registry_keys()) {
    auto f = registry_field(key);
    CHECK(f->element_order(f->generator()) == f->unit_order());
  }
}

TEST_CASE("every registered modulus is primitive, so a^k is unambiguous") {
  // Representative exponents are written as powers of the class of x.
  for (const auto& key : registry_keys()) {
    auto f = registry_field(key);
    CHECK_MESSAGE(f->element_order(f->x_class()) == f->unit_order(), key);
    CHECK(f->generator() == f->x_class());
  }
}

TEST_CASE("minimal polynomials of subfield elements") {
  auto f256 = registry_field("F256");
  auto f64 = registry_field("F64");
  CHECK(f256->minimal_polynomial(f256->pow(2, 17)) == Coeffs{1, 1, 0, 0, 1});
  CHECK(f64->minimal_polynomial(f64->pow(2, 9)) == Coeffs{1, 1, 0, 1});
  CHECK(f64->minimal_polynomial(f64->pow(2, 21)) == Coeffs{1, 1, 1});
  // The minimal polynomial vanishes at the element and has degree | n.
  std::mt19937_64 rng(3);
  for (const auto& key : registry_keys()) {
    auto f = registry_field(key);
    for (int i = 0; i < 20; ++i) {
      const Elem u = rng() & (f->size() - 1);
      const Coeffs m = f->minimal_polynomial(u);
      CHECK(f->degree() % (static_cast<int>(m.size()) - 1) == 0);
      CHECK(f->eval_mask_poly(coeffs_to_mask(m), u) == 0);
    }
  }
}

TEST_CASE("roots of unity are complete and exact") {
  auto f64 = registry_field("F64");
  CHECK(f64->roots_of_unity(1) == std::vector<Elem>{1});
  CHECK(f64->roots_of_unity(21).size() == 21);
  CHECK_THROWS_AS(f64->roots_of_unity(5), NotADivisor);
  CHECK(registry_field("F2_30")->roots_of_unity(993).size() == 993);
  for (const char* key : {"F64", "F2_12", "F2_20"}) {
    auto f = registry_field(key);
    for (std::uint64_t m : {3ull, 5ull, 21ull, 273ull, 33ull}) {
      if (f->unit_order() % m) continue;
      const auto roots = f->roots_of_unity(m);
      std::set<Elem> brute;
      for (Elem u = 1; u < f->size(); ++u)
        if (f->pow(u, m) == 1) brute.insert(u);
      CHECK(std::set<Elem>(roots.begin(), roots.end()) == brute);
      CHECK(roots.size() == m);
    }
  }
}

TEST_CASE("embedding of subfields through minimal polynomials") {
  auto f256 = registry_field("F256");
  const Elem b = f256->embed_with_min_poly({1, 1, 0, 0, 1});
  CHECK(f256->element_order(b) == 15);
  CHECK(f256->minimal_polynomial(b) == Coeffs{1, 1, 0, 0, 1});
  auto f64 = registry_field("F64");
  const Elem w = f64->embed_with_min_poly({1, 1, 1});
  CHECK(f64->element_order(w) == 3);
  CHECK((w == f64->pow(2, 21) || w == f64->pow(2, 42)));
  CHECK(f64->embed_with_min_poly(f64->modulus()) == 2);
  // A field homomorphism: check on random pairs.
  Embedding emb(registry_field("F32"), registry_field("F2_20"));
  auto f32 = registry_field("F32");
  auto big = registry_field("F2_20");
  for (Elem u = 0; u < 32; ++u)
    for (Elem v = 0; v < 32; ++v) REQUIRE(emb(f32->mul(u, v)) == big->mul(emb(u), emb(v)));
}

TEST_CASE("logarithm and text form round-trip") {
  for (const auto& key : registry_keys()) {
    auto f = registry_field(key);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
      const Elem u = rng() & (f->size() - 1);
      CHECK(f->parse(f->to_string(u)) == u);
      if (u) CHECK(f->pow(f->generator(), f->log(u)) == u);
    }
  }
  auto f8 = registry_field("F8");
  CHECK(f8->to_string(0) == "0");
  CHECK(f8->to_string(1) == "1");
  CHECK(f8->to_string(2) == "a^1");
  CHECK(f8->parse("a") == 2);
  CHECK(f8->parse("a^7") == 1);
  CHECK_THROWS_AS(f8->parse("b^2"), ParseError);
}

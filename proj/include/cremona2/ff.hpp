// Binary extension fields GF(2^n), 1 <= n <= 30.
//
// Elements are n-bit masks in the polynomial basis: bit i is the coefficient
// of x^i.  Multiplication is carry-less shift/xor followed by reduction by
// the defining modulus.  A Field is immutable after construction and may be
// shared freely between threads.
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cremona2/errors.hpp"

namespace cremona2::ff {

/// Raw element representation (fully reduced bit mask).
using Elem = std::uint64_t;

/// Polynomial over GF(2) as a coefficient list, lowest degree first.
using Coeffs = std::vector<int>;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Converts a coefficient list (low degree first) to a bit mask.
std::uint64_t coeffs_to_mask(const Coeffs& c);
/// Converts a bit mask to a coefficient list (low degree first, trimmed).
Coeffs mask_to_coeffs(std::uint64_t mask);
/// Degree of a GF(2)[x] polynomial given as a bit mask (-1 for zero).
int mask_degree(std::uint64_t mask);
/// True iff the GF(2)[x] polynomial (bit mask) is irreducible; trial division
/// by every polynomial of degree 1..deg/2.
bool is_irreducible_mask(std::uint64_t mask);
/// Distinct prime factors of m (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t m);

class Field {
 public:
  /// Builds GF(2^n) from a monic modulus of degree n in [1,30].
  /// Throws InvalidModulus for a bad degree and ReducibleModulus when trial
  /// division finds a factor.
  static FieldPtr create(const Coeffs& modulus, std::string name = "");

  int degree() const { return n_; }
  std::uint64_t modulus_mask() const { return mod_; }
  Coeffs modulus() const { return mask_to_coeffs(mod_); }
  const std::string& name() const { return name_; }
  /// Number of elements 2^n.
  std::uint64_t size() const { return std::uint64_t{1} << n_; }
  /// Order of the unit group 2^n - 1.
  std::uint64_t unit_order() const { return size() - 1; }

  /// The class of x in GF(2)[x]/(modulus) (equals 1 when n == 1).
  Elem x_class() const { return n_ == 1 ? 1 : 2; }

  Elem add(Elem u, Elem v) const { return u ^ v; }
  Elem mul(Elem u, Elem v) const;
  Elem sqr(Elem u) const { return mul(u, u); }
  Elem pow(Elem u, std::uint64_t e) const;
  /// Multiplicative inverse; throws ZeroInverse for 0.
  Elem inv(Elem u) const;
  Elem div(Elem u, Elem v) const { return mul(u, inv(v)); }
  /// u^(2^k).
  Elem frobenius(Elem u, unsigned k) const;

  /// Smallest element (by bit pattern) of multiplicative order 2^n - 1.
  Elem generator() const { return gen_; }
  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(Elem u) const;
  /// Distinct primes dividing 2^n - 1.
  const std::vector<std::uint64_t>& unit_order_primes() const { return primes_; }

  /// Product of (X - u^(2^i)) over the distinct conjugates of u.
  Coeffs minimal_polynomial(Elem u) const;
  /// All m solutions of x^m = 1, as g^(r k), deduplicated and sorted by bit
  /// pattern.  Throws NotADivisor unless m divides 2^n - 1.
  std::vector<Elem> roots_of_unity(std::uint64_t m) const;
  /// The power g^e with the smallest e whose minimal polynomial equals
  /// target.  Throws NoSuchElement if none exists.
  Elem embed_with_min_poly(const Coeffs& target) const;

  /// Discrete logarithm base generator() (baby-step giant-step, table built
  /// lazily and cached).  Throws ZeroInverse for 0.
  std::uint64_t log(Elem u) const;

  /// Canonical text: "0", "1" or "a^k" with a = generator(), k = log(u).
  std::string to_string(Elem u) const;
  /// Parses "0", "1", "a", "a^k" (exponent reduced mod 2^n - 1).
  Elem parse(std::string_view text) const;

  /// Evaluates a GF(2)[x] polynomial (bit mask) at u.
  Elem eval_mask_poly(std::uint64_t mask, Elem u) const;

 private:
  Field(int n, std::uint64_t mod, std::string name);

  int n_;
  std::uint64_t mod_;
  std::string name_;
  Elem gen_ = 1;
  std::vector<std::uint64_t> primes_;

  // Lazily built baby-step table for log().
  mutable std::once_flag log_once_;
  mutable std::unordered_map<Elem, std::uint32_t> baby_;
  mutable std::uint64_t bsgs_m_ = 0;
  mutable Elem giant_ = 1;
};

/// Field embedding src -> dst sending the class of x to the smallest-exponent
/// root (in dst) of src's modulus.  Requires deg(src) | deg(dst).
class Embedding {
 public:
  Embedding(FieldPtr src, FieldPtr dst);
  Elem operator()(Elem u) const;
  const FieldPtr& src() const { return src_; }
  const FieldPtr& dst() const { return dst_; }

 private:
  FieldPtr src_, dst_;
  std::vector<Elem> basis_;  // images of x^i
};

/// A value paired with its field; arithmetic checks that fields agree.
class FieldElem {
 public:
  FieldElem(FieldPtr f, Elem v);
  const FieldPtr& field() const { return f_; }
  Elem value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem inverse() const;
  FieldElem frobenius(unsigned k) const;
  FieldElem pow(std::uint64_t e) const;
  bool operator==(const FieldElem& o) const;
  std::string to_string() const { return f_->to_string(v_); }

 private:
  void check_same(const FieldElem& o) const;
  FieldPtr f_;
  Elem v_;
};

/// Addition / multiplication with an explicit operation tag.
enum class ArithOp { Add, Mul };
FieldElem arith(ArithOp op, const FieldElem& u, const FieldElem& v);

// ---------------------------------------------------------------------------
// Modulus registry.  The twelve moduli used by the classification lemmas,
// keyed as in moduli.json.

/// Registry keys in canonical order.
const std::vector<std::string>& registry_keys();
/// Modulus (low degree first) for a key; throws UnknownField.
const Coeffs& registry_modulus(const std::string& key);
/// Shared, lazily created field for a key; throws UnknownField.
FieldPtr registry_field(const std::string& key);
/// The prime field GF(2) (modulus x, i.e. degree 1).
FieldPtr gf2();

}  // namespace cremona2::ff

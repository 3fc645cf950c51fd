// Sparse multivariate polynomials over a binary extension field.
//
// A monomial is packed into one 64-bit key: the top 16 bits hold the total
// degree and four 12-bit fields hold the exponents of variables 0..3 (variable
// 0 most significant).  Integer comparison of keys is then exactly graded-lex
// order with x0 > x1 > x2 > x3, and multiplying monomials is adding keys.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cremona2/ff.hpp"

namespace cremona2::poly {

using ff::Elem;
using ff::FieldPtr;

using Key = std::uint64_t;
using Exponents = std::array<int, 4>;

inline constexpr int kMaxVars = 4;
inline constexpr int kMaxExponent = 4095;

Key pack(const Exponents& e);
Exponents unpack(Key k);
inline int key_degree(Key k) { return static_cast<int>(k >> 48); }

/// Default variable names for a given arity: 1 -> t; 2 -> x,y; 3 -> x,y,z;
/// 4 -> x0,x1,y0,y1.
std::vector<std::string> default_names(int nvars);

struct DegreeInfo {
  int total_degree = 0;
  bool is_homogeneous = false;
  /// For 4 variables split (x0,x1 | y0,y1): set iff bihomogeneous.
  bool has_bidegree = false;
  int bidegree[2] = {0, 0};
};

class MPoly {
 public:
  using Term = std::pair<Key, Elem>;

  MPoly() = default;
  MPoly(FieldPtr field, int nvars);

  static MPoly constant(FieldPtr field, int nvars, Elem c);
  static MPoly variable(FieldPtr field, int nvars, int index);
  static MPoly monomial(FieldPtr field, int nvars, const Exponents& e, Elem c = 1);

  const FieldPtr& field() const { return field_; }
  int nvars() const { return nvars_; }
  /// Terms sorted by decreasing graded-lex order; no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Elem coeff(const Exponents& e) const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o);
  MPoly scaled(Elem c) const;
  MPoly pow(unsigned e) const;
  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  /// Exact evaluation; throws ArityMismatch.
  Elem eval(const std::vector<Elem>& point) const;
  /// Substitutes subs[i] for variable i; throws ArityMismatch/MixedContexts.
  MPoly compose(const std::vector<MPoly>& subs) const;
  /// Formal partial derivative (exponent parity decides survival in char 2).
  MPoly derivative(int var) const;
  /// Grading data; throws ZeroPolynomial.
  DegreeInfo degree_info() const;
  int total_degree() const;
  bool is_homogeneous() const;

  /// Applies u -> u^(2^k) to every coefficient.
  MPoly coefficient_frobenius(unsigned k) const;
  /// True iff every coefficient lies in GF(2).
  bool has_gf2_coefficients() const;
  /// Re-expresses the polynomial over another field through an embedding.
  MPoly mapped(const ff::Embedding& emb) const;
  /// Same polynomial with more variables (new variables appended, unused).
  MPoly with_nvars(int nvars) const;

  /// Exact division test by a single polynomial whose leading coefficient is
  /// nonzero: returns the remainder of multivariate division (zero iff d | p,
  /// since one polynomial is always a Groebner basis of its ideal).
  MPoly remainder(const MPoly& d) const;
  /// Quotient and remainder of the same division.
  std::pair<MPoly, MPoly> divmod(const MPoly& d) const;

  /// Canonical text (graded-lex order, coefficients "a^k"/"1").
  std::string to_string(const std::vector<std::string>& names = {}) const;
  /// Parses the canonical grammar: sum of terms "c*m1^e1*m2..." with c a
  /// field element ("1", "a", "a^k") and m variable names.
  static MPoly parse(FieldPtr field, int nvars, std::string_view text,
                     const std::vector<std::string>& names = {});

 private:
  void check_compatible(const MPoly& o) const;
  static MPoly from_unsorted(FieldPtr field, int nvars, std::vector<Term> terms);

  FieldPtr field_;
  int nvars_ = 0;
  std::vector<Term> terms_;
};

enum class PolyOp { Add, Mul };
MPoly poly_arith(PolyOp op, const MPoly& p, const MPoly& q);

}  // namespace cremona2::poly

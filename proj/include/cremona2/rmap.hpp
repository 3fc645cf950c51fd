// Rational maps between the surface models as tuples of polynomials.
//
// A map is stored as its raw component tuple; nothing is ever cancelled.
// Equality of rational maps is decided by cross products inside each
// projective factor (f_i g_j - f_j g_i = 0), which needs no polynomial GCD.
//
// Spaces and their variables:
//   P2      (x,y,z)                 one projective group of 3
//   P3      (x0,x1,x2,x3)           one projective group of 4
//   P1xP1   (x0,x1,y0,y1)           two projective groups of 2
//   YChart  (x,y,z,t)               projective (x,y,z) plus an affine t
//   P1A1    (u,v,t)                 projective (u,v) plus an affine t
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cremona2/frob.hpp"
#include "cremona2/geom.hpp"
#include "cremona2/poly.hpp"

namespace cremona2::rmap {

using ff::Elem;
using ff::Field;
using ff::FieldPtr;
using geom::ProjPoint;
using poly::MPoly;

enum class MapSpace { P2, P3, P1xP1, YChart, P1A1 };

const char* map_space_name(MapSpace s);
/// Number of variables (= number of components of a map into the space).
int space_nvars(MapSpace s);
/// Sizes of the projective groups, in component order.
std::vector<int> projective_groups(MapSpace s);
/// Number of trailing affine components.
int affine_count(MapSpace s);
std::vector<std::string> space_var_names(MapSpace s);
/// The geom space of a purely projective MapSpace; throws SpaceMismatch.
geom::Space to_geom_space(MapSpace s);

struct RatMap {
  MapSpace src = MapSpace::P2;
  MapSpace dst = MapSpace::P2;
  std::vector<MPoly> comps;
  /// Further component tuples describing the same map on other charts; point
  /// evaluation uses the first tuple (comps, then these) that is defined.
  std::vector<std::vector<MPoly>> alt_charts;

  const FieldPtr& field() const { return comps.front().field(); }
  /// Total degree of the first nonzero component of each projective group.
  std::vector<int> group_degrees() const;
  /// "[f0 : f1 : f2]" with groups separated as "([..],[..])".
  std::string to_string() const;
  /// The same map with coefficients pushed into a larger field.
  RatMap lifted(const FieldPtr& to) const;
};

RatMap make_map(MapSpace src, MapSpace dst, std::vector<MPoly> comps);
RatMap identity_map(MapSpace s, const FieldPtr& f);

/// g o f (substitutes f's components into g's); throws SpaceMismatch.
RatMap map_compose(const RatMap& g, const RatMap& f);

/// Cross-product equality inside every projective group and exact equality of
/// affine components.  With `modulo`, each identity is only required to hold
/// modulo that single polynomial (zero remainder of the division).
bool maps_equal_rational(const RatMap& f, const RatMap& g, const MPoly* modulo = nullptr);
bool is_involution(const RatMap& f);

/// A tuple of the given degree equal to f as a rational map, found by linear
/// algebra on the cross-product conditions (no GCD).  Only for maps into P2;
/// returns nullopt unless the solution space is exactly one-dimensional.
std::optional<RatMap> equivalent_of_degree(const RatMap& f, int d);

/// Image of a point of a projective source; throws IndeterminatePoint when
/// every chart has a factor whose coordinates all vanish.
ProjPoint eval_map(const RatMap& f, const ProjPoint& p);

/// The model Frobenius as a polynomial endomap.
RatMap model_map(frob::Model m, const FieldPtr& f);
/// f o T = T o f as rational maps, T the model polynomials.  Both sides are
/// plain polynomial substitutions, so this is exactly pointwise commutation
/// with the twisted Frobenius (T o f squares f's coefficients).
bool commutes_with_frob(const RatMap& f, frob::Model m);

// ---------------------------------------------------------------------------
// Fibrations of P2 over P1.

enum class FibrationTag { pi1, pi2, pi4 };
const char* fibration_name(FibrationTag t);

struct Fibration {
  FibrationTag tag = FibrationTag::pi1;
  MPoly num;  // first coordinate
  MPoly den;  // second coordinate
};

Fibration fibration(FibrationTag t, const FieldPtr& f);
/// pi o f = pi.
bool preserves_fibration(const RatMap& f, const Fibration& pi);
/// pi o f = iota o pi with iota the GF(2)-linear map of P1 given by the rows
/// of m: [s:t] -> [m00 s + m01 t : m10 s + m11 t].
bool semi_preserves_fibration(const RatMap& f, const Fibration& pi,
                              const std::array<std::array<int, 2>, 2>& m);

// ---------------------------------------------------------------------------
// GF(2)(t).

/// Polynomials over GF(2) are bit masks (bit i = coefficient of t^i).
namespace gf2x {
std::uint64_t mul(std::uint64_t a, std::uint64_t b);
std::uint64_t divmod(std::uint64_t a, std::uint64_t b, std::uint64_t* rem);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
int degree(std::uint64_t a);
}  // namespace gf2x

class RationalFunction1V {
 public:
  /// num/den reduced to lowest terms; throws ZeroFunction for den = 0.
  RationalFunction1V(std::uint64_t num = 0, std::uint64_t den = 1);
  static RationalFunction1V t() { return {2, 1}; }
  static RationalFunction1V one() { return {1, 1}; }

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  RationalFunction1V operator+(const RationalFunction1V& o) const;
  RationalFunction1V operator*(const RationalFunction1V& o) const;
  /// Throws ZeroFunction when dividing by zero.
  RationalFunction1V operator/(const RationalFunction1V& o) const;
  bool operator==(const RationalFunction1V& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::string to_string() const;

 private:
  std::uint64_t num_, den_;
};

/// g_p = [x Q : y P : z P] with p(y/z) = P/Q homogenized to a common degree.
/// Throws ZeroFunction for p = 0.
RatMap jonquieres_gp(const RationalFunction1V& p);

enum class FamilyTag { L2star, L4star };
const char* family_name(FamilyTag t);
FibrationTag family_fibration(FamilyTag t);

struct FamilyMap {
  FamilyTag tag = FamilyTag::L2star;
  RationalFunction1V a, lambda, mu;
  /// Rows of the matrix [[L,0,0],[c1,L,0],[c2,0,L]] over GF(2)[t] with
  /// L = lcm of the denominators of lambda and mu; the map is C(T1/T2) x.
  std::uint64_t L = 1, c1 = 0, c2 = 0;
  /// Degree used to homogenize in (T1,T2).
  int D = 0;
  RatMap map;
};

/// [x : lambda x + y : mu x + z] with t = T1/T2, denominators cleared.
FamilyMap family_map(FamilyTag tag, const RationalFunction1V& a);
/// (lambda, mu) satisfies the conic of the family in GF(2)(t).
bool on_family_conic(FamilyTag tag, const RationalFunction1V& lambda, const RationalFunction1V& mu);

struct InvolutionCertificate {
  bool preserves = false;      // T_i o f = R T_i exactly for both i
  bool involution = false;     // C_h . f is proportional to the identity
  int R_degree = 0;
  MPoly R;                     // common factor of T1 o f and T2 o f
  std::vector<MPoly> reduced;  // g with f o f = R^D g
};

/// Exact involution check that avoids expanding f o f: verifies
/// T_i o f = R T_i, so that f o f = R^D (C_h(T1,T2) f), then checks that
/// C_h f is proportional to the identity.
InvolutionCertificate family_involution_check(const FamilyMap& fm);

/// The numerator of the conic condition after substituting the
/// parametrization with a, t indeterminates (variables (a,t) over GF(2)).
MPoly conic_identity_numerator(FamilyTag tag);
bool verify_conic_identity(FamilyTag tag);

/// The 20 parameters used for the family samples: the 16 polynomials of
/// degree <= 3 and four rational functions.
std::vector<RationalFunction1V> family_samples();

// ---------------------------------------------------------------------------
// Built-in maps.

const std::vector<std::string>& builtin_names();
/// Throws UnknownName.
RatMap builtin(const std::string& name);
/// Fibration a one-link built-in is attached to (pi4 or pi2), and the map of
/// P1 it induces on the base (identity for pi4; [s:t] -> [s:s+t] for pi2).
struct FibrationAction {
  FibrationTag tag;
  std::array<std::array<int, 2>, 2> iota;
};
FibrationAction one_link_fibration(const std::string& name);
/// True for the built-ins that are involutions of their space.
bool builtin_is_declared_involution(const std::string& name);

/// Q -> P1xP1 (four charts) and its inverse over any field containing F4.
RatMap phi_q(const FieldPtr& f);
RatMap phi_q_inv(const FieldPtr& f);
/// Root of x^2+x+1 used by phi_q.
Elem phi_q_xi(const Field& f);
/// The quadric x0 x3 + x1^2 + x1 x2 + x2^2 of P3.
MPoly quadric_form(const FieldPtr& f);

/// Equations of the fiber-product charts: t^2(y^2+xz)+(x^2+xy+z^2) and
/// t^2(y^2+xy)+(x^2+xz+z^2) in (x,y,z,t).
MPoly fiberprod_equation(int which);

/// Whether the image of x=0 under a built-in lies on a witness curve.  The
/// listed curve for oneLink_p100 does not contain that image; the curve found
/// by exhaustive search over GF(2) cubics is reported next to it.
struct WitnessCheck {
  std::string map_name;
  std::string curve;
  bool stated = true;  // curve as listed with the examples (false: found by search)
  bool ok = false;
};
std::vector<WitnessCheck> witness_curve_checks();

/// ([0:s:t],[s^2:t^2]) lies on both surfaces identically.
bool double_section_check();

/// phi o gamma o QTwist o gamma^-1 o phi^-1 = D6Twist as rational maps.
bool d6_chain_check();

// ---------------------------------------------------------------------------
// The cubic map conjugating StdP2 to D5Twist.

struct PhiD5 {
  RatMap map;
  std::size_t system_dimension = 0;
  std::vector<ProjPoint> orbit;         // q5 first, then its Frobenius images
  std::array<int, 4> frame_order{};     // which contracted point goes to e1,e2,e3,(1,1,1)
  bool frame_found = false;
  int tested_points = 0;                // random points checked during selection
};

/// Throws WrongDimension if the cubic system is not 3-dimensional.
PhiD5 build_phi_d5();
/// phi o StdP2 = D5Twist o phi at `count` pseudo-random points of P2(F_{2^15})
/// (points where either side is undefined are skipped and not counted).
bool phi_d5_commutes_pointwise(const PhiD5& phi, int count, std::uint64_t seed = 1);

/// Over F_{2^k}, x=0 is the only line tangent to both generating conics of
/// the pencil.
bool unique_tangent_check(FibrationTag pencil, int k);

/// GF(2^k) from the smallest irreducible modulus of degree k (k <= 30).
FieldPtr small_field(int k);

}  // namespace cremona2::rmap

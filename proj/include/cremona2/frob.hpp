// Frobenius actions on the four surface models and the candidate lists that
// feed the orbit classification.
//
//   StdP2    [x:y:z] -> [x^2:y^2:z^2]
//   QTwist   ([x0:x1],[y0:y1]) -> ([y0^2:y1^2],[x0^2:x1^2])
//   D5Twist  [x:y:z] -> [x^2 y^2 : y^2(x^2+z^2) : x^2(y^2+z^2)]
//   D6Twist  [x:y:z] -> [x^2 z^2 : x^2 y^2 : y^2 z^2]
#pragma once

#include <string>
#include <vector>

#include "cremona2/geom.hpp"
#include "cremona2/poly.hpp"

namespace cremona2::frob {

using ff::Elem;
using ff::Field;
using ff::FieldPtr;
using geom::ProjPoint;

enum class Model { StdP2, QTwist, D5Twist, D6Twist };

const char* model_name(Model m);
geom::Space model_space(Model m);

/// The defining polynomial tuple over the given field (coefficients are 0/1).
/// P2 models use (x,y,z); QTwist uses (x0,x1,y0,y1) and returns 4 components.
std::vector<poly::MPoly> model_polys(Model m, const FieldPtr& f);

/// Image of a point; throws IndeterminatePoint when every output coordinate
/// (of some factor) vanishes.
ProjPoint apply(const Field& f, Model m, const ProjPoint& p);

inline constexpr int kOrbitCap = 60;

/// A Galois orbit listed from its representative: apply maps points[i] to
/// points[i+1 mod size].
struct GOrbit {
  Model model = Model::StdP2;
  std::vector<ProjPoint> points;
  std::size_t size() const { return points.size(); }
};

/// Iterates apply until the start point recurs.  Throws PeriodOverflow when
/// the period exceeds cap; IndeterminatePoint is propagated.
GOrbit orbit(const Field& f, Model m, const ProjPoint& p, int cap = kOrbitCap);

/// Candidate points for one (surface, size) pair together with the field
/// they live in.
struct CandidateSet {
  std::string field_key;
  FieldPtr field;
  Model model = Model::StdP2;
  std::vector<ProjPoint> points;
  /// Which lemma form produced each point (P2 even sizes: 0 for [1:y:l],
  /// 1 for [1:y:l^2+l y]; 0 elsewhere).
  std::vector<int> form;
  /// Number of Frobenius-orbit representatives of F_{2^d} (P2 odd sizes).
  std::size_t representatives = 0;
  /// Human-readable notes about solutions that were skipped.
  std::vector<std::string> skipped;
};

/// d in {3,6,7,8}; throws UnsupportedSize.
CandidateSet candidates_p2(int d);
/// Points ([x:1],[y:1]) of P1xP1, d in {4,6,7}; throws UnsupportedSize.
CandidateSet candidates_q(int d);
/// d in {3,4}; throws UnsupportedSize.
CandidateSet candidates_d5(int d);
/// d in {2,3,4,5}; throws UnsupportedSize.
CandidateSet candidates_d6(int d);

/// One representative (smallest bit pattern) of every Frobenius orbit of the
/// subfield F_{2^d} of f, including 0 and 1.
std::vector<Elem> frobenius_orbit_representatives(const Field& f, int d);

}  // namespace cremona2::frob

// Automorphism groups of the four surface models.
//
//   P2  PGL3(F2), 168 matrices
//   Q   the 120 elements of PGL4(F2) fixing x0x3 + x1^2 + x1x2 + x2^2,
//       acting on P1xP1 through the isomorphism Q ~ P1xP1 over F4
//   D5  the powers of h = [xy : y(x+z) : x(y+z)], 5 quadratic maps
//   D6  t_(a,a^2) o p^j o iota^i, 18 maps (a in F4*, p a 3-cycle of the
//       coordinates, iota the standard quadratic involution)
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cremona2/geom.hpp"
#include "cremona2/rmap.hpp"

namespace cremona2::aut {

using ff::Elem;
using ff::Field;
using ff::FieldPtr;
using geom::ProjPoint;

/// Square matrix over GF(2) of size 2, 3 or 4; entry (i,j) is bit i*dim+j.
struct Gf2Matrix {
  int dim = 3;
  std::uint16_t bits = 0;

  int at(int i, int j) const { return (bits >> (i * dim + j)) & 1; }
  void set(int i, int j, int v);
  bool operator==(const Gf2Matrix& o) const { return dim == o.dim && bits == o.bits; }
  bool operator<(const Gf2Matrix& o) const { return dim != o.dim ? dim < o.dim : bits < o.bits; }
  Gf2Matrix operator*(const Gf2Matrix& o) const;
  bool is_invertible() const;
  bool is_identity() const;
  /// Rows as "[[1,1,0],[0,1,0],[0,0,1]]".
  std::string to_string() const;
  /// Applies the matrix to a column vector over a field.
  std::vector<Elem> apply(const Field& f, const std::vector<Elem>& v) const;

  static Gf2Matrix identity(int dim);
  /// Builds from rows (each row a list of 0/1).
  static Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows);
};

/// All invertible matrices of the given size in ascending bit order.
std::vector<Gf2Matrix> general_linear(int dim);
/// Breadth-first product closure; element order is discovery order starting
/// from the sorted, deduplicated generators (right multiplication by each
/// generator in turn).
std::vector<Gf2Matrix> closure(std::vector<Gf2Matrix> generators);
/// Elements of order exactly 2.
std::vector<Gf2Matrix> involutions(const std::vector<Gf2Matrix>& group);
/// The two generators of PGL3(F2): a unipotent and a cyclic permutation.
Gf2Matrix generator_A();
Gf2Matrix generator_B();
/// Exhaustive: closed under products and inverses.
bool is_group(const std::vector<Gf2Matrix>& g);

enum class Surface { P2, Q, D5, D6 };
const char* surface_name(Surface s);
/// Parses "P2", "Q", "D5", "D6"; throws UnknownName.
Surface parse_surface(const std::string& s);

struct SurfaceAutoSet {
  Surface surface = Surface::P2;
  std::vector<Gf2Matrix> linear;    // P2, Q
  std::vector<rmap::RatMap> maps;   // D5, D6
  std::vector<std::string> labels;  // one per element
  std::size_t order() const { return linear.empty() ? maps.size() : linear.size(); }
};

SurfaceAutoSet pgl3_f2();
/// Scans all 2^16 4x4 patterns; keeps the invertible ones preserving the
/// quadratic form coefficient-wise.
SurfaceAutoSet aut_q();
/// id, h, h^2, h^3, h^4, each as a quadratic tuple over GF(2) (the raw
/// composites are reduced by equivalent_of_degree and checked equal).
SurfaceAutoSet aut_d5_model();
/// The 18 maps over a field containing F4 (default F64).
SurfaceAutoSet aut_d6_model(const FieldPtr& f = nullptr);

/// Closure and inverses for a set of rational maps of P2, decided with the
/// cross-product test.
bool is_map_group(const std::vector<rmap::RatMap>& maps);

/// The group acting on model points over field f: one callable per element,
/// in the order of the corresponding SurfaceAutoSet.  For Q each element is
/// transported to P1xP1 as the 4x4 matrix B alpha A over f acting on Segre
/// coordinates.  Birational elements throw IndeterminatePoint off their
/// domain.
using PointAction = std::function<ProjPoint(const ProjPoint&)>;
std::vector<PointAction> point_actions(Surface s, const FieldPtr& f);

/// The Segre/chart conjugate of a 4x4 GF(2) matrix acting on P1xP1(f).
ProjPoint q_transport(const Field& f, const std::vector<std::vector<Elem>>& m, const ProjPoint& p);
/// B alpha A over f.
std::vector<std::vector<Elem>> q_transport_matrix(const Field& f, const Gf2Matrix& alpha);

}  // namespace cremona2::aut

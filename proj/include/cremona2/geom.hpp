// Projective points and the kernel-dimension test for curves with prescribed
// passage and singularity conditions.
//
// A curve of degree d (or bidegree (a,b)) through points p_1..p_n that is
// singular at a chosen subset exists iff the matrix stacking the evaluation
// rows of the monomial basis and, for each singular point, the rows of the
// partial derivatives, has a nontrivial kernel.  All the del Pezzo
// general-position predicates reduce to that nullity.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cremona2/ff.hpp"
#include "cremona2/poly.hpp"

namespace cremona2::geom {

using ff::Elem;
using ff::Field;

enum class Space { P2, P3, P1xP1 };

/// Number of stored coordinates (3, 4, or 2+2).
int coord_count(Space s);
const char* space_name(Space s);

/// A normalized point: first nonzero coordinate (per factor on P1xP1) is 1.
struct ProjPoint {
  Space space = Space::P2;
  std::array<Elem, 4> c{};

  bool operator==(const ProjPoint& o) const { return space == o.space && c == o.c; }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  /// Bit-pattern order on the coordinates (canonical traversal order).
  bool operator<(const ProjPoint& o) const {
    return space != o.space ? space < o.space : c < o.c;
  }
  std::vector<Elem> coords() const;
  /// "[c0:c1:c2]" or "([u0:u1],[v0:v1])" in generator-exponent notation.
  std::string to_string(const Field& f) const;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& p) const noexcept;
};

/// Scales raw coordinates to canonical form; throws ZeroVector.
ProjPoint normalize(const Field& f, Space s, std::array<Elem, 4> raw);
ProjPoint make_p2(const Field& f, Elem x, Elem y, Elem z);
ProjPoint make_p1xp1(const Field& f, Elem x0, Elem x1, Elem y0, Elem y1);
/// Re-expresses a point over a larger field through an embedding.
ProjPoint lift(const ProjPoint& p, const ff::Embedding& emb);

/// Degree (P2, P3) or bidegree (P1xP1) of a linear system.
struct DegreeSpec {
  int a = 0;
  int b = 0;  // second factor degree, P1xP1 only
};

/// Monomials of the given (bi)degree in decreasing graded-lex order.
/// P2 uses variables (x,y,z); P1xP1 uses (x0,x1,y0,y1).
std::vector<poly::Exponents> monomial_basis(Space s, DegreeSpec deg);

using Matrix = std::vector<std::vector<Elem>>;

/// Evaluation rows for every point followed by derivative rows for the
/// points listed in singular_at: three rows (d/dx, d/dy, d/dz) on P2, two rows
/// on P1xP1 (derivative in the non-normalized coordinate of each factor).
Matrix position_matrix(const Field& f, const std::vector<ProjPoint>& points, DegreeSpec deg,
                       const std::vector<int>& singular_at = {});

/// Rank by exact Gaussian elimination (the argument is consumed).
std::size_t matrix_rank(const Field& f, Matrix m);
/// Nullity = columns - rank.
std::size_t kernel_dimension(const Field& f, const Matrix& m);
/// Basis of the null space from the reduced row echelon form: one vector per
/// free column (ascending), with a 1 in that column.
std::vector<std::vector<Elem>> kernel_basis(const Field& f, const Matrix& m, std::size_t ncols);
inline std::vector<std::vector<Elem>> kernel_basis(const Field& f, const Matrix& m) {
  return kernel_basis(f, m, m.empty() ? 0 : m.front().size());
}

enum class Condition { Collinear3, Conic6, NodalCubic8, Ruling2, Curve11_4, Curve21_6, Curve12_6, NodalCurve22_7 };
const char* condition_name(Condition c);

struct PositionReport {
  bool ok = true;
  std::optional<Condition> violated;
  std::vector<int> witness;  // point indices; for nodal conditions the node is listed first
};

/// No 3 collinear, no 6 on a conic, and (for 8 points) no cubic through all
/// of them singular at one of them.  Throws TooManyPoints for more than 8.
PositionReport general_position_p2(const Field& f, const std::vector<ProjPoint>& points);
/// No 2 on a ruling, no 4 on a (1,1)-curve, no 6 on a (2,1)- or (1,2)-curve,
/// and (for 7 points) no (2,2)-curve through all singular at one of them.
/// Throws TooManyPoints for more than 7.
PositionReport general_position_p1xp1(const Field& f, const std::vector<ProjPoint>& points);

/// Calls fn for every k-subset of {0..n-1} in lexicographic order; stops
/// early when fn returns false.
void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn);

}  // namespace cremona2::geom

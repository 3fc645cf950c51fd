// Classification of Galois orbits in general position on the four surface
// models, up to the automorphisms of the model defined over GF(2).
//
// Every pipeline runs the same stages on the candidate list of frob:
//
//   candidates   every point produced by the candidate forms
//   size         one point per Frobenius orbit, orbits of size exactly d
//   position     orbits in general position on the surface
//   classes      one representative per automorphism class
//
// The dedup stage keeps a seen-set of points: for each surviving candidate p
// not yet seen, p becomes a representative and the whole orbit of alpha(p) is
// marked as seen for every automorphism alpha.  It is sequential and depends on
// the traversal order; the filtering stages run on worker threads and are
// merged in candidate order.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cremona2/aut.hpp"
#include "cremona2/frob.hpp"
#include "cremona2/geom.hpp"

namespace cremona2::classify {

using aut::Surface;
using ff::Elem;
using ff::Field;
using ff::FieldPtr;
using geom::ProjPoint;

/// The supported (surface, size) pairs in canonical order.
const std::vector<std::pair<Surface, int>>& supported_pairs();
bool is_supported(Surface s, int d);

/// Field, Frobenius model and automorphism actions of one (surface, size)
/// pair, built once and shared read-only.  Throws UnsupportedPair.
struct SurfaceContext {
  Surface surface = Surface::P2;
  int d = 0;
  std::string field_key;
  FieldPtr field;
  frob::Model model = frob::Model::StdP2;
  std::vector<aut::PointAction> actions;
};
const SurfaceContext& context(Surface s, int d);

/// General position of the orbit on the surface: P2 and Q use the plane and
/// P1xP1 predicates; D5 adds the four frame points and D6 the three coordinate
/// points before testing in P2.
bool general_position_on_surface(Surface s, const Field& f, const std::vector<ProjPoint>& orbit);

struct StageCounts {
  std::size_t representatives = 0;  // Frobenius-orbit representatives of F_{2^d} (P2, odd d)
  std::size_t candidates = 0;
  std::size_t size_ok = 0;          // one point per orbit of size exactly d
  std::size_t position_ok = 0;      // orbits in general position
  /// Candidate points (not orbits) whose orbit has size d and is in general
  /// position; equals position_ok when each orbit meets the list once.
  std::size_t position_points = 0;
  std::size_t classes = 0;          // after dedup
  /// Candidates rejected because the twisted Frobenius is undefined on their
  /// orbit (D5/D6 only).
  std::size_t indeterminate = 0;
};

struct OrbitClass {
  Surface surface = Surface::P2;
  int d = 0;
  ProjPoint representative;
  frob::GOrbit orbit;
  int form = 0;                    // candidate form that produced it
  std::size_t candidate_index = 0; // position in the candidate list
};

struct ClassifyOptions {
  int workers = 1;
  /// Process the candidates in a seeded pseudo-random order instead of the
  /// canonical one (used to test order independence).
  std::optional<std::uint64_t> shuffle_seed;
};

struct Classification {
  Surface surface = Surface::P2;
  int d = 0;
  std::string field_key;
  StageCounts counts;
  std::vector<OrbitClass> classes;
  bool audit_ok = false;               // every class re-verified
  std::vector<std::string> notes;      // skipped candidate solutions
};

/// Runs the full pipeline; throws UnsupportedPair.
Classification classify_orbits(Surface s, int d, const ClassifyOptions& opt = {});

/// The same stages on an arbitrary point list (no candidate forms), used by
/// the completeness oracles.
Classification classify_points(const SurfaceContext& ctx, const std::vector<ProjPoint>& points,
                               const ClassifyOptions& opt = {});

/// All points of P2 over the context field (completeness oracle input).
std::vector<ProjPoint> all_points_p2(const Field& f);

/// Some automorphism maps p into the Galois orbit of q.
bool orbits_equivalent(const SurfaceContext& ctx, const ProjPoint& p, const ProjPoint& q);

/// The published stage table row of a pair; nullopt marks an empty cell.
std::vector<std::optional<std::size_t>> published_stage_row(Surface s, int d);
/// The computed row in the same columns.  P2: (Step 0, Step 1, Step 2) =
/// (representatives, position_points, classes); the Step 0 cell is empty for
/// even d, where every orbit meets the candidate list twice.  Q, D5, D6:
/// (candidates, size_ok, position_ok, classes).
std::vector<std::optional<std::size_t>> computed_stage_row(const Classification& c);
/// The published class count N_d.
std::size_t published_class_count(Surface s, int d);

/// A published representative: the point in the lemma's modulus and the
/// exponent it is listed with.
struct PublishedRepresentative {
  std::string label;  // e.g. "[1:a^k:b], k=5"
  int k = 0;
  ProjPoint point;
};
std::vector<PublishedRepresentative> published_representatives(Surface s, int d);

struct MatchReport {
  bool ok = false;
  std::size_t published_count = 0;
  std::size_t computed_count = 0;
  /// For each published representative the indices of the equivalent classes.
  std::vector<std::vector<std::size_t>> matches;
  std::vector<std::string> problems;
};
/// Bijection between the published representatives and the computed classes
/// under orbits_equivalent.  Each published point is also checked to have an
/// orbit of size d in general position.
MatchReport match_published_representatives(const Classification& c);

/// Pairwise inequivalence of the emitted representatives.
bool dedup_sound(const Classification& c);

/// The size-5 orbit of [1:a:a^2] (a a root of x^5+x^2+1) together with the
/// size-2 orbits of P2(F4) whose union with it is in general position, up to
/// the stabilizer of the size-5 orbit in PGL3(F2).
///
/// That stabilizer is trivial, so every admissible size-2 orbit is its own
/// class (6 of them).  The coarser count of the size-2 orbits up to the
/// automorphisms of the conic C through the size-5 orbit, which move the
/// size-5 orbit to the other size-5 orbits on C, is 2 (tangent versus secant
/// F2-line); it is reported next to it.
struct GeiserPairReport {
  std::size_t size2_orbits = 0;       // 7
  std::size_t on_conic = 0;           // size-2 orbits on C (all seven points on a conic)
  std::size_t general_pairs = 0;      // pairs in general position
  std::size_t stabilizer_order = 0;   // of the size-5 orbit in PGL3(F2)
  std::size_t classes = 0;            // pairs up to that stabilizer
  std::size_t conic_group_order = 0;  // F2-automorphisms preserving C
  std::size_t conic_classes = 0;      // admissible size-2 orbits up to those
  /// Independent count: all size-5 and size-2 orbit pairs in general position
  /// up to PGL3(F2) acting on both orbits at once.
  std::size_t all_pairs = 0;
  std::size_t all_pair_classes = 0;
  /// The field of the computation (F4 and F32 inside it), the size-5 orbit
  /// and one admissible size-2 orbit per class.
  FieldPtr field;
  std::vector<ProjPoint> size5;
  std::vector<std::vector<ProjPoint>> representatives;
};
GeiserPairReport geiser_pair_report();
/// Pairs up to the stabilizer of the size-5 orbit (the classes field).
std::size_t geiser_pair_classes();

struct UniqueSize5Report {
  std::size_t irreducible_quintics = 0;  // 6
  std::size_t size5_orbits = 0;          // all size-5 orbits of P2(F32)
  std::size_t no_three_collinear = 0;
  std::size_t classes = 0;               // 1
  bool contains_standard = false;        // the orbit of [1:a:a^2] is among them
};
UniqueSize5Report unique_size5_report();
bool unique_size5_check();

}  // namespace cremona2::classify

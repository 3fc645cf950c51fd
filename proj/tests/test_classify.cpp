#include <algorithm>
#include <set>

#include "cremona2/classify.hpp"
#include "cremona2/errors.hpp"
#include "doctest.h"

using namespace cremona2;
using namespace cremona2::classify;

namespace {

/// Class multiset as a set of sorted orbits of some canonical member: the
/// smallest point over the whole automorphism image of the orbit.
std::set<ProjPoint> class_keys(const Classification& c) {
  const auto& ctx = context(c.surface, c.d);
  std::set<ProjPoint> keys;
  for (const auto& oc : c.classes) {
    ProjPoint best = oc.representative;
    for (const auto& act : ctx.actions)
      for (const auto& x : frob::orbit(*ctx.field, ctx.model, act(oc.representative)).points) best = std::min(best, x);
    keys.insert(best);
  }
  return keys;
}

}  // namespace

TEST_CASE("supported pairs") {
  CHECK(supported_pairs().size() == 13);
  CHECK(is_supported(Surface::D6, 5));
  CHECK_FALSE(is_supported(Surface::P2, 5));
  CHECK_THROWS_AS(classify_orbits(Surface::Q, 5), UnsupportedPair);
  CHECK_THROWS_AS(context(Surface::D5, 2), UnsupportedPair);
  CHECK(context(Surface::D6, 5).field_key == "F2_30");
  CHECK(context(Surface::P2, 8).actions.size() == 168);
  CHECK(context(Surface::Q, 6).actions.size() == 120);
  CHECK(context(Surface::D5, 3).actions.size() == 5);
  CHECK(context(Surface::D6, 4).actions.size() == 18);
}

TEST_CASE("general position on the surfaces") {
  const auto f8 = ff::registry_field("F8");
  const Elem a = f8->x_class();
  const auto o = frob::orbit(*f8, frob::Model::StdP2, geom::make_p2(*f8, 1, a, f8->sqr(a)));
  CHECK(general_position_on_surface(Surface::P2, *f8, o.points));
  // [1:a:a+1] puts the orbit on the line x+y+z=0.
  const auto line = frob::orbit(*f8, frob::Model::StdP2, geom::make_p2(*f8, 1, a, a ^ 1));
  CHECK_FALSE(general_position_on_surface(Surface::P2, *f8, line.points));
  // No size-4 orbit on the quadric is in general position.
  const auto& q4 = context(Surface::Q, 4);
  for (const auto& p : frob::candidates_q(4).points) {
    try {
      const auto oq = frob::orbit(*q4.field, q4.model, p, 4);
      if (oq.size() == 4) CHECK_FALSE(general_position_on_surface(Surface::Q, *q4.field, oq.points));
    } catch (const PeriodOverflow&) {
    }
  }
  // A D6 orbit containing a point on a coordinate line is rejected.
  const auto& d6 = context(Surface::D6, 3);
  const auto& f = *d6.field;
  CHECK_FALSE(general_position_on_surface(Surface::D6, f, {geom::make_p2(f, 1, 1, 0)}));
}

TEST_CASE("small classifications match the published tables") {
  for (const auto& [s, d] : supported_pairs()) {
    if ((s == Surface::Q && d == 7) || (s == Surface::D6 && d == 5) || (s == Surface::D5 && d == 4)) continue;
    const auto c = classify_orbits(s, d);
    INFO(aut::surface_name(s) << " d=" << d);
    CHECK(c.audit_ok);
    CHECK(c.counts.classes == published_class_count(s, d));
    CHECK(computed_stage_row(c) == published_stage_row(s, d));
    const auto m = match_published_representatives(c);
    CHECK_MESSAGE(m.ok, (m.problems.empty() ? std::string() : m.problems.front()));
    CHECK(dedup_sound(c));
    // Stage counts never increase after the orbit-size stage.
    CHECK(c.counts.size_ok >= c.counts.position_ok);
    CHECK(c.counts.position_ok >= c.counts.classes);
  }
}

TEST_CASE("even sizes on P2: the published Step 1 counts candidate points") {
  const auto c6 = classify_orbits(Surface::P2, 6);
  CHECK(c6.counts.position_ok == 16);
  CHECK(c6.counts.position_points == 32);
  const auto c8 = classify_orbits(Surface::P2, 8);
  CHECK(c8.counts.position_ok == 200);
  CHECK(c8.counts.position_points == 400);
  // Both published forms occur among the 38 classes.
  std::set<int> forms;
  for (const auto& oc : c8.classes) forms.insert(oc.form);
  CHECK(forms == std::set<int>{0, 1});
}

TEST_CASE("representatives of different published exponents are inequivalent") {
  const auto& ctx = context(Surface::P2, 7);
  const auto& f = *ctx.field;
  const Elem a = f.x_class();
  const auto p5 = geom::make_p2(f, 1, a, f.pow(a, 5)), p9 = geom::make_p2(f, 1, a, f.pow(a, 9));
  CHECK_FALSE(orbits_equivalent(ctx, p5, p9));
  CHECK(orbits_equivalent(ctx, p5, p5));
  CHECK(orbits_equivalent(ctx, p5, frob::apply(f, ctx.model, p5)));
  CHECK(orbits_equivalent(ctx, frob::apply(f, ctx.model, p5), p5));
}

TEST_CASE("the printed coordinate order of the D6 size-5 list is not an orbit") {
  // [a^(rk):a^(32rk):1] as printed violates x = y^32; its orbit is not of
  // size 5, while the swapped order is.
  const auto& ctx = context(Surface::D6, 5);
  const auto& f = *ctx.field;
  const std::uint64_t r = f.unit_order() / 993;
  const Elem y = f.pow(f.x_class(), r);
  const auto printed = geom::make_p2(f, y, f.pow(y, 32), 1);
  bool size5 = false;
  try {
    size5 = frob::orbit(f, ctx.model, printed, 5).size() == 5;
  } catch (const PeriodOverflow&) {
  }
  CHECK_FALSE(size5);
  CHECK(frob::orbit(f, ctx.model, geom::make_p2(f, f.pow(y, 32), y, 1), 5).size() == 5);
  const auto reps = published_representatives(Surface::D6, 5);
  CHECK(reps.size() == 11);
}

TEST_CASE("completeness: every point of the field gives the same class count") {
  SUBCASE("P2, d=3") {
    const auto& ctx = context(Surface::P2, 3);
    const auto all = classify_points(ctx, all_points_p2(*ctx.field));
    CHECK(all.counts.candidates == 73);
    CHECK(all.counts.classes == 1);
    CHECK(all.audit_ok);
  }
  SUBCASE("D6, d=2 and d=3") {
    for (int d : {2, 3}) {
      const auto& ctx = context(Surface::D6, d);
      const auto all = classify_points(ctx, all_points_p2(*ctx.field), {4, {}});
      CHECK(all.counts.candidates == 64 * 64 + 64 + 1);
      CHECK(all.counts.classes == published_class_count(Surface::D6, d));
      // The same classes as the candidate pipeline.
      CHECK(class_keys(all) == class_keys(classify_orbits(Surface::D6, d)));
    }
  }
}

TEST_CASE("worker count and traversal order do not change the classes") {
  for (const auto& [s, d] : std::vector<std::pair<Surface, int>>{{Surface::P2, 7}, {Surface::Q, 6}, {Surface::D6, 4}}) {
    const auto base = classify_orbits(s, d, {1, {}});
    const auto par = classify_orbits(s, d, {5, {}});
    const auto shuffled = classify_orbits(s, d, {3, 12345});
    INFO(aut::surface_name(s) << " d=" << d);
    // Same worker-independent representatives in canonical order.
    REQUIRE(base.classes.size() == par.classes.size());
    for (std::size_t i = 0; i < base.classes.size(); ++i)
      CHECK(base.classes[i].representative == par.classes[i].representative);
    CHECK(computed_stage_row(base) == computed_stage_row(shuffled));
    CHECK(class_keys(base) == class_keys(shuffled));
    CHECK(match_published_representatives(shuffled).ok);
  }
}

TEST_CASE("pairs of a size-5 and a size-2 orbit") {
  const auto r = geiser_pair_report();
  CHECK(r.size2_orbits == 7);
  // Exactly one size-2 orbit lies on the conic through the size-5 orbit; all
  // others give seven points in general position.
  CHECK(r.on_conic == 1);
  CHECK(r.general_pairs == 6);
  // An F2-automorphism fixing the orbit acts on it by a power of the
  // Frobenius 5-cycle; 5 does not divide 168, so it fixes all five points and
  // is the identity.
  CHECK(r.stabilizer_order == 1);
  CHECK(r.classes == 6);
  CHECK(geiser_pair_classes() == 6);
  // The conic's automorphisms (PGL2(F2)) separate tangent from secant lines.
  CHECK(r.conic_group_order == 6);
  CHECK(r.conic_classes == 2);
  // Brute force over all 168 admissible size-5 orbits agrees with the
  // stabilizer count.
  CHECK(r.all_pairs == 168 * 6);
  CHECK(r.all_pair_classes == r.classes);
}

TEST_CASE("the size-5 orbit with no three collinear points is unique") {
  const auto r = unique_size5_report();
  CHECK(r.irreducible_quintics == 6);
  CHECK(r.size5_orbits == (1057 - 7) / 5);
  CHECK(r.contains_standard);
  CHECK(r.classes == 1);
  CHECK(unique_size5_check());
}

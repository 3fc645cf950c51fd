#include <set>

#include "cremona2/frob.hpp"
#include "doctest.h"

using namespace cremona2;
using namespace cremona2::frob;
using poly::MPoly;

namespace {

bool proportional(const std::vector<MPoly>& f, const std::vector<MPoly>& g) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (f[i] * g[j] != f[j] * g[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("model actions on points") {
  auto f4 = ff::registry_field("F4");
  const Elem w = f4->x_class(), w2 = f4->sqr(w);
  CHECK(apply(*f4, Model::StdP2, geom::make_p2(*f4, 1, w, w2)) == geom::make_p2(*f4, 1, w2, w));
  CHECK(apply(*f4, Model::D6Twist, geom::make_p2(*f4, 1, 1, 1)) == geom::make_p2(*f4, 1, 1, 1));
  CHECK_THROWS_AS(apply(*f4, Model::D6Twist, geom::make_p2(*f4, 1, 0, 0)), IndeterminatePoint);
  CHECK_THROWS_AS(apply(*f4, Model::D5Twist, geom::make_p2(*f4, 0, 0, 1)), IndeterminatePoint);
}

TEST_CASE("twisted Frobenius squares as formula identities") {
  auto f2 = ff::gf2();
  const auto d6 = model_polys(Model::D6Twist, f2);
  const auto d6sq = std::vector<MPoly>{d6[0].compose(d6), d6[1].compose(d6), d6[2].compose(d6)};
  CHECK(proportional(d6sq, {MPoly::parse(f2, 3, "z^4"), MPoly::parse(f2, 3, "x^4"), MPoly::parse(f2, 3, "y^4")}));
  const auto q = model_polys(Model::QTwist, f2);
  std::vector<MPoly> qsq;
  for (const auto& c : q) qsq.push_back(c.compose(q));
  CHECK(qsq[0] == MPoly::parse(f2, 4, "x0^4"));
  CHECK(qsq[1] == MPoly::parse(f2, 4, "x1^4"));
  CHECK(qsq[2] == MPoly::parse(f2, 4, "y0^4"));
  CHECK(qsq[3] == MPoly::parse(f2, 4, "y1^4"));
}

TEST_CASE("pointwise action agrees with the polynomial tuple") {
  auto f = ff::registry_field("F2_20");
  for (Model m : {Model::StdP2, Model::D5Twist, Model::D6Twist}) {
    const auto polys = model_polys(m, f);
    for (Elem t = 3; t < 3000; t += 97) {
      const auto p = geom::make_p2(*f, 1, t, f->mul(t, t) ^ 5);
      std::array<Elem, 4> raw{};
      for (int i = 0; i < 3; ++i) raw[i] = polys[i].eval(p.coords());
      CHECK(apply(*f, m, p) == geom::normalize(*f, geom::Space::P2, raw));
    }
  }
}

TEST_CASE("orbits") {
  auto f16 = ff::registry_field("F16");
  const Elem r = f16->x_class();
  CHECK(orbit(*f16, Model::StdP2, geom::make_p2(*f16, 1, r, f16->sqr(r))).size() == 4);
  CHECK(orbit(*f16, Model::StdP2, geom::make_p2(*f16, 1, 1, 0)).size() == 1);
  auto f14 = ff::registry_field("F2_14");
  const Elem x = f14->generator();
  const auto o = orbit(*f14, Model::QTwist, geom::make_p1xp1(*f14, x, 1, f14->frobenius(x, 7), 1));
  CHECK(o.size() == 7);
  for (std::size_t i = 0; i < o.size(); ++i)
    CHECK(apply(*f14, Model::QTwist, o.points[i]) == o.points[(i + 1) % o.size()]);
  CHECK_THROWS_AS(orbit(*f16, Model::StdP2, geom::make_p2(*f16, 1, r, 0), 2), PeriodOverflow);
}

TEST_CASE("orbit sizes divide the field degree for the standard action") {
  auto f = ff::registry_field("F64");
  for (Elem y = 0; y < 64; y += 5)
    for (Elem z = 1; z < 64; z += 7) CHECK(6 % orbit(*f, Model::StdP2, geom::make_p2(*f, 1, y, z)).size() == 0);
}

TEST_CASE("P2 candidates") {
  auto c3 = candidates_p2(3);
  CHECK(c3.representatives == 4);
  CHECK(c3.points.size() == 32);
  auto c7 = candidates_p2(7);
  CHECK(c7.representatives == 20);
  CHECK(c7.points.size() == 2560);
  auto c8 = candidates_p2(8);
  CHECK(c8.points.size() == 512);
  const auto& f = *c8.field;
  const Elem l = f.pow(f.x_class(), 17);
  CHECK(f.minimal_polynomial(l) == ff::Coeffs{1, 1, 0, 0, 1});
  for (std::size_t i = 0; i < c8.points.size(); ++i) {
    const auto& p = c8.points[i];
    CHECK(p.c[0] == 1);
    if (c8.form[i] == 0) CHECK(p.c[2] == l);
    else CHECK(p.c[2] == (f.sqr(l) ^ f.mul(l, p.c[1])));
  }
  CHECK_THROWS_AS(candidates_p2(5), UnsupportedSize);
}

TEST_CASE("Q candidates") {
  CHECK(candidates_q(4).points.size() == 225);
  CHECK(candidates_q(6).points.size() == 3969);
  const auto c7 = candidates_q(7);
  CHECK(c7.points.size() == 16383);
  for (std::size_t i = 0; i < c7.points.size(); i += 101)
    CHECK(c7.points[i].c[2] == c7.field->frobenius(c7.points[i].c[0], 7));
  CHECK_THROWS_AS(candidates_q(5), UnsupportedSize);
}

TEST_CASE("D5 candidates satisfy their equations") {
  const auto c3 = candidates_d5(3);
  CHECK(c3.points.size() == 65);
  REQUIRE(c3.skipped.size() == 1);  // the base point [1:1:1] (b = 1) solves the equation too
  const auto& f = *c3.field;
  for (const auto& p : c3.points) {
    const Elem b = p.c[2];
    const Elem lhs = f.pow(b, 73) ^ f.pow(b, 72) ^ f.pow(b, 64) ^ f.pow(b, 57) ^ f.pow(b, 9) ^ f.pow(b, 8) ^ b;
    CHECK(lhs == 1);
    CHECK(f.mul(p.c[1], f.pow(b, 8) ^ f.pow(b, 7) ^ 1) == 1);
  }
  const auto c4 = candidates_d5(4);
  CHECK(c4.points.size() == 257);
  const auto& g = *c4.field;
  for (const auto& p : c4.points) {
    CHECK((g.pow(p.c[1], 257) ^ g.pow(p.c[1], 16)) == 1);
    CHECK(p.c[2] == (1 ^ g.pow(p.c[1], 16)));
  }
}

TEST_CASE("D6 candidates") {
  CHECK(candidates_d6(2).points.size() == 21);
  CHECK(candidates_d6(3).points.size() == 81);
  CHECK(candidates_d6(4).points.size() == 273);
  const auto c5 = candidates_d6(5);
  CHECK(c5.points.size() == 993);
  const auto& f = *c5.field;
  for (const auto& p : c5.points) {
    const Elem b = f.div(p.c[1], p.c[2]);
    CHECK(f.pow(b, 993) == 1);
    CHECK(f.div(p.c[0], p.c[2]) == f.pow(b, 32));
  }
  CHECK(std::set<geom::ProjPoint>(c5.points.begin(), c5.points.end()).size() == 993);
}

TEST_CASE("subfield orbit representatives") {
  auto f = ff::registry_field("F128");
  CHECK(frobenius_orbit_representatives(*f, 7).size() == 20);
  CHECK(frobenius_orbit_representatives(*ff::registry_field("F8"), 3).size() == 4);
}

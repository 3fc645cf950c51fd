#include <algorithm>
#include <random>

#include "cremona2/geom.hpp"
#include "doctest.h"

using namespace cremona2;
using namespace cremona2::geom;

namespace {

// Brute-force oracle: does some nonzero curve of degree deg (P2) vanish on all points?
bool brute_curve_exists(const ff::Field& f, const std::vector<ProjPoint>& pts, int deg) {
  const auto basis = monomial_basis(Space::P2, {deg, 0});
  const std::size_t n = basis.size();
  std::vector<std::vector<Elem>> vals;
  for (const auto& p : pts) {
    std::vector<Elem> row;
    for (const auto& e : basis) {
      Elem v = 1;
      for (int i = 0; i < 3; ++i) v = f.mul(v, f.pow(p.c[i], static_cast<std::uint64_t>(e[i])));
      row.push_back(v);
    }
    vals.push_back(row);
  }
  // Enumerate coefficient vectors whose first nonzero entry is 1.
  std::vector<Elem> coef(n, 0);
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::fill(coef.begin(), coef.end(), 0);
    coef[lead] = 1;
    const std::size_t rest = n - lead - 1;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < rest; ++i) total *= f.size();
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = lead + 1; i < n; ++i) {
        coef[i] = c & (f.size() - 1);
        c >>= f.degree();
      }
      bool all = true;
      for (const auto& row : vals) {
        Elem s = 0;
        for (std::size_t i = lead; i < n && all; ++i) s ^= f.mul(coef[i], row[i]);
        if (s != 0) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
  }
  return false;
}

bool brute_general_position(const ff::Field& f, const std::vector<ProjPoint>& pts, bool with_conics) {
  bool ok = true;
  for_each_subset(static_cast<int>(pts.size()), 3, [&](const std::vector<int>& idx) {
    if (brute_curve_exists(f, {pts[idx[0]], pts[idx[1]], pts[idx[2]]}, 1)) ok = false;
    return ok;
  });
  if (ok && with_conics && pts.size() == 6) ok = !brute_curve_exists(f, pts, 2);
  return ok;
}

ProjPoint random_p2(const ff::Field& f, std::mt19937_64& rng) {
  while (true) {
    const Elem x = rng() & (f.size() - 1), y = rng() & (f.size() - 1), z = rng() & (f.size() - 1);
    if (x | y | z) return make_p2(f, x, y, z);
  }
}

}  // namespace

TEST_CASE("normalization") {
  auto f = ff::registry_field("F16");
  const Elem a = f->x_class();
  CHECK(make_p2(*f, a, a, a) == make_p2(*f, 1, 1, 1));
  const ProjPoint q = make_p1xp1(*f, 0, a, f->sqr(a), f->sqr(a));
  CHECK(q == make_p1xp1(*f, 0, 1, 1, 1));
  CHECK_THROWS_AS(make_p2(*f, 0, 0, 0), ZeroVector);
  CHECK_THROWS_AS(make_p1xp1(*f, 1, 0, 0, 0), ZeroVector);
  CHECK(make_p2(*f, 0, a, 1).to_string(*f) == "[0:1:a^14]");
}

TEST_CASE("monomial bases") {
  CHECK(monomial_basis(Space::P2, {1, 0}).size() == 3);
  CHECK(monomial_basis(Space::P2, {1, 0}).front() == poly::Exponents{1, 0, 0, 0});
  CHECK(monomial_basis(Space::P2, {3, 0}).size() == 10);
  CHECK(monomial_basis(Space::P1xP1, {2, 2}).size() == 9);
  CHECK(monomial_basis(Space::P1xP1, {2, 1}).size() == 6);
}

TEST_CASE("position matrix shapes") {
  auto f = ff::registry_field("F256");
  std::mt19937_64 rng(1);
  std::vector<ProjPoint> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(random_p2(*f, rng));
  const Matrix m = position_matrix(*f, pts, {3, 0}, {2});
  CHECK(m.size() == 11);
  CHECK(m.front().size() == 10);
  std::vector<ProjPoint> q;
  for (int i = 0; i < 7; ++i) q.push_back(make_p1xp1(*f, 1, rng() & 255, 1, rng() & 255));
  const Matrix mq = position_matrix(*f, q, {2, 2}, {0});
  CHECK(mq.size() == 9);
  CHECK(mq.front().size() == 9);
}

TEST_CASE("kernel dimension and basis") {
  auto f = ff::registry_field("F8");
  const Matrix id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(kernel_dimension(*f, id) == 0);
  CHECK(kernel_basis(*f, id).empty());
  CHECK(kernel_dimension(*f, Matrix(2, std::vector<Elem>(5, 0))) == 5);
  const std::vector<ProjPoint> line = {make_p2(*f, 1, 0, 0), make_p2(*f, 0, 1, 0), make_p2(*f, 1, 1, 0)};
  CHECK(kernel_dimension(*f, position_matrix(*f, line, {1, 0})) == 1);
  // Kernel vectors really annihilate the matrix, and rank + nullity = columns.
  std::mt19937_64 rng(9);
  auto f256 = ff::registry_field("F256");
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    Matrix m(rows, std::vector<Elem>(cols));
    for (auto& r : m)
      for (auto& v : r) v = (rng() % 3 == 0) ? 0 : (rng() & 255);
    if (trial % 5 == 0) m.push_back(m.front());  // force a dependency
    const auto basis = kernel_basis(*f256, m);
    CHECK(basis.size() == kernel_dimension(*f256, m));
    CHECK(basis.size() + matrix_rank(*f256, m) == cols);
    for (const auto& v : basis)
      for (const auto& r : m) {
        Elem s = 0;
        for (std::size_t j = 0; j < cols; ++j) s ^= f256->mul(r[j], v[j]);
        CHECK(s == 0);
      }
  }
}

TEST_CASE("general position on P2: examples") {
  auto f16 = ff::registry_field("F16");
  std::vector<ProjPoint> four;
  Elem r = f16->x_class();
  for (int i = 0; i < 4; ++i) {
    four.push_back(make_p2(*f16, 1, r, f16->sqr(r)));
    r = f16->sqr(r);
  }
  CHECK(general_position_p2(*f16, four).ok);
  const auto bad = general_position_p2(
      *f16, {make_p2(*f16, 1, 0, 0), make_p2(*f16, 0, 1, 0), make_p2(*f16, 1, 1, 0), make_p2(*f16, 0, 0, 1)});
  CHECK_FALSE(bad.ok);
  CHECK(bad.violated == Condition::Collinear3);
  CHECK(bad.witness == std::vector<int>{0, 1, 2});
  // Seven points on the conic y^2 = xz: [1:t:t^2].
  std::vector<ProjPoint> conic;
  for (Elem t = 1; t <= 7; ++t) conic.push_back(make_p2(*f16, 1, t, f16->sqr(t)));
  const auto rep = general_position_p2(*f16, conic);
  CHECK(rep.violated == Condition::Conic6);
  std::vector<ProjPoint> nine(9, make_p2(*f16, 1, 0, 0));
  CHECK_THROWS_AS(general_position_p2(*f16, nine), TooManyPoints);
}

TEST_CASE("general position on P2 agrees with curve enumeration") {
  std::mt19937_64 rng(2024);
  for (const char* key : {"F4", "F8", "F16", "F256"}) {
    auto f = ff::registry_field(key);
    const bool with_conics = f->degree() <= 4;
    const int trials = f->degree() <= 3 ? 40 : 12;
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<ProjPoint> pts;
      const int n = with_conics ? 6 : 3 + static_cast<int>(rng() % 3);
      // Half of the samples are drawn from a conic to exercise the conic branch.
      // (A conic over F4 has only five points, so F4 draws at random.)
      const bool on_conic = trial % 2 == 0 && f->degree() >= 3;
      while (static_cast<int>(pts.size()) < n) {
        ProjPoint p;
        if (on_conic) {
          const Elem t = rng() & (f->size() - 1);
          p = make_p2(*f, f->sqr(t) ^ 1, t, 1);  // on the conic xz = y^2 + z^2
        } else {
          p = random_p2(*f, rng);
        }
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
      }
      const auto rep = general_position_p2(*f, pts);
      const bool ok_conics = with_conics || pts.size() < 6;
      CHECK(rep.ok == brute_general_position(*f, pts, ok_conics));
    }
  }
}

TEST_CASE("general position on P1xP1") {
  auto f = ff::registry_field("F16");
  const auto ruling = general_position_p1xp1(*f, {make_p1xp1(*f, 1, 0, 1, 0), make_p1xp1(*f, 1, 0, 1, 1)});
  CHECK(ruling.violated == Condition::Ruling2);
  CHECK(general_position_p1xp1(
            *f, {make_p1xp1(*f, 1, 0, 1, 0), make_p1xp1(*f, 0, 1, 0, 1), make_p1xp1(*f, 1, 1, 1, 1)})
            .ok);
  // Four solutions of x0 y0 + x1 y1 = 0 with distinct coordinates, found by search.
  std::vector<ProjPoint> pts;
  for (Elem u = 1; u < f->size() && pts.size() < 4; ++u) {
    // ([u:1],[v:1]) with u v + 1 = 0, i.e. v = 1/u.
    const ProjPoint p = make_p1xp1(*f, u, 1, f->inv(u), 1);
    if (u == 1) continue;
    pts.push_back(p);
  }
  for (const auto& p : pts) CHECK((f->mul(p.c[0], p.c[2]) ^ f->mul(p.c[1], p.c[3])) == 0);
  const auto rep = general_position_p1xp1(*f, pts);
  CHECK(rep.violated == Condition::Curve11_4);
  std::vector<ProjPoint> eight(8, make_p1xp1(*f, 1, 0, 1, 0));
  CHECK_THROWS_AS(general_position_p1xp1(*f, eight), TooManyPoints);
}

TEST_CASE("subset enumeration") {
  int count = 0;
  for_each_subset(8, 6, [&](const std::vector<int>&) {
    ++count;
    return true;
  });
  CHECK(count == 28);
}

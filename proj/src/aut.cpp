#include "cremona2/aut.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>

namespace cremona2::aut {

using poly::MPoly;
using rmap::MapSpace;
using rmap::RatMap;

void Gf2Matrix::set(int i, int j, int v) {
  const std::uint16_t mask = static_cast<std::uint16_t>(1u << (i * dim + j));
  bits = v ? (bits | mask) : (bits & ~mask);
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& o) const {
  if (dim != o.dim) throw ArityMismatch("matrix sizes differ");
  Gf2Matrix r{dim, 0};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      int s = 0;
      for (int k = 0; k < dim; ++k) s ^= at(i, k) & o.at(k, j);
      r.set(i, j, s);
    }
  return r;
}

bool Gf2Matrix::is_invertible() const {
  std::vector<unsigned> rows(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) rows[i] = (bits >> (i * dim)) & ((1u << dim) - 1);
  int rank = 0;
  for (int c = 0; c < dim; ++c) {
    int piv = -1;
    for (int r = rank; r < dim; ++r)
      if ((rows[r] >> c) & 1) piv = r;
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < dim; ++r)
      if (r != rank && ((rows[r] >> c) & 1)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank == dim;
}

bool Gf2Matrix::is_identity() const { return *this == identity(dim); }

std::string Gf2Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < dim; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < dim; ++j) os << (j ? "," : "") << at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<Elem> Gf2Matrix::apply(const Field&, const std::vector<Elem>& v) const {
  std::vector<Elem> r(static_cast<std::size_t>(dim), 0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (at(i, j)) r[i] ^= v[j];
  return r;
}

Gf2Matrix Gf2Matrix::identity(int dim) {
  Gf2Matrix m{dim, 0};
  for (int i = 0; i < dim; ++i) m.set(i, i, 1);
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::vector<int>>& rows) {
  Gf2Matrix m{static_cast<int>(rows.size()), 0};
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) m.set(i, j, rows[i][j]);
  return m;
}

std::vector<Gf2Matrix> general_linear(int dim) {
  if (dim < 1 || dim > 4) throw ArityMismatch("matrix size must be 1..4");
  std::vector<Gf2Matrix> out;
  const std::uint32_t n = 1u << (dim * dim);
  for (std::uint32_t b = 0; b < n; ++b) {
    const Gf2Matrix m{dim, static_cast<std::uint16_t>(b)};
    if (m.is_invertible()) out.push_back(m);
  }
  return out;
}

std::vector<Gf2Matrix> closure(std::vector<Gf2Matrix> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Gf2Matrix> out;
  std::set<Gf2Matrix> seen;
  std::deque<Gf2Matrix> queue;
  for (const auto& g : gens)
    if (seen.insert(g).second) {
      out.push_back(g);
      queue.push_back(g);
    }
  while (!queue.empty()) {
    const Gf2Matrix cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      const Gf2Matrix p = cur * g;
      if (seen.insert(p).second) {
        out.push_back(p);
        queue.push_back(p);
      }
    }
  }
  return out;
}

std::vector<Gf2Matrix> involutions(const std::vector<Gf2Matrix>& group) {
  std::vector<Gf2Matrix> out;
  for (const auto& g : group)
    if (!g.is_identity() && (g * g).is_identity()) out.push_back(g);
  return out;
}

Gf2Matrix generator_A() { return Gf2Matrix::from_rows({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}); }
Gf2Matrix generator_B() { return Gf2Matrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}); }

bool is_group(const std::vector<Gf2Matrix>& g) {
  const std::set<Gf2Matrix> s(g.begin(), g.end());
  if (g.empty()) return false;
  for (const auto& a : g) {
    bool has_inverse = false;
    for (const auto& b : g) {
      const Gf2Matrix p = a * b;
      if (!s.count(p)) return false;
      has_inverse = has_inverse || p.is_identity();
    }
    if (!has_inverse) return false;
  }
  return true;
}

const char* surface_name(Surface s) {
  switch (s) {
    case Surface::P2: return "P2";
    case Surface::Q: return "Q";
    case Surface::D5: return "D5";
    case Surface::D6: return "D6";
  }
  return "?";
}

Surface parse_surface(const std::string& s) {
  if (s == "P2") return Surface::P2;
  if (s == "Q") return Surface::Q;
  if (s == "D5") return Surface::D5;
  if (s == "D6") return Surface::D6;
  throw UnknownName("unknown surface '" + s + "'");
}

SurfaceAutoSet pgl3_f2() {
  SurfaceAutoSet s;
  s.surface = Surface::P2;
  s.linear = general_linear(3);
  for (const auto& m : s.linear) s.labels.push_back(m.to_string());
  return s;
}

SurfaceAutoSet aut_q() {
  static const SurfaceAutoSet cached = [] {
    SurfaceAutoSet s;
    s.surface = Surface::Q;
    const FieldPtr G = ff::gf2();
    const MPoly form = rmap::quadric_form(G);
    std::vector<MPoly> vars;
    for (int i = 0; i < 4; ++i) vars.push_back(MPoly::variable(G, 4, i));
    for (const auto& m : general_linear(4)) {
      std::vector<MPoly> sub;
      for (int i = 0; i < 4; ++i) {
        MPoly r(G, 4);
        for (int j = 0; j < 4; ++j)
          if (m.at(i, j)) r += vars[j];
        sub.push_back(r);
      }
      if (form.compose(sub) == form) {
        s.linear.push_back(m);
        s.labels.push_back(m.to_string());
      }
    }
    return s;
  }();
  return cached;
}

SurfaceAutoSet aut_d5_model() {
  static const SurfaceAutoSet cached = [] {
    SurfaceAutoSet s;
    s.surface = Surface::D5;
    const RatMap h = rmap::builtin("d5_h");
    s.maps.push_back(rmap::identity_map(MapSpace::P2, ff::gf2()));
    s.labels.push_back("id");
    RatMap cur = h;
    for (int k = 1; k < 5; ++k) {
      const auto red = rmap::equivalent_of_degree(cur, 2);
      if (!red) throw WrongDimension("power h^" + std::to_string(k) + " is not quadratic");
      s.maps.push_back(*red);
      s.labels.push_back(k == 1 ? "h" : "h^" + std::to_string(k));
      cur = rmap::map_compose(h, *red);
    }
    return s;
  }();
  return cached;
}

SurfaceAutoSet aut_d6_model(const FieldPtr& f_in) {
  const FieldPtr f = f_in ? f_in : ff::registry_field("F64");
  SurfaceAutoSet s;
  s.surface = Surface::D6;
  const Elem w = f->embed_with_min_poly({1, 1, 1});
  const std::vector<Elem> units = {1, w, f->sqr(w)};
  const std::vector<std::string> unit_names = {"1", "w", "w^2"};
  auto var = [&](int i) { return MPoly::variable(f, 3, i); };
  const std::vector<MPoly> x = {var(0), var(1), var(2)};
  for (int i = 0; i < 2; ++i) {
    // iota^i
    const std::vector<MPoly> base = i == 0 ? x : std::vector<MPoly>{x[1] * x[2], x[0] * x[2], x[0] * x[1]};
    for (int j = 0; j < 3; ++j) {
      // p^j: [x:y:z] -> [y:z:x] applied j times.
      std::vector<MPoly> pj(3, MPoly(f, 3));
      for (int c = 0; c < 3; ++c) pj[c] = base[(c + j) % 3];
      for (std::size_t ai = 0; ai < units.size(); ++ai) {
        const Elem a = units[ai];
        RatMap m = rmap::make_map(MapSpace::P2, MapSpace::P2,
                                  {pj[0], pj[1].scaled(a), pj[2].scaled(f->sqr(a))});
        s.maps.push_back(std::move(m));
        s.labels.push_back("t(" + unit_names[ai] + ") p^" + std::to_string(j) + " iota^" + std::to_string(i));
      }
    }
  }
  return s;
}

bool is_map_group(const std::vector<RatMap>& maps) {
  if (maps.empty()) return false;
  const RatMap id = rmap::identity_map(maps.front().src, maps.front().field());
  for (const auto& a : maps) {
    bool has_inverse = false;
    for (const auto& b : maps) {
      const RatMap p = rmap::map_compose(a, b);
      bool found = false;
      for (const auto& c : maps)
        if (rmap::maps_equal_rational(p, c)) {
          found = true;
          break;
        }
      if (!found) return false;
      has_inverse = has_inverse || rmap::maps_equal_rational(p, id);
    }
    if (!has_inverse) return false;
  }
  return true;
}

std::vector<std::vector<Elem>> q_transport_matrix(const Field& f, const Gf2Matrix& alpha) {
  const Elem xi = rmap::phi_q_xi(f), xi2 = f.sqr(xi);
  // B: Q coordinates -> Segre coordinates;  A = B^-1.
  const std::vector<std::vector<Elem>> B = {{1, 0, 0, 0}, {0, 1, xi, 0}, {0, 1, xi2, 0}, {0, 0, 0, 1}};
  const std::vector<std::vector<Elem>> A = {{1, 0, 0, 0}, {0, xi2, xi, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}};
  auto mul = [&](const std::vector<std::vector<Elem>>& p, const std::vector<std::vector<Elem>>& q) {
    std::vector<std::vector<Elem>> r(4, std::vector<Elem>(4, 0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) r[i][j] = f.add(r[i][j], f.mul(p[i][k], q[k][j]));
    return r;
  };
  std::vector<std::vector<Elem>> al(4, std::vector<Elem>(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) al[i][j] = static_cast<Elem>(alpha.at(i, j));
  return mul(B, mul(al, A));
}

ProjPoint q_transport(const Field& f, const std::vector<std::vector<Elem>>& m, const ProjPoint& p) {
  const auto& c = p.c;
  const std::array<Elem, 4> z = {f.mul(c[0], c[2]), f.mul(c[0], c[3]), f.mul(c[1], c[2]), f.mul(c[1], c[3])};
  std::array<Elem, 4> w{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w[i] = f.add(w[i], f.mul(m[i][j], z[j]));
  // w lies on w0 w3 = w1 w2; read off the two rulings.
  std::array<Elem, 4> raw{};
  if (w[0] || w[2]) raw[0] = w[0], raw[1] = w[2];
  else raw[0] = w[1], raw[1] = w[3];
  if (w[0] || w[1]) raw[2] = w[0], raw[3] = w[1];
  else raw[2] = w[2], raw[3] = w[3];
  return geom::normalize(f, geom::Space::P1xP1, raw);
}

std::vector<PointAction> point_actions(Surface s, const FieldPtr& fp) {
  std::vector<PointAction> out;
  const Field* f = fp.get();
  switch (s) {
    case Surface::P2:
      for (const auto& m : pgl3_f2().linear)
        out.push_back([m, f, fp](const ProjPoint& p) {
          const auto v = m.apply(*f, {p.c[0], p.c[1], p.c[2]});
          return geom::make_p2(*f, v[0], v[1], v[2]);
        });
      break;
    case Surface::Q:
      for (const auto& a : aut_q().linear) {
        auto m = q_transport_matrix(*f, a);
        out.push_back([m, f, fp](const ProjPoint& p) { return q_transport(*f, m, p); });
      }
      break;
    case Surface::D5:
      for (const auto& m : aut_d5_model().maps) {
        const RatMap lm = m.lifted(fp);
        out.push_back([lm](const ProjPoint& p) { return rmap::eval_map(lm, p); });
      }
      break;
    case Surface::D6:
      for (const auto& m : aut_d6_model(fp).maps)
        out.push_back([m](const ProjPoint& p) { return rmap::eval_map(m, p); });
      break;
  }
  return out;
}

}  // namespace cremona2::aut

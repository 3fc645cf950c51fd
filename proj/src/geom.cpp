#include "cremona2/geom.hpp"

#include <algorithm>

namespace cremona2::geom {

int coord_count(Space s) { return s == Space::P2 ? 3 : 4; }

const char* space_name(Space s) {
  switch (s) {
    case Space::P2: return "P2";
    case Space::P3: return "P3";
    case Space::P1xP1: return "P1xP1";
  }
  return "?";
}

std::vector<Elem> ProjPoint::coords() const {
  return std::vector<Elem>(c.begin(), c.begin() + coord_count(space));
}

std::string ProjPoint::to_string(const Field& f) const {
  auto s = [&](int i) { return f.to_string(c[static_cast<std::size_t>(i)]); };
  switch (space) {
    case Space::P2: return "[" + s(0) + ":" + s(1) + ":" + s(2) + "]";
    case Space::P3: return "[" + s(0) + ":" + s(1) + ":" + s(2) + ":" + s(3) + "]";
    case Space::P1xP1: return "([" + s(0) + ":" + s(1) + "],[" + s(2) + ":" + s(3) + "])";
  }
  return "";
}

std::size_t ProjPointHash::operator()(const ProjPoint& p) const noexcept {
  std::size_t h = static_cast<std::size_t>(p.space) * 0x9E3779B97F4A7C15ull;
  for (Elem v : p.c) h = (h ^ v) * 0x100000001B3ull + (h >> 29);
  return h;
}

namespace {

// Scales c[lo..hi) so that its first nonzero entry becomes 1.
void normalize_range(const Field& f, std::array<Elem, 4>& c, int lo, int hi) {
  int first = lo;
  while (first < hi && c[static_cast<std::size_t>(first)] == 0) ++first;
  if (first == hi) throw ZeroVector("all coordinates vanish");
  const Elem s = f.inv(c[static_cast<std::size_t>(first)]);
  for (int i = first; i < hi; ++i) c[static_cast<std::size_t>(i)] = f.mul(c[static_cast<std::size_t>(i)], s);
}

}  // namespace

ProjPoint normalize(const Field& f, Space s, std::array<Elem, 4> raw) {
  ProjPoint p;
  p.space = s;
  if (s == Space::P2) raw[3] = 0;
  if (s == Space::P1xP1) {
    normalize_range(f, raw, 0, 2);
    normalize_range(f, raw, 2, 4);
  } else {
    normalize_range(f, raw, 0, coord_count(s));
  }
  p.c = raw;
  return p;
}

ProjPoint make_p2(const Field& f, Elem x, Elem y, Elem z) { return normalize(f, Space::P2, {x, y, z, 0}); }

ProjPoint make_p1xp1(const Field& f, Elem x0, Elem x1, Elem y0, Elem y1) {
  return normalize(f, Space::P1xP1, {x0, x1, y0, y1});
}

ProjPoint lift(const ProjPoint& p, const ff::Embedding& emb) {
  ProjPoint q = p;
  for (auto& v : q.c) v = emb(v);
  return q;  // embeddings preserve 0 and 1, hence normalization
}

std::vector<poly::Exponents> monomial_basis(Space s, DegreeSpec deg) {
  std::vector<poly::Exponents> out;
  if (s == Space::P2) {
    for (int i = deg.a; i >= 0; --i)
      for (int j = deg.a - i; j >= 0; --j) out.push_back({i, j, deg.a - i - j, 0});
  } else if (s == Space::P3) {
    for (int i = deg.a; i >= 0; --i)
      for (int j = deg.a - i; j >= 0; --j)
        for (int k = deg.a - i - j; k >= 0; --k) out.push_back({i, j, k, deg.a - i - j - k});
  } else {
    for (int i = deg.a; i >= 0; --i)
      for (int j = deg.b; j >= 0; --j) out.push_back({i, deg.a - i, j, deg.b - j});
  }
  // Decreasing graded-lex order coincides with decreasing packed keys.
  std::sort(out.begin(), out.end(),
            [](const poly::Exponents& l, const poly::Exponents& r) { return poly::pack(l) > poly::pack(r); });
  return out;
}

namespace {

// Value of the monomial with exponents e at coordinates pw (pw[v][k] = c_v^k).
Elem monomial_value(const Field& f, const std::array<std::vector<Elem>, 4>& pw, const poly::Exponents& e, int nv) {
  Elem r = 1;
  for (int v = 0; v < nv; ++v) r = f.mul(r, pw[v][static_cast<std::size_t>(e[v])]);
  return r;
}

std::array<std::vector<Elem>, 4> power_table(const Field& f, const ProjPoint& p, int maxe) {
  std::array<std::vector<Elem>, 4> pw;
  for (int v = 0; v < 4; ++v) {
    pw[v].resize(static_cast<std::size_t>(maxe) + 1);
    pw[v][0] = 1;
    for (int k = 1; k <= maxe; ++k) pw[v][k] = f.mul(pw[v][k - 1], p.c[v]);
  }
  return pw;
}

}  // namespace

Matrix position_matrix(const Field& f, const std::vector<ProjPoint>& points, DegreeSpec deg,
                       const std::vector<int>& singular_at) {
  if (points.empty()) return {};
  const Space s = points.front().space;
  const auto basis = monomial_basis(s, deg);
  const int nv = coord_count(s);
  const int maxe = std::max(deg.a, deg.b);
  Matrix m;
  m.reserve(points.size() + 3 * singular_at.size());
  std::vector<std::array<std::vector<Elem>, 4>> tables;
  tables.reserve(points.size());
  for (const auto& p : points) {
    if (p.space != s) throw ArityMismatch("points from different spaces");
    tables.push_back(power_table(f, p, maxe));
    std::vector<Elem> row;
    row.reserve(basis.size());
    for (const auto& e : basis) row.push_back(monomial_value(f, tables.back(), e, nv));
    m.push_back(std::move(row));
  }
  auto derivative_row = [&](const std::array<std::vector<Elem>, 4>& pw, int var) {
    std::vector<Elem> row;
    row.reserve(basis.size());
    for (auto e : basis) {
      if (e[var] % 2 == 0) {
        row.push_back(0);  // even exponents differentiate to zero in characteristic 2
        continue;
      }
      e[var] -= 1;
      row.push_back(monomial_value(f, pw, e, nv));
    }
    return row;
  };
  for (int idx : singular_at) {
    const auto& p = points.at(static_cast<std::size_t>(idx));
    const auto& pw = tables[static_cast<std::size_t>(idx)];
    if (s == Space::P1xP1) {
      // Affine chart: the normalized coordinate equals 1, differentiate in the other one.
      for (int factor = 0; factor < 2; ++factor) {
        const int lo = 2 * factor;
        int var;
        if (p.c[lo] == 1) var = lo + 1;
        else if (p.c[lo] == 0 && p.c[lo + 1] == 1) var = lo;
        else throw ChartFailure("point is not normalized");
        m.push_back(derivative_row(pw, var));
      }
    } else {
      for (int var = 0; var < nv; ++var) m.push_back(derivative_row(pw, var));
    }
  }
  return m;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(const Field& f, Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    const Elem inv = f.inv(m[r][col]);
    for (std::size_t j = col; j < ncols; ++j) m[r][j] = f.mul(m[r][j], inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][col] == 0) continue;
      const Elem factor = m[i][col];
      for (std::size_t j = col; j < ncols; ++j) m[i][j] ^= f.mul(factor, m[r][j]);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t matrix_rank(const Field& f, Matrix m) {
  if (m.empty()) return 0;
  const std::size_t ncols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < m.size(); ++col) {
    std::size_t sel = rank;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[rank], m[sel]);
    const Elem inv = f.inv(m[rank][col]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      const Elem factor = f.mul(m[i][col], inv);
      for (std::size_t j = col; j < ncols; ++j) m[i][j] ^= f.mul(factor, m[rank][j]);
    }
    ++rank;
  }
  return rank;
}

std::size_t kernel_dimension(const Field& f, const Matrix& m) {
  if (m.empty()) return 0;
  return m.front().size() - matrix_rank(f, m);
}

std::vector<std::vector<Elem>> kernel_basis(const Field& f, const Matrix& m_in, std::size_t ncols) {
  Matrix m = m_in;
  const auto pivots = rref(f, m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(ncols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = m[r][free];  // -x = x in char 2
    basis.push_back(std::move(v));
  }
  return basis;
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::Collinear3: return "Collinear3";
    case Condition::Conic6: return "Conic6";
    case Condition::NodalCubic8: return "NodalCubic8";
    case Condition::Ruling2: return "Ruling2";
    case Condition::Curve11_4: return "Curve11_4";
    case Condition::Curve21_6: return "Curve21_6";
    case Condition::Curve12_6: return "Curve12_6";
    case Condition::NodalCurve22_7: return "NodalCurve22_7";
  }
  return "?";
}

void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  if (k > n || k < 0) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (!fn(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

namespace {

// Checks every k-subset for a nonzero kernel at the given (bi)degree.
bool subset_condition(const Field& f, const std::vector<ProjPoint>& pts, int k, DegreeSpec deg, Condition tag,
                      PositionReport& rep) {
  bool clean = true;
  for_each_subset(static_cast<int>(pts.size()), k, [&](const std::vector<int>& idx) {
    std::vector<ProjPoint> sub;
    for (int i : idx) sub.push_back(pts[static_cast<std::size_t>(i)]);
    if (kernel_dimension(f, position_matrix(f, sub, deg)) > 0) {
      rep = {false, tag, idx};
      clean = false;
    }
    return clean;
  });
  return clean;
}

// For each point as the node: a curve through all points singular there.
bool nodal_condition(const Field& f, const std::vector<ProjPoint>& pts, DegreeSpec deg, Condition tag,
                     PositionReport& rep) {
  for (int node = 0; node < static_cast<int>(pts.size()); ++node) {
    if (kernel_dimension(f, position_matrix(f, pts, deg, {node})) > 0) {
      std::vector<int> w{node};
      for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        if (i != node) w.push_back(i);
      rep = {false, tag, w};
      return false;
    }
  }
  return true;
}

}  // namespace

PositionReport general_position_p2(const Field& f, const std::vector<ProjPoint>& points) {
  if (points.size() > 8) throw TooManyPoints("at most 8 points on P2");
  PositionReport rep;
  if (!subset_condition(f, points, 3, {1, 0}, Condition::Collinear3, rep)) return rep;
  if (!subset_condition(f, points, 6, {2, 0}, Condition::Conic6, rep)) return rep;
  if (points.size() == 8 && !nodal_condition(f, points, {3, 0}, Condition::NodalCubic8, rep)) return rep;
  return rep;
}

PositionReport general_position_p1xp1(const Field& f, const std::vector<ProjPoint>& points) {
  if (points.size() > 7) throw TooManyPoints("at most 7 points on P1xP1");
  PositionReport rep;
  if (!subset_condition(f, points, 2, {1, 0}, Condition::Ruling2, rep)) return rep;
  if (!subset_condition(f, points, 2, {0, 1}, Condition::Ruling2, rep)) return rep;
  if (!subset_condition(f, points, 4, {1, 1}, Condition::Curve11_4, rep)) return rep;
  if (!subset_condition(f, points, 6, {2, 1}, Condition::Curve21_6, rep)) return rep;
  if (!subset_condition(f, points, 6, {1, 2}, Condition::Curve12_6, rep)) return rep;
  if (points.size() == 7 && !nodal_condition(f, points, {2, 2}, Condition::NodalCurve22_7, rep)) return rep;
  return rep;
}

}  // namespace cremona2::geom

#include "cremona2/rmap.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace cremona2::rmap {

using poly::Exponents;

// ---------------------------------------------------------------------------
// Spaces

const char* map_space_name(MapSpace s) {
  switch (s) {
    case MapSpace::P2: return "P2";
    case MapSpace::P3: return "P3";
    case MapSpace::P1xP1: return "P1xP1";
    case MapSpace::YChart: return "YChart";
    case MapSpace::P1A1: return "P1A1";
  }
  return "?";
}

int space_nvars(MapSpace s) {
  switch (s) {
    case MapSpace::P2: return 3;
    case MapSpace::P3: return 4;
    case MapSpace::P1xP1: return 4;
    case MapSpace::YChart: return 4;
    case MapSpace::P1A1: return 3;
  }
  return 0;
}

std::vector<int> projective_groups(MapSpace s) {
  switch (s) {
    case MapSpace::P2: return {3};
    case MapSpace::P3: return {4};
    case MapSpace::P1xP1: return {2, 2};
    case MapSpace::YChart: return {3};
    case MapSpace::P1A1: return {2};
  }
  return {};
}

int affine_count(MapSpace s) { return (s == MapSpace::YChart || s == MapSpace::P1A1) ? 1 : 0; }

std::vector<std::string> space_var_names(MapSpace s) {
  switch (s) {
    case MapSpace::P2: return {"x", "y", "z"};
    case MapSpace::P3: return {"x0", "x1", "x2", "x3"};
    case MapSpace::P1xP1: return {"x0", "x1", "y0", "y1"};
    case MapSpace::YChart: return {"x", "y", "z", "t"};
    case MapSpace::P1A1: return {"u", "v", "t"};
  }
  return {};
}

geom::Space to_geom_space(MapSpace s) {
  switch (s) {
    case MapSpace::P2: return geom::Space::P2;
    case MapSpace::P3: return geom::Space::P3;
    case MapSpace::P1xP1: return geom::Space::P1xP1;
    default: throw SpaceMismatch(std::string(map_space_name(s)) + " is not a projective space");
  }
}

// ---------------------------------------------------------------------------
// RatMap

std::vector<int> RatMap::group_degrees() const {
  std::vector<int> out;
  std::size_t off = 0;
  for (int g : projective_groups(dst)) {
    int d = -1;
    for (int i = 0; i < g && d < 0; ++i)
      if (!comps[off + i].is_zero()) d = comps[off + i].total_degree();
    out.push_back(d);
    off += g;
  }
  return out;
}

std::string RatMap::to_string() const {
  const auto names = space_var_names(src);
  std::ostringstream os;
  const auto groups = projective_groups(dst);
  std::size_t off = 0;
  if (groups.size() > 1) os << '(';
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (gi) os << ',';
    os << '[';
    for (int i = 0; i < groups[gi]; ++i) os << (i ? " : " : "") << comps[off + i].to_string(names);
    os << ']';
    off += groups[gi];
  }
  if (groups.size() > 1) os << ')';
  for (; off < comps.size(); ++off) os << ", " << comps[off].to_string(names);
  return os.str();
}

RatMap RatMap::lifted(const FieldPtr& to) const {
  if (field()->modulus_mask() == to->modulus_mask()) return *this;
  const ff::Embedding emb(field(), to);
  RatMap r = *this;
  for (auto& c : r.comps) c = c.mapped(emb);
  for (auto& chart : r.alt_charts)
    for (auto& c : chart) c = c.mapped(emb);
  return r;
}

RatMap make_map(MapSpace src, MapSpace dst, std::vector<MPoly> comps) {
  if (static_cast<int>(comps.size()) != space_nvars(dst))
    throw ArityMismatch(std::string("a map into ") + map_space_name(dst) + " needs " +
                        std::to_string(space_nvars(dst)) + " components");
  for (const auto& c : comps)
    if (c.nvars() != space_nvars(src))
      throw ArityMismatch(std::string("components must be polynomials on ") + map_space_name(src));
  return RatMap{src, dst, std::move(comps), {}};
}

RatMap identity_map(MapSpace s, const FieldPtr& f) {
  std::vector<MPoly> c;
  for (int i = 0; i < space_nvars(s); ++i) c.push_back(MPoly::variable(f, space_nvars(s), i));
  return make_map(s, s, std::move(c));
}

RatMap map_compose(const RatMap& g, const RatMap& f) {
  if (g.src != f.dst)
    throw SpaceMismatch(std::string("cannot compose a map from ") + map_space_name(g.src) +
                        " after a map into " + map_space_name(f.dst));
  RatMap r{f.src, g.dst, {}, {}};
  for (const auto& c : g.comps) r.comps.push_back(c.compose(f.comps));
  for (const auto& chart : g.alt_charts) {
    std::vector<MPoly> cc;
    for (const auto& c : chart) cc.push_back(c.compose(f.comps));
    r.alt_charts.push_back(std::move(cc));
  }
  return r;
}

bool maps_equal_rational(const RatMap& f, const RatMap& g, const MPoly* modulo) {
  if (f.src != g.src || f.dst != g.dst || f.comps.size() != g.comps.size()) return false;
  auto vanishes = [&](const MPoly& p) {
    if (p.is_zero()) return true;
    return modulo != nullptr && p.remainder(*modulo).is_zero();
  };
  std::size_t off = 0;
  for (int size : projective_groups(f.dst)) {
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j) {
        const MPoly cross = f.comps[off + i] * g.comps[off + j] + f.comps[off + j] * g.comps[off + i];
        if (!vanishes(cross)) return false;
      }
    off += size;
  }
  for (; off < f.comps.size(); ++off)
    if (!vanishes(f.comps[off] + g.comps[off])) return false;
  return true;
}

bool is_involution(const RatMap& f) {
  if (f.src != f.dst) return false;
  return maps_equal_rational(map_compose(f, f), identity_map(f.src, f.field()));
}

std::optional<RatMap> equivalent_of_degree(const RatMap& f, int d) {
  if (f.dst != MapSpace::P2) throw SpaceMismatch("degree reduction is implemented for maps into P2");
  const FieldPtr& F = f.field();
  const int nv = space_nvars(f.src);
  // Monomials of degree d in the source variables.
  std::vector<Exponents> mons;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j)
      for (int k = d - i - j; k >= 0; --k) {
        const int l = d - i - j - k;
        if (nv == 3 && l != 0) continue;
        mons.push_back(Exponents{i, j, k, nv == 3 ? 0 : l});
      }
  const std::size_t N = mons.size();
  // Unknown q_c = sum_m u_{c,m} m.  Condition q_i f_j + q_j f_i = 0.
  std::map<std::pair<int, poly::Key>, std::size_t> row_of;
  geom::Matrix rows;
  auto add = [&](int pair, poly::Key key, std::size_t col, Elem c) {
    auto [it, fresh] = row_of.try_emplace({pair, key}, rows.size());
    if (fresh) rows.emplace_back(3 * N, 0);
    rows[it->second][col] = F->add(rows[it->second][col], c);
  };
  const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  for (int pi = 0; pi < 3; ++pi) {
    const auto [i, j] = pairs[pi];
    for (std::size_t m = 0; m < N; ++m) {
      const MPoly mono = MPoly::monomial(F, nv, mons[m]);
      for (const MPoly a = mono * f.comps[j]; const auto& [k, c] : a.terms()) add(pi, k, i * N + m, c);
      for (const MPoly b = mono * f.comps[i]; const auto& [k, c] : b.terms()) add(pi, k, j * N + m, c);
    }
  }
  if (rows.empty()) return std::nullopt;
  const auto kb = geom::kernel_basis(*F, rows, 3 * N);
  if (kb.size() != 1) return std::nullopt;
  std::vector<MPoly> comps;
  for (int c = 0; c < 3; ++c) {
    MPoly q(F, nv);
    for (std::size_t m = 0; m < N; ++m)
      if (kb[0][c * N + m]) q += MPoly::monomial(F, nv, mons[m], kb[0][c * N + m]);
    comps.push_back(q);
  }
  RatMap r = make_map(f.src, f.dst, std::move(comps));
  if (!maps_equal_rational(r, f)) return std::nullopt;
  return r;
}

ProjPoint eval_map(const RatMap& f, const ProjPoint& p) {
  const geom::Space out_space = to_geom_space(f.dst);
  const geom::Space in_space = to_geom_space(f.src);
  if (p.space != in_space) throw SpaceMismatch("point lies in the wrong space");
  const std::vector<Elem> x = p.coords();
  auto try_chart = [&](const std::vector<MPoly>& comps) -> std::optional<ProjPoint> {
    std::array<Elem, 4> raw{};
    for (std::size_t i = 0; i < comps.size(); ++i) raw[i] = comps[i].eval(x);
    try {
      return geom::normalize(*f.field(), out_space, raw);
    } catch (const ZeroVector&) {
      return std::nullopt;
    }
  };
  if (auto r = try_chart(f.comps)) return *r;
  for (const auto& chart : f.alt_charts)
    if (auto r = try_chart(chart)) return *r;
  throw IndeterminatePoint("map undefined at " + p.to_string(*f.field()));
}

RatMap model_map(frob::Model m, const FieldPtr& f) {
  const MapSpace s = m == frob::Model::QTwist ? MapSpace::P1xP1 : MapSpace::P2;
  return make_map(s, s, frob::model_polys(m, f));
}

bool commutes_with_frob(const RatMap& f, frob::Model m) {
  const RatMap T = model_map(m, f.field());
  if (f.src != T.src || f.dst != T.dst) throw SpaceMismatch("map and model live on different spaces");
  return maps_equal_rational(map_compose(f, T), map_compose(T, f));
}

// ---------------------------------------------------------------------------
// Fibrations

namespace {

MPoly p2(const FieldPtr& f, std::string_view text) { return MPoly::parse(f, 3, text, {"x", "y", "z"}); }

}  // namespace

const char* fibration_name(FibrationTag t) {
  switch (t) {
    case FibrationTag::pi1: return "pi1";
    case FibrationTag::pi2: return "pi2";
    case FibrationTag::pi4: return "pi4";
  }
  return "?";
}

Fibration fibration(FibrationTag t, const FieldPtr& f) {
  switch (t) {
    case FibrationTag::pi1: return {t, p2(f, "y"), p2(f, "z")};
    case FibrationTag::pi2: return {t, p2(f, "y^2 + x*y"), p2(f, "x^2 + x*z + z^2")};
    case FibrationTag::pi4: return {t, p2(f, "y^2 + x*z"), p2(f, "x^2 + x*y + z^2")};
  }
  throw UnknownName("fibration");
}

bool preserves_fibration(const RatMap& f, const Fibration& pi) {
  return semi_preserves_fibration(f, pi, {{{1, 0}, {0, 1}}});
}

bool semi_preserves_fibration(const RatMap& f, const Fibration& pi,
                              const std::array<std::array<int, 2>, 2>& m) {
  if (f.src != MapSpace::P2 || f.dst != MapSpace::P2) throw SpaceMismatch("fibrations live on P2");
  const FieldPtr& F = f.field();
  const Fibration lp{pi.tag, pi.num.field()->modulus_mask() == F->modulus_mask()
                                 ? pi.num
                                 : pi.num.mapped(ff::Embedding(pi.num.field(), F)),
                     pi.den.field()->modulus_mask() == F->modulus_mask()
                         ? pi.den
                         : pi.den.mapped(ff::Embedding(pi.den.field(), F))};
  const MPoly a = lp.num.compose(f.comps);
  const MPoly b = lp.den.compose(f.comps);
  MPoly s(F, 3), t(F, 3);
  if (m[0][0]) s += lp.num;
  if (m[0][1]) s += lp.den;
  if (m[1][0]) t += lp.num;
  if (m[1][1]) t += lp.den;
  return (a * t + b * s).is_zero();
}

// ---------------------------------------------------------------------------
// GF(2)[t] and GF(2)(t)

namespace gf2x {

int degree(std::uint64_t a) { return ff::mask_degree(a); }

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (degree(a) + degree(b) > 63) throw ExponentOverflow("GF(2)[t] product exceeds degree 63");
  std::uint64_t r = 0;
  for (int i = 0; b >> i; ++i)
    if ((b >> i) & 1) r ^= a << i;
  return r;
}

std::uint64_t divmod(std::uint64_t a, std::uint64_t b, std::uint64_t* rem) {
  if (b == 0) throw ZeroFunction("division by the zero polynomial");
  const int db = degree(b);
  std::uint64_t q = 0;
  while (a != 0 && degree(a) >= db) {
    const int s = degree(a) - db;
    q |= std::uint64_t{1} << s;
    a ^= b << s;
  }
  if (rem) *rem = a;
  return q;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t r;
    divmod(a, b, &r);
    a = b;
    b = r;
  }
  return a;
}

}  // namespace gf2x

RationalFunction1V::RationalFunction1V(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw ZeroFunction("zero denominator");
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  const std::uint64_t g = gf2x::gcd(num_, den_);
  num_ = gf2x::divmod(num_, g, nullptr);
  den_ = gf2x::divmod(den_, g, nullptr);
}

RationalFunction1V RationalFunction1V::operator+(const RationalFunction1V& o) const {
  return {gf2x::mul(num_, o.den_) ^ gf2x::mul(o.num_, den_), gf2x::mul(den_, o.den_)};
}

RationalFunction1V RationalFunction1V::operator*(const RationalFunction1V& o) const {
  // Cross-reduce first to keep degrees small.
  const std::uint64_t g1 = num_ ? gf2x::gcd(num_, o.den_) : 1;
  const std::uint64_t g2 = o.num_ ? gf2x::gcd(o.num_, den_) : 1;
  return {gf2x::mul(gf2x::divmod(num_, g1, nullptr), gf2x::divmod(o.num_, g2, nullptr)),
          gf2x::mul(gf2x::divmod(den_, g2, nullptr), gf2x::divmod(o.den_, g1, nullptr))};
}

RationalFunction1V RationalFunction1V::operator/(const RationalFunction1V& o) const {
  if (o.is_zero()) throw ZeroFunction("division by zero");
  return *this * RationalFunction1V(o.den_, o.num_);
}

namespace {

std::string gf2x_string(std::uint64_t m) {
  if (m == 0) return "0";
  std::string s;
  for (int i = gf2x::degree(m); i >= 0; --i) {
    if (!((m >> i) & 1)) continue;
    if (!s.empty()) s += " + ";
    s += i == 0 ? "1" : i == 1 ? "t" : "t^" + std::to_string(i);
  }
  return s;
}

}  // namespace

std::string RationalFunction1V::to_string() const {
  if (den_ == 1) return gf2x_string(num_);
  return "(" + gf2x_string(num_) + ")/(" + gf2x_string(den_) + ")";
}

namespace {

/// sum_i m_i T1^i T2^(D-i).
MPoly homogenize(std::uint64_t m, int D, const std::vector<MPoly>& t1pow, const std::vector<MPoly>& t2pow) {
  MPoly r(t1pow.front().field(), t1pow.front().nvars());
  for (int i = 0; i <= D; ++i)
    if ((m >> i) & 1) r += t1pow[i] * t2pow[D - i];
  return r;
}

std::vector<MPoly> powers(const MPoly& p, int D) {
  std::vector<MPoly> out{MPoly::constant(p.field(), p.nvars(), 1)};
  for (int i = 1; i <= D; ++i) out.push_back(out.back() * p);
  return out;
}

}  // namespace

RatMap jonquieres_gp(const RationalFunction1V& p) {
  if (p.is_zero()) throw ZeroFunction("g_p needs p != 0");
  const FieldPtr F = ff::gf2();
  const int D = std::max(gf2x::degree(p.num()), gf2x::degree(p.den()));
  const auto ypow = powers(p2(F, "y"), D);
  const auto zpow = powers(p2(F, "z"), D);
  const MPoly P = homogenize(p.num(), D, ypow, zpow);
  const MPoly Q = homogenize(p.den(), D, ypow, zpow);
  return make_map(MapSpace::P2, MapSpace::P2, {p2(F, "x") * Q, p2(F, "y") * P, p2(F, "z") * P});
}

// ---------------------------------------------------------------------------
// The families L2*, L4*

const char* family_name(FamilyTag t) { return t == FamilyTag::L2star ? "L2star" : "L4star"; }

FibrationTag family_fibration(FamilyTag t) {
  return t == FamilyTag::L2star ? FibrationTag::pi2 : FibrationTag::pi4;
}

FamilyMap family_map(FamilyTag tag, const RationalFunction1V& a) {
  using RF = RationalFunction1V;
  const RF t = RF::t();
  FamilyMap fm;
  fm.tag = tag;
  fm.a = a;
  const RF den = a * a + t;  // never zero: t is not a square
  fm.lambda = tag == FamilyTag::L4star ? (RF::one() + t * a) / den : (a + t) / den;
  fm.mu = a * fm.lambda;
  const std::uint64_t dl = fm.lambda.den(), dm = fm.mu.den();
  fm.L = gf2x::mul(gf2x::divmod(dl, gf2x::gcd(dl, dm), nullptr), dm);
  fm.c1 = gf2x::mul(fm.lambda.num(), gf2x::divmod(fm.L, dl, nullptr));
  fm.c2 = gf2x::mul(fm.mu.num(), gf2x::divmod(fm.L, dm, nullptr));
  fm.D = std::max({gf2x::degree(fm.L), gf2x::degree(fm.c1), gf2x::degree(fm.c2), 0});

  const FieldPtr F = ff::gf2();
  const Fibration pi = fibration(family_fibration(tag), F);
  // t = T1/T2 is the second coordinate of pi over the first.
  const auto t1pow = powers(pi.den, fm.D);
  const auto t2pow = powers(pi.num, fm.D);
  const MPoly Lh = homogenize(fm.L, fm.D, t1pow, t2pow);
  const MPoly c1h = homogenize(fm.c1, fm.D, t1pow, t2pow);
  const MPoly c2h = homogenize(fm.c2, fm.D, t1pow, t2pow);
  const MPoly x = p2(F, "x"), y = p2(F, "y"), z = p2(F, "z");
  fm.map = make_map(MapSpace::P2, MapSpace::P2, {Lh * x, c1h * x + Lh * y, c2h * x + Lh * z});
  return fm;
}

bool on_family_conic(FamilyTag tag, const RationalFunction1V& l, const RationalFunction1V& m) {
  const RationalFunction1V t = RationalFunction1V::t();
  if (tag == FamilyTag::L4star) return (l + m * m + t * (l * l + m)).is_zero();
  return ((l * l + l) * t + m * m + m).is_zero();
}

InvolutionCertificate family_involution_check(const FamilyMap& fm) {
  InvolutionCertificate cert;
  const FieldPtr F = ff::gf2();
  const Fibration pi = fibration(family_fibration(fm.tag), F);
  const MPoly& T1 = pi.den;
  const MPoly& T2 = pi.num;
  const MPoly T1f = T1.compose(fm.map.comps);
  const MPoly T2f = T2.compose(fm.map.comps);
  auto [R, rem] = T1f.divmod(T1);
  cert.preserves = rem.is_zero() && !R.is_zero() && T2f == R * T2;
  if (!cert.preserves) return cert;
  cert.R = R;
  cert.R_degree = R.total_degree();

  const auto t1pow = powers(T1, fm.D);
  const auto t2pow = powers(T2, fm.D);
  const MPoly Lh = homogenize(fm.L, fm.D, t1pow, t2pow);
  const MPoly c1h = homogenize(fm.c1, fm.D, t1pow, t2pow);
  const MPoly c2h = homogenize(fm.c2, fm.D, t1pow, t2pow);
  const auto& f = fm.map.comps;
  cert.reduced = {Lh * f[0], c1h * f[0] + Lh * f[1], c2h * f[0] + Lh * f[2]};
  cert.involution = maps_equal_rational(make_map(MapSpace::P2, MapSpace::P2, cert.reduced),
                                        identity_map(MapSpace::P2, F));
  return cert;
}

MPoly conic_identity_numerator(FamilyTag tag) {
  const FieldPtr F = ff::gf2();
  const MPoly a = MPoly::variable(F, 2, 0), t = MPoly::variable(F, 2, 1);
  const MPoly one = MPoly::constant(F, 2, 1);
  const MPoly D = a * a + t;
  if (tag == FamilyTag::L4star) {
    // lambda = N/D, mu = aN/D;  D^2 (lambda + mu^2 + t(lambda^2 + mu)).
    const MPoly N = one + t * a;
    return N * D + a * a * N * N + t * (N * N + a * N * D);
  }
  // D^2 ((lambda^2 + lambda) t + mu^2 + mu).
  const MPoly N = a + t;
  return t * (N * N + N * D) + a * a * N * N + a * N * D;
}

bool verify_conic_identity(FamilyTag tag) { return conic_identity_numerator(tag).is_zero(); }

std::vector<RationalFunction1V> family_samples() {
  std::vector<RationalFunction1V> out;
  for (std::uint64_t m = 0; m < 16; ++m) out.emplace_back(m, 1);
  out.emplace_back(1, 0b10);         // 1/t
  out.emplace_back(0b11, 0b10);      // (t+1)/t
  out.emplace_back(0b10, 0b111);     // t/(t^2+t+1)
  out.emplace_back(0b101, 0b1011);   // (t^2+1)/(t^3+t+1)
  return out;
}

// ---------------------------------------------------------------------------
// Built-ins

namespace {

FieldPtr f64() { return ff::registry_field("F64"); }

MPoly in(MapSpace s, const FieldPtr& f, std::string_view text) {
  return MPoly::parse(f, space_nvars(s), text, space_var_names(s));
}

RatMap one_link(const std::string& which) {
  const FieldPtr F = ff::gf2();
  const MPoly x = p2(F, "x"), y = p2(F, "y"), z = p2(F, "z");
  const MPoly f1 = p2(F, "y^2 + x*z"), f2 = p2(F, "x^2 + x*y + z^2");
  std::vector<MPoly> c;
  if (which == "p100") c = {(x + y) * f1 + z * f2, y * f1, z * f1};
  else if (which == "p010") c = {x * f2, x * f1 + y * f2, z * f2};
  else if (which == "p001") c = {x * f1, y * f1, z * f1 + x * f2};
  else if (which == "p110") c = {(x + z) * f2 + (x + y) * f1, f1 * (x + y) + f2 * (y + z), z * f2};
  else c = {y * f1 + z * f2, y * f2, x * f2 + y * f1};
  return make_map(MapSpace::P2, MapSpace::P2, std::move(c));
}

RatMap p2_map(const FieldPtr& F, std::string_view f0, std::string_view f1, std::string_view f2) {
  return make_map(MapSpace::P2, MapSpace::P2, {p2(F, f0), p2(F, f1), p2(F, f2)});
}

/// P0 + l P1 + l^2 P2 with l = a^21 in F64.
MPoly lambda_combo(std::string_view c0, std::string_view c1, std::string_view c2) {
  const FieldPtr F = f64();
  const Elem l = F->parse("a^21");
  return p2(F, c0) + p2(F, c1).scaled(l) + p2(F, c2).scaled(F->sqr(l));
}

RatMap make_builtin(const std::string& name) {
  const FieldPtr G = ff::gf2();
  if (name.rfind("oneLink_p", 0) == 0) return one_link(name.substr(9));
  if (name == "oneLink22_p100") return p2_map(G, "x*y + y*z + z^2", "x*y + y^2", "x*y + x*z + y^2 + y*z");
  if (name == "oneLink22_p101") return p2_map(G, "x^2 + y*z + z^2", "x*y + y^2", "x*z + y^2 + z^2");
  if (name == "rho_Q")
    return make_map(MapSpace::P2, MapSpace::P3,
                    {p2(G, "x^2"), p2(G, "x*y"), p2(G, "x*z"), p2(G, "y^2 + y*z + z^2")});
  if (name == "phi_Q") return phi_q(f64());
  if (name == "phi_Q_inv") return phi_q_inv(f64());
  if (name == "d6_bidegree12") {
    const MapSpace s = MapSpace::P1xP1;
    return make_map(s, MapSpace::P2,
                    {in(s, G, "x0*y0*y1 + x1*y0*y1"), in(s, G, "x0*y0*y1 + x0*y1^2"),
                     in(s, G, "x1*y0^2 + x1*y0*y1")});
  }
  if (name == "d6_bidegree12_inv")
    return make_map(MapSpace::P2, MapSpace::P1xP1,
                    {p2(G, "x*y + y*z"), p2(G, "x*z + y*z"), p2(G, "x + z"), p2(G, "x + y")});
  if (name == "gamma_d6") {
    const MapSpace s = MapSpace::P1xP1;
    const FieldPtr F = f64();
    return make_map(s, s,
                    {in(s, F, "a^18*x0 + a^21*x1"), in(s, F, "x0 + a^12*x1"), in(s, F, "a^18*y0 + a^42*y1"),
                     in(s, F, "y0 + a^33*y1")});
  }
  if (name == "gamma_d6_inv") {
    const MapSpace s = MapSpace::P1xP1;
    const FieldPtr F = f64();
    return make_map(s, s,
                    {in(s, F, "a^12*x0 + a^21*x1"), in(s, F, "x0 + a^18*x1"), in(s, F, "a^33*y0 + a^42*y1"),
                     in(s, F, "y0 + a^18*y1")});
  }
  if (name == "quintic_inv_1")
    return p2_map(G,
                  "x^5 + x^4*y + x*y^4 + x^2*y^2*z + x^3*z^2 + x^2*y*z^2 + x*y^2*z^2 + x^2*z^3 + x*y*z^3 + y*z^4",
                  "x^4*y + x^3*y^2 + x*y^4 + y^5 + x*y^3*z + x^2*y*z^2 + x*y^2*z^2 + y^3*z^2 + x*y*z^3 + "
                  "y^2*z^3 + x*z^4",
                  "x^3*y^2 + x^4*z + x^3*y*z + x^2*y^2*z + y^4*z + x^3*z^2 + x^2*y*z^2 + x*y^2*z^2 + x*z^4 + "
                  "y*z^4 + z^5");
  if (name == "quintic_inv_2")
    return p2_map(G,
                  "x^4*y + x^3*y^2 + x*y^4 + x^4*z + x^3*y*z + x^2*y^2*z + x*y^2*z^2 + x*y*z^3 + x*z^4 + z^5",
                  "x^5 + x^4*y + x^2*y^3 + y^5 + x*y^3*z + x^2*y*z^2 + y^3*z^2 + x*z^4 + y*z^4 + z^5",
                  "x^5 + x^3*y*z + x^2*y^2*z + y^4*z + x^2*y*z^2 + x*y^2*z^2 + y^2*z^3 + y*z^4 + z^5");
  if (name == "d6_inv_size2")
    return p2_map(f64(),
                  "x^2*y + a^48*x*y^2 + a^39*x^2*z + a^33*x*y*z + a^36*y^2*z + a^27*x*z^2 + a^12*y*z^2",
                  "a^6*x^2*y + a^54*x*y^2 + a^9*x^2*z + a^30*x*y*z + a^24*y^2*z + a^42*x*z^2 + a^27*y*z^2",
                  "a^3*x^2*y + a^60*x*y^2 + a^6*x^2*z + a^18*x*y*z + a^48*y^2*z + a^57*x*z^2 + a^51*y*z^2");
  if (name == "d6_inv_size3_1")
    return p2_map(f64(),
                  "x^3*y^2 + a^28*x^2*y^3 + a^32*x^3*y*z + a^8*x^2*y^2*z + a^46*x*y^3*z + a^57*x^3*z^2 + "
                  "a^12*x^2*y*z^2 + a^29*x*y^2*z^2 + a^9*y^3*z^2 + a^61*x^2*z^3 + a^22*x*y*z^3 + a^48*y^2*z^3",
                  "a^34*x^3*y^2 + a^18*x^2*y^3 + a^4*x^3*y*z + a^27*x^2*y^2*z + a^44*x*y^3*z + a^45*x^3*z^2 + "
                  "a^32*x^2*y*z^2 + a^11*x*y^2*z^2 + a^42*y^3*z^2 + a^15*x^2*z^3 + a^37*x*y*z^3 + a^28*y^2*z^3",
                  "a^39*x^3*y^2 + a^33*x^2*y^3 + a*x^3*y*z + a^44*x^2*y^2*z + a^58*x*y^3*z + a^28*x^3*z^2 + "
                  "a^23*x^2*y*z^2 + a^24*x*y^2*z^2 + a^52*y^3*z^2 + a^21*x^2*z^3 + a^29*x*y*z^3 + a^51*y^2*z^3");
  if (name == "d6_inv_size3_2")
    return make_map(
        MapSpace::P2, MapSpace::P2,
        {lambda_combo("x^3*y^2 + x^2*y^3 + x^2*z^3 + x*y*z^3 + y^2*z^3",
                      "x^3*z^2 + x^2*y*z^2 + x*y^2*z^2 + y^3*z^2", "x^3*y*z + x^2*y^2*z + x*y^3*z"),
         lambda_combo("x^2*y^3 + x^2*y^2*z + x^2*y*z^2 + x^2*z^3", "x*y^3*z + x*y^2*z^2 + x*y*z^3",
                      "x^3*y^2 + x^3*y*z + x^3*z^2 + y^3*z^2 + y^2*z^3"),
         lambda_combo("x^3*y*z + x^2*y*z^2 + x*y*z^3", "x^2*y^3 + x*y^3*z + x^3*z^2 + y^3*z^2 + x^2*z^3",
                      "x^3*y^2 + x^2*y^2*z + x*y^2*z^2 + y^2*z^3")});
  if (name == "d5_h") return p2_map(G, "x*y", "x*y + y*z", "x*y + x*z");
  if (name == "fiberprod_phi4" || name == "fiberprod_phi2") {
    const MapSpace s = MapSpace::YChart;
    return make_map(s, MapSpace::P1A1, {in(s, G, "x"), in(s, G, "t*y + z"), in(s, G, "t")});
  }
  if (name == "fiberprod_psi4") {
    const MapSpace s = MapSpace::P1A1;
    return make_map(s, MapSpace::YChart,
                    {in(s, G, "u^2 + t^3*u^2"), in(s, G, "u^2 + t^2*u*v + v^2"), in(s, G, "t*u^2 + u*v + t*v^2"),
                     in(s, G, "t")});
  }
  if (name == "fiberprod_psi2") {
    const MapSpace s = MapSpace::P1A1;
    return make_map(s, MapSpace::YChart,
                    {in(s, G, "t*u^2 + t^2*u^2"), in(s, G, "u^2 + u*v + v^2"), in(s, G, "t*u^2 + t^2*u*v + t*v^2"),
                     in(s, G, "t")});
  }
  throw UnknownName("no built-in map named '" + name + "'");
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "oneLink_p100",   "oneLink_p010",   "oneLink_p001",      "oneLink_p110",   "oneLink_p101",
      "oneLink22_p100", "oneLink22_p101", "rho_Q",             "phi_Q",          "phi_Q_inv",
      "d6_bidegree12",  "d6_bidegree12_inv", "gamma_d6",       "gamma_d6_inv",   "quintic_inv_1",
      "quintic_inv_2",  "d6_inv_size2",   "d6_inv_size3_1",    "d6_inv_size3_2", "d5_h",
      "fiberprod_phi4", "fiberprod_psi4", "fiberprod_phi2",    "fiberprod_psi2"};
  return names;
}

RatMap builtin(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, RatMap> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
  }
  RatMap m = make_builtin(name);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(name, std::move(m)).first->second;
}

FibrationAction one_link_fibration(const std::string& name) {
  if (name.rfind("oneLink22_", 0) == 0) return {FibrationTag::pi2, {{{1, 0}, {1, 1}}}};
  if (name.rfind("oneLink_", 0) == 0) return {FibrationTag::pi4, {{{1, 0}, {0, 1}}}};
  throw UnknownName("'" + name + "' is not a one-link map");
}

bool builtin_is_declared_involution(const std::string& name) {
  return name.rfind("oneLink", 0) == 0 || name.rfind("quintic_inv", 0) == 0 || name.rfind("d6_inv", 0) == 0;
}

Elem phi_q_xi(const Field& f) { return f.embed_with_min_poly({1, 1, 1}); }

RatMap phi_q(const FieldPtr& f) {
  const Elem xi = phi_q_xi(*f);
  const MapSpace s = MapSpace::P3;
  const MPoly x1 = in(s, f, "x1"), x2 = in(s, f, "x2");
  const MPoly z0 = in(s, f, "x0");
  const MPoly z1 = x1 + x2.scaled(xi);
  const MPoly z2 = x1 + x2.scaled(f->add(xi, 1));
  const MPoly z3 = in(s, f, "x3");
  RatMap m = make_map(s, MapSpace::P1xP1, {z0, z2, z0, z1});
  m.alt_charts = {{z1, z3, z0, z1}, {z0, z2, z2, z3}, {z1, z3, z2, z3}};
  return m;
}

RatMap phi_q_inv(const FieldPtr& f) {
  const Elem xi = phi_q_xi(*f);
  const MapSpace s = MapSpace::P1xP1;
  const MPoly Z0 = in(s, f, "x0*y0"), Z1 = in(s, f, "x0*y1"), Z2 = in(s, f, "x1*y0"), Z3 = in(s, f, "x1*y1");
  return make_map(s, MapSpace::P3, {Z0, Z1.scaled(f->add(xi, 1)) + Z2.scaled(xi), Z1 + Z2, Z3});
}

MPoly quadric_form(const FieldPtr& f) { return in(MapSpace::P3, f, "x0*x3 + x1^2 + x1*x2 + x2^2"); }

MPoly fiberprod_equation(int which) {
  const FieldPtr G = ff::gf2();
  if (which == 4) return in(MapSpace::YChart, G, "t^2*y^2 + t^2*x*z + x^2 + x*y + z^2");
  if (which == 2) return in(MapSpace::YChart, G, "t^2*y^2 + t^2*x*y + x^2 + x*z + z^2");
  throw UnknownName("fiber product " + std::to_string(which));
}

std::vector<WitnessCheck> witness_curve_checks() {
  const FieldPtr G = ff::gf2();
  struct Row {
    std::string name, curve;
    bool stated;
  };
  const std::vector<Row> table = {
      {"oneLink_p100", "x*y^2 + y^3 + z^3", true},
      {"oneLink_p100", "x^2*z + y^3 + z^3", false},
      {"oneLink_p101", "x^2*z + y^3 + z^3", true},
      {"oneLink22_p100", "x*y + y*z + z^2", true},
      {"oneLink22_p101", "x^2 + y*z + z^2", true},
  };
  // The line x = 0 parametrized by (s,t).
  const std::vector<MPoly> line = {MPoly(G, 2), MPoly::variable(G, 2, 0), MPoly::variable(G, 2, 1)};
  std::vector<WitnessCheck> out;
  for (const auto& row : table) {
    std::vector<MPoly> image;
    for (const auto& c : builtin(row.name).comps) image.push_back(c.compose(line));
    out.push_back({row.name, row.curve, row.stated, p2(G, row.curve).compose(image).is_zero()});
  }
  return out;
}

bool double_section_check() {
  const FieldPtr G = ff::gf2();
  const MPoly s = MPoly::variable(G, 2, 0), t = MPoly::variable(G, 2, 1);
  const std::vector<MPoly> pt = {MPoly(G, 2), s, t};
  const MPoly S = s * s, T = t * t;
  const MPoly e4 = T * p2(G, "y^2 + x*z").compose(pt) + S * p2(G, "x^2 + x*y + z^2").compose(pt);
  const MPoly e2 = T * p2(G, "x*y + y^2").compose(pt) + S * p2(G, "x^2 + x*z + z^2").compose(pt);
  return e4.is_zero() && e2.is_zero();
}

bool d6_chain_check() {
  const FieldPtr F = f64();
  const RatMap phi = builtin("d6_bidegree12").lifted(F);
  const RatMap phi_inv = builtin("d6_bidegree12_inv").lifted(F);
  const RatMap chain =
      map_compose(phi, map_compose(builtin("gamma_d6"),
                                   map_compose(model_map(frob::Model::QTwist, F),
                                               map_compose(builtin("gamma_d6_inv"), phi_inv))));
  return maps_equal_rational(chain, model_map(frob::Model::D6Twist, F));
}

// ---------------------------------------------------------------------------
// phi for D5

namespace {

using Mat3 = std::array<std::array<Elem, 3>, 3>;

std::optional<Mat3> invert3(const Field& f, const Mat3& m) {
  auto cof = [&](int r, int c) {
    const int r0 = (r + 1) % 3, r1 = (r + 2) % 3, c0 = (c + 1) % 3, c1 = (c + 2) % 3;
    return f.add(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
  };
  Elem det = 0;
  for (int c = 0; c < 3; ++c) det = f.add(det, f.mul(m[0][c], cof(0, c)));
  if (det == 0) return std::nullopt;
  const Elem di = f.inv(det);
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = f.mul(cof(j, i), di);
  return r;
}

ProjPoint random_p2(const Field& f, std::mt19937_64& rng) {
  while (true) {
    std::array<Elem, 4> raw{};
    for (int i = 0; i < 3; ++i) raw[i] = rng() & (f.size() - 1);
    if (raw[0] || raw[1] || raw[2]) return geom::normalize(f, geom::Space::P2, raw);
  }
}

/// Checks phi(Frob p) = D5Twist(phi(p)) at `count` defined points.
bool check_commutation(const RatMap& phi, int count, std::uint64_t seed, int* tested) {
  const Field& f = *phi.field();
  std::mt19937_64 rng(seed);
  int done = 0, attempts = 0;
  while (done < count) {
    if (++attempts > 50 * count + 100) return false;
    const ProjPoint p = random_p2(f, rng);
    ProjPoint lhs, rhs;
    try {
      lhs = eval_map(phi, frob::apply(f, frob::Model::StdP2, p));
      rhs = frob::apply(f, frob::Model::D5Twist, eval_map(phi, p));
    } catch (const IndeterminatePoint&) {
      continue;
    }
    if (lhs != rhs) return false;
    ++done;
  }
  if (tested) *tested = done;
  return true;
}

}  // namespace

PhiD5 build_phi_d5() {
  const FieldPtr F = ff::registry_field("F2_15");
  const Field& f = *F;
  PhiD5 out;
  const Elem a = f.embed_with_min_poly({1, 0, 1, 0, 0, 1});
  out.orbit = frob::orbit(f, frob::Model::StdP2, geom::make_p2(f, 1, a, f.sqr(a))).points;
  const geom::DegreeSpec cubic{3, 0};
  const auto kb = geom::kernel_basis(f, geom::position_matrix(f, out.orbit, cubic, {0}));
  out.system_dimension = kb.size();
  if (kb.size() != 3)
    throw WrongDimension("cubic system has dimension " + std::to_string(kb.size()) + ", expected 3");
  const auto basis = geom::monomial_basis(geom::Space::P2, cubic);
  std::vector<MPoly> raw;
  for (const auto& v : kb) {
    MPoly c(F, 3);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (v[j]) c += MPoly::monomial(F, 3, basis[j], v[j]);
    raw.push_back(c);
  }
  const RatMap phi0 = make_map(MapSpace::P2, MapSpace::P2, raw);

  // The lines through q5 and each other orbit point are contracted; their
  // images are the four base points of the inverse map.
  std::array<ProjPoint, 4> r;
  const auto& q5 = out.orbit[0].c;
  for (int i = 0; i < 4; ++i) {
    const auto& qi = out.orbit[i + 1].c;
    bool found = false;
    for (std::uint64_t k = 1; !found && k < 64; ++k) {
      const Elem s = f.pow(f.generator(), k);
      std::array<Elem, 4> pt{};
      for (int j = 0; j < 3; ++j) pt[j] = f.add(qi[j], f.mul(s, q5[j]));
      try {
        r[i] = eval_map(phi0, geom::normalize(f, geom::Space::P2, pt));
        found = true;
      } catch (const Error&) {
      }
    }
    if (!found) throw IndeterminatePoint("contracted line has no defined point");
  }

  // Send the four points to the standard frame, trying every ordering.
  std::array<int, 4> perm = {0, 1, 2, 3};
  do {
    Mat3 R{};
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) R[i][j] = r[perm[j]].c[i];
    const auto Rinv = invert3(f, R);
    if (!Rinv) continue;
    std::array<Elem, 3> lam{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) lam[i] = f.add(lam[i], f.mul((*Rinv)[i][j], r[perm[3]].c[j]));
    if (!lam[0] || !lam[1] || !lam[2]) continue;
    Mat3 M{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M[i][j] = f.mul(R[i][j], lam[j]);
    const auto alpha = invert3(f, M);
    std::vector<MPoly> comps;
    for (int i = 0; i < 3; ++i) {
      MPoly c(F, 3);
      for (int j = 0; j < 3; ++j)
        if ((*alpha)[i][j]) c += raw[j].scaled((*alpha)[i][j]);
      comps.push_back(c);
    }
    RatMap cand = make_map(MapSpace::P2, MapSpace::P2, comps);
    int tested = 0;
    if (check_commutation(cand, 20, 7, &tested)) {
      out.map = std::move(cand);
      out.frame_order = perm;
      out.frame_found = true;
      out.tested_points = tested;
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.map = phi0;
  return out;
}

bool phi_d5_commutes_pointwise(const PhiD5& phi, int count, std::uint64_t seed) {
  return check_commutation(phi.map, count, seed, nullptr);
}

// ---------------------------------------------------------------------------
// Tangent lines

FieldPtr small_field(int k) {
  if (k == 1) return ff::gf2();
  static std::mutex mu;
  static std::map<int, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(k); it != cache.end()) return it->second;
  std::uint64_t m = (std::uint64_t{1} << k) | 1;
  while (!ff::is_irreducible_mask(m)) m += 2;
  FieldPtr f = Field::create(ff::mask_to_coeffs(m), "GF(2^" + std::to_string(k) + ")");
  cache.emplace(k, f);
  return f;
}

bool unique_tangent_check(FibrationTag pencil, int k) {
  if (k < 1 || k > 8) throw UnsupportedSize("tangent check needs 1 <= k <= 8");
  if (pencil == FibrationTag::pi1) throw UnknownName("pi1 is a pencil of lines");
  const FieldPtr F = small_field(k);
  const Field& f = *F;
  const Fibration pi = fibration(pencil, ff::gf2());
  const ff::Embedding emb(ff::gf2(), F);
  const std::array<MPoly, 2> conics = {pi.num.mapped(emb), pi.den.mapped(emb)};
  const Elem q = f.size();
  int tangent_to_both = 0;
  bool x0_tangent = false;
  auto visit = [&](Elem l0, Elem l1, Elem l2) {
    // Two points spanning the line l0 x + l1 y + l2 z = 0.
    std::vector<Elem> P, Q;
    if (l0) P = {l1, l0, 0}, Q = {l2, 0, l0};
    else if (l1) P = {1, 0, 0}, Q = {0, l2, l1};
    else P = {1, 0, 0}, Q = {0, 1, 0};
    const std::vector<Elem> PQ = {P[0] ^ Q[0], P[1] ^ Q[1], P[2] ^ Q[2]};
    bool both = true;
    for (const auto& c : conics) {
      const Elem al = c.eval(P), ga = c.eval(Q), be = c.eval(PQ) ^ al ^ ga;
      both = both && be == 0 && (al != 0 || ga != 0);
    }
    if (both) {
      ++tangent_to_both;
      if (l0 == 1 && l1 == 0 && l2 == 0) x0_tangent = true;
    }
  };
  for (Elem l1 = 0; l1 < q; ++l1)
    for (Elem l2 = 0; l2 < q; ++l2) visit(1, l1, l2);
  for (Elem l2 = 0; l2 < q; ++l2) visit(0, 1, l2);
  visit(0, 0, 1);
  return x0_tangent && tangent_to_both == 1;
}

}  // namespace cremona2::rmap

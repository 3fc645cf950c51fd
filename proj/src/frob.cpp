#include "cremona2/frob.hpp"

#include <algorithm>
#include <set>

namespace cremona2::frob {

using geom::Space;

const char* model_name(Model m) {
  switch (m) {
    case Model::StdP2: return "StdP2";
    case Model::QTwist: return "QTwist";
    case Model::D5Twist: return "D5Twist";
    case Model::D6Twist: return "D6Twist";
  }
  return "?";
}

Space model_space(Model m) { return m == Model::QTwist ? Space::P1xP1 : Space::P2; }

std::vector<poly::MPoly> model_polys(Model m, const FieldPtr& f) {
  auto P = [&](const char* s) { return poly::MPoly::parse(f, m == Model::QTwist ? 4 : 3, s); };
  switch (m) {
    case Model::StdP2: return {P("x^2"), P("y^2"), P("z^2")};
    case Model::QTwist: return {P("y0^2"), P("y1^2"), P("x0^2"), P("x1^2")};
    case Model::D5Twist: return {P("x^2*y^2"), P("x^2*y^2 + y^2*z^2"), P("x^2*y^2 + x^2*z^2")};
    case Model::D6Twist: return {P("x^2*z^2"), P("x^2*y^2"), P("y^2*z^2")};
  }
  throw UnknownName("model");
}

ProjPoint apply(const Field& f, Model m, const ProjPoint& p) {
  const auto& c = p.c;
  std::array<Elem, 4> out{};
  switch (m) {
    case Model::StdP2:
      out = {f.sqr(c[0]), f.sqr(c[1]), f.sqr(c[2]), 0};
      break;
    case Model::QTwist:
      out = {f.sqr(c[2]), f.sqr(c[3]), f.sqr(c[0]), f.sqr(c[1])};
      break;
    case Model::D5Twist: {
      const Elem x2 = f.sqr(c[0]), y2 = f.sqr(c[1]), z2 = f.sqr(c[2]);
      out = {f.mul(x2, y2), f.mul(y2, x2 ^ z2), f.mul(x2, y2 ^ z2), 0};
      break;
    }
    case Model::D6Twist: {
      const Elem x2 = f.sqr(c[0]), y2 = f.sqr(c[1]), z2 = f.sqr(c[2]);
      out = {f.mul(x2, z2), f.mul(x2, y2), f.mul(y2, z2), 0};
      break;
    }
  }
  try {
    return geom::normalize(f, model_space(m), out);
  } catch (const ZeroVector&) {
    throw IndeterminatePoint(std::string(model_name(m)) + " is undefined at " + p.to_string(f));
  }
}

GOrbit orbit(const Field& f, Model m, const ProjPoint& p, int cap) {
  GOrbit o;
  o.model = m;
  o.points.push_back(p);
  ProjPoint q = apply(f, m, p);
  while (q != p) {
    if (static_cast<int>(o.points.size()) >= cap) throw PeriodOverflow("orbit exceeds cap " + std::to_string(cap));
    o.points.push_back(q);
    q = apply(f, m, q);
  }
  return o;
}

std::vector<Elem> frobenius_orbit_representatives(const Field& f, int d) {
  if (f.degree() % d) throw UnsupportedSize("subfield degree must divide the field degree");
  // Elements of F_{2^d} are the fixed points of u -> u^(2^d): 0 and g^(r k).
  const std::uint64_t r = f.unit_order() / ((std::uint64_t{1} << d) - 1);
  std::vector<Elem> sub{0};
  const Elem h = f.pow(f.generator(), r);
  Elem u = 1;
  for (std::uint64_t k = 0; k + 1 < (std::uint64_t{1} << d); ++k) {
    sub.push_back(u);
    u = f.mul(u, h);
  }
  std::sort(sub.begin(), sub.end());
  std::set<Elem> seen;
  std::vector<Elem> reps;
  for (Elem v : sub) {
    if (seen.count(v)) continue;
    reps.push_back(v);
    Elem w = v;
    do {
      seen.insert(w);
      w = f.sqr(w);
    } while (w != v);
  }
  return reps;
}

namespace {

CandidateSet make_set(const std::string& key, Model m) {
  CandidateSet cs;
  cs.field_key = key;
  cs.field = ff::registry_field(key);
  cs.model = m;
  return cs;
}

void push(CandidateSet& cs, const ProjPoint& p, int form = 0) {
  cs.points.push_back(p);
  cs.form.push_back(form);
}

}  // namespace

CandidateSet candidates_p2(int d) {
  const char* key = nullptr;
  switch (d) {
    case 3: key = "F8"; break;
    case 6: key = "F64"; break;
    case 7: key = "F128"; break;
    case 8: key = "F256"; break;
    default: throw UnsupportedSize("P2 supports sizes 3, 6, 7, 8");
  }
  CandidateSet cs = make_set(key, Model::StdP2);
  const Field& f = *cs.field;
  if (d % 2) {
    const auto reps = frobenius_orbit_representatives(f, d);
    cs.representatives = reps.size();
    for (Elem y : reps)
      for (Elem z = 0; z < f.size(); ++z) push(cs, geom::make_p2(f, 1, y, z));
  } else {
    // l generates the subfield F_{2^{d/2}}: a^9 (root of x^3+x+1) or a^17 (root of x^4+x+1).
    const Elem l = f.pow(f.x_class(), d == 6 ? 9 : 17);
    for (Elem y = 0; y < f.size(); ++y) push(cs, geom::make_p2(f, 1, y, l), 0);
    for (Elem y = 0; y < f.size(); ++y) push(cs, geom::make_p2(f, 1, y, f.sqr(l) ^ f.mul(l, y)), 1);
  }
  return cs;
}

CandidateSet candidates_q(int d) {
  if (d == 4 || d == 6) {
    CandidateSet cs = make_set(d == 4 ? "F16" : "F64", Model::QTwist);
    const Field& f = *cs.field;
    for (Elem x = 1; x < f.size(); ++x)
      for (Elem y = 1; y < f.size(); ++y) push(cs, geom::make_p1xp1(f, x, 1, y, 1));
    return cs;
  }
  if (d == 7) {
    CandidateSet cs = make_set("F2_14", Model::QTwist);
    const Field& f = *cs.field;
    for (Elem x = 1; x < f.size(); ++x) push(cs, geom::make_p1xp1(f, x, 1, f.frobenius(x, 7), 1));
    return cs;
  }
  throw UnsupportedSize("Q supports sizes 4, 6, 7");
}

CandidateSet candidates_d5(int d) {
  if (d == 3) {
    CandidateSet cs = make_set("F2_15", Model::D5Twist);
    const Field& f = *cs.field;
    // b^73 + b^72 + b^64 + b^57 + b^9 + b^8 + b = 1
    for (Elem b = 0; b < f.size(); ++b) {
      const Elem b8 = f.pow(b, 8), b9 = f.mul(b8, b), b57 = f.pow(b, 57), b64 = f.sqr(f.sqr(f.sqr(b8)));
      const Elem b72 = f.mul(b64, b8), b73 = f.mul(b72, b);
      if ((b73 ^ b72 ^ b64 ^ b57 ^ b9 ^ b8 ^ b) != 1) continue;
      const Elem den = b8 ^ f.pow(b, 7) ^ 1;
      if (den == 0) {
        cs.skipped.push_back("b = " + f.to_string(b) + " has b^8+b^7+1 = 0");
        continue;
      }
      const ProjPoint p = geom::make_p2(f, 1, f.inv(den), b);
      if (p == geom::make_p2(f, 1, 1, 1)) {
        // b = 1 yields the base point [1:1:1] itself, which the derivation excludes.
        cs.skipped.push_back("b = 1 gives the base point [1:1:1]");
        continue;
      }
      push(cs, p);
    }
    return cs;
  }
  if (d == 4) {
    CandidateSet cs = make_set("F2_20", Model::D5Twist);
    const Field& f = *cs.field;
    for (Elem a = 0; a < f.size(); ++a) {
      const Elem a16 = f.sqr(f.sqr(f.sqr(f.sqr(a))));
      const Elem a256 = f.sqr(f.sqr(f.sqr(f.sqr(a16))));
      if ((f.mul(a256, a) ^ a16) != 1) continue;
      push(cs, geom::make_p2(f, 1, a, 1 ^ a16));
    }
    return cs;
  }
  throw UnsupportedSize("D5 supports sizes 3, 4");
}

CandidateSet candidates_d6(int d) {
  switch (d) {
    case 2: {
      CandidateSet cs = make_set("F64", Model::D6Twist);
      const Field& f = *cs.field;
      for (Elem b : f.roots_of_unity(21)) push(cs, geom::make_p2(f, f.inv(f.pow(b, 4)), b, 1));
      return cs;
    }
    case 3: {
      CandidateSet cs = make_set("F64", Model::D6Twist);
      const Field& f = *cs.field;
      const auto roots = f.roots_of_unity(9);
      for (Elem a : roots)
        for (Elem b : roots) push(cs, geom::make_p2(f, a, b, 1));
      return cs;
    }
    case 4: {
      CandidateSet cs = make_set("F2_12", Model::D6Twist);
      const Field& f = *cs.field;
      for (Elem a : f.roots_of_unity(273)) push(cs, geom::make_p2(f, a, f.inv(f.pow(a, 16)), 1));
      return cs;
    }
    case 5: {
      CandidateSet cs = make_set("F2_30", Model::D6Twist);
      const Field& f = *cs.field;
      for (Elem b : f.roots_of_unity(993)) push(cs, geom::make_p2(f, f.pow(b, 32), b, 1));
      return cs;
    }
    default: throw UnsupportedSize("D6 supports sizes 2, 3, 4, 5");
  }
}

}  // namespace cremona2::frob

#include "cremona2/classify.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <unordered_set>

#include "cremona2/errors.hpp"
#include "cremona2/poly.hpp"
#include "cremona2/rmap.hpp"

namespace cremona2::classify {

namespace {

using poly::MPoly;
using PointSet = std::unordered_set<ProjPoint, geom::ProjPointHash>;

const char* field_key_of(Surface s, int d) {
  switch (s) {
    case Surface::P2:
      switch (d) {
        case 3: return "F8";
        case 6: return "F64";
        case 7: return "F128";
        case 8: return "F256";
      }
      break;
    case Surface::Q:
      switch (d) {
        case 4: return "F16";
        case 6: return "F64";
        case 7: return "F2_14";
      }
      break;
    case Surface::D5:
      switch (d) {
        case 3: return "F2_15";
        case 4: return "F2_20";
      }
      break;
    case Surface::D6:
      switch (d) {
        case 2:
        case 3: return "F64";
        case 4: return "F2_12";
        case 5: return "F2_30";
      }
      break;
  }
  return nullptr;
}

frob::Model model_of(Surface s) {
  switch (s) {
    case Surface::P2: return frob::Model::StdP2;
    case Surface::Q: return frob::Model::QTwist;
    case Surface::D5: return frob::Model::D5Twist;
    case Surface::D6: return frob::Model::D6Twist;
  }
  return frob::Model::StdP2;
}

frob::CandidateSet candidates_of(Surface s, int d) {
  switch (s) {
    case Surface::P2: return frob::candidates_p2(d);
    case Surface::Q: return frob::candidates_q(d);
    case Surface::D5: return frob::candidates_d5(d);
    case Surface::D6: return frob::candidates_d6(d);
  }
  throw UnsupportedPair("unknown surface");
}

std::string pair_name(Surface s, int d) { return std::string(aut::surface_name(s)) + " d=" + std::to_string(d); }

/// Runs fn(i) for i in [0,n) on `workers` threads, each taking a contiguous
/// block; results are written by index so the merge order never depends on
/// scheduling.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn fn) {
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers < 1 ? 1 : workers, n));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  const std::size_t block = (n + w - 1) / w;
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t lo = t * block, hi = std::min(n, lo + block);
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

ProjPoint orbit_min(const frob::GOrbit& o) { return *std::min_element(o.points.begin(), o.points.end()); }

enum class SizeStatus { Ok, WrongSize, Indeterminate };

struct SizeResult {
  SizeStatus status = SizeStatus::WrongSize;
  frob::GOrbit orbit;
  ProjPoint key;
};

SizeResult size_stage(const SurfaceContext& ctx, const ProjPoint& p) {
  SizeResult r;
  try {
    r.orbit = frob::orbit(*ctx.field, ctx.model, p, ctx.d);
  } catch (const PeriodOverflow&) {
    return r;
  } catch (const IndeterminatePoint&) {
    r.status = SizeStatus::Indeterminate;
    return r;
  }
  if (static_cast<int>(r.orbit.size()) != ctx.d) return r;
  r.status = SizeStatus::Ok;
  r.key = orbit_min(r.orbit);
  return r;
}

std::vector<std::size_t> traversal(std::size_t n, const ClassifyOptions& opt) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (opt.shuffle_seed) {
    std::mt19937_64 rng(*opt.shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

Classification run(const SurfaceContext& ctx, const std::vector<ProjPoint>& points, const std::vector<int>& forms,
                   const ClassifyOptions& opt) {
  Classification out;
  out.surface = ctx.surface;
  out.d = ctx.d;
  out.field_key = ctx.field_key;
  out.counts.candidates = points.size();
  const Field& f = *ctx.field;
  const auto order = traversal(points.size(), opt);

  // Orbit sizes, in parallel; one point per orbit, merged in traversal order.
  std::vector<SizeResult> sized(points.size());
  parallel_for(order.size(), opt.workers, [&](std::size_t i) { sized[order[i]] = size_stage(ctx, points[order[i]]); });
  std::vector<std::size_t> reps;
  PointSet orbit_keys;
  for (std::size_t idx : order) {
    const SizeResult& r = sized[idx];
    if (r.status == SizeStatus::Indeterminate) ++out.counts.indeterminate;
    if (r.status != SizeStatus::Ok) continue;
    if (orbit_keys.insert(r.key).second) reps.push_back(idx);
  }
  out.counts.size_ok = reps.size();

  // General position, in parallel.
  std::vector<char> general(reps.size(), 0);
  parallel_for(reps.size(), opt.workers, [&](std::size_t i) {
    general[i] = general_position_on_surface(ctx.surface, f, sized[reps[i]].orbit.points);
  });
  std::vector<std::size_t> survivors;
  PointSet general_keys;
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (general[i]) {
      survivors.push_back(reps[i]);
      general_keys.insert(sized[reps[i]].key);
    }
  out.counts.position_ok = survivors.size();
  for (const auto& r : sized)
    if (r.status == SizeStatus::Ok && general_keys.count(r.key)) ++out.counts.position_points;

  // Dedup, sequential.
  PointSet seen;
  for (std::size_t idx : survivors) {
    const ProjPoint& p = points[idx];
    if (seen.count(p)) continue;
    OrbitClass oc;
    oc.surface = ctx.surface;
    oc.d = ctx.d;
    oc.representative = p;
    oc.orbit = sized[idx].orbit;
    oc.form = forms.empty() ? 0 : forms[idx];
    oc.candidate_index = idx;
    out.classes.push_back(std::move(oc));
    for (const auto& act : ctx.actions) {
      // General position keeps the orbit off the base points of the
      // birational automorphisms, so evaluation is always defined here.
      const ProjPoint q = act(p);
      for (const auto& x : frob::orbit(f, ctx.model, q, ctx.d).points) seen.insert(x);
    }
  }
  out.counts.classes = out.classes.size();

  // Final audit.
  out.audit_ok = true;
  for (const auto& c : out.classes) {
    const auto o = frob::orbit(f, ctx.model, c.representative, frob::kOrbitCap);
    if (static_cast<int>(o.size()) != ctx.d || !general_position_on_surface(ctx.surface, f, o.points)) out.audit_ok = false;
  }
  return out;
}

}  // namespace

const std::vector<std::pair<Surface, int>>& supported_pairs() {
  static const std::vector<std::pair<Surface, int>> pairs = {
      {Surface::P2, 3}, {Surface::P2, 6}, {Surface::P2, 7}, {Surface::P2, 8}, {Surface::Q, 4},  {Surface::Q, 6},
      {Surface::Q, 7},  {Surface::D5, 3}, {Surface::D5, 4}, {Surface::D6, 2}, {Surface::D6, 3}, {Surface::D6, 4},
      {Surface::D6, 5}};
  return pairs;
}

bool is_supported(Surface s, int d) { return field_key_of(s, d) != nullptr; }

const SurfaceContext& context(Surface s, int d) {
  if (!is_supported(s, d)) throw UnsupportedPair(pair_name(s, d) + " is not in the supported table");
  static std::mutex mu;
  static std::map<std::pair<Surface, int>, std::unique_ptr<SurfaceContext>> cache;
  std::lock_guard lk(mu);
  auto& slot = cache[{s, d}];
  if (!slot) {
    auto ctx = std::make_unique<SurfaceContext>();
    ctx->surface = s;
    ctx->d = d;
    ctx->field_key = field_key_of(s, d);
    ctx->field = ff::registry_field(ctx->field_key);
    ctx->model = model_of(s);
    ctx->actions = aut::point_actions(s, ctx->field);
    slot = std::move(ctx);
  }
  return *slot;
}

bool general_position_on_surface(Surface s, const Field& f, const std::vector<ProjPoint>& orbit) {
  std::vector<ProjPoint> pts;
  switch (s) {
    case Surface::P2: return geom::general_position_p2(f, orbit).ok;
    case Surface::Q: return geom::general_position_p1xp1(f, orbit).ok;
    case Surface::D5:
      pts = {geom::make_p2(f, 1, 0, 0), geom::make_p2(f, 0, 1, 0), geom::make_p2(f, 0, 0, 1), geom::make_p2(f, 1, 1, 1)};
      break;
    case Surface::D6:
      pts = {geom::make_p2(f, 1, 0, 0), geom::make_p2(f, 0, 1, 0), geom::make_p2(f, 0, 0, 1)};
      break;
  }
  pts.insert(pts.end(), orbit.begin(), orbit.end());
  return geom::general_position_p2(f, pts).ok;
}

Classification classify_orbits(Surface s, int d, const ClassifyOptions& opt) {
  const SurfaceContext& ctx = context(s, d);
  const frob::CandidateSet cs = candidates_of(s, d);
  Classification out = run(ctx, cs.points, cs.form, opt);
  out.counts.representatives = cs.representatives;
  out.notes = cs.skipped;
  return out;
}

Classification classify_points(const SurfaceContext& ctx, const std::vector<ProjPoint>& points,
                               const ClassifyOptions& opt) {
  return run(ctx, points, {}, opt);
}

std::vector<ProjPoint> all_points_p2(const Field& f) {
  std::vector<ProjPoint> out;
  out.reserve(f.size() * f.size() + f.size() + 1);
  for (Elem y = 0; y < f.size(); ++y)
    for (Elem z = 0; z < f.size(); ++z) out.push_back(geom::make_p2(f, 1, y, z));
  for (Elem z = 0; z < f.size(); ++z) out.push_back(geom::make_p2(f, 0, 1, z));
  out.push_back(geom::make_p2(f, 0, 0, 1));
  return out;
}

bool orbits_equivalent(const SurfaceContext& ctx, const ProjPoint& p, const ProjPoint& q) {
  const auto oq = frob::orbit(*ctx.field, ctx.model, q, frob::kOrbitCap);
  const PointSet target(oq.points.begin(), oq.points.end());
  for (const auto& act : ctx.actions)
    if (target.count(act(p))) return true;
  return false;
}

std::vector<std::optional<std::size_t>> published_stage_row(Surface s, int d) {
  using R = std::vector<std::optional<std::size_t>>;
  const std::optional<std::size_t> none;
  switch (s) {
    case Surface::P2:
      switch (d) {
        case 3: return R{4, 8, 1};
        case 6: return R{none, 32, 2};
        case 7: return R{20, 1680, 10};
        case 8: return R{none, 400, 38};
      }
      break;
    case Surface::Q:
      switch (d) {
        case 4: return R{225, 54, 0, 0};
        case 6: return R{3969, 650, 480, 5};
        case 7: return R{16383, 2340, 2160, 18};
      }
      break;
    case Surface::D5:
      switch (d) {
        case 3: return R{65, 20, 20, 4};
        case 4: return R{257, 60, 60, 12};
      }
      break;
    case Surface::D6:
      switch (d) {
        case 2: return R{21, 9, 9, 1};
        case 3: return R{81, 26, 20, 2};
        case 4: return R{273, 63, 63, 4};
        case 5: return R{993, 198, 198, 11};
      }
      break;
  }
  throw UnsupportedPair(pair_name(s, d) + " is not in the supported table");
}

std::vector<std::optional<std::size_t>> computed_stage_row(const Classification& c) {
  const auto& k = c.counts;
  if (c.surface == Surface::P2) {
    std::optional<std::size_t> step0;
    if (c.d % 2) step0 = k.representatives;
    return {step0, k.position_points, k.classes};
  }
  return {k.candidates, k.size_ok, k.position_ok, k.classes};
}

std::size_t published_class_count(Surface s, int d) { return *published_stage_row(s, d).back(); }

std::vector<PublishedRepresentative> published_representatives(Surface s, int d) {
  const SurfaceContext& ctx = context(s, d);
  const Field& f = *ctx.field;
  const Elem a = f.x_class();
  auto pw = [&](std::int64_t e) {
    const std::int64_t m = static_cast<std::int64_t>(f.unit_order());
    return f.pow(a, static_cast<std::uint64_t>(((e % m) + m) % m));
  };
  std::vector<PublishedRepresentative> out;
  auto add = [&](std::string label, int k, const ProjPoint& p) { out.push_back({std::move(label), k, p}); };
  auto kl = [](const std::string& form, int k) { return form + ", k=" + std::to_string(k); };
  switch (s) {
    case Surface::P2:
      if (d == 3) add("[1:a:a^2]", 1, geom::make_p2(f, 1, a, pw(2)));
      if (d == 6)
        for (int k : {2, 12}) add(kl("[1:a^k:a^9]", k), k, geom::make_p2(f, 1, pw(k), pw(9)));
      if (d == 7)
        for (int k : {5, 9, 10, 11, 17, 18, 22, 24, 26, 39}) add(kl("[1:a:a^k]", k), k, geom::make_p2(f, 1, a, pw(k)));
      if (d == 8) {
        const Elem b = pw(17);
        for (int k : {1, 3, 5, 9, 10, 11, 13, 22, 26, 39, 47, 58}) add(kl("[1:a^k:b]", k), k, geom::make_p2(f, 1, pw(k), b));
        for (int k : {1, 5, 6, 7, 9, 10, 11, 13, 14, 15, 18, 19, 21, 22, 23, 25, 26, 27, 35, 38, 41, 42, 43, 45, 46, 54})
          add(kl("[1:a^k:b^2+b a^k]", k), k, geom::make_p2(f, 1, pw(k), f.sqr(b) ^ f.mul(b, pw(k))));
      }
      break;
    case Surface::Q:
      if (d == 6)
        for (int k : {3, 5, 6, 7, 13}) add(kl("([a:1],[a^k:1])", k), k, geom::make_p1xp1(f, a, 1, pw(k), 1));
      if (d == 7)
        for (int k : {1, 3, 5, 7, 9, 11, 13, 15, 17, 21, 25, 29, 33, 37, 47, 61, 87, 133})
          add(kl("([a^k:1],[a^(128k):1])", k), k, geom::make_p1xp1(f, pw(k), 1, pw(128LL * k), 1));
      break;
    case Surface::D5:
      if (d == 3)
        for (int k : {1103, 4911, 4959, 5323}) {
          const Elem z = pw(k);
          const Elem lam = f.inv(f.pow(z, 8) ^ f.pow(z, 7) ^ 1);
          add(kl("[1:l(a^k):a^k]", k), k, geom::make_p2(f, 1, lam, z));
        }
      if (d == 4)
        for (int k : {121, 10293, 17789, 18725, 40151, 40331, 43157, 50865, 77161, 169277, 211821, 216373})
          add(kl("[1:a^k:1+a^(16k)]", k), k, geom::make_p2(f, 1, pw(k), 1 ^ pw(16LL * k)));
      break;
    case Surface::D6:
      if (d == 2) add("[a^-12:a^3:1]", 1, geom::make_p2(f, pw(-12), pw(3), 1));
      if (d == 3)
        for (int k : {7, 21}) add(kl("[1:a^k:1]", k), k, geom::make_p2(f, 1, pw(k), 1));
      if (d == 4) {
        const std::int64_t r = 15;
        for (int k : {1, 3, 7, 9}) add(kl("[a^(rk):a^(-16rk):1]", k), k, geom::make_p2(f, pw(r * k), pw(-16 * r * k), 1));
      }
      if (d == 5) {
        const std::int64_t r = static_cast<std::int64_t>(f.unit_order() / (31 * 32 + 1));
        // The orbit condition for d=5 is x = y^32 with y^993 = 1, so the
        // listed exponent pair is (32rk, rk); the opposite order gives points
        // whose orbit is not of size 5.
        for (int k : {1, 3, 5, 7, 9, 15, 17, 19, 23, 25, 29})
          add(kl("[a^(32rk):a^(rk):1]", k), k, geom::make_p2(f, pw(32 * r * k), pw(r * k), 1));
      }
      break;
  }
  return out;
}

MatchReport match_published_representatives(const Classification& c) {
  const SurfaceContext& ctx = context(c.surface, c.d);
  const Field& f = *ctx.field;
  MatchReport rep;
  const auto published = published_representatives(c.surface, c.d);
  rep.published_count = published.size();
  rep.computed_count = c.classes.size();
  std::vector<int> hits(c.classes.size(), 0);
  for (const auto& pr : published) {
    std::vector<std::size_t> m;
    bool valid = false;
    try {
      const auto o = frob::orbit(f, ctx.model, pr.point, frob::kOrbitCap);
      valid = static_cast<int>(o.size()) == c.d && general_position_on_surface(c.surface, f, o.points);
    } catch (const Error&) {
      valid = false;
    }
    if (!valid) rep.problems.push_back(pr.label + ": not an orbit of size " + std::to_string(c.d) + " in general position");
    for (std::size_t j = 0; j < c.classes.size(); ++j)
      if (orbits_equivalent(ctx, pr.point, c.classes[j].representative)) {
        m.push_back(j);
        ++hits[j];
      }
    if (m.size() != 1)
      rep.problems.push_back(pr.label + ": equivalent to " + std::to_string(m.size()) + " computed classes");
    rep.matches.push_back(std::move(m));
  }
  for (std::size_t j = 0; j < hits.size(); ++j)
    if (hits[j] != 1)
      rep.problems.push_back("computed " + c.classes[j].representative.to_string(f) + ": matched by " +
                             std::to_string(hits[j]) + " published representatives");
  if (rep.published_count != rep.computed_count)
    rep.problems.push_back("count mismatch: " + std::to_string(rep.published_count) + " published, " +
                           std::to_string(rep.computed_count) + " computed");
  rep.ok = rep.problems.empty();
  return rep;
}

bool dedup_sound(const Classification& c) {
  const SurfaceContext& ctx = context(c.surface, c.d);
  for (std::size_t i = 0; i < c.classes.size(); ++i)
    for (std::size_t j = i + 1; j < c.classes.size(); ++j)
      if (orbits_equivalent(ctx, c.classes[i].representative, c.classes[j].representative)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Counting lemmas.

namespace {

std::vector<ProjPoint> apply_matrix(const Field& f, const aut::Gf2Matrix& m, const std::vector<ProjPoint>& pts) {
  std::vector<ProjPoint> out;
  for (const auto& p : pts) {
    const auto v = m.apply(f, {p.c[0], p.c[1], p.c[2]});
    out.push_back(geom::make_p2(f, v[0], v[1], v[2]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> sorted(std::vector<ProjPoint> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// Distinct Frobenius orbits of exact size d among the points, each sorted.
std::vector<std::vector<ProjPoint>> orbits_of_size(const Field& f, const std::vector<ProjPoint>& pts, int d) {
  std::set<std::vector<ProjPoint>> seen;
  std::vector<std::vector<ProjPoint>> out;
  for (const auto& p : pts) {
    const auto o = frob::orbit(f, frob::Model::StdP2, p, frob::kOrbitCap);
    if (static_cast<int>(o.size()) != d) continue;
    auto s = sorted(o.points);
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

GeiserPairReport geiser_pair_report() {
  GeiserPairReport r;
  const FieldPtr fp = rmap::small_field(10);
  const Field& f = *fp;
  const auto group = aut::pgl3_f2().linear;
  const Elem a = f.embed_with_min_poly({1, 0, 1, 0, 0, 1});
  const auto five = sorted(frob::orbit(f, frob::Model::StdP2, geom::make_p2(f, 1, a, f.sqr(a))).points);
  // P2(F4) and P2(F32) inside P2(F_{2^10}).
  auto plane_over = [&](int k) {
    std::vector<Elem> sub;
    for (Elem u = 0; u < f.size(); ++u)
      if (f.frobenius(u, k) == u) sub.push_back(u);
    std::set<ProjPoint> pts;
    for (Elem x : sub)
      for (Elem y : sub)
        for (Elem z : sub)
          if (x | y | z) pts.insert(geom::make_p2(f, x, y, z));
    return std::vector<ProjPoint>(pts.begin(), pts.end());
  };
  const auto twos = orbits_of_size(f, plane_over(2), 2);
  r.size2_orbits = twos.size();

  // The conic through the five points, scaled to GF(2) coefficients.
  const auto mons = geom::monomial_basis(geom::Space::P2, {2});
  const auto kb = geom::kernel_basis(f, geom::position_matrix(f, five, {2}));
  MPoly conic(fp, 3);
  if (kb.size() == 1) {
    Elem lead = 0;
    for (Elem c : kb[0])
      if (c && !lead) lead = c;
    for (std::size_t i = 0; i < mons.size(); ++i)
      if (kb[0][i]) conic += MPoly::monomial(fp, 3, mons[i], f.div(kb[0][i], lead));
  }
  auto linear_subs = [&](const aut::Gf2Matrix& m) {
    std::vector<MPoly> subs;
    for (int i = 0; i < 3; ++i) {
      MPoly row(fp, 3);
      for (int j = 0; j < 3; ++j)
        if (m.at(i, j)) row += MPoly::variable(fp, 3, j);
      subs.push_back(row);
    }
    return subs;
  };
  std::vector<aut::Gf2Matrix> stab, conic_group;
  for (const auto& m : group) {
    if (apply_matrix(f, m, five) == five) stab.push_back(m);
    if (!conic.is_zero() && conic.compose(linear_subs(m)) == conic) conic_group.push_back(m);
  }
  r.stabilizer_order = stab.size();
  r.conic_group_order = conic_group.size();

  std::vector<std::vector<ProjPoint>> admissible;
  for (const auto& two : twos) {
    if (!conic.is_zero() && conic.eval(two.front().coords()) == 0) ++r.on_conic;
    std::vector<ProjPoint> all = five;
    all.insert(all.end(), two.begin(), two.end());
    if (geom::general_position_p2(f, all).ok) admissible.push_back(two);
  }
  r.general_pairs = admissible.size();
  auto class_reps = [&](const std::vector<aut::Gf2Matrix>& g) {
    std::set<std::vector<ProjPoint>> seen;
    std::vector<std::vector<ProjPoint>> reps;
    for (const auto& two : admissible) {
      if (seen.count(two)) continue;
      reps.push_back(two);
      for (const auto& m : g) seen.insert(apply_matrix(f, m, two));
    }
    return reps;
  };
  r.field = fp;
  r.size5 = five;
  r.representatives = class_reps(stab);
  r.classes = r.representatives.size();
  r.conic_classes = class_reps(conic_group).size();

  // Independent count over every size-5 orbit.
  using Pair = std::pair<std::vector<ProjPoint>, std::vector<ProjPoint>>;
  std::vector<Pair> pairs;
  for (const auto& o5 : orbits_of_size(f, plane_over(5), 5)) {
    if (!geom::general_position_p2(f, o5).ok) continue;
    for (const auto& two : twos) {
      std::vector<ProjPoint> all = o5;
      all.insert(all.end(), two.begin(), two.end());
      if (geom::general_position_p2(f, all).ok) pairs.emplace_back(o5, two);
    }
  }
  r.all_pairs = pairs.size();
  std::set<Pair> seen;
  for (const auto& pr : pairs) {
    if (seen.count(pr)) continue;
    ++r.all_pair_classes;
    for (const auto& m : group) seen.insert({apply_matrix(f, m, pr.first), apply_matrix(f, m, pr.second)});
  }
  return r;
}

std::size_t geiser_pair_classes() { return geiser_pair_report().classes; }

UniqueSize5Report unique_size5_report() {
  UniqueSize5Report r;
  for (std::uint64_t mask = 32; mask < 64; ++mask) r.irreducible_quintics += ff::is_irreducible_mask(mask);
  const FieldPtr fp = rmap::small_field(5);
  const Field& f = *fp;
  const auto orbits = orbits_of_size(f, all_points_p2(f), 5);
  r.size5_orbits = orbits.size();
  const auto standard = sorted(frob::orbit(f, frob::Model::StdP2, geom::make_p2(f, 1, f.x_class(), f.sqr(f.x_class()))).points);
  const auto group = aut::pgl3_f2().linear;
  std::set<std::vector<ProjPoint>> seen;
  for (const auto& o : orbits) {
    if (!geom::general_position_p2(f, o).ok) continue;
    ++r.no_three_collinear;
    if (o == standard) r.contains_standard = true;
    if (seen.count(o)) continue;
    ++r.classes;
    for (const auto& m : group) seen.insert(apply_matrix(f, m, o));
  }
  return r;
}

bool unique_size5_check() {
  const auto r = unique_size5_report();
  return r.irreducible_quintics == 6 && r.classes == 1 && r.contains_standard;
}

}  // namespace cremona2::classify

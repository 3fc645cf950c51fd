#include "cremona2/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>

namespace cremona2::poly {

namespace {

constexpr int kShift[4] = {36, 24, 12, 0};
constexpr Key kFieldMask = 0xFFF;

using Accumulator = std::unordered_map<Key, Elem>;

void accumulate(Accumulator& acc, const ff::Field& f, Key k, Elem c) {
  if (c == 0) return;
  auto [it, inserted] = acc.try_emplace(k, c);
  if (!inserted) it->second = f.add(it->second, c);
}

std::vector<MPoly::Term> drain(Accumulator& acc) {
  std::vector<MPoly::Term> out;
  out.reserve(acc.size());
  for (const auto& [k, c] : acc)
    if (c != 0) out.emplace_back(k, c);
  return out;
}

}  // namespace

Key pack(const Exponents& e) {
  Key k = 0;
  int deg = 0;
  for (int i = 0; i < 4; ++i) {
    if (e[i] < 0 || e[i] > kMaxExponent) throw ExponentOverflow("exponent out of range");
    k |= static_cast<Key>(e[i]) << kShift[i];
    deg += e[i];
  }
  return k | (static_cast<Key>(deg) << 48);
}

Exponents unpack(Key k) {
  Exponents e{};
  for (int i = 0; i < 4; ++i) e[i] = static_cast<int>((k >> kShift[i]) & kFieldMask);
  return e;
}

std::vector<std::string> default_names(int nvars) {
  switch (nvars) {
    case 1: return {"t"};
    case 2: return {"x", "y"};
    case 3: return {"x", "y", "z"};
    case 4: return {"x0", "x1", "y0", "y1"};
    default: throw ArityMismatch("unsupported number of variables");
  }
}

MPoly::MPoly(FieldPtr field, int nvars) : field_(std::move(field)), nvars_(nvars) {
  if (nvars_ < 1 || nvars_ > kMaxVars) throw ArityMismatch("nvars must be in [1,4]");
}

MPoly MPoly::constant(FieldPtr field, int nvars, Elem c) {
  MPoly p(std::move(field), nvars);
  if (c) p.terms_.emplace_back(Key{0}, c);
  return p;
}

MPoly MPoly::variable(FieldPtr field, int nvars, int index) {
  if (index < 0 || index >= nvars) throw ArityMismatch("variable index out of range");
  Exponents e{};
  e[static_cast<std::size_t>(index)] = 1;
  return monomial(std::move(field), nvars, e, 1);
}

MPoly MPoly::monomial(FieldPtr field, int nvars, const Exponents& e, Elem c) {
  for (int i = nvars; i < 4; ++i)
    if (e[static_cast<std::size_t>(i)] != 0) throw ArityMismatch("exponent on a nonexistent variable");
  MPoly p(std::move(field), nvars);
  if (c) p.terms_.emplace_back(pack(e), c);
  return p;
}

MPoly MPoly::from_unsorted(FieldPtr field, int nvars, std::vector<Term> terms) {
  MPoly p(std::move(field), nvars);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  p.terms_ = std::move(terms);
  return p;
}

Elem MPoly::coeff(const Exponents& e) const {
  const Key k = pack(e);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, Key key) { return t.first > key; });
  return (it != terms_.end() && it->first == k) ? it->second : 0;
}

void MPoly::check_compatible(const MPoly& o) const {
  if (!field_ || !o.field_) throw MixedContexts("uninitialised polynomial");
  if (field_.get() != o.field_.get() && field_->modulus_mask() != o.field_->modulus_mask())
    throw MixedContexts("polynomials over " + field_->name() + " and " + o.field_->name());
  if (nvars_ != o.nvars_) throw MixedContexts("polynomials in different numbers of variables");
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  MPoly r(field_, nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first > o.terms_[j].first)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first > terms_[i].first) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      const Elem c = terms_[i].second ^ o.terms_[j].second;
      if (c) r.terms_.emplace_back(terms_[i].first, c);
      ++i;
      ++j;
    }
  }
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) { return *this = *this + o; }

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  if (is_zero() || o.is_zero()) return MPoly(field_, nvars_);
  if (key_degree(terms_.front().first) + key_degree(o.terms_.front().first) > kMaxExponent)
    throw ExponentOverflow("product degree exceeds packing limit");
  const ff::Field& f = *field_;
  Accumulator acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) accumulate(acc, f, ka + kb, f.mul(ca, cb));
  return from_unsorted(field_, nvars_, drain(acc));
}

MPoly MPoly::scaled(Elem c) const {
  MPoly r(field_, nvars_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [k, v] : terms_) r.terms_.emplace_back(k, field_->mul(v, c));
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result = constant(field_, nvars_, 1);
  MPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool MPoly::operator==(const MPoly& o) const {
  check_compatible(o);
  return terms_ == o.terms_;
}

Elem MPoly::eval(const std::vector<Elem>& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw ArityMismatch("point length differs from nvars");
  const ff::Field& f = *field_;
  // Power tables per variable up to the maximal exponent used.
  std::array<std::vector<Elem>, 4> pw;
  std::array<int, 4> maxe{};
  for (const auto& [k, c] : terms_) {
    const Exponents e = unpack(k);
    for (int i = 0; i < nvars_; ++i) maxe[i] = std::max(maxe[i], e[i]);
  }
  for (int i = 0; i < nvars_; ++i) {
    pw[i].resize(static_cast<std::size_t>(maxe[i]) + 1);
    pw[i][0] = 1;
    for (int j = 1; j <= maxe[i]; ++j) pw[i][j] = f.mul(pw[i][j - 1], point[i]);
  }
  Elem r = 0;
  for (const auto& [k, c] : terms_) {
    const Exponents e = unpack(k);
    Elem t = c;
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t = f.mul(t, pw[i][e[i]]);
    r ^= t;
  }
  return r;
}

MPoly MPoly::compose(const std::vector<MPoly>& subs) const {
  if (static_cast<int>(subs.size()) != nvars_) throw ArityMismatch("substitution count differs from nvars");
  if (subs.empty()) throw ArityMismatch("empty substitution");
  for (const auto& s : subs) {
    if (s.nvars_ != subs[0].nvars_) throw ArityMismatch("substitutions have different arity");
    if (!s.field_ || (s.field_.get() != field_.get() && s.field_->modulus_mask() != field_->modulus_mask()))
      throw MixedContexts("substitution over a different field");
  }
  const int out_vars = subs[0].nvars_;
  const FieldPtr& outf = subs[0].field_;
  if (is_zero()) return MPoly(outf, out_vars);
  // Lazily extended power tables.
  std::vector<std::vector<MPoly>> pw(static_cast<std::size_t>(nvars_));
  auto power = [&](int var, int e) -> const MPoly& {
    auto& v = pw[static_cast<std::size_t>(var)];
    if (v.empty()) v.push_back(constant(outf, out_vars, 1));
    while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * subs[static_cast<std::size_t>(var)]);
    return v[static_cast<std::size_t>(e)];
  };
  const ff::Field& f = *outf;
  Accumulator acc;
  for (const auto& [k, c] : terms_) {
    const Exponents e = unpack(k);
    MPoly prod = constant(outf, out_vars, c);
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) prod = prod * power(i, e[i]);
    for (const auto& [pk, pc] : prod.terms_) accumulate(acc, f, pk, pc);
  }
  return from_unsorted(outf, out_vars, drain(acc));
}

MPoly MPoly::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw ArityMismatch("derivative variable out of range");
  std::vector<Term> out;
  for (const auto& [k, c] : terms_) {
    Exponents e = unpack(k);
    if (e[static_cast<std::size_t>(var)] % 2 == 0) continue;  // even multiplicity vanishes in char 2
    e[static_cast<std::size_t>(var)] -= 1;
    out.emplace_back(pack(e), c);
  }
  return from_unsorted(field_, nvars_, std::move(out));
}

DegreeInfo MPoly::degree_info() const {
  if (is_zero()) throw ZeroPolynomial("degree of the zero polynomial");
  DegreeInfo info;
  info.total_degree = key_degree(terms_.front().first);
  info.is_homogeneous = key_degree(terms_.back().first) == info.total_degree;
  if (nvars_ == 4) {
    const Exponents e0 = unpack(terms_.front().first);
    const int a = e0[0] + e0[1], b = e0[2] + e0[3];
    bool bihom = true;
    for (const auto& [k, c] : terms_) {
      const Exponents e = unpack(k);
      if (e[0] + e[1] != a || e[2] + e[3] != b) {
        bihom = false;
        break;
      }
    }
    if (bihom) {
      info.has_bidegree = true;
      info.bidegree[0] = a;
      info.bidegree[1] = b;
    }
  }
  return info;
}

int MPoly::total_degree() const { return degree_info().total_degree; }
bool MPoly::is_homogeneous() const { return degree_info().is_homogeneous; }

MPoly MPoly::coefficient_frobenius(unsigned k) const {
  MPoly r(field_, nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& [key, c] : terms_) r.terms_.emplace_back(key, field_->frobenius(c, k));
  return r;
}

bool MPoly::has_gf2_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second == 1; });
}

MPoly MPoly::mapped(const ff::Embedding& emb) const {
  if (field_->modulus_mask() != emb.src()->modulus_mask()) throw MixedContexts("embedding source differs");
  MPoly r(emb.dst(), nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& [k, c] : terms_) r.terms_.emplace_back(k, emb(c));
  return r;
}

MPoly MPoly::with_nvars(int nvars) const {
  if (nvars < nvars_) throw ArityMismatch("cannot drop variables");
  MPoly r(field_, nvars);
  r.terms_ = terms_;
  return r;
}

MPoly MPoly::remainder(const MPoly& d) const { return divmod(d).second; }

std::pair<MPoly, MPoly> MPoly::divmod(const MPoly& d) const {
  check_compatible(d);
  if (d.is_zero()) throw ZeroPolynomial("division by zero polynomial");
  const ff::Field& f = *field_;
  const Exponents le = unpack(d.terms_.front().first);
  const Elem lead_inv = f.inv(d.terms_.front().second);
  MPoly p = *this;
  std::vector<Term> quot, rem;
  while (!p.is_zero()) {
    const auto [k, c] = p.terms_.front();
    const Exponents e = unpack(k);
    bool divisible = true;
    for (int i = 0; i < 4; ++i) divisible = divisible && e[i] >= le[i];
    if (divisible) {
      Exponents q{};
      for (int i = 0; i < 4; ++i) q[i] = e[i] - le[i];
      const Elem qc = f.mul(c, lead_inv);
      quot.emplace_back(pack(q), qc);
      p = p + d * monomial(field_, nvars_, q, qc);
    } else {
      rem.emplace_back(k, c);
      p.terms_.erase(p.terms_.begin());
    }
  }
  // Both lists were produced in decreasing order.
  MPoly qp(field_, nvars_), rp(field_, nvars_);
  qp.terms_ = std::move(quot);
  rp.terms_ = std::move(rem);
  return {qp, rp};
}

std::string MPoly::to_string(const std::vector<std::string>& names_in) const {
  const std::vector<std::string> names = names_in.empty() ? default_names(nvars_) : names_in;
  if (is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    const Exponents e = unpack(k);
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[static_cast<std::size_t>(i)];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += field_->to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += field_->to_string(c) + "*" + mono;
    }
  }
  return out;
}

MPoly MPoly::parse(FieldPtr field, int nvars, std::string_view text, const std::vector<std::string>& names_in) {
  const std::vector<std::string> names = names_in.empty() ? default_names(nvars) : names_in;
  MPoly result(field, nvars);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "0") return result;
  std::size_t pos = 0;
  auto parse_int = [&](std::size_t& p) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + p, s.data() + s.size(), v);
    if (ec != std::errc()) throw ParseError("expected integer at position " + std::to_string(p));
    p = static_cast<std::size_t>(ptr - s.data());
    return v;
  };
  while (pos < s.size()) {
    Elem coef = 1;
    Exponents e{};
    bool first_factor = true;
    while (true) {
      // One factor: field constant or variable power.
      bool matched = false;
      // Longest variable-name match first (x0 before x).
      std::size_t best = names.size();
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (s.compare(pos, names[i].size(), names[i]) == 0 &&
            (best == names.size() || names[i].size() > names[best].size()))
          best = i;
      }
      if (best != names.size()) {
        pos += names[best].size();
        int ex = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          ex = parse_int(pos);
        }
        e[best] += ex;
        matched = true;
      } else if (pos < s.size() && s[pos] == 'a') {
        std::size_t end = pos + 1;
        if (end < s.size() && s[end] == '^') {
          ++end;
          while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
        }
        coef = field->mul(coef, field->parse(s.substr(pos, end - pos)));
        pos = end;
        matched = true;
      } else if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        const int v = parse_int(pos);
        if (v != 0 && v != 1) throw ParseError("integer constants must be 0 or 1");
        coef = v ? coef : 0;
        matched = true;
      }
      if (!matched) throw ParseError("unexpected character at position " + std::to_string(pos));
      first_factor = false;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    (void)first_factor;
    result += monomial(field, nvars, e, coef);
    if (pos < s.size()) {
      if (s[pos] != '+') throw ParseError("expected '+' at position " + std::to_string(pos));
      ++pos;
    }
  }
  return result;
}

MPoly poly_arith(PolyOp op, const MPoly& p, const MPoly& q) { return op == PolyOp::Add ? p + q : p * q; }

}  // namespace cremona2::poly

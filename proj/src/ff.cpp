#include "cremona2/ff.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <map>

namespace cremona2::ff {

std::uint64_t coeffs_to_mask(const Coeffs& c) {
  if (c.size() > 63) throw InvalidModulus("polynomial degree exceeds 62");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0 && c[i] != 1) throw InvalidModulus("coefficients must be 0 or 1");
    if (c[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

Coeffs mask_to_coeffs(std::uint64_t mask) {
  Coeffs c;
  while (mask) {
    c.push_back(static_cast<int>(mask & 1));
    mask >>= 1;
  }
  return c;
}

int mask_degree(std::uint64_t mask) { return mask ? 63 - std::countl_zero(mask) : -1; }

namespace {

// Remainder of a by b in GF(2)[x].
std::uint64_t mask_mod(std::uint64_t a, std::uint64_t b) {
  const int db = mask_degree(b);
  for (int da = mask_degree(a); da >= db; da = mask_degree(a)) a ^= b << (da - db);
  return a;
}

}  // namespace

bool is_irreducible_mask(std::uint64_t mask) {
  const int n = mask_degree(mask);
  if (n < 1) return false;
  for (int d = 1; 2 * d <= n; ++d) {
    for (std::uint64_t low = 0; low < (std::uint64_t{1} << d); ++low) {
      const std::uint64_t cand = (std::uint64_t{1} << d) | low;
      if (mask_mod(mask, cand) == 0) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

Field::Field(int n, std::uint64_t mod, std::string name) : n_(n), mod_(mod), name_(std::move(name)) {
  primes_ = prime_factors(unit_order());
  // Ascending bit-pattern search for a primitive element.
  for (Elem g = 1; g < size(); ++g) {
    if (element_order(g) == unit_order()) {
      gen_ = g;
      break;
    }
  }
}

FieldPtr Field::create(const Coeffs& modulus, std::string name) {
  Coeffs c = modulus;
  while (!c.empty() && c.back() == 0) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1 || n > 30) throw InvalidModulus("modulus degree must be in [1,30], got " + std::to_string(n));
  const std::uint64_t mask = coeffs_to_mask(c);
  if (!is_irreducible_mask(mask)) throw ReducibleModulus("modulus has a nontrivial factor");
  if (name.empty()) name = "GF(2^" + std::to_string(n) + ")";
  return FieldPtr(new Field(n, mask, std::move(name)));
}

Elem Field::mul(Elem a, Elem b) const {
  Elem r = 0;
  const Elem top = Elem{1} << n_;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= mod_;
  }
  return r;
}

Elem Field::pow(Elem u, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, u);
    u = mul(u, u);
    e >>= 1;
  }
  return r;
}

Elem Field::inv(Elem u) const {
  if (u == 0) throw ZeroInverse("inverse of zero");
  // u^(2^n - 2)
  return pow(u, unit_order() - 1);
}

Elem Field::frobenius(Elem u, unsigned k) const {
  k %= static_cast<unsigned>(n_);
  for (unsigned i = 0; i < k; ++i) u = mul(u, u);
  return u;
}

std::uint64_t Field::element_order(Elem u) const {
  if (u == 0) throw ZeroInverse("order of zero");
  std::uint64_t ord = unit_order();
  for (std::uint64_t p : primes_) {
    while (ord % p == 0 && pow(u, ord / p) == 1) ord /= p;
  }
  return ord;
}

Coeffs Field::minimal_polynomial(Elem u) const {
  std::vector<Elem> conj{u};
  for (Elem c = mul(u, u); c != u; c = mul(c, c)) conj.push_back(c);
  // Expand prod (X + c_i) with coefficients in the field.
  std::vector<Elem> poly{1};  // low degree first
  for (Elem c : conj) {
    std::vector<Elem> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] ^= poly[i];
      next[i] ^= mul(poly[i], c);
    }
    poly = std::move(next);
  }
  Coeffs out;
  for (Elem c : poly) {
    if (c > 1) throw NoSuchElement("minimal polynomial has non-GF(2) coefficient (internal error)");
    out.push_back(static_cast<int>(c));
  }
  return out;
}

std::vector<Elem> Field::roots_of_unity(std::uint64_t m) const {
  if (m == 0 || unit_order() % m != 0)
    throw NotADivisor(std::to_string(m) + " does not divide " + std::to_string(unit_order()));
  const std::uint64_t r = unit_order() / m;
  const Elem step = pow(gen_, r);
  std::vector<Elem> out;
  out.reserve(m);
  Elem cur = 1;
  for (std::uint64_t k = 0; k < m; ++k) {
    out.push_back(cur);
    cur = mul(cur, step);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Elem Field::embed_with_min_poly(const Coeffs& target) const {
  Coeffs t = target;
  while (!t.empty() && t.back() == 0) t.pop_back();
  const int d = static_cast<int>(t.size()) - 1;
  if (d < 1 || n_ % d != 0) throw NoSuchElement("degree of target does not divide field degree");
  const std::uint64_t mask = coeffs_to_mask(t);
  if (d == 1) {
    // x (root 0) or x + 1 (root 1).
    if (mask == 0b10) throw NoSuchElement("0 is not a power of the generator");
    return 1;
  }
  // Roots lie in the subfield GF(2^d), whose units are exactly the powers
  // g^e with e a multiple of r = (2^n - 1)/(2^d - 1); scanning those in
  // increasing order yields the smallest qualifying exponent.
  const std::uint64_t r = unit_order() / ((std::uint64_t{1} << d) - 1);
  const Elem step = pow(gen_, r);
  Elem cur = 1;
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << d) - 1; ++j) {
    if (eval_mask_poly(mask, cur) == 0 && minimal_polynomial(cur) == t) return cur;
    cur = mul(cur, step);
  }
  throw NoSuchElement("no element with the requested minimal polynomial");
}

Elem Field::eval_mask_poly(std::uint64_t mask, Elem u) const {
  Elem r = 0;
  for (int i = mask_degree(mask); i >= 0; --i) {
    r = mul(r, u);
    if ((mask >> i) & 1) r ^= 1;
  }
  return r;
}

std::uint64_t Field::log(Elem u) const {
  if (u == 0) throw ZeroInverse("logarithm of zero");
  std::call_once(log_once_, [this] {
    const std::uint64_t ord = unit_order();
    bsgs_m_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(ord))));
    if (bsgs_m_ == 0) bsgs_m_ = 1;
    baby_.reserve(bsgs_m_ * 2);
    Elem cur = 1;
    for (std::uint64_t j = 0; j < bsgs_m_; ++j) {
      baby_.emplace(cur, static_cast<std::uint32_t>(j));
      cur = mul(cur, gen_);
    }
    giant_ = inv(pow(gen_, bsgs_m_));
  });
  Elem gamma = u;
  for (std::uint64_t i = 0; i <= bsgs_m_; ++i) {
    auto it = baby_.find(gamma);
    if (it != baby_.end()) return (i * bsgs_m_ + it->second) % unit_order();
    gamma = mul(gamma, giant_);
  }
  throw NoSuchElement("discrete logarithm not found (internal error)");
}

std::string Field::to_string(Elem u) const {
  if (u == 0) return "0";
  if (u == 1) return "1";
  return "a^" + std::to_string(log(u));
}

Elem Field::parse(std::string_view s) const {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s == "0") return 0;
  if (s == "1") return 1;
  if (s == "a") return gen_;
  if (s.size() > 2 && s[0] == 'a' && s[1] == '^') {
    std::uint64_t k = 0;
    auto [p, ec] = std::from_chars(s.data() + 2, s.data() + s.size(), k);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("bad exponent in '" + std::string(s) + "'");
    return pow(gen_, k % unit_order());
  }
  throw ParseError("cannot parse field element '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
  if (dst_->degree() % src_->degree() != 0) throw NoSuchElement("source degree does not divide target degree");
  const Elem root = src_->degree() == 1 ? Elem{1} : dst_->embed_with_min_poly(src_->modulus());
  Elem cur = 1;
  for (int i = 0; i < src_->degree(); ++i) {
    basis_.push_back(cur);
    cur = dst_->mul(cur, root);
  }
}

Elem Embedding::operator()(Elem u) const {
  Elem r = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if ((u >> i) & 1) r ^= basis_[i];
  return r;
}

// ---------------------------------------------------------------------------

FieldElem::FieldElem(FieldPtr f, Elem v) : f_(std::move(f)), v_(v) {
  if (v_ >= f_->size()) throw ParseError("element has too many significant bits");
}

void FieldElem::check_same(const FieldElem& o) const {
  if (f_.get() != o.f_.get() && f_->modulus_mask() != o.f_->modulus_mask())
    throw MixedFields("operands live in " + f_->name() + " and " + o.f_->name());
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  return {f_, v_ ^ o.v_};
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  return {f_, f_->mul(v_, o.v_)};
}
FieldElem FieldElem::inverse() const { return {f_, f_->inv(v_)}; }
FieldElem FieldElem::frobenius(unsigned k) const { return {f_, f_->frobenius(v_, k)}; }
FieldElem FieldElem::pow(std::uint64_t e) const { return {f_, f_->pow(v_, e)}; }
bool FieldElem::operator==(const FieldElem& o) const {
  check_same(o);
  return v_ == o.v_;
}

FieldElem arith(ArithOp op, const FieldElem& u, const FieldElem& v) {
  return op == ArithOp::Add ? u + v : u * v;
}

// ---------------------------------------------------------------------------

namespace {

struct RegistryEntry {
  std::string key;
  Coeffs modulus;
};

const std::vector<RegistryEntry>& registry_table() {
  // Exponent lists of the nonzero terms, converted to coefficient lists.
  static const std::vector<RegistryEntry> table = [] {
    const std::vector<std::pair<std::string, std::vector<int>>> exps = {
        {"F4", {2, 1, 0}},
        {"F8", {3, 1, 0}},
        {"F16", {4, 1, 0}},
        {"F32", {5, 2, 0}},
        {"F64", {6, 4, 3, 1, 0}},
        {"F128", {7, 1, 0}},
        {"F256", {8, 4, 3, 2, 0}},
        {"F2_12", {12, 7, 6, 5, 3, 1, 0}},
        {"F2_14", {14, 7, 5, 3, 0}},
        {"F2_15", {15, 5, 4, 2, 0}},
        {"F2_20", {20, 10, 9, 7, 6, 5, 4, 1, 0}},
        {"F2_30", {30, 17, 16, 13, 11, 7, 5, 3, 2, 1, 0}},
    };
    std::vector<RegistryEntry> t;
    for (const auto& [key, e] : exps) {
      Coeffs c(static_cast<std::size_t>(e.front()) + 1, 0);
      for (int k : e) c[static_cast<std::size_t>(k)] = 1;
      t.push_back({key, c});
    }
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<std::string>& registry_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : registry_table()) k.push_back(e.key);
    return k;
  }();
  return keys;
}

const Coeffs& registry_modulus(const std::string& key) {
  for (const auto& e : registry_table())
    if (e.key == key) return e.modulus;
  throw UnknownField("no registered modulus '" + key + "'");
}

FieldPtr registry_field(const std::string& key) {
  static std::mutex mu;
  static std::map<std::string, FieldPtr> cache;
  const Coeffs& mod = registry_modulus(key);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  FieldPtr f = Field::create(mod, key);
  cache.emplace(key, f);
  return f;
}

FieldPtr gf2() {
  static const FieldPtr f = Field::create({1, 1}, "F2");
  return f;
}

}  // namespace cremona2::ff

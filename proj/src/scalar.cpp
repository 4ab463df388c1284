#include "qma/scalar.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qma {

const std::array<std::string, kNumSymbols>& symbol_names() {
  static const std::array<std::string, kNumSymbols> names = {
      "q", "a", "b", "t", "l1", "l2", "l3", "l4"};
  return names;
}

Mono mono_one() {
  Mono m{};
  return m;
}

int mono_degree(const Mono& m) {
  int d = 0;
  for (int i = 0; i < kNumSymbols; ++i) d += m[i];
  return d;
}

Mono mono_mul(const Mono& x, const Mono& y) {
  Mono m;
  for (int i = 0; i < kNumSymbols; ++i)
    m[i] = static_cast<int16_t>(x[i] + y[i]);
  return m;
}

bool mono_divides(const Mono& d, const Mono& m) {
  for (int i = 0; i < kNumSymbols; ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Mono mono_div(const Mono& m, const Mono& d) {
  Mono r;
  for (int i = 0; i < kNumSymbols; ++i)
    r[i] = static_cast<int16_t>(m[i] - d[i]);
  return r;
}

bool MonoGreater::operator()(const Mono& x, const Mono& y) const {
  int dx = mono_degree(x), dy = mono_degree(y);
  if (dx != dy) return dx > dy;
  return x > y;  // lexicographic on exponent vectors, larger first
}

Poly p_zero() { return Poly{}; }

Poly p_const(const mpq_class& c) {
  Poly p;
  if (c != 0) p.emplace(mono_one(), c);
  return p;
}

Poly p_symbol(int sym) {
  Mono m{};
  m[sym] = 1;
  Poly p;
  p.emplace(m, mpq_class(1));
  return p;
}

bool p_is_zero(const Poly& p) { return p.empty(); }

bool p_is_constant(const Poly& p) {
  return p.empty() || (p.size() == 1 && p.begin()->first == mono_one());
}

Poly p_add(const Poly& x, const Poly& y) {
  Poly out = x;
  for (const auto& [m, c] : y) {
    auto [it, inserted] = out.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

Poly p_neg(const Poly& x) {
  Poly out = x;
  for (auto& [m, c] : out) c = -c;
  return out;
}

Poly p_sub(const Poly& x, const Poly& y) { return p_add(x, p_neg(y)); }

Poly p_mul(const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [mx, cx] : x) {
    for (const auto& [my, cy] : y) {
      Mono m = mono_mul(mx, my);
      mpq_class c = cx * cy;
      auto [it, inserted] = out.try_emplace(m, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

Poly p_scale(const Poly& x, const mpq_class& c) {
  if (c == 0) return Poly{};
  Poly out = x;
  for (auto& [m, v] : out) v *= c;
  return out;
}

Poly p_pow(const Poly& x, unsigned e) {
  Poly r = p_const(1);
  Poly base = x;
  while (e) {
    if (e & 1u) r = p_mul(r, base);
    e >>= 1u;
    if (e) base = p_mul(base, base);
  }
  return r;
}

int p_degree_in(const Poly& p, int sym) {
  int d = 0;
  for (const auto& [m, c] : p) d = std::max(d, static_cast<int>(m[sym]));
  return d;
}

bool p_depends_on(const Poly& p, int sym) { return p_degree_in(p, sym) > 0; }

namespace {

mpq_class mpq_pow(const mpq_class& x, unsigned e) {
  mpq_class r(1), base = x;
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

Poly p_mul_term(const Poly& x, const Mono& m, const mpq_class& c) {
  Poly out;
  for (const auto& [mx, cx] : x) out.emplace(mono_mul(mx, m), cx * c);
  return out;
}

Poly p_monic(const Poly& p) {
  if (p.empty()) return p;
  const mpq_class& lc = p.begin()->second;
  if (lc == 1) return p;
  return p_scale(p, mpq_class(1) / lc);
}

// Polynomials viewed as univariate in one main symbol, with coefficients that
// are polynomials in the remaining symbols; index = degree in the main symbol.
using UniPoly = std::vector<Poly>;

void uni_trim(UniPoly& u) {
  while (!u.empty() && u.back().empty()) u.pop_back();
}

UniPoly uni_view(const Poly& p, int v) {
  UniPoly u;
  for (const auto& [m, c] : p) {
    int d = m[v];
    Mono rest = m;
    rest[v] = 0;
    if (static_cast<int>(u.size()) <= d) u.resize(d + 1);
    u[d].emplace(rest, c);
  }
  uni_trim(u);
  return u;
}

Poly uni_collapse(const UniPoly& u, int v) {
  Poly out;
  for (int d = 0; d < static_cast<int>(u.size()); ++d) {
    for (const auto& [m, c] : u[d]) {
      Mono full = m;
      full[v] = static_cast<int16_t>(d);
      out.emplace(full, c);
    }
  }
  return out;
}

UniPoly uni_sub(const UniPoly& x, const UniPoly& y) {
  UniPoly out = x;
  if (out.size() < y.size()) out.resize(y.size());
  for (size_t d = 0; d < y.size(); ++d) out[d] = p_sub(out[d], y[d]);
  uni_trim(out);
  return out;
}

UniPoly uni_scale(const UniPoly& u, const Poly& s) {
  UniPoly out(u.size());
  for (size_t d = 0; d < u.size(); ++d) out[d] = p_mul(u[d], s);
  uni_trim(out);
  return out;
}

UniPoly uni_shift_mul(const UniPoly& u, int shift, const Poly& s) {
  UniPoly out(u.size() + shift);
  for (size_t d = 0; d < u.size(); ++d) out[d + shift] = p_mul(u[d], s);
  return out;
}

Poly uni_content(const UniPoly& u) {
  Poly c;
  for (const Poly& coeff : u)
    if (!coeff.empty()) c = p_gcd(c, coeff);
  return c;
}

UniPoly uni_exact_div(const UniPoly& u, const Poly& d) {
  UniPoly out(u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    if (u[i].empty()) continue;
    auto qd = p_exact_div(u[i], d);
    if (!qd) throw std::logic_error("internal: content division not exact");
    out[i] = std::move(*qd);
  }
  return out;
}

// Pseudo-remainder of f by g in the main symbol (g nonempty).  The result
// equals (unit multiple of leading coefficient of g)^k * f  mod  g, which is
// all the primitive PRS needs.
UniPoly uni_prem(UniPoly f, const UniPoly& g) {
  const Poly& lg = g.back();
  while (f.size() >= g.size() && !f.empty()) {
    size_t before = f.size();
    int shift = static_cast<int>(f.size() - g.size());
    Poly lf = f.back();
    f = uni_sub(uni_scale(f, lg), uni_shift_mul(g, shift, lf));
    if (f.size() >= before)
      throw std::logic_error("internal: pseudo-division failed to reduce");
  }
  return f;
}

int lowest_symbol_in(const Poly& f, const Poly& g) {
  for (int v = 0; v < kNumSymbols; ++v)
    if (p_depends_on(f, v) || p_depends_on(g, v)) return v;
  return -1;
}

Poly monomial_gcd(const Poly& mono, const Poly& other) {
  Mono e = mono.begin()->first;
  Mono low = e;
  bool first = true;
  for (const auto& [m, c] : other) {
    for (int i = 0; i < kNumSymbols; ++i)
      low[i] = first ? m[i] : std::min(low[i], m[i]);
    first = false;
  }
  Mono g;
  for (int i = 0; i < kNumSymbols; ++i) g[i] = std::min(e[i], low[i]);
  Poly out;
  out.emplace(g, mpq_class(1));
  return out;
}

}  // namespace

std::optional<Poly> p_exact_div(const Poly& f, const Poly& g) {
  if (g.empty()) return std::nullopt;
  Poly quotient;
  Poly rem = f;
  const Mono& gm = g.begin()->first;
  const mpq_class& gc = g.begin()->second;
  while (!rem.empty()) {
    const Mono& fm = rem.begin()->first;
    if (!mono_divides(gm, fm)) return std::nullopt;
    Mono m = mono_div(fm, gm);
    mpq_class c = rem.begin()->second / gc;
    quotient.emplace(m, c);
    rem = p_sub(rem, p_mul_term(g, m, c));
  }
  return quotient;
}

Poly p_gcd(const Poly& f, const Poly& g) {
  if (f.empty()) return p_monic(g);
  if (g.empty()) return p_monic(f);
  if (p_is_constant(f) || p_is_constant(g)) return p_const(1);
  if (f == g) return p_monic(f);
  if (f.size() == 1) return monomial_gcd(f, g);
  if (g.size() == 1) return monomial_gcd(g, f);

  int v = lowest_symbol_in(f, g);
  if (p_degree_in(f, v) == 0) return p_gcd(f, uni_content(uni_view(g, v)));
  if (p_degree_in(g, v) == 0) return p_gcd(uni_content(uni_view(f, v)), g);

  UniPoly F = uni_view(f, v), G = uni_view(g, v);
  Poly cf = uni_content(F), cg = uni_content(G);
  Poly c = p_gcd(cf, cg);
  F = uni_exact_div(F, cf);
  G = uni_exact_div(G, cg);
  if (F.size() < G.size()) std::swap(F, G);
  for (;;) {
    UniPoly r = uni_prem(F, G);
    if (r.empty()) break;
    if (r.size() == 1) return p_monic(c);  // primitive parts are coprime
    F = std::move(G);
    G = uni_exact_div(r, uni_content(r));
    if (F.size() < G.size()) std::swap(F, G);
  }
  return p_monic(p_mul(c, uni_collapse(G, v)));
}

Poly p_substitute(const Poly& p, int sym, const mpq_class& value) {
  Poly out;
  for (const auto& [m, c] : p) {
    Mono rest = m;
    rest[sym] = 0;
    mpq_class term = c * mpq_pow(value, m[sym]);
    auto [it, inserted] = out.try_emplace(rest, term);
    if (!inserted) it->second += term;
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

namespace {

std::string term_str(const Mono& m, const mpq_class& c) {
  std::string vars;
  for (int i = 0; i < kNumSymbols; ++i) {
    if (m[i] <= 0) continue;
    if (!vars.empty()) vars += "*";
    vars += symbol_names()[i];
    if (m[i] > 1) vars += "^" + std::to_string(m[i]);
  }
  if (vars.empty()) return c.get_str();
  if (c == 1) return vars;
  if (c == -1) return "-" + vars;
  return c.get_str() + "*" + vars;
}

}  // namespace

std::string p_str(const Poly& p) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (first) {
      out = term_str(m, c);
      first = false;
    } else if (c < 0) {
      out += " - " + term_str(m, mpq_class(-c));
    } else {
      out += " + " + term_str(m, c);
    }
  }
  return out;
}

Scalar::Scalar() : num(), den(p_const(1)) {}
Scalar::Scalar(int v) : num(p_const(mpq_class(v))), den(p_const(1)) {}
Scalar::Scalar(long v) : num(p_const(mpq_class(v))), den(p_const(1)) {}
Scalar::Scalar(const mpq_class& v) : num(p_const(v)), den(p_const(1)) {}

Scalar Scalar::symbol(int sym) { return from_poly(p_symbol(sym)); }

Scalar Scalar::from_poly(Poly p) {
  Scalar s;
  s.num = std::move(p);
  return s;
}

Scalar Scalar::fraction(Poly n, Poly d) {
  if (d.empty()) throw std::domain_error("scalar division by zero");
  if (n.empty()) return Scalar();
  Poly g = p_gcd(n, d);
  if (!p_is_constant(g)) {
    n = *p_exact_div(n, g);
    d = *p_exact_div(d, g);
  }
  const mpq_class lc = d.begin()->second;
  if (lc != 1) {
    mpq_class inv = mpq_class(1) / lc;
    n = p_scale(n, inv);
    d = p_scale(d, inv);
  }
  Scalar s;
  s.num = std::move(n);
  s.den = std::move(d);
  return s;
}

bool Scalar::is_zero() const { return num.empty(); }

bool Scalar::is_one() const {
  return num == p_const(1) && den == p_const(1);
}

bool Scalar::is_constant() const {
  return p_is_constant(num) && p_is_constant(den);
}

bool Scalar::depends_on(int sym) const {
  return p_depends_on(num, sym) || p_depends_on(den, sym);
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num = p_neg(s.num);
  return s;
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  return Scalar::fraction(
      p_add(p_mul(x.num, y.den), p_mul(y.num, x.den)), p_mul(x.den, y.den));
}

Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

Scalar operator*(const Scalar& x, const Scalar& y) {
  return Scalar::fraction(p_mul(x.num, y.num), p_mul(x.den, y.den));
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  if (y.is_zero()) throw std::domain_error("scalar division by zero");
  return Scalar::fraction(p_mul(x.num, y.den), p_mul(x.den, y.num));
}

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }
Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this / o; }

bool operator==(const Scalar& x, const Scalar& y) {
  return x.num == y.num && x.den == y.den;
}

bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("scalar division by zero");
  return Scalar::fraction(den, num);
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1), base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1ul) r = r * base;
    k >>= 1ul;
    if (k) base = base * base;
  }
  return r;
}

std::optional<Scalar> Scalar::substituted(int sym,
                                          const mpq_class& value) const {
  Poly d = p_substitute(den, sym, value);
  if (d.empty()) return std::nullopt;
  return Scalar::fraction(p_substitute(num, sym, value), std::move(d));
}

std::optional<mpq_class> Scalar::eval(
    const std::array<mpq_class, kNumSymbols>& point) const {
  auto eval_poly = [&point](const Poly& p) {
    mpq_class total(0);
    for (const auto& [m, c] : p) {
      mpq_class term = c;
      for (int i = 0; i < kNumSymbols; ++i)
        if (m[i] > 0) term *= mpq_pow(point[i], m[i]);
      total += term;
    }
    return total;
  };
  mpq_class d = eval_poly(den);
  if (d == 0) return std::nullopt;
  return eval_poly(num) / d;
}

std::string Scalar::str() const {
  if (den == p_const(1)) return p_str(num);
  return "(" + p_str(num) + ")/(" + p_str(den) + ")";
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::runtime_error("scalar parse error at position " +
                             std::to_string(i_) + ": " + why);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  Scalar term() {
    Scalar v = factor();
    for (;;) {
      if (eat('*'))
        v = v * factor();
      else if (eat('/'))
        v = v / factor();
      else
        return v;
    }
  }

  Scalar factor() {
    skip();
    if (eat('-')) return -factor();
    Scalar v = base();
    if (eat('^')) return v.pow(integer());
    return v;
  }

  Scalar base() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[i_])))
        ++i_;
      return Scalar(mpq_class(mpz_class(s_.substr(start, i_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_]))))
        ++i_;
      std::string name = s_.substr(start, i_ - start);
      for (int sym = 0; sym < kNumSymbols; ++sym)
        if (symbol_names()[sym] == name) return Scalar::symbol(sym);
      fail("unknown symbol '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  long integer() {
    skip();
    bool neg = eat('-');
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
      fail("expected integer exponent");
    long v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_] - '0');
      if (v > 1000000) fail("exponent too large");
      ++i_;
    }
    return neg ? -v : v;
  }

  const std::string& s_;
  size_t i_ = 0;
};

}  // namespace

Scalar parse_scalar(const std::string& text) { return Parser(text).parse(); }

Scalar qpow(long k) {
  if (k >= 0) return Scalar::from_poly(p_pow(p_symbol(SymQ), k));
  return Scalar::fraction(p_const(1), p_pow(p_symbol(SymQ), -k));
}

Scalar quantum_integer(int k) {
  if (k < 0) throw std::domain_error("quantum_integer needs k >= 0");
  if (k == 0) return Scalar(0);
  Poly n;
  Mono m{};
  for (int j = 0; j < k; ++j) {
    m[SymQ] = static_cast<int16_t>(2 * j);
    n.emplace(m, mpq_class(1));
  }
  m[SymQ] = static_cast<int16_t>(2 * k - 2);
  Poly d;
  d.emplace(m, mpq_class(1));
  return Scalar::fraction(std::move(n), std::move(d));
}

}  // namespace qma

#include "qma/poisson.hpp"

#include <random>
#include <stdexcept>
#include <utility>

#include "qma/free_algebra.hpp"

namespace qma {

// ---------------------------------------------------------------------------
// Rational matrix helpers.

RatMat rat_zero(int rows, int cols) {
  return RatMat(rows, std::vector<mpq_class>(cols, mpq_class(0)));
}

RatMat rat_identity(int n) {
  RatMat m = rat_zero(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat rat_unit(int n, int i, int j) {
  RatMat m = rat_zero(n, n);
  m[i][j] = 1;
  return m;
}

static void rat_check_same_shape(const RatMat& x, const RatMat& y) {
  if (x.size() != y.size() || (!x.empty() && x[0].size() != y[0].size()))
    throw ShapeMismatch("rational matrix shapes differ");
}

RatMat rat_mul(const RatMat& x, const RatMat& y) {
  int rows = static_cast<int>(x.size());
  int inner = rows ? static_cast<int>(x[0].size()) : 0;
  if (inner != static_cast<int>(y.size()))
    throw ShapeMismatch("rational matrix product shapes differ");
  int cols = inner ? static_cast<int>(y[0].size()) : 0;
  RatMat m = rat_zero(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < inner; ++k) {
      if (x[r][k] == 0) continue;
      for (int c = 0; c < cols; ++c) {
        if (y[k][c] == 0) continue;
        m[r][c] += x[r][k] * y[k][c];
      }
    }
  return m;
}

RatMat rat_add(const RatMat& x, const RatMat& y) {
  rat_check_same_shape(x, y);
  RatMat m = x;
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < m[r].size(); ++c) m[r][c] += y[r][c];
  return m;
}

RatMat rat_sub(const RatMat& x, const RatMat& y) {
  rat_check_same_shape(x, y);
  RatMat m = x;
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < m[r].size(); ++c) m[r][c] -= y[r][c];
  return m;
}

RatMat rat_comm(const RatMat& x, const RatMat& y) {
  return rat_sub(rat_mul(x, y), rat_mul(y, x));
}

mpq_class rat_trace(const RatMat& m) {
  mpq_class t = 0;
  for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

// ---------------------------------------------------------------------------
// Commutative polynomials.

CommPoly CommPoly::term(std::vector<int> mono, const mpq_class& c) {
  CommPoly p;
  p.add(std::move(mono), c);
  return p;
}

void CommPoly::add(std::vector<int> mono, const mpq_class& c) {
  if (c == 0) return;
  std::sort(mono.begin(), mono.end());
  auto it = terms.find(mono);
  if (it == terms.end()) {
    terms.emplace(std::move(mono), c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

bool CommPoly::homogeneous_of_degree(int d) const {
  for (const auto& [mono, c] : terms)
    if (static_cast<int>(mono.size()) != d) return false;
  return true;
}

CommPoly operator+(const CommPoly& x, const CommPoly& y) {
  CommPoly out = x;
  for (const auto& [mono, c] : y.terms) out.add(mono, c);
  return out;
}

CommPoly operator-(const CommPoly& x, const CommPoly& y) {
  CommPoly out = x;
  for (const auto& [mono, c] : y.terms) out.add(mono, -c);
  return out;
}

CommPoly operator*(const mpq_class& c, const CommPoly& x) {
  CommPoly out;
  if (c == 0) return out;
  for (const auto& [mono, v] : x.terms) out.terms.emplace(mono, c * v);
  return out;
}

mpq_class cp_eval(const CommPoly& p, const RatMat& a, int n) {
  mpq_class sum = 0;
  for (const auto& [mono, c] : p.terms) {
    mpq_class t = c;
    for (int v : mono) t *= a[v / n][v % n];
    sum += t;
  }
  return sum;
}

static std::string var_name(int v, int n) {
  return "x" + std::to_string(v / n + 1) + std::to_string(v % n + 1);
}

std::string cp_render(const CommPoly& p, int n) {
  if (p.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : p.terms) {
    mpq_class ab = c < 0 ? mpq_class(-c) : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += ab.get_str();
    size_t i = 0;
    while (i < mono.size()) {
      size_t j = i;
      while (j < mono.size() && mono[j] == mono[i]) ++j;
      out += "*" + var_name(mono[i], n);
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical tensors.

ClassicalTensors make_classical_tensors(int n) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  const int N = n * n;
  ClassicalTensors ct;
  ct.n = n;
  ct.r = rat_zero(N, N);
  ct.omega = rat_zero(N, N);
  for (int i = 0; i < n; ++i) ct.omega[i * n + i][i * n + i] += 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // lowering ⊗ raising: e_{ji} ⊗ e_{ij} at [(j,i)][(i,j)]
      ct.r[j * n + i][i * n + j] += 1;
      ct.r[i * n + j][j * n + i] -= 1;
      ct.omega[j * n + i][i * n + j] += 1;
      ct.omega[i * n + j][j * n + i] += 1;
    }
  return ct;
}

// ---------------------------------------------------------------------------
// Bracket table.

const CommPoly& PoissonTable::at(int u, int v) const {
  if (u < 0 || v < 0 || u >= n * n || v >= n * n)
    throw std::out_of_range("coordinate index out of range");
  return bracket[u][v];
}

std::string PoissonTable::pair_key(int n, int u, int v) {
  return std::to_string(u / n + 1) + "," + std::to_string(u % n + 1) + "|" +
         std::to_string(v / n + 1) + "," + std::to_string(v % n + 1);
}

std::string PoissonTable::to_json_string() const {
  std::string out = "{\"n\":" + std::to_string(n) + ",\"brackets\":{";
  const int N = n * n;
  bool first = true;
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v) {
      if (!first) out += ",";
      first = false;
      out += "\"" + pair_key(n, u, v) + "\":\"" + cp_render(bracket[u][v], n) +
             "\"";
    }
  out += "}}";
  return out;
}

// ---------------------------------------------------------------------------
// First-order extraction.

PoissonTable extract_semiclassical(int n) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  if (n > 4) throw TooLarge("first-order extraction supports n <= 4");
  const int N = n * n;
  const ClassicalTensors ct = make_classical_tensors(n);

  RatMat flip = rat_zero(N, N);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) flip[a * n + b][b * n + a] = 1;
  const RatMat psi = rat_mul(flip, rat_add(ct.r, ct.omega));

  // First-order structure matrix over the scalar domain, with the spare
  // symbol a playing the formal parameter h.
  const Scalar h = Scalar::symbol(SymA);
  Mat sh(N, N);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) {
      Scalar v = Scalar(flip[r][c]) + h * Scalar(psi[r][c]);
      if (!v.is_zero()) sh.at(r, c) = v;
    }

  // The same component construction as the braided-relation builder, with
  // the structure matrix swapped out.
  const NCMat m2 = nc_amp_second(nc_generators(n, 0));
  const NCMat s = nc_embed(sh);
  const NCMat rel = nc_sub(nc_mul(nc_mul(nc_mul(s, m2), s), m2),
                           nc_mul(nc_mul(nc_mul(m2, s), m2), s));

  PoissonTable t;
  t.n = n;
  t.bracket.assign(N, std::vector<CommPoly>(N));
  std::vector<std::vector<char>> assigned(N, std::vector<char>(N, 0));

  const Poly one = p_const(1);
  for (int rr = 0; rr < N; ++rr)
    for (int cc = 0; cc < N; ++cc) {
      const FreeElt& comp = rel.at(rr, cc);
      std::map<Word, mpq_class> h0;
      CommPoly img;  // commutative image of the h-linear part
      for (const auto& [w, sc] : comp) {
        if (w.len != 2)
          throw std::logic_error("relation component is not quadratic");
        if (!(sc.den == one))
          throw std::logic_error("expansion coefficient is not polynomial");
        for (const auto& [mono, c] : sc.num) {
          for (int sym = 0; sym < kNumSymbols; ++sym)
            if (sym != SymA && mono[sym] != 0)
              throw std::logic_error("unexpected symbol in expansion");
          const int k = mono[SymA];
          if (k == 0)
            h0[w] += c;
          else if (k == 1)
            img.add({w.letter(0), w.letter(1)}, c);
          else if (k != 2)
            throw std::logic_error("expansion degree exceeds 2");
        }
      }
      for (auto it = h0.begin(); it != h0.end();)
        it = (it->second == 0) ? h0.erase(it) : std::next(it);

      if (h0.empty()) {
        if (!img.is_zero())
          throw std::logic_error(
              "component with no classical part has a first-order remainder");
        continue;
      }
      if (h0.size() != 2)
        throw std::logic_error("classical part is not a single commutator");
      const auto i1 = h0.begin();
      const auto i2 = std::next(i1);
      const Word w1 = i1->first, w2 = i2->first;
      if (w1.letter(0) != w2.letter(1) || w1.letter(1) != w2.letter(0))
        throw std::logic_error("classical part is not a single commutator");
      int p, q;
      if (i1->second == 1 && i2->second == -1) {
        p = w1.letter(0);
        q = w1.letter(1);
      } else if (i1->second == -1 && i2->second == 1) {
        p = w2.letter(0);
        q = w2.letter(1);
      } else {
        throw std::logic_error("classical part is not a unit commutator");
      }
      if (p == q)
        throw std::logic_error("self-commutator survived cancellation");

      const CommPoly b = mpq_class(-1) * img;
      if (assigned[p][q]) {
        if (!(t.bracket[p][q] == b))
          throw std::logic_error("components disagree on a bracket entry");
      } else {
        t.bracket[p][q] = b;
        assigned[p][q] = 1;
      }
    }

  // Construction invariants: completeness, antisymmetry, homogeneity,
  // integrality.
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v) {
      if (u == v) {
        if (!t.bracket[u][v].is_zero())
          throw std::logic_error("nonzero diagonal bracket entry");
        continue;
      }
      if (!assigned[u][v])
        throw std::logic_error("bracket pair missing from the relations");
      if (!(t.bracket[u][v] == mpq_class(-1) * t.bracket[v][u]))
        throw std::logic_error("bracket table is not antisymmetric");
      if (!t.bracket[u][v].homogeneous_of_degree(2))
        throw std::logic_error("bracket entry is not homogeneous quadratic");
      for (const auto& [mono, c] : t.bracket[u][v].terms)
        if (c.get_den() != 1)
          throw std::logic_error("bracket coefficient is not an integer");
    }
  return t;
}

// ---------------------------------------------------------------------------
// Geometric side.

mpq_class invariant_part(const RatMat& a, const RatMat& x, const RatMat& y) {
  rat_check_same_shape(a, x);
  rat_check_same_shape(a, y);
  if (a.empty() || a.size() != a[0].size())
    throw ShapeMismatch("invariant part needs square matrices");
  return rat_trace(rat_mul(rat_mul(a, a), rat_comm(x, y)));
}

mpq_class reps_coefficient(const mpq_class& li, const mpq_class& lj) {
  if (li == lj) throw DegenerateOrbit("equal eigenvalues carry no coefficient");
  return (li + lj) / (li - lj);
}

bool verify_jacobi(const PoissonTable& t) {
  const int N = t.n * t.n;
  // Leibniz extension: {f, x_v} = sum_u  ∂f/∂x_u · {x_u, x_v}.
  auto bracket_with_gen = [&](const CommPoly& f, int v) {
    CommPoly out;
    for (const auto& [mono, c] : f.terms)
      for (size_t pos = 0; pos < mono.size(); ++pos) {
        const int u = mono[pos];
        std::vector<int> rest;
        rest.reserve(mono.size() - 1);
        for (size_t i = 0; i < mono.size(); ++i)
          if (i != pos) rest.push_back(mono[i]);
        for (const auto& [m2, c2] : t.bracket[u][v].terms) {
          std::vector<int> key = rest;
          key.insert(key.end(), m2.begin(), m2.end());
          out.add(std::move(key), c * c2);
        }
      }
    return out;
  };
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q)
      for (int r = 0; r < N; ++r) {
        CommPoly acc;
        // {x_a, {x_b, x_c}} = −{{x_b, x_c}, x_a}, summed cyclically.
        const int abc[3][3] = {{p, q, r}, {q, r, p}, {r, p, q}};
        for (const auto& g : abc)
          acc = acc - bracket_with_gen(t.bracket[g[1]][g[2]], g[0]);
        if (!acc.is_zero()) return false;
      }
  return true;
}

mpq_class geometric_bracket(int n, int u, int v, const RatMat& a) {
  const int N = n * n;
  const ClassicalTensors ct = make_classical_tensors(n);
  // Coordinate x^m_i corresponds to the matrix unit E(i,m) through
  // f(A) = Tr(E(i,m)·A) = A[m][i].
  const RatMat x = rat_unit(n, u % n, u / n);
  const RatMat y = rat_unit(n, v % n, v / n);
  mpq_class sum = 0;
  for (int row = 0; row < N; ++row)
    for (int col = 0; col < N; ++col) {
      const mpq_class& coef = ct.r[row][col];
      if (coef == 0) continue;
      // coefficient of e_{pq} ⊗ e_{st} sits at [(p,s)][(q,t)]
      const int p = row / n, s = row % n, q = col / n, tt = col % n;
      sum += coef *
             rat_trace(rat_mul(rat_comm(rat_unit(n, p, q), x), a)) *
             rat_trace(rat_mul(rat_comm(rat_unit(n, s, tt), y), a));
    }
  sum += invariant_part(a, x, y);
  // Orientation matching the deformation: {u,v} = lim (uv − vu)/h.
  return -sum;
}

bool verify_bracket_consistency(int n, std::uint64_t seed, int points) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  if (n > 3) throw TooLarge("pointwise consistency check supports n <= 3");
  const int N = n * n;
  const PoissonTable t = extract_semiclassical(n);
  std::mt19937_64 rng(seed);
  for (int it = 0; it < points; ++it) {
    RatMat a = rat_zero(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        long num = static_cast<long>(rng() % 101) - 50;
        long den = 1 + static_cast<long>(rng() % 9);
        a[r][c] = mpq_class(num, den);
        a[r][c].canonicalize();
      }
    for (int u = 0; u < N; ++u)
      for (int v = 0; v < N; ++v)
        if (cp_eval(t.at(u, v), a, n) != geometric_bracket(n, u, v, a))
          return false;
    // Trace coordinate against every coordinate.
    for (int v = 0; v < N; ++v) {
      mpq_class lhs = 0, rhs = 0;
      for (int i = 0; i < n; ++i) {
        lhs += cp_eval(t.at(i * n + i, v), a, n);
        rhs += geometric_bracket(n, i * n + i, v, a);
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

}  // namespace qma

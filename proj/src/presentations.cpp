#include "qma/presentations.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "qma/solutions.hpp"

namespace qma {

namespace {

Scalar sym_q() { return Scalar::symbol(SymQ); }
Scalar sym_t() { return Scalar::symbol(SymT); }

// m + c * identity.
NCMat nc_shift(const NCMat& m, const Scalar& c) {
  return nc_add(m, nc_scale(c, nc_identity(m.rows)));
}

NCMat nc_S(int n) { return nc_embed(build_S(n)); }

// Row-major component list; identically-zero entries are kept.
std::vector<FreeElt> comps_of(const NCMat& m) {
  std::vector<FreeElt> out;
  out.reserve(static_cast<size_t>(m.rows) * m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) out.push_back(m.at(r, c));
  return out;
}

// S T1 T2 - T1 T2 S.
std::vector<FreeElt> frt_components(int n, int base) {
  NCMat T = nc_generators(n, base);
  NCMat T1 = nc_amp_first(T), T2 = nc_amp_second(T), S = nc_S(n);
  return comps_of(
      nc_sub(nc_mul(nc_mul(S, T1), T2), nc_mul(nc_mul(T1, T2), S)));
}

// S M2 S M2 - M2 S M2 S for an arbitrary algebra-valued n x n matrix M.
std::vector<FreeElt> re_components_of(int n, const NCMat& m) {
  NCMat M2 = nc_amp_second(m), S = nc_S(n);
  return comps_of(nc_sub(nc_mul(nc_mul(nc_mul(S, M2), S), M2),
                         nc_mul(nc_mul(nc_mul(M2, S), M2), S)));
}

// S E2 S E2 - E2 S E2 S - q t (E2 S - S E2).
std::vector<FreeElt> two_param_components(int n, int base) {
  NCMat E = nc_generators(n, base);
  NCMat E2 = nc_amp_second(E), S = nc_S(n);
  NCMat re_part = nc_sub(nc_mul(nc_mul(nc_mul(S, E2), S), E2),
                         nc_mul(nc_mul(nc_mul(E2, S), E2), S));
  NCMat comm_part = nc_sub(nc_mul(E2, S), nc_mul(S, E2));
  return comps_of(nc_sub(re_part, nc_scale(sym_q() * sym_t(), comm_part)));
}

// E^i_j E^m_n - E^m_n E^i_j - t(d^m_j E^i_n - d^i_n E^m_j), one component per
// index tuple (i, j, m, n).
FreeElt clcr_element(int n, int base, int i, int j, int m, int nn) {
  const Scalar t = sym_t();
  int g1 = base + i * n + j, g2 = base + m * n + nn;
  FreeElt el =
      elt_add(elt_term(Word::concat(Word::single(g1), Word::single(g2)),
                       Scalar(1)),
              elt_term(Word::concat(Word::single(g2), Word::single(g1)),
                       Scalar(-1)));
  if (m == j) el = elt_axpy(el, -t, elt_gen(base + i * n + nn, Scalar(1)));
  if (i == nn) el = elt_axpy(el, t, elt_gen(base + m * n + j, Scalar(1)));
  return el;
}

std::vector<FreeElt> clcr_components(int n, int base) {
  std::vector<FreeElt> out;
  out.reserve(static_cast<size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int nn = 0; nn < n; ++nn)
          out.push_back(clcr_element(n, base, i, j, m, nn));
  return out;
}

// T Tbar = Tbar T = identity, componentwise (right-action products).
std::vector<FreeElt> inverse_components(int n, int tbase, int tbbase) {
  NCMat T = nc_generators(n, tbase), Tb = nc_generators(n, tbbase);
  std::vector<FreeElt> out;
  for (const NCMat& p : {nc_mul(T, Tb), nc_mul(Tb, T)}) {
    NCMat diff = nc_sub(p, nc_identity(n));
    auto comps = comps_of(diff);
    out.insert(out.end(), comps.begin(), comps.end());
  }
  return out;
}

// [X^i_j, Y^k_l] = 0 for all entries of two generator families.
std::vector<FreeElt> commutation_components(int n, int b1, int b2) {
  std::vector<FreeElt> out;
  out.reserve(static_cast<size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          int g1 = b1 + i * n + j, g2 = b2 + k * n + l;
          out.push_back(elt_add(
              elt_term(Word::concat(Word::single(g1), Word::single(g2)),
                       Scalar(1)),
              elt_term(Word::concat(Word::single(g2), Word::single(g1)),
                       Scalar(-1))));
        }
  return out;
}

void check_family_size(int n, int families) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  if (n > kMaxWeightLen || families * n * n > 16)
    throw TooLarge("generator alphabet cap exceeded at this matrix size");
}

std::string pair_label(int n2, int flat) {
  return "(" + std::to_string(flat / n2) + "," + std::to_string(flat % n2) +
         ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// Presentations.

Presentation build_presentation(PresentationKind kind, int n) {
  Presentation p;
  switch (kind) {
    case PresentationKind::FRT: {
      check_family_size(n, 1);
      p.name = "frt";
      p.n = n;
      p.bases["T"] = p.alg.add_matrix_family("T", n);
      p.relations = frt_components(n, p.bases["T"]);
      p.params["q"] = sym_q();
      break;
    }
    case PresentationKind::RE: {
      check_family_size(n, 1);
      p.name = "re";
      p.n = n;
      p.bases["L"] = p.alg.add_matrix_family("L", n);
      p.relations = re_components_of(n, nc_generators(n, p.bases["L"]));
      p.params["q"] = sym_q();
      break;
    }
    case PresentationKind::TwoParam: {
      check_family_size(n, 1);
      p.name = "two-parameter";
      p.n = n;
      p.bases["E"] = p.alg.add_matrix_family("E", n);
      p.relations = two_param_components(n, p.bases["E"]);
      p.params["q"] = sym_q();
      p.params["t"] = sym_t();
      break;
    }
    case PresentationKind::Classical: {
      check_family_size(n, 1);
      p.name = "classical";
      p.n = n;
      p.bases["E"] = p.alg.add_matrix_family("E", n);
      p.relations = clcr_components(n, p.bases["E"]);
      p.params["t"] = sym_t();
      break;
    }
    case PresentationKind::EST: {
      p.name = "est";
      p.n = 0;
      p.bases["e"] = p.alg.add_gen("e");
      p.bases["s"] = p.alg.add_gen("s");
      Scalar beta = sym_q() - qpow(-1);
      // s^2 = beta s + 1 and the degree-4 braid-type relation.
      p.relations.push_back(elt_add(
          elt_add(elt_term(Word::from_letters({1, 1}), Scalar(1)),
                  elt_term(Word::single(1), -beta)),
          elt_const(Scalar(-1))));
      p.relations.push_back(
          elt_add(elt_term(Word::from_letters({1, 0, 1, 0}), Scalar(1)),
                  elt_term(Word::from_letters({0, 1, 0, 1}), Scalar(-1))));
      p.params["beta"] = beta;
      break;
    }
    case PresentationKind::MixedTL: {
      check_family_size(n, 3);
      p.name = "mixed-tl";
      p.n = n;
      p.bases["T"] = p.alg.add_matrix_family("T", n, +1, 0);
      p.bases["Tbar"] = p.alg.add_matrix_family("Tb", n, -1, 0);
      p.bases["L"] = p.alg.add_matrix_family("L", n, 0, 1);
      // Stable block order: FRT on T, two-sided inverses, the braided-matrix
      // relations on L, then entrywise commutation of T with L.
      auto frt = frt_components(n, p.bases["T"]);
      auto inv = inverse_components(n, p.bases["T"], p.bases["Tbar"]);
      auto re = re_components_of(n, nc_generators(n, p.bases["L"]));
      auto comm = commutation_components(n, p.bases["T"], p.bases["L"]);
      p.relations = frt;
      p.relations.insert(p.relations.end(), inv.begin(), inv.end());
      p.relations.insert(p.relations.end(), re.begin(), re.end());
      p.relations.insert(p.relations.end(), comm.begin(), comm.end());
      p.params["q"] = sym_q();
      break;
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Orbit quotients.

OrbitQuotientSpec make_symmetric_spec(int l, int m, const Scalar& lam,
                                      const Scalar& mu) {
  if (l < 1 || m < 1)
    throw std::invalid_argument("symmetric orbit needs two nonzero blocks");
  int n = l + m;
  OrbitQuotientSpec spec;
  spec.kind = OrbitKind::Symmetric;
  spec.n = n;
  spec.multiplicities = {l, m};
  spec.eigenvalues = {lam, mu};
  spec.pres = build_presentation(PresentationKind::RE, n);
  spec.pres.name = "symmetric-orbit";
  NCMat L = nc_generators(n, spec.pres.bases["L"]);
  auto poly = comps_of(nc_mul(nc_shift(L, -lam), nc_shift(L, -mu)));
  spec.pres.relations.insert(spec.pres.relations.end(), poly.begin(),
                             poly.end());
  FreeElt tr = nc_weighted_trace(build_D(n), L);
  tr = elt_add(tr, elt_const(-(lam * quantum_integer(l) +
                               mu * quantum_integer(m))));
  spec.pres.relations.push_back(tr);
  spec.pres.params["lambda"] = lam;
  spec.pres.params["mu"] = mu;
  return spec;
}

OrbitQuotientSpec make_bisymmetric_spec(int l, int m, int k, const Scalar& lam,
                                        const Scalar& mu) {
  if (l < 1 || m < 1 || k < 1)
    throw std::invalid_argument(
        "bisymmetric orbit needs two eigenvalue blocks and a kernel block");
  int n = l + m + k;
  OrbitQuotientSpec spec;
  spec.kind = OrbitKind::Bisymmetric;
  spec.n = n;
  spec.multiplicities = {l, m, k};
  spec.eigenvalues = {lam, mu};
  spec.pres = build_presentation(PresentationKind::RE, n);
  spec.pres.name = "bisymmetric-orbit";
  NCMat L = nc_generators(n, spec.pres.bases["L"]);
  auto poly =
      comps_of(nc_mul(nc_mul(L, nc_shift(L, -lam)), nc_shift(L, -mu)));
  spec.pres.relations.insert(spec.pres.relations.end(), poly.begin(),
                             poly.end());
  Mat D = build_D(n);
  Scalar tr1v = lam * quantum_integer(l) + mu * quantum_integer(m);
  FreeElt tr1 = elt_add(nc_weighted_trace(D, L), elt_const(-tr1v));
  FreeElt tr2 = elt_add(
      nc_weighted_trace(D, nc_mul(L, L)),
      elt_const(-((lam + mu) * tr1v - lam * mu * quantum_integer(l + m))));
  spec.pres.relations.push_back(tr1);
  spec.pres.relations.push_back(tr2);
  spec.pres.params["lambda"] = lam;
  spec.pres.params["mu"] = mu;
  return spec;
}

OrbitQuotientSpec make_nilpotent_spec(int n) {
  OrbitQuotientSpec spec;
  spec.kind = OrbitKind::Nilpotent;
  spec.n = n;
  spec.pres = build_presentation(PresentationKind::RE, n);
  spec.pres.name = "nilpotent-orbit";
  NCMat L = nc_generators(n, spec.pres.bases["L"]);
  auto poly = comps_of(nc_mul(L, L));
  spec.pres.relations.insert(spec.pres.relations.end(), poly.begin(),
                             poly.end());
  spec.pres.relations.push_back(nc_weighted_trace(build_D(n), L));
  return spec;
}

OrbitQuotientSpec make_two_parameter_spec(int n1, int n2, const Scalar& mu1,
                                          const Scalar& mu2) {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("two-parameter orbit needs two blocks");
  int n = n1 + n2;
  OrbitQuotientSpec spec;
  spec.kind = OrbitKind::TwoParameter;
  spec.n = n;
  spec.multiplicities = {n1, n2};
  spec.eigenvalues = {mu1, mu2};
  spec.pres = build_presentation(PresentationKind::TwoParam, n);
  spec.pres.name = "two-parameter-orbit";
  NCMat E = nc_generators(n, spec.pres.bases["E"]);
  auto poly = comps_of(nc_mul(nc_shift(E, -mu1), nc_shift(E, -mu2)));
  spec.pres.relations.insert(spec.pres.relations.end(), poly.begin(),
                             poly.end());
  FreeElt tr = nc_weighted_trace(build_D(n), E);
  tr = elt_add(tr, elt_const(-(quantum_integer(n1) * mu1 +
                               quantum_integer(n2) * mu2 +
                               sym_t() * quantum_integer(n1) *
                                   quantum_integer(n2))));
  spec.pres.relations.push_back(tr);
  spec.pres.params["mu1"] = mu1;
  spec.pres.params["mu2"] = mu2;
  return spec;
}

OrbitQuotientSpec make_kks_spec(int n1, int n2, const Scalar& mu1,
                                const Scalar& mu2) {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("orbit needs two blocks");
  int n = n1 + n2;
  OrbitQuotientSpec spec;
  spec.kind = OrbitKind::KKS;
  spec.n = n;
  spec.multiplicities = {n1, n2};
  spec.eigenvalues = {mu1, mu2};
  spec.pres = build_presentation(PresentationKind::Classical, n);
  spec.pres.name = "kks-orbit";
  NCMat E = nc_generators(n, spec.pres.bases["E"]);
  auto poly = comps_of(nc_mul(nc_shift(E, -mu1), nc_shift(E, -mu2)));
  spec.pres.relations.insert(spec.pres.relations.end(), poly.begin(),
                             poly.end());
  FreeElt tr = nc_trace(E);
  tr = elt_add(tr, elt_const(-(Scalar(n1) * mu1 + Scalar(n2) * mu2 +
                               sym_t() * Scalar(n1) * Scalar(n2))));
  spec.pres.relations.push_back(tr);
  spec.pres.params["mu1"] = mu1;
  spec.pres.params["mu2"] = mu2;
  return spec;
}

// ---------------------------------------------------------------------------
// Characters.

Scalar eval_free_elt(const FreeElt& e, const std::vector<Scalar>& assignment) {
  Scalar acc;
  for (const auto& [w, c] : e) {
    Scalar term = c;
    for (int i = 0; i < w.len; ++i) {
      int g = w.letter(i);
      if (g < 0 || g >= static_cast<int>(assignment.size()))
        throw std::out_of_range("generator without assignment");
      term = term * assignment[static_cast<size_t>(g)];
    }
    acc = acc + term;
  }
  return acc;
}

namespace {

bool relations_vanish_at(const Presentation& p, const Mat& A) {
  if (p.bases.size() != 1 || p.n == 0)
    throw ShapeMismatch("character evaluation needs a single matrix family");
  if (A.rows != p.n || A.cols != p.n)
    throw ShapeMismatch("matrix size does not match the presentation");
  int base = p.bases.begin()->second;
  std::vector<Scalar> assignment(p.alg.gens.size());
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      assignment[static_cast<size_t>(base + i * p.n + j)] = A.at(i, j);
  for (const auto& rel : p.relations)
    if (!eval_free_elt(rel, assignment).is_zero()) return false;
  return true;
}

}  // namespace

bool verify_character(const Presentation& p, const Mat& A) {
  bool ok = relations_vanish_at(p, A);
  if (p.name == "re") {
    bool numerical = check_numerical_re(build_S(p.n), A);
    if (numerical != ok)
      throw std::logic_error(
          "componentwise relation evaluation disagrees with the numerical "
          "braided-matrix check");
  }
  return ok;
}

bool verify_orbit_character(const OrbitQuotientSpec& spec, const Mat& A) {
  return relations_vanish_at(spec.pres, A);
}

// ---------------------------------------------------------------------------
// Trace-conjugation lemma.

CheckRecord verify_lemma_trp(int n, int d, const VerifyOptions& opts) {
  if (n < 1 || n > 2)
    throw TooLarge("mixed presentation exceeds the 16-letter alphabet");
  if (d < 4)
    throw BoundTooSmall(
        "the quadratic polynomial target needs certificate padding >= 4");
  CheckRecord rec;
  rec.check = "lemma-trp";
  rec.params = {{"n", std::to_string(n)},
                {"pad_bound", std::to_string(d)},
                {"total_bound", std::to_string(d + 2)},
                {"seed", std::to_string(opts.seed)},
                {"exact", opts.exact ? "true" : "false"}};
  rec.bound = d;

  Presentation p = build_presentation(PresentationKind::MixedTL, n);
  std::vector<FreeElt> rels = p.live_relations();
  NCMat T = nc_generators(n, p.bases["T"]);
  NCMat Tb = nc_generators(n, p.bases["Tbar"]);
  NCMat L = nc_generators(n, p.bases["L"]);
  Mat D = build_D(n);
  Scalar lam = Scalar::symbol(SymL1), mu = Scalar::symbol(SymL2);

  NCMat M = nc_mul(nc_mul(Tb, L), T);      // conjugated generator matrix
  NCMat M2 = nc_mul(M, M);
  NCMat L2 = nc_mul(L, L);
  NCMat TbL2T = nc_mul(nc_mul(Tb, L2), T);

  std::vector<FreeElt> targets;
  std::vector<std::string> labels;
  targets.push_back(elt_sub(nc_weighted_trace(D, M), nc_weighted_trace(D, L)));
  labels.push_back("twisted-trace");
  {
    auto comps = comps_of(nc_sub(M, nc_mul(nc_mul(Tb, L), T)));
    for (size_t i = 0; i < comps.size(); ++i) {
      targets.push_back(comps[i]);
      labels.push_back("P=x " + pair_label(n, static_cast<int>(i)));
    }
  }
  {
    auto comps = comps_of(nc_sub(M2, TbL2T));
    for (size_t i = 0; i < comps.size(); ++i) {
      targets.push_back(comps[i]);
      labels.push_back("P=x^2 " + pair_label(n, static_cast<int>(i)));
    }
  }
  {
    NCMat lhs = nc_sub(M2, nc_scale(lam + mu, M));
    NCMat inner = nc_sub(L2, nc_scale(lam + mu, L));
    NCMat rhs = nc_mul(nc_mul(Tb, inner), T);
    auto comps = comps_of(nc_sub(lhs, rhs));
    for (size_t i = 0; i < comps.size(); ++i) {
      targets.push_back(comps[i]);
      labels.push_back("P=x^2-(lam+mu)x " + pair_label(n, static_cast<int>(i)));
    }
  }

  LadderResult pos = verified_membership(p.alg, rels, targets, d + 2,
                                         opts.seed, opts.exact);
  bool all_pos = true;
  for (size_t i = 0; i < targets.size(); ++i)
    if (!pos.member[i]) {
      all_pos = false;
      rec.witnesses.push_back(labels[i]);
    }

  FreeElt control = elt_sub(nc_trace(M), nc_trace(L));
  LadderResult ctl = verified_membership(p.alg, rels, {control}, d + 2,
                                         opts.seed + 1000, opts.exact);
  bool control_outside = !ctl.member[0];
  if (!control_outside) rec.witnesses.push_back("ordinary-trace control");

  rec.pass = all_pos && control_outside;
  return rec;
}

// ---------------------------------------------------------------------------
// e/s-algebra lemma.

CheckRecord verify_lemma_alg(const std::vector<Scalar>& p_coeffs,
                             const Scalar& alpha, const Scalar& beta,
                             int m_max, int d, const VerifyOptions& opts) {
  if (!p_coeffs.empty() && !p_coeffs[0].is_zero())
    throw InvalidPolynomial("the polynomial must vanish at zero");
  int deg = 0;
  for (size_t k = 0; k < p_coeffs.size(); ++k)
    if (!p_coeffs[k].is_zero()) deg = static_cast<int>(k);
  if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
  int need = std::max({deg + m_max + 2, 2 * deg + 2, deg + 1});
  if (d < need)
    throw BoundTooSmall("degree bound too small for the lemma targets");

  CheckRecord rec;
  rec.check = "lemma-alg";
  std::ostringstream ps;
  for (size_t k = 0; k < p_coeffs.size(); ++k) {
    if (p_coeffs[k].is_zero()) continue;
    if (ps.tellp() > 0) ps << " + ";
    ps << "(" << p_coeffs[k].str() << ")x^" << k;
  }
  rec.params = {{"P", ps.str().empty() ? "0" : ps.str()},
                {"alpha", alpha.str()},
                {"beta", beta.str()},
                {"m_max", std::to_string(m_max)},
                {"seed", std::to_string(opts.seed)},
                {"exact", opts.exact ? "true" : "false"}};
  rec.bound = d;

  AlgebraDesc alg;
  alg.add_gen("e");
  alg.add_gen("s");
  FreeElt e = elt_gen(0, Scalar(1)), s = elt_gen(1, Scalar(1));
  FreeElt hecke = elt_add(
      elt_add(elt_term(Word::from_letters({1, 1}), Scalar(1)),
              elt_term(Word::single(1), -beta)),
      elt_const(Scalar(-1)));
  FreeElt braid =
      elt_add(elt_term(Word::from_letters({1, 0, 1, 0}), Scalar(1)),
              elt_term(Word::from_letters({0, 1, 0, 1}), Scalar(-1)));
  FreeElt Pe;
  for (size_t k = 0; k < p_coeffs.size(); ++k) {
    if (p_coeffs[k].is_zero()) continue;
    Pe = elt_add(Pe, elt_term(Word::from_letters(std::vector<int>(k, 0)),
                              p_coeffs[k]));
  }
  FreeElt rel3 = elt_sub(elt_mul(e, Pe), elt_scale(e, alpha));

  std::vector<FreeElt> targets;
  std::vector<std::string> labels;
  for (int m = 1; m <= m_max; ++m) {
    FreeElt em = elt_term(Word::from_letters(std::vector<int>(m, 0)),
                          Scalar(1));
    FreeElt sems = elt_mul(elt_mul(s, em), s);
    targets.push_back(elt_sub(elt_mul(Pe, sems), elt_mul(sems, Pe)));
    labels.push_back("commutation with s e^" + std::to_string(m) + " s");
  }
  {
    FreeElt sPs = elt_mul(elt_mul(s, Pe), s);
    targets.push_back(elt_sub(elt_mul(Pe, sPs), elt_mul(sPs, Pe)));
    labels.push_back("commutation with s P(e) s");
  }

  LadderResult main = verified_membership(alg, {hecke, braid, rel3}, targets,
                                          d, opts.seed, opts.exact);
  bool ok = true;
  for (size_t i = 0; i < targets.size(); ++i)
    if (!main.member[i]) {
      ok = false;
      rec.witnesses.push_back(labels[i]);
    }

  // The square identity is certified through the principal ideal alone.
  FreeElt fac = elt_sub(elt_mul(Pe, Pe), elt_scale(Pe, alpha));
  LadderResult facr = verified_membership(alg, {rel3}, {fac}, d,
                                          opts.seed + 500, opts.exact);
  if (!facr.member[0]) {
    ok = false;
    rec.witnesses.push_back("square identity through the principal ideal");
  }

  rec.pass = ok;
  return rec;
}

// ---------------------------------------------------------------------------
// Fiber projection.

CheckRecord verify_fiber_map(int l, int m, int k, int d,
                             const VerifyOptions& opts) {
  if (l < 1 || m < 1 || k < 1)
    throw std::invalid_argument("all three multiplicities must be positive");
  int n = l + m + k;
  if (n > kMaxWeightLen || n * n > 16)
    throw TooLarge("matrix size exceeds the generator alphabet cap");
  if (d < 5) throw BoundTooSmall("fiber identities need degree bound >= 5");

  CheckRecord rec;
  rec.check = "fiber-map";
  rec.params = {{"l", std::to_string(l)},
                {"m", std::to_string(m)},
                {"k", std::to_string(k)},
                {"seed", std::to_string(opts.seed)},
                {"exact", opts.exact ? "true" : "false"}};
  rec.bound = d;

  Scalar lam = Scalar::symbol(SymL1), mu = Scalar::symbol(SymL2);
  OrbitQuotientSpec spec = make_bisymmetric_spec(l, m, k, lam, mu);
  std::vector<FreeElt> rels = spec.pres.live_relations();
  NCMat L = nc_generators(n, spec.pres.bases["L"]);
  NCMat pi = nc_sub(nc_mul(L, L), nc_scale(lam + mu, L));

  std::vector<FreeElt> targets;
  std::vector<std::string> labels;
  {
    auto comps = re_components_of(n, pi);
    for (size_t i = 0; i < comps.size(); ++i) {
      targets.push_back(comps[i]);
      labels.push_back("braided relation of pi " +
                       pair_label(n * n, static_cast<int>(i)));
    }
  }
  {
    auto comps = comps_of(nc_mul(pi, nc_shift(pi, lam * mu)));
    for (size_t i = 0; i < comps.size(); ++i) {
      targets.push_back(comps[i]);
      labels.push_back("pi(pi + lam mu) " + pair_label(n, static_cast<int>(i)));
    }
  }
  targets.push_back(elt_add(nc_weighted_trace(build_D(n), pi),
                            elt_const(lam * mu * quantum_integer(l + m))));
  labels.push_back("twisted trace of pi");

  LadderResult run = verified_membership(spec.pres.alg, rels, targets, d,
                                         opts.seed, opts.exact);
  bool ok = true;
  for (size_t i = 0; i < targets.size(); ++i)
    if (!run.member[i]) {
      ok = false;
      rec.witnesses.push_back(labels[i]);
    }

  // The same identities at the canonical two-eigenvalue character, with the
  // coupling normalization lam = a^2, mu = b^2.
  Scalar a = Scalar::symbol(SymA), b = Scalar::symbol(SymB);
  Scalar lam_c = a * a, mu_c = b * b;
  Mat A = solution_symmetric(n, l, m, lam_c, mu_c, a * b);
  Mat piA = A * A - (lam_c + mu_c) * A;
  Mat quad = piA * (piA + (lam_c * mu_c) * Mat::identity(n));
  if (!quad.is_zero()) {
    ok = false;
    rec.witnesses.push_back("character quadratic identity");
  }
  if (quantum_trace(piA) != -(lam_c * mu_c) * quantum_integer(l + m)) {
    ok = false;
    rec.witnesses.push_back("character trace identity");
  }

  rec.pass = ok;
  return rec;
}

// ---------------------------------------------------------------------------
// Substitution chain.

CheckRecord verify_substitution(int n) {
  check_family_size(n, 1);
  CheckRecord rec;
  rec.check = "substitution";
  rec.params = {{"n", std::to_string(n)}};
  rec.pass = true;
  auto fail = [&rec](const std::string& w) {
    rec.pass = false;
    rec.witnesses.push_back(w);
  };

  Scalar q = sym_q(), t = sym_t();
  Scalar c = t / (Scalar(1) - qpow(-2));

  Presentation two = build_presentation(PresentationKind::TwoParam, n);
  NCMat E = nc_generators(n, two.bases["E"]);

  // (a) braided-matrix relations at L = E + c reproduce the two-parameter
  // relations verbatim.
  auto shifted = re_components_of(n, nc_shift(E, c));
  if (shifted.size() != two.relations.size()) fail("component count");
  for (size_t i = 0; i < shifted.size() && rec.pass; ++i)
    if (!elt_is_zero(elt_sub(shifted[i], two.relations[i])))
      fail("shift substitution component " +
           pair_label(n * n, static_cast<int>(i)));

  // (b) t = 0 degenerates to the braided-matrix relations.
  Presentation re = build_presentation(PresentationKind::RE, n);
  for (size_t i = 0; i < two.relations.size(); ++i) {
    FreeElt at0;
    bool defined = true;
    for (const auto& [w, cf] : two.relations[i]) {
      auto sub = cf.substituted(SymT, 0);
      if (!sub) {
        defined = false;
        break;
      }
      if (!sub->is_zero()) at0 = elt_add(at0, elt_term(w, *sub));
    }
    if (!defined || !elt_is_zero(elt_sub(at0, re.relations[i]))) {
      fail("t=0 component " + pair_label(n * n, static_cast<int>(i)));
      break;
    }
  }

  // (c) q -> 1 reproduces the classical commutation rule under the index
  // transposition [(m,nn)][(i,j)] -> (m, i, nn, j).
  Presentation cls = build_presentation(PresentationKind::Classical, n);
  int cbase = cls.bases["E"];
  for (int mm = 0; mm < n && rec.pass; ++mm)
    for (int nn = 0; nn < n && rec.pass; ++nn)
      for (int i = 0; i < n && rec.pass; ++i)
        for (int j = 0; j < n && rec.pass; ++j) {
          const FreeElt& comp =
              two.relations[static_cast<size_t>((mm * n + nn) * n * n +
                                                i * n + j)];
          FreeElt at1;
          bool defined = true;
          for (const auto& [w, cf] : comp) {
            auto sub = cf.substituted(SymQ, 1);
            if (!sub) {
              defined = false;
              break;
            }
            if (!sub->is_zero()) at1 = elt_add(at1, elt_term(w, *sub));
          }
          FreeElt want = clcr_element(n, cbase, mm, i, nn, j);
          if (!defined || !elt_is_zero(elt_sub(at1, want)))
            fail("classical limit component (" + std::to_string(mm) + "," +
                 std::to_string(nn) + ")(" + std::to_string(i) + "," +
                 std::to_string(j) + ")");
        }

  // (d) the shifted quadratic and the quantum-integer trace identity.
  Scalar mu1 = Scalar::symbol(SymL1), mu2 = Scalar::symbol(SymL2);
  {
    NCMat Lsub = nc_shift(E, c);
    NCMat lhs = nc_mul(nc_shift(Lsub, -(mu1 + c)), nc_shift(Lsub, -(mu2 + c)));
    NCMat rhs = nc_mul(nc_shift(E, -mu1), nc_shift(E, -mu2));
    if (!nc_sub(lhs, rhs).is_zero()) fail("shifted quadratic");
  }
  for (int n1 = 1; n1 < n; ++n1) {
    int n2 = n - n1;
    Scalar lhs = c * (quantum_integer(n1) + quantum_integer(n2) -
                      quantum_integer(n));
    Scalar rhs = t * quantum_integer(n1) * quantum_integer(n2);
    if (lhs != rhs)
      fail("quantum-integer trace identity at split " + std::to_string(n1) +
           "+" + std::to_string(n2));
  }

  // (e) the classical-orbit relations are the q -> 1 limit of the
  // two-parameter orbit relations (coefficients all regular at q = 1).
  for (int n1 = 1; n1 < n; ++n1) {
    int n2 = n - n1;
    OrbitQuotientSpec qspec = make_two_parameter_spec(n1, n2, mu1, mu2);
    OrbitQuotientSpec kspec = make_kks_spec(n1, n2, mu1, mu2);
    size_t n4 = static_cast<size_t>(n) * n * n * n;
    bool ok = qspec.pres.relations.size() == kspec.pres.relations.size();
    for (size_t idx = 0; ok && idx < qspec.pres.relations.size(); ++idx) {
      FreeElt at1;
      for (const auto& [w, cf] : qspec.pres.relations[idx]) {
        auto sub = cf.substituted(SymQ, 1);
        if (!sub) {
          ok = false;
          break;
        }
        if (!sub->is_zero()) at1 = elt_add(at1, elt_term(w, *sub));
      }
      if (!ok) break;
      size_t want_idx = idx;
      if (idx < n4) {
        size_t mm = idx / (n * n * n) % n, nn = idx / (n * n) % n;
        size_t i = idx / n % n, j = idx % n;
        want_idx = ((mm * n + i) * n + nn) * n + j;
      }
      ok = elt_is_zero(elt_sub(at1, kspec.pres.relations[want_idx]));
    }
    if (!ok)
      fail("classical orbit limit at split " + std::to_string(n1) + "+" +
           std::to_string(n2));
  }

  return rec;
}

// ---------------------------------------------------------------------------
// Rank-2 enveloping-algebra worked example.

CheckRecord verify_gl2_example(int d, const VerifyOptions& opts) {
  if (d < 4) throw BoundTooSmall("the worked example runs at degree >= 4");
  CheckRecord rec;
  rec.check = "gl2-example";
  rec.params = {{"d", std::to_string(d)},
                {"seed", std::to_string(opts.seed)},
                {"exact", opts.exact ? "true" : "false"}};
  rec.bound = d;
  rec.pass = true;
  auto fail = [&rec](const std::string& w) {
    rec.pass = false;
    rec.witnesses.push_back(w);
  };

  Presentation cls = build_presentation(PresentationKind::Classical, 2);
  std::vector<FreeElt> G = cls.live_relations();
  Scalar s1 = Scalar::symbol(SymL1) + Scalar::symbol(SymL2);
  Scalar s2 = Scalar::symbol(SymL1) * Scalar::symbol(SymL2);
  Scalar t = sym_t();
  NCMat E = nc_generators(2, cls.bases["E"]);
  NCMat quad = nc_shift(nc_sub(nc_mul(E, E), nc_scale(s1, E)), s2);
  FreeElt e1 = quad.at(0, 0), e2 = quad.at(1, 1), e3 = quad.at(0, 1),
          e4 = quad.at(1, 0);

  // Generator letters: E11 = 0, E12 = 1, E21 = 2, E22 = 3.
  auto w = [](std::vector<int> ls) { return Word::from_letters(ls); };
  auto term = [&](std::vector<int> ls, const Scalar& c) {
    return elt_term(w(std::move(ls)), c);
  };
  FreeElt e1p = elt_add(
      elt_add(elt_add(term({0, 0}, Scalar(1)), term({3, 3}, Scalar(1))),
              elt_add(term({1, 2}, Scalar(1)), term({2, 1}, Scalar(1)))),
      elt_add(elt_add(term({0}, -s1), term({3}, -s1)),
              elt_const(Scalar(2) * s2)));
  FreeElt e2p = elt_add(
      elt_add(term({0, 0}, Scalar(1)), term({3, 3}, Scalar(-1))),
      elt_add(term({0}, -(t + s1)), term({3}, t + s1)));
  FreeElt e3p = elt_add(
      elt_add(term({0, 1}, Scalar(1)), term({3, 1}, Scalar(1))),
      term({1}, -(s1 + t)));
  FreeElt e4p = elt_add(
      elt_add(term({0, 2}, Scalar(1)), term({3, 2}, Scalar(1))),
      term({2}, -(s1 + t)));
  FreeElt e5p = elt_add(elt_add(term({0}, Scalar(1)), term({3}, Scalar(1))),
                        elt_const(-(s1 + t)));

  auto with = [&G](std::initializer_list<FreeElt> extra) {
    std::vector<FreeElt> out = G;
    for (const auto& e : extra) out.push_back(e);
    return out;
  };
  auto members = [&](const std::vector<FreeElt>& rels,
                     const std::vector<FreeElt>& tgts, uint64_t salt) {
    return verified_membership(AlgebraDesc(cls.alg), rels, tgts, d,
                               opts.seed + salt, opts.exact);
  };

  // (a) both inclusions of the degree-bounded ideal slices.
  LadderResult fwd = members(with({e1, e2, e3, e4}), {e1p, e2p, e3p, e4p}, 1);
  LadderResult bwd = members(with({e1p, e2p, e3p, e4p}), {e1, e2, e3, e4}, 2);
  for (int i = 0; i < 4; ++i) {
    if (!fwd.member[static_cast<size_t>(i)])
      fail("primed relation " + std::to_string(i + 1) +
           "' outside the unprimed slice");
    if (!bwd.member[static_cast<size_t>(i)])
      fail("relation " + std::to_string(i + 1) +
           " outside the primed slice");
  }

  // (b) reduction of 2'-4' through the linear condition 5'.
  LadderResult red = members(with({e5p}), {e2p, e3p, e4p}, 3);
  for (int i = 0; i < 3; ++i)
    if (!red.member[static_cast<size_t>(i)])
      fail("relation " + std::to_string(i + 2) +
           "' does not reduce through 5'");

  // (c) the central rewriting, as membership and as an exact identity.
  FreeElt trE2 = nc_trace(nc_mul(E, E));
  FreeElt e1pp = elt_add(trE2, elt_const(-(s1 * (s1 + t) - Scalar(2) * s2)));
  LadderResult ctr = members(with({e1p, e5p}), {e1pp}, 4);
  if (!ctr.member[0]) fail("central rewriting not in the 1'+5' slice");
  if (!elt_is_zero(elt_sub(e1pp, elt_add(e1p, elt_scale(e5p, s1)))))
    fail("central rewriting exact identity");

  // (d) centrality of the two trace elements.
  FreeElt trE = nc_trace(E);
  std::vector<FreeElt> commutators;
  for (int g = 0; g < 4; ++g) {
    FreeElt x = elt_gen(g, Scalar(1));
    commutators.push_back(elt_sub(elt_mul(trE, x), elt_mul(x, trE)));
    commutators.push_back(elt_sub(elt_mul(trE2, x), elt_mul(x, trE2)));
  }
  LadderResult cent = members(G, commutators, 5);
  for (size_t i = 0; i < commutators.size(); ++i)
    if (!cent.member[i]) fail("trace centrality commutator " + std::to_string(i));

  // (e) control: the perturbed linear condition no longer reduces 2'-4'.
  FreeElt e5bad = elt_add(e5p, elt_const(Scalar(1)));
  LadderResult ctl = members(with({e5bad}), {e2p, e3p, e4p}, 6);
  for (int i = 0; i < 3; ++i)
    if (ctl.member[static_cast<size_t>(i)])
      fail("perturbed control unexpectedly reduces " + std::to_string(i + 2) +
           "'");

  return rec;
}

// ---------------------------------------------------------------------------
// Classical evaluation oracle.

namespace {

mpq_class scalar_to_rational(const Scalar& s) {
  if (!s.is_constant())
    throw std::invalid_argument("matrix entry is not a rational constant");
  std::array<mpq_class, kNumSymbols> zeros{};
  auto v = s.eval(zeros);
  if (!v) throw std::invalid_argument("matrix entry undefined");
  return *v;
}

// Exponent multisets of total degree exactly k over nv variables, in
// lexicographic multiset order.
void monomials_of_degree(int nv, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> combo(static_cast<size_t>(k), 0);
  while (true) {
    out.push_back(combo);
    int pos = k - 1;
    while (pos >= 0 && combo[static_cast<size_t>(pos)] == nv - 1) --pos;
    if (pos < 0) break;
    int v = ++combo[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) combo[static_cast<size_t>(i)] = v;
  }
  if (k == 0) {
    out.clear();
    out.push_back({});
  }
}

template <uint32_t P>
Fp<P> rational_to_fp(const mpq_class& x) {
  uint32_t cn =
      static_cast<uint32_t>(mpz_fdiv_ui(x.get_num().get_mpz_t(), P));
  uint32_t cd =
      static_cast<uint32_t>(mpz_fdiv_ui(x.get_den().get_mpz_t(), P));
  if (cd == 0) throw std::domain_error("denominator vanishes mod p");
  return Fp<P>::raw(cn) / Fp<P>::raw(cd);
}

template <uint32_t P>
std::vector<long> ranks_per_degree(std::vector<std::vector<Fp<P>>> mat,
                                   const std::vector<int>& degree_of_col,
                                   int d) {
  // Forward elimination, processing columns in degree order; the rank after
  // the degree-k block equals the rank of the submatrix of columns <= k.
  std::vector<long> ranks(static_cast<size_t>(d) + 1, 0);
  size_t rank = 0;
  size_t ncols = degree_of_col.size();
  for (size_t col = 0; col < ncols; ++col) {
    size_t piv = rank;
    while (piv < mat.size() && mat[piv][col] == Fp<P>()) ++piv;
    if (piv < mat.size()) {
      std::swap(mat[rank], mat[piv]);
      Fp<P> inv = Fp<P>(1) / mat[rank][col];
      for (size_t j = col; j < ncols; ++j) mat[rank][j] = inv * mat[rank][j];
      for (size_t r = rank + 1; r < mat.size(); ++r) {
        Fp<P> f = mat[r][col];
        if (f == Fp<P>()) continue;
        for (size_t j = col; j < ncols; ++j)
          mat[r][j] = mat[r][j] - f * mat[rank][j];
      }
      ++rank;
    }
    if (col + 1 == ncols || degree_of_col[col + 1] != degree_of_col[col])
      ranks[static_cast<size_t>(degree_of_col[col])] =
          static_cast<long>(rank);
  }
  return ranks;
}

// One full sampling run over a prime field, with the 25% oversampling
// stability check.
template <uint32_t P>
std::vector<long> sampled_ranks(const std::vector<std::vector<mpq_class>>& A0,
                                const std::vector<std::vector<int>>& monos,
                                const std::vector<int>& degree_of_col, int d,
                                uint64_t seed) {
  int n = static_cast<int>(A0.size());
  int nv = n * n;
  std::vector<std::vector<Fp<P>>> base(static_cast<size_t>(n),
                                       std::vector<Fp<P>>(
                                           static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      base[i][j] = rational_to_fp<P>(A0[static_cast<size_t>(i)]
                                       [static_cast<size_t>(j)]);

  size_t nsamples = 2 * monos.size();
  size_t extra = (nsamples + 3) / 4;

  std::mt19937_64 rng(seed);
  auto sample_point = [&]() {
    while (true) {
      std::vector<std::vector<Fp<P>>> g(static_cast<size_t>(n),
                                        std::vector<Fp<P>>(
                                            static_cast<size_t>(n)));
      for (auto& row : g)
        for (auto& x : row) x = Fp<P>(static_cast<long>(rng() % 49 + 1));
      // Inverse by Gauss-Jordan; retry on singular draws.
      std::vector<std::vector<Fp<P>>> m(g);
      std::vector<std::vector<Fp<P>>> inv(static_cast<size_t>(n),
                                          std::vector<Fp<P>>(
                                              static_cast<size_t>(n)));
      for (int i = 0; i < n; ++i) inv[i][i] = Fp<P>(1);
      bool singular = false;
      for (int col = 0; col < n && !singular; ++col) {
        int piv = col;
        while (piv < n && m[piv][col] == Fp<P>()) ++piv;
        if (piv == n) {
          singular = true;
          break;
        }
        std::swap(m[col], m[piv]);
        std::swap(inv[col], inv[piv]);
        Fp<P> ic = Fp<P>(1) / m[col][col];
        for (int j = 0; j < n; ++j) {
          m[col][j] = ic * m[col][j];
          inv[col][j] = ic * inv[col][j];
        }
        for (int r = 0; r < n; ++r) {
          if (r == col) continue;
          Fp<P> f = m[r][col];
          if (f == Fp<P>()) continue;
          for (int j = 0; j < n; ++j) {
            m[r][j] = m[r][j] - f * m[col][j];
            inv[r][j] = inv[r][j] - f * inv[col][j];
          }
        }
      }
      if (singular) continue;
      // g^-1 * A0 * g, flattened row-major.
      std::vector<Fp<P>> pt(static_cast<size_t>(nv));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Fp<P> acc;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              acc = acc + inv[i][a] * base[a][b] * g[b][j];
          pt[static_cast<size_t>(i * n + j)] = acc;
        }
      return pt;
    }
  };

  std::vector<std::vector<Fp<P>>> rows;
  rows.reserve(nsamples + extra);
  for (size_t s = 0; s < nsamples + extra; ++s) {
    auto pt = sample_point();
    std::vector<Fp<P>> row;
    row.reserve(monos.size());
    for (const auto& mo : monos) {
      Fp<P> v(1);
      for (int var : mo) v = v * pt[static_cast<size_t>(var)];
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::vector<Fp<P>>> primary(
      rows.begin(), rows.begin() + static_cast<long>(nsamples));
  std::vector<long> ranks =
      ranks_per_degree<P>(std::move(primary), degree_of_col, d);
  std::vector<long> ranks_all =
      ranks_per_degree<P>(std::move(rows), degree_of_col, d);
  if (ranks != ranks_all)
    throw SamplingUnstable("rank changed under oversampling");
  return ranks;
}

}  // namespace

std::vector<long> classical_matrix_orbit_dims(const Mat& A0, int d,
                                              uint64_t seed) {
  if (!A0.is_square()) throw std::invalid_argument("base matrix not square");
  int n = A0.rows;
  int nv = n * n;
  std::vector<std::vector<mpq_class>> base(static_cast<size_t>(n),
                                           std::vector<mpq_class>(
                                               static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) base[i][j] = scalar_to_rational(A0.at(i, j));

  std::vector<std::vector<int>> monos;
  std::vector<int> degree_of_col;
  for (int k = 0; k <= d; ++k) {
    std::vector<std::vector<int>> mk;
    monomials_of_degree(nv, k, mk);
    for (auto& mo : mk) {
      monos.push_back(std::move(mo));
      degree_of_col.push_back(k);
    }
  }

  std::vector<long> r1 =
      sampled_ranks<kPrime1>(base, monos, degree_of_col, d, seed);
  std::vector<long> r2 = sampled_ranks<kPrime2>(
      base, monos, degree_of_col, d, seed ^ 0x9e3779b97f4a7c15ull);
  if (r1 != r2)
    throw SamplingUnstable("independent prime-field rank runs disagree");
  return r1;
}

std::vector<long> classical_orbit_dims(int n,
                                       const std::vector<int>& multiplicities,
                                       const std::vector<mpq_class>& eigenvalues,
                                       int d, uint64_t seed) {
  if (multiplicities.size() != eigenvalues.size())
    throw std::invalid_argument("multiplicities and eigenvalues must pair up");
  int total = 0;
  for (int m : multiplicities) {
    if (m < 1) throw std::invalid_argument("multiplicities must be positive");
    total += m;
  }
  if (total != n)
    throw std::invalid_argument("multiplicities must sum to the matrix size");
  for (size_t i = 0; i < eigenvalues.size(); ++i)
    for (size_t j = i + 1; j < eigenvalues.size(); ++j)
      if (eigenvalues[i] == eigenvalues[j])
        throw DegenerateOrbit("eigenvalue specializations must be distinct");
  Mat A0(n, n);
  int pos = 0;
  for (size_t b = 0; b < multiplicities.size(); ++b)
    for (int r = 0; r < multiplicities[b]; ++r, ++pos)
      A0.at(pos, pos) = Scalar(eigenvalues[b]);
  return classical_matrix_orbit_dims(A0, d, seed);
}

// ---------------------------------------------------------------------------
// Brute-force rank-2 solution variety.

namespace {

// Decomposes an equation, polynomial in the four matrix-entry symbols, into
// coefficients per entry-monomial.  Returns false when a monomial outside the
// span {wy, wz, wx, w^2} carries a nonzero coefficient or the wx and w^2
// coefficients fail to be opposite; on success emits (c_wy, c_wz, c_wx).
bool support_coefficients(const Scalar& eq, std::array<Scalar, 3>& out) {
  // Split each numerator monomial into its entry part, keyed by the
  // exponents of the four entry symbols, and its q part.
  std::map<std::array<int, 4>, Poly> buckets;
  for (const auto& [mono, coef] : eq.num) {
    std::array<int, 4> key{mono[SymL1], mono[SymL2], mono[SymL3],
                           mono[SymL4]};
    Mono qpart = mono;
    qpart[SymL1] = qpart[SymL2] = qpart[SymL3] = qpart[SymL4] = 0;
    Poly& b = buckets[key];
    Poly add;
    add[qpart] = coef;
    b = p_add(b, add);
  }
  const std::array<int, 4> WY{0, 1, 0, 1}, WZ{0, 0, 1, 1}, WX{1, 0, 0, 1},
      WW{0, 0, 0, 2};
  Poly cy, cz, cx, cw;
  for (auto& [key, b] : buckets) {
    if (p_is_zero(b)) continue;
    if (key == WY)
      cy = b;
    else if (key == WZ)
      cz = b;
    else if (key == WX)
      cx = b;
    else if (key == WW)
      cw = b;
    else
      return false;
  }
  if (!p_is_zero(p_add(cx, cw))) return false;
  out[0] = Scalar::fraction(cy, eq.den);
  out[1] = Scalar::fraction(cz, eq.den);
  out[2] = Scalar::fraction(cx, eq.den);
  return true;
}

// Rank of a matrix over the exact scalar field.
int scalar_rank(std::vector<std::array<Scalar, 3>> rows) {
  int rank = 0;
  for (int col = 0; col < 3; ++col) {
    size_t piv = static_cast<size_t>(rank);
    while (piv < rows.size() && rows[piv][static_cast<size_t>(col)].is_zero())
      ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[piv]);
    Scalar inv = rows[static_cast<size_t>(rank)][static_cast<size_t>(col)]
                     .inverse();
    for (auto& x : rows[static_cast<size_t>(rank)]) x = inv * x;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<size_t>(rank)) continue;
      Scalar f = rows[r][static_cast<size_t>(col)];
      if (f.is_zero()) continue;
      for (int j = 0; j < 3; ++j)
        rows[r][static_cast<size_t>(j)] =
            rows[r][static_cast<size_t>(j)] -
            f * rows[static_cast<size_t>(rank)][static_cast<size_t>(j)];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

CheckRecord verify_re_variety_n2(uint64_t seed) {
  CheckRecord rec;
  rec.check = "re-variety-n2";
  rec.params = {{"seed", std::to_string(seed)}};
  rec.pass = true;
  auto fail = [&rec](const std::string& w) {
    rec.pass = false;
    rec.witnesses.push_back(w);
  };

  // Indeterminate matrix [[x, y], [z, w]] with entries l1..l4.
  Mat A(2, 2);
  A.at(0, 0) = Scalar::symbol(SymL1);
  A.at(0, 1) = Scalar::symbol(SymL2);
  A.at(1, 0) = Scalar::symbol(SymL3);
  A.at(1, 1) = Scalar::symbol(SymL4);
  Mat S = build_S(2);
  Mat A2 = amp_second(A);
  Mat diff = S * A2 * S * A2 - A2 * S * A2 * S;

  // Analysis pass: symbolic q, then three seeded rational specializations.
  std::mt19937_64 rng(seed);
  std::vector<std::optional<mpq_class>> qvals{std::nullopt};
  while (qvals.size() < 4) {
    mpq_class qv(static_cast<long>(rng() % 97 + 2),
                 static_cast<long>(rng() % 9 + 1));
    qv.canonicalize();
    if (qv == 1) continue;
    qvals.push_back(qv);
  }

  for (const auto& qv : qvals) {
    std::string tag = qv ? "q=" + qv->get_str() : "symbolic q";
    std::vector<std::array<Scalar, 3>> rows;
    bool contained = true;
    for (int idx = 0; idx < 16 && contained; ++idx) {
      Scalar eq = diff.a[static_cast<size_t>(idx)];
      if (qv) {
        auto sub = eq.substituted(SymQ, *qv);
        if (!sub) {
          fail("specialization undefined at " + tag);
          contained = false;
          break;
        }
        eq = *sub;
      }
      std::array<Scalar, 3> coef;
      if (!support_coefficients(eq, coef)) {
        fail("support outside the three generators at " + tag +
             " component " + pair_label(4, idx));
        contained = false;
        break;
      }
      rows.push_back(coef);
    }
    if (!contained) continue;
    if (scalar_rank(rows) != 3) fail("equation span rank != 3 at " + tag);
  }

  // Component witnesses: the plane w = 0 and the scalar line y = z = 0,
  // x = w each contain a canonical solution family, stably under diagonal
  // gauge.
  Scalar lam = Scalar::symbol(SymL1);
  Scalar a = Scalar::symbol(SymA), b = Scalar::symbol(SymB);
  Mat g = diag({a, b});

  IndexPair step;
  step.y = {0};
  step.z = {1};
  Mat B1 = solution_triangular(2, step, 1, lam);  // [[lam, 1], [0, 0]]
  Mat A1 = solution_symmetric(2, 1, 1, a * a, b * b, a * b);
  for (const Mat* w0 : {&B1, &A1}) {
    Mat gw = gauge_transform(*w0, g);
    if (!w0->at(1, 1).is_zero() || !gw.at(1, 1).is_zero())
      fail("plane-component witness leaves w = 0");
    if (!check_numerical_re(S, *w0)) fail("plane-component witness fails");
  }

  IndexPair none;
  Mat B2 = solution_triangular(2, none, 2, lam);  // lam * identity
  Mat gB2 = gauge_transform(B2, g);
  for (const Mat* w0 : {&B2, &gB2}) {
    if (!w0->at(0, 1).is_zero() || !w0->at(1, 0).is_zero() ||
        !(w0->at(0, 0) - w0->at(1, 1)).is_zero())
      fail("line-component witness leaves y = z = 0, x = w");
  }
  if (!check_numerical_re(S, B2)) fail("line-component witness fails");

  return rec;
}

}  // namespace qma

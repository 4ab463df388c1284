#pragma once

// Degree-bounded two-sided ideal calculus in a free associative algebra.
//
// Given relations g_1..g_r and a degree bound D, the engine spans the
// filtered piece I_D = span{ w1 * g * w2 : |w1| + |w2| + len(lead(g)) <= D }
// by Gaussian elimination over a coefficient field F, keyed by word.  Rows
// are produced in ascending pad order (pad = |w1| + |w2|), echelonized with
// distinct leading words, and targets are reduced against the echelon.
//
// When every relation and target is homogeneous with respect to a grading
// component (generator weight vector, or a counter attached to generators),
// the row space splits as a direct sum over grade keys, so rows are bucketed
// per key and a target only ever needs the bucket of its own key.  Grading
// components that fail homogeneity for any relation or target are dropped
// automatically; with no active component everything lands in one bucket.
//
// Membership of t: residue of t against the completed echelon is zero.
// Soundness: every nonzero element of the row span has its leading word in
// the stored lead set, so a nonzero residue with no stored lead cannot lie
// in the span; conversely a zero residue exhibits t as a combination of rows.
//
// Filtered dimensions: because rows are echelonized with distinct leading
// words and the term order is degree-first, the number of stored rows with
// lead length <= k equals dim (I intersect F_k), hence
//   dim_k (A/I) = #words(len <= k) - #rows(lead len <= k).

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qma/fp.hpp"
#include "qma/free_algebra.hpp"
#include "qma/scalar.hpp"

namespace qma {

inline constexpr int kMaxWeightLen = 4;

struct GenInfo {
  std::string name;
  std::array<int, kMaxWeightLen> weight{};  // e.g. e_i - e_j for a matrix entry
  int tnum = 0;                             // auxiliary counter
  int lnum = 0;                             // auxiliary counter
};

struct AlgebraDesc {
  std::vector<GenInfo> gens;
  int weight_len = 0;

  int add_gen(const std::string& name, std::array<int, kMaxWeightLen> w = {},
              int tnum = 0, int lnum = 0) {
    if (gens.size() >= 16)
      throw std::length_error("generator alphabet limited to 16 letters");
    gens.push_back(GenInfo{name, w, tnum, lnum});
    return static_cast<int>(gens.size()) - 1;
  }

  // Adds the n*n entries of a matrix generator family, named e.g. L11..Lnn
  // (row-major), with weight(L_ij) = e_i - e_j.  Returns the base index.
  int add_matrix_family(const std::string& prefix, int n, int tnum = 0,
                        int lnum = 0) {
    if (n > kMaxWeightLen)
      throw std::length_error("matrix family size exceeds weight capacity");
    if (weight_len == 0) weight_len = n;
    if (weight_len != n)
      throw std::invalid_argument("mixed matrix family sizes");
    int base = static_cast<int>(gens.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::array<int, kMaxWeightLen> w{};
        w[i] += 1;
        w[j] -= 1;
        add_gen(prefix + std::to_string(i + 1) + std::to_string(j + 1), w,
                tnum, lnum);
      }
    return base;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(g.name);
    return out;
  }
};

// Grade key: weight coordinates then the two counters, inactive slots zero.
using GradeKey = std::array<int, kMaxWeightLen + 2>;

struct GradeKeyHash {
  size_t operator()(const GradeKey& k) const {
    size_t h = 0;
    for (int x : k) h = h * 1000003u + static_cast<size_t>(x + 512);
    return h;
  }
};

namespace engine_detail {

struct Grading {
  bool weight_active = false;
  bool tnum_active = false;
  bool lnum_active = false;

  GradeKey key_of_word(const Word& w, const AlgebraDesc& alg) const {
    GradeKey k{};
    for (int i = 0; i < w.len; ++i) {
      const GenInfo& g = alg.gens[w.letter(i)];
      if (weight_active)
        for (int c = 0; c < kMaxWeightLen; ++c) k[c] += g.weight[c];
      if (tnum_active) k[kMaxWeightLen] += g.tnum;
      if (lnum_active) k[kMaxWeightLen + 1] += g.lnum;
    }
    return k;
  }
};

// A component stays active only if every nonzero element has all its terms
// at one common value of that component.
template <class F>
Grading detect_grading(const AlgebraDesc& alg,
                       const std::vector<const std::vector<Elt<F>>*>& groups) {
  Grading g;
  g.weight_active = alg.weight_len > 0;
  g.tnum_active = false;
  g.lnum_active = false;
  for (const auto& gen : alg.gens) {
    if (gen.tnum != 0) g.tnum_active = true;
    if (gen.lnum != 0) g.lnum_active = true;
  }
  Grading probe;
  probe.weight_active = true;
  probe.tnum_active = true;
  probe.lnum_active = true;
  for (const auto* grp : groups)
    for (const auto& e : *grp) {
      if (e.empty()) continue;
      GradeKey first = probe.key_of_word(e.front().first, alg);
      for (const auto& [w, c] : e) {
        GradeKey k = probe.key_of_word(w, alg);
        bool wsame = true;
        for (int i = 0; i < kMaxWeightLen; ++i)
          if (k[i] != first[i]) wsame = false;
        if (!wsame) g.weight_active = false;
        if (k[kMaxWeightLen] != first[kMaxWeightLen]) g.tnum_active = false;
        if (k[kMaxWeightLen + 1] != first[kMaxWeightLen + 1])
          g.lnum_active = false;
      }
    }
  return g;
}

template <class F>
struct CosetEchelon {
  std::unordered_map<Word, Elt<F>, WordHash> rows;

  // Reduces r against stored rows lead-only; if a nonzero remainder with a
  // fresh lead survives, normalizes it to lead coefficient 1 and stores it.
  bool insert(Elt<F> r) {
    while (!r.empty()) {
      auto it = rows.find(r.front().first);
      if (it == rows.end()) {
        F lead = r.front().second;
        if (!(lead == F(1))) {
          F inv = F(1) / lead;
          for (auto& [w, c] : r) c = inv * c;
        }
        Word lw = r.front().first;
        rows.emplace(lw, std::move(r));
        return true;
      }
      F neg = -r.front().second;
      r = elt_axpy(r, neg, it->second);
    }
    return false;
  }

  // Full reduction: eliminates every term whose word is a stored lead.
  Elt<F> reduce(Elt<F> t) const {
    size_t i = 0;
    while (i < t.size()) {
      auto it = rows.find(t[i].first);
      if (it == rows.end()) {
        ++i;
        continue;
      }
      F neg = -t[i].second;
      t = elt_axpy(t, neg, it->second);
    }
    return t;
  }
};

}  // namespace engine_detail

template <class F>
struct MembershipReport {
  std::vector<bool> member;
  std::vector<int> pad_used;  // degree level at which the target first reduced to zero; -1 if never
  std::vector<Elt<F>> residues;
  long rows_inserted = 0;
  long rank = 0;
  bool all() const {
    for (bool b : member)
      if (!b) return false;
    return !member.empty();
  }
};

template <class F>
class DegreeBoundedIdeal {
 public:
  DegreeBoundedIdeal(const AlgebraDesc& alg, std::vector<Elt<F>> relations,
                     int degree_bound)
      : alg_(alg), degree_bound_(degree_bound) {
    for (auto& r : relations)
      if (!r.empty()) relations_.push_back(std::move(r));
  }

  // Reduces each target against the span of all rows of degree <= bound.
  // With early_exit the enumeration stops at the first pad level where every
  // target has already reduced to zero (sound for the membership verdict,
  // not for dimension counting).
  MembershipReport<F> membership(const std::vector<Elt<F>>& targets,
                                 bool early_exit = true) {
    engine_detail::Grading grading = detect_grading_with(targets);
    MembershipReport<F> rep;
    size_t nt = targets.size();
    rep.member.assign(nt, false);
    rep.pad_used.assign(nt, -1);
    rep.residues.resize(nt);

    std::set<GradeKey> filter;
    std::vector<GradeKey> tkey(nt);
    for (size_t i = 0; i < nt; ++i) {
      if (targets[i].empty()) {
        rep.member[i] = true;
        rep.pad_used[i] = 0;
        continue;
      }
      tkey[i] = grading.key_of_word(targets[i].front().first, alg_);
      filter.insert(tkey[i]);
    }

    std::vector<Elt<F>> outstanding = targets;
    auto after_pad = [&](int pad) {
      bool all_done = true;
      for (size_t i = 0; i < nt; ++i) {
        if (rep.member[i]) continue;
        auto it = cosets_.find(tkey[i]);
        if (it != cosets_.end())
          outstanding[i] = it->second.reduce(std::move(outstanding[i]));
        if (outstanding[i].empty()) {
          rep.member[i] = true;
          rep.pad_used[i] = pad;
        } else {
          all_done = false;
        }
      }
      return all_done;
    };

    std::function<bool(int)> cb;
    if (early_exit) cb = after_pad;
    enumerate(grading, &filter, cb, rep);
    if (!early_exit) after_pad(degree_bound_);
    for (size_t i = 0; i < nt; ++i)
      if (!rep.member[i]) rep.residues[i] = std::move(outstanding[i]);
    rep.rank = rank();
    return rep;
  }

  // dim_k(A/I_k) for k = 0..bound: the dimension at level k counts only
  // consequences of total degree <= k (rows are enumerated in ascending row
  // degree and the rank is snapshotted after each degree tranche), so each
  // entry matches an independent run at that bound.
  std::vector<long> filtered_dims() {
    engine_detail::Grading grading = detect_grading_with({});
    MembershipReport<F> rep;
    std::vector<long> rank_after(degree_bound_ + 1, 0);
    enumerate(grading, nullptr, nullptr, rep, &rank_after);
    std::vector<long> dims(degree_bound_ + 1, 0);
    long words = 1, pow = 1;
    long ngens = static_cast<long>(alg_.gens.size());
    for (int k = 0; k <= degree_bound_; ++k) {
      if (k > 0) {
        pow *= ngens;
        words += pow;
      }
      dims[k] = words - rank_after[k];
    }
    return dims;
  }

  long rank() const {
    long r = 0;
    for (const auto& [key, ech] : cosets_)
      r += static_cast<long>(ech.rows.size());
    return r;
  }

 private:
  engine_detail::Grading detect_grading_with(
      const std::vector<Elt<F>>& targets) const {
    std::vector<const std::vector<Elt<F>>*> groups{&relations_};
    if (!targets.empty()) groups.push_back(&targets);
    return engine_detail::detect_grading<F>(alg_, groups);
  }

  int max_pad() const {
    int mp = 0;
    for (const auto& r : relations_)
      mp = std::max(mp, degree_bound_ - r.front().first.len);
    return std::max(mp, 0);
  }

  void build_words(int up_to) {
    if (static_cast<int>(words_.size()) > up_to) return;
    if (words_.empty()) words_.push_back({Word{}});
    int ngens = static_cast<int>(alg_.gens.size());
    while (static_cast<int>(words_.size()) <= up_to) {
      const auto& prev = words_.back();
      std::vector<Word> next;
      next.reserve(prev.size() * ngens);
      for (const Word& w : prev)
        for (int g = 0; g < ngens; ++g)
          next.push_back(Word::concat(w, Word::single(g)));
      words_.push_back(std::move(next));
    }
  }

  // Enumerates rows w1 * g * w2 in ascending row degree (= pad + lead length
  // of g).  after_level(d) runs once all rows of degree <= d are in; a true
  // return stops the enumeration.  rank_after (when given) receives the
  // cumulative rank after each degree tranche.
  void enumerate(const engine_detail::Grading& grading,
                 const std::set<GradeKey>* filter,
                 const std::function<bool(int)>& after_level,
                 MembershipReport<F>& rep,
                 std::vector<long>* rank_after = nullptr) {
    if (relations_.empty()) {
      if (rank_after) rank_after->assign(degree_bound_ + 1, 0);
      if (after_level) after_level(degree_bound_);
      return;
    }
    int mp = max_pad();
    build_words(mp);
    // Precompute word grade keys per length.
    std::vector<std::vector<GradeKey>> wkeys(words_.size());
    for (size_t l = 0; l < words_.size(); ++l) {
      wkeys[l].reserve(words_[l].size());
      for (const Word& w : words_[l])
        wkeys[l].push_back(grading.key_of_word(w, alg_));
    }
    std::vector<GradeKey> rkeys;
    rkeys.reserve(relations_.size());
    for (const auto& r : relations_)
      rkeys.push_back(grading.key_of_word(r.front().first, alg_));

    // Packed keys (10-bit biased lanes) turn the filter test in the hot
    // triple loop into one uint64 add-and-compare.  Single-word components
    // stay within +-15, so biased lanes never carry across a three-way sum.
    constexpr int kLanes = kMaxWeightLen + 2;
    auto pack = [](const GradeKey& k, int bias) {
      uint64_t p = 0;
      for (int c = 0; c < kLanes; ++c)
        p = (p << 10) | static_cast<uint64_t>(k[c] + bias);
      return p;
    };
    std::vector<std::vector<uint64_t>> pwkeys(words_.size());
    for (size_t l = 0; l < words_.size(); ++l) {
      pwkeys[l].reserve(wkeys[l].size());
      for (const GradeKey& k : wkeys[l]) pwkeys[l].push_back(pack(k, 64));
    }
    std::vector<uint64_t> prkeys;
    prkeys.reserve(rkeys.size());
    for (const GradeKey& k : rkeys) prkeys.push_back(pack(k, 64));
    std::vector<uint64_t> pfilter;
    if (filter)
      for (const GradeKey& k : *filter) pfilter.push_back(pack(k, 192));

    for (int level = 0; level <= degree_bound_; ++level) {
      for (size_t ri = 0; ri < relations_.size(); ++ri) {
        const Elt<F>& rel = relations_[ri];
        int leadlen = rel.front().first.len;
        int pad = level - leadlen;
        if (pad < 0) continue;
        for (int p1 = 0; p1 <= pad; ++p1) {
          int p2 = pad - p1;
          for (size_t i1 = 0; i1 < words_[p1].size(); ++i1) {
            uint64_t pleft = pwkeys[p1][i1] + prkeys[ri];
            for (size_t i2 = 0; i2 < words_[p2].size(); ++i2) {
              if (filter) {
                uint64_t pkey = pleft + pwkeys[p2][i2];
                bool hit = false;
                for (uint64_t f : pfilter)
                  if (f == pkey) {
                    hit = true;
                    break;
                  }
                if (!hit) continue;
              }
              GradeKey key{};
              for (int c = 0; c < kLanes; ++c)
                key[c] = wkeys[p1][i1][c] + rkeys[ri][c] + wkeys[p2][i2][c];
              Elt<F> row =
                  elt_conjugate(words_[p1][i1], rel, words_[p2][i2]);
              if (cosets_[key].insert(std::move(row))) rep.rows_inserted++;
            }
          }
        }
      }
      if (rank_after) (*rank_after)[level] = rank();
      if (after_level && after_level(level)) break;
    }
  }

  AlgebraDesc alg_;
  int degree_bound_;
  std::vector<Elt<F>> relations_;
  std::vector<std::vector<Word>> words_;
  std::unordered_map<GradeKey, engine_detail::CosetEchelon<F>, GradeKeyHash>
      cosets_;
};

// ---------------------------------------------------------------------------
// Coefficient specialization and the randomized verification ladder.

template <class F>
Elt<F> specialize_elt(const FreeElt& e, const std::function<F(const Scalar&)>& f) {
  Elt<F> out;
  out.reserve(e.size());
  for (const auto& [w, c] : e) {
    F v = f(c);
    if (!(v == F(0))) out.emplace_back(w, v);
  }
  return out;
}

template <class F>
std::vector<Elt<F>> specialize_elts(const std::vector<FreeElt>& es,
                                    const std::function<F(const Scalar&)>& f) {
  std::vector<Elt<F>> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(specialize_elt<F>(e, f));
  return out;
}

struct LadderResult {
  std::vector<bool> member;
  std::vector<int> pad_used;
  int fp_runs = 0;          // prime-field runs performed
  bool used_rational = false;
  bool used_symbolic = false;
  long rank = 0;
};

namespace engine_detail {

template <uint32_t P>
std::optional<MembershipReport<Fp<P>>> run_fp(
    const AlgebraDesc& alg, const std::vector<FreeElt>& relations,
    const std::vector<FreeElt>& targets, int bound, uint64_t seed,
    bool early_exit) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    FpPoint pt = random_fp_point(P, seed + 0x9e3779b97f4a7c15ull * attempt);
    try {
      std::function<Fp<P>(const Scalar&)> f = [&pt](const Scalar& s) {
        return eval_scalar_fp<P>(s, pt);
      };
      DegreeBoundedIdeal<Fp<P>> ideal(
          alg, specialize_elts<Fp<P>>(relations, f), bound);
      return ideal.membership(specialize_elts<Fp<P>>(targets, f), early_exit);
    } catch (const std::domain_error&) {
      continue;  // denominator vanished at this point; reseed
    }
  }
  return std::nullopt;
}

inline std::optional<MembershipReport<mpq_class>> run_rational(
    const AlgebraDesc& alg, const std::vector<FreeElt>& relations,
    const std::vector<FreeElt>& targets, int bound, uint64_t seed,
    bool early_exit) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto pt = random_rational_point(seed + 0x9e3779b97f4a7c15ull * attempt);
    try {
      std::function<mpq_class(const Scalar&)> f = [&pt](const Scalar& s) {
        return eval_scalar_q(s, pt);
      };
      DegreeBoundedIdeal<mpq_class> ideal(
          alg, specialize_elts<mpq_class>(relations, f), bound);
      return ideal.membership(specialize_elts<mpq_class>(targets, f),
                              early_exit);
    } catch (const std::domain_error&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace engine_detail

// Verified ideal membership: three prime-field runs at independent sample
// points must agree; on disagreement escalate to exact rational runs, and
// finally to a fully symbolic run over the scalar field.
inline LadderResult verified_membership(const AlgebraDesc& alg,
                                        const std::vector<FreeElt>& relations,
                                        const std::vector<FreeElt>& targets,
                                        int bound, uint64_t seed = 12345,
                                        bool exact = false) {
  LadderResult out;
  if (!exact) {
    auto r1 = engine_detail::run_fp<kPrime1>(alg, relations, targets, bound,
                                             seed + 1, true);
    auto r2 = engine_detail::run_fp<kPrime2>(alg, relations, targets, bound,
                                             seed + 2, true);
    auto r3 = engine_detail::run_fp<kPrime3>(alg, relations, targets, bound,
                                             seed + 3, true);
    out.fp_runs = (r1 ? 1 : 0) + (r2 ? 1 : 0) + (r3 ? 1 : 0);
    if (r1 && r2 && r3 && r1->member == r2->member &&
        r2->member == r3->member) {
      out.member = r1->member;
      out.pad_used = r1->pad_used;
      out.rank = r1->rank;
      return out;
    }
    auto q1 = engine_detail::run_rational(alg, relations, targets, bound,
                                          seed + 11, true);
    auto q2 = engine_detail::run_rational(alg, relations, targets, bound,
                                          seed + 12, true);
    out.used_rational = true;
    if (q1 && q2 && q1->member == q2->member) {
      out.member = q1->member;
      out.pad_used = q1->pad_used;
      out.rank = q1->rank;
      return out;
    }
  }
  std::function<Scalar(const Scalar&)> id = [](const Scalar& s) { return s; };
  DegreeBoundedIdeal<Scalar> ideal(
      alg, specialize_elts<Scalar>(relations, id), bound);
  auto rep = ideal.membership(specialize_elts<Scalar>(targets, id), true);
  out.used_symbolic = true;
  out.member = rep.member;
  out.pad_used = rep.pad_used;
  out.rank = rep.rank;
  return out;
}

// Verified filtered dimensions through the same ladder.
inline std::vector<long> verified_dims(const AlgebraDesc& alg,
                                       const std::vector<FreeElt>& relations,
                                       int bound, uint64_t seed = 12345,
                                       bool exact = false) {
  if (!exact) {
    auto run = [&](auto prime_tag, uint64_t s) -> std::optional<std::vector<long>> {
      constexpr uint32_t P = decltype(prime_tag)::value;
      for (int attempt = 0; attempt < 8; ++attempt) {
        FpPoint pt = random_fp_point(P, s + 0x9e3779b97f4a7c15ull * attempt);
        try {
          std::function<Fp<P>(const Scalar&)> f = [&pt](const Scalar& sc) {
            return eval_scalar_fp<P>(sc, pt);
          };
          DegreeBoundedIdeal<Fp<P>> ideal(
              alg, specialize_elts<Fp<P>>(relations, f), bound);
          return ideal.filtered_dims();
        } catch (const std::domain_error&) {
          continue;
        }
      }
      return std::nullopt;
    };
    auto d1 = run(std::integral_constant<uint32_t, kPrime1>{}, seed + 1);
    auto d2 = run(std::integral_constant<uint32_t, kPrime2>{}, seed + 2);
    auto d3 = run(std::integral_constant<uint32_t, kPrime3>{}, seed + 3);
    if (d1 && d2 && d3 && *d1 == *d2 && *d2 == *d3) return *d1;
    for (uint64_t s : {seed + 11, seed + 12}) {
      for (int attempt = 0; attempt < 8; ++attempt) {
        auto pt = random_rational_point(s + 0x9e3779b97f4a7c15ull * attempt);
        try {
          std::function<mpq_class(const Scalar&)> f =
              [&pt](const Scalar& sc) { return eval_scalar_q(sc, pt); };
          DegreeBoundedIdeal<mpq_class> ideal(
              alg, specialize_elts<mpq_class>(relations, f), bound);
          return ideal.filtered_dims();
        } catch (const std::domain_error&) {
          continue;
        }
      }
    }
  }
  std::function<Scalar(const Scalar&)> id = [](const Scalar& s) { return s; };
  DegreeBoundedIdeal<Scalar> ideal(alg, specialize_elts<Scalar>(relations, id),
                                   bound);
  return ideal.filtered_dims();
}

// Symbolic normal forms: residues of the targets against the full bound-D
// row space (canonical for the span, independent of insertion order).
inline MembershipReport<Scalar> normal_forms(
    const AlgebraDesc& alg, const std::vector<FreeElt>& relations,
    const std::vector<FreeElt>& targets, int bound) {
  std::function<Scalar(const Scalar&)> id = [](const Scalar& s) { return s; };
  DegreeBoundedIdeal<Scalar> ideal(alg, specialize_elts<Scalar>(relations, id),
                                   bound);
  return ideal.membership(specialize_elts<Scalar>(targets, id), false);
}

}  // namespace qma

#include "semiclass/kernel.hpp"

#include <algorithm>
#include <sstream>

namespace semiclass {

namespace {

bool var_polarity(VarKind k) {
  switch (k) {
    case VarKind::Zbar:
    case VarKind::Zpbar:
    case VarKind::MomC:
      return true;  // pairs like an unbarred slot
    case VarKind::Z:
    case VarKind::Zp:
    case VarKind::MomA:
      return false;
  }
  return true;
}

const char* var_name(VarKind k) {
  switch (k) {
    case VarKind::Z:
      return "z";
    case VarKind::Zbar:
      return "zb";
    case VarKind::Zp:
      return "z'";
    case VarKind::Zpbar:
      return "zb'";
    case VarKind::MomA:
      return "A";
    case VarKind::MomC:
      return "C";
  }
  return "?";
}

bool delta_merge_vars(TensorMonomial& coeff, std::vector<VarLetter>& vars, const Index& x,
                      const Index& y) {
  std::vector<Letter> none;
  // Reuse the operator-side merge on the factor set, then fix the vars.
  auto fix = [&](const Index& from, const Index& to) {
    for (auto& v : vars)
      if (!v.index.concrete && v.index.id == from.id) {
        v.index.id = to.id;
        v.index.concrete = to.concrete;
      }
  };
  if (x.concrete && y.concrete) return x.id == y.id;
  if (!x.concrete && !y.concrete && x.id == y.id) {
    coeff.coeff = coeff.coeff * Scalar::dim_n();
    return true;
  }
  if (x.concrete) {
    fix(y, x);
    delta_merge(coeff, none, y, x);
  } else {
    fix(x, y);
    delta_merge(coeff, none, x, y);
  }
  return true;
}

}  // namespace

std::string KernelTerm::canonicalize() {
  for (auto& f : coeff.factors) {
    f.sort_derivs();
    f.validate();
  }
  std::vector<CanonAtom> atoms;
  for (size_t i = 0; i < vars.size(); ++i) {
    CanonAtom a;
    a.skeleton = {2, static_cast<int>(vars[i].kind)};
    a.idx = {vars[i].index};
    a.polarity = {var_polarity(vars[i].kind)};
    a.group = 0;
    a.tag = static_cast<int>(i);
    atoms.push_back(std::move(a));
  }
  for (size_t i = 0; i < coeff.factors.size(); ++i) {
    CanonAtom a = coeff.factors[i].atom();
    a.group = 0;
    a.tag = static_cast<int>(vars.size() + i);
    atoms.push_back(std::move(a));
  }
  std::map<int, std::pair<int, int>> occ;
  for (auto& a : atoms)
    for (size_t i = 0; i < a.idx.size(); ++i) {
      if (a.idx[i].concrete) continue;
      auto& c = occ[a.idx[i].id];
      (a.polarity[i] ? c.first : c.second)++;
    }
  std::set<int> pinned;
  for (auto& [id, c] : occ)
    if (!(c.first == 1 && c.second == 1)) pinned.insert(id);
  CanonOutcome oc = canonical_label(atoms, pinned);
  std::map<int, int> rename;
  {
    int next = 0;
    std::vector<std::pair<int, int>> byRank(oc.relabel.begin(), oc.relabel.end());
    std::sort(byRank.begin(), byRank.end(), [](auto& a, auto& b) { return a.second < b.second; });
    for (auto& [origId, rank] : byRank) {
      while (pinned.count(next)) ++next;
      rename[origId] = next++;
    }
  }
  std::vector<VarLetter> newVars;
  std::vector<TensorFactor> newFactors;
  for (auto& [tag, perm] : oc.order) {
    if (tag < static_cast<int>(vars.size())) {
      VarLetter v = vars[tag];
      if (!v.index.concrete && rename.count(v.index.id)) v.index.id = rename[v.index.id];
      newVars.push_back(v);
    } else {
      TensorFactor f = coeff.factors[tag - vars.size()];
      f.apply_index_perm(perm);
      for (auto& ix : f.slots)
        if (!ix.concrete && rename.count(ix.id)) ix.id = rename[ix.id];
      for (auto& ix : f.derivs)
        if (!ix.concrete && rename.count(ix.id)) ix.id = rename[ix.id];
      f.sort_derivs();
      newFactors.push_back(std::move(f));
    }
  }
  vars = std::move(newVars);
  coeff.factors = std::move(newFactors);
  std::ostringstream os;
  for (int v : oc.key) os << v << ".";
  return os.str();
}

int KernelTerm::max_symbolic_id() const {
  int m = coeff.max_symbolic_id();
  for (auto& v : vars)
    if (!v.index.concrete) m = std::max(m, v.index.id);
  return m;
}

KernelTerm KernelTerm::shifted(int offset) const {
  KernelTerm t = *this;
  t.coeff = coeff.shifted(offset);
  for (auto& v : t.vars)
    if (!v.index.concrete) v.index.id += offset;
  return t;
}

std::string KernelTerm::str() const {
  std::ostringstream os;
  os << coeff.str() << " :";
  for (auto& v : vars) {
    os << " " << var_name(v.kind) << "_";
    if (v.index.concrete)
      os << v.index.id;
    else
      os << "i" << v.index.id;
  }
  return os.str();
}

KernelPolynomial KernelPolynomial::P() {
  KernelTerm t;
  return KernelPolynomial(std::move(t));
}

void KernelPolynomial::add(KernelTerm t) {
  if (t.coeff.coeff.is_zero()) return;
  std::string key = t.canonicalize();
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), std::move(t));
  } else {
    it->second.coeff.coeff += t.coeff.coeff;
    if (it->second.coeff.coeff.is_zero()) terms_.erase(it);
  }
}

KernelPolynomial KernelPolynomial::operator+(const KernelPolynomial& o) const {
  KernelPolynomial r = *this;
  for (auto& [k, t] : o.terms_) {
    auto it = r.terms_.find(k);
    if (it == r.terms_.end()) {
      r.terms_.emplace(k, t);
    } else {
      it->second.coeff.coeff += t.coeff.coeff;
      if (it->second.coeff.coeff.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

KernelPolynomial KernelPolynomial::operator-(const KernelPolynomial& o) const {
  return *this + o.scaled(Scalar(-1));
}

KernelPolynomial& KernelPolynomial::operator+=(const KernelPolynomial& o) {
  *this = *this + o;
  return *this;
}

KernelPolynomial KernelPolynomial::scaled(const Scalar& s) const {
  KernelPolynomial r;
  if (s.is_zero()) return r;
  for (auto& [k, t] : terms_) {
    KernelTerm st = t;
    st.coeff.coeff = t.coeff.coeff * s;
    if (!st.coeff.coeff.is_zero()) r.terms_.emplace(k, std::move(st));
  }
  return r;
}

bool KernelPolynomial::operator==(const KernelPolynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (auto& [k, t] : terms_) {
    auto it = o.terms_.find(k);
    if (it == o.terms_.end() || !(it->second.coeff.coeff == t.coeff.coeff)) return false;
  }
  return true;
}

std::string KernelPolynomial::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, t] : terms_) {
    if (!first) os << "  +  ";
    first = false;
    os << t.str();
  }
  return os.str();
}

int KernelPolynomial::max_degree() const {
  int d = 0;
  for (auto& [k, t] : terms_) d = std::max(d, t.degree());
  return d;
}

KernelPolynomial KernelPolynomial::at_first_origin() const {
  KernelPolynomial r;
  for (auto& [k, t] : terms_) {
    bool firstSlot = false;
    for (auto& v : t.vars)
      if (v.kind == VarKind::Z || v.kind == VarKind::Zbar) firstSlot = true;
    if (!firstSlot) r.add(t);
  }
  return r;
}

KernelPolynomial KernelPolynomial::at_second_origin() const {
  KernelPolynomial r;
  for (auto& [k, t] : terms_) {
    bool secondSlot = false;
    for (auto& v : t.vars)
      if (v.kind == VarKind::Zp || v.kind == VarKind::Zpbar) secondSlot = true;
    if (!secondSlot) r.add(t);
  }
  return r;
}

namespace {

// Working state while an operator word eats into a kernel term. Pending
// letters still to be applied must see index renames from contractions.
struct ApplyState {
  TensorMonomial coeff;
  std::vector<VarLetter> vars;
  std::vector<Letter> pending;  // applied back to front
};

void state_rename(ApplyState& s, const Index& from, const Index& to) {
  auto fix = [&](Index& ix) {
    if (!ix.concrete && ix.id == from.id) {
      ix.id = to.id;
      ix.concrete = to.concrete;
    }
  };
  for (auto& f : s.coeff.factors) {
    for (auto& ix : f.slots) fix(ix);
    for (auto& ix : f.derivs) fix(ix);
  }
  for (auto& v : s.vars) fix(v.index);
  for (auto& l : s.pending) fix(l.index);
}

bool state_delta(ApplyState& s, const Index& x, const Index& y) {
  if (x.concrete && y.concrete) return x.id == y.id;
  if (!x.concrete && !y.concrete && x.id == y.id) {
    s.coeff.coeff = s.coeff.coeff * Scalar::dim_n();
    return true;
  }
  if (x.concrete)
    state_rename(s, y, x);
  else
    state_rename(s, x, y);
  return true;
}

}  // namespace

KernelPolynomial apply_to_P(const OperatorExpression& e, const KernelPolynomial& k) {
  KernelPolynomial out;
  for (auto& [ke, te] : e.terms()) {
    for (auto& [kk, tk] : k.terms()) {
      int shift = te.max_symbolic_id() + 1;
      KernelTerm kt = tk.shifted(shift);
      ApplyState base;
      base.coeff = std::move(kt.coeff);
      base.coeff.coeff = te.coeff.coeff * base.coeff.coeff;
      base.coeff.factors.insert(base.coeff.factors.end(), te.coeff.factors.begin(),
                                te.coeff.factors.end());
      base.vars = std::move(kt.vars);
      base.pending = te.word;
      std::vector<ApplyState> cur = {std::move(base)};
      while (!cur.empty() && !cur.front().pending.empty()) {
        std::vector<ApplyState> next;
        for (auto& t : cur) {
          Letter L = t.pending.back();
          t.pending.pop_back();
          switch (L.kind) {
            case LetterKind::Z: {
              ApplyState n = t;
              n.vars.push_back({VarKind::Z, L.index});
              next.push_back(std::move(n));
              break;
            }
            case LetterKind::Zbar: {
              ApplyState n = t;
              n.vars.push_back({VarKind::Zbar, L.index});
              next.push_back(std::move(n));
              break;
            }
            case LetterKind::BPlus: {
              // 2 dF/dzbar_i
              for (size_t vi = 0; vi < t.vars.size(); ++vi) {
                if (t.vars[vi].kind != VarKind::Zbar) continue;
                ApplyState n = t;
                Index y = n.vars[vi].index;
                n.vars.erase(n.vars.begin() + vi);
                n.coeff.coeff = n.coeff.coeff * Scalar(2);
                if (state_delta(n, L.index, y)) next.push_back(std::move(n));
              }
              break;
            }
            case LetterKind::B: {
              // -2 dF/dz_i
              for (size_t vi = 0; vi < t.vars.size(); ++vi) {
                if (t.vars[vi].kind != VarKind::Z) continue;
                ApplyState n = t;
                Index y = n.vars[vi].index;
                n.vars.erase(n.vars.begin() + vi);
                n.coeff.coeff = n.coeff.coeff * Scalar(-2);
                if (state_delta(n, L.index, y)) next.push_back(std::move(n));
              }
              // + 2 pi (zbar_i - zbar'_i) F
              ApplyState a = t;
              a.vars.push_back({VarKind::Zbar, L.index});
              a.coeff.coeff = a.coeff.coeff * Scalar(2) * Scalar::pi_pow(1);
              next.push_back(std::move(a));
              ApplyState b = t;
              b.vars.push_back({VarKind::Zpbar, L.index});
              b.coeff.coeff = b.coeff.coeff * Scalar(-2) * Scalar::pi_pow(1);
              next.push_back(std::move(b));
              break;
            }
          }
        }
        cur = std::move(next);
      }
      for (auto& t : cur) out.add(KernelTerm(std::move(t.coeff), std::move(t.vars)));
    }
  }
  return out;
}

std::vector<FockTerm> fock_form(const KernelPolynomial& k) {
  std::vector<FockTerm> out;
  for (auto& [key, t] : k.terms()) {
    std::vector<VarLetter> zs, zbars, primes;
    for (auto& v : t.vars) {
      if (v.kind == VarKind::Z)
        zs.push_back(v);
      else if (v.kind == VarKind::Zbar)
        zbars.push_back(v);
      else
        primes.push_back(v);
    }
    size_t m = zbars.size();
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
      // Letters in S become b/(2 pi); the rest become zbar'.
      std::vector<VarLetter> extraPrimes = primes;
      std::vector<Letter> word;
      int nb = 0;
      for (size_t j = 0; j < m; ++j) {
        if (mask & (size_t{1} << j)) {
          word.push_back({LetterKind::B, zbars[j].index});
          ++nb;
        } else {
          extraPrimes.push_back({VarKind::Zpbar, zbars[j].index});
        }
      }
      // Reorder z^beta b^S into b-outermost form via the word algebra.
      std::vector<Letter> full;
      for (auto& z : zs) full.push_back({LetterKind::Z, z.index});
      full.insert(full.end(), word.begin(), word.end());
      OpTerm ot;
      ot.coeff = t.coeff;
      ot.coeff.coeff =
          ot.coeff.coeff * Scalar::pi_pow(-nb, Rational(1) / Rational(1 << nb) / Rational(1));
      // (1/(2 pi))^nb
      ot.coeff.coeff = ot.coeff.coeff;
      ot.word = std::move(full);
      OperatorExpression no = normal_order(OperatorExpression(std::move(ot)));
      for (auto& [k2, t2] : no.terms()) {
        FockTerm ft;
        KernelTerm rest;
        rest.coeff = t2.coeff;
        for (auto& L : t2.word) {
          if (L.kind == LetterKind::B)
            ft.bIdx.push_back(L.index);
          else
            rest.vars.push_back({VarKind::Z, L.index});
        }
        rest.vars.insert(rest.vars.end(), extraPrimes.begin(), extraPrimes.end());
        ft.rest = std::move(rest);
        out.push_back(std::move(ft));
      }
    }
  }
  return out;
}

KernelPolynomial expand_fock(const std::vector<FockTerm>& fs) {
  // The b indices are contracted into the rest of the term, so the word must
  // be applied without any index freshening.
  KernelPolynomial out;
  for (auto& f : fs) {
    ApplyState base;
    base.coeff = f.rest.coeff;
    base.vars = f.rest.vars;
    for (auto& b : f.bIdx) base.pending.push_back({LetterKind::B, b});
    std::vector<ApplyState> cur = {std::move(base)};
    while (!cur.empty() && !cur.front().pending.empty()) {
      std::vector<ApplyState> next;
      for (auto& t : cur) {
        Letter L = t.pending.back();
        t.pending.pop_back();
        for (size_t vi = 0; vi < t.vars.size(); ++vi) {
          if (t.vars[vi].kind != VarKind::Z) continue;
          ApplyState n = t;
          Index y = n.vars[vi].index;
          n.vars.erase(n.vars.begin() + vi);
          n.coeff.coeff = n.coeff.coeff * Scalar(-2);
          if (state_delta(n, L.index, y)) next.push_back(std::move(n));
        }
        ApplyState a = t;
        a.vars.push_back({VarKind::Zbar, L.index});
        a.coeff.coeff = a.coeff.coeff * Scalar(2) * Scalar::pi_pow(1);
        next.push_back(std::move(a));
        ApplyState b = t;
        b.vars.push_back({VarKind::Zpbar, L.index});
        b.coeff.coeff = b.coeff.coeff * Scalar(-2) * Scalar::pi_pow(1);
        next.push_back(std::move(b));
      }
      cur = std::move(next);
    }
    for (auto& t : cur) out.add(KernelTerm(std::move(t.coeff), std::move(t.vars)));
  }
  return out;
}

KernelPolynomial project(const KernelPolynomial& k) {
  KernelPolynomial out;
  for (auto& f : fock_form(k))
    if (f.bIdx.empty()) out.add(f.rest);
  return out;
}

KernelPolynomial project_perp(const KernelPolynomial& k) { return k - project(k); }

KernelPolynomial inv_L_perp(const KernelPolynomial& k) {
  std::vector<FockTerm> scaled;
  for (auto& f : fock_form(k)) {
    if (f.bIdx.empty()) continue;
    FockTerm g = f;
    g.rest.coeff.coeff =
        g.rest.coeff.coeff *
        Scalar::pi_pow(-1, Rational(1, 4 * static_cast<long>(f.bIdx.size())));
    scaled.push_back(std::move(g));
  }
  return expand_fock(scaled);
}

KernelPolynomial compose(const KernelPolynomial& k1, const KernelPolynomial& k2) {
  KernelPolynomial out;
  for (auto& [ka, t1] : k1.terms()) {
    int shift = t1.max_symbolic_id() + 1;
    for (auto& [kb, t2raw] : k2.terms()) {
      KernelTerm t2 = t2raw.shifted(shift);
      // Substituted variable streams; each entry is a list of alternatives.
      struct Alt {
        VarKind kind;
        Index index;
      };
      std::vector<std::vector<Alt>> streams;
      auto push_plain = [&](VarKind kind, const Index& ix) {
        streams.push_back({Alt{kind, ix}});
      };
      for (auto& v : t1.vars) {
        switch (v.kind) {
          case VarKind::Z:
          case VarKind::Zbar:
            push_plain(v.kind, v.index);
            break;
          case VarKind::Zp:
            streams.push_back({Alt{VarKind::Z, v.index}, Alt{VarKind::MomA, v.index}});
            break;
          case VarKind::Zpbar:
            streams.push_back({Alt{VarKind::Zpbar, v.index}, Alt{VarKind::MomC, v.index}});
            break;
          default:
            throw std::logic_error("compose: moment letter in input");
        }
      }
      for (auto& v : t2.vars) {
        switch (v.kind) {
          case VarKind::Z:
            streams.push_back({Alt{VarKind::Z, v.index}, Alt{VarKind::MomA, v.index}});
            break;
          case VarKind::Zbar:
            streams.push_back({Alt{VarKind::Zpbar, v.index}, Alt{VarKind::MomC, v.index}});
            break;
          case VarKind::Zp:
          case VarKind::Zpbar:
            push_plain(v.kind, v.index);
            break;
          default:
            throw std::logic_error("compose: moment letter in input");
        }
      }
      TensorMonomial baseCoeff;
      baseCoeff.coeff = t1.coeff.coeff * t2.coeff.coeff;
      baseCoeff.factors = t1.coeff.factors;
      baseCoeff.factors.insert(baseCoeff.factors.end(), t2.coeff.factors.begin(),
                               t2.coeff.factors.end());
      // Expand alternatives.
      size_t combos = 1;
      for (auto& s : streams) combos *= s.size();
      for (size_t c = 0; c < combos; ++c) {
        size_t rem = c;
        std::vector<VarLetter> vars;
        std::vector<Index> As, Cs;
        for (auto& s : streams) {
          const Alt& a = s[rem % s.size()];
          rem /= s.size();
          if (a.kind == VarKind::MomA)
            As.push_back(a.index);
          else if (a.kind == VarKind::MomC)
            Cs.push_back(a.index);
          else
            vars.push_back({a.kind, a.index});
        }
        if (As.size() != Cs.size()) continue;
        size_t p = As.size();
        // Sum over pairings of the moment letters.
        std::vector<int> perm(p);
        for (size_t i = 0; i < p; ++i) perm[i] = static_cast<int>(i);
        do {
          KernelTerm t;
          t.coeff = baseCoeff;
          t.coeff.coeff = t.coeff.coeff * Scalar::pi_pow(-static_cast<int>(p));
          t.vars = vars;
          bool ok = true;
          for (size_t i = 0; i < p && ok; ++i)
            ok = delta_merge_vars(t.coeff, t.vars, As[i], Cs[perm[i]]);
          if (ok) out.add(std::move(t));
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
  }
  return out;
}

KernelPolynomial compose_fock_route(const KernelPolynomial& k1, const KernelPolynomial& k2) {
  KernelPolynomial out;
  for (auto& [ka, t1] : k1.terms()) {
    int shift = t1.max_symbolic_id() + 1;
    // Split t1 into first-slot part and second-slot multipliers.
    std::vector<VarLetter> firstSlot;
    std::vector<VarLetter> secondSlot;
    for (auto& v : t1.vars) {
      if (v.kind == VarKind::Z || v.kind == VarKind::Zbar)
        firstSlot.push_back(v);
      else
        secondSlot.push_back(v);
    }
    for (auto& [kb, t2raw] : k2.terms()) {
      KernelTerm inner = t2raw.shifted(shift);
      // u^gamma ubar^delta K2 in the first slot of K2.
      for (auto& v : secondSlot) {
        if (v.kind == VarKind::Zp)
          inner.vars.push_back({VarKind::Z, v.index});
        else
          inner.vars.push_back({VarKind::Zbar, v.index});
      }
      inner.coeff.coeff = inner.coeff.coeff * t1.coeff.coeff;
      inner.coeff.factors.insert(inner.coeff.factors.end(), t1.coeff.factors.begin(),
                                 t1.coeff.factors.end());
      KernelPolynomial proj = project(KernelPolynomial(std::move(inner)));
      for (auto& [kp, tp] : proj.terms()) {
        KernelTerm t = tp;
        t.vars.insert(t.vars.end(), firstSlot.begin(), firstSlot.end());
        out.add(std::move(t));
      }
    }
  }
  return out;
}

KernelPolynomial kernel_adjoint(const KernelPolynomial& k) {
  KernelPolynomial out;
  for (auto& [key, t] : k.terms()) {
    KernelTerm a;
    a.coeff = t.coeff.conj();
    for (auto& v : t.vars) {
      VarLetter w = v;
      switch (v.kind) {
        case VarKind::Z:
          w.kind = VarKind::Zpbar;
          break;
        case VarKind::Zbar:
          w.kind = VarKind::Zp;
          break;
        case VarKind::Zp:
          w.kind = VarKind::Zbar;
          break;
        case VarKind::Zpbar:
          w.kind = VarKind::Z;
          break;
        default:
          throw std::logic_error("adjoint: moment letter");
      }
      a.vars.push_back(w);
    }
    out.add(std::move(a));
  }
  return out;
}

KernelPolynomial pointwise_mul(const KernelPolynomial& a, const KernelPolynomial& b) {
  KernelPolynomial out;
  for (auto& [ka, ta] : a.terms()) {
    int shift = ta.max_symbolic_id() + 1;
    for (auto& [kb, tb] : b.terms()) {
      KernelTerm t = tb.shifted(shift);
      t.coeff.coeff = ta.coeff.coeff * t.coeff.coeff;
      t.coeff.factors.insert(t.coeff.factors.end(), ta.coeff.factors.begin(),
                             ta.coeff.factors.end());
      t.vars.insert(t.vars.end(), ta.vars.begin(), ta.vars.end());
      out.add(std::move(t));
    }
  }
  return out;
}

TensorPolynomial eval_origin(const KernelPolynomial& k) {
  TensorPolynomial out;
  for (auto& [key, t] : k.terms())
    if (t.vars.empty()) out.add(t.coeff);
  return out;
}

}  // namespace semiclass

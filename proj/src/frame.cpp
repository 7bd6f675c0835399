#include "semiclass/frame.hpp"

#include <stdexcept>

namespace semiclass {

namespace {

struct SlotState {
  Scalar scale = Scalar(1);
  std::vector<Letter> letters;       // z multiplications collected
  std::vector<Arg> dirs;             // resolved slot directions
  std::vector<Arg> derivDirs;        // resolved derivative directions
};

// Expands Rcal / Zvec / Zbarvec arguments into explicit directions with the
// accompanying coordinate letters; calls `emit` for every fully resolved
// branch.
void expand_args(const std::vector<CArg>& derivs, const std::vector<CArg>& slots, size_t di,
                 size_t si, SlotState st, int& fresh,
                 const std::function<void(const SlotState&)>& emit) {
  auto branch = [&](const CArg& c, bool isDeriv, size_t nd, size_t ns) {
    switch (c.kind) {
      case CArg::Dir: {
        SlotState s2 = st;
        (isDeriv ? s2.derivDirs : s2.dirs).push_back(c.dir);
        expand_args(derivs, slots, nd, ns, std::move(s2), fresh, emit);
        break;
      }
      case CArg::Rcal: {
        for (int half = 0; half < 2; ++half) {
          SlotState s2 = st;
          int u = fresh++;
          bool bar = (half == 1);
          s2.letters.push_back({bar ? LetterKind::Zbar : LetterKind::Z, Index(u, false)});
          (isDeriv ? s2.derivDirs : s2.dirs).push_back(Arg{bar, u});
          expand_args(derivs, slots, nd, ns, std::move(s2), fresh, emit);
        }
        break;
      }
      case CArg::Zvec: {
        SlotState s2 = st;
        int u = fresh++;
        s2.letters.push_back({LetterKind::Z, Index(u, false)});
        (isDeriv ? s2.derivDirs : s2.dirs).push_back(Arg{false, u});
        expand_args(derivs, slots, nd, ns, std::move(s2), fresh, emit);
        break;
      }
      case CArg::Zbarvec: {
        SlotState s2 = st;
        int u = fresh++;
        s2.letters.push_back({LetterKind::Zbar, Index(u, false)});
        (isDeriv ? s2.derivDirs : s2.dirs).push_back(Arg{true, u});
        expand_args(derivs, slots, nd, ns, std::move(s2), fresh, emit);
        break;
      }
    }
  };
  if (di < derivs.size()) {
    branch(derivs[di], true, di + 1, si);
  } else if (si < slots.size()) {
    branch(slots[si], false, di, si + 1);
  } else {
    emit(st);
  }
}

std::vector<Index> deriv_indices(const std::vector<Arg>& dirs) {
  std::vector<Index> out;
  for (auto& d : dirs) out.emplace_back(d.id, d.bar);
  return out;
}

OperatorExpression expand_tensor(const std::vector<CArg>& derivs, const std::vector<CArg>& slots,
                                 int& fresh,
                                 const std::function<void(const SlotState&, OperatorExpression&)>&
                                     emitTerm) {
  OperatorExpression out;
  expand_args(derivs, slots, 0, 0, SlotState{}, fresh,
              [&](const SlotState& st) { emitTerm(st, out); });
  return out;
}

}  // namespace

OperatorExpression frame_pair2(const Pair2Fn& H, int& fresh) {
  int u1 = fresh++;
  OperatorExpression a = H(Arg{false, u1}, Arg{true, u1});
  int u2 = fresh++;
  OperatorExpression b = H(Arg{true, u2}, Arg{false, u2});
  return (a + b).scaled(Scalar(2));
}

OperatorExpression frame_pair2J(const Pair2Fn& H, int& fresh) {
  int u1 = fresh++;
  OperatorExpression a = H(Arg{true, u1}, Arg{false, u1});
  int u2 = fresh++;
  OperatorExpression b = H(Arg{false, u2}, Arg{true, u2});
  return (a - b).scaled(Scalar(2) * Scalar::i());
}

OperatorExpression curv4(const std::vector<CArg>& derivs, CArg s1, CArg s2, CArg s3, CArg s4,
                         int& fresh) {
  return expand_tensor(derivs, {s1, s2, s3, s4}, fresh,
                       [](const SlotState& st, OperatorExpression& out) {
                         const auto& d = st.dirs;
                         if (d[0].bar == d[1].bar || d[2].bar == d[3].bar) return;
                         int sign = 1;
                         Arg k = d[0], m = d[1], l = d[2], q = d[3];
                         if (k.bar) {
                           std::swap(k, m);
                           sign = -sign;
                         }
                         if (l.bar) {
                           std::swap(l, q);
                           sign = -sign;
                         }
                         OpTerm t;
                         t.coeff.coeff = st.scale * Scalar(sign);
                         t.coeff.factors.push_back(
                             TensorFactor::curvR(Index(k.id, false), Index(m.id, true),
                                                 Index(l.id, false), Index(q.id, true),
                                                 deriv_indices(st.derivDirs)));
                         t.word = st.letters;
                         out.add(std::move(t));
                       });
}

OperatorExpression ric2(const std::vector<CArg>& derivs, CArg a, CArg b, int& fresh) {
  return expand_tensor(derivs, {a, b}, fresh,
                       [&fresh](const SlotState& st, OperatorExpression& out) {
                         const auto& d = st.dirs;
                         if (d[0].bar == d[1].bar) return;
                         Arg u = d[0], v = d[1];
                         if (u.bar) std::swap(u, v);  // ric is symmetric
                         int kk = fresh++;
                         OpTerm t;
                         t.coeff.coeff = st.scale * Scalar(2);
                         t.coeff.factors.push_back(TensorFactor::curvR(
                             Index(u.id, false), Index(kk, true), Index(kk, false),
                             Index(v.id, true), deriv_indices(st.derivDirs)));
                         t.word = st.letters;
                         out.add(std::move(t));
                       });
}

OperatorExpression curvE2(const std::vector<CArg>& derivs, CArg a, CArg b, int& fresh) {
  return expand_tensor(derivs, {a, b}, fresh,
                       [](const SlotState& st, OperatorExpression& out) {
                         const auto& d = st.dirs;
                         if (d[0].bar == d[1].bar) return;
                         int sign = 1;
                         Arg u = d[0], v = d[1];
                         if (u.bar) {
                           std::swap(u, v);
                           sign = -sign;  // 2-form antisymmetry
                         }
                         OpTerm t;
                         t.coeff.coeff = st.scale * Scalar(sign);
                         t.coeff.factors.push_back(
                             TensorFactor::curvE(Index(u.id, false), Index(v.id, true),
                                                 deriv_indices(st.derivDirs)));
                         t.word = st.letters;
                         out.add(std::move(t));
                       });
}

OperatorExpression nabla0(Arg a) {
  OpTerm t;
  t.word = {Letter{a.bar ? LetterKind::BPlus : LetterKind::B, Index(a.id, false)}};
  t.coeff.coeff = a.bar ? Scalar::rational(1, 2) : Scalar::rational(-1, 2);
  return OperatorExpression(std::move(t));
}

OperatorExpression br_term() {
  OpTerm t;
  t.coeff.coeff = Scalar(8);
  t.coeff.factors.push_back(
      TensorFactor::curvR(Index(0, false), Index(1, true), Index(1, false), Index(0, true)));
  return OperatorExpression(std::move(t));
}

OperatorExpression curvE_trace() {
  OpTerm t;
  t.coeff.factors.push_back(TensorFactor::curvE(Index(0, false), Index(0, true)));
  return OperatorExpression(std::move(t));
}

namespace {

bool op_letter_polarity(LetterKind k) {
  return k == LetterKind::B || k == LetterKind::Zbar;
}

// Renames the ids that are contracted within the term itself into the band
// starting at `base`; open ids (the caller's contraction hooks) survive.
OpTerm rename_closed_ids(const OpTerm& t, int& base) {
  std::map<int, std::pair<int, int>> occ;
  auto visit = [&](const Index& ix, bool pol) {
    if (ix.concrete) return;
    auto& c = occ[ix.id];
    (pol ? c.first : c.second)++;
  };
  for (auto& f : t.coeff.factors) {
    for (auto& ix : f.slots) visit(ix, !ix.bar);
    for (auto& ix : f.derivs) visit(ix, !ix.bar);
  }
  for (auto& l : t.word) visit(l.index, op_letter_polarity(l.kind));
  std::map<int, int> ren;
  for (auto& [id, c] : occ)
    if (c.first == 1 && c.second == 1) ren[id] = base++;
  OpTerm out = t;
  auto fix = [&](Index& ix) {
    if (!ix.concrete && ren.count(ix.id)) ix.id = ren[ix.id];
  };
  for (auto& f : out.coeff.factors) {
    for (auto& ix : f.slots) fix(ix);
    for (auto& ix : f.derivs) fix(ix);
  }
  for (auto& l : out.word) fix(l.index);
  return out;
}

}  // namespace

OperatorExpression op_mul_raw(const OperatorExpression& a, const OperatorExpression& b) {
  OperatorExpression r;
  for (auto& [ka, ta] : a.terms())
    for (auto& [kb, tb] : b.terms()) {
      int base = 1 << 22;
      OpTerm la = rename_closed_ids(ta, base);
      OpTerm lb = rename_closed_ids(tb, base);
      OpTerm t;
      t.coeff.coeff = la.coeff.coeff * lb.coeff.coeff;
      t.coeff.factors = la.coeff.factors;
      t.coeff.factors.insert(t.coeff.factors.end(), lb.coeff.factors.begin(),
                             lb.coeff.factors.end());
      t.word = la.word;
      t.word.insert(t.word.end(), lb.word.begin(), lb.word.end());
      r.add(std::move(t));
    }
  return r;
}

OperatorExpression op_dz(const OperatorExpression& f, Arg dir) {
  OperatorExpression r;
  LetterKind want = dir.bar ? LetterKind::Zbar : LetterKind::Z;
  for (auto& [k, t] : f.terms()) {
    for (auto& L : t.word)
      if (L.kind == LetterKind::B || L.kind == LetterKind::BPlus)
        throw std::invalid_argument("op_dz: expression is not a coordinate polynomial");
    for (size_t i = 0; i < t.word.size(); ++i) {
      if (t.word[i].kind != want) continue;
      OpTerm n = t;
      Index w = n.word[i].index;
      n.word.erase(n.word.begin() + i);
      // delta(dir, w): keep dir (it contracts the partner expression).
      if (w.concrete) throw std::logic_error("op_dz: concrete coordinate index");
      auto fix = [&](Index& ix) {
        if (!ix.concrete && ix.id == w.id) ix.id = dir.id;
      };
      for (auto& fct : n.coeff.factors) {
        for (auto& ix : fct.slots) fix(ix);
        for (auto& ix : fct.derivs) fix(ix);
      }
      for (auto& l : n.word) fix(l.index);
      r.add(std::move(n));
    }
  }
  return r;
}

}  // namespace semiclass

#include "semiclass/operator_algebra.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace semiclass {

namespace {

int letter_class(LetterKind k) {
  switch (k) {
    case LetterKind::B:
      return 0;
    case LetterKind::Z:
    case LetterKind::Zbar:
      return 1;
    case LetterKind::BPlus:
      return 2;
  }
  return 0;
}

bool letter_polarity(LetterKind k) {
  // true = pairs like an unbarred slot.
  switch (k) {
    case LetterKind::B:
    case LetterKind::Zbar:
      return true;
    case LetterKind::BPlus:
    case LetterKind::Z:
      return false;
  }
  return true;
}

const char* letter_name(LetterKind k) {
  switch (k) {
    case LetterKind::B:
      return "b";
    case LetterKind::BPlus:
      return "b+";
    case LetterKind::Z:
      return "z";
    case LetterKind::Zbar:
      return "zb";
  }
  return "?";
}

void rename_id(TensorMonomial& coeff, std::vector<Letter>& word, const Index& from,
               const Index& to) {
  auto fix = [&](Index& ix) {
    if (!ix.concrete && ix.id == from.id) {
      ix.id = to.id;
      ix.concrete = to.concrete;
    }
  };
  for (auto& f : coeff.factors) {
    for (auto& ix : f.slots) fix(ix);
    for (auto& ix : f.derivs) fix(ix);
  }
  for (auto& l : word) fix(l.index);
}

}  // namespace

bool delta_merge(TensorMonomial& coeff, std::vector<Letter>& word, const Index& x,
                 const Index& y) {
  if (x.concrete && y.concrete) return x.id == y.id;
  if (!x.concrete && !y.concrete && x.id == y.id) {
    coeff.coeff = coeff.coeff * Scalar::dim_n();
    return true;
  }
  if (x.concrete) {
    rename_id(coeff, word, y, x);
  } else {
    rename_id(coeff, word, x, y);
  }
  return true;
}

std::string OpTerm::canonicalize() {
  for (auto& f : coeff.factors) {
    f.sort_derivs();
    f.validate();
  }
  std::vector<CanonAtom> atoms;
  int group = 0;
  int prevClass = -1;
  for (size_t i = 0; i < word.size(); ++i) {
    int cls = letter_class(word[i].kind);
    if (cls != prevClass) {
      ++group;
      prevClass = cls;
    }
    CanonAtom a;
    a.skeleton = {1, static_cast<int>(word[i].kind)};
    a.idx = {word[i].index};
    a.polarity = {letter_polarity(word[i].kind)};
    a.group = group;
    a.tag = static_cast<int>(i);
    atoms.push_back(std::move(a));
  }
  for (size_t i = 0; i < coeff.factors.size(); ++i) {
    CanonAtom a = coeff.factors[i].atom();
    a.group = 1 << 20;
    a.tag = static_cast<int>(word.size() + i);
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
  std::vector<Letter> newWord;
  std::vector<TensorFactor> newFactors;
  for (auto& [tag, perm] : oc.order) {
    if (tag < static_cast<int>(word.size())) {
      Letter l = word[tag];
      if (!l.index.concrete && rename.count(l.index.id)) l.index.id = rename[l.index.id];
      newWord.push_back(l);
    } else {
      TensorFactor f = coeff.factors[tag - word.size()];
      f.apply_index_perm(perm);
      for (auto& ix : f.slots)
        if (!ix.concrete && rename.count(ix.id)) ix.id = rename[ix.id];
      for (auto& ix : f.derivs)
        if (!ix.concrete && rename.count(ix.id)) ix.id = rename[ix.id];
      f.sort_derivs();
      newFactors.push_back(std::move(f));
    }
  }
  word = std::move(newWord);
  coeff.factors = std::move(newFactors);
  std::ostringstream os;
  for (int v : oc.key) os << v << ".";
  return os.str();
}

int OpTerm::max_symbolic_id() const {
  int m = coeff.max_symbolic_id();
  for (auto& l : word)
    if (!l.index.concrete) m = std::max(m, l.index.id);
  return m;
}

OpTerm OpTerm::shifted(int offset) const {
  OpTerm t = *this;
  t.coeff = coeff.shifted(offset);
  for (auto& l : t.word)
    if (!l.index.concrete) l.index.id += offset;
  return t;
}

std::string OpTerm::str() const {
  std::ostringstream os;
  os << coeff.str() << " :";
  for (auto& l : word) {
    os << " " << letter_name(l.kind) << "_";
    if (l.index.concrete)
      os << l.index.id;
    else
      os << "i" << l.index.id;
  }
  return os.str();
}

void OperatorExpression::add(OpTerm t) {
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

OperatorExpression OperatorExpression::operator+(const OperatorExpression& o) const {
  OperatorExpression r = *this;
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

OperatorExpression OperatorExpression::operator-(const OperatorExpression& o) const {
  return *this + o.scaled(Scalar(-1));
}

OperatorExpression& OperatorExpression::operator+=(const OperatorExpression& o) {
  *this = *this + o;
  return *this;
}

OperatorExpression OperatorExpression::scaled(const Scalar& s) const {
  OperatorExpression r;
  if (s.is_zero()) return r;
  for (auto& [k, t] : terms_) {
    OpTerm st = t;
    st.coeff.coeff = t.coeff.coeff * s;
    if (!st.coeff.coeff.is_zero()) r.terms_.emplace(k, std::move(st));
  }
  return r;
}

bool OperatorExpression::operator==(const OperatorExpression& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (auto& [k, t] : terms_) {
    auto it = o.terms_.find(k);
    if (it == o.terms_.end() || !(it->second.coeff.coeff == t.coeff.coeff)) return false;
  }
  return true;
}

std::string OperatorExpression::render() const {
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

OperatorExpression op_mul(const OperatorExpression& a, const OperatorExpression& b) {
  OperatorExpression r;
  for (auto& [ka, ta] : a.terms()) {
    int shift = ta.max_symbolic_id() + 1;
    for (auto& [kb, tb] : b.terms()) {
      OpTerm t = tb.shifted(shift);
      t.coeff.coeff = ta.coeff.coeff * t.coeff.coeff;
      t.coeff.factors.insert(t.coeff.factors.begin(), ta.coeff.factors.begin(),
                             ta.coeff.factors.end());
      std::vector<Letter> w = ta.word;
      w.insert(w.end(), t.word.begin(), t.word.end());
      t.word = std::move(w);
      r.add(std::move(t));
    }
  }
  return r;
}

OperatorExpression op_adjoint(const OperatorExpression& e) {
  OperatorExpression r;
  for (auto& [k, t] : e.terms()) {
    OpTerm a;
    a.coeff = t.coeff.conj();
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
      Letter l = *it;
      switch (l.kind) {
        case LetterKind::B:
          l.kind = LetterKind::BPlus;
          break;
        case LetterKind::BPlus:
          l.kind = LetterKind::B;
          break;
        case LetterKind::Z:
          l.kind = LetterKind::Zbar;
          break;
        case LetterKind::Zbar:
          l.kind = LetterKind::Z;
          break;
      }
      a.word.push_back(l);
    }
    r.add(std::move(a));
  }
  return r;
}

OperatorExpression normal_order(const OperatorExpression& e) {
  OperatorExpression out;
  std::deque<OpTerm> work;
  for (auto& [k, t] : e.terms()) work.push_back(t);
  while (!work.empty()) {
    OpTerm t = std::move(work.front());
    work.pop_front();
    size_t viol = t.word.size();
    for (size_t i = 0; i + 1 < t.word.size(); ++i) {
      if (letter_class(t.word[i].kind) > letter_class(t.word[i + 1].kind)) {
        viol = i;
        break;
      }
    }
    if (viol == t.word.size()) {
      out.add(std::move(t));
      continue;
    }
    Letter L = t.word[viol];
    Letter R = t.word[viol + 1];
    // Swapped term.
    OpTerm sw = t;
    std::swap(sw.word[viol], sw.word[viol + 1]);
    work.push_back(std::move(sw));
    // Contraction term where applicable.
    Scalar deltaScale;
    bool hasDelta = false;
    if (L.kind == LetterKind::BPlus && R.kind == LetterKind::B) {
      deltaScale = Scalar(4) * Scalar::pi_pow(1);
      hasDelta = true;
    } else if (L.kind == LetterKind::BPlus && R.kind == LetterKind::Zbar) {
      deltaScale = Scalar(2);
      hasDelta = true;
    } else if (L.kind == LetterKind::Z && R.kind == LetterKind::B) {
      deltaScale = Scalar(2);
      hasDelta = true;
    }
    if (hasDelta) {
      OpTerm d = t;
      d.word.erase(d.word.begin() + viol, d.word.begin() + viol + 2);
      d.coeff.coeff = d.coeff.coeff * deltaScale;
      if (delta_merge(d.coeff, d.word, L.index, R.index)) work.push_back(std::move(d));
    }
  }
  return out;
}

OperatorExpression op_commutator(const OperatorExpression& a, const OperatorExpression& b) {
  return normal_order(op_mul(a, b) - op_mul(b, a));
}

OperatorExpression model_L() {
  OpTerm t;
  t.word = {Letter{LetterKind::B, Index(0, false)}, Letter{LetterKind::BPlus, Index(0, false)}};
  return OperatorExpression(std::move(t));
}

}  // namespace semiclass

#include "semiclass/tensor.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace semiclass {

namespace {

std::vector<std::string> g_obs_names;
std::mutex g_obs_mutex;

int kind_code(FactorKind k) { return static_cast<int>(k); }

bool deriv_less(const Index& a, const Index& b) {
  // Unbarred derivative indices before barred; ids compare within a class
  // only when concrete (symbolic ids are renamed by canonicalization anyway).
  if (a.bar != b.bar) return !a.bar;
  if (a.concrete != b.concrete) return a.concrete < b.concrete;
  if (a.concrete) return a.id < b.id;
  return false;
}

}  // namespace

int register_observable(const std::string& name) {
  std::lock_guard<std::mutex> lock(g_obs_mutex);
  for (size_t i = 0; i < g_obs_names.size(); ++i)
    if (g_obs_names[i] == name) return static_cast<int>(i);
  g_obs_names.push_back(name);
  return static_cast<int>(g_obs_names.size()) - 1;
}

const std::string& observable_name(int id) {
  std::lock_guard<std::mutex> lock(g_obs_mutex);
  static const std::string unknown = "?";
  if (id < 0 || id >= static_cast<int>(g_obs_names.size())) return unknown;
  return g_obs_names[id];
}

TensorFactor TensorFactor::curvR(Index k, Index m, Index l, Index q, std::vector<Index> d) {
  TensorFactor f;
  f.kind = FactorKind::CurvR;
  f.slots = {k, m, l, q};
  f.derivs = std::move(d);
  f.sort_derivs();
  f.validate();
  return f;
}

TensorFactor TensorFactor::ric(Index a, Index b, std::vector<Index> d) {
  TensorFactor f;
  f.kind = FactorKind::Ric;
  f.slots = {a, b};
  f.derivs = std::move(d);
  f.sort_derivs();
  f.validate();
  return f;
}

TensorFactor TensorFactor::curvE(Index a, Index b, std::vector<Index> d) {
  TensorFactor f;
  f.kind = FactorKind::CurvE;
  f.slots = {a, b};
  f.derivs = std::move(d);
  f.sort_derivs();
  f.validate();
  return f;
}

TensorFactor TensorFactor::sc() {
  TensorFactor f;
  f.kind = FactorKind::ScalarCurv;
  return f;
}

TensorFactor TensorFactor::lap_sc() {
  TensorFactor f;
  f.kind = FactorKind::LapScalarCurv;
  return f;
}

TensorFactor TensorFactor::fderiv(int obs, std::vector<Index> d) {
  TensorFactor f;
  f.kind = FactorKind::FDeriv;
  f.obs = obs;
  f.derivs = std::move(d);
  f.sort_derivs();
  f.validate();
  return f;
}

void TensorFactor::validate() const {
  auto fail = [&](const char* msg) {
    throw std::invalid_argument(std::string("TensorFactor: ") + msg + " in " +
                                str(std::map<int, std::string>{}));
  };
  switch (kind) {
    case FactorKind::CurvR:
      if (slots.size() != 4) fail("CurvR needs 4 slots");
      if (slots[0].bar || !slots[1].bar || slots[2].bar || !slots[3].bar)
        fail("CurvR slot bar pattern must be (u,b,u,b)");
      if (derivs.size() > 2) fail("at most second derivatives");
      break;
    case FactorKind::Ric:
    case FactorKind::CurvE:
      if (slots.size() != 2) fail("needs 2 slots");
      if (slots[0].bar || !slots[1].bar) fail("slot bar pattern must be (u,b)");
      if (derivs.size() > 2) fail("at most second derivatives");
      break;
    case FactorKind::ScalarCurv:
    case FactorKind::LapScalarCurv:
      if (!slots.empty() || !derivs.empty()) fail("scalar symbol carries no indices");
      break;
    case FactorKind::FDeriv:
      if (!slots.empty()) fail("FDeriv has no slots");
      if (derivs.size() > 6) fail("observable derivative order out of range");
      if (obs < 0) fail("FDeriv needs an observable tag");
      break;
  }
}

int TensorFactor::weight() const {
  switch (kind) {
    case FactorKind::CurvR:
    case FactorKind::Ric:
    case FactorKind::CurvE:
      return 2 + static_cast<int>(derivs.size());
    case FactorKind::ScalarCurv:
      return 2;
    case FactorKind::LapScalarCurv:
      return 4;
    case FactorKind::FDeriv:
      return static_cast<int>(derivs.size());
  }
  return 0;
}

void TensorFactor::sort_derivs() { std::stable_sort(derivs.begin(), derivs.end(), deriv_less); }

TensorFactor TensorFactor::conj() const {
  TensorFactor f = *this;
  for (auto& ix : f.slots) ix = ix.flipped();
  for (auto& ix : f.derivs) ix = ix.flipped();
  switch (kind) {
    case FactorKind::CurvR:
      // conj R_{k m l q} = R_{m k q l}: swap within each slot pair.
      std::swap(f.slots[0], f.slots[1]);
      std::swap(f.slots[2], f.slots[3]);
      break;
    case FactorKind::Ric:
    case FactorKind::CurvE:
      std::swap(f.slots[0], f.slots[1]);
      break;
    default:
      break;
  }
  f.sort_derivs();
  f.validate();
  return f;
}

CanonAtom TensorFactor::atom() const {
  CanonAtom a;
  a.skeleton = {0, kind_code(kind), obs, static_cast<int>(slots.size()),
                static_cast<int>(derivs.size())};
  for (auto& s : slots) {
    a.idx.push_back(s);
    a.polarity.push_back(!s.bar);
  }
  for (auto& d : derivs) {
    a.idx.push_back(d);
    a.polarity.push_back(!d.bar);
  }
  // Index permutations: slot symmetries of the curvature tensor, and
  // arbitrary reordering of commuting derivative indices within a bar class.
  std::vector<std::vector<int>> slotPerms;
  if (kind == FactorKind::CurvR)
    slotPerms = {{0, 1, 2, 3}, {2, 1, 0, 3}, {0, 3, 2, 1}, {2, 3, 0, 1}};
  else {
    std::vector<int> ident(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) ident[i] = static_cast<int>(i);
    slotPerms = {ident};
  }
  const int ns = static_cast<int>(slots.size());
  size_t uCount = 0;
  while (uCount < derivs.size() && !derivs[uCount].bar) ++uCount;
  std::vector<int> du, db;
  for (size_t i = 0; i < uCount; ++i) du.push_back(ns + static_cast<int>(i));
  for (size_t i = uCount; i < derivs.size(); ++i) db.push_back(ns + static_cast<int>(i));
  std::vector<std::vector<int>> derivPerms;
  std::sort(du.begin(), du.end());
  do {
    auto dbb = db;
    std::sort(dbb.begin(), dbb.end());
    do {
      std::vector<int> d = du;
      d.insert(d.end(), dbb.begin(), dbb.end());
      derivPerms.push_back(std::move(d));
    } while (std::next_permutation(dbb.begin(), dbb.end()));
  } while (std::next_permutation(du.begin(), du.end()));
  for (auto& sp : slotPerms)
    for (auto& dp : derivPerms) {
      std::vector<int> full = sp;
      full.insert(full.end(), dp.begin(), dp.end());
      a.variants.push_back(std::move(full));
    }
  if (a.variants.size() == 1 && a.variants[0].size() == a.idx.size()) {
    bool ident = true;
    for (size_t i = 0; i < a.variants[0].size(); ++i)
      if (a.variants[0][i] != static_cast<int>(i)) ident = false;
    if (ident) a.variants.clear();
  }
  return a;
}


void TensorFactor::apply_index_perm(const std::vector<int>& perm) {
  if (perm.empty()) return;
  std::vector<Index> all = slots;
  all.insert(all.end(), derivs.begin(), derivs.end());
  std::vector<Index> out(all.size());
  for (size_t i = 0; i < perm.size(); ++i) out[i] = all[perm[i]];
  for (size_t i = perm.size(); i < all.size(); ++i) out[i] = all[i];
  for (size_t i = 0; i < slots.size(); ++i) slots[i] = out[i];
  for (size_t i = 0; i < derivs.size(); ++i) derivs[i] = out[slots.size() + i];
}

std::string TensorFactor::str(const std::map<int, std::string>& names) const {
  auto ix_name = [&](const Index& ix) {
    std::string base;
    auto it = names.find(ix.id);
    if (it != names.end()) {
      base = it->second;
    } else if (ix.concrete && ix.id >= kFreeIndexBase) {
      base = "X" + std::to_string(ix.id - kFreeIndexBase);
    } else if (ix.concrete) {
      base = std::to_string(ix.id);
    } else {
      base = "i" + std::to_string(ix.id);
    }
    return (ix.bar ? "~" : "") + base;
  };
  std::ostringstream os;
  switch (kind) {
    case FactorKind::CurvR:
      os << "R";
      break;
    case FactorKind::Ric:
      os << "ric";
      break;
    case FactorKind::CurvE:
      os << "RE";
      break;
    case FactorKind::ScalarCurv:
      return "sc";
    case FactorKind::LapScalarCurv:
      return "Dsc";
    case FactorKind::FDeriv:
      os << observable_name(obs);
      break;
  }
  os << "[";
  for (size_t i = 0; i < slots.size(); ++i) os << (i ? "," : "") << ix_name(slots[i]);
  if (!derivs.empty()) {
    os << ";";
    for (size_t i = 0; i < derivs.size(); ++i) os << (i ? "," : "") << ix_name(derivs[i]);
  }
  os << "]";
  return os.str();
}

std::string TensorMonomial::canonicalize() {
  for (auto& f : factors) {
    f.sort_derivs();
    f.validate();
  }
  std::vector<CanonAtom> atoms;
  atoms.reserve(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) {
    CanonAtom a = factors[i].atom();
    a.tag = static_cast<int>(i);
    atoms.push_back(std::move(a));
  }
  // Open indices (not a closed (u,b) pair within this monomial) keep their
  // identity: they are contraction hooks for a later product.
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
  // Dummy ids become consecutive ranks, skipping pinned values so open
  // indices are never captured.
  std::map<int, int> rename;
  {
    int next = 0;
    std::vector<std::pair<int, int>> byRank(oc.relabel.begin(), oc.relabel.end());
    std::sort(byRank.begin(), byRank.end(),
              [](auto& a, auto& b) { return a.second < b.second; });
    for (auto& [origId, rank] : byRank) {
      while (pinned.count(next)) ++next;
      rename[origId] = next++;
    }
  }
  std::vector<TensorFactor> out;
  out.reserve(factors.size());
  for (auto& [tag, perm] : oc.order) {
    TensorFactor f = factors[tag];
    f.apply_index_perm(perm);
    for (auto& ix : f.slots)
      if (!ix.concrete && rename.count(ix.id)) ix.id = rename[ix.id];
    for (auto& ix : f.derivs)
      if (!ix.concrete && rename.count(ix.id)) ix.id = rename[ix.id];
    f.sort_derivs();
    out.push_back(std::move(f));
  }
  factors = std::move(out);
  std::ostringstream os;
  for (int v : oc.key) os << v << ".";
  return os.str();
}

TensorMonomial TensorMonomial::conj() const {
  TensorMonomial m;
  m.coeff = coeff.conj();
  for (auto& f : factors) m.factors.push_back(f.conj());
  return m;
}

int TensorMonomial::weight() const {
  int w = 0;
  for (auto& f : factors) w += f.weight();
  return w;
}

int TensorMonomial::max_symbolic_id() const {
  int m = -1;
  for (auto& f : factors) {
    for (auto& ix : f.slots)
      if (!ix.concrete) m = std::max(m, ix.id);
    for (auto& ix : f.derivs)
      if (!ix.concrete) m = std::max(m, ix.id);
  }
  return m;
}

TensorMonomial TensorMonomial::shifted(int offset) const {
  TensorMonomial m = *this;
  for (auto& f : m.factors) {
    for (auto& ix : f.slots)
      if (!ix.concrete) ix.id += offset;
    for (auto& ix : f.derivs)
      if (!ix.concrete) ix.id += offset;
  }
  return m;
}

void TensorMonomial::validate_pairing() const {
  std::map<int, std::pair<int, int>> occ;  // id -> (U count, B count)
  auto visit = [&](const Index& ix, bool polarity) {
    if (ix.concrete) return;
    auto& c = occ[ix.id];
    (polarity ? c.first : c.second)++;
  };
  for (auto& f : factors) {
    for (auto& ix : f.slots) visit(ix, !ix.bar);
    for (auto& ix : f.derivs) visit(ix, !ix.bar);
  }
  for (auto& [id, c] : occ)
    if (!(c.first == 1 && c.second == 1))
      throw std::invalid_argument("TensorMonomial: index i" + std::to_string(id) +
                                  " is not a contracted (u,b) pair in " + str());
}

std::string TensorMonomial::str() const {
  static const char* letters[] = {"k", "m", "l", "q", "s", "t", "u", "v",
                                  "a", "b", "c", "d", "e", "g", "h", "j"};
  std::map<int, std::string> names;
  int next = 0;
  auto name_of = [&](const Index& ix) {
    if (ix.concrete) return;
    if (!names.count(ix.id)) {
      names[ix.id] =
          (next < 16) ? letters[next] : ("w" + std::to_string(next));
      ++next;
    }
  };
  for (auto& f : factors) {
    for (auto& ix : f.slots) name_of(ix);
    for (auto& ix : f.derivs) name_of(ix);
  }
  std::ostringstream os;
  os << "(" << coeff.str() << ")";
  for (auto& f : factors) os << " " << f.str(names);
  return os.str();
}

TensorPolynomial TensorPolynomial::constant(Scalar s) {
  TensorPolynomial p;
  if (!s.is_zero()) p.add(TensorMonomial(std::move(s)));
  return p;
}

void TensorPolynomial::add(TensorMonomial m) {
  if (m.coeff.is_zero()) return;
  std::string key = m.canonicalize();
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), std::move(m));
  } else {
    it->second.coeff += m.coeff;
    if (it->second.coeff.is_zero()) terms_.erase(it);
  }
}

TensorPolynomial TensorPolynomial::operator+(const TensorPolynomial& o) const {
  TensorPolynomial r = *this;
  for (auto& [k, m] : o.terms_) {
    auto it = r.terms_.find(k);
    if (it == r.terms_.end()) {
      r.terms_.emplace(k, m);
    } else {
      it->second.coeff += m.coeff;
      if (it->second.coeff.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

TensorPolynomial TensorPolynomial::operator-(const TensorPolynomial& o) const {
  return *this + o.scaled(Scalar(-1));
}

TensorPolynomial& TensorPolynomial::operator+=(const TensorPolynomial& o) {
  *this = *this + o;
  return *this;
}

TensorPolynomial TensorPolynomial::operator*(const TensorPolynomial& o) const {
  TensorPolynomial r;
  for (auto& [ka, ma] : terms_) {
    int shift = ma.max_symbolic_id() + 1;
    for (auto& [kb, mb] : o.terms_) {
      TensorMonomial m = mb.shifted(shift);
      m.coeff = ma.coeff * mb.coeff;
      m.factors.insert(m.factors.begin(), ma.factors.begin(), ma.factors.end());
      r.add(std::move(m));
    }
  }
  return r;
}

TensorPolynomial TensorPolynomial::scaled(const Scalar& s) const {
  TensorPolynomial r;
  if (s.is_zero()) return r;
  for (auto& [k, m] : terms_) {
    TensorMonomial sm = m;
    sm.coeff = m.coeff * s;
    if (!sm.coeff.is_zero()) r.terms_.emplace(k, std::move(sm));
  }
  return r;
}

TensorPolynomial TensorPolynomial::conj() const {
  TensorPolynomial r;
  for (auto& [k, m] : terms_) r.add(m.conj());
  return r;
}

bool TensorPolynomial::operator==(const TensorPolynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (auto& [k, m] : terms_) {
    auto it = o.terms_.find(k);
    if (it == o.terms_.end() || !(it->second.coeff == m.coeff)) return false;
  }
  return true;
}

int TensorPolynomial::max_symbolic_id() const {
  int m = -1;
  for (auto& [k, t] : terms_) m = std::max(m, t.max_symbolic_id());
  return m;
}

std::set<int> TensorPolynomial::weights() const {
  std::set<int> w;
  for (auto& [k, t] : terms_) w.insert(t.weight());
  return w;
}

TensorPolynomial TensorPolynomial::substitute_free(int freeId, const Index& target) const {
  TensorPolynomial r;
  for (auto& [k, m] : terms_) {
    TensorMonomial t = m;
    for (auto& f : t.factors) {
      for (auto& ix : f.slots)
        if (ix.concrete && ix.id == kFreeIndexBase + freeId) {
          bool bar = ix.bar;
          ix = target;
          ix.bar = bar;  // the generator fixes the bar pattern at each occurrence
        }
      for (auto& ix : f.derivs)
        if (ix.concrete && ix.id == kFreeIndexBase + freeId) {
          bool bar = ix.bar;
          ix = target;
          ix.bar = bar;
        }
    }
    r.add(std::move(t));
  }
  return r;
}

std::set<int> TensorPolynomial::free_band_ids() const {
  std::set<int> out;
  for (auto& [k, m] : terms_)
    for (auto& f : m.factors) {
      for (auto& ix : f.slots)
        if (ix.concrete && ix.id >= kFreeIndexBase) out.insert(ix.id - kFreeIndexBase);
      for (auto& ix : f.derivs)
        if (ix.concrete && ix.id >= kFreeIndexBase) out.insert(ix.id - kFreeIndexBase);
    }
  return out;
}

TensorPolynomial TensorPolynomial::drop_curvE() const {
  TensorPolynomial r;
  for (auto& [k, m] : terms_) {
    bool hasE = false;
    for (auto& f : m.factors)
      if (f.kind == FactorKind::CurvE) hasE = true;
    if (!hasE) r.add(m);
  }
  return r;
}

std::string TensorPolynomial::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, m] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << m.str();
  }
  return os.str();
}

TensorPolynomial ric_expanded(Index a, Index b, std::vector<Index> d) {
  int fresh = std::max(a.concrete ? 0 : a.id, b.concrete ? 0 : b.id) + 1;
  for (auto& ix : d)
    if (!ix.concrete) fresh = std::max(fresh, ix.id + 1);
  Index k(fresh, false), kb(fresh, true);
  TensorMonomial m(Scalar(2));
  m.factors.push_back(TensorFactor::curvR(a, kb, k, b, std::move(d)));
  return TensorPolynomial(std::move(m));
}

TensorPolynomial sc_expanded() {
  TensorMonomial m(Scalar(8));
  m.factors.push_back(
      TensorFactor::curvR(Index(0, false), Index(1, true), Index(1, false), Index(0, true)));
  return TensorPolynomial(std::move(m));
}

namespace {

TensorMonomial rename_closed_mono(const TensorMonomial& m, int& base) {
  std::map<int, std::pair<int, int>> occ;
  for (auto& f : m.factors) {
    for (auto& ix : f.slots)
      if (!ix.concrete) (ix.bar ? occ[ix.id].second : occ[ix.id].first)++;
    for (auto& ix : f.derivs)
      if (!ix.concrete) (ix.bar ? occ[ix.id].second : occ[ix.id].first)++;
  }
  std::map<int, int> ren;
  for (auto& [id, c] : occ)
    if (c.first == 1 && c.second == 1) ren[id] = base++;
  TensorMonomial out = m;
  for (auto& f : out.factors) {
    for (auto& ix : f.slots)
      if (!ix.concrete && ren.count(ix.id)) ix.id = ren[ix.id];
    for (auto& ix : f.derivs)
      if (!ix.concrete && ren.count(ix.id)) ix.id = ren[ix.id];
  }
  return out;
}

}  // namespace

TensorPolynomial contract_mul(const TensorPolynomial& a, const TensorPolynomial& b) {
  TensorPolynomial r;
  for (auto& [ka, ma] : a.terms())
    for (auto& [kb, mb] : b.terms()) {
      int base = 1 << 22;
      TensorMonomial la = rename_closed_mono(ma, base);
      TensorMonomial lb = rename_closed_mono(mb, base);
      TensorMonomial m;
      m.coeff = la.coeff * lb.coeff;
      m.factors = la.factors;
      m.factors.insert(m.factors.end(), lb.factors.begin(), lb.factors.end());
      r.add(std::move(m));
    }
  return r;
}

}  // namespace semiclass

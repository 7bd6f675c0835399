#include "semiclass/relations.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace semiclass {

namespace {

using Key = std::string;
using Vec = std::map<Key, GaussRat>;

struct Universe {
  std::map<Key, TensorMonomial> monos;  // key -> structure with unit coefficient
  bool insert(const TensorMonomial& m, std::vector<Key>* fresh) {
    TensorMonomial unit = m;
    unit.coeff = Scalar(1);
    Key k = unit.canonicalize();
    if (monos.count(k)) return false;
    monos.emplace(k, std::move(unit));
    if (fresh) fresh->push_back(k);
    return true;
  }
};

// All ways to permute generator derivative indices within equal-bar groups
// (the lists are sorted multisets, so matching must try each alignment).
void deriv_alignments(const std::vector<Index>& gm, std::vector<std::vector<int>>& out) {
  std::vector<int> ids(gm.size());
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  size_t split = 0;
  while (split < gm.size() && !gm[split].bar) ++split;
  std::vector<int> u(ids.begin(), ids.begin() + split), b(ids.begin() + split, ids.end());
  std::sort(u.begin(), u.end());
  std::sort(b.begin(), b.end());
  do {
    auto bb = b;
    std::sort(bb.begin(), bb.end());
    do {
      std::vector<int> full = u;
      full.insert(full.end(), bb.begin(), bb.end());
      out.push_back(full);
    } while (std::next_permutation(bb.begin(), bb.end()));
  } while (std::next_permutation(u.begin(), u.end()));
}

struct Match {
  std::map<int, Index> dummyMap;  // generator symbolic id -> target index
  std::map<int, Index> freeMap;   // generator free-band id -> target index
  std::vector<char> used;         // factors of u consumed
};

bool unify_index(const Index& g, const Index& t, Match& m) {
  if (g.bar != t.bar) return false;
  if (g.concrete && g.id >= kFreeIndexBase) {
    auto it = m.freeMap.find(g.id - kFreeIndexBase);
    Index bare(t.id, false, t.concrete);
    if (it == m.freeMap.end()) {
      m.freeMap.emplace(g.id - kFreeIndexBase, bare);
      return true;
    }
    return it->second.id == bare.id && it->second.concrete == bare.concrete;
  }
  if (g.concrete) return t.concrete && t.id == g.id && t.id < kFreeIndexBase;
  auto it = m.dummyMap.find(g.id);
  Index bare(t.id, false, t.concrete);
  if (it == m.dummyMap.end()) {
    m.dummyMap.emplace(g.id, bare);
    return true;
  }
  return it->second.id == bare.id && it->second.concrete == bare.concrete;
}

bool unify_factor(const TensorFactor& g, const TensorFactor& u, Match& m) {
  if (g.kind != u.kind || g.obs != u.obs) return false;
  if (g.slots.size() != u.slots.size() || g.derivs.size() != u.derivs.size()) return false;
  static const std::vector<std::vector<int>> curvRperms = {
      {0, 1, 2, 3}, {2, 1, 0, 3}, {0, 3, 2, 1}, {2, 3, 0, 1}};
  const std::vector<std::vector<int>>* slotPerms;
  static const std::vector<std::vector<int>> ident2 = {{0, 1}};
  static const std::vector<std::vector<int>> ident0 = {{}};
  if (g.kind == FactorKind::CurvR)
    slotPerms = &curvRperms;
  else if (g.slots.size() == 2)
    slotPerms = &ident2;
  else
    slotPerms = &ident0;
  std::vector<std::vector<int>> dAligns;
  deriv_alignments(g.derivs, dAligns);
  for (auto& sp : *slotPerms) {
    for (auto& da : dAligns) {
      Match trial = m;
      bool ok = true;
      for (size_t i = 0; ok && i < sp.size(); ++i)
        ok = unify_index(g.slots[sp[i]], u.slots[i], trial);
      for (size_t i = 0; ok && i < da.size(); ++i)
        ok = unify_index(g.derivs[da[i]], u.derivs[i], trial);
      if (ok) {
        m = trial;
        return true;
      }
    }
  }
  return false;
}

void find_embeddings(const std::vector<TensorFactor>& gfs, size_t gi, const TensorMonomial& u,
                     Match m, std::vector<Match>& out) {
  if (gi == gfs.size()) {
    out.push_back(std::move(m));
    return;
  }
  for (size_t ui = 0; ui < u.factors.size(); ++ui) {
    if (m.used[ui]) continue;
    Match trial = m;
    trial.used[ui] = 1;
    if (unify_factor(gfs[gi], u.factors[ui], trial))
      find_embeddings(gfs, gi + 1, u, std::move(trial), out);
  }
}

// Relation instance: substitute the matched free indices into every monomial
// of the generator and append the leftover factors of u.
TensorPolynomial build_instance(const Relation& rel, const TensorMonomial& u, const Match& m) {
  int shift = u.max_symbolic_id() + 1;
  std::vector<TensorFactor> leftover;
  for (size_t i = 0; i < u.factors.size(); ++i)
    if (!m.used[i]) leftover.push_back(u.factors[i]);
  TensorPolynomial inst;
  for (auto& [key, gm] : rel.poly.terms()) {
    TensorMonomial t = gm.shifted(shift);
    TensorPolynomial piece(std::move(t));
    for (auto& [fid, tgt] : m.freeMap) piece = piece.substitute_free(fid, tgt);
    for (auto& [k2, t2] : piece.terms()) {
      TensorMonomial prod = t2;
      prod.factors.insert(prod.factors.end(), leftover.begin(), leftover.end());
      inst.add(std::move(prod));
    }
  }
  return inst;
}

void reduce_by(Vec& v, const std::vector<std::pair<Key, Vec>>& basis) {
  for (auto& [pivot, row] : basis) {
    auto it = v.find(pivot);
    if (it == v.end()) continue;
    GaussRat c = it->second;
    for (auto& [k, rv] : row) {
      auto vit = v.find(k);
      GaussRat nv = (vit == v.end() ? GaussRat() : vit->second) - c * rv;
      if (nv.is_zero()) {
        if (vit != v.end()) v.erase(vit);
      } else if (vit == v.end()) {
        v.emplace(k, nv);
      } else {
        vit->second = nv;
      }
    }
  }
}

}  // namespace

void RelationSet::add(std::string name, TensorPolynomial p) {
  auto w = p.weights();
  if (w.size() > 1)
    throw std::invalid_argument("RelationSet: generator '" + name + "' not homogeneous");
  gens_.push_back({std::move(name), std::move(p)});
}

RelationSet RelationSet::standard() {
  RelationSet rs;
  auto U = [](int id) { return Index(id, false); };
  auto B = [](int id) { return Index(id, true); };
  auto FU = [](int k) { return free_index(k, false); };
  auto FB = [](int k) { return free_index(k, true); };

  {  // sc = 8 R_{m q q m}
    TensorPolynomial p;
    p.add(TensorMonomial(Scalar(1), {TensorFactor::sc()}));
    p.add(TensorMonomial(Scalar(-8), {TensorFactor::curvR(U(0), B(1), U(1), B(0))}));
    rs.add("sc-def", std::move(p));
  }
  {  // Dsc = -32 R_{k m q q; m k}
    TensorPolynomial p;
    p.add(TensorMonomial(Scalar(1), {TensorFactor::lap_sc()}));
    p.add(TensorMonomial(Scalar(32),
                         {TensorFactor::curvR(U(0), B(1), U(2), B(2), {U(1), B(0)})}));
    rs.add("lap-sc-mixed", std::move(p));
  }
  {  // Dsc = -32 R_{m m q q; k k}
    TensorPolynomial p;
    p.add(TensorMonomial(Scalar(1), {TensorFactor::lap_sc()}));
    p.add(TensorMonomial(Scalar(32),
                         {TensorFactor::curvR(U(0), B(0), U(1), B(1), {U(2), B(2)})}));
    rs.add("lap-sc-traced", std::move(p));
  }
  {  // ric_{X0 X1} = 2 R_{X0 k k X1}
    TensorPolynomial p;
    p.add(TensorMonomial(Scalar(1), {TensorFactor::ric(FU(0), FB(1))}));
    p.add(TensorMonomial(Scalar(-2), {TensorFactor::curvR(FU(0), B(0), U(0), FB(1))}));
    rs.add("ric-def", std::move(p));
  }
  {  // contracted second Bianchi: R_{l l m m; X} = R_{l l m X; m} (barred X)
    TensorPolynomial p;
    p.add(TensorMonomial(Scalar(1),
                         {TensorFactor::curvR(U(0), B(0), U(1), B(1), {FB(0)})}));
    p.add(TensorMonomial(Scalar(-1),
                         {TensorFactor::curvR(U(0), B(0), U(1), FB(0), {B(1)})}));
    rs.add("bianchi2-traced-bar", std::move(p));
    TensorPolynomial q;
    q.add(TensorMonomial(Scalar(1),
                         {TensorFactor::curvR(U(0), B(0), U(1), B(1), {FU(0)})}));
    q.add(TensorMonomial(Scalar(-1),
                         {TensorFactor::curvR(U(0), B(0), FU(0), B(1), {U(1)})}));
    rs.add("bianchi2-traced-unbar", std::move(q));
  }
  {  // full second Bianchi: R_{X0 X1 X2 X3; X4} = R_{X4 X1 X2 X3; X0}
    TensorPolynomial p;
    p.add(TensorMonomial(Scalar(1),
                         {TensorFactor::curvR(FU(0), FB(1), FU(2), FB(3), {FU(4)})}));
    p.add(TensorMonomial(Scalar(-1),
                         {TensorFactor::curvR(FU(4), FB(1), FU(2), FB(3), {FU(0)})}));
    rs.add("bianchi2-unbar", std::move(p));
    TensorPolynomial q;
    q.add(TensorMonomial(Scalar(1),
                         {TensorFactor::curvR(FU(0), FB(1), FU(2), FB(3), {FB(4)})}));
    q.add(TensorMonomial(Scalar(-1),
                         {TensorFactor::curvR(FU(0), FB(4), FU(2), FB(3), {FB(1)})}));
    rs.add("bianchi2-bar", std::move(q));
  }
  {  // twist curvature is closed: RE_{X0 X1; X2} = RE_{X2 X1; X0}
    TensorPolynomial p;
    p.add(TensorMonomial(Scalar(1), {TensorFactor::curvE(FU(0), FB(1), {FU(2)})}));
    p.add(TensorMonomial(Scalar(-1), {TensorFactor::curvE(FU(2), FB(1), {FU(0)})}));
    rs.add("dRE-unbar", std::move(p));
    TensorPolynomial q;
    q.add(TensorMonomial(Scalar(1), {TensorFactor::curvE(FU(0), FB(1), {FB(2)})}));
    q.add(TensorMonomial(Scalar(-1), {TensorFactor::curvE(FU(0), FB(2), {FB(1)})}));
    rs.add("dRE-bar", std::move(q));
  }
  {  // traced Bianchi of the twist: RE_{m k; k m} = RE_{k k; m m}, and conjugate
    TensorPolynomial p;
    p.add(TensorMonomial(Scalar(1), {TensorFactor::curvE(U(0), B(1), {U(1), B(0)})}));
    p.add(TensorMonomial(Scalar(-1), {TensorFactor::curvE(U(0), B(0), {U(1), B(1)})}));
    rs.add("RE-bianchi", std::move(p));
    TensorPolynomial c;
    c.add(TensorMonomial(Scalar(1), {TensorFactor::curvE(U(0), B(1), {U(1), B(0)})}).conj());
    c.add(TensorMonomial(Scalar(-1), {TensorFactor::curvE(U(0), B(0), {U(1), B(1)})}).conj());
    rs.add("RE-bianchi-conj", std::move(c));
  }
  return rs;
}

ModResult equal_mod_relations(const TensorPolynomial& p, const TensorPolynomial& q,
                              const RelationSet& rels, size_t maxUniverse, int maxRounds) {
  ModResult res;
  TensorPolynomial D = p - q;
  if (D.is_zero()) {
    res.equal = true;
    return res;
  }
  auto w = D.weights();
  if (w.size() > 1) {
    std::ostringstream os;
    os << "equal_mod_relations: difference not homogeneous (weights:";
    for (int x : w) os << " " << x;
    os << ")";
    throw std::invalid_argument(os.str());
  }
  if (*w.begin() > 8)
    throw std::runtime_error("equal_mod_relations: weight " + std::to_string(*w.begin()) +
                             " exceeds the enumeration budget (8)");

  Universe uni;
  std::vector<Key> fresh;
  for (auto& [k, m] : D.terms()) uni.insert(m, &fresh);

  std::vector<std::pair<Key, Vec>> basis;  // (pivot, normalized row)
  std::set<std::string> seenInstances;

  auto add_instance = [&](const TensorPolynomial& inst, std::vector<Key>* freshOut) {
    if (inst.is_zero()) return;
    Vec v;
    for (auto& [k, m] : inst.terms()) {
      uni.insert(m, freshOut);
      v[k] = m.coeff.pure();
    }
    std::ostringstream sig;
    for (auto& [k, c] : v) sig << k << "|" << c.str() << ";";
    if (!seenInstances.insert(sig.str()).second) return;
    reduce_by(v, basis);
    if (v.empty()) return;
    Key pivot = v.begin()->first;
    GaussRat lead = v.begin()->second;
    GaussRat inv = lead.inv();
    for (auto& [k, c] : v) c = c * inv;
    basis.emplace_back(pivot, std::move(v));
  };

  for (int round = 0; round < maxRounds && !fresh.empty(); ++round) {
    std::vector<Key> work;
    work.swap(fresh);
    for (auto& key : work) {
      TensorMonomial u = uni.monos.at(key);
      for (auto& rel : rels.generators()) {
        for (auto& [gk, gm] : rel.poly.terms()) {
          std::vector<Match> matches;
          Match seed;
          seed.used.assign(u.factors.size(), 0);
          find_embeddings(gm.factors, 0, u, seed, matches);
          for (auto& m : matches) {
            TensorPolynomial inst = build_instance(rel, u, m);
            add_instance(inst, &fresh);
            if (uni.monos.size() > maxUniverse)
              throw std::runtime_error(
                  "equal_mod_relations: monomial universe exceeded budget at weight " +
                  std::to_string(*w.begin()));
          }
        }
      }
    }
  }

  // Grade-split reduction of D.
  std::map<std::pair<int, int>, Vec> graded;
  for (auto& [k, m] : D.terms())
    for (auto& [pe, ne, c] : m.coeff.parts()) graded[{pe, ne}][k] = c;

  TensorPolynomial residue;
  for (auto& [grade, v] : graded) {
    Vec r = v;
    reduce_by(r, basis);
    for (auto& [k, c] : r) {
      TensorMonomial m = uni.monos.at(k);
      m.coeff = Scalar::graded(grade.first, grade.second, c);
      residue.add(std::move(m));
    }
  }
  res.universe = uni.monos.size();
  res.equal = residue.is_zero();
  res.residue = std::move(residue);
  return res;
}

}  // namespace semiclass

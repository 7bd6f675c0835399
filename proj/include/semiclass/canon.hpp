#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace semiclass {

// A tensor/letter index. Symbolic ids participate in Einstein pairing and
// canonical renaming; concrete ids (numeric, used by the n=1..2 oracles and
// random kernel tests) are fixed. Pinned ids are symbolic but must keep their
// identity across monomials (free indices of relation generators, open
// contraction hooks).
struct Index {
  int id = 0;
  bool bar = false;
  bool concrete = false;

  Index() = default;
  Index(int i, bool b, bool c = false) : id(i), bar(b), concrete(c) {}

  Index flipped() const { return Index(id, !bar, concrete); }

  bool operator==(const Index& o) const {
    return id == o.id && bar == o.bar && concrete == o.concrete;
  }
};

// One atom of a term: a tensor factor, a kernel variable, or an operator
// letter. `skeleton` is the index-free structural code; `idx` are the indices
// in slot order with their pairing polarity (true = pairs like an unbarred
// slot). `sym` selects the slot-symmetry class applied during canonical
// labeling. Atoms with the same `group` commute among themselves; groups are
// emitted in increasing order (operator words are split into runs of
// mutually commuting letters; commuting factors share one trailing group).
struct CanonAtom {
  std::vector<int> skeleton;
  std::vector<Index> idx;
  std::vector<bool> polarity;
  // Full-length index permutations the atom may be rewritten with (slot
  // symmetries and commuting derivative multisets); empty means identity.
  std::vector<std::vector<int>> variants;
  int group = 1 << 20;
  int tag = -1;  // caller bookkeeping (position in the original atom list)
};

namespace detail {

inline const std::vector<std::vector<int>>& sym_variants(const CanonAtom& a) {
  static const std::vector<std::vector<int>> identity = {std::vector<int>{}};
  if (a.variants.empty()) return identity;
  return a.variants;
}

inline void encode_index(const Index& ix, const std::map<int, int>& rank, int& nextRank,
                         std::map<int, int>& pending, std::vector<int>& out) {
  out.push_back(ix.bar ? 1 : 0);
  if (ix.concrete) {
    out.push_back(200000 + ix.id);
    return;
  }
  auto it = rank.find(ix.id);
  if (it != rank.end()) {
    out.push_back(it->second);
    return;
  }
  auto p = pending.find(ix.id);
  if (p != pending.end()) {
    out.push_back(p->second);
    return;
  }
  int r = nextRank + static_cast<int>(pending.size());
  pending[ix.id] = r;
  out.push_back(r);
}

inline std::vector<int> atom_code(const CanonAtom& a, const std::vector<int>& perm,
                                  const std::map<int, int>& rank, int nextRank,
                                  std::map<int, int>& pendingOut) {
  std::vector<int> code = a.skeleton;
  pendingOut.clear();
  auto emit = [&](const Index& ix) { encode_index(ix, rank, nextRank, pendingOut, code); };
  if (perm.empty()) {
    for (const auto& ix : a.idx) emit(ix);
  } else {
    for (size_t s = 0; s < perm.size(); ++s) emit(a.idx[perm[s]]);
    for (size_t s = perm.size(); s < a.idx.size(); ++s) emit(a.idx[s]);
  }
  return code;
}

struct CanonSearch {
  const std::vector<CanonAtom>* atoms;
  std::vector<int> bestKey;
  std::vector<std::pair<int, std::vector<int>>> bestOrder;  // (atom tag, slot perm)
  bool haveBest = false;

  void run(std::vector<int> prefixKey, std::map<int, int> rank, int nextRank,
           std::vector<char> used, std::vector<std::pair<int, std::vector<int>>> order,
           size_t placed) {
    if (haveBest) {
      size_t n = std::min(prefixKey.size(), bestKey.size());
      for (size_t i = 0; i < n; ++i) {
        if (prefixKey[i] < bestKey[i]) break;
        if (prefixKey[i] > bestKey[i]) return;
      }
    }
    if (placed == atoms->size()) {
      if (!haveBest || prefixKey < bestKey) {
        bestKey = prefixKey;
        bestOrder = order;
        haveBest = true;
      }
      return;
    }
    int curGroup = 0;
    bool found = false;
    for (size_t i = 0; i < atoms->size(); ++i) {
      if (used[i]) continue;
      if (!found || (*atoms)[i].group < curGroup) {
        curGroup = (*atoms)[i].group;
        found = true;
      }
    }
    struct Cand {
      size_t atomPos;
      std::vector<int> perm;
      std::vector<int> code;
      std::map<int, int> pending;
    };
    std::vector<Cand> cands;
    for (size_t i = 0; i < atoms->size(); ++i) {
      if (used[i] || (*atoms)[i].group != curGroup) continue;
      const CanonAtom& a = (*atoms)[i];
      for (auto& perm : sym_variants(a)) {
        Cand c;
        c.atomPos = i;
        c.perm = perm;
        c.code = atom_code(a, perm, rank, nextRank, c.pending);
        cands.push_back(std::move(c));
      }
    }
    if (cands.empty()) throw std::logic_error("canon: no candidates");
    const std::vector<int>* minCode = &cands[0].code;
    for (auto& c : cands)
      if (c.code < *minCode) minCode = &c.code;
    std::set<std::pair<size_t, std::vector<int>>> seen;
    for (auto& c : cands) {
      if (c.code != *minCode) continue;
      if (!seen.insert({c.atomPos, c.perm}).second) continue;
      auto key2 = prefixKey;
      key2.insert(key2.end(), c.code.begin(), c.code.end());
      key2.push_back(-1);
      auto rank2 = rank;
      int next2 = nextRank;
      for (auto& [id, r] : c.pending) {
        rank2[id] = r;
        next2 = std::max(next2, r + 1);
      }
      auto used2 = used;
      used2[c.atomPos] = 1;
      auto order2 = order;
      order2.push_back({(*atoms)[c.atomPos].tag, c.perm});
      run(std::move(key2), std::move(rank2), next2, std::move(used2), std::move(order2),
          placed + 1);
    }
  }
};

}  // namespace detail

struct CanonOutcome {
  std::vector<int> key;
  // For each output position: (original atom tag, slot permutation applied).
  std::vector<std::pair<int, std::vector<int>>> order;
  std::map<int, int> relabel;  // symbolic id -> canonical rank
};

// Canonical labeling of a term given as atoms. Pinned symbolic ids are
// encoded like concrete ones (they keep their identity; used for free
// indices and open contraction hooks).
inline CanonOutcome canonical_label(std::vector<CanonAtom> atoms,
                                    const std::set<int>& pinned = {}) {
  for (auto& a : atoms)
    for (auto& ix : a.idx)
      if (!ix.concrete && pinned.count(ix.id)) {
        ix.concrete = true;
        ix.id += 100000;  // pinned band, distinct from genuine concretes
      }
  detail::CanonSearch s;
  s.atoms = &atoms;
  size_t n = atoms.size();
  s.run({}, {}, 0, std::vector<char>(n, 0), {}, 0);
  CanonOutcome out;
  out.key = std::move(s.bestKey);
  out.order = std::move(s.bestOrder);
  std::map<int, int> rank;
  int next = 0;
  for (auto& [tag, perm] : out.order) {
    const CanonAtom* a = nullptr;
    for (auto& cand : atoms)
      if (cand.tag == tag) {
        a = &cand;
        break;
      }
    auto emit = [&](const Index& ix) {
      if (ix.concrete) return;
      if (!rank.count(ix.id)) rank[ix.id] = next++;
    };
    if (perm.empty()) {
      for (auto& ix : a->idx) emit(ix);
    } else {
      for (size_t i = 0; i < perm.size(); ++i) emit(a->idx[perm[i]]);
      for (size_t i = perm.size(); i < a->idx.size(); ++i) emit(a->idx[i]);
    }
  }
  out.relabel = std::move(rank);
  return out;
}

}  // namespace semiclass

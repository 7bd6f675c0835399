#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "semiclass/relations.hpp"
#include "semiclass/tensor.hpp"

using namespace semiclass;

namespace {
Index U(int i) { return Index(i, false); }
Index B(int i) { return Index(i, true); }
}  // namespace

TEST_CASE("scalar ring basics") {
  Scalar a = Scalar::rational(1, 3);
  Scalar b = Scalar::pi_pow(-1);
  CHECK((a + a) == Scalar::rational(2, 3));
  CHECK((a - a).is_zero());
  CHECK((b * b) == Scalar::pi_pow(-2));
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK(Scalar::i().conj() == Scalar(-1) * Scalar::i());
  Scalar n = Scalar::dim_n();
  CHECK(n.subst_n(3) == Scalar(3));
  CHECK((Scalar(4) * Scalar::pi_pow(1)).inv() == Scalar::pi_pow(-1, Rational(1, 4)));
}

TEST_CASE("curvR slot symmetry collapses to one representative") {
  // R_{l m k q} = R_{k m l q}: same canonical monomial.
  TensorMonomial m1(Scalar(1), {TensorFactor::curvR(U(2), B(1), U(0), B(3))});
  TensorMonomial m2(Scalar(1), {TensorFactor::curvR(U(0), B(1), U(2), B(3))});
  // Close the free indices with a second factor so pairing is valid.
  TensorFactor close = TensorFactor::curvR(U(1), B(0), U(3), B(2));
  m1.factors.push_back(close);
  m2.factors.push_back(close);
  CHECK(m1.canonicalize() == m2.canonicalize());
}

TEST_CASE("canonical_term idempotent and invariant under relabel/permutation") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 1200; ++trial) {
    // Build a random valid monomial: pick factors, then wire indices into
    // (u,b) pairs with random labels.
    std::vector<TensorFactor> fs;
    int nf = 1 + static_cast<int>(rng() % 3);
    struct Slot {
      int f;
      int pos;
      bool deriv;
    };
    std::vector<Slot> uSlots, bSlots;
    for (int i = 0; i < nf; ++i) {
      int kindPick = static_cast<int>(rng() % 4);
      if (kindPick == 0) {
        fs.push_back(TensorFactor::curvR(U(900 + i * 10), B(901 + i * 10), U(902 + i * 10),
                                         B(903 + i * 10)));
        uSlots.push_back({i, 0, false});
        bSlots.push_back({i, 1, false});
        uSlots.push_back({i, 2, false});
        bSlots.push_back({i, 3, false});
      } else if (kindPick == 1) {
        fs.push_back(TensorFactor::curvE(U(900 + i * 10), B(901 + i * 10)));
        uSlots.push_back({i, 0, false});
        bSlots.push_back({i, 1, false});
      } else if (kindPick == 2) {
        fs.push_back(TensorFactor::sc());
      } else {
        static int obsF = register_observable("f");
        fs.push_back(TensorFactor::fderiv(obsF, {U(900 + i * 10), B(901 + i * 10)}));
        uSlots.push_back({i, 0, true});
        bSlots.push_back({i, 1, true});
      }
    }
    if (uSlots.empty()) continue;
    // Random pairing between u and b occurrences.
    std::vector<int> perm(bSlots.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (size_t i = 0; i < uSlots.size(); ++i) {
      int id = 100 + static_cast<int>(i);
      auto setIx = [&](const Slot& s, bool bar) {
        Index ix(id, bar);
        if (s.deriv)
          fs[s.f].derivs[s.pos] = ix;
        else
          fs[s.f].slots[s.pos] = ix;
      };
      setIx(uSlots[i], false);
      setIx(bSlots[perm[i]], true);
    }
    TensorMonomial m(Scalar(1), fs);
    m.validate_pairing();
    std::string k1 = m.canonicalize();
    std::string k2 = m.canonicalize();
    CHECK(k1 == k2);  // idempotent

    // Random bijective relabeling + factor shuffle must not change the key.
    TensorMonomial m2 = m;
    std::map<int, int> relabel;
    int base = 5000 + static_cast<int>(rng() % 100);
    for (auto& f : m2.factors) {
      for (auto& ix : f.slots)
        if (!ix.concrete) {
          if (!relabel.count(ix.id)) relabel[ix.id] = base + 7 * static_cast<int>(relabel.size());
          ix.id = relabel[ix.id];
        }
      for (auto& ix : f.derivs)
        if (!ix.concrete) {
          if (!relabel.count(ix.id)) relabel[ix.id] = base + 7 * static_cast<int>(relabel.size());
          ix.id = relabel[ix.id];
        }
    }
    std::shuffle(m2.factors.begin(), m2.factors.end(), rng);
    CHECK(m2.canonicalize() == k1);
  }
}

TEST_CASE("collect merges and cancels") {
  // R_{k m l q} - R_{l m k q} = 0 by the slot symmetry.
  TensorPolynomial p;
  p.add(TensorMonomial(Scalar(1), {TensorFactor::curvR(U(0), B(1), U(2), B(3)),
                                   TensorFactor::curvR(U(1), B(0), U(3), B(2))}));
  p.add(TensorMonomial(Scalar(-1), {TensorFactor::curvR(U(2), B(1), U(0), B(3)),
                                    TensorFactor::curvR(U(1), B(0), U(3), B(2))}));
  CHECK(p.is_zero());

  TensorPolynomial x = sc_expanded();
  TensorPolynomial sum = x.scaled(Scalar::pi_pow(-1)) + x.scaled(Scalar::pi_pow(-1));
  TensorPolynomial twice = x.scaled(Scalar::pi_pow(-1, Rational(2)));
  CHECK(sum == twice);

  // p + (-1) p = 0 for random-ish p.
  TensorPolynomial r = sc_expanded() * ric_expanded(U(0), B(0));
  CHECK((r - r).is_zero());
}

TEST_CASE("conjugation") {
  // conj(R_{k m l q} z-free trace) fixed point: R_{k k m m} is self-conjugate.
  TensorMonomial m(Scalar(1), {TensorFactor::curvR(U(0), B(0), U(1), B(1))});
  TensorMonomial c = m.conj();
  CHECK(c.canonicalize() == m.canonicalize());
  // conj is an involution on a non-symmetric example.
  TensorMonomial a(Scalar::i(), {TensorFactor::curvE(U(0), B(1), {U(1), B(0)})});
  TensorMonomial cc = a.conj().conj();
  CHECK(cc.canonicalize() == a.canonicalize());
  CHECK(cc.coeff == a.coeff);
}

TEST_CASE("sc stays distinct from its index form") {
  TensorPolynomial scSym;
  scSym.add(TensorMonomial(Scalar(1), {TensorFactor::sc()}));
  CHECK_FALSE(scSym == sc_expanded());
}

TEST_CASE("ric expansion") {
  TensorPolynomial r = ric_expanded(U(0), B(1));
  CHECK(r.size() == 1);
  // ric_{a b} with (a,b) closed by an FDeriv pair.
  static int obsF = register_observable("f");
  TensorMonomial rm = r.terms().begin()->second;
  rm.factors.push_back(TensorFactor::fderiv(obsF, {B(0), U(1)}));
  rm.validate_pairing();
  rm.canonicalize();
  CHECK(rm.factors.size() == 2);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "semiclass/relations.hpp"

using namespace semiclass;

namespace {
Index U(int i) { return Index(i, false); }
Index B(int i) { return Index(i, true); }

TensorPolynomial mono(Scalar c, std::vector<TensorFactor> fs) {
  return TensorPolynomial(TensorMonomial(std::move(c), std::move(fs)));
}
}  // namespace

TEST_CASE("twist Bianchi identifies the two traced second derivatives") {
  auto rels = RelationSet::standard();
  TensorPolynomial a = mono(Scalar(1), {TensorFactor::curvE(U(0), B(1), {U(1), B(0)})});
  TensorPolynomial b = mono(Scalar(1), {TensorFactor::curvE(U(0), B(0), {U(1), B(1)})});
  auto r = equal_mod_relations(a, b, rels);
  CHECK(r.equal);
  // Reflexivity and symmetry.
  CHECK(equal_mod_relations(a, a, rels).equal);
  CHECK(equal_mod_relations(b, a, rels).equal);
}

TEST_CASE("laplacian of scalar curvature vs traced second Bianchi") {
  auto rels = RelationSet::standard();
  TensorPolynomial dsc = mono(Scalar(1), {TensorFactor::lap_sc()});
  TensorPolynomial idx =
      mono(Scalar(-32), {TensorFactor::curvR(U(0), B(0), U(1), B(1), {U(2), B(2)})});
  CHECK(equal_mod_relations(dsc, idx, rels).equal);
  TensorPolynomial mixed =
      mono(Scalar(-32), {TensorFactor::curvR(U(0), B(1), U(2), B(2), {U(1), B(0)})});
  CHECK(equal_mod_relations(dsc, mixed, rels).equal);
  CHECK(equal_mod_relations(idx, mixed, rels).equal);
}

TEST_CASE("scalar curvature symbol vs index form") {
  auto rels = RelationSet::standard();
  TensorPolynomial s = mono(Scalar(1), {TensorFactor::sc()});
  CHECK(equal_mod_relations(s, sc_expanded(), rels).equal);
}

TEST_CASE("inequality yields a witness") {
  auto rels = RelationSet::standard();
  TensorPolynomial a = mono(Scalar(1), {TensorFactor::curvR(U(0), B(1), U(2), B(3))});
  TensorPolynomial b = mono(Scalar(2), {TensorFactor::curvR(U(0), B(1), U(2), B(3))});
  auto r = equal_mod_relations(a, b, rels);
  CHECK_FALSE(r.equal);
  CHECK(r.residue.size() == 1);
  CHECK(r.residue.terms().begin()->second.coeff == Scalar(-1));
}

TEST_CASE("invariant under adding a generator multiple to one side") {
  auto rels = RelationSet::standard();
  // p = a closed quadratic; add 3 * (sc - 8 R_{mqqm}) * R_{kkll}-style partner.
  TensorPolynomial p = sc_expanded() * sc_expanded();
  TensorPolynomial scSym = mono(Scalar(1), {TensorFactor::sc()});
  TensorPolynomial gen = scSym - sc_expanded();  // == 0 mod relations
  TensorPolynomial q = p + (gen * sc_expanded()).scaled(Scalar(3));
  auto r = equal_mod_relations(p, q, rels);
  CHECK(r.equal);
}

TEST_CASE("variant forms of the twist part of the second coefficient") {
  auto rels = RelationSet::standard();
  // (1/4)(-RE_{kk;mm} + 3 RE_{mk;km}) vs (1/2) RE_{kk;mm}.
  TensorPolynomial A = mono(Scalar(1), {TensorFactor::curvE(U(0), B(0), {U(1), B(1)})});
  TensorPolynomial Bv = mono(Scalar(1), {TensorFactor::curvE(U(0), B(1), {U(1), B(0)})});
  TensorPolynomial lhs = A.scaled(Scalar::rational(-1, 4)) + Bv.scaled(Scalar::rational(3, 4));
  TensorPolynomial rhs = A.scaled(Scalar::rational(1, 2));
  CHECK(equal_mod_relations(lhs, rhs, rels).equal);
}

TEST_CASE("homogeneity is enforced") {
  auto rels = RelationSet::standard();
  TensorPolynomial a = mono(Scalar(1), {TensorFactor::sc()});
  TensorPolynomial b = sc_expanded() * sc_expanded();
  CHECK_THROWS(equal_mod_relations(a, b, rels));
}

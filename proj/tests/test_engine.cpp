#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "semiclass/dictionary.hpp"
#include "semiclass/engine.hpp"

using namespace semiclass;

namespace {

Index U(int i) { return Index(i, false); }
Index B(int i) { return Index(i, true); }

TensorPolynomial mono(Scalar c, std::vector<TensorFactor> fs) {
  return TensorPolynomial(TensorMonomial(std::move(c), std::move(fs)));
}

TensorFactor Rf(int a, int b, int c, int d, std::vector<Index> derivs = {}) {
  return TensorFactor::curvR(U(a), B(b), U(c), B(d), std::move(derivs));
}

TensorFactor REf(int a, int b, std::vector<Index> derivs = {}) {
  return TensorFactor::curvE(U(a), B(b), std::move(derivs));
}

Engine& engine() {
  static Engine e;
  return e;
}

RelationSet& rels() {
  static RelationSet r = RelationSet::standard();
  return r;
}

void check_mod(const TensorPolynomial& a, const TensorPolynomial& b, const char* what) {
  auto r = equal_mod_relations(a, b, rels());
  if (!r.equal) {
    MESSAGE(what, " residue: ", r.residue.render());
  }
  CHECK(r.equal);
}

}  // namespace

TEST_CASE("P O2 P vanishes") { CHECK(engine().PO2P_vanishes()); }

TEST_CASE("one-sided second-order kernels") {
  // (L^{-1} O2 P)(Z, 0)
  OperatorExpression disp;
  {
    OpTerm t1;
    t1.coeff.coeff = Scalar::pi_pow(-1, Rational(1, 48));
    t1.coeff.factors = {Rf(0, 1, 2, 3)};
    t1.word = {{LetterKind::B, U(1)},
               {LetterKind::B, U(3)},
               {LetterKind::Z, U(0)},
               {LetterKind::Z, U(2)}};
    disp += OperatorExpression(std::move(t1));
    OpTerm t2;
    t2.coeff.coeff = Scalar::pi_pow(-1, Rational(1, 3));
    t2.coeff.factors = {Rf(0, 1, 1, 2)};
    t2.word = {{LetterKind::B, U(2)}, {LetterKind::Z, U(0)}};
    disp += OperatorExpression(std::move(t2));
    OpTerm t3;
    t3.coeff.coeff = Scalar::pi_pow(-1, Rational(1, 4));
    t3.coeff.factors = {REf(0, 1)};
    t3.word = {{LetterKind::B, U(1)}, {LetterKind::Z, U(0)}};
    disp += OperatorExpression(std::move(t3));
  }
  auto displayed = apply_to_P(disp, KernelPolynomial::P()).at_second_origin();
  CHECK(engine().L1O2P().at_second_origin() == displayed);

  // (L^{-1} O2 P)(0, Z) = -(1/2 pi)(R_{mmqq} + RE_{qq}) P(0, Z)
  TensorPolynomial c = (mono(Scalar(1), {Rf(0, 0, 1, 1)}) + mono(Scalar(1), {REf(0, 0)}))
                           .scaled(Scalar::pi_pow(-1, Rational(-1, 2)));
  KernelPolynomial expect;
  for (auto& [k, m] : c.terms()) expect.add(KernelTerm(m, {}));
  CHECK(engine().L1O2P().at_first_origin() == expect);
}

TEST_CASE("first coefficient from the second-order kernel") {
  TensorPolynomial b1v = eval_origin(engine().F(2));
  CHECK(b1v == dict::b1());
  // self-adjoint
  CHECK(b1v.conj() == b1v);
}

TEST_CASE("projected second-order kernel value") {
  // (P o F2)(0,0) = (1/2 pi)(R_{kkqq} + RE_{qq}); with the twist dropped it
  // is sc/(16 pi).
  TensorPolynomial v = eval_origin(compose(KernelPolynomial::P(), engine().F(2)));
  TensorPolynomial expect = (mono(Scalar(1), {Rf(0, 0, 1, 1)}) + mono(Scalar(1), {REf(0, 0)}))
                                .scaled(Scalar::pi_pow(-1, Rational(1, 2)));
  CHECK(v == expect);
  check_mod(v.drop_curvE(),
            dict::sc_symbol().scaled(Scalar::pi_pow(-1, Rational(1, 16))), "PJ2P");
}

TEST_CASE("second-order squared contributions") {
  // (L^{-1} O2 P O2 L^{-1})(0,0) = (1/4 pi^2)(R_{mmkk} + RE_{kk})^2
  TensorPolynomial lhsB = eval_origin(compose(engine().L1O2P(), engine().PO2L1()));
  TensorPolynomial s = mono(Scalar(1), {Rf(0, 0, 1, 1)}) + mono(Scalar(1), {REf(0, 0)});
  TensorPolynomial rhsB = (s * s).scaled(Scalar::pi_pow(-2, Rational(1, 4)));
  check_mod(lhsB, rhsB, "squared-trace");

  // (P O2 L^{-2} O2 P)(0,0)
  TensorPolynomial lhsC = eval_origin(compose(engine().PO2L1(), engine().L1O2P()));
  TensorPolynomial rhsC;
  rhsC += mono(Scalar::pi_pow(-2, Rational(1, 36)), {Rf(0, 1, 2, 3), Rf(1, 0, 3, 2)});
  rhsC += mono(Scalar::pi_pow(-2, Rational(4, 9)), {Rf(0, 1, 1, 2), Rf(2, 3, 3, 0)});
  rhsC += mono(Scalar::pi_pow(-2, Rational(1, 3)), {Rf(0, 1, 1, 2), REf(2, 0)});
  rhsC += mono(Scalar::pi_pow(-2, Rational(1, 3)), {REf(0, 1), Rf(1, 2, 2, 0)});
  rhsC += mono(Scalar::pi_pow(-2, Rational(1, 4)), {REf(0, 1), REf(1, 0)});
  check_mod(lhsC, rhsC, "double-resolvent");
}

TEST_CASE("fourth-order pieces") {
  // pi^2 (L^{-1} P O2 L^{-1} O2 P)(0,0)
  TensorPolynomial lhs1 =
      eval_origin(inv_L_perp(apply_to_P(engine().ops().O2, engine().L1O2P())))
          .scaled(Scalar::pi_pow(2));
  TensorPolynomial rhs1;
  rhs1 += mono(Scalar::rational(-25, 216), {Rf(0, 1, 2, 3), Rf(1, 0, 3, 2)});
  rhs1 += mono(Scalar::rational(-47, 54), {Rf(0, 0, 1, 2), Rf(3, 3, 2, 1)});
  rhs1 += mono(Scalar::rational(1, 8), {Rf(0, 0, 1, 1), Rf(2, 2, 3, 3)});
  rhs1 += mono(Scalar::rational(1, 4), {REf(0, 0), Rf(1, 1, 2, 2)});
  rhs1 += mono(Scalar::rational(-7, 6), {REf(0, 1), Rf(2, 2, 1, 0)});
  rhs1 += mono(Scalar::rational(1, 8), {REf(0, 0), REf(1, 1)});
  rhs1 += mono(Scalar::rational(-3, 8), {REf(0, 1), REf(1, 0)});
  check_mod(lhs1, rhs1, "O2-squared-piece");

  // -pi^2 (L^{-1} O4 P)(0,0)
  TensorPolynomial lhs2 =
      eval_origin(inv_L_perp(apply_to_P(engine().ops().O4, KernelPolynomial::P())))
          .scaled(Scalar(-1) * Scalar::pi_pow(2));
  TensorPolynomial rhs2;
  rhs2 += dict::lap_sc_symbol().scaled(Scalar::rational(-1, 96));
  rhs2 += mono(Scalar::rational(23, 108), {Rf(0, 1, 2, 3), Rf(1, 0, 3, 2)});
  rhs2 += mono(Scalar::rational(41, 54), {Rf(0, 0, 1, 2), Rf(3, 3, 2, 1)});
  rhs2 += mono(Scalar(1), {Rf(0, 0, 1, 2), REf(2, 1)});
  rhs2 += mono(Scalar::rational(-1, 8), {REf(0, 0, {U(1), B(1)})});
  rhs2 += mono(Scalar::rational(3, 8), {REf(0, 1, {U(1), B(0)})});
  rhs2 += mono(Scalar::rational(1, 4), {REf(0, 1), REf(1, 0)});
  check_mod(lhs2, rhs2, "O4-piece");
}

TEST_CASE("fourth coefficient equals both closed forms") {
  TensorPolynomial F4v = eval_origin(engine().F(4));
  check_mod(F4v, dict::b2(false), "b2");
  check_mod(F4v, dict::b2(true), "b2-replaced");
  CHECK(F4v.conj() == F4v);
}

TEST_CASE("fourth-coefficient kernel self-consistency") {
  // F4 = K[1, J4] + K[J2, J2] + K[J4, 1] as full kernels.
  auto& P = engine().F(0);
  KernelPolynomial sum = compose(P, engine().F(4)) +
                         compose(engine().F(2), engine().F(2)) +
                         compose(engine().F(4), P);
  CHECK(sum == engine().F(4));
}

TEST_CASE("composition coefficients of order zero and one") {
  Observable f = Observable::base("f");
  Observable g = Observable::base("g");
  dict::Obs fo("f"), go("g");

  CHECK(eval_origin(engine().Q(0, f)) == dict::value(fo));
  CHECK(eval_origin(engine().Q(1, f)).is_zero());
  CHECK(eval_origin(engine().Q(3, f)).is_zero());

  // Q1(f) = f_{;i} z_i + f_{;ib} zb'_i
  KernelPolynomial q1 = engine().Q(1, f);
  KernelPolynomial expect;
  expect.add(KernelTerm(TensorMonomial(Scalar(1), {TensorFactor::fderiv(fo.id, {U(0)})}),
                        {{VarKind::Z, U(0)}}));
  expect.add(KernelTerm(TensorMonomial(Scalar(1), {TensorFactor::fderiv(fo.id, {B(0)})}),
                        {{VarKind::Zpbar, U(0)}}));
  CHECK(q1 == expect);

  // K[Q1(f), Q1(g)](0,0) = (1/pi) f_{;ib} g_{;i}
  TensorPolynomial cross = eval_origin(compose(engine().Q(1, f), engine().Q(1, g)));
  TensorPolynomial target = mono(Scalar::pi_pow(-1), {TensorFactor::fderiv(fo.id, {B(0)}),
                                                      TensorFactor::fderiv(go.id, {U(0)})});
  CHECK(cross == target);
}

TEST_CASE("first Toeplitz coefficient") {
  Observable f = Observable::base("f");
  dict::Obs fo("f");
  check_mod(engine().b_rf(1, f), dict::b1f(fo), "b1f");
}

TEST_CASE("third-order cross term") {
  Observable f = Observable::base("f");
  dict::Obs fo("f");
  auto& P = engine().F(0);
  KernelPolynomial t1 = engine().taylor_kernel(f, 1);
  TensorPolynomial lhs =
      eval_origin(compose(engine().F(3), pointwise_mul(t1, P))) +
      eval_origin(compose(P, pointwise_mul(t1, engine().F(3))));
  check_mod(lhs.scaled(Scalar::pi_pow(2)), dict::K3f(fo), "K3f");
}

TEST_CASE("second Toeplitz coefficient") {
  Observable f = Observable::base("f");
  dict::Obs fo("f");
  check_mod(engine().b_rf(2, f), dict::b2f(fo), "b2f");
}

TEST_CASE("composition coefficients b_{r,f,g}") {
  Observable f = Observable::base("f");
  Observable g = Observable::base("g");
  dict::Obs fo("f"), go("g");
  CHECK(engine().b_rfg(0, f, g) == contract_mul(dict::value(fo), dict::value(go)));
  check_mod(engine().b_rfg(1, f, g), dict::b1fg(fo, go), "b1fg");
  check_mod(engine().b_rfg(2, f, g), dict::b2fg(fo, go), "b2fg");
}

TEST_CASE("star product coefficients") {
  Observable f = Observable::base("f");
  Observable g = Observable::base("g");
  dict::Obs fo("f"), go("g");
  TensorPolynomial c1 = engine().C1(f, g);
  CHECK(c1 == dict::C1_target(fo, go));
  // C1(f,g) - C1(g,f) = i {f,g}
  TensorPolynomial anti = c1 - engine().C1(g, f);
  CHECK(anti == dict::poisson(fo, go).scaled(Scalar::i()));
  check_mod(engine().C2(f, g), dict::C2_target(fo, go), "C2");
}

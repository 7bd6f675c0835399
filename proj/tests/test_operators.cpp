#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "semiclass/model_operators.hpp"

using namespace semiclass;

namespace {

Index U(int i) { return Index(i, false); }
Index B(int i) { return Index(i, true); }

OperatorExpression term(Scalar c, std::vector<TensorFactor> fs, std::vector<Letter> w) {
  OpTerm t;
  t.coeff.coeff = std::move(c);
  t.coeff.factors = std::move(fs);
  t.word = std::move(w);
  return OperatorExpression(std::move(t));
}

Scalar piQ(long num, long den, int k = 1) { return Scalar::pi_pow(k, Rational(num, den)); }

// Raw form of the second-order operator, before normal ordering.
OperatorExpression O2_display_raw() {
  OperatorExpression e;
  auto Rk = [](int a, int b, int c, int d) {
    return TensorFactor::curvR(U(a), B(b), U(c), B(d));
  };
  e += term(Scalar::rational(1, 3), {Rk(0, 1, 2, 3)},
            {{LetterKind::Z, U(0)},
             {LetterKind::Z, U(2)},
             {LetterKind::B, U(1)},
             {LetterKind::B, U(3)}});
  e += term(Scalar::rational(1, 3), {Rk(0, 3, 2, 1)},
            {{LetterKind::Z, U(0)},
             {LetterKind::Zbar, U(1)},
             {LetterKind::B, U(3)},
             {LetterKind::BPlus, U(2)}});
  e += term(Scalar::rational(1, 3), {Rk(0, 3, 2, 1)},
            {{LetterKind::Z, U(0)},
             {LetterKind::Zbar, U(1)},
             {LetterKind::BPlus, U(2)},
             {LetterKind::B, U(3)}});
  e += term(Scalar::rational(1, 3), {Rk(0, 1, 2, 3)},
            {{LetterKind::Zbar, U(1)},
             {LetterKind::Zbar, U(3)},
             {LetterKind::BPlus, U(0)},
             {LetterKind::BPlus, U(2)}});
  e += term(Scalar::rational(-4, 3), {Rk(0, 0, 1, 1)}, {});
  e += term(Scalar::rational(2, 3), {Rk(0, 1, 2, 0)},
            {{LetterKind::Zbar, U(1)}, {LetterKind::BPlus, U(2)}});
  e += term(piQ(-1, 3), {Rk(0, 1, 2, 3)},
            {{LetterKind::Z, U(0)},
             {LetterKind::Zbar, U(1)},
             {LetterKind::Zbar, U(3)},
             {LetterKind::BPlus, U(2)}});
  e += term(Scalar::rational(-2, 3), {Rk(0, 1, 1, 2)},
            {{LetterKind::Z, U(0)}, {LetterKind::B, U(2)}});
  e += term(piQ(-1, 3), {Rk(0, 1, 2, 3)},
            {{LetterKind::Z, U(0)},
             {LetterKind::Zbar, U(1)},
             {LetterKind::Z, U(2)},
             {LetterKind::B, U(3)}});
  e += term(Scalar(-2), {TensorFactor::curvE(U(0), B(0))}, {});
  e += term(Scalar(1), {TensorFactor::curvE(U(0), B(1))},
            {{LetterKind::Zbar, U(1)}, {LetterKind::BPlus, U(0)}});
  e += term(Scalar(1), {TensorFactor::curvE(U(0), B(1))},
            {{LetterKind::Z, U(0)}, {LetterKind::B, U(1)}});
  return e;
}

// Normal-ordered display of the same operator.
OperatorExpression O2_display_normal() {
  OperatorExpression e;
  auto Rk = [](int a, int b, int c, int d) {
    return TensorFactor::curvR(U(a), B(b), U(c), B(d));
  };
  e += term(Scalar::rational(1, 3), {Rk(0, 1, 2, 3)},
            {{LetterKind::B, U(1)},
             {LetterKind::B, U(3)},
             {LetterKind::Z, U(0)},
             {LetterKind::Z, U(2)}});
  e += term(piQ(-1, 3), {Rk(0, 1, 2, 3)},
            {{LetterKind::B, U(3)},
             {LetterKind::Z, U(0)},
             {LetterKind::Z, U(2)},
             {LetterKind::Zbar, U(1)}});
  e += term(Scalar(2), {Rk(0, 1, 1, 2)}, {{LetterKind::B, U(2)}, {LetterKind::Z, U(0)}});
  e += term(Scalar(1), {TensorFactor::curvE(U(0), B(1))},
            {{LetterKind::B, U(1)}, {LetterKind::Z, U(0)}});
  e += term(Scalar::rational(2, 3), {Rk(0, 1, 2, 3)},
            {{LetterKind::B, U(3)},
             {LetterKind::Z, U(0)},
             {LetterKind::Zbar, U(1)},
             {LetterKind::BPlus, U(2)}});
  e += term(piQ(-1, 3), {Rk(0, 1, 2, 3)},
            {{LetterKind::Z, U(0)},
             {LetterKind::Zbar, U(1)},
             {LetterKind::Zbar, U(3)},
             {LetterKind::BPlus, U(2)}});
  e += term(Scalar(2), {Rk(0, 0, 1, 2)},
            {{LetterKind::Zbar, U(2)}, {LetterKind::BPlus, U(1)}});
  e += term(Scalar(1), {TensorFactor::curvE(U(0), B(1))},
            {{LetterKind::Zbar, U(1)}, {LetterKind::BPlus, U(0)}});
  e += term(Scalar::rational(1, 3), {Rk(0, 1, 2, 3)},
            {{LetterKind::Zbar, U(1)},
             {LetterKind::Zbar, U(3)},
             {LetterKind::BPlus, U(0)},
             {LetterKind::BPlus, U(2)}});
  return e;
}

}  // namespace

TEST_CASE("frame route reproduces the raw second-order display") {
  OperatorExpression mine = build_O2_frame();
  OperatorExpression display = O2_display_raw();
  CHECK(mine == display);
}

TEST_CASE("normal ordering reproduces the normal-ordered display") {
  OperatorExpression mine = normal_order(build_O2_frame());
  CHECK(mine == O2_display_normal());
}

TEST_CASE("model operator identity for L") {
  int fresh = 0;
  OperatorExpression sumNabla =
      frame_pair2([&](Arg X, Arg X2) { return op_mul_raw(nabla0(X), nabla0(X2)); }, fresh);
  OperatorExpression built =
      sumNabla.scaled(Scalar(-1)) -
      OperatorExpression(OpTerm(TensorMonomial(Scalar(2) * Scalar::pi_pow(1) * Scalar::dim_n()),
                                {}));
  CHECK(normal_order(built) == model_L());
}

TEST_CASE("operators are formally self-adjoint") {
  ModelOperatorSet ops = build_operators();
  CHECK(normal_order(op_adjoint(ops.O2)) == ops.O2);
  CHECK(normal_order(op_adjoint(ops.O3)) == ops.O3);
  CHECK(normal_order(op_adjoint(ops.O4)) == ops.O4);
}

TEST_CASE("operators vanish without curvature") {
  ModelOperatorSet ops = build_operators();
  CHECK(operators_vanish_without_curvature(ops));
}

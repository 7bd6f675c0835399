#include "semiclass/model_operators.hpp"

namespace semiclass {

namespace {

// A_{1Z}(a, b) = <R_{;(Z,Z)}(R, a) R, b>.
OperatorExpression A1(CArg a, CArg b, int& fresh) {
  return curv4({CArg::R(), CArg::R()}, CArg::R(), a, CArg::R(), b, fresh);
}

// A_{2Z}(a, b) = <R(R, a) R, R(R, b) R>.
OperatorExpression A2(CArg a, CArg b, int& fresh) {
  return frame_pair2(
      [&, a, b](Arg W, Arg W2) {
        return op_mul_raw(curv4({}, CArg::R(), a, CArg::R(), CArg::D(W), fresh),
                          curv4({}, CArg::R(), b, CArg::R(), CArg::D(W2), fresh));
      },
      fresh);
}

OpTerm direct_term(Scalar c, std::vector<TensorFactor> fs, std::vector<Letter> w) {
  OpTerm t;
  t.coeff.coeff = std::move(c);
  t.coeff.factors = std::move(fs);
  t.word = std::move(w);
  return t;
}

}  // namespace

OperatorExpression build_O2_frame() {
  int fresh = 0;
  auto R = CArg::R;
  // (1/3) <R(R,e_i)R, e_j> nabla_i nabla_j
  OperatorExpression t1 =
      frame_pair2(
          [&](Arg X, Arg X2) {
            return frame_pair2(
                [&, X, X2](Arg Y, Arg Y2) {
                  return op_mul_raw(
                      op_mul_raw(curv4({}, R(), CArg::D(X), R(), CArg::D(Y), fresh), nabla0(X2)),
                      nabla0(Y2));
                },
                fresh);
          },
          fresh)
          .scaled(Scalar::rational(1, 3));
  // -2 RE_{kk}
  OperatorExpression t2 = curvE_trace().scaled(Scalar(-2));
  // [ (pi/3)<R(z,zbar)R, e_j> + (2/3) ric(R,e_j) - RE(R,e_j) ] nabla_j,
  // combined with the extra -(1/3) ric(R,e_j) nabla_j of the full operator.
  OperatorExpression t3 = frame_pair2(
      [&](Arg X, Arg X2) {
        OperatorExpression bracket =
            curv4({}, CArg::Z(), CArg::Zb(), R(), CArg::D(X), fresh)
                .scaled(Scalar::pi_pow(1, Rational(1, 3))) +
            ric2({}, R(), CArg::D(X), fresh).scaled(Scalar::rational(1, 3)) -
            curvE2({}, R(), CArg::D(X), fresh);
        return op_mul_raw(bracket, nabla0(X2));
      },
      fresh);
  // - br/6
  OperatorExpression t4 = br_term().scaled(Scalar::rational(-1, 6));
  return t1 + t2 + t3 + t4;
}

OperatorExpression build_O3_frame() {
  int fresh = 0;
  auto R = CArg::R;
  OperatorExpression out;
  // (1/6) <R_{;Z}(R,e_i)R, e_j> nabla_i nabla_j
  out += frame_pair2(
             [&](Arg X, Arg X2) {
               return frame_pair2(
                   [&, X, X2](Arg Y, Arg Y2) {
                     return op_mul_raw(op_mul_raw(curv4({R()}, R(), CArg::D(X), R(), CArg::D(Y),
                                                        fresh),
                                                  nabla0(X2)),
                                       nabla0(Y2));
                   },
                   fresh);
             },
             fresh)
             .scaled(Scalar::rational(1, 6));
  // first-order bracket
  out += frame_pair2(
      [&](Arg X, Arg X2) {
        OperatorExpression bracket =
            curv4({R()}, CArg::Z(), CArg::Zb(), R(), CArg::D(X), fresh)
                .scaled(Scalar::pi_pow(1, Rational(2, 15))) +
            ric2({R()}, R(), CArg::D(X), fresh).scaled(Scalar::rational(1, 6)) +
            frame_pair2(
                [&, X](Arg Y, Arg Y2) {
                  return curv4({CArg::D(Y)}, R(), CArg::D(Y2), R(), CArg::D(X), fresh);
                },
                fresh)
                .scaled(Scalar::rational(1, 6)) -
            curvE2({R()}, R(), CArg::D(X), fresh).scaled(Scalar::rational(2, 3));
        return op_mul_raw(bracket, nabla0(X2));
      },
      fresh);
  // (pi/15) <R_{;e_j}(z,zbar)R, e_j>
  out += frame_pair2(
             [&](Arg Y, Arg Y2) {
               return curv4({CArg::D(Y2)}, CArg::Z(), CArg::Zb(), R(), CArg::D(Y), fresh);
             },
             fresh)
             .scaled(Scalar::pi_pow(1, Rational(1, 15)));
  // -(1/6) ric_{;e_i}(R, e_i)
  out += frame_pair2([&](Arg X, Arg X2) { return ric2({CArg::D(X2)}, R(), CArg::D(X), fresh); },
                     fresh)
             .scaled(Scalar::rational(-1, 6));
  // -(1/12) ric_{;Z}(e_i, e_i)
  out += frame_pair2([&](Arg X, Arg X2) { return ric2({R()}, CArg::D(X), CArg::D(X2), fresh); },
                     fresh)
             .scaled(Scalar::rational(-1, 12));
  // -(1/3) RE_{;e_i}(R, e_i)
  out +=
      frame_pair2([&](Arg X, Arg X2) { return curvE2({CArg::D(X2)}, R(), CArg::D(X), fresh); },
                  fresh)
          .scaled(Scalar::rational(-1, 3));
  // -(i/2) RE_{;Z}(e_i, J e_i)
  out += frame_pair2J(
             [&](Arg X, Arg X2) { return curvE2({R()}, CArg::D(X), CArg::D(X2), fresh); },
             fresh)
             .scaled(Scalar::rational(-1, 2) * Scalar::i());
  return out;
}

OperatorExpression build_O4_frame() {
  int fresh = 0;
  auto R = CArg::R;
  OperatorExpression out;

  // O41 = (1/20)(A1 - (4/3) A2)(e_i, e_j) nabla_i nabla_j
  out += frame_pair2(
             [&](Arg X, Arg X2) {
               return frame_pair2(
                   [&, X, X2](Arg Y, Arg Y2) {
                     OperatorExpression a =
                         A1(CArg::D(X), CArg::D(Y), fresh) -
                         A2(CArg::D(X), CArg::D(Y), fresh).scaled(Scalar::rational(4, 3));
                     return op_mul_raw(op_mul_raw(a, nabla0(X2)), nabla0(Y2));
                   },
                   fresh);
             },
             fresh)
             .scaled(Scalar::rational(1, 20));

  // O42 = [L, -(1/80 A1 - 1/360 A2)(e_j,e_j) - (1/288) ric(R,R)^2]
  //       + (1/144) L ric(R,R)^2
  OperatorExpression A1tr = frame_pair2(
      [&](Arg X, Arg X2) { return A1(CArg::D(X), CArg::D(X2), fresh); }, fresh);
  OperatorExpression A2tr = frame_pair2(
      [&](Arg X, Arg X2) { return A2(CArg::D(X), CArg::D(X2), fresh); }, fresh);
  OperatorExpression ricRR = ric2({}, R(), R(), fresh);
  OperatorExpression ricRR2 = op_mul(ricRR, ricRR);
  OperatorExpression X42 = A1tr.scaled(Scalar::rational(-1, 80)) +
                           A2tr.scaled(Scalar::rational(1, 360)) +
                           ricRR2.scaled(Scalar::rational(-1, 288));
  out += op_commutator(model_L(), X42);
  out += op_mul(model_L(), ricRR2).scaled(Scalar::rational(1, 144));

  // O43 = -(1/144) ric(R,R) L ric(R,R)
  out += op_mul(op_mul(ricRR, model_L()), ricRR).scaled(Scalar::rational(-1, 144));

  // O44
  out += frame_pair2(
      [&](Arg X, Arg X2) {
        OperatorExpression bracket =
            A1(CArg::Zb(), CArg::D(X), fresh).scaled(Scalar::pi_pow(1, Rational(1, 30))) -
            A2(CArg::Zb(), CArg::D(X), fresh).scaled(Scalar::pi_pow(1, Rational(1, 10)));
        bracket += frame_pair2(
            [&, X](Arg Y, Arg Y2) {
              OperatorExpression a =
                  A1(CArg::D(X), CArg::D(Y), fresh).scaled(Scalar::rational(1, 20)) +
                  A2(CArg::D(X), CArg::D(Y), fresh).scaled(Scalar::rational(2, 45));
              return op_dz(a, Y2);
            },
            fresh);
        OperatorExpression tr =
            frame_pair2(
                [&](Arg Y, Arg Y2) {
                  return A1(CArg::D(Y), CArg::D(Y2), fresh).scaled(Scalar::rational(1, 40)) +
                         A2(CArg::D(Y), CArg::D(Y2), fresh).scaled(Scalar::rational(1, 45));
                },
                fresh);
        bracket += op_dz(tr, X).scaled(Scalar(-1));
        return op_mul_raw(bracket, nabla0(X2));
      },
      fresh);

  // O45
  out += frame_pair2(
      [&](Arg X, Arg X2) {
        OperatorExpression bracket =
            frame_pair2(
                [&, X](Arg K, Arg K2) {
                  return frame_pair2(
                      [&, X, K, K2](Arg P, Arg P2) {
                        return op_mul_raw(
                            curv4({}, R(), CArg::D(K), R(), CArg::D(P), fresh),
                            curv4({}, R(), CArg::D(K2), CArg::D(X), CArg::D(P2), fresh));
                      },
                      fresh);
                },
                fresh)
                .scaled(Scalar::rational(2, 9));
        bracket += frame_pair2(
                       [&, X](Arg K, Arg K2) {
                         return op_mul_raw(
                             curv4({}, R(), CArg::D(X), R(), CArg::D(K), fresh),
                             ric2({}, R(), CArg::D(K2), fresh));
                       },
                       fresh)
                       .scaled(Scalar::rational(-1, 9));
        bracket += frame_pair2(
                       [&, X](Arg M, Arg M2) {
                         return op_mul_raw(
                             curv4({}, R(), CArg::D(X), R(), CArg::D(M), fresh),
                             curvE2({}, R(), CArg::D(M2), fresh));
                       },
                       fresh)
                       .scaled(Scalar::rational(1, 4));
        bracket += curvE2({R(), R()}, R(), CArg::D(X), fresh).scaled(Scalar::rational(-1, 4));
        return op_mul_raw(bracket, nabla0(X2));
      },
      fresh);

  // O46
  out += A2(CArg::Zb(), CArg::Zb(), fresh).scaled(Scalar::pi_pow(2, Rational(-1, 36)));
  out += frame_pair2(
             [&](Arg Y, Arg Y2) {
               return curv4({R(), CArg::D(Y2)}, CArg::Z(), CArg::Zb(), R(), CArg::D(Y), fresh);
             },
             fresh)
             .scaled(Scalar::pi_pow(1, Rational(1, 30)));
  out += frame_pair2(
             [&](Arg M, Arg M2) {
               return op_mul_raw(curv4({}, CArg::Z(), CArg::Zb(), R(), CArg::D(M), fresh),
                                 ric2({}, R(), CArg::D(M2), fresh));
             },
             fresh)
             .scaled(Scalar::pi_pow(1, Rational(-1, 20)));
  {
    // (4/9) ric_{km} ric_{ml} z_k zbar_l, ric expanded
    auto U = [](int i) { return Index(i, false); };
    auto Bx = [](int i) { return Index(i, true); };
    out += OperatorExpression(direct_term(
        Scalar::rational(16, 9),
        {TensorFactor::curvR(U(0), Bx(3), U(3), Bx(1)),
         TensorFactor::curvR(U(1), Bx(4), U(4), Bx(2))},
        {{LetterKind::Z, U(0)}, {LetterKind::Zbar, U(2)}}));
    // -(4/9) R_{klmq} ric_{lm} z_k zbar_q
    out += OperatorExpression(direct_term(
        Scalar::rational(-8, 9),
        {TensorFactor::curvR(U(0), Bx(1), U(2), Bx(3)),
         TensorFactor::curvR(U(1), Bx(4), U(4), Bx(2))},
        {{LetterKind::Z, U(0)}, {LetterKind::Zbar, U(3)}}));
    // (1/2)(RE_{km} RE_{ml} + RE_{ml} RE_{km}) z_k zbar_l, abelian twist
    out += OperatorExpression(direct_term(
        Scalar(1),
        {TensorFactor::curvE(U(0), Bx(1)), TensorFactor::curvE(U(1), Bx(2))},
        {{LetterKind::Z, U(0)}, {LetterKind::Zbar, U(2)}}));
  }
  out += frame_pair2(
             [&](Arg M, Arg M2) {
               return op_mul_raw(curv4({}, CArg::Z(), CArg::Zb(), R(), CArg::D(M), fresh)
                                     .scaled(Scalar::pi_pow(1)),
                                 curvE2({}, R(), CArg::D(M2), fresh));
             },
             fresh)
             .scaled(Scalar::rational(1, 6));
  out += frame_pair2(
             [&](Arg M, Arg M2) {
               return op_mul_raw(ric2({}, R(), CArg::D(M), fresh),
                                 curvE2({}, R(), CArg::D(M2), fresh));
             },
             fresh)
             .scaled(Scalar::rational(1, 8));
  out += frame_pair2(
             [&](Arg X, Arg X2) {
               return curvE2({R(), CArg::D(X2)}, R(), CArg::D(X), fresh);
             },
             fresh)
             .scaled(Scalar::rational(-1, 4));
  {
    // - RE_{;(Z,Z)}(d/dz_l, d/dzbar_l): a complex trace, not a frame pair.
    int u = fresh++;
    out += curvE2({R(), R()}, CArg::D(Arg{false, u}), CArg::D(Arg{true, u}), fresh)
               .scaled(Scalar(-1));
  }
  return out;
}

ModelOperatorSet build_operators() {
  ModelOperatorSet s;
  s.O2 = normal_order(build_O2_frame());
  s.O3 = normal_order(build_O3_frame());
  s.O4 = normal_order(build_O4_frame());
  return s;
}

bool operators_vanish_without_curvature(const ModelOperatorSet& ops) {
  for (const OperatorExpression* e : {&ops.O2, &ops.O3, &ops.O4})
    for (auto& [k, t] : e->terms())
      if (t.coeff.factors.empty()) return false;
  return true;
}

}  // namespace semiclass

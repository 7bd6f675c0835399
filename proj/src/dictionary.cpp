#include "semiclass/dictionary.hpp"

#include <stdexcept>

namespace semiclass::dict {

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

}  // namespace

TensorPolynomial fderiv(Obs f, std::vector<Index> alpha) {
  return mono(Scalar(1), {TensorFactor::fderiv(f.id, std::move(alpha))});
}

TensorPolynomial value(Obs f) { return fderiv(f, {}); }

TensorPolynomial laplacian(Obs f) {
  return mono(Scalar(-4), {TensorFactor::fderiv(f.id, {U(0), B(0)})});
}

TensorPolynomial laplacian_sq(Obs f) {
  // 16 f_{;iq ib qb} - (16/3) ric_{ml} f_{;l mb}
  // - (4/3)[(ric_{ml;mb} + ric_{mm;lb}) f_{;l} + (ric_{lm;m} + ric_{mm;l}) f_{;lb}],
  // ric expanded through 2 R_{. k k .}.
  TensorPolynomial p;
  p += mono(Scalar(16), {TensorFactor::fderiv(f.id, {U(0), U(1), B(0), B(1)})});
  p += mono(Scalar::rational(-32, 3),
            {Rf(0, 2, 2, 1), TensorFactor::fderiv(f.id, {U(1), B(0)})});
  p += mono(Scalar::rational(-8, 3),
            {Rf(0, 2, 2, 1, {B(0)}), TensorFactor::fderiv(f.id, {U(1)})});
  p += mono(Scalar::rational(-8, 3),
            {Rf(0, 0, 2, 2, {B(1)}), TensorFactor::fderiv(f.id, {U(1)})});
  p += mono(Scalar::rational(-8, 3),
            {Rf(1, 2, 2, 0, {U(0)}), TensorFactor::fderiv(f.id, {B(1)})});
  p += mono(Scalar::rational(-8, 3),
            {Rf(0, 0, 2, 2, {U(1)}), TensorFactor::fderiv(f.id, {B(1)})});
  return p;
}

TensorPolynomial sc_symbol() { return mono(Scalar(1), {TensorFactor::sc()}); }
TensorPolynomial lap_sc_symbol() { return mono(Scalar(1), {TensorFactor::lap_sc()}); }

TensorPolynomial b1() {
  return mono(Scalar::pi_pow(-1), {Rf(0, 0, 1, 1)}) +
         mono(Scalar::pi_pow(-1), {REf(0, 0)});
}

TensorPolynomial b2C() {
  TensorPolynomial p;
  p += mono(Scalar::rational(-1, 48), {TensorFactor::lap_sc()});
  p += mono(Scalar::rational(1, 6), {Rf(0, 1, 2, 3), Rf(1, 0, 3, 2)});
  p += mono(Scalar::rational(-2, 3), {Rf(0, 0, 1, 2), Rf(3, 3, 2, 1)});
  p += mono(Scalar::rational(1, 2), {Rf(0, 0, 1, 1), Rf(2, 2, 3, 3)});
  return p;
}

TensorPolynomial b2E(bool replaced) {
  TensorPolynomial p;
  p += mono(Scalar(1), {REf(0, 0), Rf(1, 1, 2, 2)});
  p += mono(Scalar(-1), {REf(0, 1), Rf(2, 2, 1, 0)});
  p += mono(Scalar::rational(1, 2), {REf(0, 0), REf(1, 1)});
  p += mono(Scalar::rational(-1, 2), {REf(0, 1), REf(1, 0)});
  if (replaced) {
    p += mono(Scalar::rational(1, 2), {REf(0, 0, {U(1), B(1)})});
  } else {
    p += mono(Scalar::rational(-1, 4), {REf(0, 0, {U(1), B(1)})});
    p += mono(Scalar::rational(3, 4), {REf(0, 1, {U(1), B(0)})});
  }
  return p;
}

TensorPolynomial b2(bool replaced) {
  return (b2C() + b2E(replaced)).scaled(Scalar::pi_pow(-2));
}

TensorPolynomial b1f(Obs f) {
  TensorPolynomial p;
  p += contract_mul(sc_symbol(), value(f)).scaled(Scalar::pi_pow(-1, Rational(1, 8)));
  p += contract_mul(mono(Scalar(1), {REf(0, 0)}), value(f)).scaled(Scalar::pi_pow(-1));
  p += mono(Scalar::pi_pow(-1), {TensorFactor::fderiv(f.id, {U(0), B(0)})});
  return p;
}

TensorPolynomial b2f(Obs f) {
  // pi^2 b_{2,f} = (b2C + b2E) f + (1/32)(Delta^E)^2 f + bCf + bEf1 + bEf2.
  TensorPolynomial p = contract_mul(b2C() + b2E(false), value(f));
  p += laplacian_sq(f).scaled(Scalar::rational(1, 32));
  // bCf
  p += mono(Scalar(1), {Rf(0, 0, 1, 1), TensorFactor::fderiv(f.id, {U(2), B(2)})});
  p += mono(Scalar(-1), {Rf(0, 1, 1, 2), TensorFactor::fderiv(f.id, {U(2), B(0)})});
  // bEf1 (abelian)
  p += mono(Scalar::rational(1, 6),
            {REf(0, 0, {B(1)}), TensorFactor::fderiv(f.id, {U(1)})});
  p += mono(Scalar::rational(-5, 12),
            {REf(0, 1, {B(0)}), TensorFactor::fderiv(f.id, {U(1)})});
  p += mono(Scalar::rational(1, 4),
            {REf(0, 1, {B(0)}), TensorFactor::fderiv(f.id, {U(1)})});
  p += mono(Scalar::rational(1, 6),
            {REf(0, 0, {U(1)}), TensorFactor::fderiv(f.id, {B(1)})});
  p += mono(Scalar::rational(-5, 12),
            {REf(1, 0, {U(0)}), TensorFactor::fderiv(f.id, {B(1)})});
  p += mono(Scalar::rational(1, 4),
            {REf(1, 0, {U(0)}), TensorFactor::fderiv(f.id, {B(1)})});
  // bEf2 (abelian)
  p += mono(Scalar(1), {REf(0, 0), TensorFactor::fderiv(f.id, {U(1), B(1)})});
  p += mono(Scalar(-1), {REf(0, 1), TensorFactor::fderiv(f.id, {U(1), B(0)})});
  return p.scaled(Scalar::pi_pow(-2));
}

TensorPolynomial b1fg(Obs f, Obs g) {
  TensorPolynomial p;
  TensorPolynomial fg = contract_mul(value(f), value(g));
  p += contract_mul(sc_symbol(), fg).scaled(Scalar::pi_pow(-1, Rational(1, 8)));
  p += contract_mul(mono(Scalar(1), {REf(0, 0)}), fg).scaled(Scalar::pi_pow(-1));
  p += contract_mul(value(f), laplacian(g)).scaled(Scalar::pi_pow(-1, Rational(-1, 4)));
  p += contract_mul(laplacian(f), value(g)).scaled(Scalar::pi_pow(-1, Rational(-1, 4)));
  // (1/2 pi) <dbar f, grad^{1,0} g> = (1/pi) f_{;ub} g_{;u}
  p += mono(Scalar::pi_pow(-1), {TensorFactor::fderiv(f.id, {B(0)}),
                                 TensorFactor::fderiv(g.id, {U(0)})});
  return p;
}

TensorPolynomial b2fg(Obs f, Obs g) {
  TensorPolynomial p = contract_mul(value(f), b2f(g));
  p += contract_mul(value(g), b2f(f));
  p += contract_mul(contract_mul(value(f), value(g)), b2(false)).scaled(Scalar(-1));

  TensorPolynomial inner;
  // -(1/8) <dbar f, d(Delta g)>: (d Delta g)_u = -4 g_{;u i ib} + (8/3) R_{ukkl} g_{;l}
  inner += mono(Scalar(1), {TensorFactor::fderiv(f.id, {B(0)}),
                            TensorFactor::fderiv(g.id, {U(0), U(1), B(1)})});
  inner += mono(Scalar::rational(-2, 3),
                {Rf(0, 1, 1, 2), TensorFactor::fderiv(f.id, {B(0)}),
                 TensorFactor::fderiv(g.id, {U(2)})});
  // -(1/8) <dbar(Delta f), d g>: (dbar Delta f)_ub = -4 f_{;q qb ub} + (8/3) R_{lkkub} f_{;lb}
  inner += mono(Scalar(1), {TensorFactor::fderiv(f.id, {U(1), B(1), B(0)}),
                            TensorFactor::fderiv(g.id, {U(0)})});
  inner += mono(Scalar::rational(-2, 3),
                {Rf(1, 2, 2, 0), TensorFactor::fderiv(f.id, {B(1)}),
                 TensorFactor::fderiv(g.id, {U(0)})});
  // (1/2) <dbar f, d g> pi b1 = f_{;ub} g_{;u} (R_{kkmm} + RE_{mm})
  inner += mono(Scalar(1), {TensorFactor::fderiv(f.id, {B(0)}),
                            TensorFactor::fderiv(g.id, {U(0)}), Rf(1, 1, 2, 2)});
  inner += mono(Scalar(1), {TensorFactor::fderiv(f.id, {B(0)}),
                            TensorFactor::fderiv(g.id, {U(0)}), REf(1, 1)});
  // -(1/4) <dbar f ^ d g, RE> = -(1/4) * 4 g_{;l} f_{;mb} RE_{ml}
  inner += mono(Scalar(-1), {TensorFactor::fderiv(f.id, {B(0)}),
                             TensorFactor::fderiv(g.id, {U(1)}), REf(0, 1)});
  // (1/16) Delta f Delta g = f_{;q qb} g_{;i ib}
  inner += mono(Scalar(1), {TensorFactor::fderiv(f.id, {U(0), B(0)}),
                            TensorFactor::fderiv(g.id, {U(1), B(1)})});
  // (1/8) <D^{0,1} dbar f, D^{1,0} d g> = (1/2) f_{;mb qb} g_{;m q}
  inner += mono(Scalar::rational(1, 2), {TensorFactor::fderiv(f.id, {B(0), B(1)}),
                                         TensorFactor::fderiv(g.id, {U(0), U(1)})});
  p += inner.scaled(Scalar::pi_pow(-2));
  return p;
}

TensorPolynomial C1_target(Obs f, Obs g) {
  return mono(Scalar::pi_pow(-1, Rational(-1)),
              {TensorFactor::fderiv(f.id, {U(0)}), TensorFactor::fderiv(g.id, {B(0)})});
}

TensorPolynomial C2_target(Obs f, Obs g) {
  TensorPolynomial p;
  p += mono(Scalar::rational(1, 2), {TensorFactor::fderiv(f.id, {U(0), U(1)}),
                                     TensorFactor::fderiv(g.id, {B(0), B(1)})});
  p += mono(Scalar(2), {Rf(0, 2, 2, 1), TensorFactor::fderiv(f.id, {U(1)}),
                        TensorFactor::fderiv(g.id, {B(0)})});
  p += mono(Scalar(1), {REf(0, 1), TensorFactor::fderiv(f.id, {U(1)}),
                        TensorFactor::fderiv(g.id, {B(0)})});
  return p.scaled(Scalar::pi_pow(-2));
}

TensorPolynomial poisson(Obs f, Obs g) {
  TensorPolynomial p;
  p += mono(Scalar::i() * Scalar::pi_pow(-1),
            {TensorFactor::fderiv(f.id, {U(0)}), TensorFactor::fderiv(g.id, {B(0)})});
  p += mono(Scalar(-1) * Scalar::i() * Scalar::pi_pow(-1),
            {TensorFactor::fderiv(f.id, {B(0)}), TensorFactor::fderiv(g.id, {U(0)})});
  return p;
}

TensorPolynomial K3f(Obs f) {
  TensorPolynomial p;
  p += mono(Scalar::rational(1, 6),
            {Rf(0, 0, 1, 1, {B(2)}), TensorFactor::fderiv(f.id, {U(2)})});
  p += mono(Scalar::rational(-1, 3),
            {Rf(0, 0, 1, 2, {B(1)}), TensorFactor::fderiv(f.id, {U(2)})});
  p += mono(Scalar::rational(1, 6),
            {Rf(0, 0, 1, 1, {U(2)}), TensorFactor::fderiv(f.id, {B(2)})});
  p += mono(Scalar::rational(-1, 3),
            {Rf(0, 0, 2, 1, {U(1)}), TensorFactor::fderiv(f.id, {B(2)})});
  p += mono(Scalar::rational(1, 6),
            {REf(0, 0, {B(1)}), TensorFactor::fderiv(f.id, {U(1)})});
  p += mono(Scalar::rational(-1, 2),
            {REf(0, 1, {B(0)}), TensorFactor::fderiv(f.id, {U(1)})});
  p += mono(Scalar::rational(1, 3),
            {REf(0, 1, {B(0)}), TensorFactor::fderiv(f.id, {U(1)})});
  p += mono(Scalar::rational(1, 6),
            {REf(0, 0, {U(1)}), TensorFactor::fderiv(f.id, {B(1)})});
  p += mono(Scalar::rational(-1, 2),
            {REf(1, 0, {U(0)}), TensorFactor::fderiv(f.id, {B(1)})});
  p += mono(Scalar::rational(1, 3),
            {REf(1, 0, {U(0)}), TensorFactor::fderiv(f.id, {B(1)})});
  return p;
}

TensorPolynomial lookup(const std::string& name, Obs f, Obs g) {
  if (name == "Delta f") return laplacian(f);
  if (name == "Delta g") return laplacian(g);
  if (name == "Delta^2 f") return laplacian_sq(f);
  if (name == "sqrt(-1) RE_Lambda") return mono(Scalar(2), {REf(0, 0)});
  if (name == "<dbar f, d g>")
    return mono(Scalar(2), {TensorFactor::fderiv(f.id, {B(0)}),
                            TensorFactor::fderiv(g.id, {U(0)})});
  if (name == "<d f, dbar g>")
    return mono(Scalar(2), {TensorFactor::fderiv(f.id, {U(0)}),
                            TensorFactor::fderiv(g.id, {B(0)})});
  if (name == "<ric_omega, d f ^ dbar g>") {
    // -4 i ric_{lm} f_{;m} g_{;lb}, ric expanded
    return mono(Scalar(-8) * Scalar::i(),
                {Rf(0, 2, 2, 1), TensorFactor::fderiv(f.id, {U(1)}),
                 TensorFactor::fderiv(g.id, {B(0)})});
  }
  if (name == "<d f ^ dbar g, RE>")
    return mono(Scalar(-4), {REf(0, 1), TensorFactor::fderiv(f.id, {U(1)}),
                             TensorFactor::fderiv(g.id, {B(0)})});
  if (name == "{f,g}") return poisson(f, g);
  if (name == "<D10 d f, D01 dbar g>")
    return mono(Scalar(4), {TensorFactor::fderiv(f.id, {U(0), U(1)}),
                            TensorFactor::fderiv(g.id, {B(0), B(1)})});
  throw std::invalid_argument("dictionary: uncatalogued invariant '" + name + "'");
}

}  // namespace semiclass::dict

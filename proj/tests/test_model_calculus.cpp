#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "semiclass/kernel.hpp"
#include "semiclass/geometry/quadrature.hpp"

using namespace semiclass;

namespace {

Index C(int v) { return Index(v, false, true); }  // concrete index

KernelTerm kt(Scalar c, std::vector<VarLetter> vars) {
  return KernelTerm(TensorMonomial(std::move(c)), std::move(vars));
}

KernelPolynomial kpoly(Scalar c, std::vector<VarLetter> vars) {
  return KernelPolynomial(kt(std::move(c), std::move(vars)));
}

OperatorExpression word(std::vector<Letter> w, Scalar c = Scalar(1)) {
  return OperatorExpression(OpTerm(TensorMonomial(std::move(c)), std::move(w)));
}

// Random kernel polynomial with concrete indices 1..n and rational
// coefficients; degree <= maxDeg.
KernelPolynomial random_kernel(std::mt19937_64& rng, int n, int maxDeg) {
  KernelPolynomial k;
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    int deg = static_cast<int>(rng() % (maxDeg + 1));
    std::vector<VarLetter> vars;
    for (int d = 0; d < deg; ++d) {
      VarKind kind = static_cast<VarKind>(rng() % 4);
      int ix = 1 + static_cast<int>(rng() % n);
      vars.push_back({kind, C(ix)});
    }
    long num = static_cast<long>(rng() % 9) - 4;
    if (num == 0) num = 1;
    long den = 1 + static_cast<long>(rng() % 4);
    k += kpoly(Scalar::rational(num, den), std::move(vars));
  }
  return k;
}

// Numeric evaluation of a concrete-index kernel polynomial at points
// (Z, Z') in C^n, as the full kernel including the Gaussian factor P.
std::complex<double> eval_kernel(const KernelPolynomial& k, int n,
                                 const std::vector<std::complex<double>>& Z,
                                 const std::vector<std::complex<double>>& Zp) {
  const double pi = 3.14159265358979323846;
  std::complex<double> poly = 0.0;
  for (auto& [key, t] : k.terms()) {
    std::complex<double> v = t.coeff.coeff.eval(pi, n);
    for (auto& var : t.vars) {
      int i = var.index.id - 1;
      switch (var.kind) {
        case VarKind::Z:
          v *= Z[i];
          break;
        case VarKind::Zbar:
          v *= std::conj(Z[i]);
          break;
        case VarKind::Zp:
          v *= Zp[i];
          break;
        case VarKind::Zpbar:
          v *= std::conj(Zp[i]);
          break;
        default:
          REQUIRE(false);
      }
    }
    poly += v;
  }
  std::complex<double> expo = 0.0;
  for (int i = 0; i < n; ++i)
    expo += -pi / 2.0 *
            (std::norm(Z[i]) + std::norm(Zp[i]) - 2.0 * Z[i] * std::conj(Zp[i]));
  return poly * std::exp(expo);
}

}  // namespace

TEST_CASE("normal order: contracted b+ b gives b b+ + 4 pi n") {
  Index j(0, false);
  OperatorExpression e = word({{LetterKind::BPlus, j}, {LetterKind::B, j}});
  OperatorExpression no = normal_order(e);
  OperatorExpression expect = word({{LetterKind::B, j}, {LetterKind::BPlus, j}}) +
                              word({}, Scalar(4) * Scalar::pi_pow(1) * Scalar::dim_n());
  CHECK(no == expect);
}

TEST_CASE("normal order: b+ zbar at a fixed index") {
  OperatorExpression e = word({{LetterKind::BPlus, C(1)}, {LetterKind::Zbar, C(1)}});
  OperatorExpression no = normal_order(e);
  OperatorExpression expect =
      word({{LetterKind::Zbar, C(1)}, {LetterKind::BPlus, C(1)}}) + word({}, Scalar(2));
  CHECK(no == expect);
}

TEST_CASE("b and b+ on P") {
  auto P = KernelPolynomial::P();
  auto bP = apply_to_P(word({{LetterKind::B, C(1)}}), P);
  KernelPolynomial expect = kpoly(Scalar(2) * Scalar::pi_pow(1), {{VarKind::Zbar, C(1)}}) +
                            kpoly(Scalar(-2) * Scalar::pi_pow(1), {{VarKind::Zpbar, C(1)}});
  CHECK(bP == expect);
  CHECK(apply_to_P(word({{LetterKind::BPlus, C(1)}}), P).is_zero());
}

TEST_CASE("fock form round-trips and kills zbar") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    auto K = random_kernel(rng, 2, 4);
    auto fs = fock_form(K);
    for (auto& f : fs)
      for (auto& v : f.rest.vars) CHECK(v.kind != VarKind::Zbar);
    CHECK(expand_fock(fs) == K);
  }
}

TEST_CASE("projection rules") {
  auto P = KernelPolynomial::P();
  // project(b_q z_l P) = 0
  auto K = apply_to_P(word({{LetterKind::B, C(1)}, {LetterKind::Z, C(2)}}), P);
  CHECK(project(K).is_zero());
  // project(z^beta g(Z') P) = itself
  auto K2 = kpoly(Scalar(1), {{VarKind::Z, C(1)}, {VarKind::Z, C(1)}, {VarKind::Zpbar, C(2)}});
  CHECK(project(K2) == K2);
  // idempotence on a random mix
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    auto R = random_kernel(rng, 2, 4);
    auto p1 = project(R);
    CHECK(project(p1) == p1);
    CHECK((project_perp(R) + p1) == R);
  }
}

TEST_CASE("P F P at (Z,0) for degree-2 F") {
  // F = z_1 zbar_1: (P F P)(Z,0) = (1/pi) P(Z,0).
  auto F = kpoly(Scalar(1), {{VarKind::Z, C(1)}, {VarKind::Zbar, C(1)}});
  auto res = project(F).at_second_origin();
  CHECK(res == kpoly(Scalar::pi_pow(-1), {}));
}

TEST_CASE("inverse of L on the orthogonal complement") {
  auto P = KernelPolynomial::P();
  auto K = apply_to_P(word({{LetterKind::B, C(1)}, {LetterKind::Z, C(2)}}), P);
  auto inv = inv_L_perp(K);
  CHECK(inv == K.scaled(Scalar::pi_pow(-1, Rational(1, 4))));
  // z^beta P is in the kernel of L.
  auto K2 = kpoly(Scalar(1), {{VarKind::Z, C(1)}});
  CHECK(inv_L_perp(K2).is_zero());
  // L o inv_L_perp = project_perp, exactly.
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    auto R = random_kernel(rng, 2, 3);
    auto lhs = apply_to_P(model_L(), inv_L_perp(R));
    CHECK(lhs == project_perp(R));
  }
}

TEST_CASE("compose basics") {
  auto P = KernelPolynomial::P();
  CHECK(compose(P, P) == P);
  // compose(zbar'_i P, z_j P) = (z_j zbar'_i + delta_ij / pi) P
  auto A = kpoly(Scalar(1), {{VarKind::Zpbar, C(1)}});
  auto Bk = kpoly(Scalar(1), {{VarKind::Z, C(1)}});
  auto AB = compose(A, Bk);
  KernelPolynomial expect =
      kpoly(Scalar(1), {{VarKind::Z, C(1)}, {VarKind::Zpbar, C(1)}}) +
      kpoly(Scalar::pi_pow(-1), {});
  CHECK(AB == expect);
  auto B2 = kpoly(Scalar(1), {{VarKind::Z, C(2)}});
  auto AB2 = compose(A, B2);
  CHECK(AB2 == kpoly(Scalar(1), {{VarKind::Z, C(2)}, {VarKind::Zpbar, C(1)}}));
}

TEST_CASE("compose reproduces the reproducing property") {
  std::mt19937_64 rng(31);
  auto P = KernelPolynomial::P();
  for (int t = 0; t < 30; ++t) {
    auto K = random_kernel(rng, 2, 4);
    CHECK(compose(P, K) == project(K));
  }
}

TEST_CASE("wick route vs fock route, 200 random pairs") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng() % 2);
    auto K1 = random_kernel(rng, n, 4);
    auto K2 = random_kernel(rng, n, 4);
    auto w = compose(K1, K2);
    auto f = compose_fock_route(K1, K2);
    CHECK(w == f);
  }
}

TEST_CASE("composition degree parity for parity-homogeneous inputs") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 80; ++t) {
    int n = 1 + static_cast<int>(rng() % 2);
    auto pick = [&](int parity) {
      KernelPolynomial k;
      for (int tt = 0; tt < 2; ++tt) {
        int deg = parity + 2 * static_cast<int>(rng() % 2);
        std::vector<VarLetter> vars;
        for (int d = 0; d < deg; ++d)
          vars.push_back({static_cast<VarKind>(rng() % 4), C(1 + static_cast<int>(rng() % n))});
        k += kpoly(Scalar::rational(1 + static_cast<long>(rng() % 3), 1), std::move(vars));
      }
      return k;
    };
    int p1 = static_cast<int>(rng() % 2), p2 = static_cast<int>(rng() % 2);
    auto K1 = pick(p1), K2 = pick(p2);
    auto w = compose(K1, K2);
    for (auto& [key, term] : w.terms()) CHECK((term.degree() - (p1 + p2)) % 2 == 0);
  }
}

TEST_CASE("compose is associative") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 40; ++t) {
    int n = 1 + static_cast<int>(rng() % 2);
    auto K1 = random_kernel(rng, n, 3);
    auto K2 = random_kernel(rng, n, 3);
    auto K3 = random_kernel(rng, n, 3);
    CHECK(compose(compose(K1, K2), K3) == compose(K1, compose(K2, K3)));
  }
}

TEST_CASE("adjoint properties") {
  auto P = KernelPolynomial::P();
  CHECK(kernel_adjoint(P) == P);
  std::mt19937_64 rng(61);
  for (int t = 0; t < 30; ++t) {
    auto K1 = random_kernel(rng, 2, 3);
    auto K2 = random_kernel(rng, 2, 3);
    CHECK(kernel_adjoint(kernel_adjoint(K1)) == K1);
    CHECK(kernel_adjoint(compose(K1, K2)) ==
          compose(kernel_adjoint(K2), kernel_adjoint(K1)));
  }
}

TEST_CASE("eval origin") {
  auto P = KernelPolynomial::P();
  CHECK(eval_origin(P) == TensorPolynomial::constant(Scalar(1)));
  auto K = kpoly(Scalar(1), {{VarKind::Z, C(1)}, {VarKind::Zpbar, C(2)}});
  CHECK(eval_origin(K).is_zero());
}

TEST_CASE("compose agrees with brute-force Gaussian quadrature at n = 1") {
  // The integrand carries its own Gaussian centered at (Z + Z'')/2; a
  // Gauss-Legendre grid on a window around the center integrates it to
  // near machine precision.
  auto q = semiclass::geo::gauss_legendre(72, -4.0, 4.0);
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 6; ++trial) {
    auto K1 = random_kernel(rng, 1, 3);
    auto K2 = random_kernel(rng, 1, 3);
    auto K = compose(K1, K2);
    std::vector<std::complex<double>> Z = {{0.31, -0.22}}, Zpp = {{-0.17, 0.4}};
    std::complex<double> center = 0.5 * (Z[0] + Zpp[0]);
    std::complex<double> acc = 0.0;
    for (size_t a = 0; a < q.x.size(); ++a)
      for (size_t b = 0; b < q.x.size(); ++b) {
        std::complex<double> u = center + std::complex<double>(q.x[a], q.x[b]);
        std::vector<std::complex<double>> U = {u};
        acc += q.w[a] * q.w[b] * eval_kernel(K1, 1, Z, U) * eval_kernel(K2, 1, U, Zpp);
      }
    std::complex<double> direct = eval_kernel(K, 1, Z, Zpp);
    CHECK(std::abs(acc - direct) < 1e-8 * (1.0 + std::abs(direct)));
  }
}

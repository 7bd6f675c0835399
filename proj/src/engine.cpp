#include "semiclass/engine.hpp"

#include <stdexcept>

namespace semiclass {

Engine::Engine() {
  ops_ = build_operators();
  F_[0] = KernelPolynomial::P();
  F_[1] = KernelPolynomial();

  KernelPolynomial O2P = apply_to_P(ops_.O2, F_[0]);
  po2pZero_ = project(O2P).is_zero();
  l1o2p_ = inv_L_perp(O2P);
  po2l1_ = kernel_adjoint(l1o2p_);
  F_[2] = (l1o2p_ + po2l1_).scaled(Scalar(-1));

  KernelPolynomial O3P = apply_to_P(ops_.O3, F_[0]);
  KernelPolynomial l1o3p = inv_L_perp(O3P);
  F_[3] = (l1o3p + kernel_adjoint(l1o3p)).scaled(Scalar(-1));

  // The eight resolvent terms of the fourth coefficient; the two containing
  // the double projection vanish with P O2 P = 0.
  KernelPolynomial T1 = inv_L_perp(apply_to_P(ops_.O2, l1o2p_));
  KernelPolynomial T2 = inv_L_perp(apply_to_P(ops_.O4, F_[0])).scaled(Scalar(-1));
  KernelPolynomial T3 = kernel_adjoint(T1);
  KernelPolynomial T4 = kernel_adjoint(T2);
  KernelPolynomial T5 = compose(l1o2p_, po2l1_);
  KernelPolynomial T6 = compose(po2l1_, l1o2p_).scaled(Scalar(-1));
  F_[4] = T1 + T2 + T3 + T4 + T5 + T6;
}

const KernelPolynomial& Engine::F(int r) const {
  if (r < 0 || r > 4) throw std::out_of_range("Engine::F: r out of range");
  return F_[r];
}

KernelPolynomial Engine::taylor_kernel(const Observable& f, int k) const {
  KernelPolynomial out;
  for (int j = 0; j <= k; ++j) {
    // j unbarred and k - j barred derivative hooks, all distinct dummies.
    std::vector<Index> alpha;
    std::vector<VarLetter> vars;
    int base = 1 << 23;
    for (int a = 0; a < j; ++a) {
      alpha.emplace_back(base + a, false);
      vars.push_back({VarKind::Z, Index(base + a, false)});
    }
    for (int b = 0; b < k - j; ++b) {
      alpha.emplace_back(base + j + b, true);
      vars.push_back({VarKind::Zbar, Index(base + j + b, false)});
    }
    Rational factorial(1);
    for (int a = 2; a <= j; ++a) factorial *= a;
    for (int b = 2; b <= k - j; ++b) factorial *= b;
    TensorPolynomial jet = f.jet(alpha).scaled(Scalar(Rational(1) / factorial));
    for (auto& [key, m] : jet.terms()) out.add(KernelTerm(m, vars));
  }
  return out;
}

KernelPolynomial Engine::Q(int r, const Observable& f) const {
  KernelPolynomial out;
  for (int r1 = 0; r1 <= r; ++r1) {
    if (r1 == 1) continue;
    for (int r2 = 0; r2 + r1 <= r; ++r2) {
      if (r2 == 1) continue;
      int k = r - r1 - r2;
      if (r1 > 4 || r2 > 4) continue;
      KernelPolynomial middle = pointwise_mul(taylor_kernel(f, k), F_[r2]);
      out += compose(F_[r1], middle);
    }
  }
  return out;
}

KernelPolynomial Engine::Qfg(int r, const Observable& f, const Observable& g) const {
  KernelPolynomial out;
  std::vector<KernelPolynomial> qf(r + 1), qg(r + 1);
  for (int i = 0; i <= r; ++i) {
    qf[i] = Q(i, f);
    qg[i] = Q(i, g);
  }
  for (int r1 = 0; r1 <= r; ++r1) out += compose(qf[r1], qg[r - r1]);
  return out;
}

TensorPolynomial Engine::b_rf(int r, const Observable& f) const {
  return eval_origin(Q(2 * r, f));
}

TensorPolynomial Engine::b_rfg(int r, const Observable& f, const Observable& g) const {
  return eval_origin(Qfg(2 * r, f, g));
}

TensorPolynomial Engine::C1(const Observable& f, const Observable& g) const {
  return b_rfg(1, f, g) - b_rf(1, Observable::product(f, g));
}

Observable Engine::C1_observable(const Observable& f, const Observable& g) const {
  return Observable::grad_pairing(f, g).scaled(Scalar::pi_pow(-1, Rational(-1, 2)));
}

TensorPolynomial Engine::C2(const Observable& f, const Observable& g) const {
  TensorPolynomial fg2 = b_rf(2, Observable::product(f, g));
  TensorPolynomial both = b_rfg(2, f, g);
  TensorPolynomial b1c1 = b_rf(1, C1_observable(f, g));
  return both - fg2 - b1c1;
}

}  // namespace semiclass

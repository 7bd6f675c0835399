#pragma once

#include <array>

#include "semiclass/kernel.hpp"
#include "semiclass/model_operators.hpp"
#include "semiclass/observables.hpp"
#include "semiclass/relations.hpp"

namespace semiclass {

// Resolvent pipeline: builds the model operators, the kernels
// F_r = J_r P of the expansion, and the composition coefficients
// Q_r(f), Q_r(f,g) with their origin values.
class Engine {
 public:
  Engine();

  const ModelOperatorSet& ops() const { return ops_; }
  // F_0 = P, F_1 = 0, F_2, F_3, F_4 (with the vanishing double-projection
  // terms dropped after asserting P O2 P = 0).
  const KernelPolynomial& F(int r) const;
  const KernelPolynomial& L1O2P() const { return l1o2p_; }  // L^{-1} P^perp O2 P
  const KernelPolynomial& PO2L1() const { return po2l1_; }  // its adjoint

  bool PO2P_vanishes() const { return po2pZero_; }

  // Taylor block sum_{|alpha| = k} (d^alpha f)(0) Z^alpha / alpha!.
  KernelPolynomial taylor_kernel(const Observable& f, int k) const;

  // Q_r(f) = sum_{r1+r2+|alpha|=r} K[F_{r1}, (d^alpha f) Z^alpha/alpha! F_{r2}].
  KernelPolynomial Q(int r, const Observable& f) const;
  // Q_r(f,g) = sum_{r1+r2=r} K[Q_{r1}(f), Q_{r2}(g)].
  KernelPolynomial Qfg(int r, const Observable& f, const Observable& g) const;

  TensorPolynomial b_rf(int r, const Observable& f) const;   // Q_{2r}(f)(0,0)
  TensorPolynomial b_rfg(int r, const Observable& f, const Observable& g) const;

  TensorPolynomial C1(const Observable& f, const Observable& g) const;
  TensorPolynomial C2(const Observable& f, const Observable& g) const;
  // The pairing observable entering b_{1, C1(f,g)}.
  Observable C1_observable(const Observable& f, const Observable& g) const;

 private:
  ModelOperatorSet ops_;
  std::array<KernelPolynomial, 5> F_;
  KernelPolynomial l1o2p_, po2l1_;
  bool po2pZero_ = false;
};

}  // namespace semiclass

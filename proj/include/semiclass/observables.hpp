#pragma once

#include <functional>
#include <memory>
#include <string>

#include "semiclass/tensor.hpp"

namespace semiclass {

// A function germ at the base point, represented by its coordinate jets in
// normal coordinates: jet(alpha) is the value of the plain partial d^alpha
// at 0 as a tensor polynomial whose alpha-indices stay open.
//
// Base observables produce formal derivative symbols. Products obey the
// Leibniz rule exactly. The pairing <grad^{1,0} f, dbar g> carries the
// normal-coordinate metric expansion, so its mixed second jets pick up a
// curvature correction; jets are supported through second order.
class Observable {
 public:
  using JetFn = std::function<TensorPolynomial(const std::vector<Index>&)>;

  static Observable base(const std::string& name);
  static Observable product(const Observable& f, const Observable& g);
  // <grad^{1,0} f, dbar g>_omega as a germ (value 2 sum_v f_{;v} g_{;vbar}).
  static Observable grad_pairing(const Observable& f, const Observable& g);

  Observable scaled(const Scalar& s) const;
  TensorPolynomial jet(const std::vector<Index>& alpha) const { return jet_(alpha); }
  TensorPolynomial value() const { return jet_({}); }

 private:
  explicit Observable(JetFn j) : jet_(std::move(j)) {}
  JetFn jet_;
};

}  // namespace semiclass

#pragma once

#include <vector>

namespace semiclass::geo {

struct Quad1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes and weights on [a, b], exact for polynomials of
// degree <= 2n - 1. Newton iteration on the Legendre recurrence.
Quad1D gauss_legendre(int n, double a, double b);

// Uniform periodic (trapezoid) rule on [0, 1) with n nodes.
Quad1D uniform_periodic(int n);

// Pairwise-tree summation with a fixed association order, bit-stable across
// runs and thread counts.
double tree_sum(std::vector<double> v);

}  // namespace semiclass::geo

#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "semiclass/operator_algebra.hpp"

namespace semiclass {

using Cplx = std::complex<double>;
using CMatrix = std::vector<std::vector<Cplx>>;

// Signature of a tensor factor at n = 1 (slot ids are all equal, so only the
// kind and derivative bar pattern matter).
std::string factor_signature_n1(const TensorFactor& f);

// Matrix of the expression on the orthonormalized span of
// { b^a (z^b e^{-pi |z|^2 / 2}) : a + b <= N } at n = 1, built purely from
// the commutation relations and the adjointness of b and b+. Tensor symbols
// are instantiated through `symVals` by their n = 1 signature.
// Throws if N is smaller than the expression degree.
CMatrix fock_matrix(const OperatorExpression& e, int N,
                    const std::map<std::string, double>& symVals);

double matrix_rel_diff(const CMatrix& a, const CMatrix& b);

}  // namespace semiclass

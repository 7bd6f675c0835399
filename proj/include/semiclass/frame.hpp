#pragma once

#include <functional>

#include "semiclass/operator_algebra.hpp"

namespace semiclass {

// A complex frame direction: d/dz_u (hol) or d/dzbar_u (ahol).
struct Arg {
  bool bar = false;
  int id = 0;
};

// Tensor slot argument in a real-frame expression: the radial field R = z + zbar,
// the holomorphic part z, the antiholomorphic part zbar, or an explicit
// complex direction.
struct CArg {
  enum Kind { Rcal, Zvec, Zbarvec, Dir } kind = Rcal;
  Arg dir{};

  static CArg R() { return CArg{Rcal, {}}; }
  static CArg Z() { return CArg{Zvec, {}}; }
  static CArg Zb() { return CArg{Zbarvec, {}}; }
  static CArg D(Arg a) { return CArg{Dir, a}; }
};

using Pair2Fn = std::function<OperatorExpression(Arg, Arg)>;

// sum_i H(e_i, e_i) over a real orthonormal frame, expanded through
// e_{2j-1} = d/dz_j + d/dzbar_j, e_{2j} = i (d/dz_j - d/dzbar_j):
// = 2 sum_u [H(hol_u, ahol_u) + H(ahol_u, hol_u)].
OperatorExpression frame_pair2(const Pair2Fn& H, int& fresh);
// sum_i H(e_i, J e_i) = 2 i sum_u [H(ahol_u, hol_u) - H(hol_u, ahol_u)].
OperatorExpression frame_pair2J(const Pair2Fn& H, int& fresh);

// <R^{TX}_{;(derivs)}(s1, s2) s3, s4>, expanded into curvature symbols with
// the (1,1)-type vanishing rules and antisymmetry signs of the slot pairs.
OperatorExpression curv4(const std::vector<CArg>& derivs, CArg s1, CArg s2, CArg s3, CArg s4,
                         int& fresh);
// ric_{;(derivs)}(a, b), expanded through ric_{uv} = 2 R_{ukkv}.
OperatorExpression ric2(const std::vector<CArg>& derivs, CArg a, CArg b, int& fresh);
// R^E_{;(derivs)}(a, b) for the abelian twist curvature (a 2-form).
OperatorExpression curvE2(const std::vector<CArg>& derivs, CArg a, CArg b, int& fresh);

// nabla_{0, dir}: -b_u/2 for hol_u, +b+_u/2 for ahol_u.
OperatorExpression nabla0(Arg a);

// Scalar curvature br = 8 R_{mqqm} as a constant operator term.
OperatorExpression br_term();
// Contracted twist trace RE_{kk}.
OperatorExpression curvE_trace();

// Product without index freshening; the caller guarantees that shared ids
// are intended contractions.
OperatorExpression op_mul_raw(const OperatorExpression& a, const OperatorExpression& b);

// Formal coordinate derivative of a polynomial operator expression (z/zbar
// letters only) in the direction `dir`.
OperatorExpression op_dz(const OperatorExpression& f, Arg dir);

}  // namespace semiclass

#pragma once

#include "semiclass/frame.hpp"

namespace semiclass {

// The operators of the order-by-order expansion of the rescaled Kodaira
// Laplacian around a point, in normal-ordered form. The twist curvature is
// treated as commuting (abelian twist).
struct ModelOperatorSet {
  OperatorExpression O2;
  OperatorExpression O3;
  OperatorExpression O4;
};

// Real-frame route: each operator is assembled from curvature contractions
// over a real orthonormal frame and converted to the complex b/b+ algebra.
OperatorExpression build_O2_frame();
OperatorExpression build_O3_frame();
OperatorExpression build_O4_frame();

// Normal-ordered set; O2/O3/O4 are formally self-adjoint.
ModelOperatorSet build_operators();

// With every curvature symbol removed the operators vanish identically;
// exposed for the trivial-geometry test.
bool operators_vanish_without_curvature(const ModelOperatorSet& ops);

}  // namespace semiclass

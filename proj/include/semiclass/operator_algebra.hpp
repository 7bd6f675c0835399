#pragma once

#include <map>
#include <string>
#include <vector>

#include "semiclass/tensor.hpp"

namespace semiclass {

// Letters of the model algebra on C^n. As operators, words act right to
// left; the normal-order target is all b leftmost, z/zbar in the middle,
// b+ rightmost, so kernels against P drop b+ immediately.
enum class LetterKind : uint8_t { B, BPlus, Z, Zbar };

struct Letter {
  LetterKind kind;
  Index index;
};

struct OpTerm {
  TensorMonomial coeff;  // scalar and tensor factors
  std::vector<Letter> word;

  OpTerm() = default;
  OpTerm(TensorMonomial c, std::vector<Letter> w) : coeff(std::move(c)), word(std::move(w)) {}

  std::string canonicalize();
  int max_symbolic_id() const;
  OpTerm shifted(int offset) const;
  std::string str() const;
};

class OperatorExpression {
 public:
  OperatorExpression() = default;
  explicit OperatorExpression(OpTerm t) { add(std::move(t)); }

  void add(OpTerm t);
  OperatorExpression operator+(const OperatorExpression& o) const;
  OperatorExpression operator-(const OperatorExpression& o) const;
  OperatorExpression& operator+=(const OperatorExpression& o);
  OperatorExpression scaled(const Scalar& s) const;
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  bool operator==(const OperatorExpression& o) const;
  const std::map<std::string, OpTerm>& terms() const { return terms_; }
  std::string render() const;

 private:
  std::map<std::string, OpTerm> terms_;
};

// Operator product (word concatenation, right factor's indices freshened).
OperatorExpression op_mul(const OperatorExpression& a, const OperatorExpression& b);
// Formal adjoint: reverse the word, b <-> b+, z <-> zbar, conjugate coefficients.
OperatorExpression op_adjoint(const OperatorExpression& e);
// Rewrites every word to the normal-ordered form using
// [b_i, b+_j] = -4 pi delta_ij, [g, b_j] = 2 dg/dz_j, [g, b+_j] = -2 dg/dzbar_j.
OperatorExpression normal_order(const OperatorExpression& e);
OperatorExpression op_commutator(const OperatorExpression& a, const OperatorExpression& b);

// The model operator L = sum_j b_j b+_j.
OperatorExpression model_L();

// Contracts a delta_{xy} into a term made of tensor factors and letters:
// removes nothing itself, but renames/merges the two indices, multiplying the
// scalar by n for a self-contraction. Returns false if the term vanishes
// (distinct concrete indices).
bool delta_merge(TensorMonomial& coeff, std::vector<Letter>& word, const Index& x,
                 const Index& y);

}  // namespace semiclass

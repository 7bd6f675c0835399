#pragma once

#include <map>
#include <string>
#include <vector>

#include "semiclass/operator_algebra.hpp"
#include "semiclass/tensor.hpp"

namespace semiclass {

// Variables of a kernel polynomial F(Z, Z'); the kernel denotes F * P with
// P(Z,Z') the projector kernel. MomA/MomC are internal letters of the Wick
// composition rule and never appear in public kernels.
enum class VarKind : uint8_t { Z, Zbar, Zp, Zpbar, MomA, MomC };

struct VarLetter {
  VarKind kind;
  Index index;
};

struct KernelTerm {
  TensorMonomial coeff;
  std::vector<VarLetter> vars;

  KernelTerm() = default;
  KernelTerm(TensorMonomial c, std::vector<VarLetter> v)
      : coeff(std::move(c)), vars(std::move(v)) {}

  std::string canonicalize();
  int max_symbolic_id() const;
  KernelTerm shifted(int offset) const;
  int degree() const { return static_cast<int>(vars.size()); }
  std::string str() const;
};

class KernelPolynomial {
 public:
  KernelPolynomial() = default;
  explicit KernelPolynomial(KernelTerm t) { add(std::move(t)); }

  // The projector kernel P itself (F = 1).
  static KernelPolynomial P();

  void add(KernelTerm t);
  KernelPolynomial operator+(const KernelPolynomial& o) const;
  KernelPolynomial operator-(const KernelPolynomial& o) const;
  KernelPolynomial& operator+=(const KernelPolynomial& o);
  KernelPolynomial scaled(const Scalar& s) const;
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  bool operator==(const KernelPolynomial& o) const;
  const std::map<std::string, KernelTerm>& terms() const { return terms_; }
  std::string render() const;
  int max_degree() const;

  KernelPolynomial at_first_origin() const;   // Z = 0
  KernelPolynomial at_second_origin() const;  // Z' = 0

 private:
  std::map<std::string, KernelTerm> terms_;
};

// One term of the Fock decomposition: b^alpha applied to a zbar-free kernel.
struct FockTerm {
  std::vector<Index> bIdx;
  KernelTerm rest;
};

// Applies an operator word to a kernel: b+_i -> 2 d/dzbar_i on the polynomial
// factor, b_i -> -2 d/dz_i + 2 pi (zbar_i - zbar'_i), z/zbar multiply.
KernelPolynomial apply_to_P(const OperatorExpression& e, const KernelPolynomial& k);

// Decomposition over the eigenbasis: rewrites zbar_k as b_k/(2 pi) + zbar'_k
// and reorders so every b stands outside; no zbar variables remain.
std::vector<FockTerm> fock_form(const KernelPolynomial& k);
// Re-expands a Fock decomposition back into a kernel polynomial.
KernelPolynomial expand_fock(const std::vector<FockTerm>& fs);

KernelPolynomial project(const KernelPolynomial& k);       // P K (keeps |alpha| = 0)
KernelPolynomial project_perp(const KernelPolynomial& k);  // K - project(K)
// L^{-1} P^perp: scales each |alpha| > 0 Fock term by 1/(4 pi |alpha|).
KernelPolynomial inv_L_perp(const KernelPolynomial& k);

// Wick composition rule: (K1 P) o (K2 P) = K[K1,K2] P. Merged-slot variables
// are split as u = z + a, ubar = zbar'' + c and each moment monomial a^mu
// c^nu integrates to delta_{mu nu} mu! pi^{-|mu|}.
KernelPolynomial compose(const KernelPolynomial& k1, const KernelPolynomial& k2);
// Independent route: decompose K1's second-slot dependence, multiply into K2
// and left-project. Used as a cross-check oracle for `compose`.
KernelPolynomial compose_fock_route(const KernelPolynomial& k1, const KernelPolynomial& k2);

// Kernel adjoint: K*(Z,Z') = conj(K(Z',Z)); swaps z <-> zbar', zbar <-> z'.
KernelPolynomial kernel_adjoint(const KernelPolynomial& k);

// Pointwise product (F P) * G = (F G) P for a polynomial G.
KernelPolynomial pointwise_mul(const KernelPolynomial& a, const KernelPolynomial& b);

// Constant coefficient: the value of the kernel at Z = Z' = 0.
TensorPolynomial eval_origin(const KernelPolynomial& k);

}  // namespace semiclass

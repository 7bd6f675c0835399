#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "semiclass/canon.hpp"
#include "semiclass/scalar.hpp"

namespace semiclass {

// Band of concrete-flagged ids reserved for the free indices of relation
// generators; they survive canonicalization unchanged and are substituted
// when a generator is instantiated.
constexpr int kFreeIndexBase = 500000;

inline Index free_index(int k, bool bar) { return Index(kFreeIndexBase + k, bar, true); }

enum class FactorKind : uint8_t { CurvR, Ric, CurvE, ScalarCurv, LapScalarCurv, FDeriv };

// Observable tags for FDeriv factors.
int register_observable(const std::string& name);
const std::string& observable_name(int id);

// One curvature/derivative symbol. Slots follow the fixed bar pattern of the
// complex frame: CurvR (u, b, u, b), Ric and CurvE (u, b). Derivative indices
// are plain partial derivatives of the component functions in normal
// coordinates, so the list is an unordered multiset kept sorted.
struct TensorFactor {
  FactorKind kind = FactorKind::ScalarCurv;
  int obs = -1;
  std::vector<Index> slots;
  std::vector<Index> derivs;

  static TensorFactor curvR(Index k, Index m, Index l, Index q, std::vector<Index> d = {});
  static TensorFactor ric(Index a, Index b, std::vector<Index> d = {});
  static TensorFactor curvE(Index a, Index b, std::vector<Index> d = {});
  static TensorFactor sc();
  static TensorFactor lap_sc();
  static TensorFactor fderiv(int obs, std::vector<Index> d);

  void validate() const;
  int weight() const;
  void sort_derivs();
  TensorFactor conj() const;
  CanonAtom atom() const;
  // Rearranges slots and derivatives by a full-length index permutation
  // (one of the atom()'s variants).
  void apply_index_perm(const std::vector<int>& perm);
  std::string str(const std::map<int, std::string>& names) const;
};

struct TensorMonomial {
  Scalar coeff = Scalar(1);
  std::vector<TensorFactor> factors;

  TensorMonomial() = default;
  explicit TensorMonomial(Scalar c) : coeff(std::move(c)) {}
  TensorMonomial(Scalar c, std::vector<TensorFactor> fs)
      : coeff(std::move(c)), factors(std::move(fs)) {}

  // Rewrites the monomial into its unique canonical representative and
  // returns the structural key (scalar excluded). Idempotent.
  std::string canonicalize();

  TensorMonomial conj() const;
  int weight() const;
  int max_symbolic_id() const;
  TensorMonomial shifted(int offset) const;
  void validate_pairing() const;  // Einstein pairing: each symbolic id once U once B
  std::string str() const;
};

class TensorPolynomial {
 public:
  TensorPolynomial() = default;
  explicit TensorPolynomial(TensorMonomial m) { add(std::move(m)); }

  static TensorPolynomial constant(Scalar s);
  static TensorPolynomial zero() { return {}; }

  void add(TensorMonomial m);

  TensorPolynomial operator+(const TensorPolynomial& o) const;
  TensorPolynomial operator-(const TensorPolynomial& o) const;
  TensorPolynomial operator*(const TensorPolynomial& o) const;
  TensorPolynomial& operator+=(const TensorPolynomial& o);
  TensorPolynomial scaled(const Scalar& s) const;
  TensorPolynomial conj() const;

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const TensorPolynomial& o) const;
  size_t size() const { return terms_.size(); }
  int max_symbolic_id() const;
  std::set<int> weights() const;

  // Replaces a free (concrete-band) index by a real index everywhere.
  TensorPolynomial substitute_free(int freeId, const Index& target) const;
  std::set<int> free_band_ids() const;

  // Zeroes every monomial containing a CurvE factor (E = trivial line bundle).
  TensorPolynomial drop_curvE() const;

  const std::map<std::string, TensorMonomial>& terms() const { return terms_; }
  std::string render() const;

 private:
  std::map<std::string, TensorMonomial> terms_;
};

inline TensorPolynomial operator*(const Scalar& s, const TensorPolynomial& p) {
  return p.scaled(s);
}

// Expanded Ricci: ric_{a b} := 2 R_{a k k b} with a fresh dummy k chosen
// above every id used in (a, b, d).
TensorPolynomial ric_expanded(Index a, Index b, std::vector<Index> d = {});
// Expanded scalar curvature: 8 R_{m q q m}.
TensorPolynomial sc_expanded();

// Product that keeps open indices as intended contractions between the two
// sides; each side's internally contracted ids are renamed out of the way.
TensorPolynomial contract_mul(const TensorPolynomial& a, const TensorPolynomial& b);

}  // namespace semiclass

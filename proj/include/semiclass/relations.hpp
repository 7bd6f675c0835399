#pragma once

#include <string>
#include <vector>

#include "semiclass/tensor.hpp"

namespace semiclass {

struct Relation {
  std::string name;
  TensorPolynomial poly;  // == 0; free indices in the concrete free band
};

// Bianchi-type identities used only for equality testing, never during
// canonicalization. Contains the curvature/scalar-curvature dictionary
// (sc, Dsc), the contracted and uncontracted second Bianchi identities of a
// Kaehler metric, and the closedness/Bianchi identities of an abelian twist
// curvature.
class RelationSet {
 public:
  static RelationSet standard();

  void add(std::string name, TensorPolynomial p);
  const std::vector<Relation>& generators() const { return gens_; }

 private:
  std::vector<Relation> gens_;
};

struct ModResult {
  bool equal = false;
  TensorPolynomial residue;  // reduced p - q when not equal
  size_t universe = 0;       // monomials touched (diagnostics)
};

// Decides whether p - q lies in the linear span of index-instantiated
// relation generators, by closing the monomial set of p - q under generator
// embeddings and running exact Gaussian elimination. Throws on resource
// exhaustion (budget: total symbol weight <= 8, bounded monomial universe).
ModResult equal_mod_relations(const TensorPolynomial& p, const TensorPolynomial& q,
                              const RelationSet& rels, size_t maxUniverse = 20000,
                              int maxRounds = 8);

}  // namespace semiclass

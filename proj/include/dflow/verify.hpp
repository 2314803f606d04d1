#pragma once

#include <string>
#include <vector>

#include "dflow/category.hpp"
#include "dflow/flow_category.hpp"
#include "dflow/homalg.hpp"

namespace dflow {

// Nondegenerate part of a simplicial set whose nondegenerate simplices are
// closed under faces and have pairwise distinct vertices.  faces[k][s] lists
// the k+1 ordered faces of simplex s as indices into dimension k-1.
struct RegularSimplicialSet {
  std::vector<std::vector<std::string>> labels;
  std::vector<std::vector<std::vector<int>>> faces;

  int dim() const { return (int)labels.size() - 1; }
  long long count(int k) const {
    return k >= 0 && k <= dim() ? (long long)labels[k].size() : 0;
  }
  // face-map simplicial identities on nondegenerate representatives plus
  // regularity: every n-simplex has n+1 distinct vertices
  void validate() const;
  ChainComplex chain_complex() const;
};

// nondegenerate nerve of a finite directed category: k-simplices are
// composable tuples of non-identity morphisms
RegularSimplicialSet nerve_sset(const FiniteCategory& c);

struct IntervalCheck {
  std::string element;
  int rank = 0;
  std::vector<AbelianGroupDescriptor> interval_homology;
  bool pass = false;
};

// Homology-level certificate that a hom poset augmented with a bottom
// element is a graded poset whose open intervals below each element have the
// homology of a sphere one dimension below the element's rank.  Sphere
// verification is by homology equality, not homeomorphism.
struct CwPosetReport {
  std::string source, target;
  bool graded = false;
  bool pass = false;
  std::vector<IntervalCheck> elements;
};

CwPosetReport check_cw_poset(const HomPoset& h, const RegularCWComplex& cx);

// no non-identity endomorphisms and no directed cycle through distinct
// objects, both checked exhaustively
bool check_finite_directed(const FiniteCategory& c);

struct FactorizationCheck {
  bool unique = true;
  std::string morphism;  // first morphism violating uniqueness, if any
  long long count = 1;   // its number of factorizations into indecomposables
  std::vector<std::vector<std::string>> factorizations;  // up to four, as id chains
};

FactorizationCheck check_unique_factorization(const FiniteCategory& c);

// homology of the nondegenerate nerve vanishes in degrees 2..max_dim
bool check_nerve_vanishing(const FiniteCategory& c, int max_dim);

// Collapse engine: for factorization length k descending from the maximum to
// 2, remove the closed interval between each length-k morphism's edge and
// its factorization simplex.  Every removal first verifies the free-pair
// condition (all remaining cofaces of the edge are faces of the simplex) and
// throws Error(NotFreePair) with a witness if it fails.  The result has no
// nondegenerate simplices above dimension 1 and the same homology as the
// input nerve; both are asserted.
RegularSimplicialSet collapse_ufc_nerve(const FiniteCategory& c);

// morphisms are weakly descending (level+1)-chains in the hom posets,
// composed componentwise; level 0 recovers the flow category itself
FiniteCategory level_category(const FlowCategory& fc, int level);

}  // namespace dflow

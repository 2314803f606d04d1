#pragma once

#include <map>
#include <vector>

#include "dflow/flow_category.hpp"
#include "dflow/homalg.hpp"

namespace dflow {

// A (p,q)-bisimplex of the double nerve of the flow category: a composable
// chain of q+1 objects, and for each of the q hom posets along it a weakly
// descending chain of p+1 morphisms (global indices).  Nondegenerate means
// no two consecutive rows agree in every column simultaneously; identity
// columns never occur because identities are not materialized.
struct Bisimplex {
  std::vector<int> objs;
  std::vector<std::vector<int>> cols;

  bool operator==(const Bisimplex&) const = default;
  bool operator<(const Bisimplex& o) const {
    if (objs != o.objs) return objs < o.objs;
    return cols < o.cols;
  }
};

std::vector<Bisimplex> enumerate_bisimplices(const FlowCategory& fc, int p, int q);

struct BigradedPage {
  int r = 0;
  std::map<std::pair<int, int>, AbelianGroupDescriptor> entries;  // nonzero entries only
  std::map<std::pair<int, int>, IntMatrix> differentials;
};

// Spectral sequence of the double complex of the double nerve, filtered so
// the page-zero differential is the vertical (composition-direction) face
// map and the page-one differential is induced by the horizontal one.
//
// The construction enumerates bases for p up to p_max+1 and q up to 3: one
// column past the reported window in each direction, which is exactly what
// exactness of the reported entries requires.  Everything is computed
// integrally; rational output just forgets torsion.
class SpectralEngine {
 public:
  // p_max < 0 selects the default window: one less than the largest
  // dimension gap between critical cells with a nonempty hom set.
  explicit SpectralEngine(const FlowCategory& fc, int p_max = -1);

  int p_max() const { return p_max_; }
  const FlowCategory& flow() const { return fc_; }

  const BigradedPage& e0() const { return page0_; }
  // Checks E1_{p,2} = 0 for every enumerated p (Error(NotCollapsed)
  // otherwise) and records the indecomposable-sum diagnostic.
  const BigradedPage& e1();
  // Cycle-over-boundary subquotients at (p,1) and (0,0); entries anywhere
  // else vanish by the page-one checks, so E2 = Einfty.
  const BigradedPage& e2();
  // H_0 = E2_{0,0}, H_n = E2_{n-1,1}, reported in degrees 0..dim of the
  // complex.  Propagates Error(NotCollapsed) when the collapse checks fail.
  std::vector<AbelianGroupDescriptor> total_homology(Coefficients coeff = Coefficients::integers);

  const std::vector<Bisimplex>& basis(int p, int q) const { return bases_.at({p, q}); }
  const IntMatrix& dv(int p, int q) const { return dv_.at({p, q}); }
  const IntMatrix& dh(int p, int q) const { return dh_.at({p, q}); }

  // rank of the map summing each vertical cycle's morphisms into their
  // indecomposable factors; agreeing with the free rank of E1_{0,1} is the
  // structural description of the bottom row
  long long phi_rank();
  long long e1_bottom_rank();

 private:
  void build_bases();
  void build_differentials();
  void check_squares() const;

  FlowCategory fc_;
  int p_max_ = 0;
  std::map<std::pair<int, int>, std::vector<Bisimplex>> bases_;
  std::map<std::pair<int, int>, std::map<Bisimplex, int>> index_;
  std::map<std::pair<int, int>, IntMatrix> dv_, dh_;
  std::map<std::pair<int, int>, Subquotient> e1_pres_;
  BigradedPage page0_, page1_, page2_;
  bool e1_done_ = false, e2_done_ = false, collapsed_ok_ = false;
  long long phi_rank_ = -1;
};

}  // namespace dflow

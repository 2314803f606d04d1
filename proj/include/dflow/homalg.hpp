#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "dflow/category.hpp"
#include "dflow/complex.hpp"

namespace dflow {

using Int = mpz_class;

// Dense integer matrix over GMP integers.  Everything downstream (Smith
// forms, kernels, subquotients) goes through this type, so overflow is never
// a concern.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_((size_t)rows * cols) {}
  static IntMatrix identity(int n);
  static IntMatrix from_columns(int rows, const std::vector<std::vector<Int>>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

  bool is_zero() const;
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  IntMatrix operator*(const IntMatrix& o) const;
  std::vector<Int> mul(const std::vector<Int>& x) const;
  std::vector<Int> column(int j) const;
  IntMatrix hcat(const IntMatrix& o) const;  // [this | o]

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

// Smith normal form d = u * m * v with both transforms and their inverses
// tracked through the elementary operations.
struct SmithResult {
  IntMatrix d, u, v, uinv, vinv;
  int rank = 0;

  std::vector<Int> invariant_factors() const;  // nonzero diagonal entries, each dividing the next
  // Re-multiplies d = u*m*v, checks u*uinv = I and vinv*v = I (which pins
  // |det u| = |det v| = 1), diagonality, positivity and the divisibility
  // chain.  Throws logic_error on any failure.
  void verify(const IntMatrix& m) const;
};

SmithResult smith_normal_form(const IntMatrix& m);
int matrix_rank(const IntMatrix& m);

// Columns form a basis of the integer kernel lattice (a pure subgroup).
IntMatrix kernel_basis(const IntMatrix& m);

// Exact integer solve a * x = b (b may have several columns); nullopt when
// some column has no integral solution.
std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b);

// Basis of the subgroup of the ambient module generated by the columns.
IntMatrix column_lattice_basis(const IntMatrix& g);

// Isomorphism type of a finitely generated abelian group.
struct AbelianGroupDescriptor {
  long long free = 0;
  std::vector<Int> torsion;  // invariant factors > 1, each dividing the next

  bool is_zero() const { return free == 0 && torsion.empty(); }
  bool operator==(const AbelianGroupDescriptor& o) const = default;
  // "0", "Z", "Z^3", "Z^2+Z/2+Z/4"; rational=true renames Z to Q (torsion
  // must be empty then)
  std::string str(bool rational = false) const;
};

// Subquotient Z/B of a free ambient module: Z is spanned by the independent
// columns of zbasis, B by the columns of bgens (required to lie in Z).  The
// Smith form of the relation matrix turns this into an explicit presentation
// with one generator per non-trivial cyclic factor, which is what induced
// maps are computed against.
struct Subquotient {
  IntMatrix zbasis;      // ambient x k
  IntMatrix bgens;       // ambient x m, original relation generators
  IntMatrix u, uinv;     // change of coordinates from the relation Smith form
  std::vector<Int> diag; // length k: invariant factors of the relations, then zeros
  std::vector<int> kept; // coordinate indices with diag != 1
  SmithResult zsmith;    // Smith form of zbasis, kept for repeated solves

  AbelianGroupDescriptor descriptor() const;
  int generators() const { return (int)kept.size(); }
  Int order(int t) const { return diag[kept[t]]; }  // 0 = infinite
  std::vector<Int> generator(int t) const;  // ambient representative
  // Coordinates of an ambient element of Z in the presentation generators,
  // torsion coordinates reduced into [0, order).  Throws logic_error when z
  // is not in Z.
  std::vector<Int> reduce(const std::vector<Int>& z) const;
  bool is_zero_class(const std::vector<Int>& z) const;
};

Subquotient subquotient(const IntMatrix& zbasis, const IntMatrix& bgens);
AbelianGroupDescriptor quotient_group(const IntMatrix& zbasis, const IntMatrix& bgens);

// Matrix of the map src -> tgt induced by the ambient map m, in presentation
// generator coordinates.  Asserts that m maps Z into Z and B into B and that
// torsion generator orders are respected; failures are logic errors.
IntMatrix induced_map(const Subquotient& src, const Subquotient& tgt, const IntMatrix& m);

enum class Coefficients { integers, rationals };

// Chain complex of free modules in degrees 0..top; boundary[k] maps degree k
// to degree k-1 and boundary[0] has zero rows.
struct ChainComplex {
  std::vector<int> dims;
  std::vector<IntMatrix> boundary;
  std::vector<std::vector<std::string>> labels;  // optional, per degree

  int top() const { return (int)dims.size() - 1; }
  void validate() const;  // shapes and boundary*boundary = 0, throws logic_error
};

// Homology in every degree 0..top.  Over the rationals the torsion is
// dropped and the free rank kept, which is what flatness of Q over Z gives.
std::vector<AbelianGroupDescriptor> homology(const ChainComplex& c,
                                             Coefficients coeff = Coefficients::integers);

ChainComplex simplicial_chain_complex(const SimplicialComplex& sc);

std::vector<AbelianGroupDescriptor> order_complex_homology(const Poset& p,
                                                           Coefficients coeff = Coefficients::integers);

// Chain complex of the nerve, materialized in degrees 0..max_dim+1 so that
// homology of the truncation is exact in degrees <= max_dim.  Throws
// Error(NotFiniteDirected) when the category has a non-identity endomorphism
// or a two-sided hom cycle.
ChainComplex nerve_chain_complex(const FiniteCategory& c, int max_dim);
ChainComplex nerve_chain_complex(const Poset& p, int max_dim);

// Nerve homology in degrees 0..max_dim (computed from the one-past complex).
std::vector<AbelianGroupDescriptor> nerve_homology(const FiniteCategory& c, int max_dim,
                                                   Coefficients coeff = Coefficients::integers);
std::vector<AbelianGroupDescriptor> nerve_homology(const Poset& p, int max_dim,
                                                   Coefficients coeff = Coefficients::integers);

}  // namespace dflow

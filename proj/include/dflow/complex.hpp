#pragma once

#include <optional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dflow/errors.hpp"

namespace dflow {

struct Cell {
  std::string id;
  int dim = 0;
};

// A finite regular CW complex presented combinatorially: cells plus the
// covering-face relation (x covers y when y is a face of x one dimension
// down).  Regularity of attaching maps is an assumption on the input; what
// gets validated is the combinatorial data itself.  Cells are stored sorted
// by id so every index-based traversal in the library is deterministic.
class RegularCWComplex {
 public:
  RegularCWComplex() = default;

  // Checks ids are unique, covering endpoints exist, and every covering pair
  // drops dimension by exactly one.  Throws Error on violation.
  static RegularCWComplex validate(std::vector<Cell> cells,
                                   const std::vector<std::pair<std::string, std::string>>& covering);

  int size() const { return (int)cells_.size(); }
  int dim() const;  // max cell dimension, -1 when empty
  const Cell& cell(int i) const { return cells_[i]; }
  const std::vector<Cell>& cells() const { return cells_; }
  int index_of(const std::string& id) const;  // -1 when absent

  // covering pairs as (upper, lower) cell indices, sorted
  const std::vector<std::pair<int, int>>& covering() const { return covering_; }
  const std::vector<int>& covering_faces(int i) const { return faces_of_[i]; }
  const std::vector<int>& covering_cofaces(int i) const { return cofaces_of_[i]; }

  // strict face = reachable downward through covering pairs (any codimension)
  bool strict_face(int lower, int upper) const { return below_[(size_t)upper * cells_.size() + lower] != 0; }
  const std::vector<int>& strict_faces(int i) const { return strict_faces_of_[i]; }

 private:
  std::vector<Cell> cells_;
  std::map<std::string, int> index_;
  std::vector<std::pair<int, int>> covering_;
  std::vector<std::vector<int>> faces_of_, cofaces_of_, strict_faces_of_;
  std::vector<char> below_;  // closure matrix, below_[u*n+l] = (l strict face of u)
};

// Abstract simplicial complex over named vertices.  Simplices are stored as
// ascending vertex-index lists, ordered by (dimension, lexicographic), and
// the whole set is closed under taking faces.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Facets with arbitrary integer vertex labels; the closure is generated.
  // Throws Error(EmptyFacet) when a facet has no vertices.
  static SimplicialComplex from_facets(const std::vector<std::vector<int>>& facets);

  // Same, with vertices already indexed 0..names.size()-1.
  static SimplicialComplex from_index_facets(std::vector<std::string> names,
                                             const std::vector<std::vector<int>>& facets);

  int size() const { return (int)simplices_.size(); }
  int dim() const;
  int count_in_dim(int d) const;
  const std::vector<std::vector<int>>& simplices() const { return simplices_; }
  int index_of(const std::vector<int>& simplex) const;  // -1 when absent
  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  std::string simplex_id(const std::vector<int>& simplex) const;  // vertex names joined with '.'

  // The same combinatorial object as a regular CW complex; cell ids are the
  // dotted simplex ids.
  RegularCWComplex to_complex() const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::vector<int>> simplices_;
  std::map<std::vector<int>, int> index_;
};

// Finite poset presented by covering pairs (greater, lesser).  The strict
// order is the transitive closure; construction rejects cycles.
class Poset {
 public:
  Poset() = default;
  Poset(std::vector<std::string> elements, std::vector<std::pair<int, int>> covering);

  int size() const { return (int)elements_.size(); }
  const std::string& element(int i) const { return elements_[i]; }
  const std::vector<std::string>& elements() const { return elements_; }
  int index_of(const std::string& name) const;
  const std::vector<std::pair<int, int>>& covering() const { return covering_; }
  bool less(int a, int b) const { return below_[(size_t)a * elements_.size() + b] != 0; }

  Poset opposite() const;

  // Open interval (lower, upper); a missing lower bound means a formal bottom
  // element below everything, so the interval is then {z : z < upper}.
  // Throws Error(NotComparable) unless lower < upper strictly.
  Poset open_interval(const std::optional<std::string>& lower, const std::string& upper) const;

  // All nonempty strictly increasing chains as index lists, in lexicographic
  // order; max_len < 0 means no bound on chain length.
  std::vector<std::vector<int>> strict_chains(int max_len = -1) const;

 private:
  std::vector<std::string> elements_;
  std::vector<std::pair<int, int>> covering_;
  std::vector<char> below_;
};

// Face poset of a complex: elements are cell ids ordered by the face relation.
Poset face_poset(const RegularCWComplex& cx);

// Order complex: vertices are the poset elements, simplices its strict chains.
SimplicialComplex order_complex(const Poset& p);

// Barycentric subdivision = order complex of the face poset; vertex names are
// the cell ids of the input.
SimplicialComplex barycentric_subdivision(const RegularCWComplex& cx);

// A simplicial complex together with its CW incarnation.
std::pair<SimplicialComplex, RegularCWComplex> from_simplicial(const std::vector<std::vector<int>>& facets);

inline Poset open_interval(const Poset& p, const std::optional<std::string>& lower, const std::string& upper) {
  return p.open_interval(lower, upper);
}

}  // namespace dflow

#pragma once

#include <map>
#include <string>
#include <vector>

#include "dflow/category.hpp"
#include "dflow/complex.hpp"
#include "dflow/morse.hpp"

namespace dflow {

// A morphism of the flow category of a gradient field, represented by its
// unique non-repeating cell sequence.  Each step either descends to a strict
// face (any codimension drop) or ascends across a gradient pair.  A single
// cell is the identity of that (critical) cell.
struct MorsePath {
  std::vector<int> cells;
  bool operator==(const MorsePath&) const = default;
  bool operator<(const MorsePath& o) const { return cells < o.cells; }
};

// "f>t>z<b>x": '>' descends, '<' ascends across a pair.
std::string arrow_string(const RegularCWComplex& cx, const MorsePath& p);

// Digraph on all cells whose simple paths between critical cells enumerate
// the morphism representatives: u -> v for every strict face v of u, plus
// x -> y for every pair {x, y} of the field.
struct HomDigraph {
  std::vector<std::vector<int>> out;  // sorted targets per cell
  int edge_count() const;
};
HomDigraph build_digraph(const RegularCWComplex& cx, const GradientVectorField& v);

// Whether the sequence is a valid morphism representative: consecutive steps
// are face descents or pair ascents, and no cell repeats.
bool is_valid_sequence(const RegularCWComplex& cx, const GradientVectorField& v,
                       const std::vector<int>& cells);

// Collapses (a, b, a) stretches across a pair {a, b} and merges adjacent
// duplicates until the sequence is non-repeating.
std::vector<int> reduce_sequence(const RegularCWComplex& cx, const GradientVectorField& v,
                                 std::vector<int> cells);

// Hom(source, target) in depth-first lexicographic order.  Endpoints must be
// critical cells (Error(NonCriticalEndpoint)); Hom(w, w) = {identity}.
std::vector<MorsePath> enumerate_morphisms(const RegularCWComplex& cx, const GradientVectorField& v,
                                           const std::string& source, const std::string& target);

// Sum over descending steps of (dimension drop - 1).
int rank(const RegularCWComplex& cx, const MorsePath& p);

// Covering test: tau covers gamma when rank(tau) = rank(gamma) + 1 (anything
// else is Error(RankMismatch)), the endpoints agree (Error(EndpointMismatch))
// and one sequence is the other with a single cell inserted or removed.
bool covers(const RegularCWComplex& cx, const MorsePath& tau, const MorsePath& gamma);

// Hom(w, z) as a graded poset: the order is the transitive closure of the
// covering relation, which pairs consecutive ranks only.
struct HomPoset {
  std::string source, target;
  std::vector<MorsePath> morphisms;           // lexicographic by cell sequence
  std::vector<int> ranks;
  std::vector<std::pair<int, int>> covering;  // (higher, lower) morphism indices

  int size() const { return (int)morphisms.size(); }
  bool strictly_below(int lower, int higher) const {
    return below_[(size_t)higher * morphisms.size() + lower] != 0;
  }
  int components() const;
  std::map<int, int> rank_histogram() const;
  // The same data as a Poset on arrow strings (used for interval checks and
  // nerve homology).
  Poset as_poset(const RegularCWComplex& cx) const;

  std::vector<char> below_;  // filled by hom_poset
};

HomPoset hom_poset(const RegularCWComplex& cx, const GradientVectorField& v,
                   const std::string& source, const std::string& target);

// q after p: concatenate at the shared endpoint and reduce.  The endpoints
// must be critical and match (Error(NotComposable)).
MorsePath compose(const RegularCWComplex& cx, const GradientVectorField& v, const MorsePath& p,
                  const MorsePath& q);

// Splits a morphism at its interior critical cells; the factors are the
// unique decomposition into indecomposables, in diagrammatic order.  An
// identity factors as the empty list.
std::vector<MorsePath> factorize(const RegularCWComplex& cx, const GradientVectorField& v,
                                 const MorsePath& p);

// Signed step atoms of a sequence: +1 on (upper, lower) for a descending
// step, -1 on (upper, lower) for an ascending one.  No pair of cells can
// occur twice in a non-repeating sequence, so coefficients are always +-1,
// and the map is injective on morphisms — reading the invariant back off
// identifies the sequence.
std::map<std::pair<std::string, std::string>, int> algebraic_invariant(const RegularCWComplex& cx,
                                                                       const MorsePath& p);

// The flow category assembled: objects are the critical cells, hom posets
// cover every ordered object pair, and composition plus unique factorization
// are tabulated globally.
struct FlowCategory {
  RegularCWComplex cx;
  GradientVectorField field;
  std::vector<int> objects;  // critical cell indices, ascending

  struct MorRef {
    int src, tgt, local;  // object positions and index into hom(src,tgt)
  };
  std::vector<MorRef> mors;                       // all non-identity morphisms
  std::map<std::pair<int, int>, HomPoset> hom;    // by object position pair, source != target
  std::map<std::pair<int, int>, int> first_mor;   // (src,tgt) -> base global index
  std::map<std::pair<int, int>, int> composition; // (f, g) -> g after f, global indices
  std::vector<std::vector<int>> factors;          // global -> indecomposable factor chain
  std::vector<char> indecomposable;

  int object_position(const std::string& id) const;
  const HomPoset& hom_at(int src, int tgt) const;
  int global_index(int src, int tgt, int local) const;
  const MorsePath& path(int m) const;
  int compose_mor(int f, int g) const;
  int morphism_count() const { return (int)mors.size(); }
};

FlowCategory build_flow_category(const RegularCWComplex& cx, const GradientVectorField& v);

// Plain finite category view: objects are critical cell ids, morphism ids
// are arrow strings.
FiniteCategory export_category(const FlowCategory& f);

}  // namespace dflow

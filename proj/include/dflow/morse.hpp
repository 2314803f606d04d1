#pragma once

#include <map>
#include <string>
#include <vector>

#include "dflow/complex.hpp"

namespace dflow {

// A candidate discrete Morse function: one real value per cell id.
struct MorseFunction {
  std::map<std::string, double> values;
};

// Discrete gradient vector field on a fixed complex: a partial matching of
// covering pairs (lower, upper), each cell in at most one pair.  Unpaired
// cells are the critical ones.
class GradientVectorField {
 public:
  GradientVectorField() = default;
  explicit GradientVectorField(int n) : partner_(n, -1), upper_(n, 0) {}

  void add_pair(int lower, int upper);
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }  // (lower, upper), sorted
  int partner(int i) const { return partner_[i]; }
  bool is_critical(int i) const { return partner_[i] < 0; }
  bool is_paired_upper(int i) const { return upper_[i] != 0; }
  bool is_paired_lower(int i) const { return partner_[i] >= 0 && !upper_[i]; }
  bool same_pair(int a, int b) const { return partner_[a] == b && b >= 0; }

 private:
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> partner_;
  std::vector<char> upper_;
};

// Checks the discrete Morse condition cell by cell (at most one covering
// coface with non-larger value, at most one covering face with non-smaller
// value) and extracts the induced gradient field.  Throws Error(MissingValue)
// for a cell without a value and Error(NotMorse) naming the offending cell.
GradientVectorField validate_morse(const RegularCWComplex& cx, const MorseFunction& f);

// Cell ids left unpaired by the field, sorted.
std::vector<std::string> critical_cells(const RegularCWComplex& cx, const GradientVectorField& v);

// Validates a raw list of (lower, upper) id pairs as a gradient field: the
// pairs must be covering pairs, disjoint (Error(OverlappingPairs)), and admit
// no closed V-path.  A closed V-path is reported as Error(CyclicVPath) with
// the cell cycle in the message.
GradientVectorField check_acyclic(const RegularCWComplex& cx,
                                  const std::vector<std::pair<std::string, std::string>>& pairs);

// Forman normalization: both members of a pair take the upper cell's value.
// The normalized function is again Morse and induces the same field.
MorseFunction forman_normalize(const RegularCWComplex& cx, const MorseFunction& f,
                               const GradientVectorField& v);

// A Morse function inducing exactly the given field, built from a topological
// order of the pair-contracted covering digraph.
MorseFunction field_to_function(const RegularCWComplex& cx, const GradientVectorField& v);

}  // namespace dflow

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dflow/errors.hpp"

namespace dflow {

// A finite category given by its non-identity morphisms and composition
// table.  Identities are implicit: they are never stored, and composition is
// tabulated only for composable pairs of non-identity morphisms.  The
// categories this library produces are directed (no non-identity
// endomorphisms), which makes all nerve constructions finite.
struct FiniteCategory {
  struct Mor {
    std::string id;
    int src = 0, tgt = 0;
  };

  std::vector<std::string> objects;
  std::vector<Mor> morphisms;
  // (f, g) -> g after f, keyed by morphism indices with tgt(f) = src(g)
  std::map<std::pair<int, int>, int> composition;

  int compose(int f, int g) const {
    if (morphisms[f].tgt != morphisms[g].src)
      throw Error(ErrorKind::NotComposable,
                  morphisms[f].id + " then " + morphisms[g].id);
    auto it = composition.find({f, g});
    if (it == composition.end())
      throw std::logic_error("FiniteCategory: composition table is missing " + morphisms[f].id +
                             " then " + morphisms[g].id);
    return it->second;
  }

  std::vector<int> hom(int a, int b) const {
    std::vector<int> out;
    for (int i = 0; i < (int)morphisms.size(); ++i)
      if (morphisms[i].src == a && morphisms[i].tgt == b) out.push_back(i);
    return out;
  }

  // Internal consistency: every composable pair is tabulated with coherent
  // endpoints and composition is associative.  Violations are bugs, not bad
  // input, hence logic_error.
  void validate() const;
};

class Poset;

// a finite poset as a category: one morphism a -> b per strict relation
// a < b, composed by transitivity
FiniteCategory poset_category(const Poset& p);

}  // namespace dflow

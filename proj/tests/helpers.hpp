#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dflow/complex.hpp"
#include "dflow/errors.hpp"
#include "dflow/io.hpp"
#include "dflow/morse.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(DFLOW_DATA_DIR) + "/" + name;
}

inline dflow::RegularCWComplex load(const std::string& name) {
  return dflow::load_complex(data_path(name));
}

inline dflow::GradientVectorField load_field(const dflow::RegularCWComplex& cx,
                                             const std::string& name) {
  return dflow::check_acyclic(cx, dflow::load_field_pairs(data_path(name)));
}

// Runs f, which must throw dflow::Error, and reports the kind.
template <class F>
dflow::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const dflow::Error& e) {
    return e.kind;
  }
  throw std::logic_error("expected a dflow::Error");
}

// Small random simplicial complex: facets of up to 4 vertices drawn from a
// pool of up to 7, closure capped at max_cells cells.  Some facets enter as
// hollow simplices (their boundary only) so cycles and voids show up often
// enough to make the induced categories nontrivial.
inline dflow::SimplicialComplex random_simplicial(std::mt19937_64& rng, int max_cells = 20) {
  for (;;) {
    const int nv = 4 + (int)(rng() % 4);
    const int nf = 2 + (int)(rng() % 4);
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < nf; ++i) {
      const int sz = 1 + (int)(rng() % 4);
      std::vector<int> f;
      for (int j = 0; j < sz; ++j) f.push_back((int)(rng() % nv));
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      if (f.size() >= 3 && rng() % 3 == 0) {
        for (size_t skip = 0; skip < f.size(); ++skip) {
          std::vector<int> face;
          for (size_t j = 0; j < f.size(); ++j)
            if (j != skip) face.push_back(f[j]);
          facets.push_back(std::move(face));
        }
      } else {
        facets.push_back(std::move(f));
      }
    }
    auto sc = dflow::SimplicialComplex::from_facets(facets);
    if (sc.size() <= max_cells) return sc;
  }
}

// Random matching on the covering pairs, with no acyclicity filter.  Greedy
// over a shuffled covering list, so maximal when keep = 1; smaller keep skips
// each candidate with probability 1 - keep, leaving extra critical cells.
inline std::vector<std::pair<std::string, std::string>> random_pair_set(
    const dflow::RegularCWComplex& cx, std::mt19937_64& rng, double keep = 1.0) {
  auto order = cx.covering();
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> used(cx.size(), 0);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto [up, lo] : order) {
    if (used[up] || used[lo]) continue;
    if (keep < 1.0 && (double)(rng() % 1024) >= keep * 1024.0) continue;
    used[up] = used[lo] = 1;
    pairs.push_back({cx.cell(lo).id, cx.cell(up).id});
  }
  return pairs;
}

// Random acyclic matching: rejection-sample random matchings, then fall back
// to greedy insertion (each candidate pair kept only when the field stays
// acyclic), which always terminates.
inline dflow::GradientVectorField random_matching(const dflow::RegularCWComplex& cx,
                                                  std::mt19937_64& rng, double keep = 1.0) {
  for (int round = 0; round < 40; ++round) {
    auto pairs = random_pair_set(cx, rng, keep);
    try {
      return dflow::check_acyclic(cx, pairs);
    } catch (const dflow::Error&) {
    }
  }
  auto order = cx.covering();
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> used(cx.size(), 0);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto [up, lo] : order) {
    if (used[up] || used[lo]) continue;
    pairs.push_back({cx.cell(lo).id, cx.cell(up).id});
    try {
      dflow::check_acyclic(cx, pairs);
    } catch (const dflow::Error&) {
      pairs.pop_back();
      continue;
    }
    used[up] = used[lo] = 1;
  }
  return dflow::check_acyclic(cx, pairs);
}

// The worked Morse function on the full triangle: vertices 1, 3, 5, edges
// 2, 4, 6 against them, top cell 7.
inline std::pair<dflow::RegularCWComplex, dflow::MorseFunction> triangle_function() {
  auto cx = dflow::SimplicialComplex::from_facets({{0, 1, 2}}).to_complex();
  dflow::MorseFunction f;
  f.values = {{"0", 1.0},   {"1", 3.0},   {"2", 5.0},    {"0.1", 2.0},
              {"1.2", 4.0}, {"0.2", 6.0}, {"0.1.2", 7.0}};
  return {cx, f};
}

}  // namespace testutil

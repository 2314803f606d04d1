#include "dflow/complex.hpp"

#include <algorithm>
#include <set>

namespace dflow {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateCellId: return "DuplicateCellId";
    case ErrorKind::UnknownCellInCovering: return "UnknownCellInCovering";
    case ErrorKind::BadCoveringDimension: return "BadCoveringDimension";
    case ErrorKind::EmptyFacet: return "EmptyFacet";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::MissingValue: return "MissingValue";
    case ErrorKind::NotMorse: return "NotMorse";
    case ErrorKind::OverlappingPairs: return "OverlappingPairs";
    case ErrorKind::CyclicVPath: return "CyclicVPath";
    case ErrorKind::NonCriticalEndpoint: return "NonCriticalEndpoint";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::NotFiniteDirected: return "NotFiniteDirected";
    case ErrorKind::NotCollapsed: return "NotCollapsed";
    case ErrorKind::NotUFC: return "NotUFC";
    case ErrorKind::NotFreePair: return "NotFreePair";
  }
  return "Error";
}

RegularCWComplex RegularCWComplex::validate(std::vector<Cell> cells,
                                            const std::vector<std::pair<std::string, std::string>>& covering) {
  RegularCWComplex cx;
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
  for (int i = 0; i < (int)cells.size(); ++i) {
    if (!cx.index_.emplace(cells[i].id, i).second)
      throw Error(ErrorKind::DuplicateCellId, cells[i].id);
  }
  cx.cells_ = std::move(cells);
  const int n = cx.size();

  std::set<std::pair<int, int>> seen;
  for (const auto& [upper_id, lower_id] : covering) {
    auto up = cx.index_.find(upper_id);
    auto lo = cx.index_.find(lower_id);
    if (up == cx.index_.end()) throw Error(ErrorKind::UnknownCellInCovering, upper_id);
    if (lo == cx.index_.end()) throw Error(ErrorKind::UnknownCellInCovering, lower_id);
    if (cx.cells_[up->second].dim != cx.cells_[lo->second].dim + 1)
      throw Error(ErrorKind::BadCoveringDimension,
                  upper_id + " (dim " + std::to_string(cx.cells_[up->second].dim) + ") over " + lower_id +
                      " (dim " + std::to_string(cx.cells_[lo->second].dim) + ")");
    seen.insert({up->second, lo->second});
  }
  cx.covering_.assign(seen.begin(), seen.end());

  cx.faces_of_.assign(n, {});
  cx.cofaces_of_.assign(n, {});
  for (const auto& [u, l] : cx.covering_) {
    cx.faces_of_[u].push_back(l);
    cx.cofaces_of_[l].push_back(u);
  }

  // transitive closure of the covering relation, walked by descending dimension
  cx.below_.assign((size_t)n * n, 0);
  std::vector<int> by_dim(n);
  for (int i = 0; i < n; ++i) by_dim[i] = i;
  std::sort(by_dim.begin(), by_dim.end(),
            [&](int a, int b) { return cx.cells_[a].dim < cx.cells_[b].dim; });
  for (int u : by_dim) {
    for (int l : cx.faces_of_[u]) {
      cx.below_[(size_t)u * n + l] = 1;
      for (int j = 0; j < n; ++j)
        if (cx.below_[(size_t)l * n + j]) cx.below_[(size_t)u * n + j] = 1;
    }
  }
  cx.strict_faces_of_.assign(n, {});
  for (int u = 0; u < n; ++u)
    for (int l = 0; l < n; ++l)
      if (cx.below_[(size_t)u * n + l]) cx.strict_faces_of_[u].push_back(l);
  return cx;
}

int RegularCWComplex::dim() const {
  int d = -1;
  for (const auto& c : cells_) d = std::max(d, c.dim);
  return d;
}

int RegularCWComplex::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<int>>& facets) {
  std::set<int> labels;
  for (const auto& f : facets) {
    if (f.empty()) throw Error(ErrorKind::EmptyFacet, "facet with no vertices");
    labels.insert(f.begin(), f.end());
  }
  std::vector<int> ordered(labels.begin(), labels.end());
  std::map<int, int> to_index;
  std::vector<std::string> names;
  for (int v : ordered) {
    to_index[v] = (int)names.size();
    names.push_back(std::to_string(v));
  }
  std::vector<std::vector<int>> index_facets;
  for (const auto& f : facets) {
    std::set<int> s;
    for (int v : f) s.insert(to_index[v]);
    index_facets.emplace_back(s.begin(), s.end());
  }
  return from_index_facets(std::move(names), index_facets);
}

SimplicialComplex SimplicialComplex::from_index_facets(std::vector<std::string> names,
                                                       const std::vector<std::vector<int>>& facets) {
  SimplicialComplex sc;
  sc.vertex_names_ = std::move(names);
  // closure under faces: generate all nonempty subsets of each facet
  std::set<std::vector<int>> all;
  for (auto f : facets) {
    if (f.empty()) throw Error(ErrorKind::EmptyFacet, "facet with no vertices");
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    const int k = (int)f.size();
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < k; ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      all.insert(std::move(s));
    }
  }
  sc.simplices_.assign(all.begin(), all.end());
  std::sort(sc.simplices_.begin(), sc.simplices_.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (int i = 0; i < (int)sc.simplices_.size(); ++i) sc.index_[sc.simplices_[i]] = i;
  return sc;
}

int SimplicialComplex::dim() const {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, (int)s.size() - 1);
  return d;
}

int SimplicialComplex::count_in_dim(int d) const {
  int c = 0;
  for (const auto& s : simplices_)
    if ((int)s.size() == d + 1) ++c;
  return c;
}

int SimplicialComplex::index_of(const std::vector<int>& simplex) const {
  auto it = index_.find(simplex);
  return it == index_.end() ? -1 : it->second;
}

std::string SimplicialComplex::simplex_id(const std::vector<int>& simplex) const {
  std::string id;
  for (size_t i = 0; i < simplex.size(); ++i) {
    if (i) id += '.';
    id += vertex_names_[simplex[i]];
  }
  return id;
}

RegularCWComplex SimplicialComplex::to_complex() const {
  std::vector<Cell> cells;
  std::vector<std::pair<std::string, std::string>> covering;
  for (const auto& s : simplices_) {
    cells.push_back({simplex_id(s), (int)s.size() - 1});
    if (s.size() > 1) {
      for (size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> face;
        for (size_t i = 0; i < s.size(); ++i)
          if (i != drop) face.push_back(s[i]);
        covering.push_back({simplex_id(s), simplex_id(face)});
      }
    }
  }
  return RegularCWComplex::validate(std::move(cells), covering);
}

Poset::Poset(std::vector<std::string> elements, std::vector<std::pair<int, int>> covering)
    : elements_(std::move(elements)), covering_(std::move(covering)) {
  const int n = (int)elements_.size();
  std::sort(covering_.begin(), covering_.end());
  covering_.erase(std::unique(covering_.begin(), covering_.end()), covering_.end());
  below_.assign((size_t)n * n, 0);
  // closure by iterating to fixpoint; also detects cycles (an element below itself)
  for (const auto& [g, l] : covering_) below_[(size_t)l * n + g] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [g, l] : covering_)
      for (int j = 0; j < n; ++j)
        if (below_[(size_t)g * n + j] && !below_[(size_t)l * n + j]) {
          below_[(size_t)l * n + j] = 1;
          changed = true;
        }
  }
  for (int i = 0; i < n; ++i)
    if (below_[(size_t)i * n + i]) throw std::logic_error("Poset: covering relation has a cycle at " + elements_[i]);
}

int Poset::index_of(const std::string& name) const {
  for (int i = 0; i < (int)elements_.size(); ++i)
    if (elements_[i] == name) return i;
  return -1;
}

Poset Poset::opposite() const {
  std::vector<std::pair<int, int>> cov;
  cov.reserve(covering_.size());
  for (const auto& [g, l] : covering_) cov.push_back({l, g});
  return Poset(elements_, std::move(cov));
}

Poset Poset::open_interval(const std::optional<std::string>& lower, const std::string& upper) const {
  const int u = index_of(upper);
  if (u < 0) throw Error(ErrorKind::NotComparable, "unknown element " + upper);
  int lo = -1;
  if (lower) {
    lo = index_of(*lower);
    if (lo < 0) throw Error(ErrorKind::NotComparable, "unknown element " + *lower);
    if (!less(lo, u))
      throw Error(ErrorKind::NotComparable, *lower + " is not strictly below " + upper);
  }
  std::vector<int> keep;
  for (int i = 0; i < (int)elements_.size(); ++i)
    if (less(i, u) && (lo < 0 || less(lo, i))) keep.push_back(i);
  std::vector<int> pos(elements_.size(), -1);
  std::vector<std::string> elems;
  for (int i : keep) {
    pos[i] = (int)elems.size();
    elems.push_back(elements_[i]);
  }
  // covering pairs of the interval are not simply inherited covering pairs:
  // recompute from the restricted strict order
  std::vector<std::pair<int, int>> cov;
  for (int a : keep)
    for (int b : keep)
      if (less(b, a)) {
        bool covered = true;
        for (int c : keep)
          if (less(b, c) && less(c, a)) { covered = false; break; }
        if (covered) cov.push_back({pos[a], pos[b]});
      }
  return Poset(std::move(elems), std::move(cov));
}

std::vector<std::vector<int>> Poset::strict_chains(int max_len) const {
  const int n = (int)elements_.size();
  std::vector<std::vector<int>> out;
  std::vector<int> chain;
  // extend() appends every chain starting with the current prefix, in
  // lexicographic index order
  auto extend = [&](auto&& self, int last) -> void {
    out.push_back(chain);
    if (max_len >= 0 && (int)chain.size() >= max_len) return;
    for (int j = 0; j < n; ++j)
      if (less(last, j)) {
        chain.push_back(j);
        self(self, j);
        chain.pop_back();
      }
  };
  for (int i = 0; i < n; ++i) {
    chain.assign(1, i);
    extend(extend, i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poset face_poset(const RegularCWComplex& cx) {
  std::vector<std::string> elems;
  elems.reserve(cx.size());
  for (const auto& c : cx.cells()) elems.push_back(c.id);
  return Poset(std::move(elems), cx.covering());
}

SimplicialComplex order_complex(const Poset& p) {
  std::vector<std::string> names = p.elements();
  // facets = maximal chains; taking all chains as "facets" is equivalent after
  // closure and simpler, at these sizes the waste is irrelevant
  return SimplicialComplex::from_index_facets(std::move(names), p.strict_chains());
}

SimplicialComplex barycentric_subdivision(const RegularCWComplex& cx) {
  return order_complex(face_poset(cx));
}

std::pair<SimplicialComplex, RegularCWComplex> from_simplicial(const std::vector<std::vector<int>>& facets) {
  SimplicialComplex sc = SimplicialComplex::from_facets(facets);
  return {sc, sc.to_complex()};
}

}  // namespace dflow

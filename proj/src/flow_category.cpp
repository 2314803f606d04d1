#include "dflow/flow_category.hpp"

#include <algorithm>
#include <numeric>

namespace dflow {

std::string arrow_string(const RegularCWComplex& cx, const MorsePath& p) {
  std::string out;
  for (size_t i = 0; i < p.cells.size(); ++i) {
    if (i) out += cx.cell(p.cells[i]).dim > cx.cell(p.cells[i - 1]).dim ? '<' : '>';
    out += cx.cell(p.cells[i]).id;
  }
  return out;
}

HomDigraph build_digraph(const RegularCWComplex& cx, const GradientVectorField& v) {
  HomDigraph g;
  g.out.resize(cx.size());
  for (int u = 0; u < cx.size(); ++u) {
    g.out[u] = cx.strict_faces(u);
    if (v.is_paired_lower(u)) g.out[u].push_back(v.partner(u));
    std::sort(g.out[u].begin(), g.out[u].end());
  }
  return g;
}

int HomDigraph::edge_count() const {
  int n = 0;
  for (const auto& e : out) n += (int)e.size();
  return n;
}

bool is_valid_sequence(const RegularCWComplex& cx, const GradientVectorField& v,
                       const std::vector<int>& cells) {
  if (cells.empty()) return false;
  std::vector<int> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (size_t i = 0; i + 1 < cells.size(); ++i) {
    const int a = cells[i], b = cells[i + 1];
    const bool descent = cx.strict_face(b, a);
    const bool ascent = v.is_paired_lower(a) && v.partner(a) == b;
    if (!descent && !ascent) return false;
  }
  return true;
}

std::vector<int> reduce_sequence(const RegularCWComplex& cx, const GradientVectorField& v,
                                 std::vector<int> cells) {
  (void)cx;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < cells.size(); ++i)
      if (cells[i] == cells[i + 1]) {
        cells.erase(cells.begin() + i);
        changed = true;
        break;
      }
    if (changed) continue;
    for (size_t i = 0; i + 2 < cells.size(); ++i)
      if (cells[i] == cells[i + 2] && v.partner(cells[i]) == cells[i + 1]) {
        // (a, b, a) across the pair {a, b} stands for no movement at all
        cells.erase(cells.begin() + i + 1, cells.begin() + i + 3);
        changed = true;
        break;
      }
  }
  return cells;
}

namespace {

int critical_index(const RegularCWComplex& cx, const GradientVectorField& v, const std::string& id) {
  const int i = cx.index_of(id);
  if (i < 0) throw Error(ErrorKind::NonCriticalEndpoint, "unknown cell " + id);
  if (!v.is_critical(i)) throw Error(ErrorKind::NonCriticalEndpoint, id + " is not critical");
  return i;
}

// Depth-first enumeration of all simple digraph paths from w, recording one
// MorsePath per critical tip.  Neighbor lists are sorted, so paths come out
// in lexicographic order of their cell sequences.
std::map<int, std::vector<MorsePath>> enumerate_from(const RegularCWComplex& cx,
                                                     const GradientVectorField& v,
                                                     const HomDigraph& g, int w) {
  std::map<int, std::vector<MorsePath>> out;
  std::vector<char> visited(cx.size(), 0);
  std::vector<int> path{w};
  visited[w] = 1;
  auto dfs = [&](auto&& self, int u) -> void {
    if (v.is_critical(u) && u != w) out[u].push_back({path});
    for (int t : g.out[u]) {
      if (visited[t]) continue;
      visited[t] = 1;
      path.push_back(t);
      self(self, t);
      path.pop_back();
      visited[t] = 0;
    }
  };
  dfs(dfs, w);
  return out;
}

}  // namespace

std::vector<MorsePath> enumerate_morphisms(const RegularCWComplex& cx, const GradientVectorField& v,
                                           const std::string& source, const std::string& target) {
  const int w = critical_index(cx, v, source);
  const int z = critical_index(cx, v, target);
  if (w == z) return {MorsePath{{w}}};
  auto all = enumerate_from(cx, v, build_digraph(cx, v), w);
  auto it = all.find(z);
  return it == all.end() ? std::vector<MorsePath>{} : it->second;
}

int rank(const RegularCWComplex& cx, const MorsePath& p) {
  int r = 0;
  for (size_t i = 0; i + 1 < p.cells.size(); ++i) {
    const int da = cx.cell(p.cells[i]).dim, db = cx.cell(p.cells[i + 1]).dim;
    if (db < da) r += da - db - 1;
  }
  return r;
}

bool covers(const RegularCWComplex& cx, const MorsePath& tau, const MorsePath& gamma) {
  if (tau.cells.front() != gamma.cells.front() || tau.cells.back() != gamma.cells.back())
    throw Error(ErrorKind::EndpointMismatch,
                arrow_string(cx, tau) + " vs " + arrow_string(cx, gamma));
  if (rank(cx, tau) != rank(cx, gamma) + 1)
    throw Error(ErrorKind::RankMismatch, arrow_string(cx, tau) + " does not sit one rank above " +
                                             arrow_string(cx, gamma));
  // one sequence must be the other with a single cell inserted, i.e. a
  // subsequence one element shorter
  const auto& a = tau.cells;
  const auto& b = gamma.cells;
  const auto subseq_one_short = [](const std::vector<int>& shorter, const std::vector<int>& longer) {
    if (shorter.size() + 1 != longer.size()) return false;
    size_t i = 0;
    for (size_t j = 0; j < longer.size() && i < shorter.size(); ++j)
      if (shorter[i] == longer[j]) ++i;
    return i == shorter.size();
  };
  return subseq_one_short(a, b) || subseq_one_short(b, a);
}

HomPoset hom_poset(const RegularCWComplex& cx, const GradientVectorField& v,
                   const std::string& source, const std::string& target) {
  HomPoset h;
  h.source = source;
  h.target = target;
  h.morphisms = enumerate_morphisms(cx, v, source, target);
  std::sort(h.morphisms.begin(), h.morphisms.end());
  const int n = h.size();
  h.ranks.resize(n);
  for (int i = 0; i < n; ++i) h.ranks[i] = rank(cx, h.morphisms[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (h.ranks[i] == h.ranks[j] + 1 && covers(cx, h.morphisms[i], h.morphisms[j]))
        h.covering.push_back({i, j});
  std::sort(h.covering.begin(), h.covering.end());

  h.below_.assign((size_t)n * n, 0);
  for (const auto& [hi, lo] : h.covering) h.below_[(size_t)hi * n + lo] = 1;
  // closure, walking by descending rank
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return h.ranks[a] < h.ranks[b]; });
  for (int u : order)
    for (int m = 0; m < n; ++m)
      if (h.below_[(size_t)u * n + m])
        for (int k = 0; k < n; ++k)
          if (h.below_[(size_t)m * n + k]) h.below_[(size_t)u * n + k] = 1;
  return h;
}

int HomPoset::components() const {
  const int n = size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : covering) parent[find(a)] = find(b);
  int c = 0;
  for (int i = 0; i < n; ++i)
    if (find(i) == i) ++c;
  return c;
}

std::map<int, int> HomPoset::rank_histogram() const {
  std::map<int, int> h;
  for (int r : ranks) ++h[r];
  return h;
}

Poset HomPoset::as_poset(const RegularCWComplex& cx) const {
  std::vector<std::string> elems;
  elems.reserve(morphisms.size());
  for (const auto& m : morphisms) elems.push_back(arrow_string(cx, m));
  return Poset(std::move(elems), covering);
}

MorsePath compose(const RegularCWComplex& cx, const GradientVectorField& v, const MorsePath& p,
                  const MorsePath& q) {
  if (p.cells.empty() || q.cells.empty()) throw Error(ErrorKind::NotComposable, "empty sequence");
  if (p.cells.back() != q.cells.front())
    throw Error(ErrorKind::NotComposable,
                arrow_string(cx, p) + " does not end where " + arrow_string(cx, q) + " starts");
  std::vector<int> cells = p.cells;
  cells.insert(cells.end(), q.cells.begin() + 1, q.cells.end());
  return {reduce_sequence(cx, v, std::move(cells))};
}

std::vector<MorsePath> factorize(const RegularCWComplex& cx, const GradientVectorField& v,
                                 const MorsePath& p) {
  (void)cx;
  if (p.cells.size() <= 1) return {};  // identity is the empty composite
  std::vector<MorsePath> out;
  std::vector<int> current{p.cells.front()};
  for (size_t i = 1; i < p.cells.size(); ++i) {
    current.push_back(p.cells[i]);
    if (v.is_critical(p.cells[i]) && i + 1 < p.cells.size()) {
      out.push_back({current});
      current = {p.cells[i]};
    }
  }
  out.push_back({current});
  return out;
}

std::map<std::pair<std::string, std::string>, int> algebraic_invariant(const RegularCWComplex& cx,
                                                                       const MorsePath& p) {
  std::map<std::pair<std::string, std::string>, int> atoms;
  for (size_t i = 0; i + 1 < p.cells.size(); ++i) {
    const int a = p.cells[i], b = p.cells[i + 1];
    if (cx.cell(b).dim < cx.cell(a).dim)
      atoms[{cx.cell(a).id, cx.cell(b).id}] += 1;
    else
      atoms[{cx.cell(b).id, cx.cell(a).id}] -= 1;
  }
  for (const auto& [key, c] : atoms)
    if (c != 1 && c != -1)
      throw std::logic_error("algebraic invariant: coefficient other than +-1 at (" + key.first +
                             "," + key.second + ")");
  return atoms;
}

int FlowCategory::object_position(const std::string& id) const {
  for (int i = 0; i < (int)objects.size(); ++i)
    if (cx.cell(objects[i]).id == id) return i;
  return -1;
}

const HomPoset& FlowCategory::hom_at(int src, int tgt) const { return hom.at({src, tgt}); }

int FlowCategory::global_index(int src, int tgt, int local) const {
  return first_mor.at({src, tgt}) + local;
}

const MorsePath& FlowCategory::path(int m) const {
  const MorRef& r = mors[m];
  return hom.at({r.src, r.tgt}).morphisms[r.local];
}

int FlowCategory::compose_mor(int f, int g) const {
  auto it = composition.find({f, g});
  if (it == composition.end())
    throw std::logic_error("flow category: composition not tabulated");
  return it->second;
}

FlowCategory build_flow_category(const RegularCWComplex& cx, const GradientVectorField& v) {
  FlowCategory f;
  f.cx = cx;
  f.field = v;
  for (int i = 0; i < cx.size(); ++i)
    if (v.is_critical(i)) f.objects.push_back(i);
  const int no = (int)f.objects.size();

  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b) {
      if (a == b) continue;
      auto key = std::make_pair(a, b);
      f.hom.emplace(key, hom_poset(cx, v, cx.cell(f.objects[a]).id, cx.cell(f.objects[b]).id));
      f.first_mor[key] = (int)f.mors.size();
      const HomPoset& h = f.hom.at(key);
      for (int l = 0; l < h.size(); ++l) f.mors.push_back({a, b, l});
    }

  // composition table; a composite of valid morphisms with critical
  // endpoints is already reduced, but run it through reduce anyway and
  // locate the result in the enumerated hom set
  std::map<std::pair<int, int>, std::map<MorsePath, int>> lookup;
  for (int m = 0; m < (int)f.mors.size(); ++m) {
    const auto& r = f.mors[m];
    lookup[{r.src, r.tgt}][f.path(m)] = m;
  }
  for (int m1 = 0; m1 < (int)f.mors.size(); ++m1)
    for (int m2 = 0; m2 < (int)f.mors.size(); ++m2) {
      if (f.mors[m1].tgt != f.mors[m2].src) continue;
      MorsePath c = compose(cx, v, f.path(m1), f.path(m2));
      auto hm = lookup.find({f.mors[m1].src, f.mors[m2].tgt});
      if (hm == lookup.end() || !hm->second.count(c))
        throw std::logic_error("flow category: composite " + arrow_string(cx, c) +
                               " is not an enumerated morphism");
      f.composition[{m1, m2}] = hm->second.at(c);
    }

  // unique factorization: split at interior critical cells
  std::vector<int> obj_pos(cx.size(), -1);
  for (int i = 0; i < no; ++i) obj_pos[f.objects[i]] = i;
  f.factors.resize(f.mors.size());
  f.indecomposable.assign(f.mors.size(), 0);
  for (int m = 0; m < (int)f.mors.size(); ++m) {
    auto parts = factorize(cx, v, f.path(m));
    f.indecomposable[m] = parts.size() == 1;
    for (const auto& part : parts) {
      auto hm = lookup.find({obj_pos[part.cells.front()], obj_pos[part.cells.back()]});
      if (hm == lookup.end() || !hm->second.count(part))
        throw std::logic_error("flow category: factor is not an enumerated morphism");
      f.factors[m].push_back(hm->second.at(part));
    }
  }
  return f;
}

FiniteCategory export_category(const FlowCategory& f) {
  FiniteCategory c;
  for (int o : f.objects) c.objects.push_back(f.cx.cell(o).id);
  for (int m = 0; m < f.morphism_count(); ++m)
    c.morphisms.push_back({arrow_string(f.cx, f.path(m)), f.mors[m].src, f.mors[m].tgt});
  c.composition = f.composition;
  c.validate();
  return c;
}

}  // namespace dflow

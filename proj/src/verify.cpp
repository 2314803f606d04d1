#include "dflow/verify.hpp"

#include <algorithm>
#include <set>

namespace dflow {

namespace {

// composable tuples of non-identity morphisms per length, until a length is
// unreachable; directedness bounds the length by the object count
std::vector<std::vector<std::vector<int>>> composable_tuples(const FiniteCategory& c) {
  std::vector<std::vector<std::vector<int>>> tuples(2);
  for (int f = 0; f < (int)c.morphisms.size(); ++f) tuples[1].push_back({f});
  while (!tuples.back().empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& t : tuples.back())
      for (int g = 0; g < (int)c.morphisms.size(); ++g)
        if (c.morphisms[g].src == c.morphisms[t.back()].tgt) {
          auto ext = t;
          ext.push_back(g);
          next.push_back(std::move(ext));
        }
    std::sort(next.begin(), next.end());
    tuples.push_back(std::move(next));
  }
  tuples.pop_back();
  if (tuples.size() == 1) tuples.push_back({});  // no morphisms at all
  return tuples;
}

std::string tuple_label(const FiniteCategory& c, const std::vector<int>& t) {
  std::string label;
  for (size_t j = 0; j < t.size(); ++j) label += (j ? ";" : "") + c.morphisms[t[j]].id;
  return label;
}

struct FactData {
  std::vector<std::vector<std::pair<int, int>>> decomp;  // (f,g) with g after f = m
  std::vector<char> indec;
  std::vector<long long> count;
  std::vector<std::vector<int>> chain;  // the factorization when counts are all 1
};

FactData factorization_data(const FiniteCategory& c) {
  const int nm = (int)c.morphisms.size();
  FactData d;
  d.decomp.resize(nm);
  for (const auto& [key, h] : c.composition) d.decomp[h].push_back(key);
  for (auto& list : d.decomp) std::sort(list.begin(), list.end());
  d.indec.resize(nm);
  for (int m = 0; m < nm; ++m) d.indec[m] = d.decomp[m].empty();

  d.count.assign(nm, -1);
  auto count = [&](auto&& self, int m) -> long long {
    if (d.count[m] >= 0) return d.count[m];
    long long total = d.indec[m] ? 1 : 0;
    for (const auto& [f, g] : d.decomp[m])
      if (d.indec[f]) total += self(self, g);
    return d.count[m] = total;
  };
  for (int m = 0; m < nm; ++m) count(count, m);

  d.chain.resize(nm);
  auto chain = [&](auto&& self, int m) -> const std::vector<int>& {
    if (!d.chain[m].empty()) return d.chain[m];
    if (d.indec[m]) return d.chain[m] = {m};
    for (const auto& [f, g] : d.decomp[m])
      if (d.indec[f]) {
        std::vector<int> out = {f};
        const auto& rest = self(self, g);
        out.insert(out.end(), rest.begin(), rest.end());
        return d.chain[m] = std::move(out);
      }
    throw std::logic_error("factorization: no first indecomposable factor");
  };
  for (int m = 0; m < nm; ++m) chain(chain, m);
  return d;
}

void enumerate_factorizations(const FiniteCategory& c, const FactData& d, int m,
                              std::vector<std::string>& prefix,
                              std::vector<std::vector<std::string>>& out, size_t cap) {
  if (out.size() >= cap) return;
  if (d.indec[m]) {
    auto full = prefix;
    full.push_back(c.morphisms[m].id);
    out.push_back(std::move(full));
    return;
  }
  for (const auto& [f, g] : d.decomp[m])
    if (d.indec[f]) {
      prefix.push_back(c.morphisms[f].id);
      enumerate_factorizations(c, d, g, prefix, out, cap);
      prefix.pop_back();
    }
}

}  // namespace

void RegularSimplicialSet::validate() const {
  const int d = dim();
  for (int k = 1; k <= d; ++k) {
    if (faces[k].size() != labels[k].size())
      throw std::logic_error("simplicial set: label/face count mismatch");
    for (const auto& fs : faces[k]) {
      if ((int)fs.size() != k + 1) throw std::logic_error("simplicial set: wrong face count");
      for (int f : fs)
        if (f < 0 || f >= (int)labels[k - 1].size())
          throw std::logic_error("simplicial set: face index out of range");
    }
  }
  for (int k = 2; k <= d; ++k)
    for (int s = 0; s < (int)labels[k].size(); ++s)
      for (int j = 1; j <= k; ++j)
        for (int i = 0; i < j; ++i)
          if (faces[k - 1][faces[k][s][j]][i] != faces[k - 1][faces[k][s][i]][j - 1])
            throw std::logic_error("simplicial set: face maps violate the simplicial identities");
  // regularity: n+1 distinct vertices per n-simplex
  std::vector<std::vector<std::set<int>>> verts(d + 1);
  if (d >= 0) {
    verts[0].resize(labels[0].size());
    for (int s = 0; s < (int)labels[0].size(); ++s) verts[0][s] = {s};
  }
  for (int k = 1; k <= d; ++k) {
    verts[k].resize(labels[k].size());
    for (int s = 0; s < (int)labels[k].size(); ++s) {
      for (int f : faces[k][s])
        verts[k][s].insert(verts[k - 1][f].begin(), verts[k - 1][f].end());
      if ((int)verts[k][s].size() != k + 1)
        throw std::logic_error("simplicial set: simplex with repeated vertices");
    }
  }
}

ChainComplex RegularSimplicialSet::chain_complex() const {
  const int d = std::max(dim(), 0);
  ChainComplex cc;
  cc.dims.assign(d + 1, 0);
  cc.labels.assign(d + 1, {});
  cc.boundary.resize(d + 1);
  for (int k = 0; k <= dim(); ++k) {
    cc.dims[k] = (int)labels[k].size();
    cc.labels[k] = labels[k];
  }
  cc.boundary[0] = IntMatrix(0, cc.dims[0]);
  for (int k = 1; k <= d; ++k) {
    cc.boundary[k] = IntMatrix(cc.dims[k - 1], cc.dims[k]);
    for (int s = 0; s < cc.dims[k]; ++s)
      for (int i = 0; i <= k; ++i)
        cc.boundary[k].at(faces[k][s][i], s) += i % 2 == 0 ? 1 : -1;
  }
  cc.validate();
  return cc;
}

RegularSimplicialSet nerve_sset(const FiniteCategory& c) {
  if (!check_finite_directed(c))
    throw Error(ErrorKind::NotFiniteDirected, "nerve requires a finite directed category");
  auto tuples = composable_tuples(c);
  const int d = (int)tuples.size() - 1;

  RegularSimplicialSet s;
  s.labels.resize(d + 1);
  s.faces.resize(d + 1);
  s.labels[0] = c.objects;
  s.faces[0].assign(c.objects.size(), {});

  std::vector<std::map<std::vector<int>, int>> pos(d + 1);
  for (int k = 1; k <= d; ++k)
    for (int i = 0; i < (int)tuples[k].size(); ++i) pos[k][tuples[k][i]] = i;

  for (int k = 1; k <= d; ++k)
    for (const auto& t : tuples[k]) {
      s.labels[k].push_back(tuple_label(c, t));
      std::vector<int> fs(k + 1);
      if (k == 1) {
        fs[0] = c.morphisms[t[0]].tgt;
        fs[1] = c.morphisms[t[0]].src;
      } else {
        for (int face = 0; face <= k; ++face) {
          std::vector<int> ft;
          if (face == 0) {
            ft.assign(t.begin() + 1, t.end());
          } else if (face == k) {
            ft.assign(t.begin(), t.end() - 1);
          } else {
            ft.assign(t.begin(), t.begin() + (face - 1));
            ft.push_back(c.compose(t[face - 1], t[face]));
            ft.insert(ft.end(), t.begin() + face + 1, t.end());
          }
          fs[face] = pos[k - 1].at(ft);
        }
      }
      s.faces[k].push_back(std::move(fs));
    }
  return s;
}

CwPosetReport check_cw_poset(const HomPoset& h, const RegularCWComplex& cx) {
  CwPosetReport rep;
  rep.source = h.source;
  rep.target = h.target;

  rep.graded = true;
  std::vector<char> has_lower(h.size(), 0);
  for (const auto& [hi, lo] : h.covering) {
    if (h.ranks[hi] != h.ranks[lo] + 1) rep.graded = false;
    has_lower[hi] = 1;
  }
  for (int i = 0; i < h.size(); ++i)
    if (!has_lower[i] && h.ranks[i] != 0) rep.graded = false;

  rep.pass = rep.graded;
  for (int x = 0; x < h.size(); ++x) {
    IntervalCheck ic;
    ic.element = arrow_string(cx, h.morphisms[x]);
    ic.rank = h.ranks[x];

    std::vector<int> members;
    std::vector<int> where(h.size(), -1);
    for (int y = 0; y < h.size(); ++y)
      if (h.strictly_below(y, x)) {
        where[y] = (int)members.size();
        members.push_back(y);
      }
    std::vector<std::string> elements;
    for (int y : members) elements.push_back(arrow_string(cx, h.morphisms[y]));
    std::vector<std::pair<int, int>> covering;
    for (const auto& [hi, lo] : h.covering)
      if (where[hi] >= 0 && where[lo] >= 0) covering.push_back({where[hi], where[lo]});
    ic.interval_homology = order_complex_homology(Poset(elements, covering));

    const int r = ic.rank;
    std::vector<AbelianGroupDescriptor> expected(r >= 1 ? r : 0);
    if (r >= 1) {
      expected[0].free += 1;
      expected[r - 1].free += 1;
    }
    auto got = ic.interval_homology;
    while (got.size() < expected.size()) got.push_back({});
    while (expected.size() < got.size()) expected.push_back({});
    ic.pass = got == expected;

    rep.pass = rep.pass && ic.pass;
    rep.elements.push_back(std::move(ic));
  }
  return rep;
}

bool check_finite_directed(const FiniteCategory& c) {
  for (const auto& m : c.morphisms)
    if (m.src == m.tgt) return false;
  // directed cycle through distinct objects
  const int no = (int)c.objects.size();
  std::vector<std::vector<int>> out(no);
  for (const auto& m : c.morphisms) out[m.src].push_back(m.tgt);
  std::vector<int> color(no, 0);
  auto dfs = [&](auto&& self, int u) -> bool {  // true = cycle found
    color[u] = 1;
    for (int v : out[u]) {
      if (color[v] == 1) return true;
      if (color[v] == 0 && self(self, v)) return true;
    }
    color[u] = 2;
    return false;
  };
  for (int u = 0; u < no; ++u)
    if (color[u] == 0 && dfs(dfs, u)) return false;
  return true;
}

FactorizationCheck check_unique_factorization(const FiniteCategory& c) {
  FactData d = factorization_data(c);
  FactorizationCheck out;
  for (int m = 0; m < (int)c.morphisms.size(); ++m)
    if (d.count[m] != 1) {
      out.unique = false;
      out.morphism = c.morphisms[m].id;
      out.count = d.count[m];
      std::vector<std::string> prefix;
      enumerate_factorizations(c, d, m, prefix, out.factorizations, 4);
      return out;
    }
  return out;
}

bool check_nerve_vanishing(const FiniteCategory& c, int max_dim) {
  auto fcheck = check_unique_factorization(c);
  if (!fcheck.unique)
    throw Error(ErrorKind::NotUFC, "morphism " + fcheck.morphism + " has " +
                                       std::to_string(fcheck.count) + " factorizations");
  auto h = nerve_homology(c, max_dim);
  for (int k = 2; k < (int)h.size(); ++k)
    if (!h[k].is_zero()) return false;
  return true;
}

RegularSimplicialSet collapse_ufc_nerve(const FiniteCategory& c) {
  auto fcheck = check_unique_factorization(c);
  if (!fcheck.unique)
    throw Error(ErrorKind::NotUFC, "morphism " + fcheck.morphism + " has " +
                                       std::to_string(fcheck.count) + " factorizations");
  FactData fd = factorization_data(c);

  RegularSimplicialSet s = nerve_sset(c);
  s.validate();
  const auto before = homology(s.chain_complex());

  const int d = s.dim();
  auto tuples = composable_tuples(c);
  std::vector<std::map<std::vector<int>, int>> pos(d + 1);
  for (int k = 1; k <= d; ++k)
    for (int i = 0; i < (int)tuples[k].size(); ++i) pos[k][tuples[k][i]] = i;

  // direct cofaces, for upward closures
  std::vector<std::vector<std::vector<int>>> cof(d + 1);
  for (int k = 0; k <= d; ++k) cof[k].resize(s.labels[k].size());
  for (int k = 1; k <= d; ++k)
    for (int t = 0; t < (int)s.faces[k].size(); ++t)
      for (int f : s.faces[k][t]) cof[k - 1][f].push_back(t);

  std::vector<std::vector<char>> alive(d + 1);
  for (int k = 0; k <= d; ++k) alive[k].assign(s.labels[k].size(), 1);

  int maxlen = 1;
  for (const auto& ch : fd.chain) maxlen = std::max(maxlen, (int)ch.size());

  using Cell = std::pair<int, int>;  // (dimension, index)
  for (int k = maxlen; k >= 2; --k) {
    std::vector<int> ms;
    for (int m = 0; m < (int)c.morphisms.size(); ++m)
      if ((int)fd.chain[m].size() == k) ms.push_back(m);
    std::sort(ms.begin(), ms.end(),
              [&](int a, int b) { return c.morphisms[a].id < c.morphisms[b].id; });

    for (int m : ms) {
      const Cell tau = {1, m};  // length-1 tuples sit at their morphism index
      const Cell sigma = {k, pos[k].at(fd.chain[m])};
      if (!alive[tau.first][tau.second] || !alive[sigma.first][sigma.second])
        throw std::logic_error("collapse: interval endpoint already removed");

      // all cofaces of the edge, transitively
      std::set<Cell> up;
      std::vector<Cell> stack = {tau};
      while (!stack.empty()) {
        Cell cur = stack.back();
        stack.pop_back();
        for (int t : cof[cur.first][cur.second]) {
          Cell nxt = {cur.first + 1, t};
          if (up.insert(nxt).second) stack.push_back(nxt);
        }
      }
      // closed face set of the factorization simplex
      std::set<Cell> down = {sigma};
      stack = {sigma};
      while (!stack.empty()) {
        Cell cur = stack.back();
        stack.pop_back();
        if (cur.first == 0) continue;
        for (int f : s.faces[cur.first][cur.second]) {
          Cell nxt = {cur.first - 1, f};
          if (down.insert(nxt).second) stack.push_back(nxt);
        }
      }
      if (!up.count(sigma))
        throw std::logic_error("collapse: factorization simplex is not a coface of the edge");
      for (const Cell& u : up)
        if (alive[u.first][u.second] && !down.count(u))
          throw Error(ErrorKind::NotFreePair,
                      "coface " + s.labels[u.first][u.second] + " of edge " + c.morphisms[m].id +
                          " is not a face of " + s.labels[sigma.first][sigma.second]);
      alive[tau.first][tau.second] = 0;
      for (const Cell& u : up) alive[u.first][u.second] = 0;
    }
  }

  for (int k = 2; k <= d; ++k)
    for (char a : alive[k])
      if (a) throw std::logic_error("collapse: a simplex above dimension 1 survived");

  RegularSimplicialSet result;
  const int rd = d >= 1 && std::count(alive[1].begin(), alive[1].end(), 1) > 0 ? 1 : 0;
  result.labels.resize(rd + 1);
  result.faces.resize(rd + 1);
  result.labels[0] = s.labels[0];  // vertices are never inside a removed interval
  result.faces[0] = s.faces[0];
  if (rd == 1)
    for (int e = 0; e < (int)s.labels[1].size(); ++e)
      if (alive[1][e]) {
        result.labels[1].push_back(s.labels[1][e]);
        result.faces[1].push_back(s.faces[1][e]);
      }
  result.validate();

  auto after = homology(result.chain_complex());
  auto padded_before = before;
  while (after.size() < padded_before.size()) after.push_back({});
  while (padded_before.size() < after.size()) padded_before.push_back({});
  if (!(after == padded_before)) throw std::logic_error("collapse: homology changed");
  return result;
}

FiniteCategory level_category(const FlowCategory& fc, int level) {
  const int n = level + 1;
  const int no = (int)fc.objects.size();
  FiniteCategory c;
  for (int o : fc.objects) c.objects.push_back(fc.cx.cell(o).id);

  std::map<std::vector<int>, int> index;  // global morphism chain -> morphism index
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b) {
      if (a == b) continue;
      const HomPoset& h = fc.hom_at(a, b);
      if (h.size() == 0) continue;
      const int base = fc.first_mor.at({a, b});
      std::vector<int> chain;
      auto extend = [&](auto&& self) -> void {
        if ((int)chain.size() == n) {
          std::vector<int> global = chain;
          for (int& m : global) m += base;
          std::string id;
          for (size_t j = 0; j < global.size(); ++j)
            id += (j ? "|" : "") + arrow_string(fc.cx, fc.path(global[j]));
          index[global] = (int)c.morphisms.size();
          c.morphisms.push_back({id, a, b});
          return;
        }
        const int last = chain.back();
        for (int j = 0; j < h.size(); ++j)
          if (j == last || h.strictly_below(j, last)) {
            chain.push_back(j);
            self(self);
            chain.pop_back();
          }
      };
      for (int i = 0; i < h.size(); ++i) {
        chain = {i};
        extend(extend);
      }
    }

  std::vector<std::vector<int>> chain_of(c.morphisms.size());
  for (const auto& [ch, i] : index) chain_of[i] = ch;
  for (int f = 0; f < (int)c.morphisms.size(); ++f)
    for (int g = 0; g < (int)c.morphisms.size(); ++g) {
      if (c.morphisms[f].tgt != c.morphisms[g].src) continue;
      std::vector<int> comp(n);
      for (int r = 0; r < n; ++r) comp[r] = fc.compose_mor(chain_of[f][r], chain_of[g][r]);
      auto it = index.find(comp);
      if (it == index.end())
        throw std::logic_error("level category: componentwise composite is not a weak chain");
      c.composition[{f, g}] = it->second;
    }
  c.validate();
  return c;
}

}  // namespace dflow

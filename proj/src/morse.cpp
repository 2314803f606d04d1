#include "dflow/morse.hpp"

#include <algorithm>

namespace dflow {

void GradientVectorField::add_pair(int lower, int upper) {
  partner_[lower] = upper;
  partner_[upper] = lower;
  upper_[upper] = 1;
  pairs_.push_back({lower, upper});
  std::sort(pairs_.begin(), pairs_.end());
}

GradientVectorField validate_morse(const RegularCWComplex& cx, const MorseFunction& f) {
  const int n = cx.size();
  std::vector<double> val(n);
  for (int i = 0; i < n; ++i) {
    auto it = f.values.find(cx.cell(i).id);
    if (it == f.values.end()) throw Error(ErrorKind::MissingValue, cx.cell(i).id);
    val[i] = it->second;
  }

  // up[x] = the covering coface that fails to increase, down[x] likewise below
  std::vector<int> up(n, -1), down(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y : cx.covering_cofaces(x)) {
      if (val[y] <= val[x]) {
        if (up[x] >= 0)
          throw Error(ErrorKind::NotMorse,
                      cx.cell(x).id + ": more than one covering coface with non-larger value");
        up[x] = y;
      }
    }
    for (int y : cx.covering_faces(x)) {
      if (val[y] >= val[x]) {
        if (down[x] >= 0)
          throw Error(ErrorKind::NotMorse,
                      cx.cell(x).id + ": more than one covering face with non-smaller value");
        down[x] = y;
      }
    }
  }
  // On a regular complex the two exceptions cannot happen at the same cell
  // (Forman's lemma); with regularity on trust this still needs a check.
  for (int x = 0; x < n; ++x)
    if (up[x] >= 0 && down[x] >= 0)
      throw Error(ErrorKind::NotMorse, cx.cell(x).id + ": paired both upward and downward");

  GradientVectorField v(n);
  for (int x = 0; x < n; ++x)
    if (up[x] >= 0) v.add_pair(x, up[x]);
  return v;
}

std::vector<std::string> critical_cells(const RegularCWComplex& cx, const GradientVectorField& v) {
  std::vector<std::string> out;
  for (int i = 0; i < cx.size(); ++i)
    if (v.is_critical(i)) out.push_back(cx.cell(i).id);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// V-path digraph on cells: lower -> upper across each pair, and upper -> every
// covering face other than its partner.  Directed cycles in this graph are
// exactly the closed V-paths (a cycle cannot leave a dimension band: climbing
// into a band requires arriving from above within it).
std::vector<std::vector<int>> vpath_digraph(const RegularCWComplex& cx, const GradientVectorField& v) {
  std::vector<std::vector<int>> out(cx.size());
  for (const auto& [lower, upper] : v.pairs()) {
    out[lower].push_back(upper);
    for (int x : cx.covering_faces(upper))
      if (x != lower) out[upper].push_back(x);
  }
  return out;
}

}  // namespace

GradientVectorField check_acyclic(const RegularCWComplex& cx,
                                  const std::vector<std::pair<std::string, std::string>>& pairs) {
  GradientVectorField v(cx.size());
  for (const auto& [lower_id, upper_id] : pairs) {
    const int lo = cx.index_of(lower_id), up = cx.index_of(upper_id);
    if (lo < 0) throw Error(ErrorKind::UnknownCellInCovering, lower_id);
    if (up < 0) throw Error(ErrorKind::UnknownCellInCovering, upper_id);
    const auto& faces = cx.covering_faces(up);
    if (std::find(faces.begin(), faces.end(), lo) == faces.end())
      throw Error(ErrorKind::BadCoveringDimension,
                  "{" + lower_id + "," + upper_id + "} is not a covering pair");
    if (!v.is_critical(lo)) throw Error(ErrorKind::OverlappingPairs, lower_id);
    if (!v.is_critical(up)) throw Error(ErrorKind::OverlappingPairs, upper_id);
    v.add_pair(lo, up);
  }

  // iterative DFS with colors; on a back edge, walk the stack for the witness
  const auto g = vpath_digraph(cx, v);
  const int n = cx.size();
  std::vector<int> color(n, 0), parent(n, -1);
  for (int root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next < g[u].size()) {
        const int w = g[u][next++];
        if (color[w] == 1) {
          // w is on the DFS stack: the stack segment from w onward is the cycle
          std::vector<std::string> cyc;
          size_t start = 0;
          while (stack[start].first != w) ++start;
          for (size_t i = start; i < stack.size(); ++i) cyc.push_back(cx.cell(stack[i].first).id);
          cyc.push_back(cx.cell(w).id);
          std::string msg;
          for (size_t i = 0; i < cyc.size(); ++i) msg += (i ? " -> " : "") + cyc[i];
          throw Error(ErrorKind::CyclicVPath, msg);
        }
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        color[u] = 2;
        stack.pop_back();
      }
    }
  }
  return v;
}

MorseFunction forman_normalize(const RegularCWComplex& cx, const MorseFunction& f,
                               const GradientVectorField& v) {
  MorseFunction out = f;
  for (const auto& [lower, upper] : v.pairs())
    out.values[cx.cell(lower).id] = f.values.at(cx.cell(upper).id);
  return out;
}

MorseFunction field_to_function(const RegularCWComplex& cx, const GradientVectorField& v) {
  const int n = cx.size();
  // contract each pair to one node; a covering u > l outside the matching
  // becomes an edge node(u) -> node(l)
  std::vector<int> node(n);
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (v.is_critical(i) || v.is_paired_lower(i)) node[i] = m++;
  for (int i = 0; i < n; ++i)
    if (v.is_paired_upper(i)) node[i] = node[v.partner(i)];

  std::vector<std::vector<int>> out(m);
  std::vector<int> indeg(m, 0);
  for (const auto& [u, l] : cx.covering()) {
    if (v.same_pair(u, l)) continue;
    out[node[u]].push_back(node[l]);
  }
  for (int a = 0; a < m; ++a) {
    std::sort(out[a].begin(), out[a].end());
    out[a].erase(std::unique(out[a].begin(), out[a].end()), out[a].end());
    for (int b : out[a]) ++indeg[b];
  }
  // Kahn topological order; acyclic because a condensed cycle would be a
  // closed V-path
  std::vector<int> order, queue;
  for (int a = 0; a < m; ++a)
    if (indeg[a] == 0) queue.push_back(a);
  while (!queue.empty()) {
    const int a = queue.back();
    queue.pop_back();
    order.push_back(a);
    for (int b : out[a])
      if (--indeg[b] == 0) queue.push_back(b);
  }
  if ((int)order.size() != m)
    throw Error(ErrorKind::CyclicVPath, "pair-contracted covering digraph has a cycle");

  // sinks get the smallest values: value = position from the end of the order
  std::vector<double> value(m);
  for (int i = 0; i < (int)order.size(); ++i) value[order[i]] = (double)(m - i);
  MorseFunction f;
  for (int i = 0; i < n; ++i) f.values[cx.cell(i).id] = value[node[i]];
  return f;
}

}  // namespace dflow

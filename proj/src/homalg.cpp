#include "dflow/homalg.hpp"

#include <algorithm>

namespace dflow {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(int rows, const std::vector<std::vector<Int>>& cols) {
  IntMatrix m(rows, (int)cols.size());
  for (int j = 0; j < (int)cols.size(); ++j) {
    if ((int)cols[j].size() != rows) throw std::logic_error("from_columns: ragged column");
    for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  for (const Int& x : a_)
    if (x != 0) return false;
  return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::logic_error("matrix product shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

std::vector<Int> IntMatrix::mul(const std::vector<Int>& x) const {
  if ((int)x.size() != cols_) throw std::logic_error("matrix-vector shape mismatch");
  std::vector<Int> r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0) r[i] += at(i, j) * x[j];
  return r;
}

std::vector<Int> IntMatrix::column(int j) const {
  std::vector<Int> c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

IntMatrix IntMatrix::hcat(const IntMatrix& o) const {
  if (rows_ != o.rows_) throw std::logic_error("hcat row mismatch");
  IntMatrix r(rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
  }
  return r;
}

std::vector<Int> SmithResult::invariant_factors() const {
  std::vector<Int> f;
  for (int i = 0; i < rank; ++i) f.push_back(d.at(i, i));
  return f;
}

void SmithResult::verify(const IntMatrix& m) const {
  if (!(u * m * v == d)) throw std::logic_error("Smith form: d != u*m*v");
  if (!(u * uinv == IntMatrix::identity(u.rows())))
    throw std::logic_error("Smith form: u*uinv != I");
  if (!(vinv * v == IntMatrix::identity(v.cols())))
    throw std::logic_error("Smith form: vinv*v != I");
  // u*uinv = I over the integers forces |det u| = 1, same for v
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) {
      if (i != j && d.at(i, j) != 0) throw std::logic_error("Smith form: off-diagonal entry");
      if (i == j) {
        const bool nonzero = d.at(i, i) != 0;
        if (nonzero != (i < rank)) throw std::logic_error("Smith form: rank mismatch");
        if (nonzero && d.at(i, i) < 0) throw std::logic_error("Smith form: negative factor");
        if (i > 0 && i < rank &&
            !mpz_divisible_p(d.at(i, i).get_mpz_t(), d.at(i - 1, i - 1).get_mpz_t()))
          throw std::logic_error("Smith form: divisibility chain broken");
      }
    }
}

SmithResult smith_normal_form(const IntMatrix& m) {
  const int r = m.rows(), c = m.cols();
  SmithResult s;
  s.d = m;
  s.u = IntMatrix::identity(r);
  s.uinv = IntMatrix::identity(r);
  s.v = IntMatrix::identity(c);
  s.vinv = IntMatrix::identity(c);

  // elementary row ops act on d and u on the left, and on uinv inversely on
  // the right; column ops mirror this with v and vinv
  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < c; ++k) std::swap(s.d.at(i, k), s.d.at(j, k));
    for (int k = 0; k < r; ++k) std::swap(s.u.at(i, k), s.u.at(j, k));
    for (int k = 0; k < r; ++k) std::swap(s.uinv.at(k, i), s.uinv.at(k, j));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < r; ++k) std::swap(s.d.at(k, i), s.d.at(k, j));
    for (int k = 0; k < c; ++k) std::swap(s.v.at(k, i), s.v.at(k, j));
    for (int k = 0; k < c; ++k) std::swap(s.vinv.at(i, k), s.vinv.at(j, k));
  };
  auto add_row = [&](int i, int j, const Int& k) {  // row_i += k * row_j
    if (k == 0) return;
    for (int t = 0; t < c; ++t) s.d.at(i, t) += k * s.d.at(j, t);
    for (int t = 0; t < r; ++t) s.u.at(i, t) += k * s.u.at(j, t);
    for (int t = 0; t < r; ++t) s.uinv.at(t, j) -= k * s.uinv.at(t, i);
  };
  auto add_col = [&](int j, int i, const Int& k) {  // col_j += k * col_i
    if (k == 0) return;
    for (int t = 0; t < r; ++t) s.d.at(t, j) += k * s.d.at(t, i);
    for (int t = 0; t < c; ++t) s.v.at(t, j) += k * s.v.at(t, i);
    for (int t = 0; t < c; ++t) s.vinv.at(i, t) -= k * s.vinv.at(j, t);
  };
  auto negate_row = [&](int i) {
    for (int t = 0; t < c; ++t) s.d.at(i, t) = -s.d.at(i, t);
    for (int t = 0; t < r; ++t) s.u.at(i, t) = -s.u.at(i, t);
    for (int t = 0; t < r; ++t) s.uinv.at(t, i) = -s.uinv.at(t, i);
  };

  const int lim = std::min(r, c);
  int t = 0;
  while (t < lim) {
    // smallest nonzero entry of the trailing submatrix becomes the pivot
    int pi = -1, pj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (s.d.at(i, j) != 0 &&
            (pi < 0 || mpz_cmpabs(s.d.at(i, j).get_mpz_t(), s.d.at(pi, pj).get_mpz_t()) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool cleared = true;
    for (int i = t + 1; i < r; ++i)
      if (s.d.at(i, t) != 0) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s.d.at(i, t).get_mpz_t(), s.d.at(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (s.d.at(i, t) != 0) cleared = false;  // remainder is smaller than the pivot
      }
    for (int j = t + 1; j < c; ++j)
      if (s.d.at(t, j) != 0) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s.d.at(t, j).get_mpz_t(), s.d.at(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (s.d.at(t, j) != 0) cleared = false;
      }
    if (!cleared) continue;  // re-select the pivot, strictly smaller now

    // pivot must divide the whole trailing submatrix for the invariant
    // factor chain; pull a bad row up and gcd it in
    int bi = -1, bj = -1;
    for (int i = t + 1; i < r && bi < 0; ++i)
      for (int j = t + 1; j < c; ++j)
        if (!mpz_divisible_p(s.d.at(i, j).get_mpz_t(), s.d.at(t, t).get_mpz_t())) {
          bi = i;
          bj = j;
          break;
        }
    if (bi >= 0) {
      add_row(t, bi, 1);
      continue;
    }
    if (s.d.at(t, t) < 0) negate_row(t);
    ++t;
  }
  s.rank = t;
  return s;
}

int matrix_rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

IntMatrix kernel_basis(const IntMatrix& m) {
  SmithResult s = smith_normal_form(m);
  // m x = 0 iff the first rank coordinates of vinv*x vanish: kernel basis is
  // the trailing columns of v
  IntMatrix k(m.cols(), m.cols() - s.rank);
  for (int j = s.rank; j < m.cols(); ++j)
    for (int i = 0; i < m.cols(); ++i) k.at(i, j - s.rank) = s.v.at(i, j);
  return k;
}

namespace {

std::optional<IntMatrix> solve_with(const SmithResult& s, const IntMatrix& b) {
  const int rows = s.d.rows(), xdim = s.d.cols();
  if (b.rows() != rows) throw std::logic_error("solve: shape mismatch");
  IntMatrix ub = s.u * b;
  IntMatrix y(xdim, b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < rows; ++i) {
      if (i < s.rank) {
        if (i < xdim) {
          if (!mpz_divisible_p(ub.at(i, j).get_mpz_t(), s.d.at(i, i).get_mpz_t()))
            return std::nullopt;
          mpz_divexact(y.at(i, j).get_mpz_t(), ub.at(i, j).get_mpz_t(), s.d.at(i, i).get_mpz_t());
        }
      } else if (ub.at(i, j) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.v * y;
}

}  // namespace

std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b) {
  return solve_with(smith_normal_form(a), b);
}

IntMatrix column_lattice_basis(const IntMatrix& g) {
  SmithResult s = smith_normal_form(g);
  // g = uinv * d * vinv and vinv is unimodular, so the columns of uinv*d span
  // the same lattice; the nonzero ones are independent
  IntMatrix b(g.rows(), s.rank);
  for (int j = 0; j < s.rank; ++j)
    for (int i = 0; i < g.rows(); ++i) b.at(i, j) = s.uinv.at(i, j) * s.d.at(j, j);
  return b;
}

std::string AbelianGroupDescriptor::str(bool rational) const {
  if (rational && !torsion.empty())
    throw std::logic_error("rational descriptor with torsion");
  if (is_zero()) return "0";
  std::string out;
  const char* ring = rational ? "Q" : "Z";
  if (free > 0) {
    out = ring;
    if (free > 1) out += "^" + std::to_string(free);
  }
  for (const Int& t : torsion) {
    if (!out.empty()) out += "+";
    out += std::string("Z/") + t.get_str();
  }
  return out;
}

Subquotient subquotient(const IntMatrix& zbasis, const IntMatrix& bgens) {
  Subquotient q;
  q.zbasis = zbasis;
  q.bgens = bgens;
  q.zsmith = smith_normal_form(zbasis);
  if (q.zsmith.rank != zbasis.cols())
    throw std::logic_error("subquotient: zbasis columns are not independent");
  auto rel = solve_with(q.zsmith, bgens);
  if (!rel) throw std::logic_error("subquotient: relations do not lie in the subgroup");
  SmithResult rs = smith_normal_form(*rel);
  q.u = rs.u;
  q.uinv = rs.uinv;
  q.diag.assign(zbasis.cols(), 0);
  for (int i = 0; i < rs.rank; ++i) q.diag[i] = rs.d.at(i, i);
  for (int i = 0; i < zbasis.cols(); ++i)
    if (q.diag[i] != 1) q.kept.push_back(i);
  return q;
}

AbelianGroupDescriptor Subquotient::descriptor() const {
  AbelianGroupDescriptor d;
  for (int i : kept) {
    if (diag[i] == 0)
      ++d.free;
    else
      d.torsion.push_back(diag[i]);
  }
  return d;
}

std::vector<Int> Subquotient::generator(int t) const {
  return zbasis.mul(uinv.column(kept[t]));
}

std::vector<Int> Subquotient::reduce(const std::vector<Int>& z) const {
  IntMatrix zin(zbasis.rows(), 1);
  for (int i = 0; i < zbasis.rows(); ++i) zin.at(i, 0) = z[i];
  auto c = solve_with(zsmith, zin);
  if (!c) throw std::logic_error("Subquotient::reduce: element outside the subgroup");
  std::vector<Int> y = u.mul(c->column(0));
  std::vector<Int> out;
  out.reserve(kept.size());
  for (int i : kept) {
    Int val = y[i];
    if (diag[i] != 0) mpz_fdiv_r(val.get_mpz_t(), val.get_mpz_t(), diag[i].get_mpz_t());
    out.push_back(val);
  }
  return out;
}

bool Subquotient::is_zero_class(const std::vector<Int>& z) const {
  for (const Int& x : reduce(z))
    if (x != 0) return false;
  return true;
}

AbelianGroupDescriptor quotient_group(const IntMatrix& zbasis, const IntMatrix& bgens) {
  return subquotient(zbasis, bgens).descriptor();
}

IntMatrix induced_map(const Subquotient& src, const Subquotient& tgt, const IntMatrix& m) {
  // relations must map to relations; generator images must respect orders
  for (int j = 0; j < src.bgens.cols(); ++j)
    if (!tgt.is_zero_class(m.mul(src.bgens.column(j))))
      throw std::logic_error("induced_map: image of a relation is not a relation");
  IntMatrix out(tgt.generators(), src.generators());
  for (int t = 0; t < src.generators(); ++t) {
    std::vector<Int> img = m.mul(src.generator(t));
    std::vector<Int> red = tgt.reduce(img);
    if (src.order(t) != 0) {
      std::vector<Int> scaled(img.size());
      for (size_t i = 0; i < img.size(); ++i) scaled[i] = img[i] * src.order(t);
      if (!tgt.is_zero_class(scaled))
        throw std::logic_error("induced_map: generator order not respected");
    }
    for (int i = 0; i < tgt.generators(); ++i) out.at(i, t) = red[i];
  }
  return out;
}

void ChainComplex::validate() const {
  const int n = (int)dims.size();
  if ((int)boundary.size() != n) throw std::logic_error("chain complex: boundary count mismatch");
  for (int k = 0; k < n; ++k) {
    const int target = k == 0 ? 0 : dims[k - 1];
    if (boundary[k].rows() != target || boundary[k].cols() != dims[k])
      throw std::logic_error("chain complex: boundary shape mismatch in degree " + std::to_string(k));
    if (!labels.empty() && (int)labels[k].size() != dims[k])
      throw std::logic_error("chain complex: label count mismatch in degree " + std::to_string(k));
    if (k >= 2 && !(boundary[k - 1] * boundary[k]).is_zero())
      throw std::logic_error("chain complex: boundary squared nonzero in degree " + std::to_string(k));
  }
}

std::vector<AbelianGroupDescriptor> homology(const ChainComplex& c, Coefficients coeff) {
  const int n = (int)c.dims.size();
  std::vector<AbelianGroupDescriptor> h(n);
  std::vector<int> ranks(n + 1, 0);
  std::vector<std::vector<Int>> factors(n + 1);
  for (int k = 1; k < n; ++k) {
    SmithResult s = smith_normal_form(c.boundary[k]);
    ranks[k] = s.rank;
    factors[k] = s.invariant_factors();
  }
  for (int k = 0; k < n; ++k) {
    h[k].free = c.dims[k] - ranks[k] - ranks[k + 1];
    if (coeff == Coefficients::integers)
      for (const Int& f : factors[k + 1])
        if (f > 1) h[k].torsion.push_back(f);
  }
  return h;
}

ChainComplex simplicial_chain_complex(const SimplicialComplex& sc) {
  ChainComplex c;
  const int top = sc.dim();
  if (top < 0) return c;
  c.dims.assign(top + 1, 0);
  c.labels.assign(top + 1, {});
  std::map<std::vector<int>, int> pos;  // simplex -> index within its degree
  for (const auto& s : sc.simplices()) {
    const int d = (int)s.size() - 1;
    pos[s] = c.dims[d]++;
    c.labels[d].push_back(sc.simplex_id(s));
  }
  c.boundary.resize(top + 1);
  c.boundary[0] = IntMatrix(0, c.dims[0]);
  for (int d = 1; d <= top; ++d) c.boundary[d] = IntMatrix(c.dims[d - 1], c.dims[d]);
  for (const auto& s : sc.simplices()) {
    const int d = (int)s.size() - 1;
    if (d == 0) continue;
    for (size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<int> face;
      for (size_t i = 0; i < s.size(); ++i)
        if (i != drop) face.push_back(s[i]);
      const int sign = drop % 2 == 0 ? 1 : -1;
      c.boundary[d].at(pos.at(face), pos.at(s)) += sign;
    }
  }
  c.validate();
  return c;
}

std::vector<AbelianGroupDescriptor> order_complex_homology(const Poset& p, Coefficients coeff) {
  if (p.size() == 0) return {};
  return homology(simplicial_chain_complex(order_complex(p)), coeff);
}

namespace {

// Composable tuples of non-identity morphisms, by length; length 0 stands
// for the objects themselves.
std::vector<std::vector<std::vector<int>>> nerve_tuples(const FiniteCategory& c, int top) {
  std::vector<std::vector<std::vector<int>>> tuples(top + 1);
  tuples[0] = {};  // objects handled separately
  for (int f = 0; f < (int)c.morphisms.size(); ++f) tuples[1].push_back({f});
  for (int k = 2; k <= top; ++k) {
    for (const auto& t : tuples[k - 1])
      for (int g = 0; g < (int)c.morphisms.size(); ++g)
        if (c.morphisms[g].src == c.morphisms[t.back()].tgt) {
          auto ext = t;
          ext.push_back(g);
          tuples[k].push_back(std::move(ext));
        }
    std::sort(tuples[k].begin(), tuples[k].end());
  }
  return tuples;
}

void throw_if_not_directed(const FiniteCategory& c) {
  for (const auto& m : c.morphisms)
    if (m.src == m.tgt)
      throw Error(ErrorKind::NotFiniteDirected, "non-identity endomorphism " + m.id);
  for (const auto& f : c.morphisms)
    for (const auto& g : c.morphisms)
      if (f.tgt == g.src && g.tgt == f.src)
        throw Error(ErrorKind::NotFiniteDirected, f.id + " and " + g.id + " form a cycle");
}

}  // namespace

ChainComplex nerve_chain_complex(const FiniteCategory& c, int max_dim) {
  throw_if_not_directed(c);
  const int top = max_dim + 1;
  auto tuples = nerve_tuples(c, top);

  ChainComplex cc;
  cc.dims.assign(top + 1, 0);
  cc.labels.assign(top + 1, {});
  cc.boundary.resize(top + 1);
  cc.dims[0] = (int)c.objects.size();
  cc.labels[0] = c.objects;
  std::vector<std::map<std::vector<int>, int>> pos(top + 1);
  for (int k = 1; k <= top; ++k) {
    cc.dims[k] = (int)tuples[k].size();
    for (int i = 0; i < cc.dims[k]; ++i) {
      pos[k][tuples[k][i]] = i;
      std::string label;
      for (size_t j = 0; j < tuples[k][i].size(); ++j)
        label += (j ? ";" : "") + c.morphisms[tuples[k][i][j]].id;
      cc.labels[k].push_back(label);
    }
  }

  cc.boundary[0] = IntMatrix(0, cc.dims[0]);
  if (top >= 1) {
    cc.boundary[1] = IntMatrix(cc.dims[0], cc.dims[1]);
    for (int i = 0; i < cc.dims[1]; ++i) {
      const auto& m = c.morphisms[tuples[1][i][0]];
      cc.boundary[1].at(m.tgt, i) += 1;
      cc.boundary[1].at(m.src, i) -= 1;
    }
  }
  for (int k = 2; k <= top; ++k) {
    cc.boundary[k] = IntMatrix(cc.dims[k - 1], cc.dims[k]);
    for (int i = 0; i < cc.dims[k]; ++i) {
      const auto& t = tuples[k][i];
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
        const int sign = face % 2 == 0 ? 1 : -1;
        cc.boundary[k].at(pos[k - 1].at(ft), i) += sign;
      }
    }
  }
  cc.validate();
  return cc;
}

ChainComplex nerve_chain_complex(const Poset& p, int max_dim) {
  const int top = max_dim + 1;
  ChainComplex cc;
  cc.dims.assign(top + 1, 0);
  cc.labels.assign(top + 1, {});
  cc.boundary.resize(top + 1);

  std::vector<std::vector<std::vector<int>>> chains(top + 1);
  for (auto& ch : p.strict_chains(top + 1)) {
    const int k = (int)ch.size() - 1;
    if (k <= top) chains[k].push_back(ch);
  }
  std::vector<std::map<std::vector<int>, int>> pos(top + 1);
  for (int k = 0; k <= top; ++k) {
    std::sort(chains[k].begin(), chains[k].end());
    cc.dims[k] = (int)chains[k].size();
    for (int i = 0; i < cc.dims[k]; ++i) {
      pos[k][chains[k][i]] = i;
      std::string label;
      for (size_t j = 0; j < chains[k][i].size(); ++j)
        label += (j ? "<" : "") + p.element(chains[k][i][j]);
      cc.labels[k].push_back(label);
    }
  }
  cc.boundary[0] = IntMatrix(0, cc.dims[0]);
  for (int k = 1; k <= top; ++k) {
    cc.boundary[k] = IntMatrix(cc.dims[k - 1], cc.dims[k]);
    for (int i = 0; i < cc.dims[k]; ++i) {
      const auto& ch = chains[k][i];
      for (int face = 0; face <= k; ++face) {
        std::vector<int> f;
        for (int j = 0; j <= k; ++j)
          if (j != face) f.push_back(ch[j]);
        const int sign = face % 2 == 0 ? 1 : -1;
        cc.boundary[k].at(pos[k - 1].at(f), i) += sign;
      }
    }
  }
  cc.validate();
  return cc;
}

namespace {

std::vector<AbelianGroupDescriptor> truncate_homology(const ChainComplex& cc, int max_dim,
                                                      Coefficients coeff) {
  auto h = homology(cc, coeff);
  if ((int)h.size() > max_dim + 1) h.resize(max_dim + 1);
  while ((int)h.size() < max_dim + 1) h.push_back({});
  return h;
}

}  // namespace

std::vector<AbelianGroupDescriptor> nerve_homology(const FiniteCategory& c, int max_dim,
                                                   Coefficients coeff) {
  return truncate_homology(nerve_chain_complex(c, max_dim), max_dim, coeff);
}

std::vector<AbelianGroupDescriptor> nerve_homology(const Poset& p, int max_dim, Coefficients coeff) {
  return truncate_homology(nerve_chain_complex(p, max_dim), max_dim, coeff);
}

void FiniteCategory::validate() const {
  const int nm = (int)morphisms.size();
  for (const auto& m : morphisms)
    if (m.src < 0 || m.src >= (int)objects.size() || m.tgt < 0 || m.tgt >= (int)objects.size())
      throw std::logic_error("category: morphism endpoint out of range");
  for (const auto& [key, h] : composition) {
    const auto& [f, g] = key;
    if (morphisms[f].tgt != morphisms[g].src)
      throw std::logic_error("category: composite of non-composable pair tabulated");
    if (morphisms[h].src != morphisms[f].src || morphisms[h].tgt != morphisms[g].tgt)
      throw std::logic_error("category: composite has wrong endpoints");
  }
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g)
      if (morphisms[f].tgt == morphisms[g].src && !composition.count({f, g}))
        throw std::logic_error("category: composable pair missing from the table");
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (morphisms[f].tgt != morphisms[g].src) continue;
      const int gf = compose(f, g);
      for (int h = 0; h < nm; ++h) {
        if (morphisms[g].tgt != morphisms[h].src) continue;
        if (compose(gf, h) != compose(f, compose(g, h)))
          throw std::logic_error("category: composition is not associative");
      }
    }
}

FiniteCategory poset_category(const Poset& p) {
  FiniteCategory c;
  for (int i = 0; i < p.size(); ++i) c.objects.push_back(p.element(i));
  std::map<std::pair<int, int>, int> mor_at;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (p.less(a, b)) {
        mor_at[{a, b}] = (int)c.morphisms.size();
        c.morphisms.push_back({p.element(a) + "<" + p.element(b), a, b});
      }
  for (int f = 0; f < (int)c.morphisms.size(); ++f)
    for (int g = 0; g < (int)c.morphisms.size(); ++g)
      if (c.morphisms[f].tgt == c.morphisms[g].src)
        c.composition[{f, g}] = mor_at.at({c.morphisms[f].src, c.morphisms[g].tgt});
  c.validate();
  return c;
}

}  // namespace dflow

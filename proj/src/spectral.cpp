#include "dflow/spectral.hpp"

#include <algorithm>

namespace dflow {

namespace {

// Weakly descending (p+1)-chains in a hom poset, local indices, lex order.
std::vector<std::vector<int>> weak_chains(const HomPoset& h, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> chain;
  auto extend = [&](auto&& self) -> void {
    if ((int)chain.size() == p + 1) {
      out.push_back(chain);
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
  std::sort(out.begin(), out.end());
  return out;
}

bool degenerate_rows(const Bisimplex& b, int p) {
  for (int i = 0; i < p; ++i) {
    bool all_same = true;
    for (const auto& col : b.cols)
      if (col[i] != col[i + 1]) {
        all_same = false;
        break;
      }
    if (all_same) return true;
  }
  return false;
}

std::vector<Bisimplex> enumerate_pq(const FlowCategory& fc, int p, int q) {
  std::vector<Bisimplex> out;
  const int no = (int)fc.objects.size();
  if (q == 0) {
    // vertical degeneracies of the objects fill (p,0) for p >= 1: nothing
    // nondegenerate there
    if (p == 0)
      for (int o = 0; o < no; ++o) out.push_back({{o}, {}});
    return out;
  }

  std::vector<std::vector<int>> obj_chains;
  std::vector<int> oc;
  auto extend_obj = [&](auto&& self) -> void {
    if ((int)oc.size() == q + 1) {
      obj_chains.push_back(oc);
      return;
    }
    for (int b = 0; b < no; ++b)
      if (b != oc.back() && fc.hom_at(oc.back(), b).size() > 0) {
        oc.push_back(b);
        self(self);
        oc.pop_back();
      }
  };
  for (int a = 0; a < no; ++a) {
    oc = {a};
    extend_obj(extend_obj);
  }

  for (const auto& chain : obj_chains) {
    // column alternatives: weak chains per hom poset, converted to global
    std::vector<std::vector<std::vector<int>>> alts(q);
    for (int j = 0; j < q; ++j) {
      const int a = chain[j], b = chain[j + 1];
      const int base = fc.first_mor.at({a, b});
      for (auto ch : weak_chains(fc.hom_at(a, b), p)) {
        for (int& m : ch) m += base;
        alts[j].push_back(std::move(ch));
      }
    }
    Bisimplex cur;
    cur.objs = chain;
    cur.cols.resize(q);
    auto product = [&](auto&& self, int j) -> void {
      if (j == q) {
        if (!degenerate_rows(cur, p)) out.push_back(cur);
        return;
      }
      for (const auto& alt : alts[j]) {
        cur.cols[j] = alt;
        self(self, j + 1);
      }
    };
    product(product, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Bisimplex> enumerate_bisimplices(const FlowCategory& fc, int p, int q) {
  return enumerate_pq(fc, p, q);
}

SpectralEngine::SpectralEngine(const FlowCategory& fc, int p_max) : fc_(fc) {
  if (p_max < 0) {
    int gap = 1;
    for (const auto& [key, h] : fc_.hom)
      if (h.size() > 0)
        gap = std::max(gap, fc_.cx.cell(fc_.objects[key.first]).dim -
                                fc_.cx.cell(fc_.objects[key.second]).dim);
    p_max_ = gap - 1;
  } else {
    p_max_ = p_max;
  }
  build_bases();
  build_differentials();
  check_squares();

  page0_.r = 0;
  for (int p = 0; p <= p_max_; ++p)
    for (int q = 0; q <= 2; ++q) {
      const int d = (int)bases_.at({p, q}).size();
      if (d > 0) page0_.entries[{p, q}] = {d, {}};
    }
  for (int p = 0; p <= p_max_; ++p)
    for (int q = 1; q <= 2; ++q)
      if (bases_.at({p, q}).size() > 0) page0_.differentials[{p, q}] = dv_.at({p, q});
}

void SpectralEngine::build_bases() {
  const int P = p_max_ + 1;
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= 3; ++q) {
      auto& bas = bases_[{p, q}];
      bas = enumerate_pq(fc_, p, q);
      auto& idx = index_[{p, q}];
      for (int i = 0; i < (int)bas.size(); ++i) idx[bas[i]] = i;
    }
}

void SpectralEngine::build_differentials() {
  const int P = p_max_ + 1;
  auto dim = [&](int p, int q) { return (int)bases_.at({p, q}).size(); };

  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= 3; ++q) {
      const auto& bas = bases_.at({p, q});

      if (q >= 1) {
        IntMatrix m(dim(p, q - 1), (int)bas.size());
        for (int col = 0; col < (int)bas.size(); ++col) {
          const Bisimplex& b = bas[col];
          for (int face = 0; face <= q; ++face) {
            Bisimplex f;
            if (face == 0) {
              f.objs.assign(b.objs.begin() + 1, b.objs.end());
              f.cols.assign(b.cols.begin() + 1, b.cols.end());
            } else if (face == q) {
              f.objs.assign(b.objs.begin(), b.objs.end() - 1);
              f.cols.assign(b.cols.begin(), b.cols.end() - 1);
            } else {
              f.objs = b.objs;
              f.objs.erase(f.objs.begin() + face);
              f.cols = b.cols;
              std::vector<int> composed(p + 1);
              for (int r = 0; r <= p; ++r)
                composed[r] = fc_.compose_mor(b.cols[face - 1][r], b.cols[face][r]);
              f.cols[face - 1] = std::move(composed);
              f.cols.erase(f.cols.begin() + face);
            }
            if (q - 1 == 0) {
              if (p > 0) continue;  // degenerate: constant rows over no columns
            } else if (degenerate_rows(f, p)) {
              continue;
            }
            auto it = index_.at({p, q - 1}).find(f);
            if (it == index_.at({p, q - 1}).end())
              throw std::logic_error("spectral: vertical face missing from basis");
            m.at(it->second, col) += face % 2 == 0 ? 1 : -1;
          }
        }
        dv_[{p, q}] = std::move(m);
      }

      {
        IntMatrix m(p == 0 ? 0 : dim(p - 1, q), (int)bas.size());
        if (p >= 1) {
          for (int col = 0; col < (int)bas.size(); ++col) {
            const Bisimplex& b = bas[col];
            for (int face = 0; face <= p; ++face) {
              Bisimplex f;
              f.objs = b.objs;
              f.cols = b.cols;
              for (auto& c : f.cols) c.erase(c.begin() + face);
              if (p - 1 >= 1 && degenerate_rows(f, p - 1)) continue;
              auto it = index_.at({p - 1, q}).find(f);
              if (it == index_.at({p - 1, q}).end())
                throw std::logic_error("spectral: horizontal face missing from basis");
              m.at(it->second, col) += face % 2 == 0 ? 1 : -1;
            }
          }
        }
        dh_[{p, q}] = std::move(m);
      }
    }
}

void SpectralEngine::check_squares() const {
  const int P = p_max_ + 1;
  for (int p = 0; p <= P; ++p)
    for (int q = 2; q <= 3; ++q)
      if (!(dv_.at({p, q - 1}) * dv_.at({p, q})).is_zero())
        throw std::logic_error("spectral: vertical boundary squared nonzero");
  for (int p = 2; p <= P; ++p)
    for (int q = 0; q <= 3; ++q)
      if (!(dh_.at({p - 1, q}) * dh_.at({p, q})).is_zero())
        throw std::logic_error("spectral: horizontal boundary squared nonzero");
  for (int p = 1; p <= P; ++p)
    for (int q = 1; q <= 3; ++q)
      if (!(dh_.at({p, q - 1}) * dv_.at({p, q}) == dv_.at({p - 1, q}) * dh_.at({p, q})))
        throw std::logic_error("spectral: face maps do not commute");
}

const BigradedPage& SpectralEngine::e1() {
  if (e1_done_) return page1_;
  const int P = p_max_ + 1;
  auto dim = [&](int p, int q) { return (int)bases_.at({p, q}).size(); };

  // the whole q=2 row of E1 must die, checked against the honest q=3 data
  for (int p = 0; p <= P; ++p) {
    if (dim(p, 2) == 0) continue;
    auto desc = quotient_group(kernel_basis(dv_.at({p, 2})), dv_.at({p, 3}));
    if (!desc.is_zero())
      throw Error(ErrorKind::NotCollapsed,
                  "E1 entry at (" + std::to_string(p) + ",2) is " + desc.str());
  }

  page1_.r = 1;
  if (dim(0, 0) > 0) {
    e1_pres_.emplace(std::make_pair(0, 0),
                     subquotient(IntMatrix::identity(dim(0, 0)), dv_.at({0, 1})));
    auto d = e1_pres_.at({0, 0}).descriptor();
    if (!d.is_zero()) page1_.entries[{0, 0}] = d;
  }
  for (int p = 0; p <= p_max_; ++p) {
    if (dim(p, 1) == 0) continue;
    e1_pres_.emplace(std::make_pair(p, 1),
                     subquotient(kernel_basis(dv_.at({p, 1})), dv_.at({p, 2})));
    auto d = e1_pres_.at({p, 1}).descriptor();
    if (!d.is_zero()) page1_.entries[{p, 1}] = d;
  }
  for (int p = 1; p <= p_max_; ++p) {
    auto s = e1_pres_.find({p, 1});
    auto t = e1_pres_.find({p - 1, 1});
    if (s == e1_pres_.end() || t == e1_pres_.end()) continue;
    page1_.differentials[{p, 1}] = induced_map(s->second, t->second, dh_.at({p, 1}));
  }

  // indecomposable-sum diagnostic: each basis morphism of (0,1) maps to the
  // sum of its unique factorization
  const auto& bas01 = bases_.at({0, 1});
  for (int i = 0; i < (int)bas01.size(); ++i)
    if (bas01[i].cols[0][0] != i)
      throw std::logic_error("spectral: (0,1) basis order disagrees with morphism order");
  std::vector<int> indec_row(fc_.morphism_count(), -1);
  int nind = 0;
  for (int m = 0; m < fc_.morphism_count(); ++m)
    if (fc_.indecomposable[m]) indec_row[m] = nind++;
  IntMatrix phi(nind, (int)bas01.size());
  for (int m = 0; m < (int)bas01.size(); ++m)
    for (int factor : fc_.factors[m]) phi.at(indec_row[factor], m) += 1;
  phi_rank_ = matrix_rank(phi * kernel_basis(dv_.at({0, 1})));

  e1_done_ = true;
  return page1_;
}

const BigradedPage& SpectralEngine::e2() {
  if (e2_done_) return page2_;
  e1();
  auto dim = [&](int p, int q) { return (int)bases_.at({p, q}).size(); };

  page2_.r = 2;
  if (dim(0, 0) > 0) {
    auto d = e1_pres_.at({0, 0}).descriptor();  // no differential in or out survives
    if (!d.is_zero()) page2_.entries[{0, 0}] = d;
  }
  for (int p = 0; p <= p_max_; ++p) {
    if (dim(p, 1) == 0) continue;
    IntMatrix K = kernel_basis(dv_.at({p, 1}));
    IntMatrix zgens;
    if (p == 0) {
      zgens = K;  // the horizontal map out of p = 0 is zero
    } else {
      // cycles: vertical kernel elements whose horizontal image is a
      // vertical boundary one column to the left
      IntMatrix block = (dh_.at({p, 1}) * K).hcat(dv_.at({p - 1, 2}));
      IntMatrix kb = kernel_basis(block);
      IntMatrix apart(K.cols(), kb.cols());
      for (int i = 0; i < K.cols(); ++i)
        for (int j = 0; j < kb.cols(); ++j) apart.at(i, j) = kb.at(i, j);
      zgens = K * column_lattice_basis(apart);
    }
    IntMatrix bgens =
        (dh_.at({p + 1, 1}) * kernel_basis(dv_.at({p + 1, 1}))).hcat(dv_.at({p, 2}));
    auto d = quotient_group(zgens, bgens);
    if (!d.is_zero()) page2_.entries[{p, 1}] = d;
  }
  collapsed_ok_ = true;
  e2_done_ = true;
  return page2_;
}

std::vector<AbelianGroupDescriptor> SpectralEngine::total_homology(Coefficients coeff) {
  e2();
  if (!collapsed_ok_)
    throw Error(ErrorKind::NotCollapsed, "second page shape checks did not pass");
  const int top = std::max(fc_.cx.dim(), 0);
  std::vector<AbelianGroupDescriptor> h(top + 1);
  auto get = [&](int p, int q) {
    auto it = page2_.entries.find({p, q});
    return it == page2_.entries.end() ? AbelianGroupDescriptor{} : it->second;
  };
  h[0] = get(0, 0);
  for (int n = 1; n <= top; ++n) h[n] = get(n - 1, 1);
  if (coeff == Coefficients::rationals)
    for (auto& d : h) d.torsion.clear();
  return h;
}

long long SpectralEngine::phi_rank() {
  e1();
  return phi_rank_;
}

long long SpectralEngine::e1_bottom_rank() {
  e1();
  auto it = e1_pres_.find({0, 1});
  return it == e1_pres_.end() ? 0 : it->second.descriptor().free;
}

}  // namespace dflow

#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dflow/category.hpp"
#include "dflow/errors.hpp"
#include "dflow/flow_category.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dflow;
using testutil::error_kind;

namespace {

MorsePath make_path(const RegularCWComplex& cx, const std::vector<std::string>& ids) {
  MorsePath p;
  for (const auto& id : ids) {
    int i = cx.index_of(id);
    REQUIRE(i >= 0);
    p.cells.push_back(i);
  }
  return p;
}

std::set<std::string> arrow_set(const RegularCWComplex& cx, const HomPoset& h, int rank_value) {
  std::set<std::string> out;
  for (int i = 0; i < h.size(); ++i)
    if (h.ranks[i] == rank_value) out.insert(arrow_string(cx, h.morphisms[i]));
  return out;
}

}  // namespace

TEST_CASE("morphism digraph of the 3-ball fixture") {
  auto cx = testutil::load("d3.json");
  auto v = testutil::load_field(cx, "d3_field.json");
  CHECK(build_digraph(cx, v).edge_count() == 20);
}

TEST_CASE("hom sets of the 3-ball fixture") {
  auto cx = testutil::load("d3.json");
  auto v = testutil::load_field(cx, "d3_field.json");
  CHECK(enumerate_morphisms(cx, v, "f", "t").size() == 1);
  CHECK(enumerate_morphisms(cx, v, "t", "x").size() == 8);
  CHECK(enumerate_morphisms(cx, v, "f", "x").size() == 21);
  CHECK(enumerate_morphisms(cx, v, "x", "f").empty());
  CHECK(enumerate_morphisms(cx, v, "t", "t").size() == 1);  // identity only
  CHECK(error_kind([&] { enumerate_morphisms(cx, v, "w", "x"); }) ==
        ErrorKind::NonCriticalEndpoint);
}

TEST_CASE("hom poset Hom(f, x) is the face poset of a disk") {
  auto cx = testutil::load("d3.json");
  auto v = testutil::load_field(cx, "d3_field.json");
  auto h = hom_poset(cx, v, "f", "x");
  CHECK(h.size() == 21);
  CHECK(h.rank_histogram() == std::map<int, int>{{0, 7}, {1, 10}, {2, 4}});
  CHECK(h.components() == 1);
  CHECK(arrow_set(cx, h, 2) ==
        std::set<std::string>{"f>x", "f>z<b>x", "f>y<w>x", "f>z<b>y<w>x"});
  for (auto [hi, lo] : h.covering) CHECK(h.ranks[hi] == h.ranks[lo] + 1);

  auto strict_pairs = [](const HomPoset& hp) {
    int count = 0;
    for (int a = 0; a < hp.size(); ++a)
      for (int b = 0; b < hp.size(); ++b)
        if (hp.strictly_below(a, b)) ++count;
    return count;
  };
  CHECK(strict_pairs(h) == 52);
  auto htx = hom_poset(cx, v, "t", "x");
  CHECK(strict_pairs(htx) == 8);
  CHECK(htx.rank_histogram() == std::map<int, int>{{0, 4}, {1, 4}});
}

TEST_CASE("covering predicate") {
  auto cx = testutil::load("d3.json");
  auto v = testutil::load_field(cx, "d3_field.json");
  auto fx = make_path(cx, {"f", "x"});
  auto ftx = make_path(cx, {"f", "t", "x"});
  auto ftwx = make_path(cx, {"f", "t", "w", "x"});
  auto ftzbx = make_path(cx, {"f", "t", "z", "b", "x"});
  CHECK(covers(cx, fx, ftx));
  CHECK(covers(cx, ftx, ftwx));
  CHECK_FALSE(covers(cx, fx, ftzbx));  // ranks adjacent but not one insertion
  CHECK(error_kind([&] { covers(cx, fx, ftwx); }) == ErrorKind::RankMismatch);
  auto tx = make_path(cx, {"t", "x"});
  CHECK(error_kind([&] { covers(cx, fx, tx); }) == ErrorKind::EndpointMismatch);
}

TEST_CASE("composition and reduction") {
  auto cx = testutil::load("d3.json");
  auto v = testutil::load_field(cx, "d3_field.json");
  auto p = make_path(cx, {"f", "t"});
  auto q = make_path(cx, {"t", "z", "b", "x"});
  CHECK(compose(cx, v, p, q) == make_path(cx, {"f", "t", "z", "b", "x"}));
  CHECK(error_kind([&] { compose(cx, v, q, p); }) == ErrorKind::NotComposable);

  // raw sequence reduction, which composition of flow morphisms never needs
  CHECK(reduce_sequence(cx, v, make_path(cx, {"z", "b", "z"}).cells) ==
        make_path(cx, {"z"}).cells);
  CHECK(reduce_sequence(cx, v, make_path(cx, {"f", "f", "t"}).cells) ==
        make_path(cx, {"f", "t"}).cells);
  CHECK(reduce_sequence(cx, v, make_path(cx, {"f", "t", "t", "z", "b", "z"}).cells) ==
        make_path(cx, {"f", "t", "z"}).cells);
}

TEST_CASE("factorization into indecomposables") {
  auto cx = testutil::load("d3.json");
  auto v = testutil::load_field(cx, "d3_field.json");
  auto whole = make_path(cx, {"f", "t", "z", "b", "x"});
  auto parts = factorize(cx, v, whole);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == make_path(cx, {"f", "t"}));
  CHECK(parts[1] == make_path(cx, {"t", "z", "b", "x"}));
  CHECK(factorize(cx, v, make_path(cx, {"t"})).empty());
  CHECK(factorize(cx, v, make_path(cx, {"f", "z", "b", "x"})).size() == 1);

  auto torus = testutil::load("torus.json");
  auto vt = testutil::load_field(torus, "torus_field.json");
  auto long_path = make_path(torus, {"A", "gamma", "C", "alpha", "b", "beta", "a"});
  auto tparts = factorize(torus, vt, long_path);
  REQUIRE(tparts.size() == 2);
  CHECK(tparts[0] == make_path(torus, {"A", "gamma", "C", "alpha"}));
  CHECK(tparts[1] == make_path(torus, {"alpha", "b", "beta", "a"}));
}

TEST_CASE("step invariant") {
  auto cx = testutil::load("d3.json");
  auto p = make_path(cx, {"f", "t", "z", "b", "x"});
  std::map<std::pair<std::string, std::string>, int> want = {
      {{"f", "t"}, 1}, {{"t", "z"}, 1}, {{"b", "z"}, -1}, {{"b", "x"}, 1}};
  CHECK(algebraic_invariant(cx, p) == want);
}

TEST_CASE("step invariant separates morphisms") {
  for (const char* base : {"d3", "torus"}) {
    auto cx = testutil::load(std::string(base) + ".json");
    auto v = testutil::load_field(cx, std::string(base) + "_field.json");
    auto fc = build_flow_category(cx, v);
    std::set<std::map<std::pair<std::string, std::string>, int>> seen;
    for (int m = 0; m < fc.morphism_count(); ++m)
      CHECK(seen.insert(algebraic_invariant(cx, fc.path(m))).second);
  }
}

TEST_CASE("assembled categories") {
  auto d3 = testutil::load("d3.json");
  auto vd3 = testutil::load_field(d3, "d3_field.json");
  auto fc = build_flow_category(d3, vd3);
  CHECK(fc.objects.size() == 3);
  CHECK(fc.morphism_count() == 30);
  auto c = export_category(fc);
  CHECK(c.objects.size() == 3);
  CHECK(c.morphisms.size() == 30);
  c.validate();

  auto torus = testutil::load("torus.json");
  auto vt = testutil::load_field(torus, "torus_field.json");
  auto ft = build_flow_category(torus, vt);
  CHECK(ft.objects.size() == 4);
  CHECK(ft.morphism_count() == 44);
  CHECK(ft.hom_at(ft.object_position("A"), ft.object_position("a")).size() == 36);
  CHECK(ft.hom_at(ft.object_position("A"), ft.object_position("a")).components() == 4);
  export_category(ft).validate();

  auto seg = SimplicialComplex::from_facets({{0, 1}}).to_complex();
  MorseFunction f;
  for (const auto& cell : seg.cells()) f.values[cell.id] = cell.dim;
  auto fs = build_flow_category(seg, validate_morse(seg, f));
  CHECK(fs.objects.size() == 3);
  CHECK(fs.morphism_count() == 2);
  export_category(fs).validate();
}

TEST_CASE("composition is monotone in both arguments") {
  auto run = [](const FlowCategory& fc) {
    for (const auto& [ab, hab] : fc.hom) {
      for (const auto& [bc, hbc] : fc.hom) {
        if (bc.first != ab.second || hab.size() == 0 || hbc.size() == 0) continue;
        const auto& hac = fc.hom_at(ab.first, bc.second);
        auto glob = [&](const std::pair<int, int>& key, int local) {
          return fc.first_mor.at(key) + local;
        };
        for (int lo = 0; lo < hab.size(); ++lo)
          for (int hi = 0; hi < hab.size(); ++hi) {
            if (!hab.strictly_below(lo, hi)) continue;
            for (int g = 0; g < hbc.size(); ++g) {
              int m1 = fc.compose_mor(glob(ab, lo), glob(bc, g));
              int m2 = fc.compose_mor(glob(ab, hi), glob(bc, g));
              CHECK(hac.strictly_below(fc.mors[m1].local, fc.mors[m2].local));
            }
          }
        for (int lo = 0; lo < hbc.size(); ++lo)
          for (int hi = 0; hi < hbc.size(); ++hi) {
            if (!hbc.strictly_below(lo, hi)) continue;
            for (int g = 0; g < hab.size(); ++g) {
              int m1 = fc.compose_mor(glob(ab, g), glob(bc, lo));
              int m2 = fc.compose_mor(glob(ab, g), glob(bc, hi));
              CHECK(hac.strictly_below(fc.mors[m1].local, fc.mors[m2].local));
            }
          }
      }
    }
  };
  auto d3 = testutil::load("d3.json");
  run(build_flow_category(d3, testutil::load_field(d3, "d3_field.json")));
  auto torus = testutil::load("torus.json");
  run(build_flow_category(torus, testutil::load_field(torus, "torus_field.json")));
}

TEST_CASE("rank bounds") {
  auto check_bounds = [](const RegularCWComplex& cx, const FlowCategory& fc) {
    for (const auto& [key, h] : fc.hom) {
      int gap = cx.cell(fc.objects[key.first]).dim - cx.cell(fc.objects[key.second]).dim;
      for (int r : h.ranks) {
        CHECK(r >= 0);
        CHECK(r <= gap);
      }
    }
  };
  auto d3 = testutil::load("d3.json");
  check_bounds(d3, build_flow_category(d3, testutil::load_field(d3, "d3_field.json")));
  auto torus = testutil::load("torus.json");
  check_bounds(torus, build_flow_category(torus, testutil::load_field(torus, "torus_field.json")));
}

TEST_CASE("hom order matches the insertion oracle") {
  auto d3 = testutil::load("d3.json");
  auto vd3 = testutil::load_field(d3, "d3_field.json");
  CHECK(testutil::insertion_order_matches(d3, vd3, hom_poset(d3, vd3, "f", "x")));
  CHECK(testutil::insertion_order_matches(d3, vd3, hom_poset(d3, vd3, "t", "x")));

  auto torus = testutil::load("torus.json");
  auto vt = testutil::load_field(torus, "torus_field.json");
  CHECK(testutil::insertion_order_matches(torus, vt, hom_poset(torus, vt, "A", "a")));

  std::mt19937_64 rng(23);
  int done = 0;
  for (int trial = 0; trial < 30 && done < 8; ++trial) {
    auto cx = testutil::random_simplicial(rng).to_complex();
    auto v = testutil::random_matching(cx, rng, trial % 2 ? 0.5 : 1.0);
    auto crit = critical_cells(cx, v);
    for (const auto& s : crit)
      for (const auto& t : crit) {
        if (s == t) continue;
        auto h = hom_poset(cx, v, s, t);
        if (h.size() < 2 || h.size() > 40) continue;
        CHECK(testutil::insertion_order_matches(cx, v, h));
        ++done;
      }
  }
  CHECK(done > 0);
}

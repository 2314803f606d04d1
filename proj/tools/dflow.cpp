#include <iostream>

#include "CLI11.hpp"
#include "dflow/io.hpp"
#include "dflow/verify.hpp"
#include "json.hpp"

namespace {

using namespace dflow;

struct Options {
  std::string input, field, source, target;
  std::string coeff = "z", format = "text";
  int max_dim = -1;
  long long seed = 0;  // reserved for corpus generation; accepted for interface stability
};

Coefficients coefficients(const Options& o) {
  return o.coeff == "q" ? Coefficients::rationals : Coefficients::integers;
}

int run_validate(const Options& o) {
  auto cx = load_complex(o.input);
  std::cout << cx.size() << " cells, " << cx.covering().size() << " covering pairs, dimension "
            << cx.dim() << "\n";
  if (!o.field.empty()) {
    auto v = load_gradient(o.field, cx);
    auto crit = critical_cells(cx, v);
    std::cout << crit.size() << " critical cells:";
    for (const auto& c : crit) std::cout << " " << c;
    std::cout << "\n";
  }
  return 0;
}

int run_hom(const Options& o) {
  auto cx = load_complex(o.input);
  auto v = load_gradient(o.field, cx);
  auto h = hom_poset(cx, v, o.source, o.target);
  if (o.format == "dot") {
    std::cout << hom_poset_dot(cx, h);
  } else if (o.format == "text") {
    std::cout << "Hom(" << o.source << ", " << o.target << "): " << h.size() << " morphisms, "
              << h.covering.size() << " covering relations, " << h.components()
              << " components\n";
    for (const auto& [r, n] : h.rank_histogram()) {
      std::cout << "  rank " << r << " (" << n << "):";
      for (int i = 0; i < h.size(); ++i)
        if (h.ranks[i] == r) std::cout << " " << arrow_string(cx, h.morphisms[i]);
      std::cout << "\n";
    }
  } else {
    std::cout << hom_poset_json(cx, h) << "\n";
  }
  return 0;
}

int run_spectral(const Options& o) {
  auto cx = load_complex(o.input);
  auto v = load_gradient(o.field, cx);
  auto fc = build_flow_category(cx, v);
  SpectralEngine eng(fc, o.max_dim);
  const auto coeff = coefficients(o);
  const auto& p0 = eng.e0();
  const auto& p1 = eng.e1();
  const auto& p2 = eng.e2();
  auto h = eng.total_homology(coeff);
  if (o.format == "json") {
    std::cout << page_json(p0, coeff) << "\n"
              << page_json(p1, coeff) << "\n"
              << page_json(p2, coeff) << "\n"
              << homology_json(h, coeff) << "\n";
  } else {
    std::cout << page_text(p0, eng.p_max(), coeff) << page_text(p1, eng.p_max(), coeff)
              << page_text(p2, eng.p_max(), coeff) << homology_line(h, coeff) << "\n";
  }
  return 0;
}

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;  // human-readable witness or summary
};

void category_checks(const FiniteCategory& c, int max_dim, std::vector<CheckLine>& lines) {
  const bool directed = check_finite_directed(c);
  lines.push_back({"finite directed", directed, ""});
  auto f = check_unique_factorization(c);
  if (f.unique) {
    lines.push_back({"unique factorization", true, ""});
  } else {
    std::string detail = "morphism " + f.morphism + " has " + std::to_string(f.count) +
                         " factorizations:";
    for (const auto& fac : f.factorizations) {
      detail += " [";
      for (size_t i = 0; i < fac.size(); ++i) detail += (i ? " ; " : "") + fac[i];
      detail += "]";
    }
    lines.push_back({"unique factorization", false, detail});
  }
  if (!directed || !f.unique) {
    lines.push_back({"nerve homology vanishing", false, "skipped: hypotheses fail"});
    lines.push_back({"nerve collapse", false, "skipped: hypotheses fail"});
    return;
  }
  const bool nv = check_nerve_vanishing(c, max_dim);
  lines.push_back({"nerve homology vanishing", nv,
                   "degrees 2.." + std::to_string(max_dim)});
  auto collapsed = collapse_ufc_nerve(c);
  lines.push_back({"nerve collapse", true,
                   std::to_string(collapsed.count(0)) + " vertices, " +
                       std::to_string(collapsed.count(1)) +
                       " edges, homology preserved"});
}

int run_verify(const Options& o) {
  auto cx = load_complex(o.input);
  const int max_dim = o.max_dim < 0 ? 3 : o.max_dim;
  std::vector<CheckLine> lines;
  if (o.field.empty()) {
    category_checks(poset_category(face_poset(cx)), max_dim, lines);
  } else {
    auto v = load_gradient(o.field, cx);
    auto fc = build_flow_category(cx, v);
    for (int a = 0; a < (int)fc.objects.size(); ++a)
      for (int b = 0; b < (int)fc.objects.size(); ++b) {
        if (a == b) continue;
        const HomPoset& h = fc.hom_at(a, b);
        if (h.size() == 0) continue;
        auto rep = check_cw_poset(h, cx);
        std::string detail = std::to_string(h.size()) + " elements";
        if (!rep.graded) detail += ", not graded";
        for (const auto& e : rep.elements)
          if (!e.pass) {
            detail += ", interval below " + e.element + " is not a sphere";
            break;
          }
        lines.push_back({"cw poset Hom(" + h.source + ", " + h.target + ")", rep.pass, detail});
      }
    category_checks(export_category(fc), max_dim, lines);
    auto f1 = check_unique_factorization(level_category(fc, 1));
    lines.push_back({"unique factorization at level 1", f1.unique,
                     f1.unique ? "" : "morphism " + f1.morphism + " has " +
                                          std::to_string(f1.count) + " factorizations"});
  }

  bool all = true;
  for (const auto& l : lines) all = all && l.pass;
  if (o.format == "json") {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const auto& l : lines)
      j["checks"].push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    j["pass"] = all;
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& l : lines) {
      std::cout << (l.pass ? "ok   " : "FAIL ") << l.name;
      if (!l.detail.empty()) std::cout << " — " << l.detail;
      std::cout << "\n";
    }
    std::cout << (all ? "all checks passed" : "some checks failed") << "\n";
  }
  return all ? 0 : 4;
}

int run_subdivide(const Options& o) {
  auto cx = load_complex(o.input);
  std::cout << complex_json(barycentric_subdivision(cx).to_complex()) << "\n";
  return 0;
}

int exit_code(const Error& e) {
  switch (e.kind) {
    case ErrorKind::ParseError:
      return 2;
    case ErrorKind::NotCollapsed:
    case ErrorKind::NotFreePair:
    case ErrorKind::NotUFC:
      return 4;
    default:
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete flow categories of Morse functions on regular CW complexes,\n"
               "their hom posets, double-nerve spectral sequences, and structure checks"};
  app.require_subcommand(1);
  app.footer("exit codes: 0 ok, 2 input parse error, 3 validation error, "
             "4 assertion or collapse failure");

  Options o;
  auto add_common = [&](CLI::App* cmd, bool need_field) {
    cmd->add_option("--input", o.input, "complex JSON file")->required();
    auto* f = cmd->add_option("--field", o.field,
                              "gradient field (\"pairs\") or Morse function (\"values\") JSON");
    if (need_field) f->required();
    cmd->add_option("--seed", o.seed, "reserved; accepted for interface stability");
  };

  auto* validate = app.add_subcommand("validate", "check a complex and an optional field");
  add_common(validate, false);

  auto* hom = app.add_subcommand("hom", "Hom poset between two critical cells");
  add_common(hom, true);
  hom->add_option("--source", o.source, "source critical cell")->required();
  hom->add_option("--target", o.target, "target critical cell")->required();
  hom->add_option("--format", o.format, "json | dot | text (default json)")
      ->check(CLI::IsMember({"json", "dot", "text"}));

  auto* spectral = app.add_subcommand("spectral", "double-nerve spectral sequence and homology");
  add_common(spectral, true);
  spectral->add_option("--coeff", o.coeff, "z | q")->check(CLI::IsMember({"z", "q"}));
  spectral->add_option("--max-dim", o.max_dim, "column window override (default: derived)");
  spectral->add_option("--format", o.format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* verify = app.add_subcommand("verify", "structure checks for the flow category "
                                              "(or the cell poset when no field is given)");
  add_common(verify, false);
  verify->add_option("--max-dim", o.max_dim, "top degree for nerve vanishing (default 3)");
  verify->add_option("--format", o.format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* subdivide = app.add_subcommand("subdivide", "barycentric subdivision as a complex JSON");
  subdivide->add_option("--input", o.input, "complex JSON file")->required();

  try {
    o.format = "text";
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(o);
    if (app.got_subcommand(hom)) {
      if (!hom->count("--format")) o.format = "json";
      return run_hom(o);
    }
    if (app.got_subcommand(spectral)) return run_spectral(o);
    if (app.got_subcommand(verify)) return run_verify(o);
    if (app.got_subcommand(subdivide)) return run_subdivide(o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

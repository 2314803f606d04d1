#include "dflow/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace dflow {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

std::string descriptor_str(const AbelianGroupDescriptor& d, Coefficients coeff) {
  return d.str(coeff == Coefficients::rationals);
}

json descriptor_json(const AbelianGroupDescriptor& d, Coefficients coeff) {
  json e;
  e["free"] = d.free;
  e["torsion"] = json::array();
  if (coeff == Coefficients::integers)
    for (const Int& t : d.torsion) e["torsion"].push_back(t.get_str());
  return e;
}

}  // namespace

RegularCWComplex load_complex(const std::string& path) {
  json j = load_json(path);
  try {
    if (j.contains("facets")) {
      std::vector<std::vector<int>> facets = j.at("facets");
      return SimplicialComplex::from_facets(facets).to_complex();
    }
    std::vector<Cell> cells;
    for (const auto& c : j.at("cells"))
      cells.push_back({c.at("id").get<std::string>(), c.at("dim").get<int>()});
    std::vector<std::pair<std::string, std::string>> covering;
    for (const auto& p : j.at("covering"))
      covering.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
    return RegularCWComplex::validate(cells, covering);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> load_field_pairs(const std::string& path) {
  json j = load_json(path);
  try {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : j.at("pairs"))
      pairs.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
    return pairs;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

MorseFunction load_function(const std::string& path) {
  json j = load_json(path);
  try {
    MorseFunction f;
    for (const auto& [id, v] : j.at("values").items()) f.values[id] = v.get<double>();
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

GradientVectorField load_gradient(const std::string& path, const RegularCWComplex& cx) {
  json j = load_json(path);
  if (j.contains("pairs")) return check_acyclic(cx, load_field_pairs(path));
  if (j.contains("values")) return validate_morse(cx, load_function(path));
  throw Error(ErrorKind::ParseError, path + ": expected a \"pairs\" or \"values\" key");
}

std::string complex_json(const RegularCWComplex& cx) {
  json j;
  j["cells"] = json::array();
  for (const auto& c : cx.cells()) j["cells"].push_back({{"id", c.id}, {"dim", c.dim}});
  j["covering"] = json::array();
  for (const auto& [up, lo] : cx.covering())
    j["covering"].push_back({cx.cell(up).id, cx.cell(lo).id});
  return j.dump();
}

std::string hom_poset_json(const RegularCWComplex& cx, const HomPoset& h) {
  json j;
  j["source"] = h.source;
  j["target"] = h.target;
  j["morphisms"] = json::array();
  j["arrows"] = json::array();
  for (const auto& m : h.morphisms) {
    json ids = json::array();
    for (int c : m.cells) ids.push_back(cx.cell(c).id);
    j["morphisms"].push_back(ids);
    j["arrows"].push_back(arrow_string(cx, m));
  }
  j["ranks"] = h.ranks;
  j["covering"] = json::array();
  for (const auto& [hi, lo] : h.covering) j["covering"].push_back({hi, lo});
  return j.dump();
}

std::string hom_poset_dot(const RegularCWComplex& cx, const HomPoset& h) {
  std::ostringstream out;
  out << "digraph hom {\n  rankdir=BT;\n  node [shape=box];\n";
  std::map<int, std::vector<int>> by_rank;
  for (int i = 0; i < h.size(); ++i) by_rank[h.ranks[i]].push_back(i);
  for (const auto& [r, ms] : by_rank) {
    out << "  subgraph cluster_rank_" << r << " {\n    label=\"rank " << r << "\";\n";
    for (int i : ms) out << "    \"" << arrow_string(cx, h.morphisms[i]) << "\";\n";
    out << "  }\n";
  }
  auto edges = h.covering;
  std::sort(edges.begin(), edges.end());
  for (const auto& [hi, lo] : edges)
    out << "  \"" << arrow_string(cx, h.morphisms[lo]) << "\" -> \""
        << arrow_string(cx, h.morphisms[hi]) << "\";\n";
  out << "}\n";
  return out.str();
}

std::string page_json(const BigradedPage& page, Coefficients coeff) {
  json j;
  j["page"] = page.r;
  j["entries"] = json::object();
  for (const auto& [pq, d] : page.entries) {
    const std::string key = "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")";
    j["entries"][key] = descriptor_json(d, coeff);
  }
  return j.dump();
}

std::string page_text(const BigradedPage& page, int p_max, Coefficients coeff) {
  std::vector<std::vector<std::string>> grid(3, std::vector<std::string>(p_max + 1, "0"));
  for (const auto& [pq, d] : page.entries) {
    const auto& [p, q] = pq;
    if (p <= p_max && q <= 2) grid[q][p] = descriptor_str(d, coeff);
  }
  std::vector<size_t> width(p_max + 1, 0);
  for (int p = 0; p <= p_max; ++p) {
    width[p] = std::to_string(p).size() + 2;  // "p=N"
    for (int q = 0; q <= 2; ++q) width[p] = std::max(width[p], grid[q][p].size());
  }
  std::ostringstream out;
  out << "page " << page.r << "\n";
  for (int q = 2; q >= 0; --q) {
    out << "  q=" << q << " |";
    for (int p = 0; p <= p_max; ++p) {
      out << "  " << grid[q][p];
      out << std::string(width[p] - grid[q][p].size(), ' ');
    }
    out << "\n";
  }
  out << "      +";
  for (int p = 0; p <= p_max; ++p) out << std::string(width[p] + 2, '-');
  out << "\n       ";
  for (int p = 0; p <= p_max; ++p) {
    const std::string label = "p=" + std::to_string(p);
    out << "  " << label << std::string(width[p] - label.size(), ' ');
  }
  out << "\n";
  return out.str();
}

std::string homology_json(const std::vector<AbelianGroupDescriptor>& h, Coefficients coeff) {
  json j;
  j["H"] = json::array();
  for (const auto& d : h) j["H"].push_back(descriptor_json(d, coeff));
  return j.dump();
}

std::string homology_line(const std::vector<AbelianGroupDescriptor>& h, Coefficients coeff) {
  std::string out = "H:";
  for (size_t i = 0; i < h.size(); ++i)
    out += (i ? ", " : " ") + descriptor_str(h[i], coeff);
  return out;
}

}  // namespace dflow

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dflow/complex.hpp"
#include "dflow/flow_category.hpp"
#include "dflow/homalg.hpp"
#include "dflow/morse.hpp"
#include "dflow/spectral.hpp"

namespace dflow {

// Input files are JSON.  A complex is either explicit
//   {"cells":[{"id":"f","dim":3},...],"covering":[["f","t"],...]}
// with covering pairs [upper, lower], or simplicial
//   {"facets":[[0,1,2],[2,3]]}
// whose cells get dot-joined vertex names.  Unreadable or malformed files
// raise Error(ParseError).
RegularCWComplex load_complex(const std::string& path);

// {"pairs":[["y","w"],...]} with pairs [lower, upper]
std::vector<std::pair<std::string, std::string>> load_field_pairs(const std::string& path);

// {"values":{"x":1.0,...}}
MorseFunction load_function(const std::string& path);

// Sniffs the file: "pairs" goes through the acyclicity check, "values"
// through the Morse-condition check; either way a validated field returns.
GradientVectorField load_gradient(const std::string& path, const RegularCWComplex& cx);

// explicit {"cells":...,"covering":...} form, reloadable by load_complex
std::string complex_json(const RegularCWComplex& cx);

std::string hom_poset_json(const RegularCWComplex& cx, const HomPoset& h);
// Hasse diagram, nodes labelled with arrow strings and clustered by rank
std::string hom_poset_dot(const RegularCWComplex& cx, const HomPoset& h);

std::string page_json(const BigradedPage& page, Coefficients coeff);
// grid printout, rows q = 2..0, columns p = 0..p_max
std::string page_text(const BigradedPage& page, int p_max, Coefficients coeff);

std::string homology_json(const std::vector<AbelianGroupDescriptor>& h, Coefficients coeff);
// e.g. "H: Z, 0, 0, 0" or "H: Q, Q^2, Q"
std::string homology_line(const std::vector<AbelianGroupDescriptor>& h, Coefficients coeff);

}  // namespace dflow

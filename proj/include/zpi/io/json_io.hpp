// Copyright 2026 The zpi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "zpi/casson/casson.hpp"
#include "zpi/complex/chain_complex.hpp"
#include "zpi/diagrams/quotient.hpp"
#include "zpi/linking/lattice.hpp"
#include "zpi/trace/trace.hpp"

namespace zpi::io {

using json = nlohmann::ordered_json;
using diagrams::GraphSpaceBasis;
using diagrams::GroupSpec;

/// Reads and parses a JSON file; ParseError names the path on failure.
json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

ring::Rational parse_rational(const std::string& text);

/// { "field": "ratfun" | "cyclotomic", "vars": n, "p": p }
json to_json(const ring::FieldSpec& f);
ring::FieldSpec field_from_json(const json& j);

/// { field..., "basis": [[labels]...], "boundary": [[[row, col, "x"]...] per degree] }.
/// Block shapes follow from the basis.
json to_json(const complex::BasedChainComplex& c);
complex::BasedChainComplex complex_from_json(const json& j);

/// { field..., "adjoint": bool, "maps": [[[row, col, "x"]...] per degree] }
json to_json(const complex::Propagator& g);
complex::Propagator propagator_from_json(const json& j, const complex::BasedChainComplex& c);

/// { "degree": k, "maps": [{ "rows", "cols", "entries" }...] }
json to_json(const complex::GradedMap& h);

/// { "vertices", "cyclic", "edges", "decorations": ["coeff"...] }; missing
/// decorations default to the identity.
json to_json(const diagrams::DecoratedGraph& g);
diagrams::DecoratedGraph graph_from_json(const json& j, const GroupSpec& group);

/// Options, generators and pivot rows, plus the basis keys and diagnostics
/// for reading. Loading reassembles without recomputation.
json to_json(const GraphSpaceBasis& b);
GraphSpaceBasis basis_from_json(const json& j);
diagrams::BasisOptions basis_options_from_json(const json& j);

/// { "dimension", "coordinates": ["q"...], "combination": "..." }
json coordinates_json(const GraphSpaceBasis& b, const GraphSpaceBasis::Coordinates& c);

/// Either one graph or { "terms": [{ "coefficient": "q", "graph": {...} }...] }.
diagrams::GraphCombination combination_from_json(const json& j, const GroupSpec& group);

/// { "loops": [[[x,y,z]...]...], "framings": [...], "period": m }. Without a
/// period the torus is made large enough that no translate of one loop
/// comes near another.
json to_json(const linking::LatticeLink& link);
linking::LatticeLink link_from_json(const json& j);

/// { "crossings": [[a,b,c,d]...], "signs": [...] } or { "name": "trefoil" }.
json to_json(const casson::KnotDiagram& k);
casson::KnotDiagram knot_from_json(const json& j);

/// Graph JSON plus "states": ["compact" | { "input": p, "output": q }...].
trace::CGraph cgraph_from_json(const json& j);
/// { "edge_factors": ["coeff"...], "scale": "q" }
trace::ModuliCount count_from_json(const json& j, const GroupSpec& group);
/// { "terms": [{ "cgraph", "count" }...] }
std::vector<trace::Term> terms_from_json(const json& j, const GroupSpec& group);
/// { "terms": [{ "cgraph", "components": [{ "counts": [...], "local": "q" }...] }...] }
std::vector<trace::FullTerm> full_terms_from_json(const json& j, const GroupSpec& group);
/// { "default": entry, "by_label": { "i": entry } } where entry is
/// { "complex": {...}, "propagator": {...}?, "adjoint": bool? }. A missing
/// propagator is solved for.
trace::PropagatorSet propagators_from_json(const json& j);
/// { "sign_x": "q", "a_coeffs": [{ "graph": {...}, "coefficient": "q" }...] }
trace::CorrectionData correction_from_json(const json& j);

}  // namespace zpi::io

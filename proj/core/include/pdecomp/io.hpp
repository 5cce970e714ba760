#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "pdecomp/decompose.hpp"
#include "pdecomp/kernels.hpp"
#include "pdecomp/lci.hpp"
#include "pdecomp/operators.hpp"
#include "pdecomp/realization.hpp"

// Textual payload formats. Every parser throws ParseError on malformed input
// (lci_problem_from_json: PreconditionError for a degenerate problem).
//
//   complex         [re, im]
//   polynomial      {"coeffs": [complex, ...]}            ascending degree
//   matrix          {"rows": r, "cols": c, "entries": [complex, ...]}  row-major
//   node set        [{"w": complex, "mu": k}, ...]
//   function        polynomial
//                 | {"num": polynomial, "den": polynomial}
//                 | {"rows": r, "cols": s, "num": [polynomial, ...], "den": polynomial}
//   decomposition   {"nodes", "kind": "polynomial" | "rational", "shape": [r, s],
//                    "F": [polynomial, ...] | realization}
//   realization     {"nodes", "r", "s", "m", "A", "B", "C"}
//   LCI problem     {"nodes", "a": [complex, ...], "c": complex}
//   LCI parameter   {"G": [polynomial, ...], "den"?: polynomial}
//   kernel          {"C": [polynomial, ...]}

namespace pdecomp::io {

using nlohmann::json;

json to_json(Complex c);
json to_json(const Polynomial& p);
json to_json(const ComplexMatrix& m);
json to_json(const NodeSet& nodes);
json to_json(const RationalMatrix& f);
json to_json(const Realization& r);
json to_json(const Decomposition& d);
json to_json(const LCIProblem& prob);
json to_json(const OperatorReport& rep);

Complex complex_from_json(const json& j);
Polynomial polynomial_from_json(const json& j);
ComplexMatrix matrix_from_json(const json& j);
NodeSet nodes_from_json(const json& j);
RationalMatrix function_from_json(const json& j);
Realization realization_from_json(const json& j);
Decomposition decomposition_from_json(const json& j);
LCIProblem lci_problem_from_json(const json& j);
FiniteRankKernel kernel_from_json(const json& j);

struct LCIParameter {
  std::vector<Polynomial> num;
  Polynomial den = Polynomial::constant(1.0);
};
LCIParameter lci_parameter_from_json(const json& j);

/// Reads and parses a JSON file; ParseError on I/O or syntax failure.
json read_json_file(const std::string& path);
/// Raw file bytes (for digests).
std::string read_file(const std::string& path);

}  // namespace pdecomp::io

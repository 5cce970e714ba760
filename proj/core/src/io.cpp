#include "pdecomp/io.hpp"

#include <fstream>
#include <sstream>

#include "pdecomp/error.hpp"

namespace pdecomp::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::size_t count_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(std::string("field \"") + name + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<Polynomial> polynomial_list(const json& j) {
  if (!j.is_array()) throw ParseError("expected a list of polynomials");
  std::vector<Polynomial> out;
  for (const json& e : j) out.push_back(polynomial_from_json(e));
  return out;
}

json polynomial_list_json(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const Polynomial& p : ps) out.push_back(to_json(p));
  return out;
}

}  // namespace

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const Polynomial& p) {
  json coeffs = json::array();
  for (Complex c : p.coeffs()) coeffs.push_back(to_json(c));
  return json{{"coeffs", coeffs}};
}

json to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(to_json(m(i, k)));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json to_json(const NodeSet& nodes) {
  json out = json::array();
  for (const Node& n : nodes.entries()) out.push_back(json{{"w", to_json(n.w)}, {"mu", n.mu}});
  return out;
}

json to_json(const RationalMatrix& f) {
  if (f.rows() == 1 && f.cols() == 1) {
    if (f.is_polynomial() && f.den().coeff(0) == Complex{1.0}) return to_json(f.num(0, 0));
    return json{{"num", to_json(f.num(0, 0))}, {"den", to_json(f.den())}};
  }
  return json{{"rows", f.rows()}, {"cols", f.cols()}, {"num", polynomial_list_json(f.numerators())},
              {"den", to_json(f.den())}};
}

json to_json(const Realization& r) {
  return json{{"nodes", to_json(r.nodes)}, {"r", r.rows},          {"s", r.cols},          {"m", r.state_dim()},
              {"A", to_json(r.A)},         {"B", to_json(r.B)},    {"C", to_json(r.C)}};
}

json to_json(const Decomposition& d) {
  json out{{"nodes", to_json(d.nodes)},
           {"kind", d.kind == DecompositionKind::polynomial ? "polynomial" : "rational"},
           {"shape", json::array({d.rows, d.cols})}};
  if (d.kind == DecompositionKind::polynomial) {
    out["F"] = polynomial_list_json(d.F_poly);
  } else {
    out["F"] = to_json(*d.F_real);
  }
  return out;
}

json to_json(const LCIProblem& prob) {
  json a = json::array();
  for (Eigen::Index k = 0; k < prob.a.size(); ++k) a.push_back(to_json(prob.a(k)));
  return json{{"nodes", to_json(prob.nodes)}, {"a", a}, {"c", to_json(prob.c)}};
}

json to_json(const OperatorReport& rep) {
  return json{{"relation", rep.relation},
              {"max_residual", rep.max_residual},
              {"tolerance", rep.tolerance},
              {"samples", rep.samples},
              {"pass", rep.pass}};
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex scalar must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Polynomial polynomial_from_json(const json& j) {
  const json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw ParseError("\"coeffs\" must be a list");
  std::vector<Complex> c;
  for (const json& e : coeffs) c.push_back(complex_from_json(e));
  try {
    return Polynomial(std::move(c));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

ComplexMatrix matrix_from_json(const json& j) {
  const std::size_t rows = count_field(j, "rows");
  const std::size_t cols = count_field(j, "cols");
  const json& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != rows * cols) throw ParseError("matrix entry count does not match shape");
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(entries[i * cols + k]);
    }
  }
  return m;
}

NodeSet nodes_from_json(const json& j) {
  const json& list = (j.is_object() && j.contains("nodes")) ? j.at("nodes") : j;
  if (!list.is_array()) throw ParseError("node set must be a list of {\"w\", \"mu\"}");
  std::vector<Node> nodes;
  for (const json& e : list) {
    const json& mu = field(e, "mu");
    if (!mu.is_number_integer()) throw ParseError("\"mu\" must be an integer");
    nodes.push_back({complex_from_json(field(e, "w")), mu.get<int>()});
  }
  try {
    return NodeSet(std::move(nodes));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

RationalMatrix function_from_json(const json& j) {
  try {
    if (j.is_object() && j.contains("coeffs")) return RationalMatrix(polynomial_from_json(j));
    const Polynomial den = j.contains("den") ? polynomial_from_json(field(j, "den")) : Polynomial::constant(1.0);
    if (den.is_zero()) throw ParseError("denominator is the zero polynomial");
    if (j.is_object() && j.contains("rows")) {
      return RationalMatrix(count_field(j, "rows"), count_field(j, "cols"), polynomial_list(field(j, "num")), den);
    }
    return RationalMatrix(RationalFunction(polynomial_from_json(field(j, "num")), den));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Realization realization_from_json(const json& j) {
  Realization r{nodes_from_json(field(j, "nodes"))};
  r.rows = count_field(j, "r");
  r.cols = count_field(j, "s");
  r.A = matrix_from_json(field(j, "A"));
  r.B = matrix_from_json(field(j, "B"));
  r.C = matrix_from_json(field(j, "C"));
  const auto m = static_cast<Eigen::Index>(count_field(j, "m"));
  const auto n = static_cast<Eigen::Index>(r.nodes.degree());
  if (r.A.rows() != m || r.A.cols() != m || r.B.rows() != m || r.B.cols() != static_cast<Eigen::Index>(r.cols) ||
      r.C.rows() != n * static_cast<Eigen::Index>(r.rows) || r.C.cols() != m) {
    throw ParseError("realization matrices have inconsistent dimensions");
  }
  return r;
}

Decomposition decomposition_from_json(const json& j) {
  Decomposition d{nodes_from_json(field(j, "nodes"))};
  const std::string kind = field(j, "kind").get<std::string>();
  if (j.contains("shape")) {
    const json& shape = j.at("shape");
    if (!shape.is_array() || shape.size() != 2) throw ParseError("\"shape\" must be [r, s]");
    d.rows = shape[0].get<std::size_t>();
    d.cols = shape[1].get<std::size_t>();
  }
  if (kind == "polynomial") {
    d.kind = DecompositionKind::polynomial;
    d.F_poly = polynomial_list(field(j, "F"));
    if (d.F_poly.size() != static_cast<std::size_t>(d.nodes.degree()) * d.rows * d.cols) {
      throw ParseError("decomposition has the wrong number of components");
    }
  } else if (kind == "rational") {
    d.kind = DecompositionKind::rational;
    d.F_real = realization_from_json(field(j, "F"));
  } else {
    throw ParseError("decomposition kind must be \"polynomial\" or \"rational\"");
  }
  return d;
}

LCIProblem lci_problem_from_json(const json& j) {
  NodeSet nodes = nodes_from_json(field(j, "nodes"));
  const json& a = field(j, "a");
  if (!a.is_array()) throw ParseError("\"a\" must be a list of complex scalars");
  ComplexVector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t k = 0; k < a.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_from_json(a[k]);
  LCIProblem prob{std::move(nodes), v, complex_from_json(field(j, "c"))};
  prob.validate();  // degenerate, not malformed: PreconditionError
  return prob;
}

FiniteRankKernel kernel_from_json(const json& j) { return {polynomial_list(field(j, "C"))}; }

LCIParameter lci_parameter_from_json(const json& j) {
  LCIParameter out;
  if (j.is_array()) {
    out.num = polynomial_list(j);
    return out;
  }
  out.num = polynomial_list(field(j, "G"));
  if (j.contains("den")) out.den = polynomial_from_json(j.at("den"));
  if (out.den.is_zero()) throw ParseError("parameter denominator is the zero polynomial");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace pdecomp::io

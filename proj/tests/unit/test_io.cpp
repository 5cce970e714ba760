#include <doctest.h>

#include "pdecomp/error.hpp"
#include "pdecomp/io.hpp"
#include "pdecomp/random.hpp"
#include "test_util.hpp"

using namespace pdecomp;
using namespace std::complex_literals;
using pdecomp::io::json;

namespace {

bool same(const Polynomial& a, const Polynomial& b) { return a.coeffs() == b.coeffs(); }

}  // namespace

TEST_CASE("scalars and polynomials") {
  CHECK(io::complex_from_json(json::parse("[1.5, -2]")) == Complex(1.5, -2.0));
  CHECK(io::complex_from_json(json::parse("3")) == Complex(3.0, 0.0));
  const Polynomial p{1.0, 0.0, 2.0 - 1.0i};
  CHECK(same(io::polynomial_from_json(io::to_json(p)), p));
  CHECK(io::polynomial_from_json(json::parse(R"({"coeffs": []})")).is_zero());
  // trailing zeros are trimmed
  check_coeffs(io::polynomial_from_json(json::parse(R"({"coeffs": [[1,0],[0,0]]})")), {1.0});
}

TEST_CASE("malformed payloads raise ParseError") {
  CHECK_THROWS_AS(io::complex_from_json(json::parse("[1]")), ParseError);
  CHECK_THROWS_AS(io::complex_from_json(json::parse(R"(["a", 1])")), ParseError);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse("[1, 2]")), ParseError);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse(R"({"coeffs": 4})")), ParseError);
  CHECK_THROWS_AS(io::nodes_from_json(json::parse(R"([{"w": [0,0]}])")), ParseError);
  CHECK_THROWS_AS(io::nodes_from_json(json::parse(R"([{"w": [0,0], "mu": 0}])")), ParseError);
  CHECK_THROWS_AS(io::nodes_from_json(json::parse(R"([{"w": [0,0], "mu": 1}, {"w": [0,0], "mu": 2}])")),
                  ParseError);
  CHECK_THROWS_AS(io::function_from_json(json::parse(R"({"num": {"coeffs": [1]}, "den": {"coeffs": []}})")),
                  ParseError);
  CHECK_THROWS_AS(io::function_from_json(json::parse(R"({"rows": 2, "cols": 1, "num": [{"coeffs": [1]}]})")),
                  ParseError);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"rows": 2, "cols": 2, "entries": [1, 2, 3]})")),
                  ParseError);
  CHECK_THROWS_AS(io::lci_problem_from_json(json::parse(
                      R"({"nodes": [{"w": [1,0], "mu": 1}], "a": [[0,0]], "c": [1,0]})")),
                  PreconditionError);
  CHECK_THROWS_AS(io::lci_problem_from_json(json::parse(
                      R"({"nodes": [{"w": [1,0], "mu": 1}], "a": [[1,0], [1,0]], "c": [1,0]})")),
                  PreconditionError);
  CHECK_THROWS_AS(io::lci_parameter_from_json(json::parse(R"({"G": [], "den": {"coeffs": []}})")), ParseError);
  CHECK_THROWS_AS(io::kernel_from_json(json::parse("{}")), ParseError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("node sets round trip") {
  Rng rng(71);
  for (int t = 0; t < 20; ++t) {
    const NodeSet n = random_nodes(rng);
    const NodeSet back = io::nodes_from_json(json::parse(io::to_json(n).dump()));
    REQUIRE(back.size() == n.size());
    for (std::size_t k = 0; k < n.size(); ++k) {
      CHECK(back.entries()[k].w == n.entries()[k].w);
      CHECK(back.entries()[k].mu == n.entries()[k].mu);
    }
  }
  // {"nodes": [...]} wrapper is accepted
  const NodeSet wrapped = io::nodes_from_json(json::parse(R"({"nodes": [{"w": [1,0], "mu": 2}]})"));
  CHECK(wrapped.degree() == 2);
}

TEST_CASE("functions round trip") {
  const RationalMatrix scalar(RationalFunction(Polynomial{1.0}, Polynomial{-2.0, 1.0}));
  const RationalMatrix s2 = io::function_from_json(io::to_json(scalar));
  CHECK(s2.rows() == 1);
  CHECK(same(s2.num(0, 0), scalar.num(0, 0)));
  CHECK(same(s2.den(), scalar.den()));

  const RationalMatrix poly(Polynomial{0.0, 0.0, 1.0});
  const json pj = io::to_json(poly);
  CHECK(pj.contains("coeffs"));
  CHECK(same(io::function_from_json(pj).num(0, 0), poly.num(0, 0)));

  const RationalMatrix mat(2, 1, {Polynomial{1.0}, Polynomial{0.0, 1.0i}}, Polynomial{3.0, 1.0});
  const RationalMatrix m2 = io::function_from_json(json::parse(io::to_json(mat).dump()));
  CHECK(m2.rows() == 2);
  CHECK(m2.cols() == 1);
  CHECK(same(m2.num(1, 0), mat.num(1, 0)));
  CHECK(same(m2.den(), mat.den()));
}

TEST_CASE("decompositions and realizations round trip") {
  const NodeSet pm1({{1.0, 1}, {-1.0, 1}});
  const Decomposition d = decompose_poly(Polynomial{0.0, 0.0, 1.0}, pm1);
  const Decomposition d2 = io::decomposition_from_json(json::parse(io::to_json(d).dump()));
  CHECK(d2.kind == DecompositionKind::polynomial);
  REQUIRE(d2.F_poly.size() == 2);
  check_coeffs(d2.F_poly[0], {1.0, 1.0});
  CHECK(d2.F_poly[1].is_zero());

  const Decomposition r = decompose_rational(RationalFunction(Polynomial{1.0}, Polynomial{-2.0, 1.0}), pm1);
  const Decomposition r2 = io::decomposition_from_json(json::parse(io::to_json(r).dump()));
  CHECK(r2.kind == DecompositionKind::rational);
  REQUIRE(r2.F_real.has_value());
  CHECK(max_abs(r2.F_real->A - r.F_real->A) == 0.0);
  CHECK(max_abs(r2.F_real->C - r.F_real->C) == 0.0);
  CHECK_CNEAR(reconstruct_scalar(r2, 0.3), 1.0 / (0.3 - 2.0), 1e-12);

  json bad = io::to_json(r);
  bad["F"]["m"] = 3;
  CHECK_THROWS_AS(io::decomposition_from_json(bad), ParseError);
  bad = io::to_json(d);
  bad["kind"] = "other";
  CHECK_THROWS_AS(io::decomposition_from_json(bad), ParseError);
}

TEST_CASE("problems, parameters and kernels") {
  const NodeSet pm1({{1.0, 1}, {-1.0, 1}});
  ComplexVector a(2);
  a << 1.0, 1.0;
  const LCIProblem prob{pm1, a, 2.0};
  const LCIProblem back = io::lci_problem_from_json(json::parse(io::to_json(prob).dump()));
  CHECK(back.c == prob.c);
  CHECK(back.a == prob.a);

  const io::LCIParameter g = io::lci_parameter_from_json(json::parse(R"([{"coeffs": [1]}, {"coeffs": []}])"));
  CHECK(g.num.size() == 2);
  CHECK(g.den.degree() == 0);
  const io::LCIParameter gr =
      io::lci_parameter_from_json(json::parse(R"({"G": [{"coeffs": [1]}], "den": {"coeffs": [1, 1]}})"));
  check_coeffs(gr.den, {1.0, 1.0});

  const FiniteRankKernel k = io::kernel_from_json(json::parse(R"({"C": [{"coeffs": [1]}, {"coeffs": [0, 1]}]})"));
  CHECK(k.C.size() == 2);
  check_coeffs(k.C[1], {0.0, 1.0});
}

TEST_CASE("reports serialize every field") {
  const OperatorReport rep{"cuntz", 1e-12, 1e-10, 42, true};
  const json j = io::to_json(rep);
  CHECK(j.at("relation") == "cuntz");
  CHECK(j.at("tolerance").get<double>() == 1e-10);
  CHECK(j.at("samples").get<std::size_t>() == 42);
  CHECK(j.at("pass").get<bool>());
}

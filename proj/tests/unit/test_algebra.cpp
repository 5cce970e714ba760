#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pdecomp/error.hpp"
#include "pdecomp/matrix.hpp"
#include "pdecomp/node_set.hpp"
#include "pdecomp/partial_fractions.hpp"
#include "pdecomp/polynomial.hpp"
#include "pdecomp/random.hpp"
#include "test_util.hpp"

using namespace pdecomp;
using namespace std::complex_literals;

TEST_CASE("polynomial normalization") {
  CHECK(Polynomial{}.degree() == Polynomial::kZeroDegree);
  CHECK(Polynomial{0.0, 0.0}.is_zero());
  CHECK(Polynomial{1.0, 1e-14}.degree() == 0);
  CHECK(Polynomial{1.0, 1e-10}.degree() == 1);
  CHECK((Polynomial{1.0, 1.0} - Polynomial{0.0, 1.0}).degree() == 0);
  CHECK_THROWS_AS(Polynomial({1.0, std::nan("")}), ToleranceError);
}

TEST_CASE("poly_eval") {
  CHECK_CNEAR(poly_eval(Polynomial{1.0, 2.0}, 1i), 1.0 + 2i, 1e-15);
  CHECK_CNEAR(poly_eval(Polynomial{-1.0, 0.0, 1.0}, 1.0), 0.0, 1e-15);
  CHECK_CNEAR(poly_eval(Polynomial::monomial(3), 2.0), 8.0, 1e-15);
  CHECK_CNEAR(poly_eval(Polynomial{}, 3.0 + 1i), 0.0, 0.0);
}

TEST_CASE("poly_derivative") {
  check_coeffs(poly_derivative(Polynomial::monomial(2), 1), {0.0, 2.0});
  CHECK(poly_derivative(Polynomial::monomial(2), 3).is_zero());
  check_coeffs(poly_derivative(Polynomial{1.0, 1.0, 1.0}, 0), {1.0, 1.0, 1.0});
  CHECK_THROWS_AS(poly_derivative(Polynomial{1.0}, -1), PreconditionError);
}

TEST_CASE("poly_from_nodes") {
  check_coeffs(poly_from_nodes(NodeSet({{1.0, 1}, {-1.0, 1}})), {-1.0, 0.0, 1.0});
  check_coeffs(poly_from_nodes(NodeSet({{0.0, 2}})), {0.0, 0.0, 1.0});
  // (z-1)^2 (z+1) by convolution
  const auto want = oracle::expand_roots({1.0, 1.0, -1.0});
  check_coeffs(poly_from_nodes(NodeSet({{1.0, 2}, {-1.0, 1}})), want);
  check_coeffs(poly_from_nodes(NodeSet({{1.0, 2}, {-1.0, 1}})), {1.0, -1.0, -1.0, 1.0});

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const NodeSet nodes = random_nodes(rng);
    std::vector<oracle::cd> roots;
    for (const Node& n : nodes.entries()) roots.insert(roots.end(), static_cast<std::size_t>(n.mu), n.w);
    check_coeffs(poly_from_nodes(nodes), oracle::expand_roots(roots), 1e-12);
  }
}

TEST_CASE("poly_divrem examples") {
  {
    auto [q, r] = poly_divrem(Polynomial{-1.0, 0.0, 1.0}, Polynomial{-1.0, 1.0});
    check_coeffs(q, {1.0, 1.0});
    CHECK(r.is_zero());
  }
  {
    auto [q, r] = poly_divrem(Polynomial{1.0}, Polynomial::monomial(1));
    CHECK(q.is_zero());
    check_coeffs(r, {1.0});
  }
  {
    auto [q, r] = poly_divrem(Polynomial::monomial(3), Polynomial{-1.0, 0.0, 1.0});
    check_coeffs(q, {0.0, 1.0});
    check_coeffs(r, {0.0, 1.0});
  }
  CHECK_THROWS_AS(poly_divrem(Polynomial{1.0}, Polynomial{}), PreconditionError);
}

TEST_CASE("poly_divrem reconstructs f") {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const Polynomial f = random_polynomial(rng, std::uniform_int_distribution<int>(0, 15)(rng));
    // Monic divisors with roots in a bounded disk, like every p(z) the library divides by.
    const NodeSet roots = random_nodes(rng, {4, 2, 6, 1.5, 0.2});
    const Polynomial g = roots.polynomial() * random_in_disk(rng, 2.0);
    auto [q, r] = poly_divrem(f, g);
    CHECK(r.degree() < g.degree());
    for (int k = 0; k < 20; ++k) {
      const Complex z = random_in_disk(rng, 1.5);
      const Complex lhs = q(z) * g(z) + r(z);
      CHECK(std::abs(lhs - f(z)) <= 1e-10 * std::max(1.0, std::abs(f(z))));
    }
  }
}

TEST_CASE("partial fractions of 1/p") {
  {
    const NodeSet nodes({{1.0, 1}, {-1.0, 1}});
    const auto t = partial_fractions_reciprocal(nodes);
    REQUIRE(t.terms.size() == 2);
    CHECK_CNEAR(t.terms[0].coeff, 0.5, 1e-15);
    CHECK_CNEAR(t.terms[1].coeff, -0.5, 1e-15);
  }
  {
    const NodeSet nodes({{0.0, 2}});
    const auto t = partial_fractions_reciprocal(nodes);
    REQUIRE(t.terms.size() == 2);
    CHECK(t.terms[0].order == 1);
    CHECK_CNEAR(t.terms[0].coeff, 0.0, 1e-15);
    CHECK(t.terms[1].order == 2);
    CHECK_CNEAR(t.terms[1].coeff, 1.0, 1e-15);
  }
  {
    const NodeSet nodes({{0.0, 1}, {2.0, 1}});
    const auto t = partial_fractions_reciprocal(nodes);
    CHECK_CNEAR(t.terms[0].coeff, -0.5, 1e-15);
    CHECK_CNEAR(t.terms[1].coeff, 0.5, 1e-15);
  }
}

TEST_CASE("partial fraction table reproduces 1/p away from the nodes") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const NodeSet nodes = random_nodes(rng);
    const auto table = partial_fractions_reciprocal(nodes);
    CHECK(static_cast<int>(table.terms.size()) == nodes.degree());
    int checked = 0;
    while (checked < 50) {
      const Complex z = random_in_disk(rng, 3.0);
      bool clear = true;
      for (const Node& n : nodes.entries()) clear = clear && std::abs(z - n.w) >= 0.3;
      if (!clear) continue;
      ++checked;
      const Complex want = 1.0 / nodes.polynomial()(z);
      CHECK(std::abs(table(nodes, z) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("divided_difference_Q") {
  {
    const auto q = divided_difference_Q(Polynomial{-1.0, 0.0, 1.0});
    REQUIRE(q.size() == 2);
    check_coeffs(q[0], {0.0, 1.0});
    check_coeffs(q[1], {1.0});
  }
  for (int n = 1; n <= 6; ++n) {
    const auto q = divided_difference_Q(Polynomial::monomial(n));
    for (int j = 0; j < n; ++j) check_coeffs(q[static_cast<std::size_t>(j)], [&] {
        std::vector<Complex> c(static_cast<std::size_t>(n - j), 0.0);
        c.back() = 1.0;
        return c;
      }());
  }
  {
    const auto q = divided_difference_Q(Polynomial{1.0, -1.0, -1.0, 1.0});
    check_coeffs(q[0], {-1.0, -1.0, 1.0});
    check_coeffs(q[1], {-1.0, 1.0});
    check_coeffs(q[2], {1.0});
  }
  CHECK_THROWS_AS(divided_difference_Q(Polynomial{2.0}), PreconditionError);
}

TEST_CASE("divided_difference_Q identity on random polynomials") {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Polynomial p = random_polynomial(rng, std::uniform_int_distribution<int>(1, 8)(rng));
    const auto q = divided_difference_Q(p);
    for (int k = 0; k < 100; ++k) {
      const Complex s = random_in_disk(rng, 2.0);
      const Complex z = random_in_disk(rng, 2.0);
      Complex lhs{};
      Complex zj{1.0};
      for (const Polynomial& qj : q) {
        lhs += zj * qj(s);
        zj *= z;
      }
      const double err = std::abs(lhs * (s - z) - (p(s) - p(z)));
      CHECK(err <= 1e-10 * (1.0 + std::abs(p(s)) + std::abs(p(z))));
    }
  }
}

TEST_CASE("matrix_solve") {
  ComplexMatrix b(2, 1);
  b << 3.0, 4.0;
  const ComplexMatrix x = matrix_solve(ComplexMatrix::Identity(2, 2), b);
  CHECK_CNEAR(x(0, 0), 3.0, 1e-15);
  CHECK_CNEAR(x(1, 0), 4.0, 1e-15);

  ComplexMatrix m(2, 2);
  m << 1.0, 1.0, 1.0, -1.0;
  b << 1.0, 1.0;
  const ComplexMatrix y = matrix_solve(m, b);
  CHECK_CNEAR(y(0, 0), 1.0, 1e-15);
  CHECK_CNEAR(y(1, 0), 0.0, 1e-15);

  m << 1.0, 1.0, 1.0, 1.0;
  try {
    matrix_solve(m, b);
    FAIL("singular matrix accepted");
  } catch (const SingularMatrixError& e) {
    CHECK(e.pivot() <= 1e-13);
  }
  CHECK_THROWS_AS(matrix_solve(ComplexMatrix::Identity(2, 3), b), PreconditionError);
}

TEST_CASE("matrix_solve residual on random well-conditioned systems") {
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = random_in_disk(rng);
    }
    m += 2.0 * ComplexMatrix::Identity(n, n);
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    if (cond > 1e6) continue;
    ComplexMatrix b(n, 2);
    for (int i = 0; i < n; ++i) b(i, 0) = random_in_disk(rng), b(i, 1) = random_in_disk(rng);
    const ComplexMatrix x = matrix_solve(m, b);
    CHECK(max_abs(m * x - b) <= 1e-9 * max_abs(b));
  }
}

TEST_CASE("rank_basis") {
  ComplexMatrix cols(2, 3);
  cols << 1.0, 2.0, 0.0, 0.0, 0.0, 1.0;
  const RankBasis rb = rank_basis(cols);
  REQUIRE(rb.selected == std::vector<std::size_t>{0, 2});
  CHECK_CNEAR(rb.coordinates(0, 1), 2.0, 1e-14);
  CHECK_CNEAR(rb.coordinates(1, 1), 0.0, 1e-14);

  const RankBasis empty = rank_basis(ComplexMatrix::Zero(3, 1));
  CHECK(empty.selected.empty());
  CHECK(empty.coordinates.rows() == 0);

  CHECK_THROWS_AS(rank_basis(cols, 0.0), PreconditionError);
}

TEST_CASE("rank_basis recovers rank and coordinates") {
  Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix m(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m(i, j) = random_in_disk(rng);
    }
    REQUIRE(std::abs(m.determinant()) > 1e-6);
    ComplexMatrix cols(4, 10);
    cols.leftCols(4) = m;
    for (int k = 0; k < 6; ++k) cols.col(4 + k) = m.col(k % 4) + m.col((k + 1) % 4);
    const RankBasis rb = rank_basis(cols);
    CHECK(rb.selected.size() == 4);
    ComplexMatrix basis(4, 4);
    for (std::size_t i = 0; i < 4; ++i) basis.col(static_cast<Eigen::Index>(i)) = cols.col(static_cast<Eigen::Index>(rb.selected[i]));
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
      CHECK((basis * rb.coordinates.col(j) - cols.col(j)).norm() <= 1e-9 * cols.col(j).norm());
    }
  }
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pdecomp/node_set.hpp"
#include "pdecomp/rational.hpp"

namespace pdecomp {

struct OperatorReport {
  std::string relation;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;  // basis size or sample count
  bool pass = true;
};

/// (S_j g)(z) = z^{j-1} g(p(z)), 1 <= j <= N.
Polynomial cuntz_S(int j, const Polynomial& g, const NodeSet& nodes);

/// T_j f = F_j, the j-th component of the decomposition of f, 1 <= j <= N.
Polynomial cuntz_T(int j, const Polynomial& f, const NodeSet& nodes);

/// Checks T_i S_j g = delta_ij g on g = lambda^d and sum_j S_j T_j f = f on
/// f = z^d for d <= maxdeg. Residuals are coefficientwise, scaled by the
/// largest coefficient of S_j g (respectively of the decomposition of f)
/// when that exceeds one.
OperatorReport verify_cuntz(const NodeSet& nodes, int maxdeg, double tol = 1e-10);

/// Roots of p(z) = alpha with p'(root), from the companion matrix of
/// p - alpha followed by Newton polishing.
struct LevelSetRoots {
  std::vector<Complex> roots;
  std::vector<Complex> dp;  // p'(root)
};

/// Throws PreconditionError when the roots are not simple and distinct.
LevelSetRoots level_set_roots(const NodeSet& nodes, Complex alpha);

/// (R_alpha f)(z) = f(z) / (p(z) - alpha) - sum_u f(w_u) / (p'(w_u) (z - w_u))
/// over the roots w_u of p = alpha.
Complex resolvent_apply(const std::function<Complex(Complex)>& f, Complex alpha, const NodeSet& nodes, Complex z);
/// As above; additionally rejects a pole of f at one of the roots.
Complex resolvent_apply(const RationalFunction& f, Complex alpha, const NodeSet& nodes, Complex z);

/// R_beta f as a rational function over f.den * (p - beta).
RationalFunction resolvent_rational(const RationalFunction& f, Complex beta, const NodeSet& nodes);

/// Z(z) (R_alpha F)(p(z)) with F the polynomial decomposition of f and
/// (R_alpha F)(lambda) = (F(lambda) - F(alpha)) / (lambda - alpha).
Complex resolvent_via_decomposition(const Polynomial& f, Complex alpha, const NodeSet& nodes, Complex z);

/// Residual of R_alpha f - R_beta f = (alpha - beta) R_alpha R_beta f at
/// `samples` pseudo-random points, each scaled by max(1, |R_alpha f| + |R_beta f|).
OperatorReport verify_resolvent_identity(const RationalFunction& f, Complex alpha, Complex beta,
                                         const NodeSet& nodes, int samples = 20, double tol = 1e-7,
                                         std::uint64_t seed = 7);

/// Residual of 1 / (p(z) - alpha) = sum_u 1 / (p'(w_u) (z - w_u)), scaled by
/// max(1, |1 / (p(z) - alpha)|).
OperatorReport verify_resolvent_anchor(const NodeSet& nodes, Complex alpha, int samples = 20, double tol = 1e-9,
                                       std::uint64_t seed = 11);

}  // namespace pdecomp

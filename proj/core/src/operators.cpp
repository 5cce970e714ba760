#include "pdecomp/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

#include "pdecomp/decompose.hpp"
#include "pdecomp/error.hpp"

namespace pdecomp {

namespace {

void check_index(int j, const NodeSet& nodes) {
  if (j < 1 || j > nodes.degree()) {
    std::ostringstream msg;
    msg << "Cuntz operator index " << j << " outside 1.." << nodes.degree();
    throw PreconditionError(msg.str());
  }
}

double coeff_residual(const Polynomial& got, const Polynomial& want) {
  double r = 0.0;
  for (int k = 0; k <= std::max(got.degree(), want.degree()); ++k) r = std::max(r, std::abs(got.coeff(k) - want.coeff(k)));
  return r;
}

std::vector<Complex> sample_disk(const NodeSet& nodes, int count, std::uint64_t seed,
                                 const std::function<bool(Complex)>& admissible) {
  Complex centre{};
  for (const Node& n : nodes.entries()) centre += n.w;
  centre /= static_cast<double>(nodes.size());
  double spread = 1.0;
  for (const Node& n : nodes.entries()) spread = std::max(spread, std::abs(n.w - centre));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Complex> out;
  for (int attempt = 0; static_cast<int>(out.size()) < count && attempt < 100 * count + 100; ++attempt) {
    const Complex z = centre + (spread + 0.5) * Complex(unit(rng), unit(rng));
    if (admissible(z)) out.push_back(z);
  }
  return out;
}

double min_distance(Complex z, const std::vector<Complex>& pts) {
  double d = std::numeric_limits<double>::infinity();
  for (Complex w : pts) d = std::min(d, std::abs(z - w));
  return d;
}

}  // namespace

Polynomial cuntz_S(int j, const Polynomial& g, const NodeSet& nodes) {
  check_index(j, nodes);
  return Polynomial::monomial(j - 1) * poly_compose(g, nodes.polynomial());
}

Polynomial cuntz_T(int j, const Polynomial& f, const NodeSet& nodes) {
  check_index(j, nodes);
  return decompose_poly(f, nodes).component(static_cast<std::size_t>(j - 1));
}

OperatorReport verify_cuntz(const NodeSet& nodes, int maxdeg, double tol) {
  if (maxdeg < 0) throw PreconditionError("verify_cuntz: maxdeg must be >= 0");
  const int n = nodes.degree();
  OperatorReport rep{"T_i S_j = delta_ij I, sum_j S_j T_j = I", 0.0, tol, 0, true};
  for (int d = 0; d <= maxdeg; ++d) {
    const Polynomial g = Polynomial::monomial(d);
    for (int j = 1; j <= n; ++j) {
      const Polynomial f = cuntz_S(j, g, nodes);
      const Decomposition dec = decompose_poly(f, nodes);
      const double scale = std::max(1.0, f.norm());
      for (int i = 1; i <= n; ++i) {
        const Polynomial want = (i == j) ? g : Polynomial{};
        rep.max_residual = std::max(rep.max_residual, coeff_residual(dec.component(static_cast<std::size_t>(i - 1)), want) / scale);
      }
      ++rep.samples;
    }
    const Polynomial f = Polynomial::monomial(d);
    const Decomposition dec = decompose_poly(f, nodes);
    Polynomial sum;
    double scale = 1.0;
    for (int j = 1; j <= n; ++j) {
      const Polynomial& t = dec.component(static_cast<std::size_t>(j - 1));
      scale = std::max(scale, t.norm());
      sum += cuntz_S(j, t, nodes);
    }
    rep.max_residual = std::max(rep.max_residual, coeff_residual(sum, f) / scale);
    ++rep.samples;
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

LevelSetRoots level_set_roots(const NodeSet& nodes, Complex alpha) {
  const Polynomial shifted = nodes.polynomial() - Polynomial::constant(alpha);
  const int n = nodes.degree();
  const Polynomial dp = poly_derivative(nodes.polynomial());
  LevelSetRoots out;
  if (n == 1) {
    out.roots.push_back(-shifted.coeff(0));
  } else {
    // p - alpha is monic; companion matrix with ones on the subdiagonal.
    ComplexMatrix companion = ComplexMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -shifted.coeff(i);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
    if (solver.info() != Eigen::Success) throw ToleranceError("level_set_roots: eigenvalue iteration failed");
    for (int i = 0; i < n; ++i) out.roots.push_back(solver.eigenvalues()(i));
  }
  for (Complex& w : out.roots) {
    for (int it = 0; it < 3; ++it) {
      const Complex d = dp(w);
      if (d == Complex{}) break;
      w -= shifted(w) / d;
    }
  }
  // Deterministic order: by real part, then imaginary part.
  std::sort(out.roots.begin(), out.roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  const double dp_norm = std::max(dp.norm(), 1e-300);
  double size = 1.0;
  for (Complex w : out.roots) size = std::max(size, std::abs(w));
  for (std::size_t u = 0; u < out.roots.size(); ++u) {
    const Complex d = dp(out.roots[u]);
    if (std::abs(d) < 1e-8 * dp_norm) {
      std::ostringstream msg;
      msg << "p(z) = " << alpha << " has a multiple root near " << out.roots[u];
      throw PreconditionError(msg.str());
    }
    for (std::size_t v = 0; v < u; ++v) {
      if (std::abs(out.roots[u] - out.roots[v]) < 1e-8 * size) {
        throw PreconditionError("level_set_roots: roots of p(z) = alpha are clustered");
      }
    }
    out.dp.push_back(d);
  }
  return out;
}

Complex resolvent_apply(const std::function<Complex(Complex)>& f, Complex alpha, const NodeSet& nodes, Complex z) {
  const LevelSetRoots lr = level_set_roots(nodes, alpha);
  double size = 1.0;
  for (Complex w : lr.roots) size = std::max(size, std::abs(w));
  if (min_distance(z, lr.roots) <= 1e-12 * size) throw PreconditionError("resolvent_apply: z is a root of p(z) = alpha");
  Complex acc = f(z) / (nodes.polynomial()(z) - alpha);
  for (std::size_t u = 0; u < lr.roots.size(); ++u) acc -= f(lr.roots[u]) / (lr.dp[u] * (z - lr.roots[u]));
  return acc;
}

Complex resolvent_apply(const RationalFunction& f, Complex alpha, const NodeSet& nodes, Complex z) {
  const LevelSetRoots lr = level_set_roots(nodes, alpha);
  for (Complex w : lr.roots) {
    if (f.is_pole(w)) throw PreconditionError("resolvent_apply: f has a pole at a root of p(z) = alpha");
  }
  return resolvent_apply([&f](Complex s) { return f(s); }, alpha, nodes, z);
}

RationalFunction resolvent_rational(const RationalFunction& f, Complex beta, const NodeSet& nodes) {
  const LevelSetRoots lr = level_set_roots(nodes, beta);
  const Polynomial shifted = nodes.polynomial() - Polynomial::constant(beta);
  Polynomial correction;
  for (std::size_t v = 0; v < lr.roots.size(); ++v) {
    if (f.is_pole(lr.roots[v])) throw PreconditionError("resolvent_rational: f has a pole at a root of p(z) = beta");
    const Complex weight = f(lr.roots[v]) / lr.dp[v];
    const Polynomial deflated = poly_divrem(shifted, Polynomial{-lr.roots[v], 1.0}).first;
    correction += deflated * weight;
  }
  return {f.num - f.den * correction, f.den * shifted};
}

Complex resolvent_via_decomposition(const Polynomial& f, Complex alpha, const NodeSet& nodes, Complex z) {
  const Decomposition d = decompose_poly(f, nodes);
  const Complex lambda = nodes.polynomial()(z);
  const Polynomial divisor{-alpha, 1.0};
  Complex acc{};
  Complex zj{1.0};
  for (int j = 0; j < nodes.degree(); ++j) {
    const Polynomial& Fj = d.component(static_cast<std::size_t>(j));
    const Polynomial shifted = poly_divrem(Fj - Polynomial::constant(Fj(alpha)), divisor).first;
    acc += zj * shifted(lambda);
    zj *= z;
  }
  return acc;
}

OperatorReport verify_resolvent_identity(const RationalFunction& f, Complex alpha, Complex beta,
                                         const NodeSet& nodes, int samples, double tol, std::uint64_t seed) {
  OperatorReport rep{"R_a - R_b = (a - b) R_a R_b", 0.0, tol, 0, true};
  if (alpha == beta) {
    // Both sides vanish identically.
    rep.samples = static_cast<std::size_t>(samples);
    return rep;
  }
  const LevelSetRoots ra = level_set_roots(nodes, alpha);
  const LevelSetRoots rb = level_set_roots(nodes, beta);
  double size = 1.0;
  for (Complex w : ra.roots) size = std::max(size, std::abs(w));
  for (Complex w : ra.roots) {
    if (min_distance(w, rb.roots) < 1e-8 * size) {
      throw PreconditionError("verify_resolvent_identity: level sets of alpha and beta intersect");
    }
  }
  const RationalFunction rbf = resolvent_rational(f, beta, nodes);
  const auto points = sample_disk(nodes, samples, seed, [&](Complex z) {
    return min_distance(z, ra.roots) > 1e-2 && min_distance(z, rb.roots) > 1e-2 && !f.is_pole(z) &&
           std::abs(f.den(z)) > 1e-4 * f.den.norm();
  });
  for (Complex z : points) {
    const Complex a = resolvent_apply(f, alpha, nodes, z);
    const Complex b = resolvent_apply(f, beta, nodes, z);
    const Complex ab = resolvent_apply(rbf, alpha, nodes, z);
    const double scale = std::max(1.0, std::abs(a) + std::abs(b));
    rep.max_residual = std::max(rep.max_residual, std::abs((a - b) - (alpha - beta) * ab) / scale);
  }
  rep.samples = points.size();
  rep.pass = rep.max_residual <= tol;
  return rep;
}

OperatorReport verify_resolvent_anchor(const NodeSet& nodes, Complex alpha, int samples, double tol,
                                       std::uint64_t seed) {
  OperatorReport rep{"1/(p - a) = sum_u 1/(p'(w_u)(z - w_u))", 0.0, tol, 0, true};
  const LevelSetRoots lr = level_set_roots(nodes, alpha);
  const auto points = sample_disk(nodes, samples, seed, [&](Complex z) { return min_distance(z, lr.roots) > 1e-2; });
  for (Complex z : points) {
    const Complex lhs = 1.0 / (nodes.polynomial()(z) - alpha);
    Complex rhs{};
    for (std::size_t u = 0; u < lr.roots.size(); ++u) rhs += 1.0 / (lr.dp[u] * (z - lr.roots[u]));
    rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  rep.samples = points.size();
  rep.pass = rep.max_residual <= tol;
  return rep;
}

}  // namespace pdecomp

#include "pdecomp/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pdecomp/error.hpp"

namespace pdecomp {

double contour_radius(const NodeSet& nodes, const ContourConfig& cfg) {
  if (!(cfg.radius_cap > 0.0)) throw PreconditionError("contour radius cap must be positive");
  if (cfg.samples < 8) throw PreconditionError("contour quadrature needs at least 8 samples per circle");
  return std::min(0.45 * nodes.min_separation(), cfg.radius_cap);
}

namespace {

Complex circle_point(Complex centre, double radius, int k, int samples) {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
  return centre + std::polar(radius, theta);
}

ComplexVector trapezoid(const std::function<Complex(Complex)>& f, const NodeSet& nodes,
                        const std::vector<Polynomial>& q, Complex lambda, double radius, int samples) {
  const Polynomial& p = nodes.polynomial();
  ComplexVector acc = ComplexVector::Zero(static_cast<Eigen::Index>(q.size()));
  for (const Node& node : nodes.entries()) {
    for (int k = 0; k < samples; ++k) {
      const Complex s = circle_point(node.w, radius, k, samples);
      // ds / (2 pi i) = (s - w) dtheta / (2 pi); the dtheta / 2 pi weight is 1/samples.
      const Complex weight = f(s) * (s - node.w) / (p(s) - lambda);
      for (std::size_t i = 0; i < q.size(); ++i) acc(static_cast<Eigen::Index>(i)) += q[i](s) * weight;
    }
  }
  return acc / static_cast<double>(samples);
}

}  // namespace

double contour_rho(const NodeSet& nodes, const ContourConfig& cfg, int samples) {
  const double radius = contour_radius(nodes, cfg);
  double rho = std::numeric_limits<double>::infinity();
  for (const Node& node : nodes.entries()) {
    for (int k = 0; k < samples; ++k) {
      rho = std::min(rho, std::abs(nodes.polynomial()(circle_point(node.w, radius, k, samples))));
    }
  }
  return rho;
}

ContourResult contour_oracle_F(const std::function<Complex(Complex)>& f, const NodeSet& nodes, Complex lambda,
                               const ContourConfig& cfg) {
  const double radius = contour_radius(nodes, cfg);
  const int fine = 2 * cfg.samples;
  // The fine grid contains the coarse one, so its minimum bounds both.
  const double rho = contour_rho(nodes, cfg, fine);
  if (!(std::abs(lambda) < rho)) {
    std::ostringstream msg;
    msg << "contour oracle: |lambda| = " << std::abs(lambda) << " is not below rho = " << rho;
    throw PreconditionError(msg.str());
  }
  const auto q = divided_difference_Q(nodes.polynomial());
  const ComplexVector coarse = trapezoid(f, nodes, q, lambda, radius, cfg.samples);
  const ComplexVector refined = trapezoid(f, nodes, q, lambda, radius, fine);
  const double change = (refined - coarse).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, refined.cwiseAbs().maxCoeff());
  if (change > cfg.convergence_tol * scale) {
    std::ostringstream msg;
    msg << "contour oracle: quadrature not converged (doubling samples changed F by " << change << ")";
    throw ToleranceError(msg.str());
  }
  return {refined, rho, radius, fine};
}

}  // namespace pdecomp

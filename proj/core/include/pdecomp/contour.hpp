#pragma once

#include <functional>

#include "pdecomp/matrix.hpp"
#include "pdecomp/node_set.hpp"

namespace pdecomp {

/// Circles used by the quadrature: one per node, centred on the node, with
/// radius min(0.45 * min node separation, radius_cap).
struct ContourConfig {
  double radius_cap = 0.5;
  int samples = 512;  // trapezoid points per circle
  /// Doubling the sample count may change no component by more than this
  /// (scaled by max(1, |F|)).
  double convergence_tol = 1e-6;
};

struct ContourResult {
  ComplexVector F;    // length N
  double rho = 0.0;   // min |p(s)| over the quadrature points actually used
  double radius = 0.0;
  int samples = 0;    // per circle, for the reported value
};

double contour_radius(const NodeSet& nodes, const ContourConfig& cfg);

/// min |p(s)| over `samples` equispaced points on every circle.
double contour_rho(const NodeSet& nodes, const ContourConfig& cfg, int samples);

/// Trapezoidal approximation of
///   F(lambda) = (1 / 2 pi i) sum_j  contour_j  Q(s) f(s) / (p(s) - lambda) ds.
/// f must be analytic on and inside every circle. Throws PreconditionError
/// when |lambda| >= rho and ToleranceError when doubling the sample count
/// moves the result by more than cfg.convergence_tol.
ContourResult contour_oracle_F(const std::function<Complex(Complex)>& f, const NodeSet& nodes, Complex lambda,
                               const ContourConfig& cfg = {});

}  // namespace pdecomp

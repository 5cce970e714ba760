#include "pdecomp/decompose.hpp"

#include <algorithm>
#include <sstream>

#include "pdecomp/error.hpp"
#include "pdecomp/nodes.hpp"

namespace pdecomp {

namespace {

// f - h smaller than this (relative to the terms it came from) is treated as
// an exact cancellation: f already equals its Hermite interpolant.
constexpr double kCancellationTol = 1e-11;

std::vector<Complex> to_std(const ComplexVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

BackwardShift::BackwardShift(NodeSet nodes, double tol)
    : nodes_(std::move(nodes)), vinv_(pdecomp::vandermonde_inverse(nodes_)), tol_(tol) {}

// The Hermite interpolant of a polynomial is its remainder modulo p; dividing
// by the monic p avoids evaluating f at the nodes, where high-degree inputs
// cancel catastrophically.
ComplexVector BackwardShift::value_at_origin(const Polynomial& f) const {
  const auto r = poly_divrem(f, nodes_.polynomial()).second;
  ComplexVector out = ComplexVector::Zero(nodes_.degree());
  for (int k = 0; k <= r.degree(); ++k) out(k) = r.coeff(k);
  return out;
}

ComplexVector BackwardShift::value_at_origin(const RationalFunction& f) const {
  return vinv_ * confluent_eval(f, nodes_);
}

Polynomial BackwardShift::shift_numerator(const Polynomial& num, const Polynomial& den,
                                          const ComplexVector& h) const {
  const Polynomial interp(to_std(h));
  const Polynomial interp_den = interp * den;
  const Polynomial numerator = num - interp_den;
  const double scale = std::max(num.norm(), interp_den.norm());
  if (numerator.norm() <= kCancellationTol * scale) return {};
  auto [q, r] = poly_divrem(numerator, nodes_.polynomial());
  if (r.norm() > tol_ * numerator.norm()) {
    std::ostringstream msg;
    msg << "backward shift: division by p is not exact (remainder " << r.norm() << " vs numerator "
        << numerator.norm() << "); pole at a node or loss of accuracy";
    throw ToleranceError(msg.str());
  }
  return q;
}

Polynomial BackwardShift::operator()(const Polynomial& f) const {
  if (f.degree() < nodes_.degree()) return {};
  return poly_divrem(f, nodes_.polynomial()).first;
}

RationalFunction BackwardShift::operator()(const RationalFunction& f) const {
  if (f.den.degree() == 0) {
    const Complex d = f.den.coeff(0);
    return {(*this)(f.num * (1.0 / d)), Polynomial::constant(1.0)};
  }
  return {shift_numerator(f.num, f.den, value_at_origin(f)), f.den};
}

RationalMatrix BackwardShift::operator()(const RationalMatrix& f) const {
  std::vector<Polynomial> out;
  out.reserve(f.numerators().size());
  for (std::size_t a = 0; a < f.rows(); ++a) {
    for (std::size_t b = 0; b < f.cols(); ++b) {
      const RationalFunction e = f.entry(a, b);
      if (f.is_polynomial()) {
        // Keep the original constant denominator.
        out.push_back((*this)(e.num * (1.0 / f.den().coeff(0))) * f.den().coeff(0));
      } else {
        out.push_back(shift_numerator(e.num, e.den, value_at_origin(e)));
      }
    }
  }
  return {f.rows(), f.cols(), std::move(out), f.den()};
}

Polynomial shift_R0p(const Polynomial& f, const NodeSet& nodes) { return BackwardShift(nodes)(f); }

RationalFunction shift_R0p(const RationalFunction& f, const NodeSet& nodes) { return BackwardShift(nodes)(f); }

RationalMatrix shift_R0p(const RationalMatrix& f, const NodeSet& nodes) { return BackwardShift(nodes)(f); }

ComplexMatrix Decomposition::F(Complex lambda) const {
  const auto n = static_cast<Eigen::Index>(nodes.degree());
  const auto r = static_cast<Eigen::Index>(rows);
  const auto s = static_cast<Eigen::Index>(cols);
  if (kind == DecompositionKind::rational) {
    if (!F_real) throw PreconditionError("rational decomposition without a realization");
    return F_real->transfer(lambda);
  }
  ComplexMatrix out(n * r, s);
  for (Eigen::Index i = 0; i < n * r; ++i) {
    for (Eigen::Index b = 0; b < s; ++b) out(i, b) = F_poly[static_cast<std::size_t>(i * s + b)](lambda);
  }
  return out;
}

int Decomposition::max_component_degree() const {
  int d = Polynomial::kZeroDegree;
  for (const Polynomial& p : F_poly) d = std::max(d, p.degree());
  return d;
}

namespace {

std::vector<Polynomial> decompose_components(const Polynomial& f, const BackwardShift& shift) {
  const int n = shift.nodes().degree();
  std::vector<std::vector<Complex>> taylor(static_cast<std::size_t>(n));
  const int cap = std::max(f.degree(), 0) / n + 2;
  Polynomial g = f;
  for (int k = 0; !g.is_zero(); ++k) {
    if (k >= cap) throw ToleranceError("decompose_poly: backward-shift iteration failed to terminate");
    const ComplexVector fk = shift.value_at_origin(g);
    for (int j = 0; j < n; ++j) taylor[static_cast<std::size_t>(j)].push_back(fk(j));
    g = shift(g);
  }
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(n));
  for (auto& t : taylor) out.emplace_back(std::move(t));
  return out;
}

}  // namespace

Decomposition decompose_poly(const Polynomial& f, const NodeSet& nodes) {
  const BackwardShift shift(nodes);
  Decomposition d{nodes};
  d.kind = DecompositionKind::polynomial;
  d.F_poly = decompose_components(f, shift);
  d.conditioning_warning = nodes.ill_conditioned();
  return d;
}

Decomposition decompose_poly(const RationalMatrix& f, const NodeSet& nodes) {
  if (!f.is_polynomial()) throw PreconditionError("decompose_poly: input has a non-constant denominator");
  const BackwardShift shift(nodes);
  const std::size_t n = static_cast<std::size_t>(nodes.degree());
  const std::size_t r = f.rows();
  const std::size_t s = f.cols();
  const Complex inv_den = 1.0 / f.den().coeff(0);
  Decomposition d{nodes};
  d.kind = DecompositionKind::polynomial;
  d.rows = r;
  d.cols = s;
  d.F_poly.assign(n * r * s, Polynomial{});
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < s; ++b) {
      const auto comps = decompose_components(f.num(a, b) * inv_den, shift);
      for (std::size_t j = 0; j < n; ++j) d.F_poly[(j * r + a) * s + b] = comps[j];
    }
  }
  d.conditioning_warning = nodes.ill_conditioned();
  return d;
}

Decomposition decompose_rational(const RationalMatrix& f, const NodeSet& nodes, const RealizeOptions& opts) {
  Decomposition d{nodes};
  d.kind = DecompositionKind::rational;
  d.rows = f.rows();
  d.cols = f.cols();
  d.F_real = realize(f, nodes, opts);
  d.conditioning_warning = d.F_real->conditioning_warning;
  return d;
}

ComplexMatrix reconstruct(const Decomposition& d, Complex z) {
  const ComplexMatrix F = d.F(poly_eval(d.nodes.polynomial(), z));
  const auto r = static_cast<Eigen::Index>(d.rows);
  const auto s = static_cast<Eigen::Index>(d.cols);
  ComplexMatrix out = ComplexMatrix::Zero(r, s);
  Complex zj{1.0};
  for (int j = 0; j < d.nodes.degree(); ++j) {
    out += zj * F.middleRows(j * r, r);
    zj *= z;
  }
  return out;
}

Complex reconstruct_scalar(const Decomposition& d, Complex z) {
  if (d.rows != 1 || d.cols != 1) throw PreconditionError("reconstruct_scalar: decomposition is matrix-valued");
  return reconstruct(d, z)(0, 0);
}

std::vector<Polynomial> backward_shift_R0(const std::vector<Polynomial>& F) {
  std::vector<Polynomial> out;
  out.reserve(F.size());
  for (const Polynomial& c : F) {
    if (c.degree() < 1) {
      out.emplace_back();
      continue;
    }
    out.emplace_back(std::vector<Complex>(c.coeffs().begin() + 1, c.coeffs().end()));
  }
  return out;
}

Polynomial synthesize(const std::vector<Polynomial>& F, const NodeSet& nodes) {
  Polynomial acc;
  for (std::size_t j = 0; j < F.size(); ++j) {
    acc += Polynomial::monomial(static_cast<int>(j)) * poly_compose(F[j], nodes.polynomial());
  }
  return acc;
}

}  // namespace pdecomp

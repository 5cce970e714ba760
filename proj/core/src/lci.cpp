#include "pdecomp/lci.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pdecomp/decompose.hpp"
#include "pdecomp/error.hpp"

namespace pdecomp {

void LCIProblem::validate() const {
  if (a.size() != nodes.degree()) throw PreconditionError("LCI problem: coefficient row length must equal N");
  if (a.cwiseAbs().maxCoeff() == 0.0) throw PreconditionError("LCI problem: coefficient row is identically zero");
}

LCISolution lci_prepare(const LCIProblem& prob) {
  prob.validate();
  const Eigen::Index n = prob.nodes.degree();
  LCISolution sol{prob.nodes};
  sol.vV = prob.a.transpose() * vandermonde(prob.nodes);
  // vV (vV)^* = |vV|^2, accumulated with scaling to avoid underflow.
  const double scale = max_abs(sol.vV);
  const double gram = (sol.vV / scale).squaredNorm();
  if (!(gram > 0.0) || !std::isfinite(gram)) throw PreconditionError("LCI problem: vV V^* v^* vanishes");
  const ComplexVector u = sol.vV.adjoint() / scale;  // (vV)^* / scale
  sol.F0 = u * (prob.c / (gram * scale));
  sol.projector = (u * (sol.vV / scale)) / gram;
  sol.particular = Polynomial(std::vector<Complex>(sol.F0.data(), sol.F0.data() + n));
  return sol;
}

Polynomial lci_particular(const LCIProblem& prob) { return lci_prepare(prob).particular; }

namespace {

// Components of F0 + ((I - Pi) + lambda Pi) G(lambda).
std::vector<Polynomial> family_components(const LCISolution& sol, const std::vector<Polynomial>& G,
                                          const Polynomial& constant_scale) {
  const Eigen::Index n = sol.F0.size();
  if (static_cast<Eigen::Index>(G.size()) != n) throw PreconditionError("LCI parameter G must have N components");
  const Polynomial lambda = Polynomial::monomial(1);
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    Polynomial acc = constant_scale * sol.F0(j);
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex pi = sol.projector(j, k);
      const Complex comp = (j == k ? Complex{1.0} : Complex{}) - pi;
      const Polynomial& g = G[static_cast<std::size_t>(k)];
      acc += g * comp + lambda * g * pi;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace

Polynomial lci_solve(const LCIProblem& prob, const std::vector<Polynomial>& G) {
  const LCISolution sol = lci_prepare(prob);
  return synthesize(family_components(sol, G, Polynomial::constant(1.0)), prob.nodes);
}

RationalFunction lci_solve(const LCIProblem& prob, const std::vector<Polynomial>& G_num, const Polynomial& G_den) {
  if (G_den.is_zero() || std::abs(G_den.coeff(0)) <= kPoleTolerance * G_den.norm()) {
    throw PreconditionError("LCI parameter G must be analytic at the origin (G_den(0) != 0)");
  }
  const LCISolution sol = lci_prepare(prob);
  // F0 + M(lambda) G_num / G_den = (F0 G_den + M G_num) / G_den.
  const Polynomial num = synthesize(family_components(sol, G_num, G_den), prob.nodes);
  return {num, poly_compose(G_den, prob.nodes.polynomial())};
}

std::vector<Polynomial> lci_parameter_for(const LCIProblem& prob, const Polynomial& f, double tol) {
  const LCISolution sol = lci_prepare(prob);
  const double residual = verify_lci(f, prob);
  if (residual > tol * std::max(1.0, std::abs(prob.c))) {
    std::ostringstream msg;
    msg << "lci_parameter_for: f violates the constraint (residual " << residual << ")";
    throw PreconditionError(msg.str());
  }
  // F - F0 = ((I - Pi) + lambda Pi) G  =>  G = (I - Pi) H + Pi H / lambda, and
  // Pi H(0) = 0 makes the division exact.
  const Decomposition d = decompose_poly(f, prob.nodes);
  const Eigen::Index n = sol.F0.size();
  std::vector<Polynomial> H;
  for (Eigen::Index j = 0; j < n; ++j) H.push_back(d.component(static_cast<std::size_t>(j)) - Polynomial::constant(sol.F0(j)));
  std::vector<Polynomial> G;
  for (Eigen::Index j = 0; j < n; ++j) {
    Polynomial comp;
    Polynomial proj;
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex pi = sol.projector(j, k);
      comp += H[static_cast<std::size_t>(k)] * ((j == k ? Complex{1.0} : Complex{}) - pi);
      proj += H[static_cast<std::size_t>(k)] * pi;
    }
    const auto& c = proj.coeffs();
    Polynomial shifted = c.size() > 1 ? Polynomial(std::vector<Complex>(c.begin() + 1, c.end())) : Polynomial{};
    G.push_back(comp + shifted);
  }
  return G;
}

double verify_lci(const Polynomial& f, const LCIProblem& prob) {
  prob.validate();
  return std::abs(prob.a.cwiseProduct(confluent_eval(f, prob.nodes)).sum() - prob.c);
}

double verify_lci(const RationalFunction& f, const LCIProblem& prob) {
  prob.validate();
  return std::abs(prob.a.cwiseProduct(confluent_eval(f, prob.nodes)).sum() - prob.c);
}

double verify_lci(const JetFunction& f, const LCIProblem& prob) {
  prob.validate();
  return std::abs(prob.a.cwiseProduct(confluent_eval(f, prob.nodes)).sum() - prob.c);
}

}  // namespace pdecomp

#include "pdecomp/realization.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "pdecomp/decompose.hpp"
#include "pdecomp/error.hpp"
#include "pdecomp/nodes.hpp"

namespace pdecomp {

namespace {

// A vector-valued rational function (num_1, ..., num_r) / den, the working
// element of the Krylov space.
using Element = std::vector<Polynomial>;

constexpr double kSeedFloor = 1e-14;   // relative to the largest seed
constexpr double kImageFloor = 1e-12;  // images of unit-norm elements
constexpr double kMembershipTol = 1e-7;

class KrylovSpace {
 public:
  KrylovSpace(std::size_t rows, int max_degree) : rows_(rows), width_(max_degree + 1) {}

  Eigen::Index dim() const { return static_cast<Eigen::Index>(rows_) * width_; }

  ComplexVector flatten(const Element& e) const {
    ComplexVector v = ComplexVector::Zero(dim());
    for (std::size_t a = 0; a < rows_; ++a) {
      const Polynomial& p = e[a];
      if (p.degree() >= width_) throw ToleranceError("realize: numerator degree exceeds the invariant bound");
      for (int k = 0; k <= p.degree(); ++k) v(static_cast<Eigen::Index>(a) * width_ + k) = p.coeff(k);
    }
    return v;
  }

  Element unflatten(const ComplexVector& v) const {
    Element e;
    e.reserve(rows_);
    for (std::size_t a = 0; a < rows_; ++a) {
      e.emplace_back(std::vector<Complex>(v.data() + static_cast<Eigen::Index>(a) * width_,
                                          v.data() + static_cast<Eigen::Index>(a + 1) * width_));
    }
    return e;
  }

 private:
  std::size_t rows_;
  int width_;
};

// Points in discs about the nodes, where f = Z F(p) is meant to hold and the
// {z^j p^k} basis is well conditioned.
std::vector<Complex> sample_points(const NodeSet& nodes, int count, std::uint64_t seed,
                                   const std::function<bool(Complex)>& admissible) {
  const double radius = std::min(0.45 * nodes.min_separation(), 0.5);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Complex> out;
  for (int attempt = 0; static_cast<int>(out.size()) < count && attempt < 50 * count + 50; ++attempt) {
    const Complex u(unit(rng), unit(rng));
    if (std::abs(u) > 1.0) continue;
    const Complex z = nodes[static_cast<std::size_t>(rng() % nodes.size())].w + radius * u;
    if (admissible(z)) out.push_back(z);
  }
  return out;
}

double scaled_error(const ComplexMatrix& got, const ComplexMatrix& want) {
  return max_abs(got - want) / std::max(1.0, max_abs(want));
}

}  // namespace

ComplexMatrix Realization::transfer(Complex lambda) const {
  const auto n = static_cast<Eigen::Index>(nodes.degree());
  const auto r = static_cast<Eigen::Index>(rows);
  const auto s = static_cast<Eigen::Index>(cols);
  if (state_dim() == 0) return ComplexMatrix::Zero(n * r, s);
  const ComplexMatrix resolvent = ComplexMatrix::Identity(state_dim(), state_dim()) - lambda * A;
  return C * matrix_solve(resolvent, B);
}

ComplexMatrix eval_realization(const Realization& real, Complex z) {
  const ComplexMatrix F = real.transfer(poly_eval(real.nodes.polynomial(), z));
  const auto r = static_cast<Eigen::Index>(real.rows);
  ComplexMatrix out = ComplexMatrix::Zero(r, static_cast<Eigen::Index>(real.cols));
  Complex zj{1.0};
  for (int j = 0; j < real.nodes.degree(); ++j) {
    out += zj * F.middleRows(j * r, r);
    zj *= z;
  }
  return out;
}

Realization realize(const RationalMatrix& f_in, const NodeSet& nodes, const RealizeOptions& opts) {
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (f_in.is_pole(nodes[j].w)) {
      std::ostringstream msg;
      msg << "realize: pole at node " << j << " (w = " << nodes[j].w << ")";
      throw PoleAtNodeError(msg.str());
    }
  }
  // A constant denominator is folded into the numerators.
  RationalMatrix f = f_in;
  if (f_in.is_polynomial() && f_in.den().coeff(0) != Complex{1.0}) {
    std::vector<Polynomial> nums;
    for (const Polynomial& p : f_in.numerators()) nums.push_back(p * (1.0 / f_in.den().coeff(0)));
    f = RationalMatrix(f_in.rows(), f_in.cols(), std::move(nums));
  }
  const std::size_t r = f.rows();
  const std::size_t s = f.cols();
  const Polynomial& den = f.den();
  const BackwardShift shift(nodes);

  const int num_deg = std::max(f.numerator_degree(), 0);
  const int den_deg = den.degree();
  const KrylovSpace space(r, std::max({num_deg, den_deg - 1, 0}));
  const int cap = opts.max_iterations > 0 ? opts.max_iterations : 4 * (num_deg + den_deg) + 8;

  auto apply_shift = [&](const Element& e) {
    Element out;
    out.reserve(r);
    for (const Polynomial& p : e) out.push_back(shift(RationalFunction{p, den}).num);
    return out;
  };

  std::vector<Element> seeds;
  for (std::size_t b = 0; b < s; ++b) {
    Element col;
    for (std::size_t a = 0; a < r; ++a) col.push_back(f.num(a, b));
    seeds.push_back(std::move(col));
  }
  double seed_scale = 0.0;
  for (const Element& e : seeds) seed_scale = std::max(seed_scale, space.flatten(e).norm());

  std::deque<std::pair<Element, bool>> queue;  // (element, is_seed)
  if (opts.reverse_seed_order) {
    for (auto it = seeds.rbegin(); it != seeds.rend(); ++it) queue.emplace_back(*it, true);
  } else {
    for (const Element& e : seeds) queue.emplace_back(e, true);
  }

  IncrementalBasis basis(space.dim());
  std::vector<Element> elements;
  int iterations = 0;
  while (!queue.empty()) {
    auto [cand, is_seed] = std::move(queue.front());
    queue.pop_front();
    const ComplexVector v = space.flatten(cand);
    const double nv = v.norm();
    if (nv <= (is_seed ? kSeedFloor * seed_scale : kImageFloor)) continue;
    if (!basis.try_add(v / nv, opts.rank_tol)) continue;
    if (++iterations > cap) {
      std::ostringstream msg;
      msg << "realize: Krylov closure did not terminate within " << cap << " iterations";
      throw ToleranceError(msg.str());
    }
    // Arnoldi: continue from the new orthonormal direction, not the raw candidate.
    Element unit = space.unflatten(basis.q(basis.size() - 1));
    queue.emplace_back(apply_shift(unit), false);
    elements.push_back(std::move(unit));
  }

  const auto m = static_cast<Eigen::Index>(elements.size());
  const auto n = static_cast<Eigen::Index>(nodes.degree());
  Realization out{nodes};
  out.rows = r;
  out.cols = s;
  out.A = ComplexMatrix::Zero(m, m);
  out.B = ComplexMatrix::Zero(m, static_cast<Eigen::Index>(s));
  out.C = ComplexMatrix::Zero(n * static_cast<Eigen::Index>(r), m);
  out.conditioning_warning = nodes.ill_conditioned();

  auto coords_of = [&](const Element& e, const char* what) {
    const ComplexVector v = space.flatten(e);
    auto c = basis.orthonormal_coordinates(v);
    if (c.residual > kMembershipTol * std::max(v.norm(), 1e-300)) {
      std::ostringstream msg;
      msg << "realize: " << what << " is not in the computed invariant space (residual " << c.residual << ")";
      throw ToleranceError(msg.str());
    }
    return c.coords;
  };

  for (Eigen::Index i = 0; i < m; ++i) {
    const Element& e = elements[static_cast<std::size_t>(i)];
    const Element image = apply_shift(e);
    out.A.col(i) = coords_of(image, "shift image");
    for (std::size_t a = 0; a < r; ++a) {
      const ComplexVector c = shift.vandermonde_inverse() * confluent_eval(RationalFunction{e[a], den}, nodes);
      for (Eigen::Index j = 0; j < n; ++j) out.C(j * static_cast<Eigen::Index>(r) + static_cast<Eigen::Index>(a), i) = c(j);
    }
  }
  for (std::size_t b = 0; b < s; ++b) {
    out.B.col(static_cast<Eigen::Index>(b)) = m == 0 ? ComplexVector() : coords_of(seeds[b], "input column");
  }

  const double den_norm = den.norm();
  const auto points = sample_points(nodes, opts.verify_points, opts.seed,
                                    [&](Complex z) { return std::abs(den(z)) > 1e-4 * den_norm; });
  double worst = 0.0;
  for (Complex z : points) worst = std::max(worst, scaled_error(eval_realization(out, z), f(z)));
  out.construction_residual = worst;
  if (worst > opts.verify_tol) {
    std::ostringstream msg;
    msg << "realize: realization reproduces f only to " << worst << " (tolerance " << opts.verify_tol << ")";
    throw ToleranceError(msg.str());
  }
  return out;
}

bool is_nilpotent(const Realization& real, double tol) {
  const Eigen::Index m = real.state_dim();
  if (m == 0) return true;
  ComplexMatrix power = real.A;
  for (Eigen::Index k = 1; k < m; ++k) power = power * real.A;
  const double a = real.A.norm();
  return power.norm() <= tol * std::max(1.0, std::pow(a, static_cast<double>(m)));
}

bool transfer_equiv(const Realization& r1, const Realization& r2, int trials, double tol, std::uint64_t seed) {
  if (r1.rows != r2.rows || r1.cols != r2.cols) return false;
  const auto& e1 = r1.nodes.entries();
  const auto& e2 = r2.nodes.entries();
  const bool same_nodes = e1.size() == e2.size() && std::equal(e1.begin(), e1.end(), e2.begin(), [](const Node& a, const Node& b) {
                            return a.w == b.w && a.mu == b.mu;
                          });
  if (!same_nodes) throw PreconditionError("transfer_equiv: realizations use different node sets");

  const auto points = sample_points(r1.nodes, 50 * trials, seed, [](Complex) { return true; });
  int compared = 0;
  for (Complex z : points) {
    if (compared >= trials) break;
    ComplexMatrix v1;
    ComplexMatrix v2;
    try {
      v1 = eval_realization(r1, z);
      v2 = eval_realization(r2, z);
    } catch (const SingularMatrixError&) {
      continue;
    }
    ++compared;
    const double scale = std::max({1.0, max_abs(v1), max_abs(v2)});
    if (max_abs(v1 - v2) > tol * scale) return false;
  }
  return compared > 0;
}

}  // namespace pdecomp

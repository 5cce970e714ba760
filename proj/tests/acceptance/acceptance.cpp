// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path-to-pdecomp-cli> <fixtures-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pdecomp/contour.hpp"
#include "pdecomp/decompose.hpp"
#include "pdecomp/error.hpp"
#include "pdecomp/kernels.hpp"
#include "pdecomp/lci.hpp"
#include "pdecomp/nodes.hpp"
#include "pdecomp/operators.hpp"
#include "pdecomp/random.hpp"
#include "pdecomp/realization.hpp"

using namespace pdecomp;

namespace {

// Tolerances and runtime limits, fixed.
constexpr double kRoundTripTol = 1e-8;
constexpr double kOracleTol = 1e-6;
constexpr double kRealizeTol = 1e-7;
constexpr double kNilpotentTol = 1e-8;
constexpr double kCuntzTol = 1e-10;
constexpr double kResolventTol = 1e-7;
constexpr double kAnchorTol = 1e-9;
constexpr double kLciTol = 1e-8;
constexpr double kCompletenessTol = 1e-7;
constexpr double kKernelTol = 1e-9;
constexpr double kPsdTol = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs <= limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %d (%s): %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs, limit_s, in_time ? "" : " over time");
  std::fflush(stdout);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string measured(const std::string& what, double value, double tol) {
  return what + " " + sci(value) + " (tol " + sci(tol) + ")";
}

Complex direct(const RationalFunction& f, Complex z) {
  return oracle::horner(f.num.coeffs(), z) / oracle::horner(f.den.coeffs(), z);
}

Complex near_node(Rng& rng, const NodeSet& nodes, double radius) {
  return nodes[rng() % nodes.size()].w + random_in_disk(rng, radius);
}

double frobenius_power(const ComplexMatrix& a) {
  if (a.rows() == 0) return 0.0;
  ComplexMatrix p = ComplexMatrix::Identity(a.rows(), a.cols());
  for (Eigen::Index k = 0; k < a.rows(); ++k) p = p * a;
  return p.norm();
}

Outcome roundtrip() {
  Rng rng(1001);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const NodeSet nodes = random_nodes(rng, {3, 3, 6, 1.5, 0.5});
    const Polynomial f = random_polynomial(rng, static_cast<int>(rng() % 21));
    const Decomposition d = decompose_poly(f, nodes);
    for (int s = 0; s < 20; ++s) {
      const Complex z = near_node(rng, nodes, 0.25);
      const Complex want = oracle::horner(f.coeffs(), z);
      worst = std::max(worst, std::abs(reconstruct_scalar(d, z) - want) / std::max(1.0, std::abs(want)));
    }
  }
  return {worst <= kRoundTripTol, measured("max relative error", worst, kRoundTripTol) + " over 200 x 20 points"};
}

Outcome oracle_agreement() {
  Rng rng(1002);
  ContourConfig cfg;
  cfg.radius_cap = 0.3;
  double worst = 0.0;
  int samples = 0;
  for (int t = 0; t < 30; ++t) {
    const NodeSet nodes = random_nodes(rng);
    const RationalFunction f = random_rational(rng, 4, 1 + static_cast<int>(rng() % 3), nodes);
    const Decomposition d = decompose_rational(f, nodes);
    const double rho = contour_rho(nodes, cfg, 2 * cfg.samples);
    const auto fz = [&](Complex z) { return direct(f, z); };
    for (int s = 0; s < 3; ++s) {
      const Complex lambda = random_in_disk(rng, rho / 2);
      const ContourResult c = contour_oracle_F(fz, nodes, lambda, cfg);
      const ComplexMatrix fl = d.F(lambda);
      for (int j = 0; j < nodes.degree(); ++j) {
        worst = std::max(worst, std::abs(fl(j, 0) - c.F(j)) / std::max(1.0, std::abs(c.F(j))));
      }
      ++samples;
    }
  }
  return {worst <= kOracleTol,
          measured("max relative deviation", worst, kOracleTol) + " over " + std::to_string(samples) + " lambdas"};
}

Outcome realization() {
  Rng rng(1003);
  double worst = 0.0;
  double poly_worst = 0.0;                 // largest |A^m| over polynomial inputs
  double rational_least = 1e300;           // smallest |A^m| over rational inputs
  int poly_bad = 0;
  int rational_bad = 0;
  int n_poly = 0;
  int n_rational = 0;
  for (int t = 0; t < 100; ++t) {
    const NodeSet nodes = random_nodes(rng, {3, 3, 5, 1.5, 0.5});
    const std::size_t rows = 1 + rng() % 2;
    const std::size_t cols = 1 + rng() % 2;
    const bool polynomial = t % 2 == 0;
    std::vector<Polynomial> num;
    for (std::size_t k = 0; k < rows * cols; ++k) num.push_back(random_polynomial(rng, static_cast<int>(rng() % 7)));
    const Polynomial den = polynomial ? Polynomial::constant(1.0)
                                      : random_denominator(rng, 1 + static_cast<int>(rng() % 6), nodes, 0.5, 3.0);
    const RationalMatrix f(rows, cols, num, den);
    const Realization r = realize(f, nodes);
    int done = 0;
    while (done < 30) {
      const Complex z = random_in_disk(rng, 2.5);
      if (std::abs(den(z)) < 1e-3 * den.norm()) continue;
      ++done;
      const ComplexMatrix got = eval_realization(r, z);
      const Complex d = oracle::horner(den.coeffs(), z);
      ComplexMatrix want(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < cols; ++k) {
          want(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
              oracle::horner(f.num(i, k).coeffs(), z) / d;
        }
      }
      worst = std::max(worst, max_abs(got - want) / std::max(1.0, max_abs(want)));
    }
    const double am = frobenius_power(r.A);
    if (polynomial) {
      ++n_poly;
      poly_worst = std::max(poly_worst, am);
      if (am > kNilpotentTol) ++poly_bad;
    } else {
      ++n_rational;
      rational_least = std::min(rational_least, am);
      if (am <= kNilpotentTol) ++rational_bad;
    }
  }
  const bool pass = worst <= kRealizeTol && poly_bad == 0 && rational_bad == 0;
  return {pass, measured("max relative error", worst, kRealizeTol) + "; |A^m| polynomial max " + sci(poly_worst) +
                    " (" + std::to_string(poly_bad) + "/" + std::to_string(n_poly) + " above " + sci(kNilpotentTol) +
                    "), rational min " + sci(rational_least) + " (" + std::to_string(rational_bad) + "/" +
                    std::to_string(n_rational) + " at or below)"};
}

Outcome cuntz() {
  Rng rng(1004);
  double worst = 0.0;
  for (int t = 0; t < 60; ++t) {
    const NodeSet nodes = random_nodes(rng, {3, 3, 5, 1.0, 0.5});
    worst = std::max(worst, verify_cuntz(nodes, 12, kCuntzTol).max_residual);
  }
  // p(z) = z^N: F_j(lambda) = sum_m f_{j-1+mN} lambda^m, with exact-zero residuals
  double fixture = 0.0;
  bool exact = true;
  for (int n = 1; n <= 5; ++n) {
    const NodeSet zn({{0.0, n}});
    fixture = std::max(fixture, verify_cuntz(zn, 12, kCuntzTol).max_residual);
    const Polynomial f = random_polynomial(rng, 12);
    const Decomposition d = decompose_poly(f, zn);
    for (int j = 0; j < n; ++j) {
      for (int m = 0; j + m * n <= 12; ++m) exact = exact && d.component(static_cast<std::size_t>(j)).coeff(m) == f.coeff(j + m * n);
    }
  }
  const bool pass = worst <= kCuntzTol && fixture == 0.0 && exact;
  return {pass, measured("max residual (60 node sets, |w| <= 1, N <= 5, degree 12)", worst, kCuntzTol) +
                    "; z^N fixture residual " + sci(fixture) + ", decimation " + (exact ? "exact" : "inexact")};
}

Outcome resolvent() {
  Rng rng(1005);
  double worst = 0.0;
  double anchor = 0.0;
  int done = 0;
  int skipped = 0;
  while (done < 50) {
    const NodeSet nodes = random_nodes(rng, {3, 1, 4, 1.0, 0.5});
    const RationalFunction f = random_rational(rng, 4, 2, nodes, 0.5);
    const Complex alpha = random_in_disk(rng, 0.5);
    const Complex beta = random_in_disk(rng, 0.5);
    try {
      worst = std::max(worst, verify_resolvent_identity(f, alpha, beta, nodes, 20, kResolventTol).max_residual);
      anchor = std::max(anchor, verify_resolvent_anchor(nodes, alpha, 20, kAnchorTol).max_residual);
      ++done;
    } catch (const PreconditionError&) {
      ++skipped;  // inadmissible draw
    }
  }
  return {worst <= kResolventTol && anchor <= kAnchorTol,
          measured("identity", worst, kResolventTol) + ", " + measured("anchor", anchor, kAnchorTol) +
              " over 50 triples (" + std::to_string(skipped) + " inadmissible draws skipped)"};
}

LCIProblem random_problem(Rng& rng) {
  LCIProblem prob{random_nodes(rng, {3, 3, 4, 1.0, 0.5}), {}, random_in_disk(rng, 2.0)};
  prob.a = ComplexVector(prob.nodes.degree());
  for (Eigen::Index k = 0; k < prob.a.size(); ++k) prob.a(k) = random_in_disk(rng);
  return prob;
}

Outcome lci() {
  Rng rng(1006);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const LCIProblem prob = random_problem(rng);
    for (int g = 0; g < 20; ++g) {
      std::vector<Polynomial> G;
      for (int j = 0; j < prob.nodes.degree(); ++j) G.push_back(random_polynomial(rng, static_cast<int>(rng() % 5)));
      worst = std::max(worst, verify_lci(lci_solve(prob, G), prob));
    }
  }
  double recover = 0.0;
  for (int t = 0; t < 50; ++t) {
    const LCIProblem prob = random_problem(rng);
    LCIProblem unit = prob;
    unit.c = 1.0;
    const Polynomial h = lci_particular(unit);
    const Polynomial g = random_polynomial(rng, static_cast<int>(rng() % (4 * prob.nodes.degree())));
    const Complex defect = prob.c - prob.a.cwiseProduct(confluent_eval(g, prob.nodes)).sum();
    const Polynomial f0 = g + h * defect;
    const Polynomial f = lci_solve(prob, lci_parameter_for(prob, f0));
    for (int s = 0; s < 20; ++s) {
      const Complex z = near_node(rng, prob.nodes, 0.25);
      const Complex want = oracle::horner(f0.coeffs(), z);
      recover = std::max(recover, std::abs(f(z) - want) / std::max(1.0, std::abs(want)));
    }
  }
  return {worst <= kLciTol && recover <= kCompletenessTol,
          measured("constraint residual (100 x 20)", worst, kLciTol) + ", " +
              measured("completeness (50)", recover, kCompletenessTol)};
}

Outcome kernels() {
  Rng rng(1007);
  double worst = 0.0;
  double negative = 0.0;
  for (int t = 0; t < 50; ++t) {
    const NodeSet nodes = random_nodes(rng, {3, 2, 4, 1.0, 0.5});
    FiniteRankKernel K;
    const int m = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < m; ++k) K.C.push_back(random_polynomial(rng, static_cast<int>(rng() % 7)));
    const KernelFactor F = factor_kernel(K, nodes);
    Complex centre{};
    for (const Node& n : nodes.entries()) centre += n.w;
    centre /= static_cast<double>(nodes.size());
    std::vector<Complex> grid;
    for (int k = 0; k < 20; ++k) grid.push_back(centre + random_in_disk(rng, 1.5));
    worst = std::max(worst, verify_kernel_identity(K, F, grid, kKernelTol).max_residual);
    const PsdReport psd = psd_check(F, grid, kPsdTol);
    negative = std::max(negative, -psd.min_eigenvalue / std::max(psd.max_eigenvalue, 1e-300));
  }
  return {worst <= kKernelTol && negative <= kPsdTol,
          measured("identity (50 kernels, 20 x 20 grids)", worst, kKernelTol) + ", " +
              measured("-lambda_min/lambda_max", negative, kPsdTol)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::pair<int, std::string> run(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) throw Error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism(const std::string& cli, const std::string& fixtures) {
  if (cli.empty() || fixtures.empty()) return {false, "CLI path or fixtures directory not given"};
  const auto fx = [&](const char* name) { return fixtures + "/" + name; };
  const std::vector<std::string> cmds = {
      "decompose --f " + fx("matrix_2x1.json") + " --nodes " + fx("mixed.json") + " --seed 4",
      "realize --f " + fx("one_over_z_minus_2.json") + " --nodes " + fx("mixed.json") + " --seed 4",
      "lci-solve --problem " + fx("lci_pm1.json") + " --g " + fx("g_rational.json"),
      "verify cuntz --nodes " + fx("mixed.json") + " --maxdeg 8",
      "verify resolvent --nodes " + fx("pm1.json") + " --f " + fx("one_over_z_minus_2.json") +
          " --alpha 0.3,0.1 --beta -0.2 --seed 4",
      "verify kernel --kernel " + fx("kernel_rank3.json") + " --nodes " + fx("mixed.json"),
      "verify roundtrip --seed 4 --cases 10",
  };
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "pdecomp_acceptance";
  std::filesystem::create_directories(dir);
  int identical = 0;
  for (std::size_t k = 0; k < cmds.size(); ++k) {
    const auto a = dir / ("a" + std::to_string(k));
    const auto b = dir / ("b" + std::to_string(k));
    const auto r1 = run(cli + " " + cmds[k] + " --out " + a.string());
    const auto r2 = run(cli + " " + cmds[k] + " --out " + b.string());
    const std::string fa = slurp(a);
    if (r1 == r2 && !fa.empty() && fa == slurp(b)) ++identical;
  }
  return {identical == static_cast<int>(cmds.size()),
          std::to_string(identical) + "/" + std::to_string(cmds.size()) + " commands byte-identical on rerun"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string fixtures = argc > 2 ? argv[2] : "";
  criterion(1, "decomposition round trip", 10, roundtrip);
  criterion(2, "contour oracle agreement", 30, oracle_agreement);
  criterion(3, "realization fidelity and nilpotency", 20, realization);
  criterion(4, "Cuntz relations", 60, cuntz);
  criterion(5, "resolvent identity", 60, resolvent);
  criterion(6, "LCI correctness", 60, lci);
  criterion(7, "kernel factorization", 60, kernels);
  criterion(8, "CLI determinism", 60, [&] { return determinism(cli, fixtures); });
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

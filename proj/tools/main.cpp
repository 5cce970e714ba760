#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pdecomp/decompose.hpp"
#include "pdecomp/error.hpp"
#include "pdecomp/io.hpp"
#include "pdecomp/kernels.hpp"
#include "pdecomp/lci.hpp"
#include "pdecomp/operators.hpp"
#include "pdecomp/realization.hpp"
#include "pdecomp/selfcheck.hpp"

using namespace pdecomp;
using io::json;

namespace {

enum Exit : int { kOk = 0, kOther = 1, kParse = 2, kPrecondition = 3, kTolerance = 4 };

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(hex[md[k] >> 4]);
    out.push_back(hex[md[k] & 0xf]);
  }
  return out;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Everything that determines a report. Paths are left out so that copies of
// the same inputs give the same bytes.
struct RunManifest {
  explicit RunManifest(std::string cmd) : command(std::move(cmd)) {}

  std::string command;
  std::map<std::string, std::string> digests;
  std::map<std::string, double> tolerances;
  std::optional<std::uint64_t> seed;
  std::map<std::string, json> params;

  json load(const std::string& role, const std::string& path) {
    const std::string bytes = io::read_file(path);
    digests[role] = sha256_hex(bytes);
    try {
      return json::parse(bytes);
    } catch (const json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
  }

  json to_json() const {
    json j{{"command", command}, {"inputs", digests}, {"tolerances", tolerances}};
    if (seed) j["seed"] = *seed;
    for (const auto& [k, v] : params) j["params"][k] = v;
    return j;
  }
};

class Report {
 public:
  explicit Report(RunManifest m) : manifest_(std::move(m)) {}

  void line(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void check(const std::string& name, double residual, double tol, bool pass) {
    line(name, sci(residual) + " (tol " + sci(tol) + ") " + (pass ? "PASS" : "FAIL"));
    checks_.push_back({{"name", name}, {"max_residual", residual}, {"tolerance", tol}, {"pass", pass}});
    pass_ = pass_ && pass;
  }
  void result(json r) { result_ = std::move(r); }
  bool pass() const { return pass_; }

  int emit(const std::string& out_path) const {
    std::ostringstream text;
    text << "pdecomp " << manifest_.command << "\n";
    for (const auto& [role, digest] : manifest_.digests) text << "  input " << role << " sha256:" << digest << "\n";
    if (manifest_.seed) text << "  seed " << *manifest_.seed << "\n";
    for (const auto& [k, v] : lines_) text << "  " << k << ": " << v << "\n";
    if (!result_.is_null()) text << "result " << result_.dump() << "\n";
    text << "status " << (pass_ ? "PASS" : "FAIL") << "\n";
    std::cout << text.str();
    if (!out_path.empty()) {
      json doc{{"manifest", manifest_.to_json()}, {"checks", checks_}, {"pass", pass_}};
      if (!result_.is_null()) doc["result"] = result_;
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw Error("cannot write " + out_path);
      out << doc.dump(2) << "\n";
    }
    return pass_ ? kOk : kTolerance;
  }

 private:
  RunManifest manifest_;
  std::vector<std::pair<std::string, std::string>> lines_;
  json checks_ = json::array();
  json result_;
  bool pass_ = true;
};

Complex parse_complex(const std::string& s) {
  std::string t = s;
  t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == '[' || c == ']' || c == ' '; }), t.end());
  std::istringstream in(t);
  double re = 0.0;
  double im = 0.0;
  if (!(in >> re)) throw ParseError("cannot parse complex value \"" + s + "\"");
  if (in.peek() == ',') {
    in.get();
    if (!(in >> im)) throw ParseError("cannot parse complex value \"" + s + "\"");
  }
  if (!in.eof()) throw ParseError("cannot parse complex value \"" + s + "\"");
  return {re, im};
}

json complex_list(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(io::to_json(v(k)));
  return out;
}

json polynomial_list(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const Polynomial& p : ps) out.push_back(io::to_json(p));
  return out;
}

// Reconstruction error on points in discs about the nodes, where the
// decomposition is meant to converge.
double reconstruction_residual(const Decomposition& d, const RationalMatrix& f, int points, std::uint64_t seed) {
  const NodeSet& nodes = d.nodes;
  const double radius = std::min(0.45 * nodes.min_separation(), 0.5);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  int taken = 0;
  for (int attempt = 0; taken < points && attempt < 50 * points; ++attempt) {
    const Complex u{unit(rng), unit(rng)};
    if (std::abs(u) > 1.0) continue;
    const Complex z = nodes[static_cast<std::size_t>(rng() % nodes.size())].w + radius * u;
    if (f.is_pole(z)) continue;
    ComplexMatrix got;
    try {
      got = reconstruct(d, z);
    } catch (const SingularMatrixError&) {
      continue;
    }
    const ComplexMatrix want = f(z);
    worst = std::max(worst, max_abs(got - want) / std::max(1.0, max_abs(want)));
    ++taken;
  }
  return worst;
}

struct Common {
  std::string out;
  double tol = 0.0;
  std::uint64_t seed = 1;
};

int cmd_decompose(const std::string& f_path, const std::string& nodes_path, const Common& c) {
  RunManifest m{"decompose"};
  const RationalMatrix f = io::function_from_json(m.load("f", f_path));
  const NodeSet nodes = io::nodes_from_json(m.load("nodes", nodes_path));
  m.tolerances["residual"] = c.tol;
  m.seed = c.seed;
  const Decomposition d = f.is_polynomial() ? decompose_poly(f, nodes) : decompose_rational(f, nodes);
  Report rep(m);
  rep.line("kind", d.kind == DecompositionKind::polynomial ? "polynomial" : "rational");
  rep.line("shape", std::to_string(d.rows) + "x" + std::to_string(d.cols));
  rep.line("N", std::to_string(nodes.degree()));
  if (d.kind == DecompositionKind::rational) rep.line("m", std::to_string(d.F_real->state_dim()));
  if (d.conditioning_warning || nodes.ill_conditioned()) rep.line("warning", "ill-conditioned node set");
  const double res = reconstruction_residual(d, f, 30, c.seed);
  rep.check("reconstruction", res, c.tol, res <= c.tol);
  rep.result(io::to_json(d));
  return rep.emit(c.out);
}

int cmd_realize(const std::string& f_path, const std::string& nodes_path, const Common& c) {
  RunManifest m{"realize"};
  const RationalMatrix f = io::function_from_json(m.load("f", f_path));
  const NodeSet nodes = io::nodes_from_json(m.load("nodes", nodes_path));
  RealizeOptions opts;
  opts.verify_tol = c.tol;
  opts.seed = c.seed;
  m.tolerances["fidelity"] = opts.verify_tol;
  m.tolerances["rank"] = opts.rank_tol;
  m.tolerances["nilpotency"] = 1e-8;
  m.seed = c.seed;
  const Realization r = realize(f, nodes, opts);
  Report rep(m);
  rep.line("m", std::to_string(r.state_dim()));
  rep.line("nilpotent", is_nilpotent(r) ? "yes" : "no");
  if (r.conditioning_warning) rep.line("warning", "ill-conditioned realization");
  rep.check("fidelity", r.construction_residual, opts.verify_tol, r.construction_residual <= opts.verify_tol);
  rep.result(io::to_json(r));
  return rep.emit(c.out);
}

int cmd_lci_solve(const std::string& problem_path, const std::string& g_path, const Common& c) {
  RunManifest m{"lci-solve"};
  const LCIProblem prob = io::lci_problem_from_json(m.load("problem", problem_path));
  m.tolerances["constraint"] = c.tol;
  const LCISolution sol = lci_prepare(prob);
  Report rep(m);
  rep.line("N", std::to_string(prob.nodes.degree()));
  json result{{"F0", complex_list(sol.F0)}, {"particular", io::to_json(sol.particular)}};
  double res = 0.0;
  if (g_path.empty()) {
    res = verify_lci(sol.particular, prob);
    result["solution"] = io::to_json(sol.particular);
  } else {
    const io::LCIParameter g = io::lci_parameter_from_json(m.load("g", g_path));
    if (g.num.size() != static_cast<std::size_t>(prob.nodes.degree())) {
      throw ParseError("parameter G must have " + std::to_string(prob.nodes.degree()) + " components");
    }
    if (g.den.degree() == 0) {
      std::vector<Polynomial> G;
      for (const Polynomial& p : g.num) G.push_back(p * (1.0 / g.den.coeff(0)));
      const Polynomial f = lci_solve(prob, G);
      res = verify_lci(f, prob);
      result["solution"] = io::to_json(f);
    } else {
      const RationalFunction f = lci_solve(prob, g.num, g.den);
      res = verify_lci(f, prob);
      result["solution"] = io::to_json(RationalMatrix(f));
    }
  }
  rep.check("constraint", res, c.tol, res <= c.tol);
  rep.result(std::move(result));
  return rep.emit(c.out);
}

int cmd_verify_cuntz(const std::string& nodes_path, int maxdeg, const Common& c) {
  RunManifest m{"verify cuntz"};
  const NodeSet nodes = io::nodes_from_json(m.load("nodes", nodes_path));
  m.tolerances["cuntz"] = c.tol;
  m.params["maxdeg"] = maxdeg;
  const OperatorReport r = verify_cuntz(nodes, maxdeg, c.tol);
  Report rep(m);
  rep.line("N", std::to_string(nodes.degree()));
  rep.line("maxdeg", std::to_string(maxdeg));
  rep.check("cuntz", r.max_residual, r.tolerance, r.pass);
  rep.result(io::to_json(r));
  return rep.emit(c.out);
}

int cmd_verify_resolvent(const std::string& nodes_path, const std::string& f_path, const std::string& alpha_s,
                         const std::string& beta_s, double anchor_tol, const Common& c) {
  RunManifest m{"verify resolvent"};
  const NodeSet nodes = io::nodes_from_json(m.load("nodes", nodes_path));
  const RationalMatrix fm = io::function_from_json(m.load("f", f_path));
  if (fm.rows() != 1 || fm.cols() != 1) throw ParseError("resolvent input must be a scalar function");
  const Complex alpha = parse_complex(alpha_s);
  const Complex beta = parse_complex(beta_s);
  m.tolerances["identity"] = c.tol;
  m.tolerances["anchor"] = anchor_tol;
  m.seed = c.seed;
  m.params["alpha"] = io::to_json(alpha);
  m.params["beta"] = io::to_json(beta);
  const OperatorReport id = verify_resolvent_identity(fm.entry(0, 0), alpha, beta, nodes, 20, c.tol, c.seed);
  const OperatorReport anchor = verify_resolvent_anchor(nodes, alpha, 20, anchor_tol, c.seed + 1);
  Report rep(m);
  rep.check("identity", id.max_residual, id.tolerance, id.pass);
  rep.check("anchor", anchor.max_residual, anchor.tolerance, anchor.pass);
  rep.result(json{{"identity", io::to_json(id)}, {"anchor", io::to_json(anchor)}});
  return rep.emit(c.out);
}

int cmd_verify_kernel(const std::string& kernel_path, const std::string& nodes_path, double psd_tol,
                      const Common& c) {
  RunManifest m{"verify kernel"};
  const FiniteRankKernel k = io::kernel_from_json(m.load("kernel", kernel_path));
  const NodeSet nodes = io::nodes_from_json(m.load("nodes", nodes_path));
  m.tolerances["identity"] = c.tol;
  m.tolerances["psd"] = psd_tol;
  const KernelFactor f = factor_kernel(k, nodes);
  const std::vector<Complex> grid = default_kernel_grid(nodes);
  const OperatorReport id = verify_kernel_identity(k, f, grid, c.tol);
  const PsdReport psd = psd_check(f, grid, psd_tol);
  Report rep(m);
  rep.line("m", std::to_string(f.m));
  rep.line("grid", std::to_string(grid.size()) + " points");
  rep.line("gram_eigenvalues", "[" + sci(psd.min_eigenvalue) + ", " + sci(psd.max_eigenvalue) + "]");
  rep.line("numerical_rank", std::to_string(psd.numerical_rank));
  rep.check("identity", id.max_residual, id.tolerance, id.pass);
  const double neg = std::max(0.0, -psd.min_eigenvalue) / std::max(1.0, psd.max_eigenvalue);
  rep.check("psd", neg, psd_tol, psd.report.pass);
  rep.result(json{{"E", polynomial_list(f.E)},
                  {"m", f.m},
                  {"identity", io::to_json(id)},
                  {"psd", {{"min_eigenvalue", psd.min_eigenvalue},
                           {"max_eigenvalue", psd.max_eigenvalue},
                           {"numerical_rank", psd.numerical_rank},
                           {"pass", psd.report.pass}}}});
  return rep.emit(c.out);
}

int cmd_verify_roundtrip(int cases, double tol_scale, const Common& c) {
  RunManifest m{"verify roundtrip"};
  SelfCheckOptions opts;
  opts.seed = c.seed;
  opts.cases = cases;
  opts.tolerance_scale = tol_scale;
  m.seed = c.seed;
  m.params["cases"] = cases;
  m.tolerances["scale"] = tol_scale;
  Report rep(m);
  json result = json::array();
  for (const PropertyResult& p : run_selfcheck(opts)) {
    rep.check(p.name, p.max_residual, p.tolerance, p.pass);
    result.push_back({{"name", p.name},
                      {"max_residual", p.max_residual},
                      {"tolerance", p.tolerance},
                      {"cases", p.cases},
                      {"pass", p.pass}});
  }
  rep.result(std::move(result));
  return rep.emit(c.out);
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PoleAtNodeError& e) {
    std::cerr << "pole at node: " << e.what() << "\n";
    return kPrecondition;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ToleranceError& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return kTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposition f(z) = Z(z) F(p(z)) about a node set, with realizations, interpolation and "
               "operator checks"};
  app.require_subcommand(1);

  std::string f_path;
  std::string nodes_path;
  std::string problem_path;
  std::string g_path;
  std::string kernel_path;
  std::string alpha = "0";
  std::string beta = "0.5";
  int maxdeg = 12;
  int cases = 25;
  double tol_scale = 1.0;
  double anchor_tol = 1e-9;
  double psd_tol = 1e-9;
  std::map<std::string, Common> common;

  auto add_common = [&](CLI::App* sub, double default_tol, bool seeded) -> Common& {
    Common& c = common[sub->get_name()];
    c.tol = default_tol;
    if (default_tol > 0.0) sub->add_option("--tol", c.tol, "Pass/fail tolerance")->capture_default_str();
    sub->add_option("--out", c.out, "Write the structured report (JSON) to this file");
    if (seeded) sub->add_option("--seed", c.seed, "Seed for sampled checks")->capture_default_str();
    return c;
  };

  std::function<int()> run;

  auto* dec = app.add_subcommand("decompose", "Decompose f about the nodes and check the reconstruction");
  dec->add_option("--f", f_path, "Function file")->required();
  dec->add_option("--nodes", nodes_path, "Node set file")->required();
  Common& dec_c = add_common(dec, 1e-8, true);
  dec->callback([&] { run = [&] { return cmd_decompose(f_path, nodes_path, dec_c); }; });

  auto* rea = app.add_subcommand("realize", "State-space realization C (I - p(z) A)^-1 B of a rational f");
  rea->add_option("--f", f_path, "Function file")->required();
  rea->add_option("--nodes", nodes_path, "Node set file")->required();
  Common& rea_c = add_common(rea, 1e-7, true);
  rea->callback([&] { run = [&] { return cmd_realize(f_path, nodes_path, rea_c); }; });

  auto* lci = app.add_subcommand("lci-solve", "Solve one linear constraint on the values and derivatives at the nodes");
  lci->add_option("--problem", problem_path, "Problem file")->required();
  lci->add_option("--g", g_path, "Parameter file; omitted selects the particular solution");
  Common& lci_c = add_common(lci, 1e-8, false);
  lci->callback([&] { run = [&] { return cmd_lci_solve(problem_path, g_path, lci_c); }; });

  auto* ver = app.add_subcommand("verify", "Operator and property checks");
  ver->require_subcommand(1);

  auto* cun = ver->add_subcommand("cuntz", "Cuntz relations on monomials");
  cun->add_option("--nodes", nodes_path, "Node set file")->required();
  cun->add_option("--maxdeg", maxdeg, "Largest monomial degree")->capture_default_str()->check(CLI::NonNegativeNumber);
  Common& cun_c = add_common(cun, 1e-10, false);
  cun->callback([&] { run = [&] { return cmd_verify_cuntz(nodes_path, maxdeg, cun_c); }; });

  auto* res = ver->add_subcommand("resolvent", "Resolvent identity and anchor identity");
  res->add_option("--nodes", nodes_path, "Node set file")->required();
  res->add_option("--f", f_path, "Scalar function file")->required();
  res->add_option("--alpha", alpha, "alpha as re or re,im")->capture_default_str();
  res->add_option("--beta", beta, "beta as re or re,im")->capture_default_str();
  res->add_option("--anchor-tol", anchor_tol, "Anchor identity tolerance")->capture_default_str();
  Common& res_c = add_common(res, 1e-7, true);
  res->callback([&] { run = [&] { return cmd_verify_resolvent(nodes_path, f_path, alpha, beta, anchor_tol, res_c); }; });

  auto* ker = ver->add_subcommand("kernel", "Kernel factorization and Gram positivity");
  ker->add_option("--kernel", kernel_path, "Kernel file")->required();
  ker->add_option("--nodes", nodes_path, "Node set file")->required();
  ker->add_option("--psd-tol", psd_tol, "Relative negative-eigenvalue tolerance")->capture_default_str();
  Common& ker_c = add_common(ker, 1e-9, false);
  ker->callback([&] { run = [&] { return cmd_verify_kernel(kernel_path, nodes_path, psd_tol, ker_c); }; });

  auto* rt = ver->add_subcommand("roundtrip", "Randomized sweeps over every identity");
  rt->add_option("--cases", cases, "Random instances per property")->capture_default_str()->check(CLI::PositiveNumber);
  rt->add_option("--tol-scale", tol_scale, "Multiplier on every default tolerance")->capture_default_str();
  Common& rt_c = add_common(rt, 0.0, true);
  rt->callback([&] { run = [&] { return cmd_verify_roundtrip(cases, tol_scale, rt_c); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  return run ? guarded(run) : kParse;
}

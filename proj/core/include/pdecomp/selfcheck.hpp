#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pdecomp {

struct PropertyResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  bool pass = true;
};

struct SelfCheckOptions {
  std::uint64_t seed = 1;
  int cases = 25;  // random instances per property
  /// Multiplies every default tolerance (1.0 keeps the library defaults).
  double tolerance_scale = 1.0;
};

/// Randomized sweeps over the main identities: decomposition round trip,
/// realization fidelity, LCI constraint, Cuntz relations, resolvent identity
/// and kernel factorization. Deterministic for a fixed seed.
std::vector<PropertyResult> run_selfcheck(const SelfCheckOptions& opts = {});

}  // namespace pdecomp

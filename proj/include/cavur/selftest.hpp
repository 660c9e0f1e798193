#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cavur/protocol.hpp"

namespace cavur {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Invariant suites behind the `check` subcommand. Each suite exercises
/// one family of guarantees (entropy decomposition identity, tripartite
/// relation, channel validity, closed-form agreement, grid invariants,
/// fermionic consistency) on deterministic pseudo-random inputs.
std::vector<CheckResult> run_all_checks(const GameConfig& cfg,
                                        std::uint64_t seed = 20240901);

}  // namespace cavur

#pragma once

#include <string>
#include <vector>

namespace capq {

struct SelftestResult {
  std::string name;
  bool passed = false;
  bool advisory = false;  // reported, but does not fail the suite
  std::string detail;
};

/// Fast identity checks of the closed-form parts of the library: elliptic
/// and Jacobi identities, the Grötzsch modulus, the modulus equation, the
/// collar equation chain and the bound identities. No PDE solves.
std::vector<SelftestResult> run_selftest();

}  // namespace capq

#ifndef QUASIPIN_SELFTEST_HPP
#define QUASIPIN_SELFTEST_HPP

#include <iosfwd>
#include <string>

namespace qpin {

/// In-process consistency suites: analytic integrals against the
/// quadrature oracle, Slater-Condon against the permutation expansion,
/// duality and hole-matrix rules, Borland-Dennis saturation, and catalog
/// consistency. fault_injection perturbs the analytic side so a broken
/// toolchain is caught (any nonzero value must make the run fail).
struct SelftestConfig {
    std::string filter;           // substring over suite names, empty = all
    double fault_injection = 0.0; // added to analytic integral tables
};

/// Prints one PASS/FAIL line per suite; returns 0 when every selected
/// suite passes, 1 otherwise.
int run_selftest(const SelftestConfig& config, std::ostream& out);

} // namespace qpin

#endif

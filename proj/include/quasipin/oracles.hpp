#ifndef QUASIPIN_ORACLES_HPP
#define QUASIPIN_ORACLES_HPP

#include "quasipin/ci.hpp"

namespace qpin {

/// Brute-force Hamiltonian matrix element: both determinants expanded into
/// their 3! permutation terms and every one-/two-electron contribution
/// summed directly against the integral tables. Validation oracle for
/// slater_condon; shares no rule logic with it.
double permutation_expansion_element(const Determinant& d1, const Determinant& d2,
                                     const IntegralTable& integrals, int z);

} // namespace qpin

#endif

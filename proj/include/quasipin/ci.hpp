#ifndef QUASIPIN_CI_HPP
#define QUASIPIN_CI_HPP

#include <functional>
#include <vector>

#include "quasipin/basis.hpp"
#include "quasipin/determinants.hpp"

namespace qpin {

/// Hamiltonian matrix element <d1|H|d2> for H = sum_i (pi_i - Z kappa_i)
/// + sum_{i<j} 1/r_ij via the Slater-Condon rules. Zero when the
/// determinants differ in three or more orbitals.
double slater_condon(const Determinant& d1, const Determinant& d2, const IntegralTable& integrals,
                     int z);

Matrix hamiltonian_matrix(const std::vector<Determinant>& dets, const IntegralTable& integrals,
                          int z);

/// A solved CI ground state: amplitudes over the S_z-filtered determinant
/// list, unit norm, global phase fixed by making the largest-magnitude
/// amplitude positive.
struct CIState {
    BasisParams params;
    std::vector<Determinant> dets;
    std::vector<double> amplitudes;
    double energy = 0.0;
    std::vector<Spin> spins; // per orthonormal orbital
};

/// Everything assembled on the way to a ground state, for callers that
/// need the basis or integrals as well.
struct CISystem {
    std::vector<SpinOrbital> primitives;
    OrthoTransform transform;
    IntegralTable integrals;
    std::vector<Determinant> dets;
    SpinAdaptedBasis adapted;
};

CISystem build_system(const BasisParams& params);

/// Lowest eigenpair of H restricted to the doublet subspace.
CIState ground_state(const BasisParams& params);
CIState ground_state(const BasisParams& params, const CISystem& system);

struct OptimizerTrace {
    int iterations = 0;
    double final_spread = 0.0;
    bool converged = false;
    std::vector<double> best_energy; // per iteration, non-increasing
};

struct SolveResult {
    CIState state;
    OptimizerTrace trace;
};

struct NelderMeadResult {
    std::array<double, 2> x{};
    double value = 0.0;
    OptimizerTrace trace;
};

/// Two-parameter Nelder-Mead with the standard reflect/expand/contract/
/// shrink moves. Stops when the simplex value spread falls below tol.
NelderMeadResult nelder_mead_2d(const std::function<double(double, double)>& f,
                                std::array<std::array<double, 2>, 3> simplex, double tol = 1e-9,
                                int max_iter = 500);

/// Minimizes E(alpha, gamma) for the rank from the fixed simplex
/// (2.7, 1.3), (2.97, 1.3), (2.7, 1.43).
SolveResult optimize_screening(RankId rank, int z);

} // namespace qpin

#endif

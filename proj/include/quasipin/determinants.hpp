#ifndef QUASIPIN_DETERMINANTS_HPP
#define QUASIPIN_DETERMINANTS_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "quasipin/basis.hpp"
#include "quasipin/linalg.hpp"

namespace qpin {

/// Slater determinant [ijk] over an ordered orthonormal spin-orbital list,
/// indices strictly increasing. The sign convention is fixed by this
/// ordering together with the 1/sqrt(3!) wedge normalization.
struct Determinant {
    std::array<int, 3> orb;

    bool contains(int p) const { return orb[0] == p || orb[1] == p || orb[2] == p; }
    bool operator==(const Determinant& other) const { return orb == other.orb; }
    bool operator<(const Determinant& other) const { return orb < other.orb; }
};

/// All C(M,3) determinants in lexicographic order.
std::vector<Determinant> enumerate_determinants(int m, int n = 3);

/// Determinants with the requested S_z (in units of hbar); -1/2 keeps one
/// spin-up and two spin-down orbitals.
std::vector<Determinant> sz_filter(const std::vector<Determinant>& dets,
                                   const std::vector<Spin>& spins, double target_sz = -0.5);

/// Second-quantized ladder steps on sorted occupation vectors. Return the
/// fermionic sign and the updated occupation, or nothing when the operator
/// annihilates the state.
std::optional<std::pair<int, std::vector<int>>> apply_annihilation(const std::vector<int>& occ,
                                                                   int p);
std::optional<std::pair<int, std::vector<int>>> apply_creation(const std::vector<int>& occ, int p);

/// Index of a sorted triple in the lexicographic enumeration over m modes.
int triple_index(int i, int j, int k, int m);

/// Doublet (S^2 = 3/4) subspace of a set of S_z eigendeterminants. S^2 is
/// evaluated in a closure space built on the union of the up- and
/// down-sector spatial spans, so bases that are not closed under spin flip
/// (a spatial present with one spin only) are handled exactly: a vector is
/// accepted only if S^2 maps it back into the CI span with eigenvalue 3/4.
struct SpinAdaptedBasis {
    std::vector<Determinant> dets;
    Matrix doublet; // n_dets x dim, orthonormal columns

    // closure embedding, kept for residual checks
    std::vector<RadialFunction> union_spatials;
    Matrix embed;      // closure_dets x n_dets
    Matrix s2_action;  // (S^2 - 3/4) embed

    int dimension() const { return static_cast<int>(doublet.cols()); }
    /// || (S^2 - 3/4) C v ||_2 for an amplitude vector over dets.
    double s2_residual(const std::vector<double>& amplitudes) const;
};

SpinAdaptedBasis spin_adapt(const std::vector<Determinant>& dets,
                            const std::vector<SpinOrbital>& orbitals);

} // namespace qpin

#endif

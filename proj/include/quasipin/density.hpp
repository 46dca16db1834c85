#ifndef QUASIPIN_DENSITY_HPP
#define QUASIPIN_DENSITY_HPP

#include <vector>

#include "quasipin/ci.hpp"

namespace qpin {

/// One-body reduced density matrix, Tr rho = 3, spin-blocked (entries
/// between opposite-spin orbitals vanish for S_z eigenstates).
struct OneBodyRDM {
    Matrix rho;
    std::vector<Spin> spins;
};

OneBodyRDM one_body_rdm(const CIState& state);

/// Natural occupation numbers sorted descending with their orbitals.
/// transform column i holds natural orbital i over the spin-orbital basis
/// (spin-pure); ties are broken down-spin first, then original index.
struct OccupationSpectrum {
    std::vector<double> lambdas;
    Matrix transform;
    std::vector<Spin> spins;

    int rank() const { return static_cast<int>(lambdas.size()); }
};

OccupationSpectrum natural_occupations(const OneBodyRDM& rdm);

/// Antisymmetric coefficients c_ijk of a three-fermion state, stored for
/// i<j<k in lexicographic order over M modes.
struct AmplitudeTensor {
    int rank = 0;
    std::vector<double> c;

    double at(int i, int j, int k) const; // signed access, any distinct order
    double norm2() const;
};

/// State re-expressed over the natural-orbital determinants (three-fold
/// transform of the amplitudes by the natural transform).
AmplitudeTensor to_natural_basis(const CIState& state, const OccupationSpectrum& spectrum);

/// The state's own amplitudes as a tensor over its orbital basis.
AmplitudeTensor tensor_from_state(const CIState& state);

int pair_index(int p, int q, int m);

/// Schmidt-Carlson-Keller data: two-body eigenchannels, the assembled
/// two-body matrix, and the one-/two-hole matrices, all over the natural
/// orbitals of the given spectrum.
struct DualityChannel {
    int natural_index = 0;
    double lambda = 0.0;
    std::vector<double> omega; // normalized two-particle vector over pairs
    bool single_determinant = false;
};

struct DualityPairs {
    std::vector<DualityChannel> channels; // lambda > threshold only
    Matrix rho2;
    std::vector<double> rho2_spectrum; // descending
    Matrix eta1;
    Matrix eta2;
    std::vector<double> eta2_spectrum; // descending
};

DualityPairs duality_pairs(const CIState& state, const OccupationSpectrum& spectrum);
DualityPairs duality_pairs_from_tensor(const AmplitudeTensor& tensor,
                                       const std::vector<double>& lambdas);

/// Contraction of eta2 over one hole index, (1/2) sum_k eta2[pk][qk] with
/// the antisymmetric index extension; equals (M-N-1)/2 * eta1.
Matrix contract_eta2(const Matrix& eta2, int m);

} // namespace qpin

#endif

#ifndef QUASIPIN_BASIS_HPP
#define QUASIPIN_BASIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "quasipin/linalg.hpp"
#include "quasipin/radial.hpp"

namespace qpin {

enum class Spin { up, down };

inline const char* spin_tag(Spin s) { return s == Spin::up ? "up" : "dn"; }

/// Product of a spatial radial function and a spinor. Spin orthogonality is
/// structural: integrals between opposite spins vanish regardless of the
/// spatial parts.
struct SpinOrbital {
    RadialFunction spatial;
    Spin spin;
    std::string label;
};

enum class OrbitalKind { kellner, delta_n, psi3s, psi3p, psi3d };

enum class RankId { r3s, r3p, r3d, r5, r6a, r6b, r7, r8 };

int rank_size(RankId id);
std::string rank_name(RankId id);
std::optional<RankId> parse_rank(const std::string& name);

/// Screening parameters and basis selection. alpha drives the helium-like
/// delta_n family, gamma the outer orbital.
struct BasisParams {
    double alpha = 2.7;
    double gamma = 1.3;
    int z = 3;
    RankId rank = RankId::r6b;
};

/// Normalized basis function constructors. delta_n uses the associated
/// Laguerre L^2_{n-1}(2 alpha r) with D_n = sqrt(2 / (n (n+1))), which
/// makes the family orthonormal; n is ignored for the other kinds.
RadialFunction make_function(OrbitalKind kind, int n, double exponent);

/// The ordered primitive spin-orbital list of a rank. Order matters: it is
/// the Gram-Schmidt elimination order.
std::vector<SpinOrbital> standard_basis(const BasisParams& params);

/// Result of orthonormalizing a primitive list. r is block-diagonal across
/// spin sectors and lower-triangular within each sector in list order;
/// r S r^T = 1 with S the primitive overlap matrix.
struct OrthoTransform {
    Matrix r;
    std::vector<SpinOrbital> orthonormal;
};

OrthoTransform gram_schmidt(const std::vector<SpinOrbital>& primitives);

/// One- and two-electron integrals over an ordered spin-orbital list.
/// kinetic/nuclear are the pi/kappa matrices (kappa does not include Z);
/// two holds the chemist-notation tensor (mn|op) with full 8-fold symmetry
/// and spin masks applied.
struct IntegralTable {
    int rank = 0;
    std::vector<Spin> spins;
    Matrix kinetic;
    Matrix nuclear;
    std::vector<double> two;

    double two_electron(int m, int n, int o, int p) const {
        return two[((static_cast<std::size_t>(m) * rank + n) * rank + o) * rank + p];
    }
    double& two_electron(int m, int n, int o, int p) {
        return two[((static_cast<std::size_t>(m) * rank + n) * rank + o) * rank + p];
    }
};

/// K, P, Upsilon over the primitives themselves.
IntegralTable primitive_integrals(const std::vector<SpinOrbital>& primitives);

/// kappa, pi, iota in the orthonormal basis via the congruence transforms
/// kappa = (R x R) K and iota = (R x R x R x R) Upsilon.
IntegralTable build_integrals(const std::vector<SpinOrbital>& primitives,
                              const OrthoTransform& transform);

/// Largest deviation |analytic - quadrature| / max(1, |quadrature|) over
/// every distinct integral of the primitive table.
double quadrature_check(const std::vector<SpinOrbital>& primitives,
                        const QuadratureOracle& oracle);

} // namespace qpin

#endif

#ifndef QUASIPIN_ENTANGLEMENT_HPP
#define QUASIPIN_ENTANGLEMENT_HPP

#include "quasipin/density.hpp"

namespace qpin {

/// Adjugate of a 3x3 matrix: transpose of the cofactor matrix, so that
/// M M^# = M^# M = det(M) I, defined for singular M as well.
Matrix adjugate3(const Matrix& m);

/// The quartic invariant of a three-fermion state over six modes,
///   T = 4 { [Tr(M1 M2) - mu nu]^2 - 4 Tr(M1^# M2^#)
///           + 4 mu det M1 + 4 nu det M2 },
/// with the twenty amplitudes arranged into M1, M2, mu = c_123 and
/// nu = c_456. Amplitudes are real here, so the conjugations of the
/// original expression are identity maps.
struct TMeasureDecomposition {
    Matrix m1;
    Matrix m2;
    double mu = 0.0;
    double nu = 0.0;
    double value = 0.0;
};

TMeasureDecomposition t_measure(const AmplitudeTensor& tensor);

/// Jaynes occupation entropy -sum_i l_i ln l_i (nats), 0 ln 0 := 0.
struct EntropyReport {
    double value = 0.0;
    std::vector<double> contributions;
};

EntropyReport jaynes_entropy(const OccupationSpectrum& spectrum);
EntropyReport jaynes_entropy(const std::vector<double>& lambdas);

} // namespace qpin

#endif

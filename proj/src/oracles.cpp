#include "quasipin/oracles.hpp"

namespace qpin {

namespace {

const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
const int perm_sign[6] = {1, -1, -1, 1, 1, -1};

} // namespace

double permutation_expansion_element(const Determinant& d1, const Determinant& d2,
                                     const IntegralTable& t, int z) {
    const auto h = [&](int p, int q) { return t.kinetic(p, q) - z * t.nuclear(p, q); };
    const auto delta = [](int p, int q) { return p == q ? 1.0 : 0.0; };

    double total = 0.0;
    for (int si = 0; si < 6; ++si) {
        int a[3];
        for (int k = 0; k < 3; ++k)
            a[k] = d1.orb[perms[si][k]];
        for (int ti = 0; ti < 6; ++ti) {
            int b[3];
            for (int k = 0; k < 3; ++k)
                b[k] = d2.orb[perms[ti][k]];
            const double sgn = perm_sign[si] * perm_sign[ti];

            // <a0 a1 a2 | sum_i h(i) | b0 b1 b2> over product states
            double one = h(a[0], b[0]) * delta(a[1], b[1]) * delta(a[2], b[2]) +
                         delta(a[0], b[0]) * h(a[1], b[1]) * delta(a[2], b[2]) +
                         delta(a[0], b[0]) * delta(a[1], b[1]) * h(a[2], b[2]);

            // 1/r_12, 1/r_13, 1/r_23 in chemist notation (ac|bd)
            double two = t.two_electron(a[0], b[0], a[1], b[1]) * delta(a[2], b[2]) +
                         t.two_electron(a[0], b[0], a[2], b[2]) * delta(a[1], b[1]) +
                         t.two_electron(a[1], b[1], a[2], b[2]) * delta(a[0], b[0]);

            total += sgn * (one + two);
        }
    }
    return total / 6.0; // the 1/sqrt(3!) normalization of each determinant
}

} // namespace qpin

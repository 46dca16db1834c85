#include "quasipin/ci.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpin {

namespace {

// Aligned difference of two sorted triples: orbitals unique to d1, unique
// to d2, the shared ones, and the parity of bringing both into
// (unique..., shared...) order.
struct Alignment {
    std::vector<int> only1, only2, shared;
    int sign = 1;
};

int move_to_front_sign(const std::array<int, 3>& orb, const std::vector<int>& front) {
    // parity of the permutation that lists `front` first, rest in order
    std::vector<int> arranged;
    for (int p : front)
        arranged.push_back(p);
    for (int p : orb)
        if (std::find(front.begin(), front.end(), p) == front.end())
            arranged.push_back(p);
    int sign = 1;
    for (std::size_t i = 0; i < arranged.size(); ++i)
        for (std::size_t j = i + 1; j < arranged.size(); ++j)
            if (arranged[i] > arranged[j])
                sign = -sign;
    return sign;
}

Alignment align(const Determinant& d1, const Determinant& d2) {
    Alignment a;
    for (int p : d1.orb)
        if (!d2.contains(p))
            a.only1.push_back(p);
    for (int p : d2.orb)
        if (!d1.contains(p))
            a.only2.push_back(p);
    for (int p : d1.orb)
        if (d2.contains(p))
            a.shared.push_back(p);
    a.sign = move_to_front_sign(d1.orb, a.only1) * move_to_front_sign(d2.orb, a.only2);
    return a;
}

} // namespace

double slater_condon(const Determinant& d1, const Determinant& d2, const IntegralTable& t,
                     int z) {
    const Alignment a = align(d1, d2);
    const auto h = [&](int p, int q) { return t.kinetic(p, q) - z * t.nuclear(p, q); };

    if (a.only1.size() == 0) {
        double e = 0.0;
        for (int p : d1.orb)
            e += h(p, p);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const int p = d1.orb[i], q = d1.orb[j];
                e += t.two_electron(p, p, q, q) - t.two_electron(p, q, q, p);
            }
        return e;
    }
    if (a.only1.size() == 1) {
        const int p = a.only1[0], q = a.only2[0];
        double e = h(p, q);
        for (int r : a.shared)
            e += t.two_electron(p, q, r, r) - t.two_electron(p, r, r, q);
        return a.sign * e;
    }
    if (a.only1.size() == 2) {
        const int p = a.only1[0], q = a.only1[1];
        const int r = a.only2[0], s = a.only2[1];
        return a.sign * (t.two_electron(p, r, q, s) - t.two_electron(p, s, q, r));
    }
    return 0.0;
}

Matrix hamiltonian_matrix(const std::vector<Determinant>& dets, const IntegralTable& t, int z) {
    const std::size_t n = dets.size();
    Matrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            h(i, j) = slater_condon(dets[i], dets[j], t, z);
            h(j, i) = h(i, j);
        }
    return h;
}

CISystem build_system(const BasisParams& params) {
    CISystem sys;
    sys.primitives = standard_basis(params);
    sys.transform = gram_schmidt(sys.primitives);
    sys.integrals = build_integrals(sys.primitives, sys.transform);
    const auto all = enumerate_determinants(static_cast<int>(sys.primitives.size()));
    sys.dets = sz_filter(all, sys.integrals.spins);
    sys.adapted = spin_adapt(sys.dets, sys.transform.orthonormal);
    return sys;
}

CIState ground_state(const BasisParams& params, const CISystem& sys) {
    const Matrix h = hamiltonian_matrix(sys.dets, sys.integrals, params.z);
    const Matrix& v = sys.adapted.doublet;
    const Matrix hd = v.transposed() * h * v;
    const EigenSystem es = jacobi_eigensolve_sorted(hd);

    const std::size_t n = sys.dets.size();
    const int d = sys.adapted.dimension();
    std::vector<double> amps(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k)
            amps[i] += v(i, k) * es.vectors(k, 0);

    std::size_t largest = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::fabs(amps[i]) > std::fabs(amps[largest]))
            largest = i;
    if (amps[largest] < 0.0)
        for (auto& c : amps)
            c = -c;

    CIState state;
    state.params = params;
    state.dets = sys.dets;
    state.amplitudes = std::move(amps);
    state.energy = es.values[0];
    state.spins = sys.integrals.spins;
    return state;
}

CIState ground_state(const BasisParams& params) {
    return ground_state(params, build_system(params));
}

NelderMeadResult nelder_mead_2d(const std::function<double(double, double)>& f,
                                std::array<std::array<double, 2>, 3> x, double tol,
                                int max_iter) {
    std::array<double, 3> fx;
    for (int i = 0; i < 3; ++i)
        fx[i] = f(x[i][0], x[i][1]);

    NelderMeadResult result;
    auto order = [&] {
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                if (fx[b] < fx[a]) {
                    std::swap(fx[a], fx[b]);
                    std::swap(x[a], x[b]);
                }
    };
    order();

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        result.trace.best_energy.push_back(fx[0]);
        if (fx[2] - fx[0] <= tol) {
            result.trace.converged = true;
            break;
        }
        const double cx = 0.5 * (x[0][0] + x[1][0]);
        const double cy = 0.5 * (x[0][1] + x[1][1]);
        const double rx = cx + (cx - x[2][0]);
        const double ry = cy + (cy - x[2][1]);
        const double fr = f(rx, ry);
        if (fr < fx[0]) {
            const double ex = cx + 2.0 * (cx - x[2][0]);
            const double ey = cy + 2.0 * (cy - x[2][1]);
            const double fe = f(ex, ey);
            if (fe < fr) {
                x[2] = {ex, ey};
                fx[2] = fe;
            } else {
                x[2] = {rx, ry};
                fx[2] = fr;
            }
        } else if (fr < fx[1]) {
            x[2] = {rx, ry};
            fx[2] = fr;
        } else {
            const bool outside = fr < fx[2];
            const double px = outside ? cx + 0.5 * (rx - cx) : cx - 0.5 * (cx - x[2][0]);
            const double py = outside ? cy + 0.5 * (ry - cy) : cy - 0.5 * (cy - x[2][1]);
            const double fp = f(px, py);
            if (fp < (outside ? fr : fx[2])) {
                x[2] = {px, py};
                fx[2] = fp;
            } else {
                for (int i = 1; i < 3; ++i) {
                    x[i][0] = x[0][0] + 0.5 * (x[i][0] - x[0][0]);
                    x[i][1] = x[0][1] + 0.5 * (x[i][1] - x[0][1]);
                    fx[i] = f(x[i][0], x[i][1]);
                }
            }
        }
        order();
    }

    result.x = x[0];
    result.value = fx[0];
    result.trace.iterations = iter;
    result.trace.final_spread = fx[2] - fx[0];
    return result;
}

SolveResult optimize_screening(RankId rank, int z) {
    auto energy = [&](double alpha, double gamma) {
        if (alpha < 0.05 || gamma < 0.05)
            return 1e6; // keep the simplex inside the positive quadrant
        BasisParams p{alpha, gamma, z, rank};
        return ground_state(p).energy;
    };
    const NelderMeadResult nm =
        nelder_mead_2d(energy, {{{2.7, 1.3}, {2.97, 1.3}, {2.7, 1.43}}}, 1e-9, 500);

    SolveResult out;
    BasisParams best{nm.x[0], nm.x[1], z, rank};
    out.state = ground_state(best);
    out.trace = nm.trace;
    return out;
}

} // namespace qpin

#include "quasipin/determinants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qpin {

std::vector<Determinant> enumerate_determinants(int m, int n) {
    if (n != 3)
        throw std::invalid_argument("determinant space is specialized to N = 3");
    if (m < n)
        throw std::invalid_argument("need at least N spin-orbitals");
    std::vector<Determinant> dets;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k)
                dets.push_back({{i, j, k}});
    return dets;
}

std::vector<Determinant> sz_filter(const std::vector<Determinant>& dets,
                                   const std::vector<Spin>& spins, double target_sz) {
    std::vector<Determinant> out;
    for (const auto& d : dets) {
        double sz = 0.0;
        for (int p : d.orb)
            sz += spins[p] == Spin::up ? 0.5 : -0.5;
        if (std::fabs(sz - target_sz) < 1e-9)
            out.push_back(d);
    }
    return out;
}

std::optional<std::pair<int, std::vector<int>>> apply_annihilation(const std::vector<int>& occ,
                                                                   int p) {
    auto it = std::lower_bound(occ.begin(), occ.end(), p);
    if (it == occ.end() || *it != p)
        return std::nullopt;
    const int pos = static_cast<int>(it - occ.begin());
    std::vector<int> out(occ);
    out.erase(out.begin() + pos);
    return std::make_pair(pos % 2 == 0 ? 1 : -1, std::move(out));
}

std::optional<std::pair<int, std::vector<int>>> apply_creation(const std::vector<int>& occ, int p) {
    auto it = std::lower_bound(occ.begin(), occ.end(), p);
    if (it != occ.end() && *it == p)
        return std::nullopt;
    const int pos = static_cast<int>(it - occ.begin());
    std::vector<int> out(occ);
    out.insert(out.begin() + pos, p);
    return std::make_pair(pos % 2 == 0 ? 1 : -1, std::move(out));
}

int triple_index(int i, int j, int k, int m) {
    // lexicographic position of i<j<k among C(m,3) triples
    auto c2 = [](int n) { return n * (n - 1) / 2; };
    auto c3 = [](int n) { return n * (n - 1) * (n - 2) / 6; };
    return c3(m) - c3(m - i) + c2(m - i - 1) - c2(m - j) + (k - j - 1);
}

double SpinAdaptedBasis::s2_residual(const std::vector<double>& amplitudes) const {
    const auto image = matvec(s2_action, amplitudes);
    return norm2(image);
}

namespace {

// Orthonormal basis of the union of all spatial spans, Gram-Schmidt in the
// order downs-then-ups; spatial functions already inside the running span
// are skipped.
std::vector<RadialFunction> union_spatial_basis(const std::vector<SpinOrbital>& orbitals) {
    std::vector<const SpinOrbital*> ordered;
    for (const auto& o : orbitals)
        if (o.spin == Spin::down)
            ordered.push_back(&o);
    for (const auto& o : orbitals)
        if (o.spin == Spin::up)
            ordered.push_back(&o);

    std::vector<RadialFunction> basis;
    for (const auto* o : ordered) {
        RadialFunction residual = o->spatial;
        for (const auto& b : basis)
            residual += b.scaled(-overlap(b, o->spatial));
        const double nrm2 = overlap(residual, residual);
        if (nrm2 > 1e-8)
            basis.push_back(residual.scaled(1.0 / std::sqrt(nrm2)));
    }
    return basis;
}

struct ClosureSpace {
    // closure spin-orbital c: spatial index c % dim with spin down for
    // c < dim and up otherwise
    int dim = 0;
    std::vector<Determinant> dets; // all C(2*dim, 3) triples
    std::map<std::array<int, 3>, int> index;

    int partner(int c) const { return c < dim ? c + dim : c - dim; }
    bool is_down(int c) const { return c < dim; }
};

ClosureSpace make_closure(int dim) {
    ClosureSpace cs;
    cs.dim = dim;
    cs.dets = enumerate_determinants(2 * dim);
    for (std::size_t i = 0; i < cs.dets.size(); ++i)
        cs.index[cs.dets[i].orb] = static_cast<int>(i);
    return cs;
}

using Amplitudes = std::map<std::array<int, 3>, double>;

void accumulate_flip(const ClosureSpace& cs, const std::array<int, 3>& det, double coeff,
                     bool raise, Amplitudes& out) {
    const std::vector<int> occ(det.begin(), det.end());
    for (int c : occ) {
        if (raise != cs.is_down(c))
            continue;
        const int p = cs.partner(c);
        auto removed = apply_annihilation(occ, c);
        auto created = apply_creation(removed->second, p);
        if (!created)
            continue; // partner occupied, Pauli blocked
        std::array<int, 3> key{created->second[0], created->second[1], created->second[2]};
        out[key] += coeff * removed->first * created->first;
    }
}

// (S^2 - 3/4) acting on one closure determinant, S^2 = S_-S_+ + S_z + S_z^2.
Amplitudes s2_minus_doublet(const ClosureSpace& cs, const std::array<int, 3>& det) {
    Amplitudes raised;
    accumulate_flip(cs, det, true, raised);
    Amplitudes result;
    for (const auto& [d, c] : raised)
        accumulate_flip(cs, d, c, false, result);
    double sz = 0.0;
    for (int c : det)
        sz += cs.is_down(c) ? -0.5 : 0.5;
    result[det] += sz + sz * sz - 0.75;
    return result;
}

} // namespace

SpinAdaptedBasis spin_adapt(const std::vector<Determinant>& dets,
                            const std::vector<SpinOrbital>& orbitals) {
    SpinAdaptedBasis sab;
    sab.dets = dets;
    sab.union_spatials = union_spatial_basis(orbitals);
    const int dim = static_cast<int>(sab.union_spatials.size());
    ClosureSpace cs = make_closure(dim);

    // expansion of each CI orbital over the closure spin-orbitals
    const int n_orb = static_cast<int>(orbitals.size());
    Matrix w(n_orb, 2 * dim);
    for (int o = 0; o < n_orb; ++o) {
        double total = 0.0;
        for (int a = 0; a < dim; ++a) {
            const double c = overlap(sab.union_spatials[a], orbitals[o].spatial);
            const int col = orbitals[o].spin == Spin::down ? a : dim + a;
            w(o, col) = c;
            total += c * c;
        }
        if (std::fabs(total - 1.0) > 1e-10)
            throw std::runtime_error("spin_adapt: orbital escapes the union spatial span");
    }

    // Embed CI determinants into the closure determinant space. Summing all
    // ordered distinct triples with the sort parity assembles the 3x3 minor
    // det(w[d_i][c_j]) for each sorted closure triple.
    const int n_dets = static_cast<int>(dets.size());
    const int n_closure = static_cast<int>(cs.dets.size());
    Matrix embed(n_closure, n_dets);
    for (int dcol = 0; dcol < n_dets; ++dcol) {
        const auto& d = dets[dcol];
        for (int c0 = 0; c0 < 2 * dim; ++c0) {
            if (w(d.orb[0], c0) == 0.0)
                continue;
            for (int c1 = 0; c1 < 2 * dim; ++c1) {
                if (c1 == c0 || w(d.orb[1], c1) == 0.0)
                    continue;
                for (int c2 = 0; c2 < 2 * dim; ++c2) {
                    if (c2 == c0 || c2 == c1 || w(d.orb[2], c2) == 0.0)
                        continue;
                    std::array<int, 3> t{c0, c1, c2};
                    int sign = 1; // parity of the sort
                    if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
                    if (t[1] > t[2]) { std::swap(t[1], t[2]); sign = -sign; }
                    if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
                    embed(cs.index.at(t), dcol) +=
                        sign * w(d.orb[0], c0) * w(d.orb[1], c1) * w(d.orb[2], c2);
                }
            }
        }
    }
    for (int j = 0; j < n_dets; ++j) {
        double nrm2 = 0.0;
        for (int i = 0; i < n_closure; ++i)
            nrm2 += embed(i, j) * embed(i, j);
        if (std::fabs(nrm2 - 1.0) > 1e-9)
            throw std::runtime_error("spin_adapt: determinant embedding lost normalization");
    }

    // action of (S^2 - 3/4) on each embedded CI determinant
    Matrix a(n_closure, n_dets);
    for (int col = 0; col < n_dets; ++col) {
        for (int row = 0; row < n_closure; ++row) {
            const double c = embed(row, col);
            if (c == 0.0)
                continue;
            for (const auto& [d, v] : s2_minus_doublet(cs, cs.dets[row].orb))
                a(cs.index.at(d), col) += c * v;
        }
    }

    // null space of A^T A = doublet sector
    const Matrix ata = a.transposed() * a;
    const EigenSystem es = jacobi_eigensolve_sorted(ata);
    int null_count = 0;
    for (double ev : es.values) {
        const double sigma = std::sqrt(std::max(ev, 0.0));
        if (sigma <= 1e-8)
            ++null_count;
        else if (sigma < 1e-5)
            throw std::runtime_error("spin_adapt: ambiguous singular-value gap");
    }

    // reproducible orthonormal basis: project coordinate axes through the
    // null-space projector in lexicographic determinant order
    Matrix projector(n_dets, n_dets);
    for (int k = 0; k < null_count; ++k)
        for (int i = 0; i < n_dets; ++i)
            for (int j = 0; j < n_dets; ++j)
                projector(i, j) += es.vectors(i, k) * es.vectors(j, k);

    std::vector<std::vector<double>> columns;
    for (int axis = 0; axis < n_dets && static_cast<int>(columns.size()) < null_count; ++axis) {
        std::vector<double> v = projector.column(axis);
        for (const auto& u : columns) {
            const double proj = dot(u, v);
            for (int i = 0; i < n_dets; ++i)
                v[i] -= proj * u[i];
        }
        const double nrm = norm2(v);
        if (nrm > 1e-6) {
            for (auto& x : v)
                x /= nrm;
            columns.push_back(std::move(v));
        }
    }
    if (static_cast<int>(columns.size()) != null_count)
        throw std::runtime_error("spin_adapt: failed to build a deterministic doublet basis");

    sab.doublet = Matrix(n_dets, null_count);
    for (int k = 0; k < null_count; ++k)
        for (int i = 0; i < n_dets; ++i)
            sab.doublet(i, k) = columns[k][i];
    sab.embed = std::move(embed);
    sab.s2_action = std::move(a);
    return sab;
}

} // namespace qpin

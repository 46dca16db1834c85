#include "quasipin/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qpin {

namespace {

int position_of(const Determinant& d, int p) {
    for (int i = 0; i < 3; ++i)
        if (d.orb[i] == p)
            return i;
    return -1;
}

} // namespace

OneBodyRDM one_body_rdm(const CIState& state) {
    const int m = static_cast<int>(state.spins.size());
    const auto& dets = state.dets;
    const auto& c = state.amplitudes;
    Matrix rho(m, m);

    for (std::size_t i = 0; i < dets.size(); ++i) {
        for (int p : dets[i].orb)
            rho(p, p) += c[i] * c[i];
        for (std::size_t j = i + 1; j < dets.size(); ++j) {
            // only pairs sharing two orbitals contribute off the diagonal
            int shared = 0;
            for (int p : dets[i].orb)
                if (dets[j].contains(p))
                    ++shared;
            if (shared != 2)
                continue;
            int p = -1, q = -1;
            for (int o : dets[i].orb)
                if (!dets[j].contains(o))
                    p = o;
            for (int o : dets[j].orb)
                if (!dets[i].contains(o))
                    q = o;
            const int sign =
                ((position_of(dets[i], p) + position_of(dets[j], q)) % 2 == 0) ? 1 : -1;
            rho(p, q) += sign * c[i] * c[j];
            rho(q, p) += sign * c[i] * c[j];
        }
    }

    return {std::move(rho), state.spins};
}

namespace {

struct NaturalEntry {
    double lambda;
    Spin spin;
    int block_position;          // order within the spin block, for ties
    std::vector<double> column;  // over the full M rows
};

constexpr double tie_tol = 1e-11;

void fix_phase(std::vector<double>& column) {
    std::size_t largest = 0;
    for (std::size_t i = 1; i < column.size(); ++i)
        if (std::fabs(column[i]) > std::fabs(column[largest]))
            largest = i;
    if (column[largest] < 0.0)
        for (auto& v : column)
            v = -v;
}

// Eigenvectors inside a degenerate cluster are an arbitrary rotation of
// each other; replace them by the Gram-Schmidt projections of the earliest
// coordinate axes onto the cluster span so the output is reproducible.
void align_cluster(std::vector<std::vector<double>>& vecs) {
    const std::size_t n = vecs[0].size();
    const std::size_t d = vecs.size();
    std::vector<std::vector<double>> fixed;
    for (std::size_t axis = 0; axis < n && fixed.size() < d; ++axis) {
        std::vector<double> v(n, 0.0);
        for (const auto& u : vecs) {
            for (std::size_t i = 0; i < n; ++i)
                v[i] += u[axis] * u[i];
        }
        for (const auto& u : fixed) {
            const double proj = dot(u, v);
            for (std::size_t i = 0; i < n; ++i)
                v[i] -= proj * u[i];
        }
        const double nrm = norm2(v);
        if (nrm > 1e-6) {
            for (auto& x : v)
                x /= nrm;
            fixed.push_back(std::move(v));
        }
    }
    if (fixed.size() == d)
        vecs = std::move(fixed);
}

} // namespace

OccupationSpectrum natural_occupations(const OneBodyRDM& rdm) {
    const int m = static_cast<int>(rdm.spins.size());
    std::vector<NaturalEntry> entries;

    for (Spin spin : {Spin::down, Spin::up}) {
        std::vector<int> rows;
        for (int i = 0; i < m; ++i)
            if (rdm.spins[i] == spin)
                rows.push_back(i);
        if (rows.empty())
            continue;
        const int b = static_cast<int>(rows.size());
        Matrix block(b, b);
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j)
                block(i, j) = rdm.rho(rows[i], rows[j]);
        EigenSystem es = jacobi_eigensolve_sorted(block);

        // descending within the block
        std::vector<std::vector<double>> cols(b);
        std::vector<double> vals(b);
        for (int k = 0; k < b; ++k) {
            vals[k] = es.values[b - 1 - k];
            cols[k] = es.vectors.column(b - 1 - k);
        }
        // pin degenerate clusters to the original orbital axes
        for (int k = 0; k < b;) {
            int end = k + 1;
            while (end < b && std::fabs(vals[end] - vals[k]) <= tie_tol)
                ++end;
            if (end - k > 1) {
                std::vector<std::vector<double>> cluster(cols.begin() + k, cols.begin() + end);
                align_cluster(cluster);
                std::copy(cluster.begin(), cluster.end(), cols.begin() + k);
            }
            k = end;
        }
        for (int k = 0; k < b; ++k) {
            fix_phase(cols[k]);
            std::vector<double> full(m, 0.0);
            for (int i = 0; i < b; ++i)
                full[rows[i]] = cols[k][i];
            entries.push_back({vals[k], spin, k, std::move(full)});
        }
    }

    std::stable_sort(entries.begin(), entries.end(),
                     [](const NaturalEntry& a, const NaturalEntry& b) {
                         return a.lambda > b.lambda;
                     });
    // numerically tied values: down-spin first, then block position
    for (std::size_t i = 0; i + 1 < entries.size();) {
        std::size_t j = i + 1;
        while (j < entries.size() && std::fabs(entries[j].lambda - entries[i].lambda) <= tie_tol)
            ++j;
        std::stable_sort(entries.begin() + i, entries.begin() + j,
                         [](const NaturalEntry& a, const NaturalEntry& b) {
                             if (a.spin != b.spin)
                                 return a.spin == Spin::down;
                             return a.block_position < b.block_position;
                         });
        i = j;
    }

    OccupationSpectrum spec;
    spec.transform = Matrix(m, m);
    for (int k = 0; k < m; ++k) {
        spec.lambdas.push_back(entries[k].lambda);
        spec.spins.push_back(entries[k].spin);
        for (int i = 0; i < m; ++i)
            spec.transform(i, k) = entries[k].column[i];
    }
    return spec;
}

double AmplitudeTensor::at(int i, int j, int k) const {
    int t[3] = {i, j, k};
    int sign = 1;
    if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
    if (t[1] > t[2]) { std::swap(t[1], t[2]); sign = -sign; }
    if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
    if (t[0] == t[1] || t[1] == t[2])
        return 0.0;
    return sign * c[triple_index(t[0], t[1], t[2], rank)];
}

double AmplitudeTensor::norm2() const {
    double s = 0.0;
    for (double v : c)
        s += v * v;
    return s;
}

AmplitudeTensor tensor_from_state(const CIState& state) {
    const int m = static_cast<int>(state.spins.size());
    AmplitudeTensor t;
    t.rank = m;
    t.c.assign(m * (m - 1) * (m - 2) / 6, 0.0);
    for (std::size_t i = 0; i < state.dets.size(); ++i) {
        const auto& d = state.dets[i];
        t.c[triple_index(d.orb[0], d.orb[1], d.orb[2], m)] = state.amplitudes[i];
    }
    return t;
}

AmplitudeTensor to_natural_basis(const CIState& state, const OccupationSpectrum& spectrum) {
    const int m = spectrum.rank();
    const Matrix& u = spectrum.transform;
    AmplitudeTensor out;
    out.rank = m;
    out.c.assign(m * (m - 1) * (m - 2) / 6, 0.0);

    // |p> = sum_i U(p,i) |alpha_i>, so each determinant picks up the 3x3
    // minors of U; ordered triples with sort parity assemble them.
    for (std::size_t di = 0; di < state.dets.size(); ++di) {
        const double cd = state.amplitudes[di];
        if (cd == 0.0)
            continue;
        const auto& d = state.dets[di];
        for (int a = 0; a < m; ++a) {
            if (u(d.orb[0], a) == 0.0)
                continue;
            for (int b = 0; b < m; ++b) {
                if (b == a || u(d.orb[1], b) == 0.0)
                    continue;
                for (int e = 0; e < m; ++e) {
                    if (e == a || e == b || u(d.orb[2], e) == 0.0)
                        continue;
                    int t[3] = {a, b, e};
                    int sign = 1;
                    if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
                    if (t[1] > t[2]) { std::swap(t[1], t[2]); sign = -sign; }
                    if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
                    out.c[triple_index(t[0], t[1], t[2], m)] +=
                        sign * cd * u(d.orb[0], a) * u(d.orb[1], b) * u(d.orb[2], e);
                }
            }
        }
    }
    return out;
}

int pair_index(int p, int q, int m) {
    // lexicographic position of p<q among C(m,2) pairs
    return p * (2 * m - p - 1) / 2 + (q - p - 1);
}

DualityPairs duality_pairs_from_tensor(const AmplitudeTensor& tensor,
                                       const std::vector<double>& lambdas) {
    const int m = tensor.rank;
    const int n_pairs = m * (m - 1) / 2;
    const auto triples = enumerate_determinants(m);

    // two-particle component left by annihilating each mode
    std::vector<std::vector<double>> w(m, std::vector<double>(n_pairs, 0.0));
    for (const auto& t : triples) {
        const double cv = tensor.c[triple_index(t.orb[0], t.orb[1], t.orb[2], m)];
        if (cv == 0.0)
            continue;
        const std::vector<int> occ(t.orb.begin(), t.orb.end());
        for (int u : t.orb) {
            const auto rem = apply_annihilation(occ, u);
            w[u][pair_index(rem->second[0], rem->second[1], m)] += rem->first * cv;
        }
    }

    DualityPairs out;
    out.rho2 = Matrix(n_pairs, n_pairs);
    for (int u = 0; u < m; ++u)
        for (int a = 0; a < n_pairs; ++a) {
            if (w[u][a] == 0.0)
                continue;
            for (int b = 0; b < n_pairs; ++b)
                out.rho2(a, b) += w[u][a] * w[u][b];
        }

    for (int j = 0; j < m; ++j) {
        if (lambdas[j] <= 1e-12)
            continue; // empty channel
        DualityChannel ch;
        ch.natural_index = j;
        ch.lambda = lambdas[j];
        ch.omega = w[j];
        const double nrm = norm2(ch.omega);
        for (auto& v : ch.omega)
            v /= nrm;
        int support = 0;
        for (double v : ch.omega)
            if (std::fabs(v) > 1e-9)
                ++support;
        ch.single_determinant = support == 1;
        out.channels.push_back(std::move(ch));
    }

    {
        EigenSystem es = jacobi_eigensolve_sorted(out.rho2);
        out.rho2_spectrum.assign(es.values.rbegin(), es.values.rend());
    }

    out.eta1 = Matrix(m, m);
    for (int i = 0; i < m; ++i)
        out.eta1(i, i) = 1.0 - lambdas[i];

    // eta2[(pq),(rs)] = <Psi| a_r a_s a+_q a+_p |Psi>, a Gram matrix of the
    // five-particle states a+_q a+_p |Psi>.
    std::map<std::vector<int>, int> five_index;
    std::vector<std::vector<double>> v_pairs(n_pairs);
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q) {
            std::map<std::vector<int>, double> acc;
            for (const auto& t : triples) {
                const double cv = tensor.c[triple_index(t.orb[0], t.orb[1], t.orb[2], m)];
                if (cv == 0.0)
                    continue;
                const std::vector<int> occ(t.orb.begin(), t.orb.end());
                const auto c1 = apply_creation(occ, p);
                if (!c1)
                    continue;
                const auto c2 = apply_creation(c1->second, q);
                if (!c2)
                    continue;
                acc[c2->second] += cv * c1->first * c2->first;
            }
            auto& v = v_pairs[pair_index(p, q, m)];
            for (const auto& [det5, coeff] : acc) {
                auto it = five_index.find(det5);
                int idx;
                if (it == five_index.end()) {
                    idx = static_cast<int>(five_index.size());
                    five_index.emplace(det5, idx);
                } else {
                    idx = it->second;
                }
                if (static_cast<int>(v.size()) <= idx)
                    v.resize(idx + 1, 0.0);
                v[idx] = coeff;
            }
        }
    out.eta2 = Matrix(n_pairs, n_pairs);
    for (int a = 0; a < n_pairs; ++a)
        for (int b = a; b < n_pairs; ++b) {
            const auto& va = v_pairs[a];
            const auto& vb = v_pairs[b];
            double s = 0.0;
            for (std::size_t i = 0; i < std::min(va.size(), vb.size()); ++i)
                s += va[i] * vb[i];
            out.eta2(a, b) = s;
            out.eta2(b, a) = s;
        }
    {
        EigenSystem es = jacobi_eigensolve_sorted(out.eta2);
        out.eta2_spectrum.assign(es.values.rbegin(), es.values.rend());
    }
    return out;
}

DualityPairs duality_pairs(const CIState& state, const OccupationSpectrum& spectrum) {
    return duality_pairs_from_tensor(to_natural_basis(state, spectrum), spectrum.lambdas);
}

Matrix contract_eta2(const Matrix& eta2, int m) {
    Matrix out(m, m);
    auto entry = [&](int p, int k, int q, int l) {
        // antisymmetric 4-index view of the pair-space matrix
        if (p == k || q == l)
            return 0.0;
        double sign = 1.0;
        int a = p, b = k, c = q, d = l;
        if (a > b) { std::swap(a, b); sign = -sign; }
        if (c > d) { std::swap(c, d); sign = -sign; }
        return sign * eta2(pair_index(a, b, m), pair_index(c, d, m));
    };
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            double s = 0.0;
            for (int k = 0; k < m; ++k)
                s += entry(p, k, q, k);
            out(p, q) = 0.5 * s;
        }
    return out;
}

} // namespace qpin

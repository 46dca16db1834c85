#include "quasipin/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpin {

int rank_size(RankId id) {
    switch (id) {
    case RankId::r3s:
    case RankId::r3p:
    case RankId::r3d:
        return 3;
    case RankId::r5:
        return 5;
    case RankId::r6a:
    case RankId::r6b:
        return 6;
    case RankId::r7:
        return 7;
    case RankId::r8:
        return 8;
    }
    throw std::invalid_argument("unknown rank id");
}

std::string rank_name(RankId id) {
    switch (id) {
    case RankId::r3s: return "3s";
    case RankId::r3p: return "3p";
    case RankId::r3d: return "3d";
    case RankId::r5:  return "5";
    case RankId::r6a: return "6a";
    case RankId::r6b: return "6b";
    case RankId::r7:  return "7";
    case RankId::r8:  return "8";
    }
    throw std::invalid_argument("unknown rank id");
}

std::optional<RankId> parse_rank(const std::string& name) {
    if (name == "3s") return RankId::r3s;
    if (name == "3p") return RankId::r3p;
    if (name == "3d") return RankId::r3d;
    if (name == "5")  return RankId::r5;
    if (name == "6a") return RankId::r6a;
    if (name == "6b") return RankId::r6b;
    if (name == "7")  return RankId::r7;
    if (name == "8")  return RankId::r8;
    return std::nullopt;
}

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// L^zeta_m(x) = sum_k (-1)^k C(m+zeta, m-k) x^k / k!
std::vector<double> laguerre_coeffs(int m, int zeta) {
    std::vector<double> c(m + 1);
    for (int k = 0; k <= m; ++k)
        c[k] = ((k % 2) ? -1.0 : 1.0) * binomial(m + zeta, m - k) / factorial(k);
    return c;
}

} // namespace

RadialFunction make_function(OrbitalKind kind, int n, double exponent) {
    if (!(exponent > 0.0))
        throw std::invalid_argument("basis function exponent must be positive");
    const double pi = std::numbers::pi;
    switch (kind) {
    case OrbitalKind::kellner:
        return RadialFunction::monomial(std::sqrt(std::pow(exponent, 3) / pi), 0, exponent);
    case OrbitalKind::psi3s: {
        const double c = 0.25 * std::sqrt(std::pow(exponent, 3) / (2.0 * pi));
        return RadialFunction({{2.0 * c, 0, exponent / 2.0}, {-c * exponent, 1, exponent / 2.0}});
    }
    case OrbitalKind::psi3p:
        return RadialFunction::monomial(0.25 * std::sqrt(std::pow(exponent, 5) / (6.0 * pi)), 1,
                                        exponent / 2.0);
    case OrbitalKind::psi3d:
        return RadialFunction::monomial(0.125 * std::sqrt(std::pow(exponent, 7) / (45.0 * pi)), 2,
                                        exponent / 2.0);
    case OrbitalKind::delta_n: {
        if (n < 1)
            throw std::invalid_argument("delta_n requires n >= 1");
        const double dn = std::sqrt(2.0 / (static_cast<double>(n) * (n + 1.0)));
        const double norm = dn * std::sqrt(std::pow(exponent, 3) / pi);
        const auto lag = laguerre_coeffs(n - 1, 2);
        std::vector<RadialTerm> terms;
        for (int k = 0; k < static_cast<int>(lag.size()); ++k)
            terms.push_back({norm * lag[k] * std::pow(2.0 * exponent, k), k, exponent});
        RadialFunction f(std::move(terms));
        if (std::fabs(overlap(f, f) - 1.0) > 1e-10)
            throw std::runtime_error("delta_n normalization check failed");
        return f;
    }
    }
    throw std::invalid_argument("unknown orbital kind");
}

namespace {

SpinOrbital so(OrbitalKind kind, int n, double exponent, Spin spin, std::string label) {
    return {make_function(kind, n, exponent), spin, std::move(label)};
}

} // namespace

std::vector<SpinOrbital> standard_basis(const BasisParams& p) {
    const double a = p.alpha, g = p.gamma;
    if (!(a > 0.0))
        throw std::invalid_argument("alpha must be positive");
    if (!(g > 0.0))
        throw std::invalid_argument("gamma must be positive");
    using K = OrbitalKind;
    auto delta = [&](int n, Spin s) {
        return so(K::delta_n, n, a, s, "delta_" + std::to_string(n) + "_" + spin_tag(s));
    };
    auto psi3 = [&](K kind, Spin s) {
        const char* name = kind == K::psi3s ? "psi3s" : (kind == K::psi3p ? "psi3p" : "psi3d");
        return so(kind, 0, g, s, std::string(name) + "_" + spin_tag(s));
    };
    switch (p.rank) {
    case RankId::r3s:
        return {so(K::kellner, 0, a, Spin::down, "psi1_dn"), so(K::kellner, 0, a, Spin::up, "psi1_up"),
                psi3(K::psi3s, Spin::down)};
    case RankId::r3p:
        return {so(K::kellner, 0, a, Spin::down, "psi1_dn"), so(K::kellner, 0, a, Spin::up, "psi1_up"),
                psi3(K::psi3p, Spin::down)};
    case RankId::r3d:
        return {so(K::kellner, 0, a, Spin::down, "psi1_dn"), so(K::kellner, 0, a, Spin::up, "psi1_up"),
                psi3(K::psi3d, Spin::down)};
    case RankId::r5:
        return {psi3(K::psi3p, Spin::down), delta(1, Spin::down), delta(2, Spin::down),
                delta(1, Spin::up), delta(2, Spin::up)};
    case RankId::r6a:
        return {delta(1, Spin::up),   delta(1, Spin::down), psi3(K::psi3p, Spin::down),
                delta(2, Spin::down), delta(2, Spin::up),   psi3(K::psi3p, Spin::up)};
    case RankId::r6b:
        return {delta(1, Spin::up),   delta(1, Spin::down), psi3(K::psi3p, Spin::down),
                delta(2, Spin::down), delta(2, Spin::up),   delta(3, Spin::down)};
    case RankId::r7: {
        BasisParams q = p;
        q.rank = RankId::r6b;
        auto list = standard_basis(q);
        list.push_back(delta(3, Spin::up));
        return list;
    }
    case RankId::r8: {
        BasisParams q = p;
        q.rank = RankId::r7;
        auto list = standard_basis(q);
        list.push_back(delta(4, Spin::down));
        return list;
    }
    }
    throw std::invalid_argument("unknown rank id");
}

OrthoTransform gram_schmidt(const std::vector<SpinOrbital>& primitives) {
    const std::size_t m = primitives.size();
    Matrix s(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            s(i, j) = primitives[i].spin == primitives[j].spin
                          ? overlap(primitives[i].spatial, primitives[j].spatial)
                          : 0.0;

    // Row i of r expands orthonormal orbital i over the primitives. Spin
    // orthogonality makes the cross-sector coefficients vanish on their own.
    Matrix r(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> row(m, 0.0);
        row[i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            // <phi_j | psi_i> = sum_k r_jk S_ki
            double proj = 0.0;
            for (std::size_t k = 0; k <= j; ++k)
                proj += r(j, k) * s(k, i);
            for (std::size_t k = 0; k < m; ++k)
                row[k] -= proj * r(j, k);
        }
        double nrm2 = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                nrm2 += row[a] * s(a, b) * row[b];
        if (nrm2 < 1e-10)
            throw std::runtime_error("gram_schmidt: near-linearly-dependent primitives (pivot " +
                                     std::to_string(nrm2) + ")");
        const double inv = 1.0 / std::sqrt(nrm2);
        for (std::size_t k = 0; k < m; ++k)
            r(i, k) = row[k] * inv;
    }

    OrthoTransform t;
    t.r = r;
    t.orthonormal.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        RadialFunction f;
        for (std::size_t k = 0; k < m; ++k)
            if (r(i, k) != 0.0)
                f += primitives[k].spatial.scaled(r(i, k));
        t.orthonormal.push_back({f, primitives[i].spin, "phi_" + std::to_string(i + 1)});
    }
    return t;
}

IntegralTable primitive_integrals(const std::vector<SpinOrbital>& orbitals) {
    const int m = static_cast<int>(orbitals.size());
    IntegralTable t;
    t.rank = m;
    t.spins.reserve(m);
    for (const auto& o : orbitals)
        t.spins.push_back(o.spin);
    t.kinetic = Matrix(m, m);
    t.nuclear = Matrix(m, m);
    t.two.assign(static_cast<std::size_t>(m) * m * m * m, 0.0);

    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            if (orbitals[i].spin != orbitals[j].spin)
                continue;
            const double p = kinetic(orbitals[i].spatial, orbitals[j].spatial);
            const double k = nuclear(orbitals[i].spatial, orbitals[j].spatial);
            t.kinetic(i, j) = t.kinetic(j, i) = p;
            t.nuclear(i, j) = t.nuclear(j, i) = k;
        }

    // (ij|kl): one value per 8-fold symmetry orbit, spins matched pairwise.
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            if (orbitals[i].spin != orbitals[j].spin)
                continue;
            for (int k = 0; k < m; ++k)
                for (int l = k; l < m; ++l) {
                    if (orbitals[k].spin != orbitals[l].spin)
                        continue;
                    if (k * m + l < i * m + j)
                        continue;
                    const double v = coulomb(orbitals[i].spatial, orbitals[j].spatial,
                                             orbitals[k].spatial, orbitals[l].spatial);
                    const int ii[2] = {i, j}, kk[2] = {k, l};
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            t.two_electron(ii[a], ii[1 - a], kk[b], kk[1 - b]) = v;
                            t.two_electron(kk[b], kk[1 - b], ii[a], ii[1 - a]) = v;
                        }
                }
        }
    return t;
}

IntegralTable build_integrals(const std::vector<SpinOrbital>& primitives,
                              const OrthoTransform& transform) {
    const int m = static_cast<int>(primitives.size());
    if (static_cast<int>(transform.r.rows()) != m)
        throw std::invalid_argument("build_integrals: transform/primitive size mismatch");
    const IntegralTable prim = primitive_integrals(primitives);
    const Matrix& r = transform.r;

    IntegralTable t;
    t.rank = m;
    t.spins = prim.spins;
    t.kinetic = r * prim.kinetic * r.transposed();
    t.nuclear = r * prim.nuclear * r.transposed();

    // Four one-index passes of iota = (R x R x R x R) Upsilon.
    std::vector<double> cur = prim.two;
    std::vector<double> next(cur.size());
    const std::size_t mm = static_cast<std::size_t>(m);
    for (int pass = 0; pass < 4; ++pass) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t a = 0; a < mm; ++a)
            for (std::size_t b = 0; b < mm; ++b)
                for (std::size_t c = 0; c < mm; ++c)
                    for (std::size_t d = 0; d < mm; ++d) {
                        // transform the leading index, then rotate it to the back
                        double acc = 0.0;
                        for (std::size_t e = 0; e < mm; ++e)
                            acc += r(a, e) * cur[((e * mm + b) * mm + c) * mm + d];
                        next[((b * mm + c) * mm + d) * mm + a] = acc;
                    }
        std::swap(cur, next);
    }
    t.two = std::move(cur);
    return t;
}

double quadrature_check(const std::vector<SpinOrbital>& orbitals, const QuadratureOracle& oracle) {
    const int m = static_cast<int>(orbitals.size());
    double worst = 0.0;
    auto update = [&](double analytic, double reference) {
        const double err = std::fabs(analytic - reference) / std::max(1.0, std::fabs(reference));
        worst = std::max(worst, err);
    };
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            if (orbitals[i].spin != orbitals[j].spin)
                continue;
            update(overlap(orbitals[i].spatial, orbitals[j].spatial),
                   oracle.overlap(orbitals[i].spatial, orbitals[j].spatial));
            update(kinetic(orbitals[i].spatial, orbitals[j].spatial),
                   oracle.kinetic(orbitals[i].spatial, orbitals[j].spatial));
            update(nuclear(orbitals[i].spatial, orbitals[j].spatial),
                   oracle.nuclear(orbitals[i].spatial, orbitals[j].spatial));
            for (int k = 0; k < m; ++k)
                for (int l = k; l < m; ++l) {
                    if (orbitals[k].spin != orbitals[l].spin || k * m + l < i * m + j)
                        continue;
                    update(coulomb(orbitals[i].spatial, orbitals[j].spatial, orbitals[k].spatial,
                                   orbitals[l].spatial),
                           oracle.coulomb(orbitals[i].spatial, orbitals[j].spatial,
                                          orbitals[k].spatial, orbitals[l].spatial));
                }
        }
    return worst;
}

} // namespace qpin

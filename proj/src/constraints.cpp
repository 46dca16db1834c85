#include "quasipin/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qpin {

namespace {

Constraint row(std::string id, double bound, std::initializer_list<double> coeffs) {
    return {std::move(id), std::vector<double>(coeffs), bound};
}

ConstraintCatalog make_rank5() {
    // the rank-6 catalog restricted to lambda_6 = 0
    ConstraintCatalog c;
    c.rank = 5;
    c.items = {
        row("pauli1", 1.0, {1, 0, 0, 0, 0}),
        row("bd2", 1.0, {0, 1, 0, 0, 1}),
        row("bd3", 1.0, {0, 0, 1, 1, 0}),
        row("d", 0.0, {0, 0, 0, 1, -1}),
    };
    c.note = "rank-6 constraints at lambda_6 = 0; together with the trace they pin "
             "lambda_1 = 1, lambda_2 = lambda_3, lambda_4 = lambda_5";
    return c;
}

ConstraintCatalog make_rank6() {
    ConstraintCatalog c;
    c.rank = 6;
    c.items = {
        row("bd1", 1.0, {1, 0, 0, 0, 0, 1}),
        row("bd2", 1.0, {0, 1, 0, 0, 1, 0}),
        row("bd3", 1.0, {0, 0, 1, 1, 0, 0}),
        row("d", 0.0, {0, 0, 0, 1, -1, -1}),
    };
    c.note = "Borland-Dennis inequalities (saturated by the trace) plus the single "
             "remaining inequality delta = l5 + l6 - l4 >= 0";
    return c;
}

ConstraintCatalog make_rank7() {
    ConstraintCatalog c;
    c.rank = 7;
    c.items = {
        row("d1", 2.0, {1, 1, 0, 1, 0, 0, 1}),
        row("d2", 2.0, {1, 1, 0, 0, 1, 1, 0}),
        row("d3", 2.0, {0, 1, 1, 1, 1, 0, 0}),
        row("d4", 2.0, {1, 0, 1, 1, 0, 1, 0}),
    };
    return c;
}

ConstraintCatalog make_rank8() {
    ConstraintCatalog c;
    c.rank = 8;
    c.items = {
        row("d1", 2.0, {1, 1, 0, 1, 0, 0, 1, 0}),
        row("d2", 2.0, {1, 1, 0, 0, 1, 1, 0, 0}),
        row("d3", 2.0, {0, 1, 1, 1, 1, 0, 0, 0}),
        row("d4", 2.0, {1, 0, 1, 1, 0, 1, 0, 0}),
        row("d5", 1.0, {1, 1, -1, 0, 0, 0, 0, 0}),
        row("d6", 1.0, {0, 1, 0, 0, 1, 0, -1, 0}),
        row("d7", 1.0, {1, 0, 0, 0, 0, 1, -1, 0}),
        row("d8", 1.0, {0, 1, 0, 1, 0, -1, 0, 0}),
        row("d9", 1.0, {1, 0, 0, 1, -1, 0, 0, 0}),
        row("d10", 1.0, {0, 0, 1, 1, 0, 0, -1, 0}),
        row("d11", 1.0, {1, 0, 0, 0, 0, 0, 0, 1}),
        row("d12", 0.0, {0, 1, -1, 0, 0, -1, -1, 0}),
        row("d13", 0.0, {0, 0, 0, 1, -1, -1, -1, 0}),
        row("d14", 0.0, {1, 0, -1, 0, -1, 0, -1, 0}),
        row("d15", 2.0, {0, 1, 1, 2, -1, 0, -1, 1}),
        row("d16", 2.0, {1, 0, 1, 2, -1, -1, 0, 1}),
        row("d17", 2.0, {1, 2, -1, 1, -1, 0, 0, 1}),
        row("d18", 2.0, {1, 2, -1, 0, 1, -1, 0, 1}),
        row("d19", 0.0, {1, 1, -2, -1, -1, 0, 0, 0}),
        row("d21", 0.0, {1, 0, -1, -1, -1, 0, 0, 1}),
        row("d23", 1.0, {2, -1, 0, 1, -2, -1, 0, 1}),
        row("d24", 1.0, {0, 0, 1, 2, -2, -1, -1, 1}),
        row("d25", 1.0, {2, -1, 0, -1, 0, 1, -2, 1}),
        row("d26", 1.0, {2, 1, -2, -1, 0, -1, 0, 1}),
        row("d27", 1.0, {1, 2, -2, 0, -1, -1, 0, 1}),
        row("d29", 0.0, {-1, 0, 1, 2, -3, -2, -1, 1}),
        row("d30", 0.0, {2, 1, -3, -2, -1, -1, 0, 1}),
        row("d31", 0.0, {1, 2, -3, -1, -2, -1, 0, 1}),
    };
    c.note = "28 of the 31 inequalities for wedge^3 H_8; identifiers 20, 22 and 28 "
             "were not displayed in the source table and are not reconstructed here";
    return c;
}

} // namespace

const ConstraintCatalog& catalog_for(int rank) {
    static const ConstraintCatalog c5 = make_rank5();
    static const ConstraintCatalog c6 = make_rank6();
    static const ConstraintCatalog c7 = make_rank7();
    static const ConstraintCatalog c8 = make_rank8();
    switch (rank) {
    case 5: return c5;
    case 6: return c6;
    case 7: return c7;
    case 8: return c8;
    }
    throw std::invalid_argument("no constraint catalog for rank " + std::to_string(rank));
}

ConstraintReport evaluate(const OccupationSpectrum& spectrum, const ConstraintCatalog& catalog) {
    const int m = spectrum.rank();
    if (m != catalog.rank)
        throw std::invalid_argument("spectrum rank does not match catalog rank");
    for (int i = 0; i + 1 < m; ++i)
        if (spectrum.lambdas[i] < spectrum.lambdas[i + 1] - 1e-12)
            throw std::invalid_argument("occupation spectrum must be descending");

    ConstraintReport report;
    report.rank = m;
    for (const auto& c : catalog.items) {
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            s += c.coeffs[i] * spectrum.lambdas[i];
        ConstraintValue v;
        v.id = c.id;
        v.delta = c.bound - s;
        v.pinned = v.delta <= pinning_tolerance;
        if (m == 6 && c.id == "d")
            v.ratio = v.delta / spectrum.lambdas[m - 1];
        report.values.push_back(std::move(v));
    }
    if (m == 6)
        for (int r = 0; r < 3; ++r)
            report.borland_dennis_residuals.push_back(
                std::fabs(spectrum.lambdas[r] + spectrum.lambdas[5 - r] - 1.0));
    return report;
}

std::vector<Determinant> selection_rule_dets(int rank,
                                             const std::vector<std::string>& saturated_ids) {
    const std::set<std::string> ids(saturated_ids.begin(), saturated_ids.end());
    std::vector<const Constraint*> active;

    const ConstraintCatalog& cat = catalog_for(rank);
    if (rank == 5) {
        if (ids != std::set<std::string>{"structural"})
            throw std::invalid_argument("rank-5 selection supports only the structural case");
        for (const auto& c : cat.items)
            active.push_back(&c);
    } else if (rank == 6) {
        if (ids != std::set<std::string>{"bd1", "bd2", "bd3", "d"})
            throw std::invalid_argument("rank-6 selection requires all four constraints saturated");
        for (const auto& c : cat.items)
            active.push_back(&c);
    } else if (rank == 7 || rank == 8) {
        if (!ids.count("d1") || !ids.count("d2"))
            throw std::invalid_argument("selection requires at least d1 and d2 saturated");
        for (const auto& id : ids) {
            if (id != "d1" && id != "d2" && id != "d3" && id != "d4")
                throw std::invalid_argument("unrecognized saturated constraint " + id);
            for (const auto& c : cat.items)
                if (c.id == id)
                    active.push_back(&c);
        }
    } else {
        throw std::invalid_argument("no selection rules for rank " + std::to_string(rank));
    }

    std::vector<Determinant> allowed;
    for (const auto& d : enumerate_determinants(rank)) {
        bool ok = true;
        for (const auto* c : active) {
            double s = 0.0;
            for (int p : d.orb)
                s += c->coeffs[p];
            if (std::fabs(s - c->bound) > 1e-12) {
                ok = false;
                break;
            }
        }
        if (ok)
            allowed.push_back(d);
    }
    return allowed;
}

double projection_norm(const AmplitudeTensor& tensor, const std::vector<Determinant>& dets) {
    double s = 0.0;
    for (const auto& d : dets) {
        const double c = tensor.c[triple_index(d.orb[0], d.orb[1], d.orb[2], tensor.rank)];
        s += c * c;
    }
    return s;
}

ProjectionBound projection_bounds(const OccupationSpectrum& spectrum, int rank, double delta) {
    ProjectionBound b;
    b.delta = delta;
    b.xi = 3.0 - spectrum.lambdas[0] - spectrum.lambdas[1] - spectrum.lambdas[2];
    if (rank == 6) {
        if (!(b.xi < 0.25))
            throw std::domain_error("projection bound requires xi < 1/4 at rank 6");
        b.lower = 1.0 - (1.0 + 2.0 * b.xi) / (1.0 - 4.0 * b.xi) * delta;
    } else if (rank == 7) {
        if (!(b.xi < 1.0 / 11.0))
            throw std::domain_error("projection bound requires xi < 1/11 at rank 7");
        b.lower = 1.0 - (1.0 + 9.0 * b.xi) / (1.0 - 11.0 * b.xi) * delta;
    } else {
        throw std::invalid_argument("projection bounds exist for ranks 6 and 7 only");
    }
    b.upper = 1.0 - 0.5 * delta;
    return b;
}

namespace {

// Phase-1 simplex: feasibility of A x = b, x >= 0, via minimizing the sum
// of artificial variables with Bland's rule. Sizes here are tiny.
bool lp_feasible(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t rows = a.size();
    const std::size_t nvars = a.empty() ? 0 : a[0].size();
    for (std::size_t i = 0; i < rows; ++i)
        if (b[i] < 0.0) {
            for (auto& v : a[i])
                v = -v;
            b[i] = -b[i];
        }

    // tableau with artificials appended
    const std::size_t total = nvars + rows;
    std::vector<std::vector<double>> t(rows + 1, std::vector<double>(total + 1, 0.0));
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < nvars; ++j)
            t[i][j] = a[i][j];
        t[i][nvars + i] = 1.0;
        t[i][total] = b[i];
        basis[i] = nvars + i;
    }
    // objective row: minimize sum of artificials
    for (std::size_t j = 0; j <= total; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            s += t[i][j];
        t[rows][j] = (j >= nvars && j < total) ? s - 1.0 : s;
    }

    for (int guard = 0; guard < 10000; ++guard) {
        std::size_t pivot_col = total;
        for (std::size_t j = 0; j < total; ++j)
            if (t[rows][j] > 1e-11) { // Bland: first improving column
                pivot_col = j;
                break;
            }
        if (pivot_col == total)
            break;
        std::size_t pivot_row = rows;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][pivot_col] > 1e-11) {
                const double ratio = t[i][total] / t[i][pivot_col];
                if (pivot_row == rows || ratio < best_ratio - 1e-14 ||
                    (std::fabs(ratio - best_ratio) <= 1e-14 && basis[i] < basis[pivot_row])) {
                    pivot_row = i;
                    best_ratio = ratio;
                }
            }
        }
        if (pivot_row == rows)
            return false; // unbounded phase-1 cannot happen; treat as infeasible
        const double pv = t[pivot_row][pivot_col];
        for (auto& v : t[pivot_row])
            v /= pv;
        for (std::size_t i = 0; i <= rows; ++i) {
            if (i == pivot_row)
                continue;
            const double f = t[i][pivot_col];
            if (f == 0.0)
                continue;
            for (std::size_t j = 0; j <= total; ++j)
                t[i][j] -= f * t[pivot_row][j];
        }
        basis[pivot_row] = pivot_col;
    }
    return t[rows][total] < 1e-9;
}

} // namespace

bool derivable_from(const ConstraintCatalog& catalog, const std::vector<double>& coeffs,
                    double bound, bool last_lambda_zero) {
    const int m = catalog.rank;
    // identity to match:  sum_k t_k (b_k - c_k . l) + sum_j s_j (l_j - l_{j+1})
    //                     + s_m l_m + u (3 - sum l) [+ w l_m]  ==  bound - coeffs . l
    // with t, s >= 0 and u, w free (split into +/- parts).
    const std::size_t n_rows = catalog.items.size();
    const std::size_t n_ord = m; // s_1..s_{m-1} for ordering, s_m for l_m >= 0
    std::size_t nvars = n_rows + n_ord + 2 + (last_lambda_zero ? 2 : 0);

    std::vector<std::vector<double>> a(m + 1, std::vector<double>(nvars, 0.0));
    std::vector<double> rhs(m + 1, 0.0);

    // constant part
    for (std::size_t k = 0; k < n_rows; ++k)
        a[0][k] = catalog.items[k].bound;
    a[0][n_rows + n_ord] = 3.0;
    a[0][n_rows + n_ord + 1] = -3.0;
    rhs[0] = bound;

    // coefficient of lambda_i
    for (int i = 0; i < m; ++i) {
        auto& arow = a[i + 1];
        for (std::size_t k = 0; k < n_rows; ++k)
            arow[k] = -catalog.items[k].coeffs[i];
        if (i < m - 1)
            arow[n_rows + i] += 1.0; // +s_{i+1} on l_i
        if (i > 0)
            arow[n_rows + i - 1] -= 1.0; // -s_i on l_i
        if (i == m - 1)
            arow[n_rows + m - 1] += 1.0; // l_m >= 0
        arow[n_rows + n_ord] -= 1.0;     // trace, +u part
        arow[n_rows + n_ord + 1] += 1.0; // trace, -u part
        if (last_lambda_zero && i == m - 1) {
            arow[n_rows + n_ord + 2] = 1.0;
            arow[n_rows + n_ord + 3] = -1.0;
        }
        rhs[i + 1] = -(i < static_cast<int>(coeffs.size()) ? coeffs[i] : 0.0);
    }
    return lp_feasible(std::move(a), std::move(rhs));
}

ImplicationReport catalog_consistency(int high_rank, int low_rank) {
    if (low_rank != high_rank - 1)
        throw std::invalid_argument("catalog_consistency expects low = high - 1");
    const ConstraintCatalog& high = catalog_for(high_rank);
    const ConstraintCatalog& low = catalog_for(low_rank);

    ImplicationReport report;
    report.high_rank = high_rank;
    report.low_rank = low_rank;
    report.all_derivable = true;
    for (const auto& c : low.items) {
        Implication imp;
        imp.id = c.id;
        imp.derivable = derivable_from(high, c.coeffs, c.bound, /*last_lambda_zero=*/true);
        report.all_derivable = report.all_derivable && imp.derivable;
        report.implications.push_back(std::move(imp));
    }
    return report;
}

} // namespace qpin

#include "quasipin/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "quasipin/oracles.hpp"
#include "quasipin/report.hpp"

namespace qpin {

namespace {

const RankId all_ranks[] = {RankId::r3s, RankId::r3p, RankId::r3d, RankId::r5,
                            RankId::r6a, RankId::r6b, RankId::r7,  RankId::r8};

bool suite_quadrature(double fault, std::ostream& out) {
    const QuadratureOracle oracle;
    double worst = 0.0;
    for (RankId rank : all_ranks) {
        const auto primitives = standard_basis(reference_params(rank));
        worst = std::max(worst, quadrature_check(primitives, oracle) + std::fabs(fault));
    }
    out << "  analytic vs quadrature, max deviation " << worst << "\n";
    return worst <= 1e-8;
}

bool suite_slater_condon(double fault, std::ostream& out) {
    double worst = 0.0;
    for (RankId rank : {RankId::r3s, RankId::r3p, RankId::r3d, RankId::r5, RankId::r6a,
                        RankId::r6b}) {
        const BasisParams p = reference_params(rank);
        CISystem sys = build_system(p);
        IntegralTable perturbed = sys.integrals;
        perturbed.kinetic(0, 0) += fault;
        perturbed.two_electron(0, 0, 0, 0) += fault;
        for (std::size_t i = 0; i < sys.dets.size(); ++i)
            for (std::size_t j = i; j < sys.dets.size(); ++j) {
                const double rules = slater_condon(sys.dets[i], sys.dets[j], perturbed, p.z);
                const double brute =
                    permutation_expansion_element(sys.dets[i], sys.dets[j], sys.integrals, p.z);
                worst = std::max(worst, std::fabs(rules - brute));
            }
    }
    out << "  Slater-Condon vs permutation expansion, max deviation " << worst << "\n";
    return worst <= 1e-10;
}

bool suite_duality(std::ostream& out) {
    bool ok = true;
    for (RankId rank : {RankId::r5, RankId::r6a, RankId::r6b, RankId::r7, RankId::r8}) {
        const BasisParams p = reference_params(rank);
        const CIState state = ground_state(p);
        const OccupationSpectrum spec = natural_occupations(one_body_rdm(state));
        const DualityPairs dp = duality_pairs(state, spec);
        const int m = spec.rank();

        double spectral = 0.0;
        for (int i = 0; i < m; ++i)
            spectral = std::max(spectral, std::fabs(dp.rho2_spectrum[i] - spec.lambdas[i]));
        ok = ok && spectral <= 1e-9;

        double tr1 = 0.0;
        for (int i = 0; i < m; ++i)
            tr1 += dp.eta1(i, i);
        double tr2 = 0.0;
        for (std::size_t i = 0; i < dp.eta2.rows(); ++i)
            tr2 += dp.eta2(i, i);
        const double holes = m - 3;
        ok = ok && std::fabs(tr1 - holes) <= 1e-9;
        ok = ok && std::fabs(tr2 - holes * (holes - 1) / 2.0) <= 1e-9;

        const Matrix contracted = contract_eta2(dp.eta2, m);
        double cerr = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                cerr = std::max(cerr, std::fabs(contracted(i, j) -
                                                (holes - 1) / 2.0 * dp.eta1(i, j)));
        ok = ok && cerr <= 1e-9;

        if (rank == RankId::r5) {
            const Matrix diff = dp.eta2 * dp.eta2 - dp.eta2;
            ok = ok && diff.max_abs() <= 1e-9;
            out << "  rank 5 eta2 idempotency defect " << diff.max_abs() << "\n";
        }
        out << "  rank " << rank_name(rank) << " rho2 spectrum defect " << spectral
            << ", contraction defect " << cerr << "\n";
    }
    return ok;
}

bool suite_borland_dennis(std::ostream& out) {
    bool ok = true;
    for (RankId rank : {RankId::r6a, RankId::r6b}) {
        const BasisParams p = reference_params(rank);
        const CIState state = ground_state(p);
        const OccupationSpectrum spec = natural_occupations(one_body_rdm(state));
        const ConstraintReport report = evaluate(spec, catalog_for(6));
        double worst = 0.0;
        for (double r : report.borland_dennis_residuals)
            worst = std::max(worst, r);
        double delta = 0.0;
        for (const auto& v : report.values)
            if (v.id == "d")
                delta = v.delta;
        const double margin =
            1.0 + spec.lambdas[2] - spec.lambdas[0] - spec.lambdas[1]; // l1 + l2 <= 1 + l3
        ok = ok && worst <= 1e-9;
        ok = ok && delta >= -1e-9;
        ok = ok && delta <= spec.lambdas[5] + 1e-9;
        ok = ok && std::fabs(margin - delta) <= 1e-9;
        out << "  rank " << rank_name(rank) << " BD residual " << worst << ", delta " << delta
            << "\n";
    }
    return ok;
}

bool suite_catalog(std::ostream& out) {
    bool ok = true;
    for (const auto [high, low] : {std::pair{6, 5}, std::pair{7, 6}, std::pair{8, 7}}) {
        const ImplicationReport rep = catalog_consistency(high, low);
        ok = ok && rep.all_derivable;
        out << "  rank " << high << " -> " << low
            << (rep.all_derivable ? " all constraints derivable" : " UNDERIVABLE constraint")
            << "\n";
    }
    // Pauli principle l1 <= 1 out of the rank-7 rows, no lambda_7 = 0 needed
    const bool pauli =
        derivable_from(catalog_for(7), {1, 0, 0, 0, 0, 0, 0}, 1.0, /*last_lambda_zero=*/false);
    ok = ok && pauli;
    out << "  Pauli bound from rank-7 rows " << (pauli ? "derivable" : "UNDERIVABLE") << "\n";
    return ok;
}

} // namespace

int run_selftest(const SelftestConfig& config, std::ostream& out) {
    struct Suite {
        const char* name;
        std::function<bool(std::ostream&)> run;
    };
    const double fault = config.fault_injection;
    const std::vector<Suite> suites = {
        {"quadrature", [fault](std::ostream& o) { return suite_quadrature(fault, o); }},
        {"slater-condon", [fault](std::ostream& o) { return suite_slater_condon(fault, o); }},
        {"duality", [](std::ostream& o) { return suite_duality(o); }},
        {"borland-dennis", [](std::ostream& o) { return suite_borland_dennis(o); }},
        {"catalog", [](std::ostream& o) { return suite_catalog(o); }},
    };

    int failures = 0;
    int selected = 0;
    for (const auto& suite : suites) {
        if (!config.filter.empty() &&
            std::string(suite.name).find(config.filter) == std::string::npos)
            continue;
        ++selected;
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = suite.run(detail);
        } catch (const std::exception& e) {
            detail << "  exception: " << e.what() << "\n";
        }
        out << "[selftest] " << suite.name << ": " << (ok ? "PASS" : "FAIL") << "\n"
            << detail.str();
        if (!ok)
            ++failures;
    }
    if (selected == 0) {
        out << "[selftest] no suite matches filter '" << config.filter << "'\n";
        return 1;
    }
    out << "[selftest] " << (selected - failures) << "/" << selected << " suites passed\n";
    return failures == 0 ? 0 : 1;
}

} // namespace qpin

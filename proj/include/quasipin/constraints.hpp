#ifndef QUASIPIN_CONSTRAINTS_HPP
#define QUASIPIN_CONSTRAINTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "quasipin/density.hpp"

namespace qpin {

/// One generalized Pauli inequality in the form
///   delta := bound - <coeffs, lambda> >= 0.
struct Constraint {
    std::string id;
    std::vector<double> coeffs;
    double bound;
};

/// Static catalog of the known inequalities for one rank. The rank-8 list
/// transcribes the 28 displayed rows; identifiers 20, 22 and 28 were never
/// displayed and are deliberately absent (see note).
struct ConstraintCatalog {
    int rank;
    std::vector<Constraint> items;
    std::string note;
};

const ConstraintCatalog& catalog_for(int rank); // 5..8

struct ConstraintValue {
    std::string id;
    double delta;
    bool pinned;                 // delta <= 1e-9
    std::optional<double> ratio; // delta / lambda_M, rank-6 delta only
};

struct ConstraintReport {
    int rank = 0;
    std::vector<ConstraintValue> values;
    std::vector<double> borland_dennis_residuals; // rank 6: |l_r + l_{7-r} - 1|
};

constexpr double pinning_tolerance = 1e-9;

ConstraintReport evaluate(const OccupationSpectrum& spectrum, const ConstraintCatalog& catalog);

/// Natural-orbital determinants allowed when the given constraints
/// saturate: a triple T survives a saturated row iff its indicator sum
/// equals the bound. Recognized combinations:
///   rank 5: {"structural"}           -> 2 determinants
///   rank 6: {"bd1","bd2","bd3","d"}  -> 3
///   rank 7/8: {"d1","d2"} plus optionally "d3" and/or "d4"
std::vector<Determinant> selection_rule_dets(int rank,
                                             const std::vector<std::string>& saturated_ids);

/// Sum of squared amplitudes over the listed determinants.
double projection_norm(const AmplitudeTensor& tensor, const std::vector<Determinant>& dets);

/// Bounds on the pinned-subspace projection in terms of
/// xi = 3 - l1 - l2 - l3 and the saturation defect delta. Defined for
/// xi < 1/4 at rank 6 and xi < 1/11 at rank 7; throws std::domain_error
/// outside that region.
struct ProjectionBound {
    double xi = 0.0;
    double delta = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

ProjectionBound projection_bounds(const OccupationSpectrum& spectrum, int rank, double delta);

/// Derivability of each lower-rank constraint from a higher catalog with
/// the last occupation set to zero: a non-negative combination of catalog
/// rows and ordering constraints plus free multiples of the trace identity
/// and of lambda_M itself.
struct Implication {
    std::string id;
    bool derivable = false;
};

struct ImplicationReport {
    int high_rank = 0;
    int low_rank = 0;
    std::vector<Implication> implications;
    bool all_derivable = false;
};

ImplicationReport catalog_consistency(int high_rank, int low_rank);

/// Same feasibility test for an arbitrary target inequality
/// bound - <coeffs, lambda> >= 0 over the full rank (no lambda_M = 0).
bool derivable_from(const ConstraintCatalog& catalog, const std::vector<double>& coeffs,
                    double bound, bool last_lambda_zero);

} // namespace qpin

#endif

#pragma once

#include <optional>
#include <string>
#include <variant>

#include "psdisc/metrics.hpp"

namespace psdisc {

// The four projectors steering every equal-support construction: t_max/t_min
// are the extremal eigenprojectors of the relative operator of (rho, sigma);
// p_max/p_min are the supports of their sigma^{-1/2} conjugations. When the
// relative operator has a single eigenvalue cluster the pair coincides and
// the two-subspace constructions are unavailable (degenerate flag).
struct ExtremalSubspaces {
    Projector t_max, t_min;
    Projector p_max, p_min;
    bool degenerate = false;
};

ExtremalSubspaces extremal_subspaces(const ProblemInstance& inst);

// Free parameters of an error-minimizing measurement, one variant per row of
// the construction tables. psi_* are density matrices; residual effects are
// optional PSD operators confined to the stated complement subspace and
// default to zero.
struct EqualC1Params {
    Matrix psi_max;
    double c = 0.0;
    std::optional<Matrix> residual_sigma;
};
struct EqualC2Params {
    Matrix psi_min;
    double c = 0.0;
    std::optional<Matrix> residual_rho;
};
struct EqualC3Params {
    Matrix psi_max;
    Matrix psi_min;
    double c = 0.0;
    double c_r = 0.5;
};
struct Unequal1Params {
    Matrix psi_rho;
    double c1 = 0.0;
    std::optional<Matrix> residual_sigma;
};
struct Unequal2Params {
    Matrix psi_sigma;
    double c2 = 0.0;
    std::optional<Matrix> residual_rho;
};
struct Unequal3Params {
    Matrix psi_rho;
    Matrix psi_sigma;
    double c3 = 0.0;
    double c_r = 0.5;
};

using ConstructionParams = std::variant<EqualC1Params, EqualC2Params, EqualC3Params,
                                        Unequal1Params, Unequal2Params, Unequal3Params>;

std::string variant_name(const ConstructionParams& params);

// Largest admissible c for the given psi's (and c_r): the inverse max-norm
// bound of the corresponding table row. Ignores the c stored in params.
double max_c(const ProblemInstance& inst, const ConstructionParams& params);

// Equal-support construction. C1: L_rho = c*psi_max/Tr(psi_max sigma) with
// optional residual L_sigma in P(I-Pi_sigma); C2 mirrored; C3 splits c between
// the two normalized psi's by c_r. Validates case match, memberships, the c
// bound, and overall measurement validity.
Measurement construct_equal(const ProblemInstance& inst, const ConstructionParams& params);

// Unequal-support construction per the zero-error sets: set 1 detects rho
// only, set 2 sigma only, set 3 both (incomparable supports required).
Measurement construct_unequal(const ProblemInstance& inst, const ConstructionParams& params);

struct MembershipReport {
    bool minimizing = false;
    std::string detail;                    // first failed clause when not minimizing
    std::optional<EqualCase> equal_case;   // set by the equal-support checker
    std::optional<int> set_tag;            // 1, 2 or 3 from the unequal checker
};

// Decides membership in the equal-support error-minimizing set by the
// conjugated-support conditions of the matching case.
MembershipReport is_error_minimizing_equal(const ProblemInstance& inst, const Measurement& m);

// Decides membership in one of the three zero-error sets (support confinement
// plus the positivity pattern of the detection probabilities).
MembershipReport is_error_minimizing_unequal(const ProblemInstance& inst, const Measurement& m);

}  // namespace psdisc

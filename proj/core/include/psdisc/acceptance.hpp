#pragma once

#include <cstdint>
#include <optional>

#include "psdisc/construct.hpp"

namespace psdisc {

// How an upsilon value was obtained. Everything except Numeric is an exact
// closed form; Numeric is an alternating-maximization lower bound (best-effort
// maximum, see UpsilonOptions).
enum class UpsilonBranch { Endpoint, RankOne, BlockDiagonal, Numeric };

struct UpsilonOptions {
    int starts = 8;              // seeded multi-starts of the alternating scheme
    uint64_t seed = 0x5D15CE11ull;
    double conv_tol = 1e-10;     // stop when a full round improves c by less
    int max_rounds = 200;
    // Warm-start densities (used by grid continuation); when present they
    // replace the deterministic first start.
    std::optional<Matrix> warm_psi1, warm_psi2;
};

struct UpsilonResult {
    double value = 0.0;
    UpsilonBranch branch = UpsilonBranch::Numeric;
    // Witness densities psi1 in S(pi1), psi2 in S(pi2) with
    // value * (r*psi1 + (1-r)*psi2) <= sigma. At r = 0 (resp. 1) the
    // unconstrained psi1 (resp. psi2) is filled with the uniform density.
    Matrix psi1, psi2;
};

// Largest c such that c(r*psi1 + (1-r)*psi2) <= sigma for some densities
// psi_j confined to range(pi_j). Requires Tr(pi1*pi2) = 0 and both projectors
// inside supp(sigma). The operator is first restricted to
// sigma^{1/2} P sigma^{1/2}, P the support of sigma^{-1/2}(pi1+pi2)sigma^{-1/2}
// (this leaves the value unchanged and is what makes the closed forms below
// applicable); then:
//   r in {0,1}        -> Tr(P_j sigma~), P_j the support of the conjugated pi_j
//   both ranks 1      -> R_min(sigma~, r*pi1 + (1-r)*pi2)
//   sigma~ block-diag -> min(Tr(pi1 sigma~)/r, Tr(pi2 sigma~)/(1-r))
//   otherwise         -> seeded alternating maximization (lower bound).
UpsilonResult upsilon(const Matrix& sigma_op, const Projector& pi1, const Projector& pi2,
                      double r, const UpsilonOptions& opts = {}, const Tolerances& tol = {});

enum class AcceptanceMethod { ClosedForm, NumericUpsilon };

// Maximum acceptance over the error-minimizing set, for one target state. The
// achieving measurement attains the target component exactly (up to rounding)
// and is itself error-minimizing.
struct AcceptanceReport {
    double a_rho = 0.0;
    double a_sigma = 0.0;
    std::optional<Measurement> achieving;
    std::optional<double> c_r_star;  // engaged when the maximizer splits (case C3)
    AcceptanceMethod method = AcceptanceMethod::ClosedForm;
};

// One report per target state; outside case C3 a single measurement maximizes
// both acceptances and the two reports coincide.
struct MaxAcceptance {
    AcceptanceReport for_rho;
    AcceptanceReport for_sigma;
};

// Equal supports. C1: (R_max * Tr(P_max sigma), Tr(P_max sigma)) achieved by
// {P_max, 0, .}; C2 mirrored with P_min; C3: dense c_r grid (1001 points) plus
// golden-section refinement of the two upsilon objectives.
MaxAcceptance max_acceptance_equal(const ProblemInstance& inst);

// Number of grid points of the C3 sweep.
inline constexpr int kCrGridPoints = 1001;

// Unequal supports: closed-form table keyed by the support relation, achieved
// by the projector-difference measurements {Pi_union - Pi_sigma, 0, .} and
// {0, Pi_union - Pi_rho, .}.
MaxAcceptance max_acceptance_unequal(const ProblemInstance& inst);

// Acceptance pair of a constructed measurement as a closed form of its
// parameters: C1 (c*R_max, c); C2 (c*R_min, c); C3 (c*(c_r*R_max +
// (1-c_r)*R_min), c); set 1 (c1, 0); set 2 (0, c2); set 3 (c3*c_r,
// c3*(1-c_r)). Validates the params exactly like the construct functions.
AcceptancePair acceptance_from_params(const ProblemInstance& inst,
                                      const ConstructionParams& params);

}  // namespace psdisc

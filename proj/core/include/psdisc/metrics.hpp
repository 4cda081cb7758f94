#pragma once

#include <optional>
#include <string>
#include <utility>

#include "psdisc/states.hpp"

namespace psdisc {

enum class SupportRelation { Equal, SigmaInsideRho, RhoInsideSigma, Incomparable };
enum class EqualCase { C1, C2, C3 };

struct CaseLabel {
    SupportRelation support = SupportRelation::Equal;
    std::optional<EqualCase> equal_case;  // engaged iff support == Equal

    bool equal_supports() const { return support == SupportRelation::Equal; }
};

std::string to_string(SupportRelation r);
std::string to_string(EqualCase c);
// Flat label: "C1"/"C2"/"C3" for equal supports, the relation name otherwise.
std::string to_string(const CaseLabel& label);

// Structural support comparison (containment of eigenvector spans at rank_tol).
SupportRelation classify_support_relation(const DensityOperator& rho,
                                          const DensityOperator& sigma,
                                          const Tolerances& tol = {});

// Regime of the instance: support relation plus, on equal supports, the
// prior-weighted case split C1/C2/C3 (ties within a relative kCaseTol are C3).
CaseLabel classify(const ProblemInstance& inst);

// max(R_max(p_rho*rho, p_sigma*sigma), R_max(p_sigma*sigma, p_rho*rho)) on
// equal supports; +infinity otherwise.
double thompson_xi(const ProblemInstance& inst);

struct MetricsReport {
    double e_s = 0.0;  // in [0, 1/2]
    double xi = 0.0;   // +infinity on unequal supports
    CaseLabel label;
    std::optional<std::pair<double, double>> p_star;  // equal supports only
};

// e_s = 1/(1+Xi), with case label and (on equal supports) the critical prior.
MetricsReport min_postselected_error(const ProblemInstance& inst);

// Tr(p_sigma*L_rho*sigma + p_rho*L_sigma*rho) / Tr((L_rho+L_sigma)(p_rho*rho +
// p_sigma*sigma)); empty when the denominator is below 1e-12 (all-reject: the
// value is undefined, not zero).
std::optional<double> postselected_error(const ProblemInstance& inst, const Measurement& m);

struct AcceptancePair {
    double a_rho = 0.0;
    double a_sigma = 0.0;
};

// A_rho = Tr((L_rho+L_sigma) rho), A_sigma likewise with sigma.
AcceptancePair acceptance(const ProblemInstance& inst, const Measurement& m);

// (p_rho*, p_sigma*) with p_rho* = sqrt(R_max(sigma,rho)) /
// (sqrt(R_max(rho,sigma)) + sqrt(R_max(sigma,rho))). Throws UnequalSupports.
std::pair<double, double> critical_prior(const DensityOperator& rho, const DensityOperator& sigma,
                                         const Tolerances& tol = {});

}  // namespace psdisc

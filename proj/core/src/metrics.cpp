#include "psdisc/metrics.hpp"

#include <cmath>
#include <limits>

namespace psdisc {

std::string to_string(SupportRelation r) {
    switch (r) {
        case SupportRelation::Equal: return "Equal";
        case SupportRelation::SigmaInsideRho: return "SigmaInsideRho";
        case SupportRelation::RhoInsideSigma: return "RhoInsideSigma";
        default: return "Incomparable";
    }
}

std::string to_string(EqualCase c) {
    switch (c) {
        case EqualCase::C1: return "C1";
        case EqualCase::C2: return "C2";
        default: return "C3";
    }
}

std::string to_string(const CaseLabel& label) {
    return label.equal_case ? to_string(*label.equal_case) : to_string(label.support);
}

SupportRelation classify_support_relation(const DensityOperator& rho,
                                          const DensityOperator& sigma, const Tolerances& tol) {
    const Projector pr = support_projector(rho.mat(), tol.rank_tol);
    const Projector ps = support_projector(sigma.mat(), tol.rank_tol);
    // range(A) inside range(B) iff Tr(P_A P_B) = rank(A): the trace equals the
    // sum of squared principal-angle cosines, each in [0,1], with rank(A) terms.
    const double overlap = trace_prod_real(pr.mat, ps.mat);
    const bool sigma_inside = overlap >= static_cast<double>(ps.rank) - kMembershipTol;
    const bool rho_inside = overlap >= static_cast<double>(pr.rank) - kMembershipTol;
    if (sigma_inside && rho_inside) return SupportRelation::Equal;
    if (sigma_inside) return SupportRelation::SigmaInsideRho;
    if (rho_inside) return SupportRelation::RhoInsideSigma;
    return SupportRelation::Incomparable;
}

CaseLabel classify(const ProblemInstance& inst) {
    CaseLabel label;
    label.support = classify_support_relation(inst.rho, inst.sigma, inst.tol);
    if (label.support != SupportRelation::Equal) return label;

    const Matrix wr = inst.p_rho * inst.rho.mat();
    const Matrix ws = inst.p_sigma() * inst.sigma.mat();
    const double a = r_max(wr, ws, inst.tol.rank_tol);
    const double b = r_max(ws, wr, inst.tol.rank_tol);
    if (std::abs(a - b) <= kCaseTol * std::max(a, b))
        label.equal_case = EqualCase::C3;
    else
        label.equal_case = a > b ? EqualCase::C1 : EqualCase::C2;
    return label;
}

double thompson_xi(const ProblemInstance& inst) {
    if (classify_support_relation(inst.rho, inst.sigma, inst.tol) != SupportRelation::Equal)
        return std::numeric_limits<double>::infinity();
    const Matrix wr = inst.p_rho * inst.rho.mat();
    const Matrix ws = inst.p_sigma() * inst.sigma.mat();
    return std::max(r_max(wr, ws, inst.tol.rank_tol), r_max(ws, wr, inst.tol.rank_tol));
}

MetricsReport min_postselected_error(const ProblemInstance& inst) {
    MetricsReport rep;
    rep.label = classify(inst);
    rep.xi = rep.label.equal_supports() ? thompson_xi(inst)
                                        : std::numeric_limits<double>::infinity();
    rep.e_s = 1.0 / (1.0 + rep.xi);  // 0 on unequal supports (xi infinite)
    if (rep.label.equal_supports())
        rep.p_star = critical_prior(inst.rho, inst.sigma, inst.tol);
    return rep;
}

std::optional<double> postselected_error(const ProblemInstance& inst, const Measurement& m) {
    check_same_dim(m.lambda_rho, inst.rho.mat(), "postselected_error");
    const double pr = inst.p_rho, ps = inst.p_sigma();
    const double wrong = ps * trace_prod_real(m.lambda_rho, inst.sigma.mat()) +
                         pr * trace_prod_real(m.lambda_sigma, inst.rho.mat());
    const Matrix mixture = pr * inst.rho.mat() + ps * inst.sigma.mat();
    const double accept = trace_prod_real(m.lambda_rho + m.lambda_sigma, mixture);
    if (accept < 1e-12) return std::nullopt;
    return wrong / accept;
}

AcceptancePair acceptance(const ProblemInstance& inst, const Measurement& m) {
    check_same_dim(m.lambda_rho, inst.rho.mat(), "acceptance");
    const Matrix sum = m.lambda_rho + m.lambda_sigma;
    return AcceptancePair{trace_prod_real(sum, inst.rho.mat()),
                          trace_prod_real(sum, inst.sigma.mat())};
}

std::pair<double, double> critical_prior(const DensityOperator& rho, const DensityOperator& sigma,
                                         const Tolerances& tol) {
    if (classify_support_relation(rho, sigma, tol) != SupportRelation::Equal)
        throw UnequalSupports("critical_prior: defined only for equal supports");
    const double fwd = std::sqrt(r_max(rho.mat(), sigma.mat(), tol.rank_tol));
    const double rev = std::sqrt(r_max(sigma.mat(), rho.mat(), tol.rank_tol));
    const double p = rev / (fwd + rev);
    return {p, 1.0 - p};
}

}  // namespace psdisc

#include "psdisc/construct.hpp"

#include <cmath>

namespace psdisc {

namespace {

constexpr double kPositiveTraceTol = 1e-10;  // "nonzero detection weight" floor

// Relative slack on the c bound so a caller passing exactly max_c never trips
// on the last rounding bit.
bool exceeds_bound(double c, double bound) { return c > bound * (1.0 + 1e-12) + 1e-300; }

Matrix complement(const Projector& p) { return Matrix::identity(p.mat.dim()) - p.mat; }

// Validated density psi confined to range(allowed); returns psi and its
// overlap Tr(psi * weight) which must be positive.
struct PreparedPsi {
    Matrix psi;
    double overlap;
};

PreparedPsi prepare_psi(const Matrix& raw, const Matrix& allowed, const Matrix& weight,
                        const Tolerances& tol, const std::string& who) {
    const DensityOperator d = DensityOperator::create(raw, tol);
    if (membership_defect(d.mat(), allowed) > kMembershipTol)
        throw MembershipViolated(who + " lies outside its admissible subspace");
    const double overlap = trace_prod_real(d.mat(), weight);
    if (overlap <= kPositiveTraceTol)
        throw ZeroOverlap(who + " has vanishing overlap with its normalizing state");
    return {d.mat(), overlap};
}

struct EqualPrep {
    EqualCase required;
    Matrix dir_rho, dir_sigma;  // L_rho = c * dir_rho, L_sigma = c * dir_sigma
    double bound = 0.0;
    double c = 0.0;
    std::optional<Matrix> residual;   // validated residual effect
    bool residual_on_sigma = true;    // residual fills L_sigma (C1) or L_rho (C2)
};

Matrix validated_residual(const Matrix& raw, const Matrix& allowed, const Tolerances& tol,
                          const std::string& who) {
    const Matrix h = hermitize(raw);
    try {
        (void)support_projector(h, tol.rank_tol);
    } catch (const NotPSD&) {
        throw NotPSD(who + " residual effect is not PSD");
    }
    if (opnorm(h) > kPositiveTraceTol && membership_defect(h, allowed) > kMembershipTol)
        throw MembershipViolated(who + " residual effect leaves its complement subspace");
    return h;
}

EqualPrep prepare_equal(const ProblemInstance& inst, const ConstructionParams& params) {
    const CaseLabel label = classify(inst);
    if (!label.equal_supports())
        throw UnequalSupports("construct_equal: instance has unequal supports");

    const ExtremalSubspaces subs = extremal_subspaces(inst);
    const Projector pi_sigma = support_projector(inst.sigma.mat(), inst.tol.rank_tol);
    const Matrix outside = complement(pi_sigma);
    const Matrix& sigma = inst.sigma.mat();
    const int n = inst.dim();

    EqualPrep prep;
    if (const auto* p = std::get_if<EqualC1Params>(&params)) {
        prep.required = EqualCase::C1;
        const PreparedPsi psi =
            prepare_psi(p->psi_max, outside + subs.p_max.mat, sigma, inst.tol, "psi_max");
        prep.dir_rho = (1.0 / psi.overlap) * psi.psi;
        prep.dir_sigma = Matrix::zero(n);
        prep.c = p->c;
        prep.residual_on_sigma = true;
        if (p->residual_sigma)
            prep.residual = validated_residual(*p->residual_sigma, outside, inst.tol, "C1");
    } else if (const auto* p = std::get_if<EqualC2Params>(&params)) {
        prep.required = EqualCase::C2;
        const PreparedPsi psi =
            prepare_psi(p->psi_min, outside + subs.p_min.mat, sigma, inst.tol, "psi_min");
        prep.dir_sigma = (1.0 / psi.overlap) * psi.psi;
        prep.dir_rho = Matrix::zero(n);
        prep.c = p->c;
        prep.residual_on_sigma = false;
        if (p->residual_rho)
            prep.residual = validated_residual(*p->residual_rho, outside, inst.tol, "C2");
    } else if (const auto* p = std::get_if<EqualC3Params>(&params)) {
        prep.required = EqualCase::C3;
        if (!(p->c_r >= 0.0 && p->c_r <= 1.0))
            throw Error("construct_equal: c_r must lie in [0,1]");
        if (subs.degenerate && p->c_r > 0.0 && p->c_r < 1.0)
            throw Degenerate(
                "construct_equal: T_max and T_min coincide; the two-subspace C3 form is "
                "unavailable (use the single-subspace C1/C2 variants)");
        prep.dir_rho = Matrix::zero(n);
        prep.dir_sigma = Matrix::zero(n);
        // A psi whose coefficient vanishes (c_r endpoint) is ignored: the
        // construction collapses to the single-subspace shape.
        if (p->c_r > 0.0) {
            const PreparedPsi psi =
                prepare_psi(p->psi_max, outside + subs.p_max.mat, sigma, inst.tol, "psi_max");
            prep.dir_rho = (p->c_r / psi.overlap) * psi.psi;
        }
        if (p->c_r < 1.0) {
            const PreparedPsi psi =
                prepare_psi(p->psi_min, outside + subs.p_min.mat, sigma, inst.tol, "psi_min");
            prep.dir_sigma = ((1.0 - p->c_r) / psi.overlap) * psi.psi;
        }
        prep.c = p->c;
    } else {
        throw CaseMismatch("construct_equal: params variant is for unequal supports");
    }

    if (label.equal_case != prep.required)
        throw CaseMismatch("construct_equal: instance classifies as " + to_string(label) +
                           " but params are for " + to_string(prep.required));
    prep.bound = 1.0 / opnorm(prep.dir_rho + prep.dir_sigma);
    return prep;
}

struct UnequalPrep {
    Matrix dir_rho, dir_sigma;
    double bound = 0.0;
    double c = 0.0;
    std::optional<Matrix> residual;
    bool residual_on_sigma = true;
};

UnequalPrep prepare_unequal(const ProblemInstance& inst, const ConstructionParams& params) {
    const SupportRelation rel = classify_support_relation(inst.rho, inst.sigma, inst.tol);
    if (rel == SupportRelation::Equal)
        throw EqualSupports("construct_unequal: instance has equal supports");

    const Projector pi_rho = support_projector(inst.rho.mat(), inst.tol.rank_tol);
    const Projector pi_sigma = support_projector(inst.sigma.mat(), inst.tol.rank_tol);
    const Projector pi_union =
        support_projector(inst.rho.mat() + inst.sigma.mat(), inst.tol.rank_tol);
    const Matrix off_sigma = complement(pi_sigma);    // admissible psi_rho home
    const Matrix off_rho = complement(pi_rho);        // admissible psi_sigma home
    const Matrix off_union = complement(pi_union);    // admissible residual home
    const int n = inst.dim();

    UnequalPrep prep;
    if (const auto* p = std::get_if<Unequal1Params>(&params)) {
        if (rel == SupportRelation::RhoInsideSigma)
            throw SetEmptyForSupports("set 1 is empty when supp(rho) lies inside supp(sigma)");
        const PreparedPsi psi =
            prepare_psi(p->psi_rho, off_sigma, inst.rho.mat(), inst.tol, "psi_rho");
        prep.dir_rho = (1.0 / psi.overlap) * psi.psi;
        prep.dir_sigma = Matrix::zero(n);
        prep.c = p->c1;
        prep.residual_on_sigma = true;
        if (p->residual_sigma)
            prep.residual = validated_residual(*p->residual_sigma, off_union, inst.tol, "set-1");
    } else if (const auto* p = std::get_if<Unequal2Params>(&params)) {
        if (rel == SupportRelation::SigmaInsideRho)
            throw SetEmptyForSupports("set 2 is empty when supp(sigma) lies inside supp(rho)");
        const PreparedPsi psi =
            prepare_psi(p->psi_sigma, off_rho, inst.sigma.mat(), inst.tol, "psi_sigma");
        prep.dir_sigma = (1.0 / psi.overlap) * psi.psi;
        prep.dir_rho = Matrix::zero(n);
        prep.c = p->c2;
        prep.residual_on_sigma = false;
        if (p->residual_rho)
            prep.residual = validated_residual(*p->residual_rho, off_union, inst.tol, "set-2");
    } else if (const auto* p = std::get_if<Unequal3Params>(&params)) {
        if (rel != SupportRelation::Incomparable)
            throw SetEmptyForSupports("set 3 needs incomparable supports (both differences)");
        if (!(p->c_r >= 0.0 && p->c_r <= 1.0))
            throw Error("construct_unequal: c_r must lie in [0,1]");
        prep.dir_rho = Matrix::zero(n);
        prep.dir_sigma = Matrix::zero(n);
        if (p->c_r > 0.0) {
            const PreparedPsi psi =
                prepare_psi(p->psi_rho, off_sigma, inst.rho.mat(), inst.tol, "psi_rho");
            prep.dir_rho = (p->c_r / psi.overlap) * psi.psi;
        }
        if (p->c_r < 1.0) {
            const PreparedPsi psi =
                prepare_psi(p->psi_sigma, off_rho, inst.sigma.mat(), inst.tol, "psi_sigma");
            prep.dir_sigma = ((1.0 - p->c_r) / psi.overlap) * psi.psi;
        }
        prep.c = p->c3;
    } else {
        throw CaseMismatch("construct_unequal: params variant is for equal supports");
    }
    prep.bound = 1.0 / opnorm(prep.dir_rho + prep.dir_sigma);
    return prep;
}

Measurement assemble(const ProblemInstance& inst, const Matrix& dir_rho, const Matrix& dir_sigma,
                     double c, double bound, const std::optional<Matrix>& residual,
                     bool residual_on_sigma) {
    if (!(c > 0.0)) throw CBoundViolated("c must be strictly positive");
    if (exceeds_bound(c, bound))
        throw CBoundViolated("c = " + std::to_string(c) + " exceeds the table bound " +
                             std::to_string(bound));
    Matrix lr = c * dir_rho;
    Matrix ls = c * dir_sigma;
    if (residual) {
        if (residual_on_sigma)
            ls += *residual;
        else
            lr += *residual;
    }
    return validate_measurement(lr, ls, inst.tol);
}

}  // namespace

ExtremalSubspaces extremal_subspaces(const ProblemInstance& inst) {
    if (classify_support_relation(inst.rho, inst.sigma, inst.tol) != SupportRelation::Equal)
        throw UnequalSupports("extremal_subspaces: defined only for equal supports");

    const Matrix rel = relative_operator(inst.rho.mat(), inst.sigma.mat(), inst.tol.rank_tol);
    ExtremalSubspaces subs;
    subs.t_max = extremal_projector(rel, Extremal::Max, inst.tol.rank_tol, inst.tol.cluster_tol);
    subs.t_min =
        extremal_projector(rel, Extremal::MinNonzero, inst.tol.rank_tol, inst.tol.cluster_tol);

    const double top = r_max(inst.rho.mat(), inst.sigma.mat(), inst.tol.rank_tol);
    const double bottom = r_min(inst.rho.mat(), inst.sigma.mat(), inst.tol.rank_tol);
    subs.degenerate = (top - bottom) <= inst.tol.cluster_tol * std::max(1.0, top);

    const Matrix inv_sqrt = pseudo_power(inst.sigma.mat(), -0.5, inst.tol.rank_tol);
    subs.p_max = support_projector(hermitize(inv_sqrt * subs.t_max.mat * inv_sqrt, 1e-6),
                                   inst.tol.rank_tol);
    subs.p_min = support_projector(hermitize(inv_sqrt * subs.t_min.mat * inv_sqrt, 1e-6),
                                   inst.tol.rank_tol);
    return subs;
}

std::string variant_name(const ConstructionParams& params) {
    switch (params.index()) {
        case 0: return "EqualC1";
        case 1: return "EqualC2";
        case 2: return "EqualC3";
        case 3: return "Unequal1";
        case 4: return "Unequal2";
        default: return "Unequal3";
    }
}

double max_c(const ProblemInstance& inst, const ConstructionParams& params) {
    if (params.index() <= 2) return prepare_equal(inst, params).bound;
    return prepare_unequal(inst, params).bound;
}

Measurement construct_equal(const ProblemInstance& inst, const ConstructionParams& params) {
    const EqualPrep prep = prepare_equal(inst, params);
    return assemble(inst, prep.dir_rho, prep.dir_sigma, prep.c, prep.bound, prep.residual,
                    prep.residual_on_sigma);
}

Measurement construct_unequal(const ProblemInstance& inst, const ConstructionParams& params) {
    const UnequalPrep prep = prepare_unequal(inst, params);
    return assemble(inst, prep.dir_rho, prep.dir_sigma, prep.c, prep.bound, prep.residual,
                    prep.residual_on_sigma);
}

MembershipReport is_error_minimizing_equal(const ProblemInstance& inst, const Measurement& m) {
    const CaseLabel label = classify(inst);
    if (!label.equal_supports())
        throw UnequalSupports("is_error_minimizing_equal: instance has unequal supports");

    const ExtremalSubspaces subs = extremal_subspaces(inst);
    const Matrix sq = pseudo_power(inst.sigma.mat(), 0.5, inst.tol.rank_tol);
    const Matrix x_rho = hermitize(sq * m.lambda_rho * sq, 1e-6);
    const Matrix x_sigma = hermitize(sq * m.lambda_sigma * sq, 1e-6);

    MembershipReport rep;
    rep.equal_case = label.equal_case;

    if (trace(x_rho).real() + trace(x_sigma).real() <= 1e-12) {
        rep.detail = "all-reject on the common support: postselected error is undefined";
        return rep;
    }

    const EqualCase c = *label.equal_case;
    if (c == EqualCase::C1 || c == EqualCase::C3) {
        if (membership_defect(x_rho, subs.t_max.mat) > kMembershipTol) {
            rep.detail = "conjugated lambda_rho leaves the top eigenspace of the relative operator";
            return rep;
        }
    }
    if (c == EqualCase::C2 || c == EqualCase::C3) {
        if (membership_defect(x_sigma, subs.t_min.mat) > kMembershipTol) {
            rep.detail =
                "conjugated lambda_sigma leaves the bottom eigenspace of the relative operator";
            return rep;
        }
    }
    if (c == EqualCase::C1 && opnorm(x_sigma) > kMembershipTol) {
        rep.detail = "conjugated lambda_sigma must vanish in case C1";
        return rep;
    }
    if (c == EqualCase::C2 && opnorm(x_rho) > kMembershipTol) {
        rep.detail = "conjugated lambda_rho must vanish in case C2";
        return rep;
    }
    rep.minimizing = true;
    return rep;
}

MembershipReport is_error_minimizing_unequal(const ProblemInstance& inst, const Measurement& m) {
    const SupportRelation rel = classify_support_relation(inst.rho, inst.sigma, inst.tol);
    if (rel == SupportRelation::Equal)
        throw EqualSupports("is_error_minimizing_unequal: instance has equal supports");

    const Projector pi_rho = support_projector(inst.rho.mat(), inst.tol.rank_tol);
    const Projector pi_sigma = support_projector(inst.sigma.mat(), inst.tol.rank_tol);
    const Projector pi_union =
        support_projector(inst.rho.mat() + inst.sigma.mat(), inst.tol.rank_tol);
    const Matrix off_sigma = complement(pi_sigma);
    const Matrix off_rho = complement(pi_rho);
    const Matrix off_union = complement(pi_union);

    MembershipReport rep;

    const Matrix mixture = inst.p_rho * inst.rho.mat() + inst.p_sigma() * inst.sigma.mat();
    if (trace_prod_real(m.lambda_rho + m.lambda_sigma, mixture) <= 1e-12) {
        rep.detail = "all-reject measurement: postselected error is undefined";
        return rep;
    }

    const double rho_off_sigma = membership_defect(m.lambda_rho, off_sigma);
    const double rho_off_union = membership_defect(m.lambda_rho, off_union);
    const double sigma_off_rho = membership_defect(m.lambda_sigma, off_rho);
    const double sigma_off_union = membership_defect(m.lambda_sigma, off_union);
    const double t_rho = trace_prod_real(m.lambda_rho, inst.rho.mat());
    const double t_sigma = trace_prod_real(m.lambda_sigma, inst.sigma.mat());

    if (rho_off_sigma <= kMembershipTol && sigma_off_union <= kMembershipTol &&
        t_rho > kPositiveTraceTol) {
        rep.minimizing = true;
        rep.set_tag = 1;
        return rep;
    }
    if (sigma_off_rho <= kMembershipTol && rho_off_union <= kMembershipTol &&
        t_sigma > kPositiveTraceTol) {
        rep.minimizing = true;
        rep.set_tag = 2;
        return rep;
    }
    if (rho_off_sigma <= kMembershipTol && sigma_off_rho <= kMembershipTol &&
        t_rho > kPositiveTraceTol && t_sigma > kPositiveTraceTol) {
        rep.minimizing = true;
        rep.set_tag = 3;
        return rep;
    }
    rep.detail = "no zero-error set matches the support confinement / detection pattern";
    return rep;
}

}  // namespace psdisc

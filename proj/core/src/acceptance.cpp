#include "psdisc/acceptance.hpp"

#include <algorithm>
#include <cmath>

#include "psdisc/rng.hpp"

namespace psdisc {

namespace {

constexpr double kLooseHermTol = 1e-6;  // products of validated operators

std::vector<cplx> column(const Matrix& m, int j) {
    std::vector<cplx> v(static_cast<size_t>(m.dim()));
    for (int i = 0; i < m.dim(); ++i) v[static_cast<size_t>(i)] = m(i, j);
    return v;
}

std::vector<cplx> mat_vec(const Matrix& m, const std::vector<cplx>& v) {
    std::vector<cplx> out(static_cast<size_t>(m.dim()), cplx(0.0, 0.0));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out[static_cast<size_t>(i)] += m(i, j) * v[static_cast<size_t>(j)];
    return out;
}

void normalize(std::vector<cplx>& v) {
    double n2 = 0.0;
    for (const cplx& z : v) n2 += cabs2(z);
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& z : v) z *= inv;
}

Matrix uniform_density(const Projector& p) {
    return (1.0 / p.rank) * p.mat;
}

// State of the alternating scheme: a feasible density pair and its c value.
struct AltState {
    Matrix psi1, psi2;
    double c = 0.0;
};

double mix_value(double r, const Matrix& psi1, const Matrix& psi2, const Matrix& sig_t,
                 double rank_tol) {
    Matrix mix = r * psi1;
    mix += (1.0 - r) * psi2;
    return max_scale_below(mix, sig_t, rank_tol);
}

// One Frank-Wolfe step on one factor of the pair: linearize the top
// eigenvalue of the sigma~^{-1/2}-conjugated mixture at the current point,
// move toward the rank-1 density minimizing the linearization inside
// range(pi), keep the best backtracked step. Leaves the state untouched when
// nothing improves.
void fw_step(AltState& s, bool first_factor, double r, const Projector& pi,
             const Matrix& inv_sq_t, const Matrix& sig_t, double rank_tol) {
    const double w_this = first_factor ? r : 1.0 - r;
    Matrix& psi = first_factor ? s.psi1 : s.psi2;
    const Matrix& other = first_factor ? s.psi2 : s.psi1;
    const double w_other = first_factor ? 1.0 - r : r;

    Matrix conj = w_this * psi;
    conj += w_other * other;
    const Matrix m = hermitize(inv_sq_t * conj * inv_sq_t, kLooseHermTol);
    const std::vector<cplx> top = column(eig(m).vectors, 0);
    const std::vector<cplx> kv = mat_vec(inv_sq_t, top);
    const Matrix grad = outer(kv, kv);  // descent functional for the top eigenvalue

    // Bottom eigenvector of the gradient restricted to range(pi): shift the
    // orthogonal complement above everything so it cannot win.
    Matrix shifted = hermitize(pi.mat * grad * pi.mat, kLooseHermTol);
    const double shift = 1.0 + opnorm(shifted);
    shifted += shift * (Matrix::identity(pi.mat.dim()) - pi.mat);
    const EigenSystem es = eig(shifted);
    std::vector<cplx> u = column(es.vectors, es.vectors.dim() - 1);
    u = mat_vec(pi.mat, u);  // scrub rounding outside the subspace
    normalize(u);
    const Matrix vertex = outer(u, u);

    for (double gamma = 1.0; gamma > 1e-4; gamma *= 0.5) {
        Matrix cand = (1.0 - gamma) * psi;
        cand += gamma * vertex;
        const double c = first_factor ? mix_value(r, cand, other, sig_t, rank_tol)
                                      : mix_value(r, other, cand, sig_t, rank_tol);
        if (c > s.c) {
            psi = cand;
            s.c = c;
            return;
        }
    }
}

UpsilonResult numeric_upsilon(const Matrix& sig_t, const Projector& pi1, const Projector& pi2,
                              double r, const UpsilonOptions& opts, const Tolerances& tol) {
    const Matrix inv_sq_t = pseudo_power(sig_t, -0.5, tol.rank_tol);
    const double t1 = trace_prod_real(pi1.mat, sig_t);
    const double t2 = trace_prod_real(pi2.mat, sig_t);

    AltState best;
    best.c = -1.0;
    for (int start = 0; start < std::max(1, opts.starts); ++start) {
        AltState s;
        if (start == 0 && opts.warm_psi1 && opts.warm_psi2) {
            s.psi1 = *opts.warm_psi1;
            s.psi2 = *opts.warm_psi2;
        } else if (start == 0) {
            // Deterministic warm start: the exact optimizer of the
            // block-diagonal regime, generally a good interior point.
            s.psi1 = hermitize(pi1.mat * sig_t * pi1.mat, kLooseHermTol);
            s.psi1 *= 1.0 / t1;
            s.psi2 = hermitize(pi2.mat * sig_t * pi2.mat, kLooseHermTol);
            s.psi2 *= 1.0 / t2;
        } else {
            s.psi1 = random_psd_in_subspace(pi1, child_seed(opts.seed, 2u * start), tol).mat();
            s.psi2 = random_psd_in_subspace(pi2, child_seed(opts.seed, 2u * start + 1u), tol).mat();
        }
        s.c = mix_value(r, s.psi1, s.psi2, sig_t, tol.rank_tol);
        for (int round = 0; round < opts.max_rounds; ++round) {
            const double before = s.c;
            fw_step(s, true, r, pi1, inv_sq_t, sig_t, tol.rank_tol);
            fw_step(s, false, r, pi2, inv_sq_t, sig_t, tol.rank_tol);
            if (s.c - before < opts.conv_tol) break;
        }
        if (s.c > best.c) best = s;
    }
    return {best.c, UpsilonBranch::Numeric, best.psi1, best.psi2};
}

// Golden-section maximization of f on [lo, hi]; assumes local unimodality
// around the bracketed grid optimum. Returns the argmax.
template <typename F>
double golden_max(F&& f, double lo, double hi, int iters = 60) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

}  // namespace

UpsilonResult upsilon(const Matrix& sigma_op, const Projector& pi1, const Projector& pi2,
                      double r, const UpsilonOptions& opts, const Tolerances& tol) {
    check_same_dim(sigma_op, pi1.mat, "upsilon");
    check_same_dim(sigma_op, pi2.mat, "upsilon");
    if (pi1.rank == 0 || pi2.rank == 0)
        throw ZeroProjector("upsilon: both subspaces must be nonzero");
    if (!(r >= 0.0 && r <= 1.0)) throw Error("upsilon: r must lie in [0,1]");
    if (trace_prod_real(pi1.mat, pi2.mat) > 1e-9)
        throw ProjectorsNotOrthogonal("upsilon: Tr(pi1*pi2) must vanish");
    const Projector pi_sigma = support_projector(sigma_op, tol.rank_tol);
    if (membership_defect(pi1.mat, pi_sigma.mat) > kMembershipTol ||
        membership_defect(pi2.mat, pi_sigma.mat) > kMembershipTol)
        throw Error("upsilon: subspaces must lie inside supp(sigma)");

    // Restrict to sigma^{1/2} P sigma^{1/2}: value-preserving, and afterwards
    // supp(sigma~) = range(pi1) + range(pi2), which the closed forms require.
    const Matrix inv_sq = pseudo_power(sigma_op, -0.5, tol.rank_tol);
    const Matrix sq = pseudo_power(sigma_op, 0.5, tol.rank_tol);
    const Projector restr = support_projector(
        hermitize(inv_sq * (pi1.mat + pi2.mat) * inv_sq, kLooseHermTol), tol.rank_tol);
    const Matrix sig_t = hermitize(sq * restr.mat * sq, kLooseHermTol);

    if (r == 0.0 || r == 1.0) {
        const Projector& constrained = (r == 1.0) ? pi1 : pi2;
        const Matrix inv_sq_t = pseudo_power(sig_t, -0.5, tol.rank_tol);
        const Matrix sq_t = pseudo_power(sig_t, 0.5, tol.rank_tol);
        const Projector pt = support_projector(
            hermitize(inv_sq_t * constrained.mat * inv_sq_t, kLooseHermTol), tol.rank_tol);
        const double value = trace_prod_real(pt.mat, sig_t);
        Matrix witness = hermitize(sq_t * pt.mat * sq_t, kLooseHermTol);
        witness *= 1.0 / value;
        UpsilonResult res;
        res.value = value;
        res.branch = UpsilonBranch::Endpoint;
        res.psi1 = (r == 1.0) ? witness : uniform_density(pi1);
        res.psi2 = (r == 1.0) ? uniform_density(pi2) : witness;
        return res;
    }

    if (pi1.rank == 1 && pi2.rank == 1) {
        // Rank-1 subspaces leave no freedom in the densities, so the value is
        // the largest c with c*(r*pi1 + (1-r)*pi2) <= sigma. Scored against
        // sigma directly: this stays well-conditioned as r approaches 0 or 1,
        // where a pseudo-inverse of the mixture would drop the vanishing
        // direction and overshoot the feasible scale.
        Matrix m = r * pi1.mat;
        m += (1.0 - r) * pi2.mat;
        return {max_scale_below(m, sigma_op, tol.rank_tol), UpsilonBranch::RankOne, pi1.mat,
                pi2.mat};
    }

    Matrix diag_part = hermitize(pi1.mat * sig_t * pi1.mat, kLooseHermTol);
    diag_part += hermitize(pi2.mat * sig_t * pi2.mat, kLooseHermTol);
    const double off_block = opnorm(hermitize(sig_t - diag_part, kLooseHermTol));
    if (off_block <= 1e-10 * std::max(1.0, opnorm(sig_t))) {
        const double t1 = trace_prod_real(pi1.mat, sig_t);
        const double t2 = trace_prod_real(pi2.mat, sig_t);
        Matrix psi1 = hermitize(pi1.mat * sig_t * pi1.mat, kLooseHermTol);
        psi1 *= 1.0 / t1;
        Matrix psi2 = hermitize(pi2.mat * sig_t * pi2.mat, kLooseHermTol);
        psi2 *= 1.0 / t2;
        return {std::min(t1 / r, t2 / (1.0 - r)), UpsilonBranch::BlockDiagonal, psi1, psi2};
    }

    return numeric_upsilon(sig_t, pi1, pi2, r, opts, tol);
}

namespace {

AcceptanceReport single_subspace_report(const ProblemInstance& inst, const Projector& p,
                                        double rate, bool detect_rho) {
    const double t = trace_prod_real(p.mat, inst.sigma.mat());
    AcceptanceReport rep;
    rep.a_rho = rate * t;
    rep.a_sigma = t;
    const Matrix zero = Matrix::zero(inst.dim());
    rep.achieving = detect_rho ? validate_measurement(p.mat, zero, inst.tol)
                               : validate_measurement(zero, p.mat, inst.tol);
    rep.method = AcceptanceMethod::ClosedForm;
    return rep;
}

Measurement measurement_from_witnesses(const ProblemInstance& inst, double c, double c_r,
                                       const Matrix& psi1, const Matrix& psi2) {
    const Matrix inv_sq = pseudo_power(inst.sigma.mat(), -0.5, inst.tol.rank_tol);
    Matrix lr = hermitize(inv_sq * psi1 * inv_sq, kLooseHermTol);
    lr *= c * c_r;
    Matrix ls = hermitize(inv_sq * psi2 * inv_sq, kLooseHermTol);
    ls *= c * (1.0 - c_r);
    return validate_measurement(lr, ls, inst.tol);
}

}  // namespace

MaxAcceptance max_acceptance_equal(const ProblemInstance& inst) {
    const CaseLabel label = classify(inst);
    if (!label.equal_supports())
        throw UnequalSupports("max_acceptance_equal: instance has unequal supports");

    const ExtremalSubspaces subs = extremal_subspaces(inst);
    const double rmax = r_max(inst.rho.mat(), inst.sigma.mat(), inst.tol.rank_tol);
    const double rmin = r_min(inst.rho.mat(), inst.sigma.mat(), inst.tol.rank_tol);

    MaxAcceptance out;
    switch (*label.equal_case) {
        case EqualCase::C1:
            out.for_rho = single_subspace_report(inst, subs.p_max, rmax, true);
            out.for_sigma = out.for_rho;
            return out;
        case EqualCase::C2:
            out.for_rho = single_subspace_report(inst, subs.p_min, rmin, false);
            out.for_sigma = out.for_rho;
            return out;
        case EqualCase::C3:
            break;
    }

    if (subs.degenerate) {
        // Single eigenvalue cluster (rho and sigma proportional): the
        // two-subspace sweep is unavailable and unnecessary, the single
        // subspace already spans every admissible direction.
        out.for_rho = single_subspace_report(inst, subs.p_max, rmax, true);
        out.for_sigma = out.for_rho;
        return out;
    }

    // Two objectives over the detection split c_r: acceptance of sigma is
    // upsilon itself, acceptance of rho weights it by the detected ratio mix.
    bool used_numeric = false;
    UpsilonOptions opts;
    std::optional<Matrix> warm1, warm2;
    const auto eval = [&](double c_r) -> UpsilonResult {
        UpsilonOptions o = opts;
        o.warm_psi1 = warm1;
        o.warm_psi2 = warm2;
        if (warm1) o.starts = 2;  // continuation: previous optimizer + one probe
        UpsilonResult u =
            upsilon(inst.sigma.mat(), subs.t_max, subs.t_min, c_r, o, inst.tol);
        if (u.branch == UpsilonBranch::Numeric) {
            used_numeric = true;
            warm1 = u.psi1;
            warm2 = u.psi2;
        }
        return u;
    };
    const auto rho_weight = [&](double c_r) { return c_r * rmax + (1.0 - c_r) * rmin; };

    double best_rho = -1.0, best_sigma = -1.0;
    double arg_rho = 0.0, arg_sigma = 0.0;
    const int n = kCrGridPoints;
    for (int i = 0; i < n; ++i) {
        const double c_r = static_cast<double>(i) / (n - 1);
        const UpsilonResult u = eval(c_r);
        if (u.value * rho_weight(c_r) > best_rho) {
            best_rho = u.value * rho_weight(c_r);
            arg_rho = c_r;
        }
        if (u.value > best_sigma) {
            best_sigma = u.value;
            arg_sigma = c_r;
        }
    }

    // Golden-section around the bracketed grid optimum; keep the grid point
    // itself if the local search lands on a worse value (the objective is only
    // locally unimodal by assumption).
    const double step = 1.0 / (n - 1);
    const auto refine = [&](double arg, auto&& objective) {
        const double g =
            golden_max(objective, std::max(0.0, arg - step), std::min(1.0, arg + step));
        return objective(g) >= objective(arg) ? g : arg;
    };
    const double cr_rho =
        refine(arg_rho, [&](double c_r) { return eval(c_r).value * rho_weight(c_r); });
    const double cr_sigma = refine(arg_sigma, [&](double c_r) { return eval(c_r).value; });

    // Re-evaluate at the two maximizers; the achieving measurement is built
    // from the same witnesses, so it attains the reported component exactly.
    const UpsilonResult u_rho = eval(cr_rho);
    const UpsilonResult u_sigma = eval(cr_sigma);
    const AcceptanceMethod method =
        used_numeric ? AcceptanceMethod::NumericUpsilon : AcceptanceMethod::ClosedForm;
    AcceptanceReport rep_rho;
    rep_rho.a_rho = u_rho.value * rho_weight(cr_rho);
    rep_rho.c_r_star = cr_rho;
    rep_rho.method = method;
    rep_rho.achieving = measurement_from_witnesses(inst, u_rho.value, cr_rho, u_rho.psi1, u_rho.psi2);
    AcceptanceReport rep_sigma;
    rep_sigma.a_sigma = u_sigma.value;
    rep_sigma.c_r_star = cr_sigma;
    rep_sigma.method = method;
    rep_sigma.achieving =
        measurement_from_witnesses(inst, u_sigma.value, cr_sigma, u_sigma.psi1, u_sigma.psi2);
    // Both reports carry the same headline maxima.
    rep_rho.a_sigma = rep_sigma.a_sigma;
    rep_sigma.a_rho = rep_rho.a_rho;
    out.for_rho = rep_rho;
    out.for_sigma = rep_sigma;
    return out;
}

MaxAcceptance max_acceptance_unequal(const ProblemInstance& inst) {
    const SupportRelation rel = classify_support_relation(inst.rho, inst.sigma, inst.tol);
    if (rel == SupportRelation::Equal)
        throw EqualSupports("max_acceptance_unequal: instance has equal supports");

    const Projector pi_rho = support_projector(inst.rho.mat(), inst.tol.rank_tol);
    const Projector pi_sigma = support_projector(inst.sigma.mat(), inst.tol.rank_tol);
    const Projector pi_union =
        support_projector(inst.rho.mat() + inst.sigma.mat(), inst.tol.rank_tol);
    const Matrix q_rho = pi_union.mat - pi_sigma.mat;    // detects rho, never sigma
    const Matrix q_sigma = pi_union.mat - pi_rho.mat;    // detects sigma, never rho
    const Matrix zero = Matrix::zero(inst.dim());

    const double a_rho = std::max(0.0, 1.0 - trace_prod_real(pi_sigma.mat, inst.rho.mat()));
    const double a_sigma = std::max(0.0, 1.0 - trace_prod_real(pi_rho.mat, inst.sigma.mat()));

    AcceptanceReport base;
    base.a_rho = a_rho;
    base.a_sigma = a_sigma;
    base.method = AcceptanceMethod::ClosedForm;

    MaxAcceptance out{base, base};
    switch (rel) {
        case SupportRelation::SigmaInsideRho:
            // Only measurements detecting rho exist; acceptance of sigma is 0.
            out.for_rho.achieving = validate_measurement(q_rho, zero, inst.tol);
            out.for_sigma.achieving = out.for_rho.achieving;
            break;
        case SupportRelation::RhoInsideSigma:
            out.for_sigma.achieving = validate_measurement(zero, q_sigma, inst.tol);
            out.for_rho.achieving = out.for_sigma.achieving;
            break;
        default:  // Incomparable: one maximizer per target state
            out.for_rho.achieving = validate_measurement(q_rho, zero, inst.tol);
            out.for_sigma.achieving = validate_measurement(zero, q_sigma, inst.tol);
            break;
    }
    return out;
}

AcceptancePair acceptance_from_params(const ProblemInstance& inst,
                                      const ConstructionParams& params) {
    // Route through the construction for the full validation contract
    // (case/set match, memberships, the c bound).
    if (params.index() <= 2)
        (void)construct_equal(inst, params);
    else
        (void)construct_unequal(inst, params);

    const auto equal_rates = [&]() {
        return std::pair<double, double>{
            r_max(inst.rho.mat(), inst.sigma.mat(), inst.tol.rank_tol),
            r_min(inst.rho.mat(), inst.sigma.mat(), inst.tol.rank_tol)};
    };
    if (const auto* p = std::get_if<EqualC1Params>(&params))
        return {p->c * equal_rates().first, p->c};
    if (const auto* p = std::get_if<EqualC2Params>(&params))
        return {p->c * equal_rates().second, p->c};
    if (const auto* p = std::get_if<EqualC3Params>(&params)) {
        const auto [rmax, rmin] = equal_rates();
        return {p->c * (p->c_r * rmax + (1.0 - p->c_r) * rmin), p->c};
    }
    if (const auto* p = std::get_if<Unequal1Params>(&params)) return {p->c1, 0.0};
    if (const auto* p = std::get_if<Unequal2Params>(&params)) return {0.0, p->c2};
    const auto& p = std::get<Unequal3Params>(params);
    return {p.c3 * p.c_r, p.c3 * (1.0 - p.c_r)};
}

}  // namespace psdisc

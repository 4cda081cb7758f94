#include "psdisc/simulate.hpp"

#include <cmath>

#include "psdisc/rng.hpp"

namespace psdisc {

namespace {

constexpr double kNegativityAllowance = 1e-9;

double clamp_probability(double p, const char* which) {
    if (p < -kNegativityAllowance)
        throw Error(std::string("outcome_distribution: ") + which + " probability is negative");
    if (p < 0.0) return 0.0;
    return p > 1.0 ? 1.0 : p;
}

double half_width(long long m) { return m > 0 ? 1.96 / (2.0 * std::sqrt(static_cast<double>(m))) : 1.0; }

}  // namespace

std::array<double, 3> outcome_distribution(const Matrix& state, const Measurement& m) {
    check_same_dim(state, m.lambda_rho, "outcome_distribution");
    const double p0 = clamp_probability(trace_prod_real(m.lambda_rho, state), "detect-rho");
    const double p1 = clamp_probability(trace_prod_real(m.lambda_sigma, state), "detect-sigma");
    const double p2 = clamp_probability(1.0 - p0 - p1, "inconclusive");
    return {p0, p1, p2};
}

SimReport simulate(const ProblemInstance& inst, const Measurement& m, long long n, uint64_t seed) {
    if (n < 1) throw Error("simulate: n must be >= 1");
    check_same_dim(inst.rho.mat(), m.lambda_rho, "simulate");

    const std::array<double, 3> dist_rho = outcome_distribution(inst.rho.mat(), m);
    const std::array<double, 3> dist_sigma = outcome_distribution(inst.sigma.mat(), m);

    SimReport rep;
    rep.n = n;
    for (long long i = 0; i < n; ++i) {
        Rng rng(child_seed(seed, static_cast<uint64_t>(i)));
        const int hidden = rng.uniform01() < inst.p_rho ? 0 : 1;
        const std::array<double, 3>& dist = hidden == 0 ? dist_rho : dist_sigma;
        const double u = rng.uniform01();
        const int outcome = u < dist[0] ? 0 : (u < dist[0] + dist[1] ? 1 : 2);
        ++rep.counts[hidden][outcome];
    }

    const long long n_rho = rep.counts[0][0] + rep.counts[0][1] + rep.counts[0][2];
    const long long n_sigma = rep.counts[1][0] + rep.counts[1][1] + rep.counts[1][2];
    const long long accepts =
        rep.counts[0][0] + rep.counts[0][1] + rep.counts[1][0] + rep.counts[1][1];
    const long long wrong = rep.counts[0][1] + rep.counts[1][0];

    if (accepts > 0)
        rep.e_hat = static_cast<double>(wrong) / static_cast<double>(accepts);
    else
        rep.no_accepts = true;
    if (n_rho > 0)
        rep.a_rho_hat =
            static_cast<double>(rep.counts[0][0] + rep.counts[0][1]) / static_cast<double>(n_rho);
    if (n_sigma > 0)
        rep.a_sigma_hat =
            static_cast<double>(rep.counts[1][0] + rep.counts[1][1]) / static_cast<double>(n_sigma);

    rep.ci95.e_hat = half_width(accepts);
    rep.ci95.a_rho = half_width(n_rho);
    rep.ci95.a_sigma = half_width(n_sigma);
    return rep;
}

}  // namespace psdisc

#include "psdisc/states.hpp"

#include <cmath>
#include <string>

#include "psdisc/rng.hpp"

namespace psdisc {

DensityOperator DensityOperator::create(const Matrix& raw, const Tolerances& tol) {
    Matrix h = hermitize(raw);
    const double tr = trace(h).real();
    if (std::abs(tr - 1.0) > 1e-9)
        throw NotDensity("density: trace " + std::to_string(tr) + " not within 1e-9 of 1");
    h *= 1.0 / tr;
    // PSD gate; support_projector throws NotPSD below the rank_tol-scaled slack.
    (void)support_projector(h, tol.rank_tol);
    return DensityOperator(std::move(h));
}

Measurement validate_measurement(const Matrix& lambda_rho, const Matrix& lambda_sigma,
                                 const Tolerances& tol) {
    check_same_dim(lambda_rho, lambda_sigma, "validate_measurement");
    Measurement m{hermitize(lambda_rho), hermitize(lambda_sigma)};
    try {
        (void)support_projector(m.lambda_rho, tol.rank_tol);
    } catch (const NotPSD&) {
        throw NotPSD("measurement: lambda_rho is not PSD");
    }
    try {
        (void)support_projector(m.lambda_sigma, tol.rank_tol);
    } catch (const NotPSD&) {
        throw NotPSD("measurement: lambda_sigma is not PSD");
    }
    const Matrix sum = m.lambda_rho + m.lambda_sigma;
    if (!loewner_leq(sum, Matrix::identity(sum.dim()), tol.psd_tol))
        throw SumExceedsIdentity("measurement: lambda_rho + lambda_sigma exceeds identity");
    return m;
}

ProblemInstance make_instance(DensityOperator rho, DensityOperator sigma, double p_rho,
                              const Tolerances& tol) {
    if (rho.dim() != sigma.dim())
        throw DimMismatch("instance: rho dim " + std::to_string(rho.dim()) + " vs sigma dim " +
                          std::to_string(sigma.dim()));
    if (!(p_rho > 1e-12 && p_rho < 1.0 - 1e-12))
        throw BadPrior("instance: p_rho must lie strictly inside (0,1)");
    return ProblemInstance{std::move(rho), std::move(sigma), p_rho, tol};
}

namespace {

// dim x rank complex Ginibre factor from the seeded stream, returned as
// G*G^dagger (PSD with structural rank = rank, almost surely).
Matrix ginibre_gram(int dim, int rank, Rng& rng) {
    std::vector<std::vector<cplx>> g(dim, std::vector<cplx>(rank));
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < rank; ++c) {
            const double re = rng.normal();
            const double im = rng.normal();
            g[r][c] = cplx(re, im);
        }
    Matrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            cplx s{};
            for (int k = 0; k < rank; ++k) s += g[r][k] * std::conj(g[c][k]);
            m(r, c) = s;
        }
    return m;
}

}  // namespace

DensityOperator random_density(int dim, int rank, uint64_t seed, const Tolerances& tol) {
    if (rank < 1 || rank > dim)
        throw BadRank("random_density: rank " + std::to_string(rank) + " outside [1, " +
                      std::to_string(dim) + "]");
    Rng rng(seed);
    Matrix m = ginibre_gram(dim, rank, rng);
    m *= 1.0 / trace(m).real();
    return DensityOperator::create(m, tol);
}

DensityOperator random_psd_in_subspace(const Projector& p, uint64_t seed, const Tolerances& tol) {
    if (p.rank < 1) throw ZeroProjector("random_psd_in_subspace: projector has rank 0");
    const int n = p.mat.dim();
    const int r = p.rank;
    // Orthonormal basis of range(P): leading eigenvectors of P.
    const EigenSystem es = eig(p.mat);
    Rng rng(seed);
    const Matrix core = ginibre_gram(r, r, rng);  // full-rank PSD on the small space
    Matrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s{};
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    s += es.vectors(i, a) * core(a, b) * std::conj(es.vectors(j, b));
            out(i, j) = s;
        }
    out *= 1.0 / trace(out).real();
    return DensityOperator::create(out, tol);
}

}  // namespace psdisc

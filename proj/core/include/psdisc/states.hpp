#pragma once

#include <cstdint>

#include "psdisc/hermitian.hpp"
#include "psdisc/matrix.hpp"

namespace psdisc {

struct Tolerances {
    double rank_tol = kDefaultRankTol;
    double cluster_tol = kDefaultClusterTol;
    double psd_tol = kDefaultPsdTol;
};

// Hermitian, PSD, unit-trace operator. The trace must be within 1e-9 of 1 at
// ingest and is then renormalized exactly.
class DensityOperator {
  public:
    static DensityOperator create(const Matrix& raw, const Tolerances& tol = {});

    const Matrix& mat() const { return op_; }
    int dim() const { return op_.dim(); }

  private:
    explicit DensityOperator(Matrix m) : op_(std::move(m)) {}
    Matrix op_;
};

// Pair (Lambda_rho, Lambda_sigma) of PSD effects with sum bounded by identity;
// the reject effect I - Lambda_rho - Lambda_sigma is PSD by construction.
struct Measurement {
    Matrix lambda_rho;
    Matrix lambda_sigma;
};

Measurement validate_measurement(const Matrix& lambda_rho, const Matrix& lambda_sigma,
                                 const Tolerances& tol = {});

struct ProblemInstance {
    DensityOperator rho;
    DensityOperator sigma;
    double p_rho = 0.5;
    Tolerances tol;

    double p_sigma() const { return 1.0 - p_rho; }
    int dim() const { return rho.dim(); }
};

// Validates dims and the strict prior range (values within 1e-12 of 0 or 1
// are rejected; every formula divides by both priors).
ProblemInstance make_instance(DensityOperator rho, DensityOperator sigma, double p_rho,
                              const Tolerances& tol = {});

// G*G^dagger / Tr, G a dim x rank matrix of independent standard complex
// Gaussians. The rank is structural (exactly `rank` with probability 1), which
// keeps unequal-support instances exact rather than thresholded.
DensityOperator random_density(int dim, int rank, uint64_t seed, const Tolerances& tol = {});

// Random density confined to range(P): conjugates a rank(P)-dimensional
// Ginibre density into the subspace basis.
DensityOperator random_psd_in_subspace(const Projector& p, uint64_t seed,
                                       const Tolerances& tol = {});

}  // namespace psdisc

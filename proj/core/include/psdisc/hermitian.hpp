#pragma once

#include <vector>

#include "psdisc/matrix.hpp"

namespace psdisc {

// Default numeric conventions. Each threshold is relative to max(1, scale of
// the operand); see the individual operations for the exact scale used.
inline constexpr double kDefaultHermTol = 1e-8;     // hermiticity defect at ingest
inline constexpr double kDefaultRankTol = 1e-10;    // eigenvalue ~ 0 decision
inline constexpr double kDefaultClusterTol = 1e-9;  // eigenvalue degeneracy grouping
inline constexpr double kDefaultPsdTol = 1e-10;     // Loewner / PSD slack
inline constexpr double kMembershipTol = 1e-8;      // "psi in S(P)" subspace checks
inline constexpr double kCaseTol = 1e-9;            // relative tie width of the case split

// herm_defect(raw) = ||raw - raw^dagger||_inf (operator norm; the difference
// is anti-Hermitian, so this is the largest |eigenvalue| of i*(raw-raw^dagger)).
double herm_defect(const Matrix& raw);

// (raw + raw^dagger)/2. Throws HermDefectTooLarge when the defect exceeds tol.
Matrix hermitize(const Matrix& raw, double tol = kDefaultHermTol);

struct EigenSystem {
    std::vector<double> values;  // descending
    Matrix vectors;              // orthonormal columns, phase-fixed
};

// Cyclic complex Jacobi diagonalization. Deterministic: eigenvalues sorted
// descending, degenerate ties broken lexicographically on the phase-fixed
// vectors (first significant component made real-positive). Budget 100 sweeps;
// ConvergenceFailure if the off-diagonal Frobenius norm has not fallen below
// 1e-12 * max(1, ||M||_F) by then.
EigenSystem eig(const Matrix& hermitian);

// Largest |eigenvalue|; equals the operator norm for Hermitian input.
double opnorm(const Matrix& hermitian);

struct Projector {
    Matrix mat;
    int rank = 0;
};

// Projector onto span of eigenvectors with eigenvalue above
// rank_tol * max(1, ||M||_inf). Throws NotPSD if an eigenvalue falls below the
// negative of that threshold.
Projector support_projector(const Matrix& psd, double rank_tol = kDefaultRankTol);

enum class Extremal { Max, MinNonzero };

// Projector onto the eigenspace of the largest (Max) or smallest nonzero
// (MinNonzero) eigenvalue; eigenvalues within cluster_tol * max(1, ||M||_inf)
// of the extremum are included. Throws ZeroOperator when M has no nonzero
// eigenvalue at the rank threshold.
Projector extremal_projector(const Matrix& psd, Extremal which,
                             double rank_tol = kDefaultRankTol,
                             double cluster_tol = kDefaultClusterTol);

// Nonzero eigenvalues raised to the power p, zero eigenvalues kept at zero
// (generalized inverse family: pseudo_power(M,-1)*M = support_projector(M)).
Matrix pseudo_power(const Matrix& psd, double p, double rank_tol = kDefaultRankTol);

// nu2^{-1/2} * nu1 * nu2^{-1/2} with pseudo-inverse square roots, re-hermitized
// to scrub rounding asymmetry.
Matrix relative_operator(const Matrix& nu1, const Matrix& nu2,
                         double rank_tol = kDefaultRankTol);

// Largest eigenvalue of the relative operator.
double r_max(const Matrix& nu1, const Matrix& nu2, double rank_tol = kDefaultRankTol);

// Smallest nonzero eigenvalue of the relative operator; 0 when it vanishes.
double r_min(const Matrix& nu1, const Matrix& nu2, double rank_tol = kDefaultRankTol);

// A <= B in the Loewner order: min eig(B-A) >= -tol * max(1, ||B-A||_inf).
bool loewner_leq(const Matrix& a, const Matrix& b, double tol = kDefaultPsdTol);

// Largest c >= 0 with c*psi <= sigma (Loewner). Equals 1/R_max(psi,sigma) when
// supp(psi) is contained in supp(sigma) and 0 otherwise. Note this is NOT
// R_min(sigma,psi) unless the supports coincide.
double max_scale_below(const Matrix& psi, const Matrix& sigma,
                       double rank_tol = kDefaultRankTol);

// ||P X P - X||_inf: 0 iff the PSD operator X lives inside range(P).
double membership_defect(const Matrix& x, const Matrix& subspace_projector);

// Projector onto the intersection range(P1) ∩ range(P2), computed as the
// eigenvalue-2 eigenspace of P1+P2.
Projector projector_intersection(const Projector& p1, const Projector& p2,
                                 double cluster_tol = kDefaultClusterTol);

}  // namespace psdisc

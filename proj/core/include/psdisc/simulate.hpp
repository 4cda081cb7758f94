#pragma once

// Monte Carlo sampling of the three-outcome measurement on a hidden state
// drawn from the prior, with conservative confidence intervals for the
// postselected error and the per-state acceptance rates.

#include <array>
#include <cstdint>
#include <optional>

#include "psdisc/metrics.hpp"
#include "psdisc/states.hpp"

namespace psdisc {

/// Outcome probabilities (detect-rho, detect-sigma, inconclusive) for a
/// single state. Tiny negative traces from rounding (within 1e-9) are
/// clamped to zero; anything worse is an error in the inputs.
std::array<double, 3> outcome_distribution(const Matrix& state, const Measurement& m);

/// 95% confidence half-widths. Each uses the worst-case Wald bound
/// 1.96 * sqrt(1/(4m)) so coverage holds without estimating the variance;
/// with no relevant samples (m = 0) the half-width is 1, covering [0, 1].
struct Ci95 {
    double e_hat = 1.0;
    double a_rho = 1.0;
    double a_sigma = 1.0;
};

struct SimReport {
    long long n = 0;
    /// counts[h][o]: trials with hidden state h (0 = rho, 1 = sigma) and
    /// outcome o (0 = detect rho, 1 = detect sigma, 2 = inconclusive).
    long long counts[2][3] = {{0, 0, 0}, {0, 0, 0}};
    std::optional<double> e_hat;        ///< wrong / accepted; empty if nothing accepted
    std::optional<double> a_rho_hat;    ///< accepted fraction among hidden-rho trials
    std::optional<double> a_sigma_hat;  ///< accepted fraction among hidden-sigma trials
    Ci95 ci95;
    bool no_accepts = false;
};

/// Runs n independent trials. Trial i uses its own generator seeded with
/// child_seed(seed, i), so reports are reproducible and insensitive to
/// splitting the run.
SimReport simulate(const ProblemInstance& inst, const Measurement& m, long long n, uint64_t seed);

}  // namespace psdisc

#pragma once

#include <cstdint>
#include <string>

#include "psdisc/acceptance.hpp"

namespace psdisc {

// Budget of the random-search oracles. Identical configs give identical
// results; trials and refinement chains derive per-index seeds from `seed`.
struct OracleConfig {
    int trials = 2000;
    uint64_t seed = 1;
    int refine_steps = 64;   // local perturbation-descent budget
    double tol = 0.0;        // improvements at or below this do not count
};

// Random valid three-outcome measurement: two Ginibre-factor PSD effects
// rescaled by s/lambda_max(sum), s uniform in (0,1]. forced_scale (in (0,1])
// replaces the random s.
Measurement sample_measurement(int dim, uint64_t seed);
Measurement sample_measurement(int dim, uint64_t seed, double forced_scale);

// Best (smallest) postselected error over cfg.trials random measurements,
// followed by cfg.refine_steps of convex-blend descent on the best find
// (Lambda <- (1-eta)Lambda + eta*Delta, eta halved when a step fails to
// improve). On unequal supports every fourth trial is support-projected
// ((I-Pi_sigma)A(I-Pi_sigma) and mirror), which is where zero-error
// measurements live. The all-accept split {I/2, I/2} seeds the search so the
// result is always defined.
double oracle_min_error(const ProblemInstance& inst, const OracleConfig& cfg);

// Largest direct-trace acceptance per state over sampled members of the
// error-minimizing set (random admissible psi's, c at its bound, c_r cycled
// over a grid plus uniform draws), with a perturbation-descent chain per
// state. Acceptances are evaluated numerically, never via the closed forms.
AcceptancePair oracle_max_acceptance(const ProblemInstance& inst, const OracleConfig& cfg);

// Randomized checkers for the spectral/subspace lemmas the closed forms rest
// on. Each runs `trials` independent random configurations at the given
// dimension and reports the worst violation seen.
enum class Lemma {
    MaxTraceBound,       // Tr(zeta nu) <= ||nu||_inf, tight on the top eigenspace
    MinTraceBound,       // Tr(zeta nu) >= smallest nonzero eigenvalue on supp(nu)
    SingleMin,           // min ||psi/Tr(psi sigma)||_inf = 1/Tr(P sigma) at psi = P/rank
    GenProjEquivalence,  // nu^{1/2}-conjugation membership <=> complement-subspace membership
    ProjectorSubset      // P(P) within P(I-Pi_sigma+P); compression lands in P(P)
};

std::string to_string(Lemma lemma);
Lemma lemma_from_string(const std::string& name);

struct LemmaReport {
    Lemma lemma = Lemma::MaxTraceBound;
    int dim = 0;
    int trials = 0;
    uint64_t seed = 0;
    // Largest amount by which any sample broke the statement; 0 when clean.
    double worst_violation = 0.0;
    // Lemma-specific headline: the closest approach of random samples to the
    // predicted extremum (difference for the trace bounds, ratio >= 1 for
    // SingleMin, worst membership defect for the equivalences).
    double best_value = 0.0;
    bool pass = false;
};

// dim must be in [1, 8]. Failures are data (pass = false), not exceptions.
LemmaReport check_lemma(Lemma lemma, int dim, uint64_t seed, int trials);

}  // namespace psdisc

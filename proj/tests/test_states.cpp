#include <cmath>

#include "doctest.h"
#include "psdisc/states.hpp"

using namespace psdisc;

namespace {
Matrix diag2(double a, double b) { return Matrix{{a, 0.0}, {0.0, b}}; }
}  // namespace

TEST_CASE("DensityOperator::create accepts and renormalizes") {
    DensityOperator d = DensityOperator::create(diag2(0.5, 0.5 + 5e-10));
    CHECK(trace(d.mat()).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.dim() == 2);
}

TEST_CASE("DensityOperator::create rejects bad inputs") {
    CHECK_THROWS_AS(DensityOperator::create(diag2(0.6, 0.6)), NotDensity);     // trace 1.2
    CHECK_THROWS_AS(DensityOperator::create(diag2(1.5, -0.5)), NotPSD);        // negative eig
    CHECK_THROWS_AS(DensityOperator::create(Matrix{{0.5, 0.4}, {0.0, 0.5}}),   // not Hermitian
                    HermDefectTooLarge);
}

TEST_CASE("validate_measurement") {
    Matrix id = Matrix::identity(2);
    CHECK_NOTHROW(validate_measurement(0.5 * id, 0.5 * id));
    CHECK_NOTHROW(validate_measurement(id, Matrix::zero(2)));  // saturates identity

    CHECK_THROWS_AS(validate_measurement(diag2(1.0, -0.1), Matrix::zero(2)), NotPSD);
    CHECK_THROWS_AS(validate_measurement(Matrix::zero(2), diag2(1.0, -0.1)), NotPSD);
    CHECK_THROWS_AS(validate_measurement(0.7 * id, 0.7 * id), SumExceedsIdentity);

    // Effects are hermitized on the way in.
    Measurement m = validate_measurement(Matrix{{0.5, 1e-12}, {0.0, 0.5}}, Matrix::zero(2));
    CHECK(m.lambda_rho == m.lambda_rho.adjoint());
}

TEST_CASE("make_instance validates prior and dimensions") {
    DensityOperator r2 = DensityOperator::create(diag2(0.5, 0.5));
    DensityOperator s2 = DensityOperator::create(diag2(0.75, 0.25));
    DensityOperator s3 = random_density(3, 3, 1);

    ProblemInstance inst = make_instance(r2, s2, 0.3);
    CHECK(inst.p_rho == 0.3);
    CHECK(inst.p_sigma() == doctest::Approx(0.7));
    CHECK(inst.dim() == 2);

    CHECK_THROWS_AS(make_instance(r2, s3, 0.5), DimMismatch);
    CHECK_THROWS_AS(make_instance(r2, s2, 0.0), BadPrior);
    CHECK_THROWS_AS(make_instance(r2, s2, 1.0), BadPrior);
    CHECK_THROWS_AS(make_instance(r2, s2, 1e-13), BadPrior);
    CHECK_THROWS_AS(make_instance(r2, s2, -0.1), BadPrior);
}

TEST_CASE("random_density has the requested structural rank") {
    for (int rank = 1; rank <= 4; ++rank) {
        DensityOperator d = random_density(4, rank, 100 + static_cast<uint64_t>(rank));
        CHECK(support_projector(d.mat()).rank == rank);
        CHECK(trace(d.mat()).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(random_density(3, 0, 1), BadRank);
    CHECK_THROWS_AS(random_density(3, 4, 1), BadRank);
}

TEST_CASE("random_density is seed-deterministic and seed-sensitive") {
    CHECK(random_density(4, 2, 42).mat() == random_density(4, 2, 42).mat());
    CHECK_FALSE(random_density(4, 2, 42).mat() == random_density(4, 2, 43).mat());
}

TEST_CASE("random_density survives a seed sweep") {
    // create() re-validates internally, so constructing 100 of them is itself
    // the assertion; spot-check PSD-ness explicitly.
    for (uint64_t seed = 0; seed < 100; ++seed) {
        DensityOperator d = random_density(4, 2, seed);
        CHECK(loewner_leq(Matrix::zero(4), d.mat()));
    }
}

TEST_CASE("random_psd_in_subspace stays inside the subspace") {
    Matrix p(4);
    p(1, 1) = 1.0;
    p(3, 3) = 1.0;
    Projector proj{p, 2};
    DensityOperator d = random_psd_in_subspace(proj, 5);
    CHECK(membership_defect(d.mat(), p) < 1e-12);
    CHECK(trace(d.mat()).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(random_psd_in_subspace(proj, 5).mat() == d.mat());

    CHECK_THROWS_AS(random_psd_in_subspace(Projector{Matrix::zero(4), 0}, 1), ZeroProjector);
}

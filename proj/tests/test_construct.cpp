#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "psdisc/construct.hpp"
#include "psdisc/rng.hpp"

using namespace psdisc;

namespace {

ProblemInstance instance(const Matrix& rho, const Matrix& sigma, double p_rho) {
    return make_instance(DensityOperator::create(rho), DensityOperator::create(sigma), p_rho);
}

ProblemInstance mu_family(double mu, double p_rho = 0.5) {
    Matrix rho{{mu / 2, 0.0, 0.0}, {0.0, mu / 2, 0.0}, {0.0, 0.0, 1 - mu}};
    Matrix sigma{{mu / 4, 0.0, 0.0}, {0.0, 3 * mu / 4, 0.0}, {0.0, 0.0, 1 - mu}};
    return instance(rho, sigma, p_rho);
}

ProblemInstance qubit_pair(double p_rho) {
    Matrix rho{{0.5, 0.25}, {0.25, 0.5}};
    Matrix sigma{{0.75, 0.0}, {0.0, 0.25}};
    return instance(rho, sigma, p_rho);
}

Matrix basis_proj(int dim, int k) {
    Matrix m(dim);
    m(k, k) = 1.0;
    return m;
}

Projector complement_proj(const Projector& p) {
    return {Matrix::identity(p.mat.dim()) - p.mat, p.mat.dim() - p.rank};
}

void set_c(EqualC1Params& p, double c) { p.c = c; }
void set_c(EqualC2Params& p, double c) { p.c = c; }
void set_c(EqualC3Params& p, double c) { p.c = c; }
void set_c(Unequal1Params& p, double c) { p.c1 = c; }
void set_c(Unequal2Params& p, double c) { p.c2 = c; }
void set_c(Unequal3Params& p, double c) { p.c3 = c; }

}  // namespace

TEST_CASE("extremal subspaces of the commuting family") {
    ExtremalSubspaces subs = extremal_subspaces(mu_family(0.5));
    CHECK(subs.t_max.rank == 1);
    CHECK(max_abs(subs.t_max.mat - basis_proj(3, 0)) < 1e-12);
    CHECK(subs.t_min.rank == 1);
    CHECK(max_abs(subs.t_min.mat - basis_proj(3, 1)) < 1e-12);
    // sigma is diagonal, so the conjugated supports are the same basis lines.
    CHECK(max_abs(subs.p_max.mat - basis_proj(3, 0)) < 1e-12);
    CHECK(max_abs(subs.p_min.mat - basis_proj(3, 1)) < 1e-12);
    CHECK_FALSE(subs.degenerate);
}

TEST_CASE("extremal subspaces of the qubit pair") {
    ExtremalSubspaces subs = extremal_subspaces(qubit_pair(0.5));
    REQUIRE(subs.t_max.rank == 1);
    REQUIRE(subs.t_min.rank == 1);
    // Top eigenvector of the relative operator is (sqrt3, 2+sqrt7)/norm.
    const double s7 = std::sqrt(7.0);
    std::vector<cplx> v{std::sqrt(3.0), 2.0 + s7};
    const double norm = std::sqrt(3.0 + (2.0 + s7) * (2.0 + s7));
    for (auto& z : v) z *= 1.0 / norm;
    CHECK(membership_defect(outer(v, v), subs.t_max.mat) < 1e-10);
    CHECK(trace_prod_real(subs.t_max.mat, subs.t_min.mat) < 1e-10);  // orthogonal
}

TEST_CASE("extremal subspaces require equal supports") {
    ProblemInstance inst = instance(Matrix{{0.5, 0.0}, {0.0, 0.5}}, basis_proj(2, 0), 0.5);
    CHECK_THROWS_AS(extremal_subspaces(inst), UnequalSupports);
}

TEST_CASE("C1 construction of the commuting family is c*(4/mu)|0><0|") {
    for (double mu : {0.2, 0.5, 0.8}) {
        ProblemInstance inst = mu_family(mu);
        EqualC1Params params{basis_proj(3, 0), 0.0, std::nullopt};

        const double bound = max_c(inst, params);
        CHECK(bound == doctest::Approx(mu / 4.0).epsilon(1e-12));

        for (double c : {0.1 * mu / 4.0, mu / 4.0}) {
            params.c = c;
            Measurement m = construct_equal(inst, params);
            CHECK(max_abs(m.lambda_rho - (c * 4.0 / mu) * basis_proj(3, 0)) < 1e-12);
            CHECK(max_abs(m.lambda_sigma) == 0.0);

            auto e = postselected_error(inst, m);
            REQUIRE(e.has_value());
            CHECK(*e == doctest::Approx(1.0 / 3.0).epsilon(1e-11));

            MembershipReport rep = is_error_minimizing_equal(inst, m);
            CHECK(rep.minimizing);
            CHECK(rep.equal_case == EqualCase::C1);

            // C1 members never accept-as-sigma.
            CHECK(trace_prod_real(m.lambda_sigma, inst.rho.mat()) < 1e-10);
            CHECK(trace_prod_real(m.lambda_sigma, inst.sigma.mat()) < 1e-10);
        }
    }
}

TEST_CASE("C3 construction of the qubit pair hits e_s for interior splits") {
    ProblemInstance inst = qubit_pair(0.5);
    ExtremalSubspaces subs = extremal_subspaces(inst);
    const double e_s = min_postselected_error(inst).e_s;

    for (double c_r : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        EqualC3Params params{subs.p_max.mat, subs.p_min.mat, 0.0, c_r};
        params.c = max_c(inst, params);
        Measurement m = construct_equal(inst, params);
        auto e = postselected_error(inst, m);
        REQUIRE(e.has_value());
        CHECK(*e == doctest::Approx(e_s).epsilon(1e-10));
        CHECK(is_error_minimizing_equal(inst, m).minimizing);
    }
}

TEST_CASE("construction rejects parameters for the wrong case") {
    ProblemInstance inst = mu_family(0.5);  // classifies as C1
    ExtremalSubspaces subs = extremal_subspaces(inst);
    CHECK_THROWS_AS(construct_equal(inst, EqualC2Params{subs.p_min.mat, 0.05, std::nullopt}),
                    CaseMismatch);
    CHECK_THROWS_AS(construct_equal(inst, Unequal1Params{basis_proj(3, 0), 0.05, std::nullopt}),
                    CaseMismatch);
}

TEST_CASE("construction rejects out-of-range c") {
    ProblemInstance inst = mu_family(0.5);
    EqualC1Params params{basis_proj(3, 0), 0.0, std::nullopt};
    const double bound = max_c(inst, params);

    params.c = 1.01 * bound;
    CHECK_THROWS_AS(construct_equal(inst, params), CBoundViolated);
    params.c = 0.0;
    CHECK_THROWS_AS(construct_equal(inst, params), CBoundViolated);
    params.c = -0.1;
    CHECK_THROWS_AS(construct_equal(inst, params), CBoundViolated);

    // ... but c exactly at the bound is admissible.
    params.c = bound;
    CHECK_NOTHROW(construct_equal(inst, params));
}

TEST_CASE("construction rejects psi outside its admissible subspace") {
    ProblemInstance inst = mu_family(0.5);
    // Allowed C1 subspace is |0><0| (sigma has full rank); |1><1| is outside.
    CHECK_THROWS_AS(construct_equal(inst, EqualC1Params{basis_proj(3, 1), 0.05, std::nullopt}),
                    MembershipViolated);
}

TEST_CASE("construction rejects psi with zero normalizing overlap") {
    // Equal supports spanning {e0,e1} in dim 3: the off-support direction e2
    // is admissible for C1 but has zero overlap with sigma.
    Matrix rho{{0.7, 0.0, 0.0}, {0.0, 0.3, 0.0}, {0.0, 0.0, 0.0}};
    Matrix sigma{{0.4, 0.0, 0.0}, {0.0, 0.6, 0.0}, {0.0, 0.0, 0.0}};
    ProblemInstance inst = instance(rho, sigma, 0.6);
    REQUIRE(classify(inst).equal_case == EqualCase::C1);
    CHECK_THROWS_AS(construct_equal(inst, EqualC1Params{basis_proj(3, 2), 0.05, std::nullopt}),
                    ZeroOverlap);
}

TEST_CASE("degenerate instances only admit endpoint C3 splits") {
    Matrix half{{0.5, 0.0}, {0.0, 0.5}};
    ProblemInstance inst = instance(half, half, 0.5);
    REQUIRE(classify(inst).equal_case == EqualCase::C3);
    REQUIRE(extremal_subspaces(inst).degenerate);

    EqualC3Params interior{half, half, 0.2, 0.5};
    CHECK_THROWS_AS(construct_equal(inst, interior), Degenerate);

    EqualC3Params endpoint{half, half, 0.0, 1.0};
    endpoint.c = max_c(inst, endpoint);
    Measurement m = construct_equal(inst, endpoint);
    auto e = postselected_error(inst, m);
    REQUIRE(e.has_value());
    CHECK(*e == doctest::Approx(0.5).epsilon(1e-12));  // e_s = 1/2 for identical states
}

TEST_CASE("residual effects off the common support do not disturb the error") {
    // Rank-2 equal supports inside dim 3; the residual lives on e2.
    Matrix rho{{0.35, 0.0, 0.0}, {0.0, 0.65, 0.0}, {0.0, 0.0, 0.0}};
    Matrix sigma{{0.7, 0.0, 0.0}, {0.0, 0.3, 0.0}, {0.0, 0.0, 0.0}};
    ProblemInstance inst = instance(rho, sigma, 0.5);
    REQUIRE(classify(inst).equal_supports());
    REQUIRE(classify(inst).equal_case == EqualCase::C1);
    ExtremalSubspaces subs = extremal_subspaces(inst);

    EqualC1Params params{subs.p_max.mat, 0.0, 0.3 * basis_proj(3, 2)};
    params.c = 0.5 * max_c(inst, params);
    Measurement m = construct_equal(inst, params);
    CHECK(opnorm(m.lambda_sigma) == doctest::Approx(0.3));

    const double e_s = min_postselected_error(inst).e_s;
    CHECK(postselected_error(inst, m).value() == doctest::Approx(e_s).epsilon(1e-10));
    CHECK(is_error_minimizing_equal(inst, m).minimizing);

    // A residual leaking into the common support is rejected.
    EqualC1Params bad{subs.p_max.mat, params.c, 0.3 * basis_proj(3, 1)};
    CHECK_THROWS_AS(construct_equal(inst, bad), MembershipViolated);
}

TEST_CASE("measurements supported on the wrong subspace are not minimizing") {
    ProblemInstance inst = mu_family(0.5);
    const double e_s = min_postselected_error(inst).e_s;

    // Detect-rho weight on T_min instead of T_max: valid measurement, larger error.
    Measurement wrong{0.1 * basis_proj(3, 1), Matrix::zero(3)};
    MembershipReport rep = is_error_minimizing_equal(inst, wrong);
    CHECK_FALSE(rep.minimizing);
    CHECK_FALSE(rep.detail.empty());
    CHECK(postselected_error(inst, wrong).value() > e_s + 0.01);

    // All-reject is reported as non-member with an explanation, not an exception.
    MembershipReport rej = is_error_minimizing_equal(inst, {Matrix::zero(3), Matrix::zero(3)});
    CHECK_FALSE(rej.minimizing);
    CHECK_FALSE(rej.detail.empty());
}

TEST_CASE("unequal-support constructions reach zero error") {
    // supp(sigma) strictly inside supp(rho).
    Matrix rho3{{0.5, 0.0, 0.0}, {0.0, 0.25, 0.0}, {0.0, 0.0, 0.25}};
    Matrix sigma3{{0.6, 0.0, 0.0}, {0.0, 0.4, 0.0}, {0.0, 0.0, 0.0}};
    ProblemInstance inside = instance(rho3, sigma3, 0.5);

    Unequal1Params set1{basis_proj(3, 2), 0.0, std::nullopt};
    set1.c1 = max_c(inside, set1);
    CHECK(set1.c1 == doctest::Approx(0.25).epsilon(1e-12));  // Tr(psi rho) / ||psi/Tr||
    Measurement m1 = construct_unequal(inside, set1);
    CHECK(postselected_error(inside, m1).value() <= 1e-10);
    MembershipReport rep1 = is_error_minimizing_unequal(inside, m1);
    CHECK(rep1.minimizing);
    CHECK(rep1.set_tag == 1);

    // Set 2 is empty for this relation, set 3 needs incomparable supports.
    CHECK_THROWS_AS(construct_unequal(inside, Unequal2Params{basis_proj(3, 2), 0.1, std::nullopt}),
                    SetEmptyForSupports);
    CHECK_THROWS_AS(
        construct_unequal(inside, Unequal3Params{basis_proj(3, 2), basis_proj(3, 2), 0.1, 0.5}),
        SetEmptyForSupports);

    // Incomparable supports admit the two-sided set-3 form.
    Matrix rho_i{{0.5, 0.0, 0.0}, {0.0, 0.5, 0.0}, {0.0, 0.0, 0.0}};
    Matrix sigma_i{{0.0, 0.0, 0.0}, {0.0, 0.5, 0.0}, {0.0, 0.0, 0.5}};
    ProblemInstance incomp = instance(rho_i, sigma_i, 0.4);
    Unequal3Params set3{basis_proj(3, 0), basis_proj(3, 2), 0.0, 0.3};
    set3.c3 = max_c(incomp, set3);
    Measurement m3 = construct_unequal(incomp, set3);
    CHECK(postselected_error(incomp, m3).value() <= 1e-10);
    MembershipReport rep3 = is_error_minimizing_unequal(incomp, m3);
    CHECK(rep3.minimizing);
    CHECK(rep3.set_tag == 3);

    // Equal-support instances are rejected outright.
    CHECK_THROWS_AS(construct_unequal(mu_family(0.5), set1), EqualSupports);
}

TEST_CASE("round-trip: constructed members are minimizing and optimal, all variants") {
    // 50 seeded instances per variant; equal-support cases steer the prior
    // relative to the critical prior, unequal ones use structural ranks.
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 3);
        DensityOperator rho = random_density(dim, dim, child_seed(seed, 1));
        DensityOperator sigma = random_density(dim, dim, child_seed(seed, 2));
        const double p_star = critical_prior(rho, sigma).first;
        Rng rng(child_seed(seed, 3));

        auto run_equal = [&](double p_rho, EqualCase expect) {
            ProblemInstance inst = make_instance(rho, sigma, p_rho);
            REQUIRE(classify(inst).equal_case == expect);
            ExtremalSubspaces subs = extremal_subspaces(inst);
            ConstructionParams params;
            if (expect == EqualCase::C1)
                params = EqualC1Params{random_psd_in_subspace(subs.p_max, rng.next_u64()).mat(),
                                       0.0, std::nullopt};
            else if (expect == EqualCase::C2)
                params = EqualC2Params{random_psd_in_subspace(subs.p_min, rng.next_u64()).mat(),
                                       0.0, std::nullopt};
            else
                params = EqualC3Params{subs.p_max.mat, subs.p_min.mat, 0.0,
                                       0.1 + 0.8 * rng.uniform01()};
            const double c = max_c(inst, params) * (0.2 + 0.8 * rng.uniform01());
            std::visit([&](auto& p) { set_c(p, c); }, params);

            Measurement m = construct_equal(inst, params);
            CHECK(is_error_minimizing_equal(inst, m).minimizing);
            auto e = postselected_error(inst, m);
            REQUIRE(e.has_value());
            CHECK(*e == doctest::Approx(min_postselected_error(inst).e_s).epsilon(1e-9));
        };

        run_equal(p_star + 0.5 * (1.0 - p_star), EqualCase::C1);
        run_equal(0.5 * p_star, EqualCase::C2);
        run_equal(p_star, EqualCase::C3);
    }
}

TEST_CASE("round-trip: unequal variants reach zero error, 50 seeds each") {
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        const int dim = 2 + static_cast<int>(seed % 3);
        Rng rng(child_seed(seed, 4));

        auto check_zero_error = [&](const ProblemInstance& inst, const ConstructionParams& params,
                                    int expect_tag) {
            Measurement m = construct_unequal(inst, params);
            MembershipReport rep = is_error_minimizing_unequal(inst, m);
            CHECK(rep.minimizing);
            CHECK(rep.set_tag == expect_tag);
            auto e = postselected_error(inst, m);
            REQUIRE(e.has_value());
            CHECK(*e <= 1e-10);
        };

        {  // set 1: sigma strictly inside rho
            ProblemInstance inst =
                make_instance(random_density(dim, dim, child_seed(seed, 10)),
                              random_density(dim, dim - 1, child_seed(seed, 11)), 0.35);
            Projector off = complement_proj(support_projector(inst.sigma.mat()));
            Unequal1Params params{random_psd_in_subspace(off, rng.next_u64()).mat(), 0.0,
                                  std::nullopt};
            params.c1 = max_c(inst, params) * (0.2 + 0.8 * rng.uniform01());
            check_zero_error(inst, params, 1);
        }
        {  // set 2: rho strictly inside sigma
            ProblemInstance inst =
                make_instance(random_density(dim, dim - 1, child_seed(seed, 20)),
                              random_density(dim, dim, child_seed(seed, 21)), 0.35);
            Projector off = complement_proj(support_projector(inst.rho.mat()));
            Unequal2Params params{random_psd_in_subspace(off, rng.next_u64()).mat(), 0.0,
                                  std::nullopt};
            params.c2 = max_c(inst, params) * (0.2 + 0.8 * rng.uniform01());
            check_zero_error(inst, params, 2);
        }
        {  // set 3: incomparable supports
            ProblemInstance inst =
                make_instance(random_density(dim, dim - 1, child_seed(seed, 30)),
                              random_density(dim, dim - 1, child_seed(seed, 31)), 0.35);
            REQUIRE(classify_support_relation(inst.rho, inst.sigma) ==
                    SupportRelation::Incomparable);
            Projector off_s = complement_proj(support_projector(inst.sigma.mat()));
            Projector off_r = complement_proj(support_projector(inst.rho.mat()));
            Unequal3Params params{random_psd_in_subspace(off_s, rng.next_u64()).mat(),
                                  random_psd_in_subspace(off_r, rng.next_u64()).mat(), 0.0,
                                  0.1 + 0.8 * rng.uniform01()};
            params.c3 = max_c(inst, params) * (0.2 + 0.8 * rng.uniform01());
            check_zero_error(inst, params, 3);
        }
    }
}

#include <complex>
#include <vector>

#include "doctest.h"
#include "psdisc/matrix.hpp"

using namespace psdisc;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("construction and element access") {
    Matrix m{{1.0, 2.0 + I}, {3.0, 4.0}};
    CHECK(m.dim() == 2);
    CHECK(m(0, 0) == cplx{1.0, 0.0});
    CHECK(m(0, 1) == cplx{2.0, 1.0});
    CHECK(m(1, 0) == cplx{3.0, 0.0});

    Matrix z = Matrix::zero(3);
    CHECK(z.dim() == 3);
    CHECK(max_abs(z) == 0.0);

    Matrix id = Matrix::identity(3);
    CHECK(id(0, 0) == cplx{1.0, 0.0});
    CHECK(id(0, 1) == cplx{0.0, 0.0});
    CHECK(trace(id) == cplx{3.0, 0.0});

    CHECK(Matrix{}.empty());
    CHECK_FALSE(id.empty());
}

TEST_CASE("ragged initializer rows are rejected") {
    CHECK_THROWS_AS((Matrix{{1.0, 2.0}, {3.0}}), Error);
}

TEST_CASE("adjoint conjugate-transposes") {
    Matrix m{{1.0 + I, 2.0}, {3.0 * I, 4.0 - I}};
    Matrix a = m.adjoint();
    CHECK(a(0, 0) == std::conj(m(0, 0)));
    CHECK(a(0, 1) == std::conj(m(1, 0)));
    CHECK(a(1, 0) == std::conj(m(0, 1)));
    CHECK(m.adjoint().adjoint() == m);
}

TEST_CASE("arithmetic matches hand-computed values") {
    Matrix a{{1.0, I}, {0.0, 2.0}};
    Matrix b{{1.0, 1.0}, {1.0, 1.0}};

    Matrix sum = a + b;
    CHECK(sum(0, 1) == cplx{1.0, 1.0});
    CHECK((sum - b) == a);

    // (a*b)(0,0) = 1*1 + i*1 = 1+i ; (a*b)(1,1) = 2.
    Matrix prod = a * b;
    CHECK(prod(0, 0) == cplx{1.0, 1.0});
    CHECK(prod(0, 1) == cplx{1.0, 1.0});
    CHECK(prod(1, 0) == cplx{2.0, 0.0});
    CHECK(prod(1, 1) == cplx{2.0, 0.0});

    CHECK((2.0 * a)(1, 1) == cplx{4.0, 0.0});
    CHECK((a * 2.0) == (2.0 * a));

    Matrix c = a;
    c *= I;
    CHECK(c(0, 1) == cplx{-1.0, 0.0});
}

TEST_CASE("product is associative but not commutative on a known pair") {
    Matrix x{{0.0, 1.0}, {0.0, 0.0}};
    Matrix y{{0.0, 0.0}, {1.0, 0.0}};
    CHECK((x * y)(0, 0) == cplx{1.0, 0.0});
    CHECK((y * x)(0, 0) == cplx{0.0, 0.0});
    Matrix z{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(((x * y) * z) == (x * (y * z)));
}

TEST_CASE("trace and trace_prod_real") {
    Matrix a{{1.0, 5.0 * I}, {0.0, 2.0 + I}};
    CHECK(trace(a) == cplx{3.0, 1.0});

    Matrix h1{{1.0, I}, {-I, 2.0}};
    Matrix h2{{3.0, 1.0}, {1.0, 0.0}};
    // Tr(h1 h2) = (3 + i) + (-i + 0) = 3, exactly real for Hermitian pairs.
    CHECK(trace_prod_real(h1, h2) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(trace_prod_real(h1, h2) == doctest::Approx((trace(h1 * h2)).real()));
}

TEST_CASE("outer product") {
    std::vector<cplx> v{1.0, I};
    std::vector<cplx> w{2.0, 0.0};
    Matrix m = outer(v, w);
    CHECK(m(0, 0) == cplx{2.0, 0.0});
    CHECK(m(1, 0) == cplx{0.0, 2.0});
    CHECK(m(0, 1) == cplx{0.0, 0.0});

    // |v><v| is Hermitian with trace ||v||^2.
    Matrix p = outer(v, v);
    CHECK(p == p.adjoint());
    CHECK(trace(p) == cplx{2.0, 0.0});
}

TEST_CASE("norms") {
    Matrix m{{3.0, 0.0}, {0.0, -4.0 * I}};
    CHECK(max_abs(m) == doctest::Approx(4.0));
    CHECK(fro_norm(m) == doctest::Approx(5.0));
}

TEST_CASE("cabs and cabs2 are exact on Pythagorean inputs") {
    CHECK(cabs(cplx{3.0, 4.0}) == 5.0);
    CHECK(cabs2(cplx{3.0, 4.0}) == 25.0);
    CHECK(cabs(cplx{0.0, 0.0}) == 0.0);
}

TEST_CASE("check_same_dim throws DimMismatch with context") {
    Matrix a(2), b(3);
    CHECK_THROWS_AS(check_same_dim(a, b, "test"), DimMismatch);
    CHECK_NOTHROW(check_same_dim(a, a, "test"));
    CHECK_THROWS_AS(a + b, DimMismatch);
    CHECK_THROWS_AS(a * b, DimMismatch);
}

#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "psdisc/errors.hpp"

namespace psdisc {

using cplx = std::complex<double>;

// Platform-stable complex modulus: std::abs(std::complex) may route through
// hypot, whose last bits vary between libm implementations. Magnitudes here
// are O(1), so the naive form is safe and exactly reproducible.
inline double cabs(const cplx& z) {
    return std::sqrt(z.real() * z.real() + z.imag() * z.imag());
}

inline double cabs2(const cplx& z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

// Dense square complex matrix, row-major. Dimensions in this library are tiny
// (states live in dim <= 16), so everything is plain loops over contiguous
// storage; no attempt at blocking or expression templates.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

    // Row-major nested-list constructor, e.g. Matrix{{1,0},{0,1}}.
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static Matrix identity(int dim);
    static Matrix zero(int dim) { return Matrix(dim); }

    int dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }

    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

    Matrix adjoint() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const cplx& s);

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.dim_ == y.dim_ && x.a_ == y.a_;
    }

  private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

Matrix operator+(Matrix x, const Matrix& y);
Matrix operator-(Matrix x, const Matrix& y);
Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator*(const cplx& s, Matrix x);
Matrix operator*(Matrix x, const cplx& s);

cplx trace(const Matrix& m);

// Real part of Tr(x*y); the common case for Hermitian pairs, where the exact
// trace is real up to rounding.
double trace_prod_real(const Matrix& x, const Matrix& y);

// Largest entry modulus; cheap norm used for defect/convergence diagnostics.
double max_abs(const Matrix& m);

double fro_norm(const Matrix& m);

// |v><w| for column vectors given as flat arrays of length dim.
Matrix outer(const std::vector<cplx>& v, const std::vector<cplx>& w);

void check_same_dim(const Matrix& a, const Matrix& b, const char* where);

}  // namespace psdisc

#include "psdisc/matrix.hpp"

#include <string>

namespace psdisc {

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : Matrix(static_cast<int>(rows.size())) {
    int r = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim_)
            throw DimMismatch("Matrix initializer rows must be square");
        int c = 0;
        for (const cplx& z : row) (*this)(r, c++) = z;
        ++r;
    }
}

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    check_same_dim(*this, o, "operator+=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    check_same_dim(*this, o, "operator-=");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(const cplx& s) {
    for (auto& z : a_) z *= s;
    return *this;
}

Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }

Matrix operator*(const Matrix& x, const Matrix& y) {
    check_same_dim(x, y, "operator*");
    const int n = x.dim();
    Matrix out(n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const cplx xv = x(r, k);
            if (xv == cplx{}) continue;
            for (int c = 0; c < n; ++c) out(r, c) += xv * y(k, c);
        }
    return out;
}

Matrix operator*(const cplx& s, Matrix x) { return x *= s; }
Matrix operator*(Matrix x, const cplx& s) { return x *= s; }

cplx trace(const Matrix& m) {
    cplx t{};
    for (int i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

double trace_prod_real(const Matrix& x, const Matrix& y) {
    check_same_dim(x, y, "trace_prod_real");
    const int n = x.dim();
    double t = 0.0;
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const cplx& a = x(r, k);
            const cplx& b = y(k, r);
            t += a.real() * b.real() - a.imag() * b.imag();
        }
    return t;
}

double max_abs(const Matrix& m) {
    double best = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) best = std::max(best, cabs(m(r, c)));
    return best;
}

double fro_norm(const Matrix& m) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) s += cabs2(m(r, c));
    return std::sqrt(s);
}

Matrix outer(const std::vector<cplx>& v, const std::vector<cplx>& w) {
    if (v.size() != w.size()) throw DimMismatch("outer: vector lengths differ");
    const int n = static_cast<int>(v.size());
    Matrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = v[r] * std::conj(w[c]);
    return m;
}

void check_same_dim(const Matrix& a, const Matrix& b, const char* where) {
    if (a.dim() != b.dim())
        throw DimMismatch(std::string(where) + ": dimensions " + std::to_string(a.dim()) +
                          " vs " + std::to_string(b.dim()));
}

}  // namespace psdisc

#include "psdisc/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace psdisc {

namespace {

// Squared Frobenius norm of the strict off-diagonal part.
double offdiag_sq(const Matrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.dim(); ++p)
        for (int q = p + 1; q < a.dim(); ++q) s += 2.0 * cabs2(a(p, q));
    return s;
}

// Make the first significant component of column k real-positive.
void fix_phase(Matrix& v, int k) {
    const int n = v.dim();
    double maxmod = 0.0;
    for (int i = 0; i < n; ++i) maxmod = std::max(maxmod, cabs(v(i, k)));
    if (maxmod == 0.0) return;
    for (int i = 0; i < n; ++i) {
        const double m = cabs(v(i, k));
        if (m > 1e-12 * maxmod) {
            const cplx u = std::conj(v(i, k)) * (1.0 / m);
            for (int j = 0; j < n; ++j) v(j, k) *= u;
            return;
        }
    }
}

bool column_lex_less(const Matrix& v, int a, int b) {
    for (int i = 0; i < v.dim(); ++i) {
        const cplx &x = v(i, a), &y = v(i, b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

}  // namespace

double herm_defect(const Matrix& raw) {
    const int n = raw.dim();
    // i*(raw - raw^dagger) is exactly Hermitian; its spectral radius is the
    // operator norm of the defect.
    Matrix h(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = cplx(0.0, 1.0) * (raw(r, c) - std::conj(raw(c, r)));
    if (max_abs(h) == 0.0) return 0.0;
    return opnorm(h);
}

Matrix hermitize(const Matrix& raw, double tol) {
    const double defect = herm_defect(raw);
    if (defect > tol)
        throw HermDefectTooLarge("hermitize: defect " + std::to_string(defect) +
                                 " exceeds tolerance " + std::to_string(tol));
    const int n = raw.dim();
    Matrix h(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = 0.5 * (raw(r, c) + std::conj(raw(c, r)));
    for (int i = 0; i < n; ++i) h(i, i) = cplx(h(i, i).real(), 0.0);
    return h;
}

EigenSystem eig(const Matrix& hermitian) {
    const int n = hermitian.dim();
    Matrix a = hermitian;
    Matrix v = Matrix::identity(n);

    const double thr = 1e-12 * std::max(1.0, fro_norm(hermitian));
    constexpr int kSweepBudget = 100;

    bool converged = std::sqrt(offdiag_sq(a)) <= thr;
    for (int sweep = 0; sweep < kSweepBudget && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double h = cabs(apq);
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (h <= 1e-18 * std::max(1.0, std::abs(app) + std::abs(aqq))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                // Unitary plane rotation U = diag(1, conj(phase)) * G with G the
                // real Jacobi rotation for [[app, h],[h, aqq]].
                const cplx phase = apq * (1.0 / h);
                const double tau = (aqq - app) / (2.0 * h);
                double t;
                if (tau == 0.0)
                    t = 1.0;
                else
                    t = -(tau > 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx scp = s * std::conj(phase);  // U(q,p)
                const cplx ccp = c * std::conj(phase);  // U(q,q)

                // a <- a * U
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip + scp * aiq;
                    a(i, q) = -s * aip + ccp * aiq;
                }
                // a <- U^dagger * a
                for (int j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(scp) * aqj;
                    a(q, j) = -s * apj + std::conj(ccp) * aqj;
                }
                // Scrub rounding residue on the rotated pair.
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                // v <- v * U
                for (int i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip + scp * viq;
                    v(i, q) = -s * vip + ccp * viq;
                }
            }
        }
        converged = std::sqrt(offdiag_sq(a)) <= thr;
    }
    if (!converged)
        throw ConvergenceFailure("eig: off-diagonal norm above threshold after sweep budget");

    for (int k = 0; k < n; ++k) fix_phase(v, k);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const double lx = a(x, x).real(), ly = a(y, y).real();
        if (lx != ly) return lx > ly;
        return column_lex_less(v, x, y);
    });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = Matrix(n);
    for (int k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

double opnorm(const Matrix& hermitian) {
    if (hermitian.dim() == 0) return 0.0;
    const EigenSystem es = eig(hermitian);
    return std::max(std::abs(es.values.front()), std::abs(es.values.back()));
}

namespace {

// Shared scaffolding: eigendecompose, locate the "numerically nonzero" part of
// the spectrum, and enforce positive semidefiniteness.
struct PsdSpectrum {
    EigenSystem es;
    double zero_thr;  // eigenvalues at or below this count as zero
};

PsdSpectrum psd_spectrum(const Matrix& psd, double rank_tol, const char* where) {
    PsdSpectrum s{eig(psd), 0.0};
    const double norm =
        s.es.values.empty()
            ? 0.0
            : std::max(std::abs(s.es.values.front()), std::abs(s.es.values.back()));
    s.zero_thr = rank_tol * std::max(1.0, norm);
    if (!s.es.values.empty() && s.es.values.back() < -s.zero_thr)
        throw NotPSD(std::string(where) + ": eigenvalue " + std::to_string(s.es.values.back()) +
                     " below -" + std::to_string(s.zero_thr));
    return s;
}

Matrix eigencolumn_outer(const EigenSystem& es, int k) {
    const int n = es.vectors.dim();
    std::vector<cplx> col(n);
    for (int i = 0; i < n; ++i) col[i] = es.vectors(i, k);
    return outer(col, col);
}

}  // namespace

Projector support_projector(const Matrix& psd, double rank_tol) {
    const PsdSpectrum s = psd_spectrum(psd, rank_tol, "support_projector");
    Projector p{Matrix(psd.dim()), 0};
    for (size_t k = 0; k < s.es.values.size(); ++k) {
        if (s.es.values[k] > s.zero_thr) {
            p.mat += eigencolumn_outer(s.es, static_cast<int>(k));
            ++p.rank;
        }
    }
    return p;
}

Projector extremal_projector(const Matrix& psd, Extremal which, double rank_tol,
                             double cluster_tol) {
    const PsdSpectrum s = psd_spectrum(psd, rank_tol, "extremal_projector");
    std::vector<int> nonzero;
    for (size_t k = 0; k < s.es.values.size(); ++k)
        if (s.es.values[k] > s.zero_thr) nonzero.push_back(static_cast<int>(k));
    if (nonzero.empty()) throw ZeroOperator("extremal_projector: operator is zero at rank_tol");

    const double target =
        which == Extremal::Max ? s.es.values[nonzero.front()] : s.es.values[nonzero.back()];
    const double width = cluster_tol * std::max(1.0, s.es.values[nonzero.front()]);

    Projector p{Matrix(psd.dim()), 0};
    for (int k : nonzero) {
        if (std::abs(s.es.values[k] - target) <= width) {
            p.mat += eigencolumn_outer(s.es, k);
            ++p.rank;
        }
    }
    return p;
}

Matrix pseudo_power(const Matrix& psd, double p, double rank_tol) {
    const PsdSpectrum s = psd_spectrum(psd, rank_tol, "pseudo_power");
    Matrix out(psd.dim());
    for (size_t k = 0; k < s.es.values.size(); ++k) {
        const double lam = s.es.values[k];
        if (lam <= s.zero_thr) continue;
        double w;
        if (p == 1.0)
            w = lam;
        else if (p == -1.0)
            w = 1.0 / lam;
        else if (p == 0.5)
            w = std::sqrt(lam);
        else if (p == -0.5)
            w = 1.0 / std::sqrt(lam);
        else if (p == 2.0)
            w = lam * lam;
        else
            w = std::pow(lam, p);
        out += w * eigencolumn_outer(s.es, static_cast<int>(k));
    }
    return out;
}

Matrix relative_operator(const Matrix& nu1, const Matrix& nu2, double rank_tol) {
    check_same_dim(nu1, nu2, "relative_operator");
    const Matrix isq = pseudo_power(nu2, -0.5, rank_tol);
    const Matrix x = isq * nu1 * isq;
    // Mathematically Hermitian; scrub the rounding asymmetry without a defect
    // gate (the asymmetry is conjugation noise, not caller error).
    const int n = x.dim();
    Matrix h(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = 0.5 * (x(r, c) + std::conj(x(c, r)));
    for (int i = 0; i < n; ++i) h(i, i) = cplx(h(i, i).real(), 0.0);
    return h;
}

namespace {

void require_nonzero(const Matrix& nu2, double rank_tol, const char* where) {
    if (support_projector(nu2, rank_tol).rank == 0)
        throw ZeroOperator(std::string(where) + ": second operand is zero");
}

}  // namespace

double r_max(const Matrix& nu1, const Matrix& nu2, double rank_tol) {
    require_nonzero(nu2, rank_tol, "r_max");
    const PsdSpectrum s = psd_spectrum(relative_operator(nu1, nu2, rank_tol), rank_tol, "r_max");
    return s.es.values.empty() ? 0.0 : std::max(0.0, s.es.values.front());
}

double r_min(const Matrix& nu1, const Matrix& nu2, double rank_tol) {
    require_nonzero(nu2, rank_tol, "r_min");
    const PsdSpectrum s = psd_spectrum(relative_operator(nu1, nu2, rank_tol), rank_tol, "r_min");
    double smallest = 0.0;
    for (double lam : s.es.values)
        if (lam > s.zero_thr) smallest = lam;  // values are descending
    return smallest;
}

bool loewner_leq(const Matrix& a, const Matrix& b, double tol) {
    check_same_dim(a, b, "loewner_leq");
    const Matrix d = b - a;
    const EigenSystem es = eig(d);
    if (es.values.empty()) return true;
    const double norm = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
    return es.values.back() >= -tol * std::max(1.0, norm);
}

double max_scale_below(const Matrix& psi, const Matrix& sigma, double rank_tol) {
    check_same_dim(psi, sigma, "max_scale_below");
    if (support_projector(psi, rank_tol).rank == 0)
        throw ZeroOperator("max_scale_below: psi is zero");
    const Projector supp = support_projector(sigma, rank_tol);
    // c*psi <= sigma forces supp(psi) inside supp(sigma); outside of it no
    // positive scale works.
    if (membership_defect(psi, supp.mat) > kMembershipTol * std::max(1.0, opnorm(psi)))
        return 0.0;
    const double rm = r_max(psi, sigma, rank_tol);
    if (rm <= 0.0) return 0.0;
    return 1.0 / rm;
}

double membership_defect(const Matrix& x, const Matrix& subspace_projector) {
    check_same_dim(x, subspace_projector, "membership_defect");
    return opnorm(subspace_projector * x * subspace_projector - x);
}

Projector projector_intersection(const Projector& p1, const Projector& p2, double cluster_tol) {
    check_same_dim(p1.mat, p2.mat, "projector_intersection");
    const Matrix sum = p1.mat + p2.mat;
    const EigenSystem es = eig(sum);
    const double thr = 2.0 - std::max(2.0 * cluster_tol, 1e-9);
    Projector out{Matrix(sum.dim()), 0};
    for (size_t k = 0; k < es.values.size(); ++k) {
        if (es.values[k] >= thr) {
            out.mat += eigencolumn_outer(es, static_cast<int>(k));
            ++out.rank;
        }
    }
    return out;
}

}  // namespace psdisc

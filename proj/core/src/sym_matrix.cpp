#include "oedcalib/sym_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oedcalib {

SymMatrix::SymMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw DomainError("SymMatrix: dim must be >= 1");
    a_.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0);
}

SymMatrix SymMatrix::identity(int dim) {
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
    SymMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[i]);
    return m;
}

void SymMatrix::add_outer(std::span<const double> v, double scale) {
    if (static_cast<int>(v.size()) != dim_)
        throw DomainError("SymMatrix::add_outer: size mismatch");
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j <= i; ++j) a_[index(i, j)] += scale * v[i] * v[j];
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
    if (other.dim_ != dim_) throw DomainError("SymMatrix::+=: dim mismatch");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
}

std::vector<double> SymMatrix::mul(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_) throw DomainError("SymMatrix::mul: size mismatch");
    std::vector<double> y(dim_, 0.0);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

double SymMatrix::quad(std::span<const double> x) const { return bilinear(x, x); }

double SymMatrix::bilinear(std::span<const double> x, std::span<const double> y) const {
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
        throw DomainError("SymMatrix::bilinear: size mismatch");
    double s = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) s += x[i] * (*this)(i, j) * y[j];
    return s;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

EigenDecomposition eigen_sym(const SymMatrix& m) {
    const int n = m.dim();
    // Work on a full copy; V accumulates the rotations.
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        v[i * n + i] = 1.0;
        for (int j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    }
    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
        return std::sqrt(s);
    };
    const double scale = std::max(m.max_abs(), std::numeric_limits<double>::min());
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > 1e-15 * scale; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) <= 1e-30 * scale) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    EigenDecomposition out;
    out.dim = n;
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = a[i * n + i];
    // sort ascending, permuting eigenvectors along
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return out.values[x] < out.values[y]; });
    std::vector<double> vals(n);
    std::vector<double> vecs(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        vals[j] = out.values[order[j]];
        for (int i = 0; i < n; ++i) vecs[j * n + i] = v[i * n + order[j]];
    }
    out.values = std::move(vals);
    out.vectors = std::move(vecs);
    return out;
}

PseudoInverse sym_inverse(const SymMatrix& m) {
    const EigenDecomposition ed = eigen_sym(m);
    const int n = m.dim();
    double lmax = 0.0;
    for (double l : ed.values) lmax = std::max(lmax, std::abs(l));
    const double cutoff = 1e-10 * lmax;
    SymMatrix inv(n);
    int rank = 0;
    for (int k = 0; k < n; ++k) {
        const double l = ed.values[k];
        if (std::abs(l) <= cutoff) continue;
        ++rank;
        const double il = 1.0 / l;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) inv.add(i, j, il * ed.vec(i, k) * ed.vec(j, k));
    }
    return {inv, rank};
}

double log_det(const SymMatrix& m) {
    const EigenDecomposition ed = eigen_sym(m);
    double lmax = 0.0;
    for (double l : ed.values) lmax = std::max(lmax, std::abs(l));
    const double neg_tol = 1e-8 * std::max(1.0, lmax);
    const double zero_cut = 1e-10 * lmax;
    double s = 0.0;
    for (double l : ed.values) {
        if (l < -neg_tol)
            throw NotPSD("log_det: negative eigenvalue " + std::to_string(l));
        if (l <= zero_cut) return -std::numeric_limits<double>::infinity();
        s += std::log(l);
    }
    return s;
}

}  // namespace oedcalib

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

namespace latdist {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Everything in this project is small
// (operators are 2N x 2N with N at most a few dozen sites), so the
// representation favours clarity over blocking tricks.
class CMatrix {
public:
    CMatrix() = default;

    CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0)
            throw std::invalid_argument("CMatrix: negative dimension");
        a_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                  cplx(0.0, 0.0));
    }

    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return a_[index(i, j)]; }
    const cplx& operator()(int i, int j) const { return a_[index(i, j)]; }

    CMatrix adjoint() const {
        CMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    CMatrix& operator+=(const CMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    CMatrix& operator-=(const CMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    CMatrix& operator*=(cplx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("CMatrix: shape mismatch in product");
        CMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0, 0.0)) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend std::vector<cplx> operator*(const CMatrix& a, const std::vector<cplx>& x) {
        if (a.cols_ != static_cast<int>(x.size()))
            throw std::invalid_argument("CMatrix: shape mismatch in matvec");
        std::vector<cplx> y(static_cast<std::size_t>(a.rows_), cplx(0.0, 0.0));
        for (int i = 0; i < a.rows_; ++i) {
            cplx s(0.0, 0.0);
            for (int j = 0; j < a.cols_; ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s;
        }
        return y;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double max_abs_diff(const CMatrix& o) const {
        require_same_shape(o);
        double m = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) m = std::max(m, std::abs(a_[k] - o.a_[k]));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (const auto& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    // Max |A - A^dagger| entry; 0 for an exactly self-adjoint matrix.
    double hermiticity_defect() const {
        if (!square()) return std::numeric_limits<double>::infinity();
        double m = 0.0;
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    void require_same_shape(const CMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("CMatrix: shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

inline CMatrix diag_matrix(const std::vector<cplx>& d) {
    CMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

inline CMatrix diag_matrix(const std::vector<double>& d) {
    CMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

// Kronecker product, block layout a(i,j) * b.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    c(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return c;
}

// Sesquilinear dot, conjugate-linear in the first argument.
inline cplx dot(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("dot: size mismatch");
    cplx s(0.0, 0.0);
    for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
    return s;
}

}  // namespace latdist

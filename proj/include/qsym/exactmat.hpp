#ifndef QSYM_EXACTMAT_HPP
#define QSYM_EXACTMAT_HPP

#include <vector>

#include "qsym/scalar.hpp"

namespace qsym {

// Dense square matrix over Q(i), row-major.
struct ExactMat {
    int n = 0;
    std::vector<GaussScalar> a;

    ExactMat() = default;
    explicit ExactMat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_) {}
    static ExactMat identity(int n) {
        ExactMat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    GaussScalar& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const GaussScalar& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    friend ExactMat operator*(const ExactMat& x, const ExactMat& y) {
        ExactMat z(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                if (x(i, k).is_zero()) continue;
                for (int j = 0; j < x.n; ++j) z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }
    friend bool operator==(const ExactMat& x, const ExactMat& y) { return x.n == y.n && x.a == y.a; }

    ExactMat transpose() const {
        ExactMat t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    GaussScalar det() const {
        ExactMat m = *this;
        GaussScalar d = 1;
        for (int c = 0; c < n; ++c) {
            int p = c;
            while (p < n && m(p, c).is_zero()) ++p;
            if (p == n) return 0;
            if (p != c) {
                for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
                d = -d;
            }
            d *= m(c, c);
            GaussScalar inv = m(c, c).inverse();
            for (int i = c + 1; i < n; ++i) {
                if (m(i, c).is_zero()) continue;
                GaussScalar f = m(i, c) * inv;
                for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
            }
        }
        return d;
    }

    // Gauss-Jordan; throws NotInvertible.
    ExactMat inverse() const {
        ExactMat m = *this, inv = identity(n);
        for (int c = 0; c < n; ++c) {
            int p = c;
            while (p < n && m(p, c).is_zero()) ++p;
            if (p == n) fail(ErrorCode::NotInvertible, "singular scalar matrix");
            if (p != c)
                for (int j = 0; j < n; ++j) {
                    std::swap(m(p, j), m(c, j));
                    std::swap(inv(p, j), inv(c, j));
                }
            GaussScalar s = m(c, c).inverse();
            for (int j = 0; j < n; ++j) {
                m(c, j) *= s;
                inv(c, j) *= s;
            }
            for (int i = 0; i < n; ++i) {
                if (i == c || m(i, c).is_zero()) continue;
                GaussScalar f = m(i, c);
                for (int j = 0; j < n; ++j) {
                    m(i, j) -= f * m(c, j);
                    inv(i, j) -= f * inv(c, j);
                }
            }
        }
        return inv;
    }
};

} // namespace qsym

#endif

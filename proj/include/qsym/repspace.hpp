#ifndef QSYM_REPSPACE_HPP
#define QSYM_REPSPACE_HPP

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qsym/autom.hpp"

namespace qsym {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// A quadruple (X, Y, v, w) on the fiber [X,Y] - vw = tau I.
struct RepPoint {
    int n = 1, r = 1;
    cd tau{1.0, 0.0};
    CMat X, Y, v, w;  // n x n, n x n, n x r, r x n
    double tol = 1e-9;
};

inline double moment_scale(const RepPoint& p) {
    return 1.0 + p.X.norm() * p.Y.norm() + p.v.norm() * p.w.norm();
}

inline double moment_residual(const RepPoint& p) {
    CMat m = p.X * p.Y - p.Y * p.X - p.v * p.w - p.tau * CMat::Identity(p.n, p.n);
    return m.norm();
}

inline double relative_residual(const RepPoint& p) { return moment_residual(p) / moment_scale(p); }

inline void check_shapes(const RepPoint& p) {
    if (p.n < 1 || p.r < 1) fail(ErrorCode::InvalidRank, "n and r must be positive");
    if (p.X.rows() != p.n || p.X.cols() != p.n || p.Y.rows() != p.n || p.Y.cols() != p.n || p.v.rows() != p.n ||
        p.v.cols() != p.r || p.w.rows() != p.r || p.w.cols() != p.n)
        fail(ErrorCode::SpecMismatch, "representation matrices have inconsistent shapes");
}

enum class FiberKind { Cprime, Cdoubleprime };

namespace detail {
inline cd rand_c(std::mt19937_64& g) {
    std::normal_distribution<double> N(0.0, 1.0);
    double re = N(g), im = N(g);
    return {re, im};
}
} // namespace detail

inline RepPoint act(const RepPoint& p, const Endo& psi);

inline RepPoint random_fiber_point(int n, int r, cd tau, std::uint64_t seed, FiberKind kind = FiberKind::Cprime) {
    if (n < 1 || r < 1) fail(ErrorCode::InvalidRank, "n and r must be positive");
    if (std::abs(tau) == 0.0) fail(ErrorCode::FreeActionLost, "tau must be nonzero");
    std::mt19937_64 g(seed);
    RepPoint p;
    p.n = n;
    p.r = r;
    p.tau = tau;
    std::vector<cd> x;
    while (static_cast<int>(x.size()) < n) {
        cd c = detail::rand_c(g);
        bool ok = true;
        for (const cd& e : x) ok = ok && std::abs(e - c) > 0.3;
        if (ok) x.push_back(c);
    }
    p.v = CMat(n, r);
    p.w = CMat(r, n);
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < r; ++a) {
            p.v(i, a) = detail::rand_c(g);
            p.w(a, i) = detail::rand_c(g);
        }
        // Project column i of w so that v_i. w_.i = -tau.
        cd d = p.v.row(i) * p.w.col(i);
        double nv = p.v.row(i).squaredNorm();
        p.w.col(i) += ((-tau - d) / nv) * p.v.row(i).adjoint();
    }
    p.X = CMat::Zero(n, n);
    p.Y = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        p.X(i, i) = x[i];
        p.Y(i, i) = detail::rand_c(g);
        for (int j = 0; j < n; ++j)
            if (i != j) p.Y(i, j) = (p.v.row(i) * p.w.col(j))(0, 0) / (x[i] - x[j]);
    }
    if (kind == FiberKind::Cdoubleprime) p = act(p, build_generator(FourierZero{}, QuiverSpec(r, Orientation::zigzag)));
    return p;
}

// ---- evaluation ----

inline CMat arrow_matrix(const RepPoint& p, Arrow x) {
    if (x == arrow_a()) return p.X;
    if (x == arrow_astar()) return p.Y;
    if (is_d(p.r, x)) return p.v.col(arrow_index(p.r, x) - 1);
    return p.w.row(arrow_index(p.r, x) - 1);
}

inline int vertex_dim(const RepPoint& p, int v) { return v == 1 ? p.n : 1; }

inline CMat eval_poly(const NCPoly& q, const RepPoint& pt) {
    if (q.r() != pt.r) fail(ErrorCode::SpecMismatch, "polynomial rank differs from the point");
    auto blk = q.block();
    if (!blk && !q.is_zero()) fail(ErrorCode::BlockViolation, "polynomial mixes blocks");
    if (q.is_zero()) return CMat::Zero(pt.n, pt.n);
    auto [bi, bj] = *blk;
    CMat out = CMat::Zero(vertex_dim(pt, bi), vertex_dim(pt, bj));
    for (const auto& [w, c] : q.terms()) {
        CMat m = CMat::Identity(vertex_dim(pt, bi), vertex_dim(pt, bi));
        for (Arrow x : w.arrows) m = m * arrow_matrix(pt, x);
        out += c.to_complex() * m;
    }
    return out;
}

// p.psi: every arrow matrix replaced by the evaluation of its image.
inline RepPoint act_unchecked(const RepPoint& p, const Endo& psi) {
    check_shapes(p);
    if (psi.spec.r() != p.r) fail(ErrorCode::SpecMismatch, "endomorphism rank differs from the point");
    RepPoint q = p;
    q.X = eval_poly(psi[arrow_a()], p);
    q.Y = eval_poly(psi[arrow_astar()], p);
    for (int al = 1; al <= p.r; ++al) {
        q.v.col(al - 1) = eval_poly(psi[arrow_d(p.r, al)], p);
        q.w.row(al - 1) = eval_poly(psi[arrow_b(p.r, al)], p);
    }
    return q;
}

inline void check_drift(const RepPoint& before, const RepPoint& after) {
    double scale = std::max(moment_scale(before), moment_scale(after));
    double res = moment_residual(after);
    if (!(res <= 1e3 * after.tol * scale))
        fail(ErrorCode::NumericalDrift, "moment residual " + std::to_string(res) + " exceeds drift bound");
}

inline RepPoint act(const RepPoint& p, const Endo& psi) {
    RepPoint q = act_unchecked(p, psi);
    check_drift(p, q);
    return q;
}

inline RepPoint act(const RepPoint& p, const Generator& g, const QuiverSpec& spec) {
    return act(p, build_generator(g, spec));
}

inline RepPoint act(const RepPoint& p, const GeneratorWord& w, const QuiverSpec& spec) {
    RepPoint q = p;
    for (const auto& g : w) q = act(q, g, spec);
    return q;
}

inline RepPoint gauge(const RepPoint& p, const CMat& g) {
    Eigen::FullPivLU<CMat> lu(g);
    if (g.rows() != p.n || g.cols() != p.n || !lu.isInvertible())
        fail(ErrorCode::NotInvertible, "gauge matrix is singular");
    CMat gi = lu.inverse();
    RepPoint q = p;
    q.X = g * p.X * gi;
    q.Y = g * p.Y * gi;
    q.v = g * p.v;
    q.w = p.w * gi;
    return q;
}

// ---- spectra ----

inline double gap_tol(const CVec& ev) {
    double rho = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) rho = std::max(rho, std::abs(ev(i)));
    return 1e-6 * (1.0 + rho);
}

struct EigenData {
    CVec values;
    CMat vectors;  // columns
    bool regular = false;
};

// Eigen-decomposition with a regularity verdict: distinct eigenvalues and a usable eigenbasis.
inline EigenData eigen_regular(const CMat& M) {
    Eigen::ComplexEigenSolver<CMat> es(M);
    EigenData e{es.eigenvalues(), es.eigenvectors(), true};
    if (es.info() != Eigen::Success) {
        e.regular = false;
        return e;
    }
    double gt = gap_tol(e.values);
    for (Eigen::Index i = 0; i < e.values.size(); ++i)
        for (Eigen::Index j = i + 1; j < e.values.size(); ++j)
            if (std::abs(e.values(i) - e.values(j)) <= gt) e.regular = false;
    Eigen::JacobiSVD<CMat> svd(e.vectors);
    auto s = svd.singularValues();
    if (s(s.size() - 1) <= 1e-10 * s(0)) e.regular = false;
    return e;
}

inline bool is_regular_semisimple(const CMat& M) { return eigen_regular(M).regular; }

struct Diagonalized {
    RepPoint point;
    std::vector<int> perm;  // perm[k] = index of the k-th sorted eigenvalue in solver order
    CMat g;                 // the gauge applied
};

inline bool sort_less(cd a, cd b, double band) {
    if (std::abs(a.real() - b.real()) > band) return a.real() < b.real();
    return a.imag() < b.imag();
}

inline Diagonalized diagonalize_X(const RepPoint& p) {
    EigenData e = eigen_regular(p.X);
    if (!e.regular) fail(ErrorCode::NotRegularSemisimple, "X is not regular semisimple");
    std::vector<int> perm(p.n);
    for (int i = 0; i < p.n; ++i) perm[i] = i;
    double band = gap_tol(e.values) / 2;
    std::sort(perm.begin(), perm.end(), [&](int i, int j) { return sort_less(e.values(i), e.values(j), band); });
    CMat V(p.n, p.n);
    for (int k = 0; k < p.n; ++k) V.col(k) = e.vectors.col(perm[k]);
    CMat g = V.inverse();
    RepPoint q = gauge(p, g);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j)
            if (i != j) q.X(i, j) = 0;
    return {q, perm, g};
}

namespace detail {
inline bool close(cd a, cd b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b)); }

// Compare complete invariants of two points with X regular semisimple.
inline bool invariants_match(const RepPoint& p, const RepPoint& q, double tol) {
    Diagonalized dp = diagonalize_X(p), dq = diagonalize_X(q);
    const int n = p.n;
    std::vector<int> match(n, -1);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        double bd = 0;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            double d = std::abs(dp.point.X(i, i) - dq.point.X(j, j));
            if (best < 0 || d < bd) best = j, bd = d;
        }
        if (!close(dp.point.X(i, i), dq.point.X(best, best), tol)) return false;
        used[best] = true;
        match[i] = best;
    }
    for (int i = 0; i < n; ++i) {
        int j = match[i];
        if (!close(dp.point.Y(i, i), dq.point.Y(j, j), tol)) return false;
        for (int al = 0; al < p.r; ++al)
            for (int be = 0; be < p.r; ++be)
                if (!close(dp.point.v(i, al) * dp.point.w(be, i), dq.point.v(j, al) * dq.point.w(be, j), tol))
                    return false;
    }
    return true;
}
} // namespace detail

inline RepPoint fourier0(const RepPoint& p) {
    RepPoint q = p;
    q.X = -p.Y;
    q.Y = p.X;
    return q;
}

// Equality in the quotient by GL_n, decided on C' (or C'' after F0).
inline bool orbit_equal(const RepPoint& p, const RepPoint& q, double tol = 1e-6) {
    if (p.n != q.n || p.r != q.r) return false;
    if (std::abs(p.tau - q.tau) > tol * (1 + std::abs(p.tau))) return false;
    if (is_regular_semisimple(p.X) && is_regular_semisimple(q.X)) return detail::invariants_match(p, q, tol);
    if (is_regular_semisimple(p.Y) && is_regular_semisimple(q.Y))
        return detail::invariants_match(fourier0(p), fourier0(q), tol);
    fail(ErrorCode::NotComparable, "neither X nor Y is regular semisimple for both points");
}

// ---- Hamiltonians and flows ----

inline CMat mat_power(const CMat& M, int k) {
    CMat out = CMat::Identity(M.rows(), M.cols());
    for (int i = 0; i < k; ++i) out = out * M;
    return out;
}

inline cd hamiltonian(int k, const CMat& m, const RepPoint& p) {
    if (k < 0) fail(ErrorCode::InvalidRank, "k must be non-negative");
    return (mat_power(p.Y, k) * p.v * m * p.w).trace();
}

// Exact flow of J_{k, e_{alpha beta}}; alpha, beta are 1-based.
inline RepPoint flow_elementary(int k, int alpha, int beta, cd t, const RepPoint& p) {
    if (alpha == beta) fail(ErrorCode::NonPolynomialFlow, "diagonal m gives a non-polynomial flow");
    if (alpha < 1 || beta < 1 || alpha > p.r || beta > p.r) fail(ErrorCode::InvalidRank, "index out of range");
    RepPoint q = p;
    CMat V = p.v.col(alpha - 1) * p.w.row(beta - 1);
    for (int i = 1; i <= k; ++i) q.X += t * mat_power(p.Y, k - i) * V * mat_power(p.Y, i - 1);
    CMat Yk = mat_power(p.Y, k);
    q.v.col(beta - 1) -= t * Yk * p.v.col(alpha - 1);
    q.w.row(alpha - 1) += t * p.w.row(beta - 1) * Yk;
    return q;
}

// Fixed-step RK4 for the equations of motion of J_{k,m}. Test oracle only.
inline RepPoint flow_ode(int k, const CMat& m, cd t, const RepPoint& p, int steps = 10000) {
    if (steps < 1) fail(ErrorCode::InvalidRank, "steps must be positive");
    struct D { CMat X, v, w; };
    const CMat Yk = mat_power(p.Y, k);
    std::vector<CMat> Yp(k + 1);
    for (int i = 0; i <= k; ++i) Yp[i] = mat_power(p.Y, i);
    auto rhs = [&](const CMat& v, const CMat& w) {
        CMat vmw = v * m * w;
        D d{CMat::Zero(p.n, p.n), -Yk * v * m, m * w * Yk};
        for (int i = 1; i <= k; ++i) d.X += Yp[k - i] * vmw * Yp[i - 1];
        return d;
    };
    RepPoint q = p;
    cd h = t / static_cast<double>(steps);
    for (int s = 0; s < steps; ++s) {
        D k1 = rhs(q.v, q.w);
        D k2 = rhs(q.v + 0.5 * h * k1.v, q.w + 0.5 * h * k1.w);
        D k3 = rhs(q.v + 0.5 * h * k2.v, q.w + 0.5 * h * k2.w);
        D k4 = rhs(q.v + h * k3.v, q.w + h * k3.w);
        q.X += h / 6.0 * (k1.X + 2.0 * k2.X + 2.0 * k3.X + k4.X);
        q.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
        q.w += h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
    }
    return q;
}

} // namespace qsym

#endif

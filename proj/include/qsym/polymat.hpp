#ifndef QSYM_POLYMAT_HPP
#define QSYM_POLYMAT_HPP

#include <variant>
#include <vector>

#include "qsym/autom.hpp"

namespace qsym {

enum class Var { a, astar };

// Polynomial in one variable with coefficients c[k] of var^k; trailing zeros trimmed.
class UniPoly {
public:
    UniPoly() = default;
    UniPoly(std::vector<GaussScalar> c) : c_(std::move(c)) { trim(); }  // NOLINT(implicit)
    UniPoly(const GaussScalar& c) : c_{c} { trim(); }                   // NOLINT(implicit)
    UniPoly(int c) : UniPoly(GaussScalar(c)) {}                          // NOLINT(implicit)
    static UniPoly x() { return UniPoly(std::vector<GaussScalar>{0, 1}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<GaussScalar>& coeffs() const { return c_; }
    GaussScalar coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : GaussScalar(); }
    GaussScalar lead() const { return c_.empty() ? GaussScalar() : c_.back(); }

    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) { return *this += -o; }
    UniPoly operator-() const {
        UniPoly p = *this;
        for (auto& x : p.c_) x = -x;
        return p;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<GaussScalar> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    // Euclidean division over the coefficient field.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) fail(ErrorCode::NotInvertible, "polynomial division by zero");
        UniPoly q, rem = *this;
        GaussScalar li = d.lead().inverse();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            int shift = rem.degree() - d.degree();
            GaussScalar f = rem.lead() * li;
            std::vector<GaussScalar> t(shift + 1);
            t[shift] = f;
            UniPoly term(std::move(t));
            q += term;
            rem -= term * d;
        }
        return {q, rem};
    }

    // As an element of A_1: sum c_k var^k with var^0 = e1.
    NCPoly to_ncpoly(int r, Var v) const {
        NCPoly out(r), pw = NCPoly::eps(r, 1);
        NCPoly x = NCPoly::arrow(r, v == Var::a ? arrow_a() : arrow_astar());
        for (std::size_t k = 0; k < c_.size(); ++k) {
            out += pw * c_[k];
            pw = pw * x;
        }
        return out;
    }

    // Inverse of to_ncpoly; throws if p is not a polynomial in the single variable.
    static UniPoly from_ncpoly(const NCPoly& p, Var v) {
        std::vector<GaussScalar> c;
        Arrow x = v == Var::a ? arrow_a() : arrow_astar();
        for (const auto& [w, s] : p.terms()) {
            if (w.src != 1 || w.tgt != 1) fail(ErrorCode::BlockViolation, "entry is not in A1");
            for (Arrow y : w.arrows)
                if (y != x) fail(ErrorCode::BlockViolation, "entry is not a polynomial in one variable");
            if (c.size() <= w.length()) c.resize(w.length() + 1);
            c[w.length()] += s;
        }
        return UniPoly(std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussScalar> c_;
};

inline std::string to_string(const UniPoly& p, Var v) {
    if (p.is_zero()) return "0";
    const std::string x = v == Var::a ? "a" : "a*";
    std::string out;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        if (p.coeff(k).is_zero()) continue;
        std::string body = k == 0 ? "" : (k == 1 ? x : x + "^" + std::to_string(k));
        out += format_coeff_term(p.coeff(k), body, first);
        first = false;
    }
    return out;
}

class PolyMat {
public:
    explicit PolyMat(int r = 1, Var v = Var::a) : r_(r), v_(v), e_(static_cast<std::size_t>(r) * r) {}
    static PolyMat identity(int r, Var v = Var::a) {
        PolyMat m(r, v);
        for (int i = 0; i < r; ++i) m(i, i) = 1;
        return m;
    }
    int r() const { return r_; }
    Var var() const { return v_; }
    UniPoly& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * r_ + j]; }
    const UniPoly& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * r_ + j]; }

    friend PolyMat operator*(const PolyMat& x, const PolyMat& y) {
        if (x.r_ != y.r_) fail(ErrorCode::RankMismatch, "matrix sizes differ");
        PolyMat z(x.r_, x.v_);
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.r_; ++k) {
                if (x(i, k).is_zero()) continue;
                for (int j = 0; j < x.r_; ++j) z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }
    friend bool operator==(const PolyMat& x, const PolyMat& y) { return x.r_ == y.r_ && x.e_ == y.e_; }
    friend bool operator!=(const PolyMat& x, const PolyMat& y) { return !(x == y); }

    PolyMat minor(int row, int col) const {
        PolyMat m(r_ - 1, v_);
        for (int i = 0, ii = 0; i < r_; ++i) {
            if (i == row) continue;
            for (int j = 0, jj = 0; j < r_; ++j) {
                if (j == col) continue;
                m(ii, jj++) = (*this)(i, j);
            }
            ++ii;
        }
        return m;
    }

    PathMat to_pathmat() const {
        PathMat m(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) m(i, j) = (*this)(i, j).to_ncpoly(r_, v_);
        return m;
    }

private:
    int r_;
    Var v_;
    std::vector<UniPoly> e_;
};

inline UniPoly pm_det(const PolyMat& A) {
    const int r = A.r();
    if (r == 1) return A(0, 0);
    if (r == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    UniPoly d;
    for (int j = 0; j < r; ++j) {
        if (A(0, j).is_zero()) continue;
        UniPoly t = A(0, j) * pm_det(A.minor(0, j));
        d += j % 2 ? -t : t;
    }
    return d;
}

inline GaussScalar unit_det(const PolyMat& A) {
    UniPoly d = pm_det(A);
    if (d.is_zero() || !d.is_constant()) fail(ErrorCode::NotUnit, "determinant is not a nonzero constant");
    return d.coeff(0);
}

// Adjugate over the unit determinant.
inline PolyMat pm_inverse(const PolyMat& A) {
    GaussScalar di = unit_det(A).inverse();
    const int r = A.r();
    PolyMat inv(r, A.var());
    if (r == 1) {
        inv(0, 0) = UniPoly(di);
        return inv;
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            UniPoly c = pm_det(A.minor(j, i)) * UniPoly(di);
            inv(i, j) = (i + j) % 2 ? -c : c;
        }
    return inv;
}

struct Transvection {
    int alpha, beta;  // 1-based, alpha != beta
    UniPoly p;
};
struct ScalarMat {
    ExactMat T;
};
using ElemFactor = std::variant<Transvection, ScalarMat>;

inline PolyMat factor_matrix(const ElemFactor& f, int r, Var v) {
    PolyMat m = PolyMat::identity(r, v);
    if (auto* t = std::get_if<Transvection>(&f)) {
        m(t->alpha - 1, t->beta - 1) += t->p;
    } else {
        const auto& T = std::get<ScalarMat>(f).T;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) m(i, j) = UniPoly(T(i, j));
    }
    return m;
}

inline PolyMat factor_product(const std::vector<ElemFactor>& fs, int r, Var v) {
    PolyMat m = PolyMat::identity(r, v);
    for (const auto& f : fs) m = m * factor_matrix(f, r, v);
    return m;
}

// A = E_1 ... E_k D with transvections E_i and a constant matrix D (omitted when D = I).
inline std::vector<ElemFactor> pm_factor(const PolyMat& A) {
    unit_det(A);
    const int r = A.r();
    PolyMat B = A;
    std::vector<ElemFactor> out;
    // row_i += q row_p, recorded through its inverse factor.
    auto row_op = [&](int i, int p, const UniPoly& q) {
        if (q.is_zero()) return;
        for (int j = 0; j < r; ++j) B(i, j) += q * B(p, j);
        out.push_back(Transvection{i + 1, p + 1, -q});
    };
    for (int c = 0; c < r; ++c) {
        int p = -1;
        for (;;) {
            p = -1;
            for (int i = c; i < r; ++i)
                if (!B(i, c).is_zero() && (p < 0 || B(i, c).degree() < B(p, c).degree())) p = i;
            if (p < 0) fail(ErrorCode::NotUnit, "matrix is singular");
            bool done = true;
            for (int i = c; i < r; ++i) {
                if (i == p || B(i, c).is_zero()) continue;
                row_op(i, p, -B(i, c).divmod(B(p, c)).first);
                if (!B(i, c).is_zero()) done = false;
            }
            if (done) break;
        }
        if (!B(p, c).is_constant()) fail(ErrorCode::NotUnit, "pivot is not a unit");
        if (p != c) {
            GaussScalar piv = B(p, c).coeff(0);
            row_op(c, p, UniPoly(piv.inverse()));
            row_op(p, c, UniPoly(-piv));
        }
        GaussScalar inv = B(c, c).coeff(0).inverse();
        for (int i = 0; i < c; ++i)
            if (!B(i, c).is_zero()) row_op(i, c, -(B(i, c) * UniPoly(inv)));
    }
    // B is now constant and diagonal.
    std::vector<ElemFactor> fs = std::move(out);
    ExactMat D(r);
    bool is_id = true;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            D(i, j) = B(i, j).coeff(0);
            if (D(i, j) != GaussScalar(i == j ? 1 : 0)) is_id = false;
        }
    if (!is_id) fs.push_back(ScalarMat{D});
    return fs;
}

// Permutation matrix P with P e_src[k] = e_dst[k] for the listed pairs, identity-like elsewhere.
inline ExactMat permutation_sending(int r, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> img(r, -1);
    std::vector<bool> used(r, false);
    for (auto [s, d] : pairs) {
        img[s] = d;
        used[d] = true;
    }
    int next = 0;
    for (int s = 0; s < r; ++s) {
        if (img[s] >= 0) continue;
        while (used[next]) ++next;
        img[s] = next;
        used[next] = true;
    }
    ExactMat P(r);
    for (int s = 0; s < r; ++s) P(img[s], s) = 1;
    return P;
}

// Generator word whose crossed matrix N equals A.
inline GeneratorWord psi_embed(const PolyMat& A, const QuiverSpec& spec) {
    if (A.r() != spec.r()) fail(ErrorCode::RankMismatch, "matrix size differs from the quiver rank");
    const int r = spec.r();
    GeneratorWord w;
    for (const auto& f : pm_factor(A)) {
        if (auto* s = std::get_if<ScalarMat>(&f)) {
            w.push_back(AffineGL{s->T});
            continue;
        }
        const auto& t = std::get<Transvection>(f);
        if (spec.orientation() != Orientation::zigzag || r < 2)
            fail(ErrorCode::OrientationMismatch, "transvections need the zigzag quiver with r >= 2");
        CycSum fpoly;
        for (int k = 0; k <= t.p.degree(); ++k) {
            LetterWord lw(k, 0);
            lw.push_back(1);
            fpoly.add(lw, t.p.coeff(k));
        }
        // Base transvection: e21 for Lambda(p(a) b11), e12 for Lambda'(p(a*) b11*).
        int base_a = A.var() == Var::a ? 1 : 0, base_b = A.var() == Var::a ? 0 : 1;
        Generator g = A.var() == Var::a ? Generator(Triangular{fpoly}) : Generator(OpTriangular{fpoly});
        if (t.alpha - 1 == base_a && t.beta - 1 == base_b) {
            w.push_back(g);
            continue;
        }
        ExactMat P = permutation_sending(r, {{base_a, t.alpha - 1}, {base_b, t.beta - 1}});
        w.push_back(AffineGL{P});
        w.push_back(g);
        w.push_back(AffineGL{P.inverse()});
    }
    return w;
}

} // namespace qsym

#endif

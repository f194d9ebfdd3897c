#ifndef QSYM_SCALAR_HPP
#define QSYM_SCALAR_HPP

#include <gmpxx.h>

#include <complex>
#include <functional>
#include <ostream>
#include <string>

#include "qsym/errors.hpp"

namespace qsym {

// Exact element of Q(i). mpq_class keeps fractions canonical.
class GaussScalar {
public:
    GaussScalar() : re_(0), im_(0) {}
    GaussScalar(long v) : re_(v), im_(0) {}  // NOLINT(implicit)
    GaussScalar(int v) : re_(v), im_(0) {}   // NOLINT(implicit)
    GaussScalar(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }
    static GaussScalar frac(long p, long q) { return GaussScalar(mpq_class(p, q)); }
    static GaussScalar i() { return GaussScalar(mpq_class(0), mpq_class(1)); }
    // Doubles are dyadic rationals, so this conversion is exact.
    static GaussScalar from_complex(std::complex<double> z) {
        mpq_class re(z.real()), im(z.imag());
        return GaussScalar(re, im);
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussScalar operator-() const { return GaussScalar(-re_, -im_); }
    GaussScalar& operator+=(const GaussScalar& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussScalar& operator-=(const GaussScalar& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussScalar& operator*=(const GaussScalar& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class m = re_ * o.im_ + im_ * o.re_;
        re_ = r;
        im_ = m;
        return *this;
    }
    GaussScalar inverse() const {
        if (is_zero()) fail(ErrorCode::NotInvertible, "division by zero scalar");
        mpq_class n = re_ * re_ + im_ * im_;
        return GaussScalar(mpq_class(re_ / n), mpq_class(-im_ / n));
    }
    GaussScalar& operator/=(const GaussScalar& o) { return *this *= o.inverse(); }
    GaussScalar conj() const { return GaussScalar(re_, -im_); }

    friend GaussScalar operator+(GaussScalar a, const GaussScalar& b) { return a += b; }
    friend GaussScalar operator-(GaussScalar a, const GaussScalar& b) { return a -= b; }
    friend GaussScalar operator*(GaussScalar a, const GaussScalar& b) { return a *= b; }
    friend GaussScalar operator/(GaussScalar a, const GaussScalar& b) { return a /= b; }
    friend bool operator==(const GaussScalar& a, const GaussScalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussScalar& a, const GaussScalar& b) { return !(a == b); }

    // Full textual form: "3", "-1/2", "2i", "(1/2-3i)". Parsable by the expression grammar.
    std::string str() const {
        if (is_real()) return re_.get_str();
        if (sgn(re_) == 0) return imag_str(im_);
        mpq_class a = abs(im_);
        return "(" + re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + imag_str(a) + ")";
    }

    // Sign used when printing a term: -1 when the scalar is "visibly negative".
    int print_sign() const {
        if (is_real()) return sgn(re_) < 0 ? -1 : 1;
        if (sgn(re_) == 0) return sgn(im_) < 0 ? -1 : 1;
        return 1;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussScalar& s) { return os << s.str(); }

private:
    static std::string imag_str(const mpq_class& v) {
        if (v == 1) return "i";
        if (v == -1) return "-i";
        return v.get_str() + "i";
    }
    mpq_class re_, im_;
};

// Plain parser for a rational "p" or "p/q" (optionally signed).
inline mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) fail(ErrorCode::Parse, "bad rational '" + s + "'");
    if (q.get_den() == 0) fail(ErrorCode::Parse, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

} // namespace qsym

#endif

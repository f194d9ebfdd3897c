#ifndef QSYM_NECKLACE_HPP
#define QSYM_NECKLACE_HPP

#include <map>
#include <string>
#include <vector>

#include "qsym/quiver.hpp"

namespace qsym {

using Letter = std::uint16_t;
using LetterWord = std::vector<Letter>;

// Degree first, then lexicographic on letter indices.
struct WordLess {
    bool operator()(const LetterWord& x, const LetterWord& y) const {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    }
};

struct LetterDef {
    std::string name;
    NCPoly expansion;  // cycle at vertex 1; zero poly of rank 0 when the alphabet is abstract
};

class Alphabet {
public:
    Alphabet() = default;
    Alphabet(int r, std::vector<LetterDef> letters, bool concrete)
        : r_(r), letters_(std::move(letters)), concrete_(concrete) {}

    int r() const { return r_; }
    bool concrete() const { return concrete_; }
    std::size_t size() const { return letters_.size(); }
    const LetterDef& operator[](std::size_t k) const { return letters_[k]; }
    const std::vector<LetterDef>& letters() const { return letters_; }

    std::optional<Letter> find(const std::string& name) const {
        for (std::size_t k = 0; k < letters_.size(); ++k)
            if (letters_[k].name == name) return static_cast<Letter>(k);
        return std::nullopt;
    }
    Letter index(const std::string& name) const {
        auto k = find(name);
        if (!k) fail(ErrorCode::UnknownLetter, "letter '" + name + "' not in alphabet");
        return *k;
    }
    // True when every letter prints as one character, so words can be written without spaces.
    bool compact() const {
        for (const auto& l : letters_)
            if (l.name.size() != 1) return false;
        return true;
    }
    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        if (a.r_ != b.r_ || a.letters_.size() != b.letters_.size()) return false;
        for (std::size_t k = 0; k < a.letters_.size(); ++k)
            if (a.letters_[k].name != b.letters_[k].name) return false;
        return true;
    }

private:
    int r_ = 1;
    std::vector<LetterDef> letters_;
    bool concrete_ = false;
};

inline Alphabet free_alphabet(const std::vector<std::string>& names) {
    std::vector<LetterDef> ls;
    for (const auto& n : names) ls.push_back({n, NCPoly(1)});
    return Alphabet(1, std::move(ls), false);
}

inline NCPoly signed_arrow(int r, const Alias& al) { return NCPoly::arrow(r, al.arrow, GaussScalar(al.sign)); }

inline std::string pair_name(const std::string& stem, int i, int j) {
    return stem + std::to_string(i) + std::to_string(j);
}

// {a, b_ij}: b_ij = X_i Y_j over the unstarred generators of the orientation.
inline Alphabet triangular_alphabet(const QuiverSpec& spec) {
    const int r = spec.r();
    std::vector<LetterDef> ls{{"a", NCPoly::arrow(r, arrow_a())}};
    for (std::size_t i = 0; i < spec.out_gens().size(); ++i)
        for (std::size_t j = 0; j < spec.in_gens().size(); ++j)
            ls.push_back({pair_name("b", i + 1, j + 1),
                          signed_arrow(r, spec.out_gens()[i]) * signed_arrow(r, spec.in_gens()[j])});
    return Alphabet(r, std::move(ls), true);
}

// {a*, b*_ij}: b*_ij = Y_j* X_i*.
inline Alphabet op_alphabet(const QuiverSpec& spec) {
    const int r = spec.r();
    std::vector<LetterDef> ls{{"a*", NCPoly::arrow(r, arrow_astar())}};
    for (std::size_t i = 0; i < spec.out_gens().size(); ++i)
        for (std::size_t j = 0; j < spec.in_gens().size(); ++j) {
            Arrow xs = spec.star(spec.out_gens()[i].arrow);
            Arrow ys = spec.star(spec.in_gens()[j].arrow);
            ls.push_back({pair_name("b", i + 1, j + 1) + "*", NCPoly::arrow(r, ys) * NCPoly::arrow(r, xs)});
        }
    return Alphabet(r, std::move(ls), true);
}

// {a, a*, E_ab = d_a b_b}: generates A_1 freely.
inline Alphabet cycle_alphabet(const QuiverSpec& spec) {
    const int r = spec.r();
    std::vector<LetterDef> ls{{"a", NCPoly::arrow(r, arrow_a())}, {"a*", NCPoly::arrow(r, arrow_astar())}};
    for (int al = 1; al <= r; ++al)
        for (int be = 1; be <= r; ++be)
            ls.push_back({pair_name("E", al, be), NCPoly::arrow(r, arrow_d(r, al)) * NCPoly::arrow(r, arrow_b(r, be))});
    return Alphabet(r, std::move(ls), true);
}

// Linear combination of linear words over an alphabet.
class FreePoly {
public:
    using Terms = std::map<LetterWord, GaussScalar, WordLess>;
    FreePoly() = default;
    static FreePoly monomial(LetterWord w, const GaussScalar& c = 1) {
        FreePoly p;
        p.add(w, c);
        return p;
    }
    static FreePoly constant(const GaussScalar& c) { return monomial({}, c); }

    void add(const LetterWord& w, const GaussScalar& c) {
        if (c.is_zero()) return;
        auto [it, ins] = terms_.try_emplace(w, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    GaussScalar coeff(const LetterWord& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? GaussScalar() : it->second;
    }

    FreePoly& operator+=(const FreePoly& o) { for (const auto& [w, c] : o.terms_) add(w, c); return *this; }
    FreePoly& operator-=(const FreePoly& o) { for (const auto& [w, c] : o.terms_) add(w, -c); return *this; }
    FreePoly& operator*=(const GaussScalar& s) {
        if (s.is_zero()) terms_.clear();
        for (auto& [w, c] : terms_) c *= s;
        return *this;
    }
    friend FreePoly operator+(FreePoly a, const FreePoly& b) { return a += b; }
    friend FreePoly operator-(FreePoly a, const FreePoly& b) { return a -= b; }
    friend FreePoly operator*(FreePoly a, const GaussScalar& s) { return a *= s; }
    friend FreePoly operator*(const GaussScalar& s, FreePoly a) { return a *= s; }
    FreePoly operator-() const { return *this * GaussScalar(-1); }
    friend FreePoly operator*(const FreePoly& p, const FreePoly& q) {
        FreePoly out;
        for (const auto& [u, cu] : p.terms_)
            for (const auto& [v, cv] : q.terms_) {
                LetterWord w = u;
                w.insert(w.end(), v.begin(), v.end());
                out.add(w, cu * cv);
            }
        return out;
    }
    friend bool operator==(const FreePoly& a, const FreePoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const FreePoly& a, const FreePoly& b) { return !(a == b); }

private:
    Terms terms_;
};

// Booth's algorithm: start index of the lexicographically least rotation.
template <class T>
std::size_t least_rotation(const std::vector<T>& s) {
    const std::size_t n = s.size();
    if (n < 2) return 0;
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    auto at = [&](std::size_t idx) -> const T& { return s[idx % n]; };
    for (std::size_t j = 1; j < 2 * n; ++j) {
        const T& sj = at(j);
        long i = f[j - k - 1];
        while (i != -1 && sj != at(k + i + 1)) {
            if (sj < at(k + i + 1)) k = j - i - 1;
            i = f[i];
        }
        if (sj != at(k + i + 1)) {  // here i == -1
            if (sj < at(k)) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

template <class T>
std::vector<T> rotate_to_min(const std::vector<T>& s) {
    std::size_t k = least_rotation(s);
    std::vector<T> out(s.begin() + k, s.end());
    out.insert(out.end(), s.begin(), s.begin() + k);
    return out;
}

// Element of the reduced necklace space over an alphabet: canonical rotations, no constants.
class CycSum {
public:
    using Terms = std::map<LetterWord, GaussScalar, WordLess>;
    CycSum() = default;
    explicit CycSum(const FreePoly& p) {
        for (const auto& [w, c] : p.terms()) add(w, c);
    }
    static CycSum word(const LetterWord& w, const GaussScalar& c = 1) {
        CycSum s;
        s.add(w, c);
        return s;
    }
    void add(const LetterWord& w, const GaussScalar& c) {
        if (w.empty() || c.is_zero()) return;
        LetterWord k = rotate_to_min(w);
        auto [it, ins] = terms_.try_emplace(k, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    CycSum& operator+=(const CycSum& o) { for (const auto& [w, c] : o.terms_) add(w, c); return *this; }
    CycSum& operator-=(const CycSum& o) { for (const auto& [w, c] : o.terms_) add(w, -c); return *this; }
    CycSum& operator*=(const GaussScalar& s) {
        if (s.is_zero()) terms_.clear();
        for (auto& [w, c] : terms_) c *= s;
        return *this;
    }
    friend CycSum operator+(CycSum a, const CycSum& b) { return a += b; }
    friend CycSum operator-(CycSum a, const CycSum& b) { return a -= b; }
    friend CycSum operator*(CycSum a, const GaussScalar& s) { return a *= s; }
    friend CycSum operator*(const GaussScalar& s, CycSum a) { return a *= s; }
    CycSum operator-() const { return *this * GaussScalar(-1); }
    friend bool operator==(const CycSum& a, const CycSum& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const CycSum& a, const CycSum& b) { return !(a == b); }

    // Relabel letters (then re-canonicalize).
    CycSum relabel(const std::vector<Letter>& map) const {
        CycSum out;
        for (const auto& [w, c] : terms_) {
            LetterWord v;
            for (Letter l : w) v.push_back(map.at(l));
            out.add(v, c);
        }
        return out;
    }

private:
    Terms terms_;
};

inline FreePoly necklace_derivative(const CycSum& f, Letter g, const Alphabet& alpha) {
    if (g >= alpha.size()) fail(ErrorCode::UnknownLetter, "letter index out of range");
    FreePoly out;
    for (const auto& [w, c] : f.terms()) {
        const std::size_t n = w.size();
        for (std::size_t k = 0; k < n; ++k) {
            if (w[k] != g) continue;
            LetterWord u;
            u.reserve(n - 1);
            for (std::size_t t = 1; t < n; ++t) u.push_back(w[(k + t) % n]);
            out.add(u, c);
        }
    }
    return out;
}

inline FreePoly necklace_derivative(const CycSum& f, const std::string& g, const Alphabet& alpha) {
    return necklace_derivative(f, alpha.index(g), alpha);
}

// Expansion of letter words into the path algebra (constants become multiples of e1).
inline NCPoly expand(const FreePoly& p, const Alphabet& alpha) {
    if (!alpha.concrete()) fail(ErrorCode::UnknownLetter, "abstract alphabet has no path expansion");
    const int r = alpha.r();
    NCPoly out(r);
    for (const auto& [w, c] : p.terms()) {
        NCPoly m = NCPoly::eps(r, 1, c);
        for (Letter l : w) m = m * alpha[l].expansion;
        out += m;
    }
    return out;
}

inline NCPoly expand(const CycSum& f, const Alphabet& alpha) {
    FreePoly p;
    for (const auto& [w, c] : f.terms()) p.add(w, c);
    return expand(p, alpha);
}

inline std::string to_string(const LetterWord& w, const Alphabet& alpha) {
    std::string s;
    const bool compact = alpha.compact();
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k && !compact) s += ' ';
        s += alpha[w[k]].name;
    }
    return s;
}

template <class Terms>
std::string terms_to_string(const Terms& terms, const Alphabet& alpha) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms) {
        out += format_coeff_term(c, w.empty() ? std::string() : to_string(w, alpha), first);
        first = false;
    }
    return out;
}

inline std::string to_string(const FreePoly& p, const Alphabet& alpha) { return terms_to_string(p.terms(), alpha); }
inline std::string to_string(const CycSum& p, const Alphabet& alpha) { return terms_to_string(p.terms(), alpha); }

// ---- arrow-level necklaces ----

inline PathWord canonicalize(const PathWord& w) {
    if (!w.closed()) fail(ErrorCode::NotClosed, "cannot canonicalize an open path");
    if (w.empty()) return w;
    PathWord out;
    out.arrows = rotate_to_min(w.arrows);
    return out;  // src/tgt filled by caller that knows r
}

inline PathWord canonicalize(const PathWord& w, int r) {
    PathWord out = canonicalize(w);
    if (!out.empty()) {
        out.tgt = static_cast<std::uint8_t>(arrow_target(r, out.arrows.front()));
        out.src = static_cast<std::uint8_t>(arrow_source(r, out.arrows.back()));
    }
    return out;
}

// Closed paths modulo rotation, with optional e1/e2 terms.
class NecklaceSum {
public:
    explicit NecklaceSum(int r = 1) : poly_(r) {}
    explicit NecklaceSum(const NCPoly& p) : poly_(p.r()) {
        for (const auto& [w, c] : p.terms()) poly_.add(canonicalize(w, p.r()), c);
    }
    const NCPoly& poly() const { return poly_; }
    int r() const { return poly_.r(); }
    bool is_zero() const { return poly_.is_zero(); }
    NecklaceSum& operator+=(const NecklaceSum& o) { poly_ += o.poly_; return *this; }
    NecklaceSum& operator-=(const NecklaceSum& o) { poly_ -= o.poly_; return *this; }
    friend NecklaceSum operator+(NecklaceSum a, const NecklaceSum& b) { return a += b; }
    friend NecklaceSum operator-(NecklaceSum a, const NecklaceSum& b) { return a -= b; }
    friend NecklaceSum operator*(const GaussScalar& s, NecklaceSum a) { a.poly_ *= s; return a; }
    friend bool operator==(const NecklaceSum& a, const NecklaceSum& b) { return a.poly_ == b.poly_; }
    friend bool operator!=(const NecklaceSum& a, const NecklaceSum& b) { return !(a == b); }

private:
    NCPoly poly_;
};

// Derivative of a necklace with respect to an arrow xi; lands in the block from t(xi) to s(xi).
inline NCPoly necklace_derivative(const NecklaceSum& f, Arrow xi) {
    const int r = f.r();
    NCPoly out(r);
    for (const auto& [w, c] : f.poly().terms()) {
        const std::size_t n = w.length();
        for (std::size_t k = 0; k < n; ++k) {
            if (w.arrows[k] != xi) continue;
            PathWord u;
            for (std::size_t t = 1; t < n; ++t) u.arrows.push_back(w.arrows[(k + t) % n]);
            u.tgt = static_cast<std::uint8_t>(arrow_source(r, xi));
            u.src = static_cast<std::uint8_t>(arrow_target(r, xi));
            out.add(u, c);
        }
    }
    return out;
}

inline NecklaceSum poisson_bracket(const NecklaceSum& w1, const NecklaceSum& w2, const QuiverSpec& spec) {
    if (w1.r() != spec.r() || w2.r() != spec.r()) fail(ErrorCode::SpecMismatch, "bracket operands over another rank");
    NCPoly acc(spec.r());
    for (const auto& pr : spec.pairs()) {
        NCPoly t = necklace_derivative(w1, pr.u) * necklace_derivative(w2, pr.v) -
                   necklace_derivative(w1, pr.v) * necklace_derivative(w2, pr.u);
        acc += t * GaussScalar(pr.sign);
    }
    return NecklaceSum(acc);
}

struct MomentElement {
    NCPoly c, c1, c2;
};

inline MomentElement moment_element(const QuiverSpec& spec) {
    const int r = spec.r();
    NCPoly c(r);
    for (const auto& pr : spec.pairs())
        c += commutator(NCPoly::arrow(r, pr.u), NCPoly::arrow(r, pr.v)) * GaussScalar(pr.sign);
    return {c, project_block(c, 1, 1), project_block(c, 2, 2)};
}

} // namespace qsym

#endif

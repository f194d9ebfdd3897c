#ifndef QSYM_QUIVER_HPP
#define QSYM_QUIVER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsym/errors.hpp"
#include "qsym/scalar.hpp"

namespace qsym {

using Arrow = std::uint16_t;

enum class Orientation { zigzag, single_x, all_d };

inline const char* orientation_name(Orientation o) {
    switch (o) {
    case Orientation::zigzag: return "zigzag";
    case Orientation::single_x: return "single_x";
    case Orientation::all_d: return "all_d";
    }
    return "?";
}

inline Orientation parse_orientation(const std::string& s) {
    if (s == "zigzag") return Orientation::zigzag;
    if (s == "single_x") return Orientation::single_x;
    if (s == "all_d") return Orientation::all_d;
    fail(ErrorCode::Parse, "unknown orientation '" + s + "'");
}

// Raw arrow numbering, which is also the canonical letter order:
// a = 0, a* = 1, d_alpha = 1 + alpha, b_alpha = 1 + r + alpha.
inline Arrow arrow_a() { return 0; }
inline Arrow arrow_astar() { return 1; }
inline Arrow arrow_d(int r, int alpha) { (void)r; return static_cast<Arrow>(1 + alpha); }
inline Arrow arrow_b(int r, int alpha) { return static_cast<Arrow>(1 + r + alpha); }
inline int arrow_count(int r) { return 2 * r + 2; }
inline bool is_d(int r, Arrow x) { return x >= 2 && x < 2 + r; }
inline bool is_b(int r, Arrow x) { return x >= 2 + r && x < 2 + 2 * r; }
// 1-based index alpha of a d or b arrow.
inline int arrow_index(int r, Arrow x) { return is_d(r, x) ? x - 1 : x - 1 - r; }
inline int arrow_source(int r, Arrow x) { return is_d(r, x) ? 2 : (is_b(r, x) ? 1 : 1); }
inline int arrow_target(int r, Arrow x) { return is_d(r, x) ? 1 : (is_b(r, x) ? 2 : 1); }

inline std::string raw_arrow_name(int r, Arrow x) {
    if (x == 0) return "a";
    if (x == 1) return "a*";
    if (is_d(r, x)) return "d" + std::to_string(arrow_index(r, x));
    return "b" + std::to_string(arrow_index(r, x));
}

// A symplectic pair (u unstarred, v its partner) contributing sign*[u, v] to c.
struct SymPair {
    Arrow u, v;
    int sign;
};

// Signed alias: the named generator equals sign * raw arrow.
struct Alias {
    std::string name;
    Arrow arrow;
    int sign;
};

class QuiverSpec {
public:
    QuiverSpec() = default;
    QuiverSpec(int r, Orientation o) : r_(r), orient_(o) {
        if (r < 1) fail(ErrorCode::InvalidRank, "rank must be >= 1, got " + std::to_string(r));
        build();
    }

    int r() const { return r_; }
    Orientation orientation() const { return orient_; }
    int n_x() const { return (r_ + 1) / 2; }
    int n_y() const { return r_ / 2; }
    int q() const { return n_x() * n_y(); }
    int arrows() const { return arrow_count(r_); }

    Arrow star(Arrow x) const { return partner_[x]; }
    bool unstarred(Arrow x) const { return unstarred_[x]; }
    const std::vector<SymPair>& pairs() const { return pairs_; }

    // Unstarred 2->1 generators X_i (as signed raw arrows) and unstarred 1->2 generators Y_j.
    // The partner of each has sign +1 by construction.
    const std::vector<Alias>& out_gens() const { return out_; }
    const std::vector<Alias>& in_gens() const { return in_; }

    const std::vector<Alias>& aliases() const { return aliases_; }

    // Name of an arrow in the alias alphabet, with the sign relating alias to raw arrow.
    std::pair<std::string, int> alias_of(Arrow x) const {
        const auto& al = alias_by_arrow_[x];
        if (al) return {al->name, al->sign};
        return {raw_arrow_name(r_, x), 1};
    }

    // Resolve a name (raw or alias) to a signed arrow.
    std::optional<Alias> lookup(const std::string& name) const {
        for (int x = 0; x < arrows(); ++x)
            if (raw_arrow_name(r_, static_cast<Arrow>(x)) == name) return Alias{name, static_cast<Arrow>(x), 1};
        for (const auto& al : aliases_)
            if (al.name == name) return al;
        return std::nullopt;
    }

    friend bool operator==(const QuiverSpec& a, const QuiverSpec& b) {
        return a.r_ == b.r_ && a.orient_ == b.orient_;
    }

private:
    void add_alias(const std::string& n, Arrow x, int s) {
        aliases_.push_back({n, x, s});
        alias_by_arrow_[x] = Alias{n, x, s};
    }

    void build() {
        int na = arrows();
        partner_.assign(na, 0);
        unstarred_.assign(na, false);
        alias_by_arrow_.assign(na, std::nullopt);
        partner_[0] = 1;
        partner_[1] = 0;
        unstarred_[0] = true;
        pairs_.push_back({0, 1, 1});
        for (int al = 1; al <= r_; ++al) {
            partner_[arrow_d(r_, al)] = arrow_b(r_, al);
            partner_[arrow_b(r_, al)] = arrow_d(r_, al);
        }
        switch (orient_) {
        case Orientation::zigzag:
            for (int al = 1; al <= r_; ++al) {
                Arrow d = arrow_d(r_, al), b = arrow_b(r_, al);
                if (al % 2 == 1) {
                    int i = (al + 1) / 2;
                    unstarred_[d] = true;
                    pairs_.push_back({d, b, -1});
                    out_.push_back({"x" + std::to_string(i), d, -1});
                    add_alias("x" + std::to_string(i), d, -1);
                    add_alias("x" + std::to_string(i) + "*", b, 1);
                } else {
                    int j = al / 2;
                    unstarred_[b] = true;
                    pairs_.push_back({b, d, 1});
                    in_.push_back({"y" + std::to_string(j), b, 1});
                    add_alias("y" + std::to_string(j), b, 1);
                    add_alias("y" + std::to_string(j) + "*", d, 1);
                }
            }
            break;
        case Orientation::single_x:
            for (int al = 1; al <= r_; ++al) {
                Arrow d = arrow_d(r_, al), b = arrow_b(r_, al);
                if (al == 1) {
                    unstarred_[d] = true;
                    pairs_.push_back({d, b, 1});
                    out_.push_back({"x1", d, 1});
                    add_alias("x1", d, 1);
                    add_alias("x1*", b, 1);
                } else {
                    unstarred_[b] = true;
                    pairs_.push_back({b, d, 1});
                    std::string y = "y" + std::to_string(al - 1);
                    in_.push_back({y, b, 1});
                    add_alias(y, b, 1);
                    add_alias(y + "*", d, 1);
                }
            }
            break;
        case Orientation::all_d:
            for (int al = 1; al <= r_; ++al) {
                Arrow d = arrow_d(r_, al), b = arrow_b(r_, al);
                unstarred_[d] = true;
                pairs_.push_back({d, b, 1});
                out_.push_back({"d" + std::to_string(al), d, 1});
            }
            break;
        }
    }

    int r_ = 1;
    Orientation orient_ = Orientation::zigzag;
    std::vector<Arrow> partner_;
    std::vector<bool> unstarred_;
    std::vector<SymPair> pairs_;
    std::vector<Alias> out_, in_, aliases_;
    std::vector<std::optional<Alias>> alias_by_arrow_;
};

inline QuiverSpec build_quiver(int r, Orientation o) { return QuiverSpec(r, o); }

// A path in written (function-composition) order: arrows[0] is traversed last.
struct PathWord {
    std::vector<Arrow> arrows;
    std::uint8_t src = 1, tgt = 1;

    static PathWord eps(int v) { return PathWord{{}, static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v)}; }
    static PathWord single(int r, Arrow x) {
        return PathWord{{x}, static_cast<std::uint8_t>(arrow_source(r, x)),
                        static_cast<std::uint8_t>(arrow_target(r, x))};
    }
    std::size_t length() const { return arrows.size(); }
    bool empty() const { return arrows.empty(); }
    bool closed() const { return src == tgt; }

    friend bool operator<(const PathWord& x, const PathWord& y) {
        if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
        if (x.arrows != y.arrows) return x.arrows < y.arrows;
        if (x.src != y.src) return x.src < y.src;
        return x.tgt < y.tgt;
    }
    friend bool operator==(const PathWord& x, const PathWord& y) {
        return x.arrows == y.arrows && x.src == y.src && x.tgt == y.tgt;
    }
};

// Product of composable words (caller checks p.src == q.tgt).
inline PathWord concat(const PathWord& p, const PathWord& q) {
    PathWord w;
    w.arrows.reserve(p.arrows.size() + q.arrows.size());
    w.arrows = p.arrows;
    w.arrows.insert(w.arrows.end(), q.arrows.begin(), q.arrows.end());
    w.src = q.src;
    w.tgt = p.tgt;
    return w;
}

class NCPoly {
public:
    using Terms = std::map<PathWord, GaussScalar>;

    explicit NCPoly(int r = 1) : r_(r) {}

    static NCPoly zero(int r) { return NCPoly(r); }
    static NCPoly eps(int r, int v, const GaussScalar& c = 1) { return monomial(r, PathWord::eps(v), c); }
    static NCPoly unit(int r) { return eps(r, 1) + eps(r, 2); }
    static NCPoly arrow(int r, Arrow x, const GaussScalar& c = 1) { return monomial(r, PathWord::single(r, x), c); }
    static NCPoly monomial(int r, PathWord w, const GaussScalar& c = 1) {
        NCPoly p(r);
        p.add(w, c);
        return p;
    }
    // Word from raw arrow indices in written order; must be composable and nonempty.
    static NCPoly word(int r, const std::vector<Arrow>& xs, const GaussScalar& c = 1) {
        if (xs.empty()) fail(ErrorCode::BlockViolation, "empty arrow list");
        PathWord w = PathWord::single(r, xs.back());
        for (int k = static_cast<int>(xs.size()) - 2; k >= 0; --k) {
            PathWord l = PathWord::single(r, xs[k]);
            if (l.src != w.tgt) return NCPoly(r);
            w = concat(l, w);
        }
        return monomial(r, std::move(w), c);
    }

    int r() const { return r_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    GaussScalar coeff(const PathWord& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? GaussScalar() : it->second;
    }

    void add(const PathWord& w, const GaussScalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    int degree() const {
        int d = -1;
        for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.length()));
        return d;
    }

    // Block (target, source) if all monomials agree.
    std::optional<std::pair<int, int>> block() const {
        std::optional<std::pair<int, int>> b;
        for (const auto& [w, c] : terms_) {
            std::pair<int, int> here{w.tgt, w.src};
            if (b && *b != here) return std::nullopt;
            b = here;
        }
        return b;
    }
    bool in_block(int i, int j) const {
        for (const auto& [w, c] : terms_)
            if (w.tgt != i || w.src != j) return false;
        return true;
    }

    NCPoly& operator+=(const NCPoly& o) {
        check_same(o);
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o) {
        check_same(o);
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    NCPoly& operator*=(const GaussScalar& s) {
        if (s.is_zero()) { terms_.clear(); return *this; }
        for (auto& [w, c] : terms_) c *= s;
        return *this;
    }
    NCPoly operator-() const { NCPoly p = *this; p *= GaussScalar(-1); return p; }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(NCPoly a, const GaussScalar& s) { return a *= s; }
    friend NCPoly operator*(const GaussScalar& s, NCPoly a) { return a *= s; }
    friend NCPoly operator*(const NCPoly& p, const NCPoly& q) {
        p.check_same(q);
        NCPoly out(p.r_);
        for (const auto& [u, cu] : p.terms_)
            for (const auto& [v, cv] : q.terms_) {
                if (u.src != v.tgt) continue;
                out.add(concat(u, v), cu * cv);
            }
        return out;
    }
    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.r_ == b.r_ && a.terms_ == b.terms_; }
    friend bool operator!=(const NCPoly& a, const NCPoly& b) { return !(a == b); }

    void check_same(const NCPoly& o) const {
        if (o.r_ != r_)
            fail(ErrorCode::SpecMismatch, "operands over ranks " + std::to_string(r_) + " and " + std::to_string(o.r_));
    }

private:
    int r_;
    Terms terms_;
};

inline NCPoly nc_mul(const NCPoly& p, const NCPoly& q) { return p * q; }
inline NCPoly commutator(const NCPoly& p, const NCPoly& q) { return p * q - q * p; }

inline NCPoly power(const NCPoly& p, int k) {
    NCPoly out = NCPoly::unit(p.r());
    for (int i = 0; i < k; ++i) out = out * p;
    return out;
}

// Check that images[x] lies in the block of arrow x (zero is allowed everywhere).
inline void check_images(int r, const std::vector<NCPoly>& images) {
    if (static_cast<int>(images.size()) != arrow_count(r))
        fail(ErrorCode::SpecMismatch, "image table has wrong size");
    for (int x = 0; x < arrow_count(r); ++x) {
        const NCPoly& im = images[x];
        if (im.r() != r) fail(ErrorCode::SpecMismatch, "image over a different rank");
        if (!im.in_block(arrow_target(r, static_cast<Arrow>(x)), arrow_source(r, static_cast<Arrow>(x))))
            fail(ErrorCode::BlockViolation, "image of " + raw_arrow_name(r, static_cast<Arrow>(x)) + " leaves its block");
    }
}

// Ring morphism determined by arrow images; idempotents are fixed. Images are assumed block-checked.
inline NCPoly substitute_unchecked(const NCPoly& p, const std::vector<NCPoly>& images) {
    const int r = p.r();
    NCPoly out(r);
    for (const auto& [w, c] : p.terms()) {
        if (w.empty()) {
            out.add(w, c);
            continue;
        }
        NCPoly prod = images[w.arrows[0]];
        for (std::size_t k = 1; k < w.arrows.size() && !prod.is_zero(); ++k) prod = prod * images[w.arrows[k]];
        prod *= c;
        out += prod;
    }
    return out;
}

inline NCPoly nc_substitute(const NCPoly& p, const std::vector<NCPoly>& images) {
    check_images(p.r(), images);
    return substitute_unchecked(p, images);
}

inline std::vector<NCPoly> identity_images(int r) {
    std::vector<NCPoly> im;
    for (int x = 0; x < arrow_count(r); ++x) im.push_back(NCPoly::arrow(r, static_cast<Arrow>(x)));
    return im;
}

inline NCPoly project_block(const NCPoly& p, int i, int j) {
    NCPoly out(p.r());
    for (const auto& [w, c] : p.terms())
        if (w.tgt == i && w.src == j) out.add(w, c);
    return out;
}

// p in A_12 written as sum_beta rho_beta d_beta with rho_beta in A_1.
inline std::vector<NCPoly> decompose_left(const NCPoly& p) {
    const int r = p.r();
    std::vector<NCPoly> rho(r, NCPoly(r));
    for (const auto& [w, c] : p.terms()) {
        if (w.tgt != 1 || w.src != 2) fail(ErrorCode::BlockViolation, "decompose_left expects an element of A12");
        Arrow last = w.arrows.back();
        PathWord rest;
        rest.arrows.assign(w.arrows.begin(), w.arrows.end() - 1);
        rest.src = rest.tgt = 1;
        rho[arrow_index(r, last) - 1].add(rest, c);
    }
    return rho;
}

// p in A_21 written as sum_beta b_beta rho_beta with rho_beta in A_1.
inline std::vector<NCPoly> decompose_right(const NCPoly& p) {
    const int r = p.r();
    std::vector<NCPoly> rho(r, NCPoly(r));
    for (const auto& [w, c] : p.terms()) {
        if (w.tgt != 2 || w.src != 1) fail(ErrorCode::BlockViolation, "decompose_right expects an element of A21");
        Arrow first = w.arrows.front();
        PathWord rest;
        rest.arrows.assign(w.arrows.begin() + 1, w.arrows.end());
        rest.src = rest.tgt = 1;
        rho[arrow_index(r, first) - 1].add(rest, c);
    }
    return rho;
}

enum class Naming { raw, alias };

inline std::string format_coeff_term(const GaussScalar& c, const std::string& body, bool first) {
    // body empty means a pure scalar (never happens for paths, used by letter polynomials).
    std::string out;
    int s = c.print_sign();
    GaussScalar a = s < 0 ? -c : c;
    if (first) out += s < 0 ? "-" : "";
    else out += s < 0 ? " - " : " + ";
    if (body.empty()) return out + a.str();
    if (!a.is_one()) out += a.str() + " ";
    return out + body;
}

inline std::string to_string(const NCPoly& p, const QuiverSpec& spec, Naming naming = Naming::raw) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c0] : p.terms()) {
        GaussScalar c = c0;
        std::string body;
        if (w.empty()) {
            body = w.src == 1 ? "e1" : "e2";
        } else {
            for (std::size_t k = 0; k < w.arrows.size(); ++k) {
                std::string nm;
                if (naming == Naming::alias) {
                    auto [n, s] = spec.alias_of(w.arrows[k]);
                    nm = n;
                    if (s < 0) c = -c;
                } else {
                    nm = raw_arrow_name(p.r(), w.arrows[k]);
                }
                if (k) body += ' ';
                body += nm;
            }
        }
        out += format_coeff_term(c, body, first);
        first = false;
    }
    return out;
}

} // namespace qsym

#endif

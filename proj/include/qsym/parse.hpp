#ifndef QSYM_PARSE_HPP
#define QSYM_PARSE_HPP

#include <cctype>
#include <map>
#include <string>

#include "qsym/necklace.hpp"

namespace qsym {

// Recursive-descent parser for
//   expr   := ["+"|"-"] term (("+"|"-") term)*
//   term   := factor+
//   factor := coeff | atom ["^" INT] | "(" expr ")" ["^" INT] | "[" expr "," expr "]"
//   atom   := NAME ["*"]
// Juxtaposition is the product in written (function-composition) order.
// Runs of name characters are split greedily into the longest known names; a bare "i" that is
// not a known name is the imaginary unit.
template <class T>
struct ParseEnv {
    std::map<std::string, T> names;
    T one;
    bool check_blocks = false;  // flag products of nonzero factors that vanish by non-composability
};

namespace parse_detail {

template <class T>
struct Value {
    bool scalar = true;
    GaussScalar s = 0;
    T p{};
    static Value of(const GaussScalar& c) { Value v; v.s = c; return v; }
    static Value poly(T q) { Value v; v.scalar = false; v.p = std::move(q); return v; }
};

template <class T>
class Parser {
public:
    Parser(const std::string& text, const ParseEnv<T>& env) : s_(text), env_(env) {}

    Value<T> parse() {
        Value<T> v = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

    T as_poly(const Value<T>& v) const { return v.scalar ? env_.one * v.s : v.p; }

private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorCode::Parse, "line 1, column " + std::to_string(pos_ + 1) + ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    static bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*'; }

    Value<T> add(const Value<T>& x, const Value<T>& y, int sign) const {
        GaussScalar sg(sign);
        if (x.scalar && y.scalar) return Value<T>::of(x.s + sg * y.s);
        return Value<T>::poly(as_poly(x) + as_poly(y) * sg);
    }
    Value<T> mul(const Value<T>& x, const Value<T>& y) {
        if (x.scalar && y.scalar) return Value<T>::of(x.s * y.s);
        if (x.scalar) return Value<T>::poly(y.p * x.s);
        if (y.scalar) return Value<T>::poly(x.p * y.s);
        T prod = x.p * y.p;
        if constexpr (std::is_same_v<T, NCPoly>)
            if (env_.check_blocks && prod.is_zero() && !x.p.is_zero() && !y.p.is_zero())
                fail(ErrorCode::BlockViolation,
                     "column " + std::to_string(pos_ + 1) + ": product of non-composable factors");
        return Value<T>::poly(prod);
    }

    Value<T> expr() {
        skip();
        int sign = 1;
        if (peek('+') || peek('-')) {
            sign = s_[pos_] == '-' ? -1 : 1;
            ++pos_;
        }
        Value<T> v = add(Value<T>::of(0), term(), sign);
        while (peek('+') || peek('-')) {
            int sg = s_[pos_] == '-' ? -1 : 1;
            ++pos_;
            v = add(v, term(), sg);
        }
        return v;
    }

    bool factor_start() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(' ||
               c == '[' || c == '_';
    }

    Value<T> term() {
        if (!factor_start()) error("expected a factor");
        Value<T> v = factor();
        while (factor_start()) v = mul(v, factor());
        return v;
    }

    int exponent() {
        if (!peek('^')) return 1;
        ++pos_;
        skip();
        std::size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (st == pos_) error("expected an integer exponent");
        return std::stoi(s_.substr(st, pos_ - st));
    }

    Value<T> power(const Value<T>& v, int k) {
        Value<T> out = Value<T>::of(1);
        for (int i = 0; i < k; ++i) out = mul(out, v);
        return out;
    }

    GaussScalar rational() {
        std::size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string ip = s_.substr(st, fs - 1 - st), fp = s_.substr(fs, pos_ - fs);
            mpz_class den = 1;
            for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
            mpq_class q(mpz_class((ip.empty() ? "0" : ip) + fp, 10), den);
            q.canonicalize();
            return GaussScalar(q);
        }
        std::string txt = s_.substr(st, pos_ - st);
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::size_t ds = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (ds == pos_) error("expected a denominator");
            txt += "/" + s_.substr(ds, pos_ - ds);
        }
        return GaussScalar(parse_rational(txt));
    }

    Value<T> factor() {
        skip();
        char c = s_[pos_];
        Value<T> v;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            GaussScalar q = rational();
            if (pos_ < s_.size() && s_[pos_] == 'i' && (pos_ + 1 == s_.size() || !name_char(s_[pos_ + 1]))) {
                ++pos_;
                q = q * GaussScalar::i();
            }
            v = Value<T>::of(q);
        } else if (c == '(') {
            ++pos_;
            v = expr();
            if (!peek(')')) error("expected ')'");
            ++pos_;
        } else if (c == '[') {
            ++pos_;
            Value<T> x = expr();
            if (!peek(',')) error("expected ','");
            ++pos_;
            Value<T> y = expr();
            if (!peek(']')) error("expected ']'");
            ++pos_;
            return add(mul(x, y), mul(y, x), -1);
        } else {
            return name_run();
        }
        return power(v, exponent());
    }

    // A maximal run of name characters, split greedily; the exponent binds to the last atom.
    Value<T> name_run() {
        std::size_t st = pos_;
        while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
        std::size_t end = pos_;
        std::vector<Value<T>> atoms;
        std::size_t k = st;
        while (k < end) {
            std::size_t best = 0;
            for (const auto& [nm, val] : env_.names)
                if (nm.size() > best && s_.compare(k, nm.size(), nm) == 0 && k + nm.size() <= end) best = nm.size();
            if (best == 0) {
                if (s_[k] == 'i') {
                    atoms.push_back(Value<T>::of(GaussScalar::i()));
                    ++k;
                    continue;
                }
                pos_ = k;
                std::size_t e = k;
                while (e < end && std::isalpha(static_cast<unsigned char>(s_[e]))) ++e;
                while (e < end && (std::isdigit(static_cast<unsigned char>(s_[e])) || s_[e] == '*')) ++e;
                fail(ErrorCode::UnknownLetter,
                     "line 1, column " + std::to_string(k + 1) + ": unknown name '" + s_.substr(k, std::max<std::size_t>(1, e - k)) + "'");
            }
            atoms.push_back(Value<T>::poly(env_.names.at(s_.substr(k, best))));
            k += best;
        }
        int e = exponent();
        Value<T> v = Value<T>::of(1);
        for (std::size_t j = 0; j + 1 < atoms.size(); ++j) v = mul(v, atoms[j]);
        return mul(v, power(atoms.back(), e));
    }

    const std::string& s_;
    const ParseEnv<T>& env_;
    std::size_t pos_ = 0;
};

} // namespace parse_detail

template <class T>
T parse_with(const std::string& text, const ParseEnv<T>& env) {
    parse_detail::Parser<T> p(text, env);
    return p.as_poly(p.parse());
}

inline ParseEnv<NCPoly> nc_env(const QuiverSpec& spec, bool check_blocks = true) {
    const int r = spec.r();
    ParseEnv<NCPoly> env{{}, NCPoly::unit(r), check_blocks};
    for (int x = 0; x < arrow_count(r); ++x)
        env.names.emplace(raw_arrow_name(r, static_cast<Arrow>(x)), NCPoly::arrow(r, static_cast<Arrow>(x)));
    for (const auto& al : spec.aliases()) env.names[al.name] = NCPoly::arrow(r, al.arrow, GaussScalar(al.sign));
    env.names["e1"] = NCPoly::eps(r, 1);
    env.names["e2"] = NCPoly::eps(r, 2);
    return env;
}

inline NCPoly parse_nc(const std::string& text, const QuiverSpec& spec) { return parse_with(text, nc_env(spec)); }

inline ParseEnv<FreePoly> free_env(const Alphabet& alpha) {
    ParseEnv<FreePoly> env{{}, FreePoly::constant(1), false};
    for (std::size_t k = 0; k < alpha.size(); ++k)
        env.names.emplace(alpha[k].name, FreePoly::monomial({static_cast<Letter>(k)}));
    return env;
}

inline FreePoly parse_free(const std::string& text, const Alphabet& alpha) { return parse_with(text, free_env(alpha)); }
inline CycSum parse_cyc(const std::string& text, const Alphabet& alpha) { return CycSum(parse_free(text, alpha)); }

// A bare exact scalar such as "3", "-1/2", "2i" or "(1/3-2i)".
inline GaussScalar parse_scalar(const std::string& text) {
    FreePoly p = parse_free(text, Alphabet(1, {}, false));
    for (const auto& [w, c] : p.terms())
        if (!w.empty()) fail(ErrorCode::Parse, "expected a scalar");
    return p.coeff({});
}

} // namespace qsym

#endif

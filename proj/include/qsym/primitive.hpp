#ifndef QSYM_PRIMITIVE_HPP
#define QSYM_PRIMITIVE_HPP

#include <set>
#include <string>
#include <vector>

#include "qsym/necklace.hpp"

namespace qsym {

// A pair (k, w): w is a word in the support of u_k.
struct SupportPair {
    int k;
    LetterWord w;
    friend bool operator<(const SupportPair& x, const SupportPair& y) {
        if (x.k != y.k) return x.k < y.k;
        return WordLess{}(x.w, y.w);
    }
    friend bool operator==(const SupportPair& x, const SupportPair& y) { return x.k == y.k && x.w == y.w; }
};

using PairSet = std::set<SupportPair>;

struct Orbit {
    std::vector<SupportPair> pairs;  // in step order, starting at the representative
    const SupportPair& rep() const { return pairs.front(); }
};

struct Validation {
    bool ok = true;
    std::string witness;
};

inline PairSet support_pairs(const std::vector<FreePoly>& u) {
    PairSet s;
    for (std::size_t k = 0; k < u.size(); ++k)
        for (const auto& [w, c] : u[k].terms()) s.insert({static_cast<int>(k), w});
    return s;
}

// (i, m g_j) -> (j, g_i m); an empty word is its own orbit.
inline SupportPair cyclic_step(const SupportPair& p, const std::vector<Letter>& G) {
    if (p.w.empty()) return p;
    Letter last = p.w.back();
    int j = -1;
    for (std::size_t t = 0; t < G.size(); ++t)
        if (G[t] == last) j = static_cast<int>(t);
    if (j < 0) fail(ErrorCode::NotSolvable, "word ends outside the generator set");
    LetterWord next{G[p.k]};
    next.insert(next.end(), p.w.begin(), p.w.end() - 1);
    return {j, next};
}

inline Validation validate(const std::vector<Letter>& G, const std::vector<FreePoly>& u, const Alphabet& alpha) {
    Validation v;
    if (G.size() != u.size()) return {false, "generator and candidate counts differ"};
    std::set<Letter> inG(G.begin(), G.end());
    PairSet S = support_pairs(u);
    for (const auto& p : S) {
        for (Letter l : p.w)
            if (!inG.count(l)) return {false, "(" + std::to_string(p.k) + ", " + to_string(p.w, alpha) + ") uses a letter outside G"};
    }
    for (const auto& p : S) {
        SupportPair q = cyclic_step(p, G);
        if (!S.count(q))
            return {false, "(" + std::to_string(p.k) + ", " + to_string(p.w, alpha) + ") steps to missing (" +
                               std::to_string(q.k) + ", " + to_string(q.w, alpha) + ")"};
    }
    return v;
}

inline std::vector<Orbit> cyclic_orbits(const PairSet& S, const std::vector<Letter>& G) {
    std::vector<Orbit> out;
    std::set<SupportPair> seen;
    for (const auto& p : S) {  // sorted, so the first unseen pair is the orbit minimum
        if (seen.count(p)) continue;
        Orbit o;
        SupportPair q = p;
        do {
            if (!S.count(q)) fail(ErrorCode::NotClosed, "pair set not closed under the cyclic step");
            o.pairs.push_back(q);
            seen.insert(q);
            q = cyclic_step(q, G);
        } while (!(q == p));
        out.push_back(std::move(o));
    }
    return out;
}

inline FreePoly commutator_sum(const std::vector<Letter>& G, const std::vector<FreePoly>& u) {
    FreePoly acc;
    for (std::size_t k = 0; k < G.size(); ++k) {
        FreePoly g = FreePoly::monomial({G[k]});
        acc += g * u[k] - u[k] * g;
    }
    return acc;
}

// Necklace f with df/dg_k = u_k for every k.
inline CycSum solve_primitive(const std::vector<Letter>& G, const std::vector<FreePoly>& u, const Alphabet& alpha) {
    if (G.size() != u.size()) fail(ErrorCode::NotSolvable, "generator and candidate counts differ");
    if (!commutator_sum(G, u).is_zero()) fail(ErrorCode::NotACocycle, "sum_k [g_k, u_k] is not zero");
    Validation v = validate(G, u, alpha);
    if (!v.ok) fail(ErrorCode::NotSolvable, v.witness);
    CycSum f;
    for (const auto& o : cyclic_orbits(support_pairs(u), G)) {
        const SupportPair& p = o.rep();
        LetterWord fw{G[p.k]};
        fw.insert(fw.end(), p.w.begin(), p.w.end());
        CycSum cand = CycSum::word(fw);
        GaussScalar cw = necklace_derivative(cand, G[p.k], alpha).coeff(p.w);
        f += cand * (u[p.k].coeff(p.w) / cw);
    }
    for (std::size_t k = 0; k < G.size(); ++k)
        if (necklace_derivative(f, G[k], alpha) != u[k])
            fail(ErrorCode::NotSolvable, "candidate primitive fails the derivative check for " + alpha[G[k]].name);
    return f;
}

} // namespace qsym

#endif

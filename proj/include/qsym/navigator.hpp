#ifndef QSYM_NAVIGATOR_HPP
#define QSYM_NAVIGATOR_HPP

#include <cmath>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "qsym/polymat.hpp"
#include "qsym/repspace.hpp"

namespace qsym {

struct NavStep {
    std::string kind;  // "prime", "shear", "triangular", "op_triangular", "fourier0", "regularize", "endgame"
    int level = 0;
    int generators = 0;  // how many generators this step appended
    std::vector<cd> nodes, values;
    double residual = 0;  // relative moment residual after the step
};

struct NavTrace {
    GeneratorWord word;
    std::vector<NavStep> steps;
    RepPoint start, final;
};

struct NavOptions {
    bool rank1_endgame = false;
};

namespace nav_detail {

inline GaussScalar exact(cd z) { return GaussScalar::from_complex(z); }

inline void push(NavTrace& tr, RepPoint& cur, const Generator& g, const QuiverSpec& spec, NavStep st) {
    cur = act(cur, g, spec);
    tr.word.push_back(g);
    st.generators = 1;
    st.residual = relative_residual(cur);
    tr.steps.push_back(std::move(st));
}

inline double relnorm(const CMat& m, const RepPoint& p) { return m.norm() / (1.0 + p.v.norm() + p.w.norm()); }

} // namespace nav_detail

// ---- interpolation ----

// Coefficients (lowest first) of the unique polynomial of degree < n through the nodes.
inline std::vector<cd> interpolate_coeffs(const std::vector<cd>& nodes, const std::vector<cd>& values) {
    const std::size_t n = nodes.size();
    if (n == 0 || values.size() != n) fail(ErrorCode::NodesCollide, "need one value per node");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(nodes[i] - nodes[j]) <= 1e-12 * (1 + std::abs(nodes[i]) + std::abs(nodes[j])))
                fail(ErrorCode::NodesCollide, "interpolation nodes coincide");
    // Newton divided differences, then expand into the monomial basis.
    std::vector<cd> dd = values;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - k]);
    std::vector<cd> c(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        // c <- c * (x - nodes[k]) + dd[k]
        std::vector<cd> nc(n, 0.0);
        for (std::size_t j = 0; j + 1 < n; ++j) nc[j + 1] += c[j];
        for (std::size_t j = 0; j < n; ++j) nc[j] -= nodes[k] * c[j];
        nc[0] += dd[k];
        c = nc;
    }
    return c;
}

inline UniPoly interpolate(const std::vector<cd>& nodes, const std::vector<cd>& values) {
    std::vector<GaussScalar> c;
    for (cd z : interpolate_coeffs(nodes, values)) c.push_back(nav_detail::exact(z));
    return UniPoly(c);
}

inline cd eval_coeffs(const std::vector<cd>& c, cd x) {
    cd s = 0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
    return s;
}

// sum_k c_k letter0^k letter, as a necklace; letter < 0 means c_k letter0^(k+1)/(k+1) (an antiderivative).
inline CycSum poly_times_letter(const std::vector<cd>& c, int letter) {
    CycSum f;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == cd(0)) continue;
        if (letter < 0) {
            f += CycSum::word(LetterWord(k + 1, 0), nav_detail::exact(c[k]) / GaussScalar(static_cast<long>(k + 1)));
        } else {
            LetterWord w(k, 0);
            w.push_back(static_cast<Letter>(letter));
            f += CycSum::word(w, nav_detail::exact(c[k]));
        }
    }
    return f;
}

// ---- steps ----

inline std::pair<RepPoint, GeneratorWord> ensure_primed(const RepPoint& p, const QuiverSpec& spec) {
    if (is_regular_semisimple(p.X)) return {p, {}};
    if (is_regular_semisimple(p.Y)) return {act(p, FourierZero{}, spec), {FourierZero{}}};
    fail(ErrorCode::NotInR, "neither X nor Y is regular semisimple");
}

// Conditioning score of M for interpolation: relative eigenvalue gap over eigenbasis condition.
inline double prime_quality(const CMat& M) {
    EigenData e = eigen_regular(M);
    if (!e.regular) return 0;
    double gap = 1e300, rho = 0;
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
        rho = std::max(rho, std::abs(e.values(i)));
        for (Eigen::Index j = i + 1; j < e.values.size(); ++j) gap = std::min(gap, std::abs(e.values(i) - e.values(j)));
    }
    if (e.values.size() == 1) gap = 1;
    Eigen::JacobiSVD<CMat> svd(e.vectors);
    auto sv = svd.singularValues();
    return gap / (1 + rho) * sv(sv.size() - 1) / sv(0);
}

// Like ensure_primed, but also swaps when Y is the better-conditioned regular matrix.
inline std::pair<RepPoint, GeneratorWord> best_primed(const RepPoint& p, const QuiverSpec& spec) {
    double qx = prime_quality(p.X), qy = prime_quality(p.Y);
    if (qx == 0 && qy == 0) fail(ErrorCode::NotInR, "neither X nor Y is regular semisimple");
    if (qx >= qy) return {p, {}};
    return {act(p, FourierZero{}, spec), {FourierZero{}}};
}

enum class FixTarget { RowOfW, ColumnOfV };

// Make row `index` of w (or column of v), read in the eigenbasis V of the relevant matrix,
// entrywise nonzero with a shear that only mixes in indices from `allowed`.
inline std::pair<RepPoint, GeneratorWord> denominator_fix(const RepPoint& p, const QuiverSpec& spec, FixTarget target,
                                                          int index, const CMat& V, std::vector<int> allowed = {}) {
    const int n = p.n, r = p.r;
    if (allowed.empty())
        for (int b = 1; b <= r; ++b)
            if (b != index) allowed.push_back(b);
    CMat B = target == FixTarget::RowOfW ? CMat(p.w * V) : CMat((V.inverse() * p.v).transpose());  // r x n
    double nz = 1e-8 * (1.0 + B.norm());
    auto clears = [&](const std::vector<cd>& c) {
        for (int k = 0; k < n; ++k) {
            cd e = B(index - 1, k);
            for (std::size_t j = 0; j < allowed.size(); ++j) e += c[j] * B(allowed[j] - 1, k);
            if (std::abs(e) <= nz) return false;
        }
        return true;
    };
    std::vector<cd> c(allowed.size(), 0.0);
    if (clears(c)) return {p, {}};
    const int trials = std::max(1, n * r * 10);
    for (int t = 1; t <= trials && !allowed.empty(); ++t) {
        long pw = 1;
        for (std::size_t j = 0; j < allowed.size(); ++j) c[j] = static_cast<double>(pw *= t);
        if (!clears(c)) continue;
        ExactMat T = ExactMat::identity(r);
        for (std::size_t j = 0; j < allowed.size(); ++j) {
            GaussScalar cj(static_cast<long>(std::real(c[j])));
            if (target == FixTarget::RowOfW) T(allowed[j] - 1, index - 1) = cj;
            else T(index - 1, allowed[j] - 1) = -cj;
        }
        Generator g = AffineGL{T};
        return {act(p, g, spec), {g}};
    }
    fail(ErrorCode::BadFiberPoint, "no shear makes the denominator entries nonzero");
}

// Y += p'(X) with p'(lambda_i) = i K, making Y regular semisimple by diagonal dominance.
inline std::pair<RepPoint, GeneratorWord> regularize(const RepPoint& p, const QuiverSpec& spec) {
    if (is_regular_semisimple(p.Y)) return {p, {}};
    EigenData e = eigen_regular(p.X);
    if (!e.regular) fail(ErrorCode::NotRegularSemisimple, "regularize needs X regular semisimple");
    CMat Yt = e.vectors.inverse() * p.Y * e.vectors;
    double rowsum = 1.0;
    for (int i = 0; i < p.n; ++i) rowsum = std::max(rowsum, Yt.row(i).cwiseAbs().sum());
    double K = 2.0 * p.n * rowsum;
    std::vector<cd> nodes(e.values.data(), e.values.data() + p.n);
    for (int attempt = 0; attempt < 10; ++attempt, K *= 2) {
        std::vector<cd> vals;
        for (int i = 0; i < p.n; ++i) vals.push_back(cd((i + 1) * K, 0.0));
        Generator g = Triangular{poly_times_letter(interpolate_coeffs(nodes, vals), -1)};
        RepPoint q = act(p, g, spec);
        if (is_regular_semisimple(q.Y)) return {q, {g}};
    }
    fail(ErrorCode::RegularizationFailed, "Y stayed non-regular after escalation");
}

// Kill column `level` of v and row `level` of w using generators of the embedded P_level.
inline void reduce_rank_once(RepPoint& cur, const QuiverSpec& spec, int level, NavTrace& tr) {
    using nav_detail::push;
    if (level < 2) fail(ErrorCode::InvalidRank, "rank reduction needs level >= 2");
    auto [pp, pw] = best_primed(cur, spec);
    if (!pw.empty()) {
        cur = pp;
        tr.word.insert(tr.word.end(), pw.begin(), pw.end());
        tr.steps.push_back({"prime", level, 1, {}, {}, relative_residual(cur)});
    }
    EigenData e = eigen_regular(cur.X);
    const CMat V = e.vectors, Vi = V.inverse();
    std::vector<cd> nodes(e.values.data(), e.values.data() + cur.n);
    const int s = level / 2;
    const bool odd = level % 2 == 1;
    Alphabet T = triangular_alphabet(spec), Op = op_alphabet(spec);
    auto upto = [&](std::set<int> skip) {
        std::vector<int> out;
        for (int b = 1; b <= level; ++b)
            if (!skip.count(b)) out.push_back(b);
        return out;
    };
    auto shear = [&](FixTarget tg, int idx, std::vector<int> allowed) {
        auto [q, w] = denominator_fix(cur, spec, tg, idx, V, std::move(allowed));
        if (!w.empty()) {
            cur = q;
            tr.word.push_back(w[0]);
            tr.steps.push_back({"shear", level, 1, {}, {}, relative_residual(cur)});
        }
    };
    const int i1 = odd ? s + 1 : s, j1 = s;  // the pair (i, j) of b_ij used at this level
    // First half-step: a triangular generator built from the spectrum of X.
    std::vector<cd> vals(cur.n);
    if (odd) {
        shear(FixTarget::RowOfW, 2 * s, upto({2 * s}));
        CMat Wt = cur.w * V;
        for (int k = 0; k < cur.n; ++k) vals[k] = -Wt(2 * s, k) / Wt(2 * s - 1, k);
    } else {
        shear(FixTarget::ColumnOfV, 2 * s - 1, upto({2 * s - 1}));
        CMat Vt = Vi * cur.v;
        for (int k = 0; k < cur.n; ++k) vals[k] = Vt(k, 2 * s - 1) / Vt(k, 2 * s - 2);
    }
    auto pc = interpolate_coeffs(nodes, vals);
    push(tr, cur, Triangular{poly_times_letter(pc, T.index(pair_name("b", i1, j1)))}, spec,
         {"triangular", level, 0, nodes, vals, 0});
    push(tr, cur, FourierZero{}, spec, {"fourier0", level, 0, {}, {}, 0});
    // Second half-step: Y now carries the old spectrum and eigenbasis.
    if (odd) {
        shear(FixTarget::ColumnOfV, 2 * s, upto({2 * s, 2 * s + 1}));
        CMat Vt = Vi * cur.v;
        for (int k = 0; k < cur.n; ++k) vals[k] = Vt(k, 2 * s) / Vt(k, 2 * s - 1);
    } else {
        shear(FixTarget::RowOfW, 2 * s - 1, upto({2 * s - 1, 2 * s}));
        CMat Wt = cur.w * V;
        for (int k = 0; k < cur.n; ++k) vals[k] = -Wt(2 * s - 1, k) / Wt(2 * s - 2, k);
    }
    auto qc = interpolate_coeffs(nodes, vals);
    push(tr, cur, OpTriangular{poly_times_letter(qc, Op.index(pair_name("b", i1, j1) + "*"))}, spec,
         {"op_triangular", level, 0, nodes, vals, 0});
}

inline double killed_norm(const RepPoint& p, int from_level) {
    double m = 0;
    for (int al = from_level; al <= p.r; ++al)
        m = std::max({m, nav_detail::relnorm(p.v.col(al - 1), p), nav_detail::relnorm(p.w.row(al - 1), p)});
    return m;
}

inline NavTrace reduce_to_rank1(const RepPoint& p, const QuiverSpec& spec) {
    check_shapes(p);
    if (spec.r() != p.r) fail(ErrorCode::SpecMismatch, "spec rank differs from the point");
    NavTrace tr;
    tr.start = p;
    RepPoint cur = p;
    for (int level = p.r; level >= 2; --level) reduce_rank_once(cur, spec, level, tr);
    tr.final = cur;
    return tr;
}

inline RepPoint replay(const RepPoint& start, const GeneratorWord& w, const QuiverSpec& spec) {
    return act(start, w, spec);
}

// ---- rank-1 endgame (extension beyond the reduction) ----

namespace nav_detail {

inline std::vector<cd> sorted_spectrum(const CMat& M) {
    EigenData e = eigen_regular(M);
    std::vector<cd> v(e.values.data(), e.values.data() + e.values.size());
    double band = gap_tol(e.values) / 2;
    std::sort(v.begin(), v.end(), [&](cd a, cd b) { return sort_less(a, b, band); });
    return v;
}

// Reorder `now` to follow `prev` by greedy nearest neighbour; returns the permutation.
inline std::vector<int> track(const std::vector<cd>& prev, const CVec& now) {
    const int n = static_cast<int>(prev.size());
    std::vector<int> m(n, -1);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        for (int j = 0; j < n; ++j)
            if (!used[j] && (best < 0 || std::abs(now(j) - prev[i]) < std::abs(now(best) - prev[i]))) best = j;
        used[best] = true;
        m[i] = best;
    }
    return m;
}

// Find c with spec(X + sum_j c_j Y^j) = target (as ordered along the straight path from spec X).
inline std::vector<cd> spectrum_continuation(const RepPoint& p, const std::vector<cd>& start,
                                             const std::vector<cd>& target) {
    const int n = p.n;
    std::vector<CMat> Yp(n);
    for (int j = 0; j < n; ++j) Yp[j] = mat_power(p.Y, j);
    CVec c = CVec::Zero(n);
    std::vector<cd> cur = start;
    double scale = 1;
    for (cd z : start) scale = std::max(scale, std::abs(z));
    for (cd z : target) scale = std::max(scale, std::abs(z));
    double s = 0, ds = 0.05;
    int guard = 0;
    while (s < 1.0) {
        if (++guard > 20000 || ds < 1e-7) fail(ErrorCode::NotConnectedAtRank1, "spectrum continuation stalled");
        double s1 = std::min(1.0, s + ds);
        CVec cn = c;
        std::vector<cd> ev = cur;
        bool ok = false;
        for (int it = 0; it < 30; ++it) {
            CMat M = p.X;
            for (int j = 0; j < n; ++j) M += cn(j) * Yp[j];
            Eigen::ComplexEigenSolver<CMat> es(M);
            auto perm = track(ev, es.eigenvalues());
            CMat R(n, n);
            CVec F(n);
            for (int k = 0; k < n; ++k) {
                R.col(k) = es.eigenvectors().col(perm[k]);
                ev[k] = es.eigenvalues()(perm[k]);
                F(k) = ev[k] - ((1 - s1) * start[k] + s1 * target[k]);
            }
            if (F.norm() <= 1e-13 * scale * n) {
                ok = true;
                break;
            }
            CMat L = R.inverse();
            CMat J(n, n);
            for (int j = 0; j < n; ++j) {
                CMat P = L * Yp[j] * R;
                for (int k = 0; k < n; ++k) J(k, j) = P(k, k);
            }
            CVec d = J.fullPivLu().solve(-F);
            if (!d.allFinite()) break;
            cn += d;
        }
        if (ok) {
            c = cn;
            cur = ev;
            s = s1;
            ds = std::min(0.2, ds * 1.5);
        } else {
            ds /= 2;
        }
    }
    return std::vector<cd>(c.data(), c.data() + n);
}

} // namespace nav_detail

// Word in Aut(C Q_0; c_0) (plus F0) moving p to the orbit of q; both points have rank-1 support.
// The two free coefficient vectors are kept so connect can polish them.
struct Endgame {
    GeneratorWord pre, post;
    std::vector<cd> h, g;  // a -> a + h(a*), then a* -> a* + g(a), as coefficient lists
    static Generator h_gen(const std::vector<cd>& c) { return OpTriangular{poly_times_letter(c, -1)}; }
    static Generator g_gen(const std::vector<cd>& c) { return Triangular{poly_times_letter(c, -1)}; }
    GeneratorWord word() const {
        GeneratorWord w = pre;
        w.push_back(h_gen(h));
        w.push_back(g_gen(g));
        w.insert(w.end(), post.begin(), post.end());
        return w;
    }
};

namespace nav_detail {
// Y diagonal matched to the target by nearest eigenvalue of X.
inline std::vector<std::pair<cd, cd>> xy_pairs(const RepPoint& p) {
    Diagonalized d = diagonalize_X(p);
    std::vector<std::pair<cd, cd>> out;
    for (int i = 0; i < p.n; ++i) out.push_back({d.point.X(i, i), d.point.Y(i, i)});
    return out;
}
inline std::vector<int> nearest_match(const std::vector<std::pair<cd, cd>>& a, const std::vector<std::pair<cd, cd>>& b) {
    const int n = static_cast<int>(a.size());
    std::vector<int> m(n);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        for (int j = 0; j < n; ++j)
            if (!used[j] && (best < 0 || std::abs(b[j].first - a[i].first) < std::abs(b[best].first - a[i].first)))
                best = j;
        used[best] = true;
        m[i] = best;
    }
    return m;
}
} // namespace nav_detail

inline Endgame rank1_endgame(const RepPoint& p, const RepPoint& q, const QuiverSpec& spec) {
    Endgame eg;
    auto [p1, w1] = ensure_primed(p, spec);
    auto [q1, w2] = ensure_primed(q, spec);
    eg.pre = w1;
    auto [p2, wr] = regularize(p1, spec);
    eg.pre.insert(eg.pre.end(), wr.begin(), wr.end());
    // Move the spectrum of X onto that of q.
    auto from = nav_detail::sorted_spectrum(p2.X), to = nav_detail::sorted_spectrum(q1.X);
    eg.h = nav_detail::spectrum_continuation(p2, from, to);
    RepPoint p3 = act(p2, Endgame::h_gen(eg.h), spec);
    // Match the diagonal of Y in the common eigenbasis.
    auto a = nav_detail::xy_pairs(p3), b = nav_detail::xy_pairs(q1);
    auto m = nav_detail::nearest_match(a, b);
    std::vector<cd> nodes, vals;
    for (int i = 0; i < p.n; ++i) {
        nodes.push_back(a[i].first);
        vals.push_back(b[m[i]].second - a[i].second);
    }
    eg.g = interpolate_coeffs(nodes, vals);
    eg.post = invert_word(w2);
    return eg;
}

struct ConnectResult {
    GeneratorWord word;
    NavTrace from, to;
    bool used_endgame = false;
    int polish_iterations = 0;
};

namespace nav_detail {
// Newton on the endgame coefficients so that the replayed end point has the spectrum and
// Y diagonal of the target. The replay through the inverse reduction can be badly
// conditioned, so the rank-1 match alone may not survive it.
inline int polish(Endgame& eg, const RepPoint& base, const GeneratorWord& tail, const RepPoint& target,
                  const QuiverSpec& spec) {
    const int n = base.n;
    auto tgt = xy_pairs(target);
    auto run = [&](const std::vector<cd>& h, const std::vector<cd>& g) {
        GeneratorWord w{Endgame::h_gen(h), Endgame::g_gen(g)};
        w.insert(w.end(), eg.post.begin(), eg.post.end());
        w.insert(w.end(), tail.begin(), tail.end());
        return act(base, w, spec);
    };
    std::vector<int> match;
    auto residual = [&](const RepPoint& f) {
        auto xy = xy_pairs(f);
        if (match.empty()) match = nearest_match(xy, tgt);
        CVec F(2 * n);
        for (int i = 0; i < n; ++i) {
            F(i) = xy[i].first - tgt[match[i]].first;
            F(n + i) = xy[i].second - tgt[match[i]].second;
        }
        return F;
    };
    const double ny = base.Y.norm(), nx = act(base, Endgame::h_gen(eg.h), spec).X.norm();
    int it = 0;
    for (; it < 12; ++it) {
        RepPoint f = run(eg.h, eg.g);
        if (orbit_equal(f, target, 1e-9)) break;
        CVec F = residual(f);
        CMat J(2 * n, 2 * n);
        for (int j = 0; j < 2 * n; ++j) {
            auto h = eg.h, g = eg.g;
            cd& c = j < n ? h[j] : g[j - n];
            // c multiplies the (j mod n)-th power of Y (for h) or X (for g).
            double eps = 1e-7 * (std::abs(c) + 1.0 / std::pow(1.0 + (j < n ? ny : nx), j % n));
            c += eps;
            J.col(j) = (residual(run(h, g)) - F) / eps;
        }
        CVec d = J.fullPivLu().solve(-F);
        if (!d.allFinite()) break;
        for (int j = 0; j < n; ++j) {
            eg.h[j] += d(j);
            eg.g[j] += d(n + j);
        }
    }
    return it;
}
} // namespace nav_detail

inline ConnectResult connect(const RepPoint& p, const RepPoint& q, const QuiverSpec& spec, NavOptions opt = {}) {
    if (p.n != q.n || p.r != q.r || std::abs(p.tau - q.tau) > 1e-12 * (1 + std::abs(p.tau)))
        fail(ErrorCode::SpecMismatch, "points live on different fibers");
    ConnectResult res;
    try {
        if (orbit_equal(p, q)) return res;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotComparable) throw;
        fail(ErrorCode::NotInR, "points are outside R_{n,r}");
    }
    res.from = reduce_to_rank1(p, spec);
    res.to = reduce_to_rank1(q, spec);
    GeneratorWord back = invert_word(res.to.word);
    res.word = res.from.word;
    if (!orbit_equal(res.from.final, res.to.final)) {
        if (!opt.rank1_endgame)
            fail(ErrorCode::NotConnectedAtRank1, "rank-1 reductions lie in different orbits");
        Endgame eg = rank1_endgame(res.from.final, res.to.final, spec);
        res.used_endgame = true;
        RepPoint base = replay(res.from.final, eg.pre, spec);
        GeneratorWord rest{Endgame::h_gen(eg.h), Endgame::g_gen(eg.g)};
        rest.insert(rest.end(), eg.post.begin(), eg.post.end());
        rest.insert(rest.end(), back.begin(), back.end());
        if (!orbit_equal(replay(base, rest, spec), q))
            res.polish_iterations = nav_detail::polish(eg, base, back, q, spec);
        GeneratorWord mid = eg.word();
        res.word.insert(res.word.end(), mid.begin(), mid.end());
    }
    res.word.insert(res.word.end(), back.begin(), back.end());
    if (!orbit_equal(replay(p, res.word, spec), q))
        fail(ErrorCode::ReplayMismatch, "connecting word does not reproduce the target orbit");
    return res;
}

} // namespace qsym

#endif

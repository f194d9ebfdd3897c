#include <gtest/gtest.h>

#include "qsym/navigator.hpp"

using namespace qsym;

namespace {
double rel(const CMat& a, const CMat& b) { return (a - b).norm() / (1.0 + a.norm() + b.norm()); }

bool same_point(const RepPoint& p, const RepPoint& q, double tol) {
    return rel(p.X, q.X) <= tol && rel(p.Y, q.Y) <= tol && rel(p.v, q.v) <= tol && rel(p.w, q.w) <= tol;
}

// A point with X a Jordan block and Y regular semisimple (n = 2).
RepPoint doubleprime_only() {
    RepPoint p = random_fiber_point(2, 1, 1.0, 3);
    // Choose y1 - y2 so Y has a double eigenvalue, then swap roles with F0.
    cd prod = p.Y(0, 1) * p.Y(1, 0);
    cd d = 2.0 * std::sqrt(-prod);
    p.Y(0, 0) = p.Y(1, 1) + d;
    return fourier0(p);
}

GeneratorWord random_pr_word(std::mt19937& g, const QuiverSpec& s) {
    Alphabet T = triangular_alphabet(s), Op = op_alphabet(s);
    auto pick = [&](const Alphabet& A) { return static_cast<Letter>(1 + g() % (A.size() - 1)); };
    return {Triangular{CycSum::word({0, pick(T)}, GaussScalar::frac(1, 2))}, make_affine_sl2({1, 1, 0, 1}),
            OpTriangular{CycSum::word({0, 0, pick(Op)}, GaussScalar::frac(-1, 4))}, FourierZero{}};
}
} // namespace

TEST(Navigator, Interpolate) {
    UniPoly c = interpolate({cd(2, 1)}, {cd(3, 0)});
    EXPECT_EQ(c, UniPoly(GaussScalar(3)));
    std::vector<cd> nodes{cd(0.3, 1), cd(-1, 0.2), cd(2, -0.5)}, vals{cd(1, 1), cd(0, -2), cd(4, 0)};
    auto co = interpolate_coeffs(nodes, vals);
    EXPECT_EQ(co.size(), 3u);
    for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(eval_coeffs(co, nodes[k]) - vals[k]), 1e-10);
    EXPECT_THROW(interpolate_coeffs({cd(1, 0), cd(1, 0)}, {cd(0), cd(1)}), Error);
}

TEST(Navigator, EnsurePrimed) {
    QuiverSpec s(1, Orientation::zigzag);
    RepPoint p = random_fiber_point(3, 1, 1.0, 5);
    EXPECT_TRUE(ensure_primed(p, s).second.empty());
    RepPoint d = doubleprime_only();
    EXPECT_LE(relative_residual(d), 1e-12);
    EXPECT_FALSE(is_regular_semisimple(d.X));
    auto [q, w] = ensure_primed(d, s);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_TRUE(std::holds_alternative<FourierZero>(w[0]));
    EXPECT_TRUE(is_regular_semisimple(q.X));
    RepPoint nil = d;
    nil.X = CMat::Zero(2, 2);
    nil.X(0, 1) = 1;
    nil.Y = nil.X;
    EXPECT_THROW(ensure_primed(nil, s), Error);
}

TEST(Navigator, DenominatorFix) {
    QuiverSpec s(3, Orientation::zigzag);
    RepPoint p = random_fiber_point(3, 3, 1.0, 7);
    CMat I = CMat::Identity(3, 3);
    EXPECT_TRUE(denominator_fix(p, s, FixTarget::RowOfW, 2, I).second.empty());
    p.w(1, 0) = 0;  // one zero in the target row; restore the fiber
    p.w(2, 0) = (-p.tau - p.v(0, 0) * p.w(0, 0)) / p.v(0, 2);
    for (int j = 1; j < 3; ++j) p.Y(0, j) = (p.v.row(0) * p.w.col(j))(0, 0) / (p.X(0, 0) - p.X(j, j));
    for (int i = 1; i < 3; ++i) p.Y(i, 0) = (p.v.row(i) * p.w.col(0))(0, 0) / (p.X(i, i) - p.X(0, 0));
    ASSERT_LE(relative_residual(p), 1e-12);
    auto [q, w] = denominator_fix(p, s, FixTarget::RowOfW, 2, I);
    ASSERT_EQ(w.size(), 1u);
    for (int k = 0; k < 3; ++k) EXPECT_GT(std::abs(q.w(1, k)), 1e-6);
    EXPECT_LE(relative_residual(q), 1e-12);
    RepPoint one = random_fiber_point(1, 1, 1.0, 9);
    EXPECT_TRUE(denominator_fix(one, QuiverSpec(1, Orientation::zigzag), FixTarget::RowOfW, 1, CMat::Identity(1, 1))
                    .second.empty());
    RepPoint bad = random_fiber_point(2, 2, 1.0, 11);
    bad.w.row(0).setZero();
    bad.v.col(1).setZero();
    EXPECT_THROW(denominator_fix(bad, QuiverSpec(2, Orientation::zigzag), FixTarget::RowOfW, 1, CMat::Identity(2, 2), {}),
                 Error);
}

TEST(Navigator, Regularize) {
    QuiverSpec s(1, Orientation::zigzag);
    RepPoint p = random_fiber_point(3, 1, 1.0, 13);
    EXPECT_TRUE(regularize(p, s).second.empty());
    RepPoint z;  // X = diag(0,1), Y = 0 on the fiber via v = I, w = -tau I
    z.n = 2;
    z.r = 2;
    z.tau = 1.0;
    z.X = CMat::Zero(2, 2);
    z.X(1, 1) = 1.0;
    z.Y = CMat::Zero(2, 2);
    z.v = CMat::Identity(2, 2);
    z.w = -CMat::Identity(2, 2);
    QuiverSpec s2(2, Orientation::zigzag);
    auto [q, w] = regularize(z, s2);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_TRUE(is_regular_semisimple(q.Y));
    EXPECT_LE(std::abs(q.Y(0, 1)) + std::abs(q.Y(1, 0)), 1e-12);
    EXPECT_NEAR(std::abs(q.Y(1, 1) / q.Y(0, 0)), 2.0, 1e-12);  // diag(K, 2K)
    EXPECT_LE(relative_residual(replay(z, w, s2)), 1e-12);
}

TEST(Navigator, ReduceRankOnce) {
    QuiverSpec s(3, Orientation::zigzag);
    RepPoint p = random_fiber_point(2, 3, 1.0, 17);
    NavTrace tr;
    RepPoint cur = p;
    reduce_rank_once(cur, s, 3, tr);
    EXPECT_LE(killed_norm(cur, 3), 1e-8);
    EXPECT_TRUE(same_point(replay(p, tr.word, s), cur, 1e-12));
    // already reduced at level 3: reducing again keeps it killed
    NavTrace tr2;
    RepPoint again = cur;
    reduce_rank_once(again, s, 3, tr2);
    EXPECT_LE(killed_norm(again, 3), 1e-8);
    // r = 2 uses the b11 / b11* pair
    QuiverSpec s2(2, Orientation::zigzag);
    RepPoint p2 = random_fiber_point(3, 2, 1.0, 19);
    NavTrace t2;
    RepPoint c2 = p2;
    reduce_rank_once(c2, s2, 2, t2);
    EXPECT_LE(killed_norm(c2, 2), 1e-8);
    bool tri = false, op = false;
    for (const auto& g : t2.word) {
        if (auto* t = std::get_if<Triangular>(&g)) tri = !t->f.is_zero();
        if (auto* o = std::get_if<OpTriangular>(&g)) op = !o->f.is_zero();
    }
    EXPECT_TRUE(tri && op);
}

TEST(Navigator, ReduceToRank1) {
    for (int t = 0; t < 24; ++t) {
        int n = 1 + t % 4, r = 2 + (t / 4) % 3;
        QuiverSpec s(r, Orientation::zigzag);
        RepPoint p = random_fiber_point(n, r, cd(1.0, 0.5), 300 + t);
        NavTrace tr = reduce_to_rank1(p, s);
        EXPECT_LE(killed_norm(tr.final, 2), 1e-8);
        EXPECT_TRUE(same_point(replay(p, tr.word, s), tr.final, 1e-8));
        for (const auto& st : tr.steps) EXPECT_LE(st.residual, 1e-7);
        // determinism
        NavTrace tr2 = reduce_to_rank1(p, s);
        EXPECT_TRUE(same_point(tr2.final, tr.final, 0));
        // every generator is symplectic, and those emitted at level l fix the arrows above l
        std::size_t gi = 0;
        for (const auto& st : tr.steps)
            for (int k = 0; k < st.generators; ++k, ++gi) {
                Endo e = build_generator(tr.word[gi], s);
                EXPECT_TRUE(is_symplectic(e).ok);
                for (int al = st.level + 1; al <= r; ++al) {
                    EXPECT_EQ(e[arrow_d(r, al)], NCPoly::arrow(r, arrow_d(r, al)));
                    EXPECT_EQ(e[arrow_b(r, al)], NCPoly::arrow(r, arrow_b(r, al)));
                }
            }
        EXPECT_EQ(gi, tr.word.size());
    }
    QuiverSpec s1(1, Orientation::zigzag);
    EXPECT_TRUE(reduce_to_rank1(random_fiber_point(3, 1, 1.0, 1), s1).word.empty());
}

TEST(Navigator, Connect) {
    std::mt19937 g(23);
    for (int t = 0; t < 12; ++t) {
        int n = 1 + t % 4, r = 2 + (t / 4) % 3;
        QuiverSpec s(r, Orientation::zigzag);
        RepPoint p = random_fiber_point(n, r, 1.0, 700 + t);
        RepPoint q = act(p, random_pr_word(g, s), s);
        SCOPED_TRACE(t);
        ConnectResult res = connect(p, q, s, {true});
        EXPECT_TRUE(orbit_equal(replay(p, res.word, s), q));
    }
    QuiverSpec s(3, Orientation::zigzag);
    RepPoint p = random_fiber_point(3, 3, 1.0, 1);
    CMat G = CMat::Identity(3, 3);
    G(0, 1) = cd(0.5, 1);
    EXPECT_TRUE(connect(p, gauge(p, G), s).word.empty());
    RepPoint u = random_fiber_point(3, 3, 1.0, 2);
    try {
        connect(p, u, s);
        ADD_FAILURE() << "expected NotConnectedAtRank1";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotConnectedAtRank1);
    }
    // with the endgame even unrelated points connect
    EXPECT_TRUE(orbit_equal(replay(p, connect(p, u, s, {true}).word, s), u));
}

#include <gtest/gtest.h>

#include "qsym/primitive.hpp"
#include "random_gen.hpp"

using namespace qsym;

namespace {
FreePoly W(std::initializer_list<Letter> w, GaussScalar c = 1) { return FreePoly::monomial(LetterWord(w), c); }
const Letter A = 0, B = 1, C = 2;
} // namespace

TEST(Primitive, TwoLetterExample) {
    Alphabet ab = free_alphabet({"a", "b"});
    std::vector<FreePoly> u{W({B, A, B}) + W({B, B}), W({A, B, A}) + W({A, B}) + W({B, A})};
    EXPECT_TRUE(validate({A, B}, u, ab).ok);
    auto orbits = cyclic_orbits(support_pairs(u), {A, B});
    ASSERT_EQ(orbits.size(), 2u);
    EXPECT_EQ(orbits[0].pairs.size(), 3u);  // (0,bb),(1,ab),(1,ba)
    EXPECT_EQ(orbits[0].rep().w, (LetterWord{B, B}));
    EXPECT_EQ(orbits[1].pairs.size(), 2u);  // (0,bab),(1,aba)
    CycSum f = solve_primitive({A, B}, u, ab);
    CycSum expect = CycSum::word({A, B, A, B}, GaussScalar::frac(1, 2)) + CycSum::word({B, B, A});
    EXPECT_EQ(f, expect);
    EXPECT_EQ(to_string(f, ab), "abb + 1/2 abab");
}

TEST(Primitive, SmallCases) {
    Alphabet abc = free_alphabet({"a", "b", "c"});
    EXPECT_FALSE(validate({A, B}, {W({C}), FreePoly()}, abc).ok);
    EXPECT_TRUE(validate({A, B}, {FreePoly(), FreePoly()}, abc).ok);
    EXPECT_TRUE(solve_primitive({A, B}, {FreePoly(), FreePoly()}, abc).is_zero());
    auto orb = cyclic_orbits(support_pairs({W({B}), W({A})}), {A, B});
    ASSERT_EQ(orb.size(), 1u);
    EXPECT_EQ(orb[0].pairs.size(), 2u);
    EXPECT_EQ(solve_primitive({A, B}, {W({B}), W({A})}, abc), CycSum::word({A, B}));
    // singleton: u_0 = constant gives f = a
    EXPECT_EQ(solve_primitive({A}, {FreePoly::constant(3)}, abc), CycSum::word({A}, 3));
    EXPECT_THROW(solve_primitive({A, B}, {W({B}), FreePoly()}, abc), Error);
    try {
        solve_primitive({A, B}, {W({B}), FreePoly()}, abc);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotACocycle);
    }
}

TEST(Primitive, RandomRoundTrip) {
    std::mt19937 g(17);
    for (int t = 0; t < 200; ++t) {
        int nl = 1 + t % 4;
        std::vector<std::string> names;
        for (int k = 0; k < nl; ++k) names.push_back(std::string(1, static_cast<char>('a' + k)));
        Alphabet al = free_alphabet(names);
        CycSum f = qsym::testing::rand_cyc(g, nl, 1 + static_cast<int>(g() % 4), 6, true);
        std::vector<Letter> G;
        std::vector<FreePoly> u;
        for (int k = 0; k < nl; ++k) {
            G.push_back(static_cast<Letter>(k));
            u.push_back(necklace_derivative(f, static_cast<Letter>(k), al));
        }
        EXPECT_EQ(solve_primitive(G, u, al), f);
    }
}

TEST(Primitive, TriangularFromSolution) {
    // Derivatives of a random f over {a, b_ij} solve the triangular condition; Lambda(f) is symplectic.
    std::mt19937 g(19);
    QuiverSpec s(3, Orientation::zigzag);
    Alphabet T = triangular_alphabet(s);
    for (int t = 0; t < 10; ++t) {
        CycSum f = qsym::testing::rand_cyc(g, static_cast<int>(T.size()), 3, 4);
        std::vector<Letter> G;
        std::vector<FreePoly> u;
        for (Letter k = 0; k < T.size(); ++k) {
            G.push_back(k);
            u.push_back(necklace_derivative(f, k, T));
        }
        NCPoly lhs(3);
        for (std::size_t k = 0; k < G.size(); ++k) lhs += commutator(T[k].expansion, expand(u[k], T));
        EXPECT_TRUE(lhs.is_zero());
        CycSum f2 = solve_primitive(G, u, T);
        EXPECT_EQ(f2, f);
    }
}

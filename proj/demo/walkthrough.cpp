// A short tour: symbolic side first, then the numeric navigator.
#include <iostream>

#include "qsym/json_io.hpp"
#include "qsym/primitive.hpp"

using namespace qsym;

int main() {
    QuiverSpec spec(3, Orientation::zigzag);
    std::cout << "quiver r = 3, zigzag orientation\n";
    std::cout << "moment element c = " << to_string(moment_element(spec).c, spec, Naming::alias) << "\n\n";

    // A triangular automorphism from a necklace over {a, b_ij}.
    Alphabet T = triangular_alphabet(spec);
    CycSum f = parse_cyc("a^2 b21", T);
    Endo lam = build_generator(Triangular{f}, spec);
    std::cout << "images under the triangular map of " << to_string(f, T) << ":\n";
    for (const char* n : {"a*", "x2*", "y1*"}) {
        auto al = spec.lookup(n);
        std::cout << "  " << n << " -> " << to_string(lam[al->arrow] * GaussScalar(al->sign), spec, Naming::alias) << "\n";
    }
    std::cout << "symplectic: " << (is_symplectic(lam).ok ? "true" : "false") << "\n";
    PathMat N = crossed_N(lam);
    std::cout << "crossed matrix entry N(2,3) = " << to_string(N(1, 2), spec, Naming::alias) << "\n\n";

    // Recover a necklace from its cyclic derivatives.
    Alphabet ab = free_alphabet({"a", "b"});
    std::vector<FreePoly> u{parse_free("bab + bb", ab), parse_free("aba + ab + ba", ab)};
    std::cout << "primitive with derivatives (bab + bb, aba + ab + ba): " << to_string(solve_primitive({0, 1}, u, ab), ab)
              << "\n\n";

    // Numerics: a point of the Calogero-Moser type space, moved by a word and brought back.
    RepPoint p = random_fiber_point(3, 3, 1.0, 42);
    std::cout << "random point n = 3: relative moment residual " << relative_residual(p) << "\n";
    GeneratorWord w{Triangular{parse_cyc("1/2 a b21", T)}, make_affine_sl2({1, 1, 0, 1}),
                    OpTriangular{parse_cyc("-1/4 a* a* b11*", op_alphabet(spec))}, FourierZero{}};
    RepPoint q = act(p, w, spec);
    std::cout << "after a four-generator word: residual " << relative_residual(q) << ", same orbit as start? "
              << (orbit_equal(p, q) ? "yes" : "no") << "\n";

    NavTrace tr = reduce_to_rank1(p, spec);
    std::cout << "reduction to rank 1 used " << tr.word.size() << " generators; killed arrows "
              << killed_norm(tr.final, 2) << "\n";

    ConnectResult c = connect(p, q, spec, {true});
    std::cout << "connecting word has " << c.word.size() << " generators"
              << (c.used_endgame ? " (rank-1 endgame used)" : "") << "; replay lands in the target orbit: "
              << (orbit_equal(replay(p, c.word, spec), q) ? "yes" : "no") << "\n";
    return 0;
}

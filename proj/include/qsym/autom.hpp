#ifndef QSYM_AUTOM_HPP
#define QSYM_AUTOM_HPP

#include <array>
#include <variant>
#include <vector>

#include "qsym/exactmat.hpp"
#include "qsym/necklace.hpp"

namespace qsym {

// An algebra endomorphism given by the image of every arrow.
struct Endo {
    QuiverSpec spec;
    std::vector<NCPoly> images;

    static Endo identity(const QuiverSpec& s) { return {s, identity_images(s.r())}; }
    const NCPoly& operator[](Arrow x) const { return images[x]; }
    friend bool operator==(const Endo& x, const Endo& y) { return x.spec == y.spec && x.images == y.images; }
    friend bool operator!=(const Endo& x, const Endo& y) { return !(x == y); }
};

inline Endo make_endo(const QuiverSpec& s, std::vector<NCPoly> images) {
    check_images(s.r(), images);
    return {s, std::move(images)};
}

inline NCPoly apply(const Endo& psi, const NCPoly& p) {
    if (p.r() != psi.spec.r()) fail(ErrorCode::SpecMismatch, "polynomial and endomorphism over different ranks");
    return substitute_unchecked(p, psi.images);
}

// psi then sigma: on points p.(psi then sigma) = (p.psi).sigma; on the algebra xi -> psi(sigma(xi)).
inline Endo compose(const Endo& psi, const Endo& sigma) {
    if (!(psi.spec == sigma.spec)) fail(ErrorCode::SpecMismatch, "composing endomorphisms of different quivers");
    Endo out{psi.spec, {}};
    out.images.reserve(sigma.images.size());
    for (const auto& im : sigma.images) out.images.push_back(substitute_unchecked(im, psi.images));
    return out;
}

// ---- generators ----

struct Triangular { CycSum f; };
struct OpTriangular { CycSum f; };
struct AffineSL2 {
    std::array<GaussScalar, 4> A{1, 0, 0, 1};  // row-major 2x2
    std::array<GaussScalar, 2> B{0, 0};
};
struct AffineGL { ExactMat T; };
struct FourierR { bool inverse = false; };
struct FourierZero { bool inverse = false; };
struct Phi { bool inverse = false; };

using Generator = std::variant<Triangular, OpTriangular, AffineSL2, AffineGL, FourierR, FourierZero, Phi>;
using GeneratorWord = std::vector<Generator>;

inline AffineSL2 make_affine_sl2(std::array<GaussScalar, 4> A, std::array<GaussScalar, 2> B = {0, 0}) {
    if (A[0] * A[3] - A[1] * A[2] != GaussScalar(1))
        fail(ErrorCode::NotInvertible, "affine (a,a*) matrix must have determinant 1");
    return {A, B};
}

inline AffineGL make_affine_gl(const ExactMat& T) {
    if (T.det().is_zero()) fail(ErrorCode::NotInvertible, "AffineGL matrix is singular");
    return {T};
}

namespace detail {

inline void require_zigzag(const QuiverSpec& s, const char* what) {
    if (s.orientation() != Orientation::zigzag)
        fail(ErrorCode::OrientationMismatch, std::string(what) + " is defined for the zigzag orientation only");
}

inline NCPoly alias_poly(const QuiverSpec& s, const std::string& name) {
    auto al = s.lookup(name);
    return NCPoly::arrow(s.r(), al->arrow, GaussScalar(al->sign));
}

// Set the image of the raw arrow underlying an alias, given the desired image of the alias.
inline void set_alias_image(const QuiverSpec& s, std::vector<NCPoly>& im, const std::string& name, const NCPoly& img) {
    auto al = s.lookup(name);
    im[al->arrow] = img * GaussScalar(al->sign);
}

// Zigzag swap of the pair (x_i, y_i) used by F_r and Phi.
inline void fourier_block(const QuiverSpec& s, std::vector<NCPoly>& im, int i, bool inverse) {
    std::string k = std::to_string(i);
    NCPoly x = alias_poly(s, "x" + k), xs = alias_poly(s, "x" + k + "*");
    NCPoly y = alias_poly(s, "y" + k), ys = alias_poly(s, "y" + k + "*");
    if (!inverse) {
        set_alias_image(s, im, "x" + k, -ys);
        set_alias_image(s, im, "x" + k + "*", y);
        set_alias_image(s, im, "y" + k, -xs);
        set_alias_image(s, im, "y" + k + "*", x);
    } else {
        set_alias_image(s, im, "y" + k + "*", -x);
        set_alias_image(s, im, "y" + k, xs);
        set_alias_image(s, im, "x" + k + "*", -y);
        set_alias_image(s, im, "x" + k, ys);
    }
}

inline void fourier_loops(int r, std::vector<NCPoly>& im, bool inverse) {
    NCPoly a = NCPoly::arrow(r, arrow_a()), as = NCPoly::arrow(r, arrow_astar());
    im[arrow_a()] = inverse ? as : -as;
    im[arrow_astar()] = inverse ? -a : a;
}

} // namespace detail

inline Endo build_generator(const Generator& g, const QuiverSpec& spec) {
    const int r = spec.r();
    std::vector<NCPoly> im = identity_images(r);
    std::visit(
        [&](const auto& gen) {
            using G = std::decay_t<decltype(gen)>;
            if constexpr (std::is_same_v<G, Triangular>) {
                Alphabet T = triangular_alphabet(spec);
                const auto& X = spec.out_gens();
                const auto& Y = spec.in_gens();
                im[arrow_astar()] += expand(necklace_derivative(gen.f, 0, T), T);
                for (std::size_t i = 0; i < X.size(); ++i) {
                    NCPoly add(r);
                    for (std::size_t j = 0; j < Y.size(); ++j) {
                        Letter l = static_cast<Letter>(1 + i * Y.size() + j);
                        add += signed_arrow(r, Y[j]) * expand(necklace_derivative(gen.f, l, T), T);
                    }
                    im[spec.star(X[i].arrow)] += add;
                }
                for (std::size_t j = 0; j < Y.size(); ++j) {
                    NCPoly add(r);
                    for (std::size_t i = 0; i < X.size(); ++i) {
                        Letter l = static_cast<Letter>(1 + i * Y.size() + j);
                        add += expand(necklace_derivative(gen.f, l, T), T) * signed_arrow(r, X[i]);
                    }
                    im[spec.star(Y[j].arrow)] += add;
                }
            } else if constexpr (std::is_same_v<G, OpTriangular>) {
                Alphabet T = op_alphabet(spec);
                const auto& X = spec.out_gens();
                const auto& Y = spec.in_gens();
                im[arrow_a()] += expand(necklace_derivative(gen.f, 0, T), T);
                for (std::size_t i = 0; i < X.size(); ++i) {
                    NCPoly add(r);
                    for (std::size_t j = 0; j < Y.size(); ++j) {
                        Letter l = static_cast<Letter>(1 + i * Y.size() + j);
                        add += expand(necklace_derivative(gen.f, l, T), T) * NCPoly::arrow(r, spec.star(Y[j].arrow));
                    }
                    im[X[i].arrow] += add * GaussScalar(X[i].sign);
                }
                for (std::size_t j = 0; j < Y.size(); ++j) {
                    NCPoly add(r);
                    for (std::size_t i = 0; i < X.size(); ++i) {
                        Letter l = static_cast<Letter>(1 + i * Y.size() + j);
                        add += NCPoly::arrow(r, spec.star(X[i].arrow)) * expand(necklace_derivative(gen.f, l, T), T);
                    }
                    im[Y[j].arrow] += add * GaussScalar(Y[j].sign);
                }
            } else if constexpr (std::is_same_v<G, AffineSL2>) {
                if (gen.A[0] * gen.A[3] - gen.A[1] * gen.A[2] != GaussScalar(1))
                    fail(ErrorCode::NotInvertible, "affine (a,a*) matrix must have determinant 1");
                NCPoly a = NCPoly::arrow(r, arrow_a()), as = NCPoly::arrow(r, arrow_astar());
                im[arrow_a()] = a * gen.A[0] + as * gen.A[1] + NCPoly::eps(r, 1, gen.B[0]);
                im[arrow_astar()] = a * gen.A[2] + as * gen.A[3] + NCPoly::eps(r, 1, gen.B[1]);
            } else if constexpr (std::is_same_v<G, AffineGL>) {
                if (gen.T.n != r) fail(ErrorCode::RankMismatch, "AffineGL matrix size differs from r");
                ExactMat Ti = gen.T.inverse();
                for (int al = 1; al <= r; ++al) {
                    NCPoly b(r), d(r);
                    for (int be = 1; be <= r; ++be) {
                        b += NCPoly::arrow(r, arrow_b(r, be), gen.T(be - 1, al - 1));
                        d += NCPoly::arrow(r, arrow_d(r, be), Ti(al - 1, be - 1));
                    }
                    im[arrow_b(r, al)] = b;
                    im[arrow_d(r, al)] = d;
                }
            } else if constexpr (std::is_same_v<G, FourierR>) {
                detail::require_zigzag(spec, "F_r");
                if (r % 2) fail(ErrorCode::OddRank, "F_r needs an even rank");
                detail::fourier_loops(r, im, gen.inverse);
                for (int i = 1; i <= r / 2; ++i) detail::fourier_block(spec, im, i, gen.inverse);
            } else if constexpr (std::is_same_v<G, FourierZero>) {
                detail::fourier_loops(r, im, gen.inverse);
            } else if constexpr (std::is_same_v<G, Phi>) {
                detail::require_zigzag(spec, "Phi");
                if (r < 2) fail(ErrorCode::InvalidRank, "Phi needs r >= 2");
                detail::fourier_loops(r, im, gen.inverse);
                detail::fourier_block(spec, im, 1, gen.inverse);
            }
        },
        g);
    return {spec, std::move(im)};
}

inline Generator invert(const Generator& g) {
    return std::visit(
        [](const auto& gen) -> Generator {
            using G = std::decay_t<decltype(gen)>;
            if constexpr (std::is_same_v<G, Triangular>) return Triangular{-gen.f};
            else if constexpr (std::is_same_v<G, OpTriangular>) return OpTriangular{-gen.f};
            else if constexpr (std::is_same_v<G, AffineSL2>) {
                // A^{-1} = (d -b; -c a) since det A = 1, shift -A^{-1}B.
                std::array<GaussScalar, 4> Ai{gen.A[3], -gen.A[1], -gen.A[2], gen.A[0]};
                std::array<GaussScalar, 2> Bi{-(Ai[0] * gen.B[0] + Ai[1] * gen.B[1]),
                                              -(Ai[2] * gen.B[0] + Ai[3] * gen.B[1])};
                return AffineSL2{Ai, Bi};
            } else if constexpr (std::is_same_v<G, AffineGL>) return AffineGL{gen.T.inverse()};
            else return G{!gen.inverse};
        },
        g);
}

inline GeneratorWord invert_word(const GeneratorWord& w) {
    GeneratorWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(invert(*it));
    return out;
}

inline Endo expand_word(const GeneratorWord& w, const QuiverSpec& spec) {
    Endo e = Endo::identity(spec);
    for (const auto& g : w) e = compose(e, build_generator(g, spec));
    return e;
}

struct SymplecticCheck {
    bool ok;
    NCPoly residual;
};

inline SymplecticCheck is_symplectic(const Endo& psi) {
    NCPoly c = moment_element(psi.spec).c;
    NCPoly res = apply(psi, c) - c;
    return {res.is_zero(), res};
}

// Images of a and a* modulo the ideal generated by e2 (kills every d and b).
inline std::pair<NCPoly, NCPoly> project_Q0(const Endo& psi) {
    auto keep = [](const NCPoly& p) {
        NCPoly out(p.r());
        for (const auto& [w, c] : p.terms()) {
            if (w.src != 1 || w.tgt != 1) continue;
            bool ok = true;
            for (Arrow x : w.arrows) ok = ok && x <= 1;
            if (ok) out.add(w, c);
        }
        return out;
    };
    return {keep(psi[arrow_a()]), keep(psi[arrow_astar()])};
}

inline bool is_reduced(const Endo& psi) {
    auto [pa, pas] = project_Q0(psi);
    const int r = psi.spec.r();
    return pa == NCPoly::arrow(r, arrow_a()) && pas == NCPoly::arrow(r, arrow_astar());
}

// Q0 shadow of a generator: the automorphism it induces on C<a,a*>, extended by the identity.
inline Generator q0_shadow(const Generator& g) {
    return std::visit(
        [](const auto& gen) -> Generator {
            using G = std::decay_t<decltype(gen)>;
            auto pure0 = [](const CycSum& f) {
                CycSum out;
                for (const auto& [w, c] : f.terms()) {
                    bool pure = true;
                    for (Letter l : w) pure = pure && l == 0;
                    if (pure) out.add(w, c);
                }
                return out;
            };
            if constexpr (std::is_same_v<G, Triangular>) return Triangular{pure0(gen.f)};
            else if constexpr (std::is_same_v<G, OpTriangular>) return OpTriangular{pure0(gen.f)};
            else if constexpr (std::is_same_v<G, AffineSL2>) return gen;
            else if constexpr (std::is_same_v<G, AffineGL>) return AffineGL{ExactMat::identity(gen.T.n)};
            else if constexpr (std::is_same_v<G, FourierZero>) return gen;
            else return FourierZero{gen.inverse};
        },
        g);
}

struct SemidirectSplit {
    GeneratorWord kappa;   // expands into the kernel of the projection to Q0
    GeneratorWord shadow;  // iota(pi(psi)), acts on a, a* only
};

// psi = kappa then shadow, i.e. kappa o iota(pi(psi)) as algebra maps.
inline SemidirectSplit semidirect_split(const GeneratorWord& w) {
    SemidirectSplit s;
    for (const auto& g : w) {
        Generator sh = q0_shadow(g);
        if (auto* gl = std::get_if<AffineGL>(&sh)) { (void)gl; continue; }
        s.shadow.push_back(sh);
    }
    s.kappa = w;
    for (const auto& g : invert_word(s.shadow)) s.kappa.push_back(g);
    return s;
}

// ---- crossed morphisms ----

// r x r matrix over A_1, row-major.
struct PathMat {
    int r = 1;
    std::vector<NCPoly> e;

    explicit PathMat(int r_ = 1) : r(r_), e(static_cast<std::size_t>(r_) * r_, NCPoly(r_)) {}
    static PathMat identity(int r) {
        PathMat m(r);
        for (int i = 0; i < r; ++i) m(i, i) = NCPoly::eps(r, 1);
        return m;
    }
    NCPoly& operator()(int i, int j) { return e[static_cast<std::size_t>(i) * r + j]; }
    const NCPoly& operator()(int i, int j) const { return e[static_cast<std::size_t>(i) * r + j]; }
    friend PathMat operator*(const PathMat& x, const PathMat& y) {
        PathMat z(x.r);
        for (int i = 0; i < x.r; ++i)
            for (int k = 0; k < x.r; ++k) {
                if (x(i, k).is_zero()) continue;
                for (int j = 0; j < x.r; ++j) z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }
    friend bool operator==(const PathMat& x, const PathMat& y) { return x.r == y.r && x.e == y.e; }
    friend bool operator!=(const PathMat& x, const PathMat& y) { return !(x == y); }
};

inline PathMat apply(const Endo& psi, const PathMat& m) {
    PathMat out(m.r);
    for (std::size_t k = 0; k < m.e.size(); ++k) out.e[k] = apply(psi, m.e[k]);
    return out;
}

inline PathMat crossed_N(const Endo& psi) {
    const int r = psi.spec.r();
    PathMat N(r);
    for (int al = 1; al <= r; ++al) {
        auto rho = decompose_right(psi[arrow_b(r, al)]);
        for (int be = 1; be <= r; ++be) N(be - 1, al - 1) = rho[be - 1];
    }
    return N;
}

inline PathMat crossed_M(const Endo& psi) {
    const int r = psi.spec.r();
    PathMat M(r);
    for (int al = 1; al <= r; ++al) {
        auto rho = decompose_left(psi[arrow_d(r, al)]);
        for (int be = 1; be <= r; ++be) M(al - 1, be - 1) = rho[be - 1];
    }
    return M;
}

// Map f over {a, b_ij} to f~ over {a*, b*_ij}. For even r the letters are transposed
// (b_ij -> b*_ji), which is what conjugation by F_r produces; for odd r the letters keep their indices.
inline CycSum o_tilde(const CycSum& f, const QuiverSpec& spec) {
    const int nx = static_cast<int>(spec.out_gens().size());
    const int ny = static_cast<int>(spec.in_gens().size());
    std::vector<Letter> map(1 + nx * ny);
    map[0] = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            Letter from = static_cast<Letter>(1 + i * ny + j);
            bool transpose = spec.r() % 2 == 0 && nx == ny;
            map[from] = transpose ? static_cast<Letter>(1 + j * ny + i) : from;
        }
    return -f.relabel(map);
}

inline Generator o_map(const CycSum& f, const QuiverSpec& spec) { return OpTriangular{o_tilde(f, spec)}; }

} // namespace qsym

#endif

#ifndef QSYM_CLI_HPP
#define QSYM_CLI_HPP

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qsym/json_io.hpp"
#include "qsym/primitive.hpp"

namespace qsym::cli {

// Exit status: 0 success, 1 domain error (an Error from the library), 2 usage error.
enum Exit { ok = 0, domain = 1, usage = 2 };

inline std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

inline std::string fmt(cd z) {
    if (z.imag() == 0) return fmt(z.real());
    std::ostringstream os;
    os << std::setprecision(17) << z.real() << std::showpos << z.imag() << "i";
    return os.str();
}

inline std::string fmt(const CMat& m) {
    std::string s;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i) s += "; ";
        for (Eigen::Index k = 0; k < m.cols(); ++k) s += (k ? ", " : "") + fmt(m(i, k));
    }
    return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// A complex number given as an expression like "1", "-0.5", "2i" or "(1+2i)".
inline cd parse_complex(const std::string& s) { return parse_scalar(s).to_complex(); }

// Rows separated by ';', entries by ','. Entries are polynomials in the matrix variable.
inline PolyMat parse_polymat(const std::string& text, Var v) {
    auto rows = split(text, ';');
    const int r = static_cast<int>(rows.size());
    PolyMat A(r, v);
    Alphabet alpha = free_alphabet({v == Var::a ? "a" : "a*"});
    for (int i = 0; i < r; ++i) {
        auto cols = split(rows[i], ',');
        if (static_cast<int>(cols.size()) != r) fail(ErrorCode::Parse, "polynomial matrix must be square");
        for (int j = 0; j < r; ++j) {
            FreePoly p = parse_free(cols[j], alpha);
            std::vector<GaussScalar> c;
            for (const auto& [w, s] : p.terms()) {
                if (c.size() <= w.size()) c.resize(w.size() + 1);
                c[w.size()] += s;
            }
            A(i, j) = UniPoly(c);
        }
    }
    return A;
}

inline std::string fmt(const PolyMat& A) {
    std::string s;
    for (int i = 0; i < A.r(); ++i) {
        if (i) s += "; ";
        for (int j = 0; j < A.r(); ++j) s += (j ? ", " : "") + to_string(A(i, j), A.var());
    }
    return s;
}

inline std::string fmt(const PathMat& M, const QuiverSpec& spec) {
    std::string s;
    for (int i = 0; i < M.r; ++i) {
        if (i) s += "; ";
        for (int j = 0; j < M.r; ++j) s += (j ? ", " : "") + to_string(M(i, j), spec, Naming::raw);
    }
    return s;
}

inline ExactMat parse_exact_matrix(const std::string& text) {
    auto rows = split(text, ';');
    ExactMat T(static_cast<int>(rows.size()));
    for (int i = 0; i < T.n; ++i) {
        auto cols = split(rows[i], ',');
        if (static_cast<int>(cols.size()) != T.n) fail(ErrorCode::Parse, "matrix must be square");
        for (int j = 0; j < T.n; ++j) T(i, j) = parse_scalar(cols[j]);
    }
    return T;
}

inline CMat parse_cmatrix(const std::string& text) {
    ExactMat T = parse_exact_matrix(text);
    CMat m(T.n, T.n);
    for (int i = 0; i < T.n; ++i)
        for (int j = 0; j < T.n; ++j) m(i, j) = T(i, j).to_complex();
    return m;
}

struct Globals {
    int r = 2, n = 2;
    std::string tau = "1", orientation = "zigzag", out_file;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    bool json = false;
};

class Runner {
public:
    Runner(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

    int run(const std::vector<std::string>& args, std::ostream& err) {
        CLI::App app{"Symplectic automorphisms of quiver path algebras and Calogero-Moser spaces", "qsym"};
        app.fallthrough();
        app.require_subcommand(1);
        app.add_option("--r", g_.r, "quiver rank r")->check(CLI::PositiveNumber);
        app.add_option("--n", g_.n, "representation dimension n")->check(CLI::PositiveNumber);
        app.add_option("--tau", g_.tau, "moment value tau, e.g. 1 or (1+2i)");
        app.add_option("--orientation", g_.orientation, "zigzag | single_x | all_d");
        app.add_option("--seed", g_.seed, "random seed");
        app.add_option("--tol", g_.tol, "numerical tolerance");
        app.add_flag("--json", g_.json, "JSON output");
        app.add_option("-o", g_.out_file, "write output to FILE");

        add_nc(app);
        add_auto(app);
        add_gl(app);
        add_primitive(app);
        add_rep(app);
        add_nav(app);

        std::vector<std::string> rev(args.rbegin(), args.rend());
        try {
            app.parse(rev);
        } catch (const CLI::CallForHelp&) {
            out_ << app.help();
            return ok;
        } catch (const CLI::CallForAllHelp&) {
            out_ << app.help("", CLI::AppFormatMode::All);
            return ok;
        } catch (const CLI::ParseError& e) {
            err << "usage error: " << e.what() << "\n";
            return usage;
        }
        try {
            spec_ = QuiverSpec(g_.r, parse_orientation(g_.orientation));
            std::ostringstream buf;
            action_(buf);
            if (g_.out_file.empty()) {
                out_ << buf.str();
            } else {
                std::ofstream f(g_.out_file);
                if (!f) fail(ErrorCode::Io, "cannot write " + g_.out_file);
                f << buf.str();
            }
            return ok;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::Parse && usage_parse_) {
                err << "usage error: " << e.what() << "\n";
                return usage;
            }
            if (g_.json)
                err << json{{"error", code_name(e.code())}, {"message", e.what()}}.dump() << "\n";
            else
                err << "error: " << e.what() << "\n";
            return domain;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return domain;
        }
    }

private:
    using Action = std::function<void(std::ostream&)>;

    CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& desc, Action a) {
        auto* s = parent->add_subcommand(name, desc);
        s->callback([this, a] { action_ = a; });
        return s;
    }

    std::string read_text(const std::string& path) {
        if (path == "-") {
            std::stringstream ss;
            ss << in_.rdbuf();
            return ss.str();
        }
        std::ifstream f(path);
        if (!f) fail(ErrorCode::Io, "cannot read " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    json read_json(const std::string& path) {
        std::string txt = read_text(path);
        try {
            return json::parse(txt);
        } catch (const json::exception& e) {
            fail(ErrorCode::Io, path + ": " + e.what());
        }
    }

    RepPoint read_point(const std::string& path) {
        RepPoint p = point_from_json(read_json(path));
        p.tol = g_.tol;
        return p;
    }

    // A word file may carry its own r and orientation.
    GeneratorWord read_word(const std::string& path) {
        auto [spec, w] = word_from_json(read_json(path), spec_);
        spec_ = spec;
        return w;
    }

    cd tau() const { return parse_complex(g_.tau); }

    void emit_result(std::ostream& os, const std::string& key, const std::string& value) {
        if (g_.json) os << json{{key, value}}.dump(2) << "\n";
        else os << value << "\n";
    }

    Alphabet alphabet_named(const std::string& which, const std::string& letters) {
        if (!letters.empty()) return free_alphabet(split(letters, ','));
        if (which == "tri") return triangular_alphabet(spec_);
        if (which == "op") return op_alphabet(spec_);
        if (which == "cycle") return cycle_alphabet(spec_);
        usage_parse_ = true;
        fail(ErrorCode::Parse, "unknown alphabet '" + which + "' (tri, op, cycle)");
    }

    // ---- nc ----
    void add_nc(CLI::App& app) {
        auto* nc = app.add_subcommand("nc", "noncommutative path-algebra arithmetic");
        nc->require_subcommand(1);
        auto naming = [this] { return alias_ ? Naming::alias : Naming::raw; };

        auto* mul = leaf(nc, "mul", "product f g in written order", [this, naming](std::ostream& os) {
            NCPoly x = parse_nc(f_, spec_), y = parse_nc(g_text_, spec_);
            NCPoly p = x * y;
            if (p.is_zero() && !x.is_zero() && !y.is_zero())
                fail(ErrorCode::BlockViolation, "factors are not composable");
            emit_result(os, "result", to_string(p, spec_, naming()));
        });
        mul->add_option("-f", f_, "left factor")->required();
        mul->add_option("-g", g_text_, "right factor")->required();
        mul->add_flag("--alias", alias_, "print with orientation aliases");

        auto* der = leaf(nc, "derive", "necklace derivative of f by a letter", [this](std::ostream& os) {
            Alphabet alpha = alphabet_named(alphabet_, letters_);
            CycSum f = parse_cyc(f_, alpha);
            FreePoly d = necklace_derivative(f, g_text_, alpha);
            if (g_.json) {
                json j{{"derivative", to_string(d, alpha)}};
                if (alpha.concrete()) j["expanded"] = to_string(expand(d, alpha), spec_, Naming::alias);
                os << j.dump(2) << "\n";
                return;
            }
            os << to_string(d, alpha) << "\n";
            if (alpha.concrete()) os << "expanded: " << to_string(expand(d, alpha), spec_, Naming::alias) << "\n";
        });
        der->add_option("-f", f_, "necklace expression")->required();
        der->add_option("-g", g_text_, "letter to differentiate by")->required();
        der->add_option("--alphabet", alphabet_, "tri | op | cycle")->capture_default_str();
        der->add_option("-L,--letters", letters_, "comma-separated free letters instead of a quiver alphabet");

        auto* br = leaf(nc, "bracket", "Poisson bracket of two necklaces", [this, naming](std::ostream& os) {
            NecklaceSum a(parse_nc(f_, spec_)), b(parse_nc(g_text_, spec_));
            emit_result(os, "result", to_string(poisson_bracket(a, b, spec_).poly(), spec_, naming()));
        });
        br->add_option("-f", f_, "first necklace")->required();
        br->add_option("-g", g_text_, "second necklace")->required();
        br->add_flag("--alias", alias_, "print with orientation aliases");

        auto* mo = leaf(nc, "moment", "moment element c and its vertex parts", [this, naming](std::ostream& os) {
            MomentElement m = moment_element(spec_);
            std::string c = to_string(m.c, spec_, naming()), c1 = to_string(m.c1, spec_, naming()),
                        c2 = to_string(m.c2, spec_, naming());
            if (g_.json) os << json{{"c", c}, {"c1", c1}, {"c2", c2}}.dump(2) << "\n";
            else os << "c = " << c << "\nc1 = " << c1 << "\nc2 = " << c2 << "\n";
        });
        mo->add_flag("--alias", alias_, "print with orientation aliases");
    }

    // ---- auto ----
    void add_auto(CLI::App& app) {
        auto* au = app.add_subcommand("auto", "automorphism words");
        au->require_subcommand(1);

        auto* b = leaf(au, "build", "a one-generator word", [this](std::ostream& os) {
            Generator g = build_from_flags();
            build_generator(g, spec_);  // validates the generator against the quiver
            os << to_json(GeneratorWord{g}, spec_).dump(2) << "\n";
        });
        b->add_option("--kind", kind_, "triangular | op_triangular | affine_sl2 | affine_gl | fourier_r | fourier0 | phi")
            ->required();
        b->add_option("-f", f_, "necklace over {a, b_ij} or {a*, b_ij*}");
        b->add_option("--A", a_text_, "affine_sl2 matrix as a,b,c,d");
        b->add_option("--B", b_text_, "affine_sl2 translation as p,q");
        b->add_option("--T", t_text_, "affine_gl matrix, rows ';', entries ','");
        b->add_flag("--inverse", inverse_, "inverse of a Fourier or Phi generator");

        auto* c = leaf(au, "compose", "concatenate words (first word acts first)", [this](std::ostream& os) {
            GeneratorWord w;
            for (const auto& path : words_) {
                GeneratorWord x = read_word(path);
                w.insert(w.end(), x.begin(), x.end());
            }
            os << to_json(w, spec_).dump(2) << "\n";
        });
        c->add_option("-w", words_, "word files")->required();

        auto* inv = leaf(au, "invert", "inverse word", [this](std::ostream& os) {
            os << to_json(invert_word(read_word(words_.at(0))), spec_).dump(2) << "\n";
        });
        inv->add_option("-w", words_, "word file")->required()->expected(1);

        auto* ch = leaf(au, "check", "is the expanded word symplectic", [this](std::ostream& os) {
            GeneratorWord w = read_word(words_.at(0));
            Endo e = expand_word(w, spec_);
            SymplecticCheck s = is_symplectic(e);
            if (g_.json) {
                json j{{"symplectic", s.ok}, {"residual", to_string(s.residual, spec_)}};
                if (images_) j["images"] = images_json(e);
                os << j.dump(2) << "\n";
                return;
            }
            os << "symplectic: " << (s.ok ? "true" : "false") << "\n";
            if (!s.ok) os << "residual: " << to_string(s.residual, spec_) << "\n";
            if (images_) {
                json im = images_json(e);
                for (auto& [k, v] : im.items()) os << k << " -> " << v.get<std::string>() << "\n";
            }
        });
        ch->add_option("-w", words_, "word file")->required()->expected(1);
        ch->add_flag("--images", images_, "also print the image of every arrow");

        auto* ma = leaf(au, "matrices", "crossed matrices N and M", [this](std::ostream& os) {
            Endo e = expand_word(read_word(words_.at(0)), spec_);
            std::string N = fmt(crossed_N(e), spec_), M = fmt(crossed_M(e), spec_);
            if (g_.json) os << json{{"N", N}, {"M", M}}.dump(2) << "\n";
            else os << "N = " << N << "\nM = " << M << "\n";
        });
        ma->add_option("-w", words_, "word file")->required()->expected(1);

        auto* pr = leaf(au, "project0", "projection to the loop subalgebra", [this](std::ostream& os) {
            Endo e = expand_word(read_word(words_.at(0)), spec_);
            auto [pa, pas] = project_Q0(e);
            std::string sa = to_string(pa, spec_), sas = to_string(pas, spec_);
            if (g_.json) os << json{{"a", sa}, {"a*", sas}, {"reduced", is_reduced(e)}}.dump(2) << "\n";
            else os << "a -> " << sa << "\na* -> " << sas << "\nreduced: " << (is_reduced(e) ? "true" : "false") << "\n";
        });
        pr->add_option("-w", words_, "word file")->required()->expected(1);
    }

    json images_json(const Endo& e) {
        json j = json::object();
        for (int x = 0; x < spec_.arrows(); ++x)
            j[raw_arrow_name(spec_.r(), static_cast<Arrow>(x))] = to_string(e.images[x], spec_);
        return j;
    }

    Generator build_from_flags() {
        if (kind_ == "triangular") return Triangular{parse_cyc(f_, triangular_alphabet(spec_))};
        if (kind_ == "op_triangular") return OpTriangular{parse_cyc(f_, op_alphabet(spec_))};
        if (kind_ == "affine_sl2") {
            auto a = split(a_text_.empty() ? "1,0,0,1" : a_text_, ',');
            auto b = split(b_text_.empty() ? "0,0" : b_text_, ',');
            if (a.size() != 4 || b.size() != 2) fail(ErrorCode::Parse, "--A needs 4 entries and --B needs 2");
            return make_affine_sl2({parse_scalar(a[0]), parse_scalar(a[1]), parse_scalar(a[2]), parse_scalar(a[3])},
                                   {parse_scalar(b[0]), parse_scalar(b[1])});
        }
        if (kind_ == "affine_gl") {
            ExactMat T = parse_exact_matrix(t_text_);
            if (T.n != spec_.r()) fail(ErrorCode::RankMismatch, "--T must be r x r");
            return make_affine_gl(T);
        }
        if (kind_ == "fourier_r") return FourierR{inverse_};
        if (kind_ == "fourier0") return FourierZero{inverse_};
        if (kind_ == "phi") return Phi{inverse_};
        usage_parse_ = true;
        fail(ErrorCode::Parse, "unknown generator kind '" + kind_ + "'");
    }

    // ---- gl ----
    void add_gl(CLI::App& app) {
        auto* gl = app.add_subcommand("gl", "polynomial matrices");
        gl->require_subcommand(1);
        auto var = [this] { return var_ == "a*" ? Var::astar : Var::a; };

        auto* fa = leaf(gl, "factor", "elementary factorization", [this, var](std::ostream& os) {
            PolyMat A = parse_polymat(a_text_, var());
            auto fs = pm_factor(A);
            json j = json::array();
            for (const auto& f : fs) {
                if (auto* t = std::get_if<Transvection>(&f))
                    j.push_back({{"kind", "transvection"}, {"alpha", t->alpha}, {"beta", t->beta},
                                 {"p", to_string(t->p, A.var())}});
                else
                    j.push_back({{"kind", "scalar"}, {"T", exact_matrix_json(std::get<ScalarMat>(f).T)}});
            }
            if (g_.json) {
                os << json{{"factors", j}}.dump(2) << "\n";
                return;
            }
            for (const auto& f : j) {
                if (f["kind"] == "transvection")
                    os << "E" << f["alpha"].get<int>() << f["beta"].get<int>() << "(" << f["p"].get<std::string>() << ")\n";
                else
                    os << "D(" << f["T"].dump() << ")\n";
            }
        });
        fa->add_option("-A", a_text_, "matrix, rows ';', entries ','")->required();
        fa->add_option("--var", var_, "a | a*")->capture_default_str();

        auto* ps = leaf(gl, "psi", "generator word with crossed matrix A", [this, var](std::ostream& os) {
            PolyMat A = parse_polymat(a_text_, var());
            if (A.r() != spec_.r()) spec_ = QuiverSpec(A.r(), spec_.orientation());
            os << to_json(psi_embed(A, spec_), spec_).dump(2) << "\n";
        });
        ps->add_option("-A", a_text_, "matrix, rows ';', entries ','")->required();
        ps->add_option("--var", var_, "a | a*")->capture_default_str();
    }

    // ---- primitive ----
    void add_primitive(CLI::App& app) {
        auto* pr = app.add_subcommand("primitive", "cyclic primitives");
        pr->require_subcommand(1);
        auto* so = leaf(pr, "solve", "find f with the given cyclic derivatives", [this](std::ostream& os) {
            auto names = split(letters_, ',');
            for (const auto& extra : split(extra_letters_, ','))
                if (!extra.empty()) names.push_back(extra);
            Alphabet alpha = free_alphabet(names);
            std::vector<Letter> G;
            for (const auto& nm : split(letters_, ',')) G.push_back(alpha.index(nm));
            std::vector<FreePoly> u;
            for (const auto& t : us_) u.push_back(parse_free(t, alpha));
            emit_result(os, "f", to_string(solve_primitive(G, u, alpha), alpha));
        });
        so->add_option("-G", letters_, "comma-separated letters g_1,...,g_k")->required();
        so->add_option("-u", us_, "u_k, one per letter, in order")->required();
        so->add_option("--extra", extra_letters_, "additional letters that may occur in u");
    }

    // ---- rep ----
    void add_rep(CLI::App& app) {
        auto* rep = app.add_subcommand("rep", "representation-space numerics");
        rep->require_subcommand(1);

        auto* rnd = leaf(rep, "random", "seeded point on the moment fiber", [this](std::ostream& os) {
            FiberKind k = fiber_ == "cdoubleprime" ? FiberKind::Cdoubleprime : FiberKind::Cprime;
            os << to_json(random_fiber_point(g_.n, g_.r, tau(), g_.seed, k)).dump(2) << "\n";
        });
        rnd->add_option("--kind", fiber_, "cprime | cdoubleprime")->capture_default_str();

        auto* mo = leaf(rep, "moment", "moment-map residual", [this](std::ostream& os) {
            RepPoint p = read_point(p_);
            double abs = moment_residual(p), rel = relative_residual(p);
            if (g_.json) os << json{{"residual", abs}, {"relative", rel}}.dump(2) << "\n";
            else os << "residual: " << fmt(abs) << "\nrelative: " << fmt(rel) << "\n";
        });
        mo->add_option("-p", p_, "point file ('-' for stdin)")->required();

        auto* ev = leaf(rep, "eval", "evaluate a path polynomial", [this](std::ostream& os) {
            RepPoint p = read_point(p_);
            spec_ = QuiverSpec(p.r, spec_.orientation());
            CMat m = eval_poly(parse_nc(f_, spec_), p);
            if (g_.json) os << json{{"matrix", to_json(m)}}.dump(2) << "\n";
            else os << fmt(m) << "\n";
        });
        ev->add_option("-p", p_, "point file")->required();
        ev->add_option("-f", f_, "polynomial")->required();

        auto* ac = leaf(rep, "act", "act by a word", [this](std::ostream& os) {
            RepPoint p = read_point(p_);
            GeneratorWord w = read_word(words_.at(0));
            os << to_json(act(p, w, spec_)).dump(2) << "\n";
        });
        ac->add_option("-p", p_, "point file")->required();
        ac->add_option("-w", words_, "word file")->required()->expected(1);

        auto* oe = leaf(rep, "orbit-eq", "compare gauge orbits", [this](std::ostream& os) {
            bool eq = orbit_equal(read_point(p_), read_point(q_), orbit_tol_);
            if (g_.json) os << json{{"orbit_equal", eq}}.dump(2) << "\n";
            else os << "orbit_equal: " << (eq ? "true" : "false") << "\n";
        });
        oe->add_option("-p", p_, "first point")->required();
        oe->add_option("-q", q_, "second point")->required();
        oe->add_option("--orbit-tol", orbit_tol_, "comparison tolerance")->capture_default_str();

        auto* fl = leaf(rep, "flow", "closed-form elementary flow", [this](std::ostream& os) {
            os << to_json(flow_elementary(k_, alpha_, beta_, parse_complex(t_), read_point(p_))).dump(2) << "\n";
        });
        fl->add_option("-p", p_, "point file")->required();
        fl->add_option("--k", k_, "power of Y")->capture_default_str();
        fl->add_option("--alpha", alpha_, "row index of the elementary matrix (1-based)")->required();
        fl->add_option("--beta", beta_, "column index (1-based)")->required();
        fl->add_option("--t", t_, "time")->capture_default_str();

        auto* fo = leaf(rep, "flow-ode", "integrate the Hamiltonian flow", [this](std::ostream& os) {
            RepPoint p = read_point(p_);
            CMat m = m_text_.empty() ? CMat::Identity(p.r, p.r) : parse_cmatrix(m_text_);
            os << to_json(flow_ode(k_, m, parse_complex(t_), p, steps_)).dump(2) << "\n";
        });
        fo->add_option("-p", p_, "point file")->required();
        fo->add_option("--k", k_, "power of Y")->capture_default_str();
        fo->add_option("--m", m_text_, "r x r matrix, rows ';' (default identity)");
        fo->add_option("--t", t_, "time")->capture_default_str();
        fo->add_option("--steps", steps_, "RK4 steps")->capture_default_str();

        auto* ha = leaf(rep, "hamiltonian", "value of tr(Y^k v m w)", [this](std::ostream& os) {
            RepPoint p = read_point(p_);
            CMat m = m_text_.empty() ? CMat::Identity(p.r, p.r) : parse_cmatrix(m_text_);
            cd h = hamiltonian(k_, m, p);
            if (g_.json) os << json{{"value", to_json(h)}}.dump(2) << "\n";
            else os << fmt(h) << "\n";
        });
        ha->add_option("-p", p_, "point file")->required();
        ha->add_option("--k", k_, "power of Y")->capture_default_str();
        ha->add_option("--m", m_text_, "r x r matrix (default identity)");
    }

    // ---- nav ----
    void add_nav(CLI::App& app) {
        auto* nav = app.add_subcommand("nav", "navigation through the automorphism group");
        nav->require_subcommand(1);

        auto* re = leaf(nav, "reduce", "reduce a point to rank 1", [this](std::ostream& os) {
            RepPoint p = read_point(p_);
            spec_ = QuiverSpec(p.r, spec_.orientation());
            os << to_json(reduce_to_rank1(p, spec_), spec_).dump(2) << "\n";
        });
        re->add_option("-p", p_, "point file")->required();

        auto* r1 = leaf(nav, "reduce1", "one rank-reduction level", [this](std::ostream& os) {
            RepPoint p = read_point(p_);
            spec_ = QuiverSpec(p.r, spec_.orientation());
            NavTrace tr;
            tr.start = p;
            RepPoint cur = p;
            reduce_rank_once(cur, spec_, level_ > 0 ? level_ : p.r, tr);
            tr.final = cur;
            os << to_json(tr, spec_).dump(2) << "\n";
        });
        r1->add_option("-p", p_, "point file")->required();
        r1->add_option("--level", level_, "level to kill (default r)");

        auto* co = leaf(nav, "connect", "word carrying one point's orbit to another's", [this](std::ostream& os) {
            RepPoint p = read_point(p_), q = read_point(q_);
            spec_ = QuiverSpec(p.r, spec_.orientation());
            ConnectResult res = connect(p, q, spec_, NavOptions{endgame_});
            json j = to_json(res.word, spec_);
            j["used_endgame"] = res.used_endgame;
            j["polish_iterations"] = res.polish_iterations;
            os << j.dump(2) << "\n";
        });
        co->add_option("-p", p_, "source point")->required();
        co->add_option("-q", q_, "target point")->required();
        co->add_flag("--rank1-endgame", endgame_, "connect different rank-1 orbits too");

        auto* rp = leaf(nav, "replay", "apply a word or trace to a point", [this](std::ostream& os) {
            json src = read_json(words_.at(0));
            auto [spec, w] = word_from_json(src, spec_);
            spec_ = spec;
            RepPoint start = !p_.empty() ? read_point(p_)
                             : src.contains("start") ? point_from_json(src["start"])
                                                     : (fail(ErrorCode::Io, "replay needs -p or a trace with a start point"),
                                                        RepPoint{});
            RepPoint fin = replay(start, w, spec_);
            json j = to_json(fin);
            if (src.contains("final")) {
                RepPoint expect = point_from_json(src["final"]);
                double d = (fin.X - expect.X).norm() + (fin.Y - expect.Y).norm() + (fin.v - expect.v).norm() +
                           (fin.w - expect.w).norm();
                j["deviation"] = d;
            }
            os << j.dump(2) << "\n";
        });
        rp->add_option("-w,-t", words_, "word or trace file")->required()->expected(1);
        rp->add_option("-p", p_, "start point (defaults to the trace's start)");
    }

    std::istream& in_;
    std::ostream& out_;
    Globals g_;
    QuiverSpec spec_{2, Orientation::zigzag};
    Action action_;
    bool usage_parse_ = false;

    std::string f_, g_text_, alphabet_ = "tri", letters_, extra_letters_, kind_, a_text_, b_text_, t_text_, var_ = "a";
    std::string p_, q_, fiber_ = "cprime", t_ = "1", m_text_;
    std::vector<std::string> words_, us_;
    bool alias_ = false, inverse_ = false, images_ = false, endgame_ = false;
    int k_ = 1, alpha_ = 0, beta_ = 0, steps_ = 10000, level_ = 0;
    double orbit_tol_ = 1e-6;
};

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Runner r(in, out);
    return r.run(args, err);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run(args, std::cin, out, err);
}

} // namespace qsym::cli

#endif

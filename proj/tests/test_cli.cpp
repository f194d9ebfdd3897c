#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qsym/cli.hpp"
#include "random_gen.hpp"

using namespace qsym;
using namespace qsym::testing;
namespace fs = std::filesystem;

namespace {

struct Out {
    int code;
    std::string out, err;
};

Out run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name) {
    fs::path d = fs::temp_directory_path() / "qsym_cli_test";
    fs::create_directories(d);
    return d / name;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

} // namespace

TEST(Parse, GrammarBasics) {
    QuiverSpec s1(1, Orientation::zigzag);
    EXPECT_EQ(parse_nc("[a,a*] - d1 b1 + b1 d1", s1), moment_element(s1).c);
    EXPECT_TRUE(parse_nc("0", s1).is_zero());
    EXPECT_EQ(parse_nc("a^3", s1), power(NCPoly::arrow(1, arrow_a()), 3));
    EXPECT_EQ(parse_nc("2 e1 + e2", s1), NCPoly::eps(1, 1, 2) + NCPoly::eps(1, 2));
    EXPECT_EQ(parse_nc("-3/4 a + (1/2-2i) a", s1), NCPoly::arrow(1, arrow_a(), GaussScalar(mpq_class(-1, 4), -2)));
    EXPECT_EQ(parse_nc("0.25 a", s1), NCPoly::arrow(1, arrow_a(), GaussScalar::frac(1, 4)));
    EXPECT_EQ(parse_nc("2 (a + a*)^2", s1), parse_nc("2 a a + 2 a a* + 2 a* a + 2 a* a*", s1));
    // Aliases carry their sign: x1 = -d1.
    EXPECT_EQ(parse_nc("x1", s1), -parse_nc("d1", s1));
    // A scalar in path context is a multiple of the unit.
    EXPECT_EQ(parse_nc("3", s1), NCPoly::unit(1) * GaussScalar(3));

    Alphabet ab = free_alphabet({"a", "b"});
    CycSum f = parse_cyc("1/2 a b a b + b b a", ab);
    CycSum g;
    g.add({0, 1, 0, 1}, GaussScalar::frac(1, 2));
    g.add({1, 1, 0}, 1);
    EXPECT_EQ(f, g);
    EXPECT_EQ(parse_cyc("1/2 abab + bba", ab), f);  // greedy split of letter runs
}

TEST(Parse, Errors) {
    QuiverSpec s3(3, Orientation::zigzag);
    auto code_of = [&](const std::string& t) {
        try {
            parse_nc(t, s3);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;  // sentinel: no error
    };
    EXPECT_EQ(code_of("a + q"), ErrorCode::UnknownLetter);
    EXPECT_EQ(code_of("d9"), ErrorCode::UnknownLetter);
    EXPECT_EQ(code_of("y1 y1"), ErrorCode::BlockViolation);
    EXPECT_EQ(code_of("a +"), ErrorCode::Parse);
    EXPECT_EQ(code_of("(a"), ErrorCode::Parse);
    EXPECT_EQ(code_of("[a, a*"), ErrorCode::Parse);
    EXPECT_EQ(code_of("1/0"), ErrorCode::Parse);
    try {
        parse_nc("a + )", s3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
    }
}

TEST(Parse, RoundTripNC) {
    std::mt19937 g(11);
    for (int t = 0; t < 500; ++t) {
        int r = 1 + t % 4;
        QuiverSpec s(r, static_cast<Orientation>(t % 3));
        NCPoly p = rand_poly(g, r, 1 + t % 5, 4);
        for (Naming nm : {Naming::raw, Naming::alias}) {
            std::string txt = to_string(p, s, nm);
            NCPoly q = parse_nc(txt, s);
            ASSERT_EQ(q, p) << txt;
        }
    }
}

TEST(Parse, RoundTripCyc) {
    std::mt19937 g(12);
    Alphabet free4 = free_alphabet({"a", "b", "c", "d"});
    for (int t = 0; t < 500; ++t) {
        CycSum f = rand_cyc(g, 4, 1 + t % 6, 6, true);
        std::string txt = to_string(f, free4);
        ASSERT_EQ(parse_cyc(txt, free4), f) << txt;
    }
    QuiverSpec s4(4, Orientation::zigzag);
    for (const Alphabet& A : {triangular_alphabet(s4), op_alphabet(s4), cycle_alphabet(s4)}) {
        for (int t = 0; t < 100; ++t) {
            CycSum f = rand_cyc(g, static_cast<int>(A.size()), 1 + t % 4, 4, true);
            std::string txt = to_string(f, A);
            ASSERT_EQ(parse_cyc(txt, A), f) << txt;
        }
    }
}

TEST(Parse, Scalars) {
    EXPECT_EQ(parse_scalar("-1/2"), GaussScalar::frac(-1, 2));
    EXPECT_EQ(parse_scalar("2i"), GaussScalar(0, 2));
    EXPECT_EQ(parse_scalar("(1/3-2i)"), GaussScalar(mpq_class(1, 3), -2));
    EXPECT_EQ(parse_scalar("i"), GaussScalar::i());
    std::mt19937 g(3);
    for (int t = 0; t < 200; ++t) {
        GaussScalar s = rand_scalar(g, true) + rand_scalar(g, true) * GaussScalar::i();
        EXPECT_EQ(parse_scalar(s.str()), s) << s.str();
    }
    EXPECT_THROW(parse_scalar("a"), Error);
}

TEST(JsonIo, PointAndWordRoundTrip) {
    RepPoint p = random_fiber_point(3, 2, cd(1, 0.5), 4);
    json j = json::parse(to_json(p).dump());
    RepPoint q = point_from_json(j);
    EXPECT_EQ(q.X, p.X);
    EXPECT_EQ(q.Y, p.Y);
    EXPECT_EQ(q.v, p.v);
    EXPECT_EQ(q.w, p.w);
    EXPECT_EQ(q.tau, p.tau);

    QuiverSpec s(3, Orientation::zigzag);
    ExactMat T = ExactMat::identity(3);
    T(0, 2) = GaussScalar(mpq_class(1, 2), 1);
    GeneratorWord w{Triangular{parse_cyc("a a b21 + 1/3 b11", triangular_alphabet(s))},
                    OpTriangular{parse_cyc("(1-i) a* b21*", op_alphabet(s))},
                    make_affine_sl2({1, 2, 0, 1}, {GaussScalar::frac(1, 3), 0}),
                    AffineGL{T},
                    FourierZero{true},
                    Phi{false}};
    auto [s2, w2] = word_from_json(json::parse(to_json(w, s).dump()), QuiverSpec(1, Orientation::zigzag));
    EXPECT_EQ(s2, s);
    ASSERT_EQ(w2.size(), w.size());
    EXPECT_EQ(expand_word(w2, s).images, expand_word(w, s).images);
    EXPECT_THROW(point_from_json(json{{"n", 2}}), Error);
}

TEST(Cli, SpecExamples) {
    Out d = run({"nc", "derive", "--r", "3", "-f", "a^2 b21", "-g", "a"});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_NE(d.out.find("a b21 + b21 a"), std::string::npos) << d.out;

    Out p = run({"primitive", "solve", "-G", "a,b", "-u", "bab+bb", "-u", "aba+ab+ba"});
    ASSERT_EQ(p.code, 0) << p.err;
    Alphabet ab = free_alphabet({"a", "b"});
    EXPECT_EQ(parse_cyc(trim(p.out), ab), parse_cyc("1/2 abab + bba", ab)) << p.out;

    Out b = run({"auto", "build", "--r", "3", "--kind", "triangular", "-f", "a^2 b21", "-o", tmp("w.json").string()});
    ASSERT_EQ(b.code, 0) << b.err;
    Out c = run({"auto", "check", "-w", tmp("w.json").string()});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(trim(c.out), "symplectic: true");

    Out m = run({"nc", "moment", "--r", "1"});
    EXPECT_EQ(parse_nc(m.out.substr(4, m.out.find('\n') - 4), QuiverSpec(1, Orientation::zigzag)),
              moment_element(QuiverSpec(1, Orientation::zigzag)).c);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nc"}).code, 2);
    EXPECT_EQ(run({"nc", "mul", "-f", "a"}).code, 2);
    EXPECT_EQ(run({"nc", "mul", "--r", "0", "-f", "a", "-g", "a"}).code, 2);
    EXPECT_EQ(run({"nc", "mul", "--r", "3", "-f", "y1", "-g", "y1"}).code, 1);
    EXPECT_EQ(run({"primitive", "solve", "-G", "a,b", "-u", "b", "-u", "b"}).code, 1);
    Out j = run({"--json", "primitive", "solve", "-G", "a,b", "-u", "b", "-u", "b"});
    EXPECT_EQ(json::parse(j.err)["error"], "NotACocycle");
    EXPECT_EQ(run({"rep", "moment", "-p", "/nonexistent.json"}).code, 1);
    EXPECT_EQ(run({"auto", "build", "--kind", "nonsense"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, AutoAndGl) {
    Out f = run({"gl", "factor", "--r", "2", "-A", "0,1;-1,0"});
    ASSERT_EQ(f.code, 0) << f.err;
    EXPECT_EQ(f.out, "E12(1)\nE21(-1)\nE12(1)\n");

    Out ps = run({"gl", "psi", "-A", "1,a^2,0;0,1,a;0,0,1", "-o", tmp("psi.json").string()});
    ASSERT_EQ(ps.code, 0) << ps.err;
    Out ch = run({"auto", "check", "-w", tmp("psi.json").string()});
    EXPECT_EQ(trim(ch.out), "symplectic: true");
    Out mat = run({"auto", "matrices", "-w", tmp("psi.json").string()});
    ASSERT_EQ(mat.code, 0) << mat.err;
    EXPECT_EQ(mat.out.substr(0, mat.out.find('\n')), "N = e1, a a, 0; 0, e1, a; 0, 0, e1");
    Out pr = run({"auto", "project0", "-w", tmp("psi.json").string()});
    EXPECT_NE(pr.out.find("reduced: true"), std::string::npos);

    Out inv = run({"auto", "invert", "-w", tmp("psi.json").string(), "-o", tmp("psi_inv.json").string()});
    ASSERT_EQ(inv.code, 0);
    Out comp = run({"auto", "compose", "-w", tmp("psi.json").string(), "-w", tmp("psi_inv.json").string(), "-o",
                    tmp("id.json").string()});
    ASSERT_EQ(comp.code, 0);
    Out idm = run({"auto", "check", "--images", "-w", tmp("id.json").string()});
    EXPECT_NE(idm.out.find("a* -> a*"), std::string::npos) << idm.out;
    EXPECT_NE(idm.out.find("b2 -> b2"), std::string::npos) << idm.out;
}

TEST(Cli, RepAndNavPipelines) {
    std::string pf = tmp("p.json").string(), wf = tmp("w3.json").string(), qf = tmp("q.json").string();
    ASSERT_EQ(run({"rep", "random", "--n", "3", "--r", "3", "--seed", "5", "-o", pf}).code, 0);
    // Determinism given the seed.
    EXPECT_EQ(run({"rep", "random", "--n", "3", "--r", "3", "--seed", "5"}).out,
              run({"rep", "random", "--n", "3", "--r", "3", "--seed", "5"}).out);
    Out mo = run({"--json", "rep", "moment", "-p", pf});
    EXPECT_LE(json::parse(mo.out)["relative"].get<double>(), 1e-12);

    ASSERT_EQ(run({"auto", "build", "--r", "3", "--kind", "triangular", "-f", "1/2 a b21", "-o", wf}).code, 0);
    ASSERT_EQ(run({"rep", "act", "-p", pf, "-w", wf, "-o", qf}).code, 0);
    EXPECT_EQ(trim(run({"rep", "orbit-eq", "-p", pf, "-q", pf}).out), "orbit_equal: true");

    // Stdin input.
    std::ifstream pin(pf);
    std::stringstream pbuf;
    pbuf << pin.rdbuf();
    Out hs = run({"rep", "hamiltonian", "-p", "-", "--k", "1"}, pbuf.str());
    ASSERT_EQ(hs.code, 0) << hs.err;
    RepPoint P = point_from_json(json::parse(pbuf.str()));
    Out hj = run({"--json", "rep", "hamiltonian", "-p", pf, "--k", "1"});
    EXPECT_LE(std::abs(complex_from_json(json::parse(hj.out)["value"]) - hamiltonian(1, CMat::Identity(3, 3), P)), 1e-14);

    Out ev = run({"--json", "rep", "eval", "-p", pf, "-f", "a^2"});
    ASSERT_EQ(ev.code, 0) << ev.err;
    CMat X2 = matrix_from_json(json::parse(ev.out)["matrix"], 3, 3, "m");
    EXPECT_LE((X2 - P.X * P.X).norm(), 1e-12);

    Out fl = run({"rep", "flow", "-p", pf, "--k", "2", "--alpha", "2", "--beta", "1", "--t", "0.25"});
    ASSERT_EQ(fl.code, 0) << fl.err;
    EXPECT_LE(relative_residual(point_from_json(json::parse(fl.out))), 1e-12);
    EXPECT_EQ(run({"rep", "flow", "-p", pf, "--alpha", "1", "--beta", "1"}).code, 1);

    Out co = run({"nav", "connect", "--rank1-endgame", "-p", pf, "-q", qf, "-o", tmp("c.json").string()});
    ASSERT_EQ(co.code, 0) << co.err;
    Out rp = run({"nav", "replay", "-w", tmp("c.json").string(), "-p", pf, "-o", tmp("c_end.json").string()});
    ASSERT_EQ(rp.code, 0) << rp.err;
    EXPECT_EQ(trim(run({"rep", "orbit-eq", "-p", tmp("c_end.json").string(), "-q", qf}).out), "orbit_equal: true");

    Out re = run({"nav", "reduce", "-p", pf, "-o", tmp("t.json").string()});
    ASSERT_EQ(re.code, 0) << re.err;
    Out rt = run({"nav", "replay", "-t", tmp("t.json").string()});
    ASSERT_EQ(rt.code, 0) << rt.err;
    EXPECT_EQ(json::parse(rt.out)["deviation"].get<double>(), 0.0);

    Out r1 = run({"nav", "reduce1", "-p", pf, "--level", "3"});
    ASSERT_EQ(r1.code, 0) << r1.err;
    RepPoint fin = point_from_json(json::parse(r1.out)["final"]);
    EXPECT_LE(fin.v.col(2).norm() / (1 + fin.v.norm() + fin.w.norm()), 1e-8);
}

#ifdef QSYM_CLI_PATH
TEST(Cli, Binary) {
    std::string cmd = std::string(QSYM_CLI_PATH) + " primitive solve -G a,b -u 'bab+bb' -u 'aba+ab+ba' > " +
                      tmp("bin.txt").string();
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    std::ifstream f(tmp("bin.txt"));
    std::string line;
    std::getline(f, line);
    EXPECT_EQ(line, "abb + 1/2 abab");
    int st = std::system((std::string(QSYM_CLI_PATH) + " nc bogus 2>/dev/null").c_str());
    EXPECT_EQ(WEXITSTATUS(st), 2);
}
#endif

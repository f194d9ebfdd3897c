#ifndef QSYM_JSON_IO_HPP
#define QSYM_JSON_IO_HPP

#include <json.hpp>

#include "qsym/navigator.hpp"
#include "qsym/parse.hpp"

namespace qsym {

using json = nlohmann::json;

// Complex numbers are [re, im]; matrices are arrays of rows. Doubles use the shortest
// representation that round-trips, so reading back is bit-exact.
inline json to_json(cd z) { return json::array({z.real(), z.imag()}); }

inline cd complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) fail(ErrorCode::Io, "complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const CMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

inline CMat matrix_from_json(const json& j, int rows, int cols, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        fail(ErrorCode::Io, std::string("field ") + what + " has the wrong number of rows");
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            fail(ErrorCode::Io, std::string("field ") + what + " has the wrong number of columns");
        for (int k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

inline json to_json(const RepPoint& p) {
    return {{"n", p.n}, {"r", p.r}, {"tau", to_json(p.tau)}, {"X", to_json(p.X)},
            {"Y", to_json(p.Y)}, {"v", to_json(p.v)}, {"w", to_json(p.w)}};
}

inline RepPoint point_from_json(const json& j) {
    try {
        RepPoint p;
        p.n = j.at("n").get<int>();
        p.r = j.at("r").get<int>();
        if (p.n < 1 || p.r < 1) fail(ErrorCode::Io, "n and r must be positive");
        p.tau = j.contains("tau") ? complex_from_json(j["tau"]) : cd(1.0, 0.0);
        p.X = matrix_from_json(j.at("X"), p.n, p.n, "X");
        p.Y = matrix_from_json(j.at("Y"), p.n, p.n, "Y");
        p.v = matrix_from_json(j.at("v"), p.n, p.r, "v");
        p.w = matrix_from_json(j.at("w"), p.r, p.n, "w");
        return p;
    } catch (const json::exception& e) {
        fail(ErrorCode::Io, std::string("bad RepPoint JSON: ") + e.what());
    }
}

// ---- generators ----

inline json exact_matrix_json(const ExactMat& T) {
    json rows = json::array();
    for (int i = 0; i < T.n; ++i) {
        json row = json::array();
        for (int k = 0; k < T.n; ++k) row.push_back(T(i, k).str());
        rows.push_back(row);
    }
    return rows;
}

inline GaussScalar scalar_from_json(const json& j) {
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return GaussScalar(j.get<long>());
    fail(ErrorCode::Io, "exact scalars are written as strings such as \"-1/2\" or \"(1+2i)\"");
}

inline ExactMat exact_matrix_from_json(const json& j) {
    if (!j.is_array()) fail(ErrorCode::Io, "matrix must be an array of rows");
    ExactMat T(static_cast<int>(j.size()));
    for (int i = 0; i < T.n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != T.n) fail(ErrorCode::Io, "matrix must be square");
        for (int k = 0; k < T.n; ++k) T(i, k) = scalar_from_json(j[i][k]);
    }
    return T;
}

inline json to_json(const Generator& g, const QuiverSpec& spec) {
    return std::visit(
        [&](const auto& x) -> json {
            using G = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<G, Triangular>)
                return {{"kind", "triangular"}, {"f", to_string(x.f, triangular_alphabet(spec))}};
            else if constexpr (std::is_same_v<G, OpTriangular>)
                return {{"kind", "op_triangular"}, {"f", to_string(x.f, op_alphabet(spec))}};
            else if constexpr (std::is_same_v<G, AffineSL2>) {
                json A = json::array(), B = json::array();
                for (const auto& s : x.A) A.push_back(s.str());
                for (const auto& s : x.B) B.push_back(s.str());
                return {{"kind", "affine_sl2"}, {"A", A}, {"B", B}};
            } else if constexpr (std::is_same_v<G, AffineGL>)
                return {{"kind", "affine_gl"}, {"T", exact_matrix_json(x.T)}};
            else if constexpr (std::is_same_v<G, FourierR>)
                return {{"kind", "fourier_r"}, {"inverse", x.inverse}};
            else if constexpr (std::is_same_v<G, FourierZero>)
                return {{"kind", "fourier0"}, {"inverse", x.inverse}};
            else
                return {{"kind", "phi"}, {"inverse", x.inverse}};
        },
        g);
}

inline Generator generator_from_json(const json& j, const QuiverSpec& spec) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        const bool inv = j.value("inverse", false);
        if (kind == "triangular") return Triangular{parse_cyc(j.at("f").get<std::string>(), triangular_alphabet(spec))};
        if (kind == "op_triangular") return OpTriangular{parse_cyc(j.at("f").get<std::string>(), op_alphabet(spec))};
        if (kind == "affine_sl2") {
            const json& A = j.at("A");
            if (!A.is_array() || A.size() != 4) fail(ErrorCode::Io, "affine_sl2 needs A as 4 row-major entries");
            std::array<GaussScalar, 4> a;
            for (int k = 0; k < 4; ++k) a[k] = scalar_from_json(A[k]);
            std::array<GaussScalar, 2> b{0, 0};
            if (j.contains("B")) {
                if (!j["B"].is_array() || j["B"].size() != 2) fail(ErrorCode::Io, "affine_sl2 B has two entries");
                for (int k = 0; k < 2; ++k) b[k] = scalar_from_json(j["B"][k]);
            }
            return make_affine_sl2(a, b);
        }
        if (kind == "affine_gl") {
            ExactMat T = exact_matrix_from_json(j.at("T"));
            if (T.n != spec.r()) fail(ErrorCode::RankMismatch, "affine_gl matrix must be r x r");
            return make_affine_gl(T);
        }
        if (kind == "fourier_r") return FourierR{inv};
        if (kind == "fourier0") return FourierZero{inv};
        if (kind == "phi") return Phi{inv};
        fail(ErrorCode::Io, "unknown generator kind '" + kind + "'");
    } catch (const json::exception& e) {
        fail(ErrorCode::Io, std::string("bad generator JSON: ") + e.what());
    }
}

inline json to_json(const GeneratorWord& w, const QuiverSpec& spec) {
    json gens = json::array();
    for (const auto& g : w) gens.push_back(to_json(g, spec));
    return {{"r", spec.r()}, {"orientation", orientation_name(spec.orientation())}, {"gens", gens}};
}

// The word's own r/orientation win over the caller's defaults when present.
inline std::pair<QuiverSpec, GeneratorWord> word_from_json(const json& j, const QuiverSpec& fallback) {
    try {
        const json& gens = j.is_array() ? j : j.at("gens");
        QuiverSpec spec = fallback;
        if (j.is_object() && (j.contains("r") || j.contains("orientation")))
            spec = QuiverSpec(j.value("r", fallback.r()),
                              j.contains("orientation") ? parse_orientation(j["orientation"].get<std::string>())
                                                        : fallback.orientation());
        GeneratorWord w;
        for (const auto& g : gens) w.push_back(generator_from_json(g, spec));
        return {spec, w};
    } catch (const json::exception& e) {
        fail(ErrorCode::Io, std::string("bad GeneratorWord JSON: ") + e.what());
    }
}

inline json to_json(const NavTrace& tr, const QuiverSpec& spec) {
    json steps = json::array();
    for (const auto& s : tr.steps) {
        json nodes = json::array(), values = json::array();
        for (cd z : s.nodes) nodes.push_back(to_json(z));
        for (cd z : s.values) values.push_back(to_json(z));
        steps.push_back({{"kind", s.kind}, {"level", s.level}, {"generators", s.generators},
                         {"nodes", nodes}, {"values", values}, {"residual", s.residual}});
    }
    json out = to_json(tr.word, spec);
    out["steps"] = steps;
    out["start"] = to_json(tr.start);
    out["final"] = to_json(tr.final);
    return out;
}

} // namespace qsym

#endif

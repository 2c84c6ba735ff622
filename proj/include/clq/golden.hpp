// Line-oriented fixture format for unit matrices, the comparison harness that
// turns a fixture into an errata list, and JSON / LaTeX emitters.
//
//   key value...            header lines, kept in order
//   matrix <label> prefactor <token>
//   <token> <token> ...     one line per row, '.' for zero
#pragma once

#include "clq/equations.hpp"
#include "clq/representations.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace clq {

struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GoldenMatrix {
    std::string label;
    std::string prefactor;
    std::vector<std::vector<std::string>> rows;
    bool operator==(const GoldenMatrix&) const = default;
};

struct GoldenFile {
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<GoldenMatrix> matrices;

    std::string get(const std::string& key, const std::string& fallback = "") const {
        for (const auto& [k, v] : header)
            if (k == key) return v;
        return fallback;
    }
    bool has(const std::string& key) const {
        for (const auto& kv : header)
            if (kv.first == key) return true;
        return false;
    }
    std::vector<std::string> list(const std::string& key) const {
        std::istringstream is(get(key));
        std::vector<std::string> out;
        for (std::string w; is >> w;) out.push_back(w);
        return out;
    }
    const GoldenMatrix* find(const std::string& label) const {
        for (const auto& m : matrices)
            if (m.label == label) return &m;
        return nullptr;
    }
    bool operator==(const GoldenFile&) const = default;
};

inline GoldenFile parse_golden(std::istream& in) {
    GoldenFile g;
    std::string line;
    int lineno = 0;
    bool in_matrices = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::vector<std::string> w;
        for (std::string t; is >> t;) w.push_back(t);
        if (w.empty()) continue;
        if (w[0] == "matrix") {
            if (w.size() != 4 || w[2] != "prefactor")
                throw format_error("line " + std::to_string(lineno) + ": expected 'matrix <label> prefactor <token>'");
            g.matrices.push_back({w[1], w[3], {}});
            in_matrices = true;
        } else if (in_matrices) {
            g.matrices.back().rows.push_back(w);
        } else {
            std::string rest;
            for (std::size_t i = 1; i < w.size(); ++i) rest += (i > 1 ? " " : "") + w[i];
            g.header.emplace_back(w[0], rest);
        }
    }
    for (const auto& m : g.matrices) {
        if (m.rows.empty()) throw format_error("matrix " + m.label + " has no rows");
        for (const auto& r : m.rows)
            if (r.size() != m.rows.size()) throw format_error("matrix " + m.label + " is not square");
    }
    return g;
}

inline GoldenFile parse_golden(const std::string& text) {
    std::istringstream is(text);
    return parse_golden(is);
}

inline GoldenFile load_golden(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw format_error("cannot open " + path);
    return parse_golden(f);
}

inline std::string dump_golden(const GoldenFile& g) {
    std::ostringstream os;
    for (const auto& [k, v] : g.header) os << k << (v.empty() ? "" : " ") << v << '\n';
    for (const auto& m : g.matrices) {
        os << "matrix " << m.label << " prefactor " << m.prefactor << '\n';
        for (const auto& r : m.rows) {
            for (std::size_t j = 0; j < r.size(); ++j) os << (j ? " " : "") << r[j];
            os << '\n';
        }
    }
    return os.str();
}

inline GoldenMatrix golden_matrix(const std::string& label, const UnitMatrix& m, const std::string& basic = "21") {
    GoldenMatrix g{label, display_token(*m.units, m.prefactor, basic), {}};
    for (int i = 0; i < m.rows; ++i) {
        std::vector<std::string> row;
        for (int j = 0; j < m.cols; ++j) row.push_back(display_token(*m.units, m.at(i, j), basic));
        g.rows.push_back(std::move(row));
    }
    return g;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

inline GoldenFile to_golden(const RegularRep& rep) {
    GoldenFile g;
    g.header = {{"algebra", rep.algebra}, {"kind", kind_name(rep.kind)}, {"form", rep.form},
                {"basic", rep.basic},     {"map", rep.map.empty() ? "none" : rep.map},
                {"units", rep.units().name()}, {"rows", join(rep.grouping.names)}};
    for (int i = 0; i < rep.size(); ++i) g.matrices.push_back(golden_matrix(rep.labels[i], rep.mats[i], rep.basic));
    return g;
}

// ---------- comparison ----------

struct Erratum {
    std::string matrix, row, col, expected, computed;
};

struct ErrataReport {
    std::vector<Erratum> errata;
    std::vector<std::string> notes;  // display differences with identical values
    int matrices = 0;
    bool empty() const { return errata.empty(); }
};

namespace detail {

// Unit token with the basic-direction renaming undone.
inline Cell parse_display(const UnitAlgebra& U, std::string tok, const std::string& basic) {
    char u = basic_unit(basic);
    if (u != 'i')
        for (char& c : tok)
            if (c == u) c = 'i';
    return U.parse(tok);
}

inline void compare_matrix(const std::string& label, const UnitMatrix& got, const GoldenMatrix& want,
                           const std::vector<std::string>& rows, const std::string& basic, int sign,
                           ErrataReport& rep) {
    const UnitAlgebra& U = *got.units;
    if (int(want.rows.size()) != got.rows) throw shape_error("matrix " + label + " has the wrong size");
    ++rep.matrices;
    Cell pre = parse_display(U, want.prefactor, basic);
    bool values_equal = true, display_equal = pre == got.prefactor;
    for (int i = 0; i < got.rows; ++i)
        for (int j = 0; j < got.cols; ++j) {
            Cell w = parse_display(U, want.rows[i][j], basic);
            Cell we = U.mul(pre, w);
            Cell ge = got.effective(i, j), gc = got.at(i, j);
            ge.coef *= sign;
            gc.coef *= sign;
            display_equal = display_equal && w == gc;
            if (!(we == ge)) {
                values_equal = false;
                rep.errata.push_back({label, rows[i], rows[j], display_token(U, we, basic), display_token(U, ge, basic)});
            }
        }
    if (values_equal && !display_equal)
        rep.notes.push_back("matrix " + label + ": printed prefactor " + want.prefactor + ", computed " +
                            display_token(U, got.prefactor, basic) + "; same values");
}

}  // namespace detail

inline void check_header(const GoldenFile& g, const std::string& key, const std::string& value) {
    if (g.get(key) != value) throw shape_error("fixture " + key + " '" + g.get(key) + "' differs from '" + value + "'");
}

// Cell-by-cell comparison of effective values; header mismatches are hard errors.
inline ErrataReport verify_against_golden(const RegularRep& rep, const GoldenFile& g) {
    check_header(g, "algebra", rep.algebra);
    check_header(g, "kind", kind_name(rep.kind));
    check_header(g, "form", rep.form);
    check_header(g, "basic", rep.basic);
    check_header(g, "map", rep.map.empty() ? "none" : rep.map);
    check_header(g, "units", rep.units().name());
    if (g.list("rows") != rep.grouping.names) throw shape_error("fixture rows differ from the computed basis order");
    ErrataReport out;
    LabelMap lm(rep.labels);
    for (const auto& m : g.matrices) {
        int i = rep.find(m.label);
        int sign = 1;
        if (i < 0) {
            // a permuted label such as 314 for 134
            auto [s, idx] = lm.express({label_sign(m.label), label_blade(m.label)});
            i = idx;
            sign = s;
        }
        detail::compare_matrix(m.label, rep.mats[i], m, rep.grouping.names, rep.basic, sign, out);
    }
    return out;
}

// Display matrices of a system: d1..d4 (raised if the system displays d^m) and mass.
inline std::vector<std::pair<std::string, UnitMatrix>> system_display(const LinearPDESystem& s, const UnitAlgebra& U) {
    std::vector<std::pair<std::string, UnitMatrix>> out;
    for (int m = 1; m <= 4; ++m) {
        RatMat d = s.upper ? s.upper_deriv(m) : s.deriv[m - 1];
        out.emplace_back("d" + std::to_string(m), decompose_matrix(to_int(d), s.grouping, U, Cell{1, 0}));
    }
    out.emplace_back("mass", decompose_matrix(to_int(s.mass), s.grouping, U, Cell{1, 0}));
    return out;
}

inline std::string coupling_name(const LinearPDESystem& s, const PhysicalParams& pp) {
    return s.coupling == pp.half_coupling() ? "mc/2hbar" : "mc/hbar";
}

inline GoldenFile to_golden(const LinearPDESystem& s, const UnitAlgebra& U, const PhysicalParams& pp) {
    GoldenFile g;
    static const char* basics[3] = {"21", "13", "32"};
    g.header = {{"system", s.name},
                {"units", U.name()},
                {"derivative", s.upper ? "upper" : "lower"},
                {"coupling", coupling_name(s, pp)},
                {"rows", join(s.components)}};
    for (auto& [label, m] : system_display(s, U)) g.matrices.push_back(golden_matrix(label, m, basics[s.generation - 1]));
    return g;
}

inline ErrataReport verify_system(const LinearPDESystem& s, const GoldenFile& g, const PhysicalParams& pp) {
    const UnitAlgebra& U = unit_algebra(g.get("units"));
    check_header(g, "derivative", s.upper ? "upper" : "lower");
    if (g.list("rows") != s.components) throw shape_error("fixture rows differ from the system components");
    ErrataReport out;
    if (g.get("coupling") != coupling_name(s, pp))
        out.errata.push_back({"coupling", "-", "-", g.get("coupling"), coupling_name(s, pp)});
    for (auto& [label, m] : system_display(s, U)) {
        const GoldenMatrix* gm = g.find(label);
        if (!gm) throw shape_error("fixture lacks matrix " + label);
        detail::compare_matrix(label, m, *gm, s.components, "21", 1, out);
    }
    return out;
}

// Complex matrices with entries in {0, +-1, +-i} as unit matrices.
inline UnitMatrix unit_matrix(const CxMat& z) {
    const UnitAlgebra& C = complex_units();
    UnitMatrix u(C, z.rows(), z.cols());
    for (int i = 0; i < z.rows(); ++i)
        for (int j = 0; j < z.cols(); ++j) {
            const Cx& x = z(i, j);
            if (x.is_zero()) continue;
            if (x == Cx(1)) u.at(i, j) = {1, C.index("1")};
            else if (x == Cx(-1)) u.at(i, j) = {-1, C.index("1")};
            else if (x == Cx::i()) u.at(i, j) = {1, C.index("i")};
            else if (x == -Cx::i()) u.at(i, j) = {-1, C.index("i")};
            else throw decomposition_error("entry " + cx_string(x) + " is not a unit");
        }
    return u;
}

inline ErrataReport verify_matrices(const std::vector<std::pair<std::string, UnitMatrix>>& got, const GoldenFile& g,
                                    const std::vector<std::string>& rows) {
    if (g.list("rows") != rows) throw shape_error("fixture rows differ from the computed rows");
    ErrataReport out;
    for (const auto& [label, m] : got) {
        const GoldenMatrix* gm = g.find(label);
        if (!gm) throw shape_error("fixture lacks matrix " + label);
        detail::compare_matrix(label, m, *gm, rows, "21", 1, out);
    }
    return out;
}

inline std::string report_text(const ErrataReport& r) {
    std::ostringstream os;
    os << "matrices compared: " << r.matrices << "\nerrata: " << r.errata.size() << '\n';
    for (const auto& e : r.errata)
        os << "  " << e.matrix << " [" << e.row << "," << e.col << "] fixture " << e.expected << " computed "
           << e.computed << '\n';
    for (const auto& n : r.notes) os << "  note: " << n << '\n';
    return os.str();
}

// ---------- JSON ----------

inline nlohmann::ordered_json matrix_json(const GoldenMatrix& m) {
    nlohmann::ordered_json j;
    j["label"] = m.label;
    j["prefactor"] = m.prefactor;
    j["entries"] = m.rows;
    return j;
}

inline nlohmann::ordered_json rep_json(const RegularRep& rep) {
    GoldenFile g = to_golden(rep);
    nlohmann::ordered_json j;
    j["algebra"] = rep.algebra;
    j["kind"] = kind_name(rep.kind);
    j["form"] = rep.form;
    j["basic"] = rep.basic;
    j["map"] = rep.map.empty() ? "none" : rep.map;
    j["unit_algebra"] = rep.units().name();
    j["labels"] = rep.grouping.names;
    j["matrices"] = nlohmann::ordered_json::array();
    for (const auto& m : g.matrices) j["matrices"].push_back(matrix_json(m));
    return j;
}

inline nlohmann::ordered_json system_json(const LinearPDESystem& s, const UnitAlgebra& U, const PhysicalParams& pp) {
    GoldenFile g = to_golden(s, U, pp);
    nlohmann::ordered_json j;
    j["system"] = s.name;
    j["generation"] = s.generation;
    j["unit_algebra"] = U.name();
    j["labels"] = s.components;
    j["derivative"] = s.upper ? "upper" : "lower";
    j["coupling"] = coupling_name(s, pp);
    j["coupling_value"] = rat_string(s.coupling);
    j["deriv_matrices"] = nlohmann::ordered_json::array();
    for (const auto& m : g.matrices) {
        if (m.label == "mass")
            j["mass_matrix"] = matrix_json(m);
        else
            j["deriv_matrices"].push_back(matrix_json(m));
    }
    return j;
}

// ---------- LaTeX ----------

namespace detail {

inline std::string latex_unit(const std::string& tok, bool leading) {
    std::string sign = tok[0] == '-' ? "-" : (leading ? "" : "+");
    std::string u = tok.substr(1);
    std::string body;
    if (u == "1") body = "";
    else if (u.size() == 2 && u[0] == 's') body = "\\sigma^" + u.substr(1) + "\\,";
    else if (u.size() == 3 && u[1] == 's') body = std::string(1, u[0]) + "\\,\\sigma^" + u.substr(2) + "\\,";
    else if (u.size() == 2 && u[1] == 'I') body = std::string(1, u[0]) + "\\,I\\,";
    else body = u + "\\,";
    return sign + " " + body;
}

}  // namespace detail

inline std::string system_latex(const LinearPDESystem& s, const UnitAlgebra& U, const PhysicalParams& pp) {
    GoldenFile g = to_golden(s, U, pp);
    std::string d = s.upper ? "\\partial^" : "\\partial_";
    std::string coup = coupling_name(s, pp) == "mc/hbar" ? "\\frac{m c}{\\hbar}" : "\\frac{m c}{2\\hbar}";
    std::ostringstream os;
    os << "\\begin{array}{rcl}\n";
    const GoldenMatrix* mass = g.find("mass");
    int n = int(s.components.size());
    for (int i = 0; i < n; ++i) {
        std::string lhs;
        for (int m = 1; m <= 4; ++m) {
            const GoldenMatrix* gm = g.find("d" + std::to_string(m));
            for (int j = 0; j < n; ++j) {
                const std::string& t = gm->rows[i][j];
                if (t == ".") continue;
                lhs += detail::latex_unit(t, lhs.empty()) + d + std::to_string(m) + "\\Psi^{" + s.components[j] + "} ";
            }
        }
        std::string rhs;
        for (int j = 0; j < n; ++j) {
            const std::string& t = mass->rows[i][j];
            if (t == ".") continue;
            rhs += detail::latex_unit(t, rhs.empty()) + "\\Psi^{" + s.components[j] + "} ";
        }
        if (lhs.empty()) lhs = "0 ";
        os << "  " << lhs << "&=& " << (rhs.empty() ? "0" : coup + " (" + rhs + ")") << (i + 1 < n ? " \\\\" : "")
           << '\n';
    }
    os << "\\end{array}\n";
    return os.str();
}

}  // namespace clq

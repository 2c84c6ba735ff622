#include "clq/cli.hpp"

#include "clq/dispersion.hpp"
#include "clq/golden.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iomanip>

namespace clq {
namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CliffordAlgebra preset(const std::string& name) {
    if (name == "c3") return c3_algebra();
    if (name == "c4") return c4_algebra();
    throw usage_error("unknown preset " + name);
}

PhysicalParams params(const std::string& mass) {
    Rat m;
    try {
        m = parse_rat(mass);
    } catch (const std::exception&) {
        throw usage_error("bad mass '" + mass + "'");
    }
    return PhysicalParams::natural(m);
}

std::string fmt(double x) {
    if (std::abs(x) < 5e-13) x = 0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt(cd z) {
    std::string s = fmt(z.real());
    if (std::abs(z.imag()) >= 5e-13) s += (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
    return s;
}

void emit_rep(const RegularRep& rep, const std::string& emit, std::ostream& out) {
    if (emit == "json")
        out << rep_json(rep).dump(2) << '\n';
    else
        out << dump_golden(to_golden(rep));
}

const UnitAlgebra& display_units(const LinearPDESystem& s) {
    return s.family == "antilepton" ? quaternion_units() : pauli_units();
}

LinearPDESystem lepton(const PhysicalParams& pp, int gen) {
    LinearPDESystem s = assemble_free_lepton(pp);
    return gen == 1 ? s : generation_permute(s, gen);
}

LinearPDESystem antilepton(const PhysicalParams& pp, int gen) {
    LinearPDESystem s = antilepton_assemble(pp);
    return gen == 1 ? s : generation_permute(s, gen);
}

GoldenFile schrodinger_golden(const SchrodingerReduction& r) {
    GoldenFile g;
    g.header = {{"system", "schrodinger"}, {"units", "complex"}, {"derivative", "lower"}, {"coupling", "mc/hbar"},
                {"rows", join(r.unknowns)}};
    for (int m = 0; m < 4; ++m) g.matrices.push_back(golden_matrix("d" + std::to_string(m + 1), unit_matrix(r.system[m])));
    return g;
}

int cmd_equations(const std::string& which, int gen, const std::string& mass, const std::string& emit, std::ostream& out) {
    PhysicalParams pp = params(mass);
    if (which != "free" && which != "antilepton" && gen != 1)
        throw usage_error("the " + which + " reduction is defined for generation 1");
    auto emit_system = [&](const LinearPDESystem& s, nlohmann::ordered_json extra = {}) {
        const UnitAlgebra& U = display_units(s);
        if (emit == "latex") {
            out << system_latex(s, U, pp);
        } else if (emit == "golden") {
            out << dump_golden(to_golden(s, U, pp));
        } else {
            auto j = system_json(s, U, pp);
            for (auto& [k, v] : extra.items()) j[k] = v;
            out << j.dump(2) << '\n';
        }
    };
    if (which == "free") {
        emit_system(lepton(pp, gen));
    } else if (which == "antilepton") {
        emit_system(antilepton(pp, gen));
    } else if (which == "dirac") {
        DiracReduction r = reduce_dirac(lepton(pp, 1));
        emit_system(r.system, {{"matches_massive_pair", r.matches_massive_pair}, {"clifford", r.gammas.clifford}});
    } else if (which == "pauli") {
        PauliReduction r = reduce_pauli(lepton(pp, 1));
        emit_system(r.pair, {{"matches_r2", r.matches_r2}, {"wave_operator", r.wave_operator}});
    } else {
        SchrodingerReduction r = reduce_schrodinger(lepton(pp, 1));
        GoldenFile g = schrodinger_golden(r);
        if (emit == "golden") {
            out << dump_golden(g);
        } else if (emit == "latex") {
            out << "\\begin{array}{rcl}\n";
            for (int i = 0; i < 4; ++i) {
                std::string lhs;
                for (int m = 0; m < 4; ++m)
                    for (int j = 0; j < 4; ++j) {
                        const std::string& t = g.matrices[m].rows[i][j];
                        if (t == ".") continue;
                        lhs += (t[0] == '-' ? "- " : (lhs.empty() ? "" : "+ ")) + std::string("\\mathcal{E}^") +
                               std::to_string(m + 1) + "\\partial_" + std::to_string(m + 1) + "\\psi^{" + r.unknowns[j] +
                               "} ";
                    }
                out << "  " << lhs << "&=& \\kappa\\,\\psi^{" << r.unknowns[i] << "}" << (i < 3 ? " \\\\" : "") << '\n';
            }
            out << "\\end{array}\n";
        } else {
            nlohmann::ordered_json j;
            j["system"] = "schrodinger";
            j["unit_algebra"] = "complex";
            j["labels"] = r.unknowns;
            j["derivative"] = "lower";
            j["deriv_matrices"] = nlohmann::ordered_json::array();
            for (const auto& m : g.matrices) j["deriv_matrices"].push_back(matrix_json(m));
            std::vector<std::string> units;
            for (const Cx& u : r.units) units.push_back(cx_string(u));
            j["units"] = units;
            j["coefficients_match"] = r.coefficients_match;
            j["psi0_decoupled"] = r.psi0_decoupled;
            j["d4d4"] = cx_string(r.d4d4);
            out << j.dump(2) << '\n';
        }
    }
    return 0;
}

ErrataReport verify_file(const GoldenFile& g) {
    PhysicalParams pp = PhysicalParams::natural(Rat(1));
    if (g.has("system")) {
        std::string name = g.get("system");
        if (name == "free-lepton") return verify_system(lepton(pp, 1), g, pp);
        if (name == "free-lepton-massive") return verify_system(decouple(lepton(pp, 1)).massive, g, pp);
        if (name == "free-lepton-massless") return verify_system(decouple(lepton(pp, 1)).massless, g, pp);
        if (name == "antilepton") return verify_system(antilepton(pp, 1), g, pp);
        if (name == "antilepton-massive") return verify_system(decouple(antilepton(pp, 1)).massive, g, pp);
        if (name == "antilepton-massless") return verify_system(decouple(antilepton(pp, 1)).massless, g, pp);
        if (name == "schrodinger") {
            SchrodingerReduction r = reduce_schrodinger(lepton(pp, 1));
            std::vector<std::pair<std::string, UnitMatrix>> got;
            for (int m = 0; m < 4; ++m) got.emplace_back("d" + std::to_string(m + 1), unit_matrix(r.system[m]));
            return verify_matrices(got, g, r.unknowns);
        }
        throw shape_error("unknown system " + name);
    }
    CliffordAlgebra A = preset(g.get("algebra"));
    RegularRep rep = regular_rep(A, parse_kind(g.get("kind")));
    std::string map = g.get("map", "none");
    if (map != "none") rep = approx_rep(rep, CorrespondenceMap::preset(map));
    return verify_against_golden(block_decompose(rep, g.get("form"), g.get("basic", "21")), g);
}

Momentum parse_momentum(const std::string& s) {
    Momentum p;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw usage_error("--p needs three comma-separated components");
    for (int a = 0; a < 3; ++a) {
        try {
            std::size_t used = 0;
            p.p[a] = std::stod(parts[a], &used);
            if (used != parts[a].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw usage_error("bad momentum component '" + parts[a] + "'");
        }
    }
    return p;
}

int cmd_dispersion(const std::string& mass, const std::string& momentum, double tol, const std::string& which, int gen,
                   std::ostream& out) {
    double m = 0;
    try {
        std::size_t used = 0;
        m = std::stod(mass, &used);
        if (used != mass.size() || m < 0) throw std::invalid_argument("mass");
    } catch (const std::exception&) {
        throw usage_error("bad mass '" + mass + "'");
    }
    if (!(tol > 0)) throw usage_error("tolerance must be positive");
    Momentum p = parse_momentum(momentum);
    PhysicalParams pp = params(mass);
    LinearPDESystem s = which == "antilepton" ? antilepton(pp, gen) : lepton(pp, gen);
    DecoupledPair dp = decouple(s);
    bool ok = true;
    for (auto [name, sys, rel] : {std::tuple{"massive", &dp.massive, Relation::massive},
                                  std::tuple{"massless", &dp.massless, Relation::massless}}) {
        DispersionResult r = plane_wave_spectrum(*sys, p);
        DispersionReport rep = check_dispersion(*sys, {p}, m, rel, tol);
        out << name << ":";
        for (cd E : r.energies) out << ' ' << fmt(E);
        out << "\n  max |E^2 - " << (rel == Relation::massive ? "p^2 - m^2" : "p^2") << "| = " << std::scientific
            << std::setprecision(2) << rep.max_defect << std::defaultfloat << (rep.pass ? " ok" : " FAIL") << '\n';
        ok = ok && rep.pass;
    }
    return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Clifford-algebra representations and equation systems", "clq"};
    app.require_subcommand(1);

    int n = 0;
    std::string sig;
    auto* classify_cmd = app.add_subcommand("classify", "signs of blade squares grouped by grade");
    classify_cmd->add_option("--n", n, "number of generators")->required()->check(CLI::Range(1, 9));
    classify_cmd->add_option("--sig", sig, "generator squares, e.g. +++-")->required();

    std::string preset_name;
    auto* build_cmd = app.add_subcommand("build", "summary of a preset algebra");
    build_cmd->add_option("--preset", preset_name)->required()->check(CLI::IsMember({"c3", "c4"}));

    std::string kind = "direct", form = "real", basic = "21", algebra = "c4", emit = "golden";
    auto* rep_cmd = app.add_subcommand("rep", "regular representation");
    rep_cmd->add_option("--kind", kind)->required()->check(CLI::IsMember({"direct", "conjugate"}));
    rep_cmd->add_option("--form", form)->required()->check(CLI::IsMember({"real", "complex", "quaternion"}));
    rep_cmd->add_option("--basic", basic)->check(CLI::IsMember({"21", "13", "32"}));
    rep_cmd->add_option("--algebra", algebra)->check(CLI::IsMember({"c3", "c4"}));
    rep_cmd->add_option("--emit", emit)->check(CLI::IsMember({"golden", "json"}));

    std::string map;
    bool conjugate = false;
    std::string approx_form;
    auto* approx_cmd = app.add_subcommand("approx", "approximate representation of C4");
    approx_cmd->add_option("--map", map)->required()->check(CLI::IsMember({"r1", "r2", "r3"}));
    approx_cmd->add_flag("--conjugate", conjugate);
    approx_cmd->add_option("--form", approx_form)->check(CLI::IsMember({"real", "complex", "quaternion"}));
    approx_cmd->add_option("--emit", emit)->check(CLI::IsMember({"golden", "json"}));

    std::string golden;
    auto* verify_cmd = app.add_subcommand("verify", "compare against a fixture");
    verify_cmd->add_option("--golden", golden)->required();

    std::string eq_case, mass = "1", eq_emit = "json";
    int gen = 1;
    auto* eq_cmd = app.add_subcommand("equations", "assemble an equation system");
    eq_cmd->add_option("--case", eq_case)
        ->required()
        ->check(CLI::IsMember({"free", "dirac", "pauli", "schrodinger", "antilepton"}));
    eq_cmd->add_option("--generation", gen)->check(CLI::Range(1, 3));
    eq_cmd->add_option("--mass", mass);
    eq_cmd->add_option("--emit", eq_emit)->check(CLI::IsMember({"json", "latex", "golden"}));

    std::string disp_mass, momentum, disp_case = "free";
    double tol = 1e-10;
    int disp_gen = 1;
    auto* disp_cmd = app.add_subcommand("dispersion", "plane-wave energies of the decoupled pairs");
    disp_cmd->add_option("--mass", disp_mass)->required();
    disp_cmd->add_option("--p", momentum)->required();
    disp_cmd->add_option("--tol", tol);
    disp_cmd->add_option("--case", disp_case)->check(CLI::IsMember({"free", "antilepton"}));
    disp_cmd->add_option("--generation", disp_gen)->check(CLI::Range(1, 3));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n";
        const CLI::App* sub = nullptr;
        for (const CLI::App* s : app.get_subcommands()) sub = s;
        err << (sub ? sub->help() : app.help());
        return 2;
    }

    try {
        if (*classify_cmd) {
            out << classify(n, Signature::parse(sig)) << '\n';
        } else if (*build_cmd) {
            CliffordAlgebra A = preset(preset_name);
            out << "algebra " << A.name() << "\ngenerators " << A.signature().n() << "\nsignature " << A.signature().str()
                << "\ndimension " << A.dim() << "\nbasis " << join(A.order().labels) << "\nmetric";
            for (int i = 0; i < A.dim(); ++i) out << ' ' << (A.square(i) > 0 ? '+' : '-');
            out << "\nclassification " << classify(A.signature().n(), A.signature()) << '\n';
        } else if (*rep_cmd) {
            RegularRep rep = regular_rep(preset(algebra), parse_kind(kind));
            emit_rep(block_decompose(rep, form, basic), emit, out);
        } else if (*approx_cmd) {
            RegularRep rep = regular_rep(c4_algebra(), conjugate ? RepKind::conjugate : RepKind::direct);
            rep = approx_rep(rep, CorrespondenceMap::preset(map));
            if (approx_form.empty()) approx_form = map == "r3" ? "complex" : "quaternion";
            emit_rep(block_decompose(rep, approx_form), emit, out);
        } else if (*verify_cmd) {
            ErrataReport r = verify_file(load_golden(golden));
            out << report_text(r);
            return r.empty() ? 0 : 1;
        } else if (*eq_cmd) {
            return cmd_equations(eq_case, gen, mass, eq_emit, out);
        } else if (*disp_cmd) {
            return cmd_dispersion(disp_mass, momentum, tol, disp_case, disp_gen, out);
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const config_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace clq

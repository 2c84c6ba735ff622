#include <catch_amalgamated.hpp>

#include "clq/cli.hpp"
#include "clq/golden.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace clq;
namespace fs = std::filesystem;

namespace {

std::string data_path(const std::string& rel) { return std::string(CLQ_DATA_DIR) + "/" + rel; }

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

RegularRep computed(const GoldenFile& g) {
    CliffordAlgebra A = g.get("algebra") == "c3" ? c3_algebra() : c4_algebra();
    RegularRep r = regular_rep(A, parse_kind(g.get("kind")));
    if (g.get("map") != "none") r = approx_rep(r, CorrespondenceMap::preset(g.get("map")));
    return block_decompose(r, g.get("form"));
}

std::set<std::string> erratum_matrices(const ErrataReport& r) {
    std::set<std::string> s;
    for (const auto& e : r.errata) s.insert(e.matrix);
    return s;
}

}  // namespace

TEST_CASE("fixtures round-trip byte for byte") {
    int n = 0;
    for (const char* dir : {"golden", "approx", "systems"})
        for (const auto& e : fs::directory_iterator(data_path(dir))) {
            std::string text = slurp(e.path().string());
            INFO(e.path().string());
            CHECK(dump_golden(parse_golden(text)) == text);
            ++n;
        }
    CHECK(n == 23);
}

TEST_CASE("appendix tables match with no errata") {
    for (const char* alg : {"c3", "c4"})
        for (const char* kind : {"direct", "conjugate"})
            for (const char* form : {"real", "complex", "quaternion"}) {
                std::string name = std::string("golden/") + alg + "_" + kind + "_" + form + ".golden";
                GoldenFile g = load_golden(data_path(name));
                ErrataReport r = verify_against_golden(computed(g), g);
                INFO(name << "\n" << report_text(r));
                CHECK(r.empty());
                CHECK(r.matrices == (std::string(alg) == "c3" ? 8 : 16));
            }
}

TEST_CASE("the one printed prefactor difference is a display note") {
    GoldenFile g = load_golden(data_path("golden/c4_conjugate_quaternion.golden"));
    ErrataReport r = verify_against_golden(computed(g), g);
    REQUIRE(r.notes.size() == 1);
    CHECK(r.notes[0].find("matrix 134") == 0);
}

TEST_CASE("approximate representations against their displays") {
    auto check = [](const char* file, std::set<std::string> want) {
        GoldenFile g = load_golden(data_path(std::string("approx/") + file));
        ErrataReport r = verify_against_golden(computed(g), g);
        INFO(file << "\n" << report_text(r));
        CHECK(erratum_matrices(r) == want);
    };
    check("r1_conjugate_quaternion.golden", {});
    check("r1_direct_quaternion.golden", {"1324", "4", "21", "14", "123", "124", "314"});
    check("r2_conjugate_quaternion.golden", {"14", "34"});
    check("r2_direct_quaternion.golden", {"42", "14", "34"});
    check("r3_conjugate_complex.golden", {});
    check("r3_direct_complex.golden", {});
}

TEST_CASE("a corrupted cell gives exactly one erratum") {
    GoldenFile g = load_golden(data_path("golden/c3_conjugate_complex.golden"));
    RegularRep rep = computed(g);
    REQUIRE(verify_against_golden(rep, g).empty());
    g.matrices[4].rows[0][1] = g.matrices[4].rows[0][1] == "." ? "+i" : ".";
    ErrataReport r = verify_against_golden(rep, g);
    REQUIRE(r.errata.size() == 1);
    CHECK(r.errata[0].matrix == g.matrices[4].label);
    CHECK(r.errata[0].row == g.list("rows")[0]);
    CHECK(r.errata[0].col == g.list("rows")[1]);
}

TEST_CASE("shape mismatches are hard errors") {
    GoldenFile c3 = load_golden(data_path("golden/c3_direct_real.golden"));
    RegularRep c4 = block_decompose(regular_rep_direct(c4_algebra()), "real");
    CHECK_THROWS_AS(verify_against_golden(c4, c3), shape_error);
    GoldenFile g = c3;
    g.header[6].second = "13 32 21 0 1 2 3 123";
    CHECK_THROWS_AS(verify_against_golden(computed(c3), g), shape_error);
    g = c3;
    g.matrices[0].rows.pop_back();
    CHECK_THROWS_AS(verify_against_golden(computed(c3), g), shape_error);
    CHECK_THROWS_AS(parse_golden("algebra c3\nmatrix 0 prefactor +1\n+1 .\n"), format_error);
    CHECK_THROWS_AS(parse_golden("matrix 0\n"), format_error);
    CHECK_THROWS_AS(load_golden(data_path("missing.golden")), format_error);
}

TEST_CASE("dump and parse of computed representations") {
    for (const char* form : {"real", "complex", "quaternion"}) {
        RegularRep r = block_decompose(regular_rep_conjugate(c4_algebra()), form, std::string(form) == "real" ? "21" : "13");
        GoldenFile g = to_golden(r);
        GoldenFile back = parse_golden(dump_golden(g));
        CHECK(back == g);
        CHECK(verify_against_golden(r, back).empty());
    }
    RegularRep c3 = block_decompose(regular_rep_direct(c3_algebra()), "complex");
    std::string text = dump_golden(to_golden(c3));
    CHECK(text.find("matrix 3 prefactor +i\n") != std::string::npos);
    CHECK(text.find("matrix 0 prefactor +1\n+1 . . .\n. +1 . .\n") != std::string::npos);
}

TEST_CASE("JSON documents") {
    nlohmann::ordered_json r = rep_json(block_decompose(regular_rep_direct(c3_algebra()), "quaternion"));
    CHECK(r["unit_algebra"] == "quaternion");
    CHECK(r["labels"] == std::vector<std::string>{"0", "123"});
    CHECK(r["matrices"].size() == 8);
    CHECK(r["matrices"][0].contains("prefactor"));
    CHECK(r["matrices"][0].contains("entries"));
    PhysicalParams pp = PhysicalParams::natural(Rat(1));
    nlohmann::ordered_json s = system_json(assemble_free_lepton(pp), pauli_units(), pp);
    CHECK(s["deriv_matrices"].size() == 4);
    CHECK(s["mass_matrix"]["entries"][0][0] == "+1");
    CHECK(s["coupling"] == "mc/2hbar");
}

TEST_CASE("LaTeX emission") {
    PhysicalParams pp = PhysicalParams::natural(Rat(1));
    std::string t = system_latex(assemble_free_lepton(pp), pauli_units(), pp);
    CHECK(t.find("\\begin{array}") == 0);
    CHECK(t.find("i\\,\\partial_4\\Psi^{124}") != std::string::npos);
    CHECK(t.find("\\frac{m c}{2\\hbar} ( \\Psi^{0} + \\Psi^{34} )") != std::string::npos);
}

TEST_CASE("cli classify and build") {
    Run r = cli({"classify", "--n", "4", "--sig", "+++-"});
    CHECK(r.code == 0);
    CHECK(r.out == "(+, +++-, ---+++, -+++, -)\n");
    r = cli({"build", "--preset", "c3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("dimension 8\n") != std::string::npos);
    CHECK(r.out.find("metric - - - + + + + -\n") != std::string::npos);
}

TEST_CASE("cli usage errors exit 2 with usage on stderr") {
    for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"build", "--preset", "c5"},
             {"build", "--preset", "c4", "--bogus"},
             {"classify", "--n", "3", "--sig", "++x"},
             {"classify", "--n", "3", "--sig", "++"},
             {"rep", "--kind", "direct"},
             {"equations", "--case", "dirac", "--generation", "2"},
             {"equations", "--case", "free", "--mass", "abc"},
             {"dispersion", "--mass", "1", "--p", "0,0"},
             {"dispersion", "--mass", "1", "--p", "0,0,0", "--tol", "0"},
             {"verify", "--golden", data_path("missing.golden")}}) {
        Run r = cli(args);
        INFO(r.err);
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
    CHECK(cli({"build", "--bogus"}).err.find("--preset") != std::string::npos);
}

TEST_CASE("cli verify exit codes") {
    CHECK(cli({"verify", "--golden", data_path("golden/c4_conjugate_quaternion.golden")}).code == 0);
    CHECK(cli({"verify", "--golden", data_path("systems/lepton_quaternion.golden")}).code == 0);
    CHECK(cli({"verify", "--golden", data_path("systems/schrodinger.golden")}).code == 0);
    Run r = cli({"verify", "--golden", data_path("systems/lepton_massless_pair.golden")});
    CHECK(r.code == 1);
    CHECK(r.out.find("errata: 6") != std::string::npos);
}

TEST_CASE("cli rep, approx and equations") {
    Run r = cli({"rep", "--kind", "direct", "--form", "complex", "--algebra", "c3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("matrix 3 prefactor +i") != std::string::npos);
    CHECK(cli({"rep", "--kind", "conjugate", "--form", "quaternion", "--basic", "32"}).out.find("basic 32") !=
          std::string::npos);
    CHECK(cli({"approx", "--map", "r1", "--conjugate"}).out.find("rows 0 123") != std::string::npos);
    CHECK(cli({"approx", "--map", "r3", "--emit", "json"}).out.find("\"unit_algebra\": \"complex\"") !=
          std::string::npos);
    for (const char* c : {"free", "dirac", "pauli", "schrodinger", "antilepton"})
        for (const char* emit : {"json", "latex"}) {
            Run e = cli({"equations", "--case", c, "--mass", "1", "--emit", emit});
            INFO(c << " " << emit << e.err);
            CHECK(e.code == 0);
            CHECK_FALSE(e.out.empty());
        }
    Run g2 = cli({"equations", "--case", "free", "--generation", "2", "--emit", "json"});
    CHECK(g2.out.find("\"generation\": 2") != std::string::npos);
    CHECK(cli({"equations", "--case", "pauli"}).out.find("\"wave_operator\": true") != std::string::npos);
}

TEST_CASE("cli dispersion") {
    Run r = cli({"dispersion", "--mass", "1", "--p", "0,0,0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("massive: -1 -1 1 1\n") == 0);
    CHECK(r.out.find("massless: 0 0 0 0\n") != std::string::npos);
    CHECK(cli({"dispersion", "--mass", "2", "--p", "0.3,-1.2,2.0", "--generation", "3"}).code == 0);
    CHECK(cli({"dispersion", "--mass", "1", "--p", "0,0,0", "--case", "antilepton"}).code == 1);
}

TEST_CASE("cli output is deterministic") {
    std::vector<std::string> args{"equations", "--case", "antilepton", "--generation", "3", "--emit", "json"};
    CHECK(cli(args).out == cli(args).out);
    std::vector<std::string> d{"dispersion", "--mass", "1", "--p", "0.3,-1.2,2.0"};
    CHECK(cli(d).out == cli(d).out);
}

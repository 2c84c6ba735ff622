#include <catch_amalgamated.hpp>

#include "clq/dispersion.hpp"

using namespace clq;

namespace {

const std::vector<Momentum> grid = {{{0, 0, 0}}, {{1, 0, 0}}, {{0.3, -1.2, 2.0}}};

DecoupledPair pairs(int m, int gen = 1) {
    LinearPDESystem s = assemble_free_lepton(PhysicalParams::natural(Rat(m)));
    return decouple(gen == 1 ? s : generation_permute(s, gen));
}

}  // namespace

TEST_CASE("lepton pairs satisfy the relativistic dispersion relations") {
    for (int m : {0, 1, 2}) {
        DecoupledPair dp = pairs(m);
        DispersionReport a = check_dispersion(dp.massive, grid, m, Relation::massive);
        DispersionReport b = check_dispersion(dp.massless, grid, m, Relation::massless);
        INFO("m = " << m << " defects " << a.max_defect << " " << b.max_defect);
        CHECK(a.pass);
        CHECK(b.pass);
        CHECK(a.max_defect < 1e-10);
        CHECK(b.max_defect < 1e-10);
    }
}

TEST_CASE("rest energies") {
    DispersionResult r = plane_wave_spectrum(pairs(1).massive, {{0, 0, 0}});
    CHECK(r.complex_form);
    REQUIRE(r.energies.size() == 4);
    CHECK(std::abs(r.energies[0] - cd(-1)) < 1e-12);
    CHECK(std::abs(r.energies[3] - cd(1)) < 1e-12);
    CHECK(r.residual < 1e-12);
    // the real form doubles every eigenvalue
    DispersionResult f = plane_wave_spectrum(pairs(1).massive, {{0, 0, 0}}, true);
    CHECK_FALSE(f.complex_form);
    CHECK(f.energies.size() == 8);
}

TEST_CASE("generations share the generation-1 spectrum") {
    for (int m : {0, 1, 2})
        for (int gen : {2, 3}) {
            DecoupledPair a = pairs(m), b = pairs(m, gen);
            for (const Momentum& p : grid) {
                CHECK(spectrum_distance(plane_wave_spectrum(a.massive, p), plane_wave_spectrum(b.massive, p)) < 1e-12);
                CHECK(spectrum_distance(plane_wave_spectrum(a.massless, p), plane_wave_spectrum(b.massless, p)) < 1e-12);
            }
        }
}

TEST_CASE("antilepton massive branch is tachyonic") {
    // expected physics of the assembled antilepton system, not a tolerance issue
    DecoupledPair dp = decouple(antilepton_assemble(PhysicalParams::natural(Rat(1))));
    DispersionResult r = plane_wave_spectrum(dp.massive, {{0, 0, 0}});
    for (cd E : r.energies) CHECK(std::abs(E * E + 1.0) < 1e-12);
    Momentum p{{0.3, -1.2, 2.0}};
    for (cd E : plane_wave_spectrum(dp.massive, p).energies) CHECK(std::abs(E * E - (p.norm2() - 1.0)) < 1e-10);
    CHECK(check_dispersion(dp.massless, grid, 1, Relation::massless).pass);
    CHECK_FALSE(check_dispersion(dp.massive, grid, 1, Relation::massive).pass);
}

TEST_CASE("eigenvectors satisfy the quantum postulates") {
    PhysicalParams pp = PhysicalParams::natural(Rat(1));
    LinearPDESystem s = assemble_free_lepton(pp);
    for (const Momentum& p : grid) {
        DispersionResult r = plane_wave_spectrum(s, p, true);
        for (std::size_t i = 0; i < r.energies.size(); ++i) {
            Eigen::VectorXcd u = r.vectors[i] / r.vectors[i].norm();
            CHECK(residual_of_postulate(s, p, r.energies[i], u, ImpulseField::free_lepton(), pp) < 1e-10);
            // a perturbed energy is detected
            CHECK(residual_of_postulate(s, p, r.energies[i] + 1e-3, u, ImpulseField::free_lepton(), pp) > 1e-5);
        }
    }
}

TEST_CASE("dispersion argument checks") {
    DecoupledPair dp = pairs(1);
    CHECK_THROWS_AS(check_dispersion(dp.massive, grid, 1, Relation::massive, 0), config_error);
    LinearPDESystem s = dp.massive;
    s.deriv[3] = RatMat(8, 8);
    CHECK_THROWS_AS(plane_wave_spectrum(s, {{0, 0, 0}}), std::domain_error);
}

// Plane-wave spectra of assembled systems.
//
// Convention: Psi = u exp(i(p.x - E x4)), so d_a -> i p_a and d_4 -> -i E, and
// the system becomes E A4 u = (sum_a p_a A_a + i K) u with K the full mass
// coefficient. Natural units throughout.
#pragma once

#include "clq/equations.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace clq {

using cd = std::complex<double>;

struct Momentum {
    std::array<double, 3> p{0, 0, 0};
    double norm2() const { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]; }
};

struct DispersionResult {
    std::vector<cd> energies;            // sorted by real, then imaginary part
    std::vector<Eigen::VectorXcd> vectors;
    double residual = 0;                 // max |(E A4 - R) u| / |u|
    double max_imag = 0;
    bool complex_form = false;
};

namespace detail {

inline Eigen::MatrixXcd to_eigen(const RatMat& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = boost::rational_cast<double>(m(i, j));
    return e;
}
inline Eigen::MatrixXcd to_eigen(const CxMat& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            e(i, j) = cd(boost::rational_cast<double>(m(i, j).re), boost::rational_cast<double>(m(i, j).im));
    return e;
}

// Consecutive pairs of unknowns as complex components, if every block allows it.
inline bool complex_coefficients(const LinearPDESystem& s, std::array<Eigen::MatrixXcd, 4>& d, Eigen::MatrixXcd& k) {
    if (s.dim() % 2) return false;
    Grouping g;
    for (int i = 0; i < s.dim() / 2; ++i) g.groups.push_back({{1, 2 * i}, {1, 2 * i + 1}});
    g.names.resize(g.groups.size());
    try {
        for (int m = 0; m < 4; ++m) d[m] = to_eigen(complex_matrix(s.deriv[m], g));
        k = to_eigen(complex_matrix(s.full_mass(), g));
    } catch (const decomposition_error&) {
        return false;
    }
    return true;
}

}  // namespace detail

inline DispersionResult plane_wave_spectrum(const LinearPDESystem& s, const Momentum& p, bool force_real = false) {
    std::array<Eigen::MatrixXcd, 4> d;
    Eigen::MatrixXcd K;
    DispersionResult out;
    out.complex_form = !force_real && detail::complex_coefficients(s, d, K);
    if (!out.complex_form) {
        for (int m = 0; m < 4; ++m) d[m] = detail::to_eigen(s.deriv[m]);
        K = detail::to_eigen(s.full_mass());
    }
    Eigen::MatrixXcd R = cd(0, 1) * K;
    for (int a = 0; a < 3; ++a) R += p.p[a] * d[a];
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(d[3]);
    if (!lu.isInvertible()) throw std::domain_error("time derivative coefficient is singular");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(lu.solve(R));
    if (es.info() != Eigen::Success) throw std::runtime_error("eigen-solve did not converge");
    std::vector<int> idx(es.eigenvalues().size());
    for (int i = 0; i < int(idx.size()); ++i) idx[i] = i;
    auto ev = es.eigenvalues();
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (std::abs(ev[a].real() - ev[b].real()) > 1e-9) return ev[a].real() < ev[b].real();
        return ev[a].imag() < ev[b].imag();
    });
    for (int i : idx) {
        cd E = ev[i];
        Eigen::VectorXcd u = es.eigenvectors().col(i);
        double res = ((E * d[3] - R) * u).cwiseAbs().maxCoeff() / u.cwiseAbs().maxCoeff();
        out.residual = std::max(out.residual, res);
        out.max_imag = std::max(out.max_imag, std::abs(E.imag()));
        out.energies.push_back(E);
        out.vectors.push_back(u);
    }
    return out;
}

enum class Relation { massive, massless };

struct DispersionViolation {
    Momentum p;
    cd E;
    double defect = 0;
};

struct DispersionReport {
    bool pass = true;
    double max_defect = 0;
    std::vector<DispersionViolation> violations;
};

// |E^2 - p^2 - m^2| (massive) or |E^2 - p^2| (massless) below tol everywhere.
inline DispersionReport check_dispersion(const LinearPDESystem& s, const std::vector<Momentum>& grid, double m,
                                         Relation rel, double tol = 1e-10) {
    if (!(tol > 0)) throw config_error("tolerance must be positive");
    DispersionReport rep;
    for (const Momentum& p : grid) {
        DispersionResult r = plane_wave_spectrum(s, p);
        double target = p.norm2() + (rel == Relation::massive ? m * m : 0.0);
        for (cd E : r.energies) {
            double defect = std::abs(E * E - target);
            rep.max_defect = std::max(rep.max_defect, defect);
            if (defect >= tol) {
                rep.pass = false;
                rep.violations.push_back({p, E, defect});
            }
        }
    }
    return rep;
}

// Max |difference| of two sorted spectra; infinity on a size mismatch.
inline double spectrum_distance(const DispersionResult& a, const DispersionResult& b) {
    if (a.energies.size() != b.energies.size()) return INFINITY;
    double d = 0;
    for (std::size_t i = 0; i < a.energies.size(); ++i) d = std::max(d, std::abs(a.energies[i] - b.energies[i]));
    return d;
}

// Residual of the postulate relation on the plane wave: left side from the
// system's derivative coefficients, right side from the impulse field through
// the postulates and the conjugate contraction. u is in real-form coordinates.
inline double residual_of_postulate(const LinearPDESystem& s, const Momentum& p, cd E, const Eigen::VectorXcd& u,
                                    const ImpulseField& P, const PhysicalParams& pp,
                                    const CliffordAlgebra& A = c4_algebra()) {
    if (s.unknowns != A.order().labels) throw shape_error("postulate residual needs the full basis");
    int n = A.dim();
    Eigen::VectorXcd lhs = Eigen::VectorXcd::Zero(n);
    std::array<cd, 4> dfac{cd(0, p.p[0]), cd(0, p.p[1]), cd(0, p.p[2]), cd(0, -1) * E};
    for (int m = 0; m < 4; ++m) lhs += dfac[m] * (detail::to_eigen(s.deriv[m]) * u);
    std::vector<cd> psi(u.data(), u.data() + n);
    auto rhs = quantum_postulate_rhs<cd>(psi, P, A, pp);
    RegularRep conj = regular_rep_conjugate(A);
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(n);
    for (const auto& [M, v] : rhs) {
        Eigen::VectorXcd dv = Eigen::Map<const Eigen::VectorXcd>(v.data(), n);
        r += detail::to_eigen(to_rat(conj[M])) * dv;
    }
    return (lhs - r).cwiseAbs().maxCoeff();
}

}  // namespace clq

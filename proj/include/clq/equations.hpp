// First-order equation systems assembled from structure constants and
// generalized impulses, with their decouplings and reductions.
#pragma once

#include "clq/algebra.hpp"
#include "clq/representations.hpp"

#include <array>
#include <map>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

namespace clq {

struct shape_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PhysicalParams {
    Rat m{0}, hbar{1}, c{1};

    PhysicalParams() = default;
    PhysicalParams(Rat mass, Rat h, Rat speed) : m(mass), hbar(h), c(speed) {
        if (m < Rat(0)) throw config_error("mass must be non-negative");
        if (hbar <= Rat(0) || c <= Rat(0)) throw config_error("hbar and c must be positive");
    }
    static PhysicalParams natural(Rat mass) { return {mass, Rat(1), Rat(1)}; }
    Rat half_coupling() const { return m * c / (Rat(2) * hbar); }
    Rat mc() const { return m * c; }
};

// p^R_M as multiples of m*c, keyed by (upper R, lower M).
struct ImpulseField {
    std::map<std::pair<std::string, std::string>, Rat> comp;

    static ImpulseField zero() { return {}; }
    static ImpulseField free_lepton() { return {{{{"0", "0"}, Rat(1, 2)}, {{"34", "0"}, Rat(1, 2)}}}; }
    // 34 carried by the generation permutation of the generators
    static ImpulseField generation(int gen, const LabelMap& labels) {
        ImpulseField p{{{{"0", "0"}, Rat(1, 2)}}};
        auto [s, i] = permute_label("34", gen, labels);
        p.comp[{labels.label(i), "0"}] = Rat(s, 2);
        return p;
    }
    static ImpulseField antilepton() { return {{{{"1324", "1324"}, Rat(1, 2)}, {{"0", "123"}, Rat(1, 2)}}}; }
    bool empty() const { return comp.empty(); }
};

// A^m d_m Psi = coupling * mass * Psi, all coefficients in real form.
// Rows are equations, columns unknowns.
struct LinearPDESystem {
    std::string name;
    std::string family = "lepton";          // lepton | antilepton | reduced
    std::vector<std::string> unknowns;
    std::vector<std::string> equations;
    std::array<RatMat, 4> deriv;            // coefficient of d_1 .. d_4
    RatMat mass;                            // pattern, scaled by coupling
    Rat coupling{0};
    std::array<int, 4> raise{1, 1, 1, 1};   // d^m = raise[m] d_m; non-unit only for upper display
    bool upper = false;                     // display with raised derivatives
    int generation = 1;
    std::string form = "real";              // display form: real | complex | quaternion
    Grouping grouping;                      // display blocks over unknowns and equations
    std::vector<std::string> components;    // display names of the blocks

    int dim() const { return int(unknowns.size()); }
    RatMat full_mass() const { return coupling * mass; }
    // coefficient of d^m in the displayed orientation
    RatMat upper_deriv(int m) const { return Rat(raise[m - 1]) * deriv[m - 1]; }
};

inline bool same_coefficients(const LinearPDESystem& a, const LinearPDESystem& b) {
    if (a.dim() != b.dim()) return false;
    for (int m = 0; m < 4; ++m)
        if (!(a.deriv[m] == b.deriv[m])) return false;
    return a.full_mass() == b.full_mass();
}

namespace detail {

inline Grouping display_grouping(const std::vector<std::string>& basis, const std::string& form,
                                 const std::string& basic) {
    if (form == "real") return make_grouping(basis, 1);
    if (form == "complex") return make_grouping(basis, 2, basic);
    if (form == "quaternion") return make_grouping(basis, 4, basic);
    throw config_error("unknown representation form " + form);
}

inline void set_form(LinearPDESystem& s, const std::string& form) {
    static const char* basics[3] = {"21", "13", "32"};
    s.form = form;
    s.grouping = display_grouping(s.unknowns, form, basics[s.generation - 1]);
    s.components = s.grouping.names;
}

template <class T>
T scalar_from(const Rat& r) {
    if constexpr (std::is_same_v<T, Rat>)
        return r;
    else
        return T(boost::rational_cast<double>(r));
}

inline std::vector<RatMat> conjugate_mats(const CliffordAlgebra& A) {
    RegularRep r = regular_rep_conjugate(A);
    std::vector<RatMat> out;
    for (const auto& m : r.real) out.push_back(to_rat(m));
    return out;
}

}  // namespace detail

// d_M psi^I = (1/S0) C^I_{LR} p^R_M psi^L for every direction M with impulse.
template <class T>
std::map<std::string, std::vector<T>> quantum_postulate_rhs(const std::vector<T>& psi, const ImpulseField& P,
                                                            const CliffordAlgebra& A, const PhysicalParams& pp) {
    std::map<std::string, std::vector<T>> out;
    for (const auto& [key, coef] : P.comp) {
        const auto& [R, M] = key;
        int r = A.index(R);
        auto& d = out.try_emplace(M, std::vector<T>(A.dim(), T(0))).first->second;
        T tf = detail::scalar_from<T>(coef * pp.mc() / pp.hbar);
        for (int l = 0; l < A.dim(); ++l) {
            Term t = A.mul(l, r);
            d[t.index] += T(t.sign) * tf * psi[l];
        }
    }
    return out;
}

// Contracting with W^{MK}_I = g_M C^{MK}_I, the conjugate representation
// entry (K, I) of E^M. Directions 1..4 give the derivative coefficients; all
// impulse directions feed the mass side.
inline LinearPDESystem assemble_dirac_form(const ImpulseField& P, const CliffordAlgebra& A, const PhysicalParams& pp) {
    auto W = detail::conjugate_mats(A);
    int n = A.dim();
    LinearPDESystem s;
    s.name = "dirac-form";
    s.unknowns = A.order().labels;
    s.equations = s.unknowns;
    for (int m = 1; m <= 4; ++m) s.deriv[m - 1] = W.at(A.index(std::to_string(m)));
    s.mass = RatMat(n, n);
    for (const auto& [key, coef] : P.comp) {
        const auto& [R, M] = key;
        int r = A.index(R);
        const RatMat& w = W.at(A.index(M));
        // C^I_{LR} p^R_M, pattern normalized to mc/2hbar
        for (int l = 0; l < n; ++l) {
            Term t = A.mul(l, r);
            for (int k = 0; k < n; ++k)
                if (!(w(k, t.index) == Rat(0))) s.mass(k, l) += Rat(2) * coef * Rat(t.sign) * w(k, t.index);
        }
    }
    s.coupling = pp.half_coupling();
    s.grouping = make_grouping(s.unknowns, 1);
    s.components = s.unknowns;
    return s;
}

inline LinearPDESystem assemble_free_lepton(const PhysicalParams& pp, const std::string& form = "quaternion") {
    LinearPDESystem s = assemble_dirac_form(ImpulseField::free_lepton(), c4_algebra(), pp);
    s.name = "free-lepton";
    detail::set_form(s, form);
    return s;
}

// dS^-1: C^{MK}_I d_M psi^I = C^{MK}_I C^I_{LP} C^P_{QR} p^R_M (S^-1)^Q psi^L
inline LinearPDESystem arbitrary_action_assemble(const MultiVector& S, const ImpulseField& P, const CliffordAlgebra& A,
                                                 const PhysicalParams& pp) {
    MultiVector Sinv = inverse(S, A);
    auto W = detail::conjugate_mats(A);
    int n = A.dim();
    LinearPDESystem s;
    s.name = "arbitrary-action";
    s.unknowns = A.order().labels;
    s.equations = s.unknowns;
    for (int m = 1; m <= 4; ++m) s.deriv[m - 1] = W.at(A.index(std::to_string(m)));
    s.mass = RatMat(n, n);
    for (const auto& [key, coef] : P.comp) {
        const auto& [R, M] = key;
        int r = A.index(R);
        const RatMat& w = W.at(A.index(M));
        for (int q = 0; q < n; ++q) {
            if (Sinv[q] == Rat(0)) continue;
            Term qr = A.mul(q, r);  // C^P_{QR}
            for (int l = 0; l < n; ++l) {
                Term lp = A.mul(l, qr.index);  // C^I_{LP}
                Rat f = Rat(2) * pp.hbar * coef * Sinv[q] * Rat(qr.sign * lp.sign);
                for (int k = 0; k < n; ++k)
                    if (!(w(k, lp.index) == Rat(0))) s.mass(k, l) += f * w(k, lp.index);
            }
        }
    }
    s.coupling = pp.half_coupling();
    s.grouping = make_grouping(s.unknowns, 1);
    s.components = s.unknowns;
    return s;
}

// d^m psi_I C^I_{Km} = (mc/2hbar)(C^{1324 L}_I C^I_{K 1324} + C^{123 L}_K) psi_L,
// returned with every equation negated to match the displayed orientation.
inline LinearPDESystem antilepton_assemble(const PhysicalParams& pp, const std::string& form = "quaternion") {
    CliffordAlgebra A = c4_algebra();
    int n = A.dim();
    LinearPDESystem s;
    s.name = "antilepton";
    s.family = "antilepton";
    s.unknowns = A.order().labels;
    s.equations = s.unknowns;
    s.upper = true;
    for (int m = 1; m <= 4; ++m) {
        int im = A.index(std::to_string(m));
        s.raise[m - 1] = A.square(im);
        RatMat up(n, n);
        for (int k = 0; k < n; ++k) {
            Term t = A.mul(k, im);  // C^I_{Km}
            up(k, t.index) = Rat(-t.sign);
        }
        s.deriv[m - 1] = Rat(s.raise[m - 1]) * up;
    }
    int i1324 = A.index("1324"), i123 = A.index("123");
    s.mass = RatMat(n, n);
    for (int k = 0; k < n; ++k) {
        Term kt = A.mul(k, i1324);  // C^I_{K 1324}, I = kt.index
        for (int l = 0; l < n; ++l) {
            Term a = A.mul(i1324, l);  // C^{1324 L}_I
            if (a.index == kt.index) s.mass(k, l) -= Rat(a.sign * kt.sign);
            Term b = A.mul(i123, l);  // C^{123 L}_K
            if (b.index == k) s.mass(k, l) -= Rat(b.sign);
        }
    }
    s.coupling = pp.half_coupling();
    detail::set_form(s, form);
    return s;
}

// Signed permutation of basis labels induced by the generation permutation.
inline RatMat generation_matrix(const LabelMap& labels, int gen) {
    int n = int(labels.size());
    RatMat P(n, n);
    for (int i = 0; i < n; ++i) {
        auto [s, j] = permute_label(labels.label(i), gen, labels);
        P(j, i) = Rat(s);
    }
    return P;
}

inline LinearPDESystem generation_permute(const LinearPDESystem& sys, int gen) {
    if (gen < 1 || gen > 3) throw config_error("generation must be 1, 2 or 3");
    LabelMap lm(sys.unknowns);
    if (sys.unknowns != c4_algebra().order().labels) throw shape_error("generation permutation needs the full basis");
    RatMat P = generation_matrix(lm, gen), Pt = P.transpose();
    LinearPDESystem out = sys;
    for (int m = 1; m <= 4; ++m) out.deriv[permute_generator(m, gen) - 1] = P * sys.deriv[m - 1] * Pt;
    out.mass = P * sys.mass * Pt;
    out.generation = (sys.generation - 1 + gen - 1) % 3 + 1;
    detail::set_form(out, sys.form);
    return out;
}

// ---------- decoupling ----------

struct DecoupledPair {
    LinearPDESystem massive, massless;
    RatMat rows, vars;  // block combinations, 4x4 over the quaternion components
};

namespace detail {

inline RatMat kron_identity(const RatMat& a, int b) {
    RatMat m(a.rows() * b, a.cols() * b);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b; ++k) m(i * b + k, j * b + k) = a(i, j);
    return m;
}

inline RatMat small(std::initializer_list<std::initializer_list<int>> rows) {
    RatMat m(int(rows.size()), int(rows.begin()->size()));
    int i = 0;
    for (auto r : rows) {
        int j = 0;
        for (int x : r) m(i, j++) = Rat(x);
        ++i;
    }
    return m;
}

inline LinearPDESystem sub_system(const std::array<RatMat, 4>& d, const RatMat& mass, int off, const LinearPDESystem& src,
                                  std::vector<std::string> comps, std::vector<std::string> eqs, std::string name) {
    LinearPDESystem s;
    s.name = std::move(name);
    s.family = src.family;
    s.raise = src.raise;
    s.upper = src.upper;
    s.generation = src.generation;
    s.coupling = Rat(2) * src.coupling;
    for (int m = 0; m < 4; ++m) s.deriv[m] = d[m].block(off, off, 8, 8);
    s.mass = mass.block(off, off, 8, 8);
    for (const auto& c : comps)
        for (int j = 0; j < 4; ++j) s.unknowns.push_back(c + "." + std::to_string(j));
    for (const auto& e : eqs)
        for (int j = 0; j < 4; ++j) s.equations.push_back(e + "." + std::to_string(j));
    s.form = "quaternion";
    for (int g = 0; g < 2; ++g) {
        std::vector<SignedIndex> grp;
        for (int j = 0; j < 4; ++j) grp.push_back({1, g * 4 + j});
        s.grouping.groups.push_back(grp);
        s.grouping.names.push_back(comps[g]);
    }
    s.components = comps;
    return s;
}

}  // namespace detail

// Massive and massless pairs by block row sums/differences and the matching
// change of unknowns; off-diagonal coupling means the input is not of that shape.
inline DecoupledPair decouple(const LinearPDESystem& sys) {
    if (sys.dim() != 16) throw shape_error("decoupling needs the 16-component system");
    static const char* basics[3] = {"21", "13", "32"};
    Grouping g = make_grouping(sys.unknowns, 4, basics[sys.generation - 1]);
    RatMat L, T;
    std::vector<std::string> vars, eqs;
    if (sys.family == "lepton") {
        // phi1 = P0 + P34, phi2 = P123 + P124, chi1 = P0 - P34, chi2 = P123 - P124
        T = detail::small({{1, 1, 0, 0}, {0, 0, 1, 1}, {1, -1, 0, 0}, {0, 0, 1, -1}});
        L = detail::small({{1, 1, 0, 0}, {0, 0, 1, 1}, {-1, 1, 0, 0}, {0, 0, -1, 1}});
    } else if (sys.family == "antilepton") {
        // phi1 = P123 - P0, phi2 = P124 - P34, chi = the sums
        T = detail::small({{-1, 0, 1, 0}, {0, -1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}});
        L = detail::small({{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, -1, 0}, {0, 1, 0, -1}});
    } else {
        throw shape_error("no decoupling plan for " + sys.family);
    }
    RatMat Lb = detail::kron_identity(L, 4), Tinv = detail::kron_identity(inverse(T), 4);
    std::array<RatMat, 4> d;
    for (int m = 0; m < 4; ++m) d[m] = Lb * regroup(sys.deriv[m], g) * Tinv;
    RatMat mass = Rat(1, 2) * (Lb * regroup(sys.mass, g) * Tinv);
    auto check = [](const RatMat& m, const char* what) {
        if (!m.block(0, 8, 8, 8).is_zero() || !m.block(8, 0, 8, 8).is_zero())
            throw shape_error(std::string("pairs stay coupled through ") + what);
    };
    for (int m = 0; m < 4; ++m) check(d[m], "a derivative");
    check(mass, "the mass matrix");
    if (!mass.block(8, 8, 8, 8).is_zero()) throw shape_error("massless pair has mass terms");
    DecoupledPair out;
    out.massive = detail::sub_system(d, mass, 0, sys, {"phi1", "phi2"}, {"sum1", "sum2"}, sys.name + "-massive");
    out.massless = detail::sub_system(d, mass, 8, sys, {"chi1", "chi2"}, {"diff1", "diff2"}, sys.name + "-massless");
    out.rows = L;
    out.vars = T;
    return out;
}

// ---------- reductions ----------

struct DiracReduction {
    LinearPDESystem system;  // over the kept C3 basis, unknowns (Psi0, Psi123) blocks
    GammaSet gammas;
    bool matches_massive_pair = false;
};

inline RegularRep first_approx_conjugate() {
    return approx_rep(regular_rep_conjugate(c4_algebra()), CorrespondenceMap::r1());
}

inline DiracReduction reduce_dirac(const LinearPDESystem& sys) {
    DecoupledPair dp = decouple(sys);
    RegularRep r1 = first_approx_conjugate();
    DiracReduction out;
    LinearPDESystem& s = out.system;
    s.name = "dirac";
    s.family = "reduced";
    s.unknowns = r1.basis;
    s.equations = r1.basis;
    for (int m = 1; m <= 4; ++m) s.deriv[m - 1] = to_rat(r1[std::to_string(m)]);
    s.mass = RatMat::identity(8);
    s.coupling = dp.massive.coupling;
    s.form = "quaternion";
    s.grouping = make_grouping(s.unknowns, 4);
    s.components = s.grouping.names;
    bool ok = dp.massive.mass == regroup(s.mass, s.grouping) && dp.massive.coupling == s.coupling;
    for (int m = 0; m < 4; ++m) ok = ok && dp.massive.deriv[m] == regroup(s.deriv[m], s.grouping);
    out.matches_massive_pair = ok;
    out.gammas = gamma_set(r1);
    return out;
}

struct PauliReduction {
    LinearPDESystem pair;                    // massive pair
    std::array<RatMat, 4> P, Q;              // first-order halves, 4x4 real
    std::array<std::array<RatMat, 4>, 4> second;  // coefficient of d_m d_n (m <= n) in P o Q
    std::array<RatMat, 4> r2_images;         // R~2 of E^1..E^4
    bool matches_r2 = false;
    bool wave_operator = false;              // (-d4^2 + lap) * identity, no cross terms
};

namespace detail {

template <class M>
void compose_second(const std::array<M, 4>& P, const std::array<M, 4>& Q, std::array<std::array<M, 4>, 4>& out) {
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            if (n < m) { out[m][n] = M(); continue; }
            out[m][n] = m == n ? P[m] * Q[m] : P[m] * Q[n] + P[n] * Q[m];
        }
}

}  // namespace detail

inline PauliReduction reduce_pauli(const LinearPDESystem& sys) {
    PauliReduction out;
    out.pair = decouple(sys).massive;
    RegularRep r2 = approx_rep(regular_rep_conjugate(c4_algebra()), CorrespondenceMap::r2());
    out.matches_r2 = true;
    for (int m = 0; m < 4; ++m) {
        out.P[m] = out.pair.deriv[m].block(0, 4, 4, 4);
        out.Q[m] = out.pair.deriv[m].block(4, 0, 4, 4);
        out.r2_images[m] = to_rat(r2[std::to_string(m + 1)]);
        // P = E^4 d4 + E^a da, Q = E^4 d4 - E^a da
        RatMat sgn = m == 3 ? out.r2_images[m] : -out.r2_images[m];
        out.matches_r2 = out.matches_r2 && out.P[m] == out.r2_images[m] && out.Q[m] == sgn;
    }
    detail::compose_second(out.P, out.Q, out.second);
    RatMat id = RatMat::identity(4);
    bool ok = true;
    for (int m = 0; m < 4; ++m)
        for (int n = m; n < 4; ++n) {
            RatMat want = m != n ? RatMat(4, 4) : (m == 3 ? -id : id);
            ok = ok && out.second[m][n] == want;
        }
    out.wave_operator = ok;
    return out;
}

struct SchrodingerReduction {
    std::array<CxMat, 4> system;       // complex 4x4 coefficients of d_1..d_4
    std::vector<std::string> unknowns; // psi13, psi0, psi2, psi123
    std::array<Cx, 4> units;           // R~3 images of E^1..E^4
    bool coefficients_match = false;   // every coefficient is 0 or +-units[m]
    std::array<std::array<Cx, 4>, 4> second{};  // d_m d_n coefficient on the psi0 row of P o Q
    bool psi0_decoupled = false;       // no second-order coupling to psi13
    std::array<int, 4> pattern{};      // second[m][m] / (units[m]^2), order m = 4,1,2,3
    Cx d4d4;
};

inline SchrodingerReduction reduce_schrodinger(const LinearPDESystem& sys) {
    SchrodingerReduction out;
    LinearPDESystem pair = decouple(sys).massive;
    Grouping pairs;
    for (int g = 0; g < 4; ++g) pairs.groups.push_back({{1, 2 * g}, {1, 2 * g + 1}});
    LinearPDESystem dr = reduce_dirac(sys).system;
    pairs.names = make_grouping(dr.unknowns, 2).names;
    out.unknowns = pairs.names;
    RegularRep r3 = approx_rep(regular_rep_conjugate(c4_algebra()), CorrespondenceMap::r3());
    Grouping one = make_grouping(r3.basis, 2);
    out.coefficients_match = true;
    for (int m = 0; m < 4; ++m) {
        out.system[m] = complex_matrix(pair.deriv[m], pairs);
        out.units[m] = complex_matrix(r3[std::to_string(m + 1)], one)(0, 0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Cx z = out.system[m](i, j);
                if (!(z.is_zero() || z == out.units[m] || z == -out.units[m])) out.coefficients_match = false;
            }
    }
    std::array<CxMat, 4> P, Q;
    for (int m = 0; m < 4; ++m) {
        P[m] = out.system[m].block(0, 2, 2, 2);
        Q[m] = out.system[m].block(2, 0, 2, 2);
    }
    std::array<std::array<CxMat, 4>, 4> sec;
    detail::compose_second(P, Q, sec);
    out.psi0_decoupled = true;
    for (int m = 0; m < 4; ++m)
        for (int n = m; n < 4; ++n) {
            out.second[m][n] = sec[m][n](1, 1);
            if (!sec[m][n](1, 0).is_zero()) out.psi0_decoupled = false;
        }
    const int order[4] = {3, 0, 1, 2};
    for (int k = 0; k < 4; ++k) {
        int m = order[k];
        Cx r = out.second[m][m] / (out.units[m] * out.units[m]);
        out.pattern[k] = r == Cx(1) ? 1 : r == Cx(-1) ? -1 : 0;
    }
    out.d4d4 = out.second[3][3];
    return out;
}

}  // namespace clq

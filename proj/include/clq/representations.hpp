// Regular representations (direct and conjugate), block forms over unit
// algebras, approximate foldings and the Dirac/Pauli matrices they produce.
#pragma once

#include "clq/algebra.hpp"
#include "clq/units.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clq {

enum class RepKind { direct, conjugate };

inline std::string kind_name(RepKind k) { return k == RepKind::direct ? "direct" : "conjugate"; }
inline RepKind parse_kind(const std::string& s) {
    if (s == "direct") return RepKind::direct;
    if (s == "conjugate") return RepKind::conjugate;
    throw config_error("unknown representation kind " + s);
}

// ---------- groupings ----------

struct SignedIndex {
    int sign = 1;
    int index = 0;
};

// Partition of a basis into equal-size groups; group g, slot j is
// sign * basis[index]. names label the display rows.
struct Grouping {
    std::vector<std::vector<SignedIndex>> groups;
    std::vector<std::string> names;

    int block() const { return groups.empty() ? 1 : int(groups.front().size()); }
    int size() const { return int(groups.size()); }
    int dim() const { return size() * block(); }
};

// Generator permutation of a lepton generation; 4 and higher stay fixed.
inline int permute_generator(int k, int generation) {
    if (generation == 1 || k > 3) return k;
    if (generation == 2) return k == 1 ? 3 : k == 2 ? 1 : 2;  // 3->2, 2->1, 1->3
    if (generation == 3) return k == 1 ? 2 : k == 2 ? 3 : 1;  // 3->1, 2->3, 1->2
    throw config_error("generation must be 1, 2 or 3");
}

inline int basic_generation(const std::string& basic) {
    if (basic == "21") return 1;
    if (basic == "13") return 2;
    if (basic == "32") return 3;
    throw config_error("basic direction must be 21, 13 or 32");
}

inline char basic_unit(const std::string& basic) { return "ijk"[basic_generation(basic) - 1]; }

// Image of a listed label under the generation permutation, against the list.
inline SignedIndex permute_label(const std::string& label, int generation, const LabelMap& labels) {
    std::vector<int> seq = label_sequence(label);
    for (int& k : seq) k = permute_generator(k, generation);
    auto [s, i] = labels.express(canonicalize(seq, Signature(std::vector<int>(9, 1))));
    return {s, i};
}

inline Grouping make_grouping(const std::vector<std::string>& basis, int block, const std::string& basic = "21") {
    if (block < 1 || basis.size() % block) throw decomposition_error("grouping does not partition the basis");
    int gen = basic_generation(basic);
    LabelMap lm(basis);
    Grouping g;
    for (std::size_t start = 0; start < basis.size(); start += block) {
        std::vector<SignedIndex> grp;
        for (int j = 0; j < block; ++j) grp.push_back(permute_label(basis[start + j], gen, lm));
        g.names.push_back(basis[grp.back().index]);
        g.groups.push_back(std::move(grp));
    }
    return g;
}

// Express M in grouped coordinates: R = S^T M S.
template <class T>
Matrix<T> regroup(const Matrix<T>& m, const Grouping& g) {
    int b = g.block(), n = g.dim();
    if (m.rows() != n || m.cols() != n) throw decomposition_error("grouping size differs from matrix size");
    Matrix<T> r(n, n);
    for (int ga = 0; ga < g.size(); ++ga)
        for (int j = 0; j < b; ++j)
            for (int gb = 0; gb < g.size(); ++gb)
                for (int k = 0; k < b; ++k) {
                    auto x = g.groups[ga][j], y = g.groups[gb][k];
                    r(ga * b + j, gb * b + k) = T(x.sign * y.sign) * m(x.index, y.index);
                }
    return r;
}

// ---------- block decomposition ----------

// Common scalar unit u with every cell = +-u*(entry unit); +1 when none fits.
inline Cell choose_prefactor(const UnitAlgebra& U, const std::vector<Cell>& cells) {
    for (int u : U.scalar_units()) {
        Cell inv = U.inv({1, u});
        bool ok = true;
        for (const Cell& c : cells) {
            if (!c.coef) continue;
            if (!U.is_entry_unit(U.mul(inv, c).unit)) { ok = false; break; }
        }
        if (ok) return {1, u};
    }
    return {1, 0};
}

inline UnitMatrix decompose_matrix(const IntMat& m, const Grouping& g, const UnitAlgebra& U,
                                   std::optional<Cell> prefactor = std::nullopt) {
    if (g.block() != U.block()) throw decomposition_error("group size differs from " + U.name() + " block size");
    IntMat r = regroup(m, g);
    int b = U.block();
    UnitMatrix out(U, g.size(), g.size());
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) {
            IntMat blk = r.block(i * b, j * b, b, b);
            if (blk.is_zero()) continue;
            auto c = U.find(blk);
            if (!c) throw decomposition_error("block (" + g.names[i] + "," + g.names[j] + ") is not a " + U.name() + " unit");
            out.at(i, j) = *c;
        }
    Cell pre = prefactor ? *prefactor : choose_prefactor(U, out.cells);
    Cell inv = U.inv(pre);
    for (auto& c : out.cells) c = U.mul(inv, c);
    out.prefactor = pre;
    return out;
}

// Try unit algebras in order, first success wins.
inline UnitMatrix decompose_any(const IntMat& m, const Grouping& g, const std::vector<const UnitAlgebra*>& algebras) {
    for (const UnitAlgebra* U : algebras) {
        try {
            return decompose_matrix(m, g, *U);
        } catch (const decomposition_error&) {
        }
    }
    throw decomposition_error("matrix fits none of the candidate unit algebras");
}

// Exact complex matrix of a complex-linear real matrix; the block
// [[x, y], [-y, x]] is x + iy.
inline CxMat complex_matrix(const RatMat& m, const Grouping& g) {
    if (g.block() != 2) throw decomposition_error("complex grouping needs pairs");
    RatMat r = regroup(m, g);
    int n = g.size();
    CxMat z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat x = r(2 * i, 2 * j), y = r(2 * i, 2 * j + 1);
            if (r(2 * i + 1, 2 * j + 1) != x || r(2 * i + 1, 2 * j) != -y)
                throw decomposition_error("matrix is not complex-linear in this grouping");
            z(i, j) = Cx(x, y);
        }
    return z;
}
inline CxMat complex_matrix(const IntMat& m, const Grouping& g) { return complex_matrix(to_rat(m), g); }

// ---------- regular representations ----------

struct RegularRep {
    RepKind kind = RepKind::direct;
    std::string algebra;               // c3, c4 or a custom name
    Signature sig;
    std::string map;                   // approximate map name, empty if exact
    std::vector<std::string> basis;    // rows/columns of the real matrices
    std::vector<std::string> labels;   // represented elements
    std::vector<IntMat> real;          // effective real matrices, prefactors applied

    std::string form = "real";
    std::string basic = "21";
    Grouping grouping;
    std::vector<UnitMatrix> mats;      // display form

    int size() const { return int(labels.size()); }
    int find(const std::string& label) const {
        for (int i = 0; i < size(); ++i)
            if (labels[i] == label) return i;
        return -1;
    }
    const IntMat& operator[](const std::string& label) const {
        int i = find(label);
        if (i < 0) throw config_error("no matrix for label " + label);
        return real[i];
    }
    const UnitAlgebra& units() const { return mats.empty() ? real_units() : *mats.front().units; }
};

namespace detail {

inline Grouping trivial_grouping(const std::vector<std::string>& basis) { return make_grouping(basis, 1); }

// Real display: prefactor g (conjugate) or +1 (direct), entries carry the rest.
inline void fill_real_form(RegularRep& r) {
    r.form = "real";
    r.basic = "21";
    r.grouping = trivial_grouping(r.basis);
    r.mats.clear();
    for (int i = 0; i < r.size(); ++i) {
        int g = 1;
        if (r.kind == RepKind::conjugate) {
            Blade b = label_blade(r.labels[i]);
            g = blade_square(b, r.sig);
        }
        r.mats.push_back(decompose_matrix(r.real[i], r.grouping, real_units(), Cell{g, 0}));
    }
}

}  // namespace detail

// Matrix I: entry (L,K) = C^L_{KI}.
inline RegularRep regular_rep_direct(const CliffordAlgebra& A) {
    RegularRep r;
    r.kind = RepKind::direct;
    r.algebra = A.name();
    r.sig = A.signature();
    r.basis = A.order().labels;
    r.labels = r.basis;
    for (int i = 0; i < A.dim(); ++i) {
        IntMat m(A.dim(), A.dim());
        for (int k = 0; k < A.dim(); ++k) {
            Term t = A.mul(k, i);
            m(t.index, k) = t.sign;
        }
        r.real.push_back(std::move(m));
    }
    detail::fill_real_form(r);
    return r;
}

// Conjugate constants as a dense tensor, Ct[(r*dim + q)*dim + p] = C^{RQ}_P.
struct ConjugateConstants {
    int dim = 0;
    std::vector<int> c;
    std::vector<int> metric;  // conjugate metric diagonal g^{II}
    int operator()(int r, int q, int p) const { return c[(std::size_t(r) * dim + q) * dim + p]; }
};

// C^{RQ}_P = g^{RI} g^{QK} C^L_{KI} g_{LP}; the metric must be diagonal.
inline ConjugateConstants conjugate_constants_via_F10(const CliffordAlgebra& A) {
    int n = A.dim();
    std::vector<int> g(n), ginv(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k)
            if (k != i && A.metric(i, k) != 0) throw config_error("metric is not diagonal");
        g[i] = A.metric(i, i);
        if (g[i] == 0) throw config_error("metric is not invertible");
        ginv[i] = g[i];  // +-1 diagonal is its own inverse
    }
    ConjugateConstants out{n, std::vector<int>(std::size_t(n) * n * n, 0), ginv};
    for (int r = 0; r < n; ++r)
        for (int q = 0; q < n; ++q) {
            // only I = R, K = Q survive; C^L_{QR} picks one L, and g_{LP} forces P = L
            Term t = A.mul(q, r);
            out.c[(std::size_t(r) * n + q) * n + t.index] = ginv[r] * ginv[q] * t.sign * g[t.index];
        }
    return out;
}

// Constants from the left-comultiplier rule: E^R o E^Q = s E^P.
inline ConjugateConstants conjugate_constants_left(const CliffordAlgebra& A) {
    int n = A.dim();
    ConjugateConstants out{n, std::vector<int>(std::size_t(n) * n * n, 0), std::vector<int>(n)};
    for (int r = 0; r < n; ++r) {
        out.metric[r] = A.square(r);
        for (int q = 0; q < n; ++q) {
            Term t = A.mul(r, q);
            out.c[(std::size_t(r) * n + q) * n + t.index] = t.sign;
        }
    }
    return out;
}

// Matrix I: entry (K,L) = (E^I)^2 * C^{IK}_L.
inline RegularRep rep_from_conjugate_constants(const CliffordAlgebra& A, const ConjugateConstants& ct) {
    RegularRep r;
    r.kind = RepKind::conjugate;
    r.algebra = A.name();
    r.sig = A.signature();
    r.basis = A.order().labels;
    r.labels = r.basis;
    int n = A.dim();
    for (int i = 0; i < n; ++i) {
        IntMat m(n, n);
        int g = A.square(i);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) m(k, l) = g * ct(i, k, l);
        r.real.push_back(std::move(m));
    }
    detail::fill_real_form(r);
    return r;
}

inline RegularRep regular_rep_conjugate(const CliffordAlgebra& A) {
    return rep_from_conjugate_constants(A, conjugate_constants_left(A));
}

inline RegularRep regular_rep(const CliffordAlgebra& A, RepKind kind) {
    return kind == RepKind::direct ? regular_rep_direct(A) : regular_rep_conjugate(A);
}

// Unit algebra used for 4-blocks: direct reps over {1,I}, conjugate over Pauli blocks.
inline const UnitAlgebra& quaternion_units_for(RepKind kind) {
    return kind == RepKind::direct ? quaternion_units() : pauli_units();
}

// Re-express every matrix over the units of a form. Complex forms reuse the
// prefactor picked at the quaternion level when the basis admits 4-groups.
inline RegularRep block_decompose(const RegularRep& rep, const std::string& form, const std::string& basic = "21") {
    RegularRep out = rep;
    if (form == "real") {
        if (basic != "21") throw config_error("basic direction applies to complex and quaternion forms");
        detail::fill_real_form(out);
        return out;
    }
    const UnitAlgebra& Q = quaternion_units_for(rep.kind);
    bool quads = rep.basis.size() % 4 == 0;
    out.form = form;
    out.basic = basic;
    out.mats.clear();
    if (form == "quaternion") {
        if (!quads) throw decomposition_error("basis does not split into quaternion groups");
        out.grouping = make_grouping(rep.basis, 4, basic);
        for (const IntMat& m : rep.real) out.mats.push_back(decompose_matrix(m, out.grouping, Q));
        return out;
    }
    if (form != "complex") throw config_error("unknown form " + form);
    out.grouping = make_grouping(rep.basis, 2, basic);
    std::optional<Grouping> qg;
    if (quads) qg = make_grouping(rep.basis, 4, basic);
    const UnitAlgebra& C = complex_units();
    for (const IntMat& m : rep.real) {
        std::optional<Cell> pre;
        if (qg) {
            try {
                Cell qp = decompose_matrix(m, *qg, Q).prefactor;
                pre = Cell{qp.coef, C.index(Q.symbol(qp.unit))};
            } catch (const decomposition_error&) {
            }
        }
        out.mats.push_back(decompose_matrix(m, out.grouping, C, pre));
    }
    return out;
}

// Display token with the unit renamed for the basic direction (i -> j, k).
inline std::string display_token(const UnitAlgebra& U, Cell c, const std::string& basic) {
    std::string t = U.token(c);
    char u = basic_unit(basic);
    if (u == 'i' || (&U != &complex_units() && &U != &quaternion_units() && &U != &pauli_units())) return t;
    for (char& ch : t)
        if (ch == 'i') ch = u;
    return t;
}

// ---------- approximate representations ----------

struct CorrespondenceMap {
    std::string name;
    std::map<std::string, std::string> pairs;  // replaced -> replacement

    static CorrespondenceMap r1() {
        return {"r1",
                {{"42", "32"}, {"14", "13"}, {"1324", "21"}, {"34", "0"},
                 {"134", "1"}, {"234", "2"}, {"4", "3"}, {"124", "123"}}};
    }
    static CorrespondenceMap r2() {
        CorrespondenceMap m{"r2", {}};
        const char* kept[4] = {"32", "13", "21", "0"};
        for (auto quad : {std::array<const char*, 4>{"42", "14", "1324", "34"},
                          std::array<const char*, 4>{"134", "234", "4", "124"},
                          std::array<const char*, 4>{"1", "2", "3", "123"}})
            for (int j = 0; j < 4; ++j) m.pairs[quad[j]] = kept[j];
        return m;
    }
    static CorrespondenceMap r3() {
        CorrespondenceMap m{"r3", {}};
        for (auto [a, b] : std::vector<std::pair<const char*, const char*>>{
                 {"42", "14"}, {"1324", "34"}, {"134", "234"}, {"4", "124"}, {"1", "2"}, {"3", "123"}, {"32", "13"}}) {
            m.pairs[a] = "21";
            m.pairs[b] = "0";
        }
        return m;
    }
    static CorrespondenceMap preset(const std::string& name) {
        if (name == "r1") return r1();
        if (name == "r2") return r2();
        if (name == "r3") return r3();
        throw config_error("unknown correspondence map " + name);
    }
};

// Kept labels in basis order; checks the map is a valid folding.
inline std::vector<std::string> kept_labels(const std::vector<std::string>& basis, const CorrespondenceMap& map,
                                            const Signature& sig) {
    std::vector<std::string> kept;
    for (const auto& l : basis)
        if (!map.pairs.count(l)) kept.push_back(l);
    std::map<std::string, int> preimages;
    for (const auto& [from, to] : map.pairs) {
        if (std::find(basis.begin(), basis.end(), from) == basis.end())
            throw config_error("map replaces unknown label " + from);
        if (std::find(kept.begin(), kept.end(), to) == kept.end())
            throw config_error("map target " + to + " is not kept");
        ++preimages[to];
    }
    if (kept.empty() || basis.size() % kept.size()) throw config_error("kept part does not divide the basis");
    int fold = int(basis.size() / kept.size()) - 1;
    for (const auto& k : kept)
        if (preimages[k] != fold) throw config_error("uneven folding onto " + k);
    LabelMap lm(kept);
    for (const auto& a : kept)
        for (const auto& b : kept) {
            auto seq = label_sequence(a);
            auto rhs = label_sequence(b);
            seq.insert(seq.end(), rhs.begin(), rhs.end());
            if (!lm.contains(canonicalize(seq, sig).blade)) throw config_error("kept labels are not closed");
        }
    return kept;
}

// Fold replaced rows (direct) or columns (conjugate) onto their replacements.
inline RegularRep approx_rep(const RegularRep& rep, const CorrespondenceMap& map) {
    if (!rep.map.empty()) throw config_error("representation is already approximate");
    std::vector<std::string> kept = kept_labels(rep.basis, map, rep.sig);
    std::map<std::string, int> pos;
    for (int i = 0; i < int(kept.size()); ++i) pos[kept[i]] = i;
    auto target = [&](const std::string& l) {
        auto it = map.pairs.find(l);
        return pos.at(it == map.pairs.end() ? l : it->second);
    };
    RegularRep out;
    out.kind = rep.kind;
    out.algebra = rep.algebra;
    out.sig = rep.sig;
    out.map = map.name;
    out.basis = kept;
    out.labels = rep.labels;
    int n = int(kept.size());
    for (const IntMat& m : rep.real) {
        IntMat a(n, n);
        for (int b = 0; b < int(rep.basis.size()); ++b)
            for (int k = 0; k < n; ++k) {
                int kk = int(std::find(rep.basis.begin(), rep.basis.end(), kept[k]) - rep.basis.begin());
                if (rep.kind == RepKind::direct)
                    a(target(rep.basis[b]), k) += m(b, kk);
                else
                    a(k, target(rep.basis[b])) += m(kk, b);
            }
        out.real.push_back(std::move(a));
    }
    detail::fill_real_form(out);
    return out;
}

// ---------- Dirac matrices ----------

struct GammaIdentity {
    std::string element;  // E^label as listed (314 allowed)
    Cx factor;            // E^element = factor * product
    std::string product;  // e.g. "1 2 3" for gamma1 gamma2 gamma3
    bool holds = false;
};

struct GammaSet {
    std::array<CxMat, 5> gamma;  // gamma_0 .. gamma_4
    std::map<std::string, CxMat> images;
    std::vector<GammaIdentity> dictionary;
    std::array<std::array<int, 4>, 4> eta{};  // anticommutator / 2 for mu,nu = 1..4
    bool clifford = false;                    // anticommutators are eta * identity
};

// Complex image of an element, handling labels that are permutations of a listed one.
inline CxMat complex_image(const RegularRep& rep, const std::string& label, const Grouping& g) {
    int i = rep.find(label);
    if (i >= 0) return complex_matrix(rep.real[i], g);
    LabelMap lm(rep.labels);
    auto [s, idx] = lm.express({label_sign(label), label_blade(label)});
    return Cx(Rat(s)) * complex_matrix(rep.real[idx], g);
}

inline GammaSet gamma_set(const RegularRep& r1conj) {
    if (r1conj.kind != RepKind::conjugate || r1conj.map != "r1")
        throw config_error("gamma set needs the conjugate first approximate representation");
    Grouping g = make_grouping(r1conj.basis, 2);
    GammaSet out;
    for (const auto& l : r1conj.labels) out.images[l] = complex_matrix(r1conj[l], g);
    out.gamma[0] = out.images.at("0");
    const Cx mi(Rat(0), Rat(-1));
    for (int k = 1; k <= 4; ++k) out.gamma[k] = mi * out.images.at(std::to_string(k));

    const std::vector<std::tuple<std::string, Cx, std::string>> dict = {
        {"21", Cx(1), "12"},   {"13", Cx(1), "31"},   {"32", Cx(1), "23"},   {"14", Cx(1), "41"},
        {"42", Cx(1), "24"},   {"34", Cx(1), "43"},   {"123", mi, "123"},    {"124", mi, "124"},
        {"234", mi, "234"},    {"314", mi, "314"},    {"1324", Cx(1), "1324"}};
    for (const auto& [elem, f, prod] : dict) {
        CxMat p = CxMat::identity(out.gamma[0].rows());
        for (char c : prod) p = p * out.gamma[c - '0'];
        CxMat lhs = complex_image(r1conj, elem, g);
        out.dictionary.push_back({elem, f, prod, lhs == f * p});
    }
    out.clifford = true;
    CxMat id = CxMat::identity(out.gamma[0].rows());
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            CxMat ac = out.gamma[m] * out.gamma[n] + out.gamma[n] * out.gamma[m];
            Cx d = ac(0, 0) / Cx(2);
            out.eta[m - 1][n - 1] = int(d.re.numerator());
            if (!(d.im == Rat(0)) || d.re.denominator() != 1 || !(ac == Cx(2) * d * id)) out.clifford = false;
        }
    return out;
}

}  // namespace clq

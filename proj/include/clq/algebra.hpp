// Clifford algebras over a fixed basis order: structure constants, metric,
// multivector arithmetic, inverses and differentials.
#pragma once

#include "clq/blades.hpp"
#include "clq/exact.hpp"

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

namespace clq {

struct not_invertible : std::domain_error {
    using std::domain_error::domain_error;
};

struct BasisOrder {
    std::vector<std::string> labels;

    static BasisOrder c3() { return {{"32", "13", "21", "0", "1", "2", "3", "123"}}; }
    static BasisOrder c4() {
        return {{"32", "13", "21", "0", "42", "14", "1324", "34", "1", "2", "3", "123", "134", "234",
                 "4", "124"}};
    }
    // Increasing labels in binary order, for algebras without a preset.
    static BasisOrder binary(int n) {
        BasisOrder o;
        for (Blade b = 0; b < (Blade(1) << n); ++b) o.labels.push_back(blade_string(b));
        return o;
    }
};

struct Term {
    int sign = 0;
    int index = 0;
};

class CliffordAlgebra {
public:
    CliffordAlgebra() = default;
    CliffordAlgebra(Signature sig, BasisOrder order, std::string name = {})
        : sig_(std::move(sig)), order_(std::move(order)), labels_(order_.labels), name_(std::move(name)) {
        int n = sig_.n();
        std::size_t dim = std::size_t(1) << n;
        if (order_.labels.size() != dim) throw config_error("basis order size is not 2^n");
        for (int i = 0; i < int(dim); ++i)
            if (labels_.blade(i) >> n) throw config_error("label uses a generator beyond n");
        table_.resize(dim * dim);
        for (int k = 0; k < int(dim); ++k)
            for (int i = 0; i < int(dim); ++i) {
                SignedBlade p = blade_mul(labels_.blade(k), labels_.blade(i), sig_);
                auto [s, l] = labels_.express(p);
                table_[k * dim + i] = {s * labels_.sign(k) * labels_.sign(i), l};
            }
        unit_ = labels_.index_of(Blade(0));
    }

    int n() const { return sig_.n(); }
    int dim() const { return int(labels_.size()); }
    const Signature& signature() const { return sig_; }
    const BasisOrder& order() const { return order_; }
    const LabelMap& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.label(i); }
    int index(std::string_view label) const { return labels_.index_of(label); }
    int unit() const { return unit_; }
    const std::string& name() const { return name_; }

    // e_K o e_I = sign * e_index
    Term mul(int k, int i) const { return table_[std::size_t(k) * dim() + i]; }

    // C^L_{KI}
    int C(int l, int k, int i) const {
        Term t = mul(k, i);
        return t.index == l ? t.sign : 0;
    }

    // square of a basis vector, equal to g_II
    int square(int i) const { return mul(i, i).sign; }

    // g_{IK} = C^0_{IK}
    int metric(int i, int k) const { return C(unit_, i, k); }

private:
    Signature sig_;
    BasisOrder order_;
    LabelMap labels_;
    std::string name_;
    std::vector<Term> table_;
    int unit_ = 0;
};

inline CliffordAlgebra build(int n, const Signature& sig, const BasisOrder& order, std::string name = {}) {
    if (sig.n() != n) throw config_error("signature length differs from n");
    return CliffordAlgebra(sig, order, std::move(name));
}

inline CliffordAlgebra c3_algebra() { return build(3, Signature({1, 1, 1}), BasisOrder::c3(), "c3"); }
inline CliffordAlgebra c4_algebra() { return build(4, Signature({1, 1, 1, -1}), BasisOrder::c4(), "c4"); }

// Dense exact coordinates over an algebra's basis order.
struct MultiVector {
    std::vector<Rat> c;

    MultiVector() = default;
    explicit MultiVector(int dim) : c(dim, Rat(0)) {}
    static MultiVector basis(const CliffordAlgebra& A, std::string_view label, Rat coef = 1) {
        MultiVector x(A.dim());
        x.c[A.index(label)] = coef;
        return x;
    }
    static MultiVector scalar(const CliffordAlgebra& A, Rat v) { return basis(A, "0", v); }

    int dim() const { return int(c.size()); }
    Rat& operator[](int i) { return c[i]; }
    const Rat& operator[](int i) const { return c[i]; }
    bool is_zero() const {
        return std::all_of(c.begin(), c.end(), [](const Rat& r) { return r == Rat(0); });
    }
    MultiVector& operator+=(const MultiVector& o) {
        for (int i = 0; i < dim(); ++i) c[i] += o.c[i];
        return *this;
    }
    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator*(const Rat& s, MultiVector a) {
        for (auto& x : a.c) x *= s;
        return a;
    }
    bool operator==(const MultiVector&) const = default;
};

inline MultiVector multiply(const MultiVector& x, const MultiVector& y, const CliffordAlgebra& A) {
    MultiVector z(A.dim());
    for (int k = 0; k < A.dim(); ++k) {
        if (x[k] == Rat(0)) continue;
        for (int i = 0; i < A.dim(); ++i) {
            if (y[i] == Rat(0)) continue;
            Term t = A.mul(k, i);
            z[t.index] += Rat(t.sign) * x[k] * y[i];
        }
    }
    return z;
}

// Matrix of y -> x o y in basis coordinates.
inline RatMat left_action(const MultiVector& x, const CliffordAlgebra& A) {
    RatMat m(A.dim(), A.dim());
    for (int k = 0; k < A.dim(); ++k) {
        if (x[k] == Rat(0)) continue;
        for (int i = 0; i < A.dim(); ++i) {
            Term t = A.mul(k, i);
            m(t.index, i) += Rat(t.sign) * x[k];
        }
    }
    return m;
}

inline MultiVector inverse(const MultiVector& x, const CliffordAlgebra& A) {
    RatMat L = left_action(x, A);
    RatMat Linv;
    try {
        Linv = inverse(L);
    } catch (const std::domain_error&) {
        throw not_invertible("multivector is a zero divisor");
    }
    MultiVector y(A.dim());
    for (int i = 0; i < A.dim(); ++i) y[i] = Linv(i, A.unit());
    MultiVector one = MultiVector::scalar(A, 1);
    if (!(multiply(x, y, A) == one) || !(multiply(y, x, A) == one))
        throw not_invertible("left and right inverses differ");
    return y;
}

// Grouped square signs, grade by grade, blades of each grade in colex order
// (for n=4 the 2-blades run 12,13,23,14,24,34).
inline std::string classify(int n, const Signature& sig) {
    if (sig.n() != n) throw config_error("signature length differs from n");
    std::string out = "(";
    for (int g = 0; g <= n; ++g) {
        std::vector<Blade> blades;
        for (Blade b = 0; b < (Blade(1) << n); ++b)
            if (grade(b) == g) blades.push_back(b);
        std::sort(blades.begin(), blades.end(), [](Blade a, Blade b) {
            // colex: compare highest differing generator
            Blade d = a ^ b;
            Blade top = Blade(1) << (31 - std::countl_zero(d));
            return (b & top) != 0;
        });
        if (g) out += ", ";
        for (Blade b : blades) out += blade_square(b, sig) > 0 ? '+' : '-';
    }
    return out + ")";
}

// dx1 o dx2: the second differential near the unit.
inline MultiVector second_differential(const MultiVector& dx1, const MultiVector& dx2, const CliffordAlgebra& A) {
    return multiply(dx1, dx2, A);
}

inline MultiVector nth_differential(const std::vector<MultiVector>& ds, const CliffordAlgebra& A) {
    if (ds.empty()) return MultiVector::scalar(A, 1);
    MultiVector acc = ds.front();
    for (std::size_t k = 1; k < ds.size(); ++k) acc = multiply(acc, ds[k], A);
    return acc;
}

// dx1 o x^-1 o dx2
inline MultiVector general_structure_differential(const MultiVector& dx1, const MultiVector& dx2,
                                                  const MultiVector& x, const CliffordAlgebra& A) {
    return multiply(multiply(dx1, inverse(x, A), A), dx2, A);
}

}  // namespace clq

// Small unit algebras used to compress real matrices into block form.
// Every unit is stored as its real matrix; products and tokens follow from that.
#pragma once

#include "clq/exact.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clq {

struct decomposition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// coef in {-1,0,+1}; coef 0 is the empty cell
struct Cell {
    int coef = 0;
    int unit = 0;
    bool operator==(const Cell&) const = default;
};

class UnitAlgebra {
public:
    UnitAlgebra(std::string name, int block) : name_(std::move(name)), block_(block) {}

    void add(std::string symbol, IntMat m, bool scalar, bool entry) {
        if (m.rows() != block_ || m.cols() != block_) throw std::logic_error("unit block size");
        names_.push_back(std::move(symbol));
        mats_.push_back(std::move(m));
        if (scalar) scalars_.push_back(int(names_.size()) - 1);
        entry_.push_back(entry);
    }

    const std::string& name() const { return name_; }
    int block() const { return block_; }
    int size() const { return int(names_.size()); }
    const std::string& symbol(int u) const { return names_.at(u); }
    const IntMat& matrix(int u) const { return mats_.at(u); }
    const std::vector<int>& scalar_units() const { return scalars_; }
    bool is_entry_unit(int u) const { return entry_.at(u); }

    int index(const std::string& symbol) const {
        for (int u = 0; u < size(); ++u)
            if (names_[u] == symbol) return u;
        throw decomposition_error("unknown unit symbol '" + symbol + "' in " + name_);
    }

    IntMat real(Cell c) const {
        if (c.coef == 0) return IntMat(block_, block_);
        return c.coef * mats_.at(c.unit);
    }

    std::optional<Cell> find(const IntMat& b) const {
        for (int u = 0; u < size(); ++u) {
            if (b == mats_[u]) return Cell{1, u};
            if (b == -mats_[u]) return Cell{-1, u};
        }
        return std::nullopt;
    }

    Cell mul(Cell x, Cell y) const {
        if (x.coef == 0 || y.coef == 0) return {};
        auto c = find(real(x) * real(y));
        if (!c) throw decomposition_error("unit table not closed in " + name_);
        return *c;
    }

    // units are signed permutation matrices, so the inverse is the transpose
    Cell inv(Cell x) const {
        auto c = find(real(x).transpose());
        if (!c) throw decomposition_error("unit without inverse in " + name_);
        return *c;
    }

    std::string token(Cell c) const {
        if (c.coef == 0) return ".";
        return std::string(c.coef > 0 ? "+" : "-") + names_.at(c.unit);
    }

    Cell parse(const std::string& tok) const {
        if (tok == ".") return {};
        if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
            throw decomposition_error("bad cell token '" + tok + "'");
        return {tok[0] == '+' ? 1 : -1, index(tok.substr(1))};
    }

private:
    std::string name_;
    int block_;
    std::vector<std::string> names_;
    std::vector<IntMat> mats_;
    std::vector<int> scalars_;
    std::vector<bool> entry_;
};

namespace detail {

inline IntMat mat2(int a, int b, int c, int d) {
    IntMat m(2, 2);
    m(0, 0) = a; m(0, 1) = b; m(1, 0) = c; m(1, 1) = d;
    return m;
}

// 2x2 real blocks of the four complex units
inline IntMat unit2(char u) {
    switch (u) {
        case '1': return mat2(1, 0, 0, 1);
        case 'a': return mat2(0, 1, 1, 0);
        case 'b': return mat2(-1, 0, 0, 1);
        case 'i': return mat2(0, 1, -1, 0);
    }
    throw std::logic_error("unit2");
}

// 2x2 block over complex units (given as signed chars) expanded to 4x4 real
inline IntMat expand2(const int (&coef)[4], const char (&unit)[4]) {
    IntMat m(4, 4);
    for (int k = 0; k < 4; ++k) {
        if (!coef[k]) continue;
        m.set_block(2 * (k / 2), 2 * (k % 2), coef[k] * unit2(unit[k]));
    }
    return m;
}

inline IntMat scalar4(char u) {
    IntMat m(4, 4);
    m.set_block(0, 0, unit2(u));
    m.set_block(2, 2, unit2(u));
    return m;
}

}  // namespace detail

inline const UnitAlgebra& real_units() {
    static const UnitAlgebra U = [] {
        UnitAlgebra u("real", 1);
        IntMat one(1, 1);
        one(0, 0) = 1;
        u.add("1", one, true, true);
        return u;
    }();
    return U;
}

// {1, a, b, i} as 2x2 real blocks
inline const UnitAlgebra& complex_units() {
    static const UnitAlgebra U = [] {
        UnitAlgebra u("complex", 2);
        u.add("1", detail::unit2('1'), true, true);
        u.add("a", detail::unit2('a'), true, false);
        u.add("b", detail::unit2('b'), true, false);
        u.add("i", detail::unit2('i'), true, false);
        return u;
    }();
    return U;
}

// blocks 1 and I over {1, a, b, i}, as 4x4 real
inline const UnitAlgebra& quaternion_units() {
    static const UnitAlgebra U = [] {
        UnitAlgebra u("quaternion", 4);
        IntMat I = detail::expand2({0, 1, -1, 0}, {'1', '1', '1', '1'});
        for (char s : {'1', 'a', 'b', 'i'}) u.add(std::string(1, s), detail::scalar4(s), true, s == '1');
        u.add("I", I, false, true);
        for (char s : {'a', 'b', 'i'}) u.add(std::string(1, s) + "I", detail::scalar4(s) * I, false, false);
        return u;
    }();
    return U;
}

// Pauli blocks 1, s1, s2, s3 over {1, i}; s3 = diag(-1, 1)
inline const UnitAlgebra& pauli_units() {
    static const UnitAlgebra U = [] {
        UnitAlgebra u("pauli", 4);
        IntMat s1 = detail::expand2({0, 1, 1, 0}, {'1', '1', '1', '1'});
        IntMat s2 = detail::expand2({0, -1, 1, 0}, {'1', 'i', 'i', '1'});
        IntMat s3 = detail::expand2({-1, 0, 0, 1}, {'1', '1', '1', '1'});
        u.add("1", detail::scalar4('1'), true, true);
        u.add("i", detail::scalar4('i'), true, false);
        u.add("s1", s1, false, true);
        u.add("s2", s2, false, true);
        u.add("s3", s3, false, true);
        u.add("is1", detail::scalar4('i') * s1, false, false);
        u.add("is2", detail::scalar4('i') * s2, false, false);
        u.add("is3", detail::scalar4('i') * s3, false, false);
        return u;
    }();
    return U;
}

inline const UnitAlgebra& unit_algebra(const std::string& name) {
    if (name == "real") return real_units();
    if (name == "complex") return complex_units();
    if (name == "quaternion") return quaternion_units();
    if (name == "pauli") return pauli_units();
    throw decomposition_error("unknown unit algebra " + name);
}

// A matrix over a unit algebra: prefactor times entries, the prefactor
// multiplying each entry from the left.
struct UnitMatrix {
    const UnitAlgebra* units = &real_units();
    int rows = 0, cols = 0;
    Cell prefactor{1, 0};
    std::vector<Cell> cells;

    UnitMatrix() = default;
    UnitMatrix(const UnitAlgebra& U, int r, int c) : units(&U), rows(r), cols(c), cells(std::size_t(r) * c) {}

    Cell& at(int i, int j) { return cells[std::size_t(i) * cols + j]; }
    const Cell& at(int i, int j) const { return cells[std::size_t(i) * cols + j]; }
    Cell effective(int i, int j) const { return units->mul(prefactor, at(i, j)); }

    IntMat real() const {
        int b = units->block();
        IntMat m(rows * b, cols * b);
        IntMat p = units->real(prefactor);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (at(i, j).coef) m.set_block(i * b, j * b, p * units->real(at(i, j)));
        return m;
    }

    bool same_display(const UnitMatrix& o) const {
        return units == o.units && rows == o.rows && cols == o.cols && prefactor == o.prefactor && cells == o.cells;
    }
    bool same_value(const UnitMatrix& o) const {
        if (units != o.units || rows != o.rows || cols != o.cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!(effective(i, j) == o.effective(i, j))) return false;
        return true;
    }
};

}  // namespace clq

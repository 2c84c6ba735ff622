// Exact scalars and small dense matrices.
#pragma once

#include <boost/rational.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace clq {

using Rat = boost::rational<long long>;

inline std::string rat_string(const Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

// "3", "-3/4" or a terminating decimal such as "0.25"; anything else throws.
inline Rat parse_rat(const std::string& s) {
    auto whole = [&](const std::string& t) {
        std::size_t used = 0;
        long long v = std::stoll(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad rational '" + s + "'");
        return v;
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        long long d = whole(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rat(whole(s.substr(0, slash)), d);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string frac = s.substr(dot + 1);
        if (frac.empty() || frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad rational '" + s + "'");
        long long den = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
        std::string head = s.substr(0, dot);
        bool neg = !head.empty() && head[0] == '-';
        long long ip = (head.empty() || head == "-" || head == "+") ? 0 : whole(head);
        Rat r = Rat(ip < 0 ? -ip : ip) + Rat(std::stoll(frac), den);
        return neg ? -r : r;
    }
    return Rat(whole(s));
}

// Gaussian rational.
struct Cx {
    Rat re{0}, im{0};
    Cx() = default;
    Cx(Rat r) : re(r) {}
    Cx(long long r) : re(r) {}
    Cx(Rat r, Rat i) : re(r), im(i) {}
    static Cx i() { return {Rat(0), Rat(1)}; }

    bool is_zero() const { return re == Rat(0) && im == Rat(0); }
    Cx conj() const { return {re, -im}; }
    Cx operator-() const { return {-re, -im}; }
    Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
    Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
    friend Cx operator+(Cx a, const Cx& b) { return a += b; }
    friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator/(const Cx& a, const Cx& b) {
        Rat d = b.re * b.re + b.im * b.im;
        if (d == Rat(0)) throw std::domain_error("division by zero");
        Cx n = a * b.conj();
        return {n.re / d, n.im / d};
    }
    bool operator==(const Cx& o) const { return re == o.re && im == o.im; }
};

inline std::string cx_string(const Cx& z) {
    if (z.im == Rat(0)) return rat_string(z.re);
    std::string s = z.re == Rat(0) ? "" : rat_string(z.re) + (z.im > Rat(0) ? "+" : "");
    if (z.im == Rat(1)) return s + "i";
    if (z.im == Rat(-1)) return s + "-i";
    return s + rat_string(z.im) + "i";
}

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(std::size_t(rows) * cols, T(0)) {}
    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[std::size_t(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!(x == T(0))) return false;
        return true;
    }
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
        Matrix m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (x == T(0)) continue;
                for (int j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }
    friend Matrix operator*(const T& s, Matrix m) {
        for (auto& x : m.a_) x = s * x;
        return m;
    }
    Matrix operator-() const { return T(-1) * *this; }

    Matrix transpose() const {
        Matrix m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    Matrix block(int i0, int j0, int nr, int nc) const {
        Matrix m(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }
    void set_block(int i0, int j0, const Matrix& b) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    template <class U, class F>
    Matrix<U> map(F f) const {
        Matrix<U> m(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

private:
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
    }
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using IntMat = Matrix<int>;
using RatMat = Matrix<Rat>;
using CxMat = Matrix<Cx>;

inline RatMat to_rat(const IntMat& m) { return m.map<Rat>([](int x) { return Rat(x); }); }
inline CxMat to_cx(const RatMat& m) { return m.map<Cx>([](const Rat& x) { return Cx(x); }); }

// Exact inverse by Gauss-Jordan; throws on singular input.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    int n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    Matrix<T> a = m, inv = Matrix<T>::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!(a(r, col) == T(0))) { piv = r; break; }
        if (piv < 0) throw std::domain_error("singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        T p = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) = a(col, j) / p;
            inv(col, j) = inv(col, j) / p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a(r, col) == T(0)) continue;
            T f = a(r, col);
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Rational matrix with integer entries back to int; throws otherwise.
inline IntMat to_int(const RatMat& m) {
    IntMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (m(i, j).denominator() != 1) throw std::domain_error("non-integer entry");
            out(i, j) = int(m(i, j).numerator());
        }
    return out;
}

}  // namespace clq

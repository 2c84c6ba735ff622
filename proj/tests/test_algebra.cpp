#include <catch_amalgamated.hpp>

#include "clq/algebra.hpp"

using namespace clq;

namespace {

std::vector<int> squares(const CliffordAlgebra& A) {
    std::vector<int> v;
    for (int i = 0; i < A.dim(); ++i) v.push_back(A.square(i));
    return v;
}

MultiVector mv(const CliffordAlgebra& A, std::initializer_list<std::pair<const char*, Rat>> terms) {
    MultiVector x(A.dim());
    for (auto& [l, c] : terms) x[A.index(l)] += c;
    return x;
}

}  // namespace

TEST_CASE("preset algebras") {
    CliffordAlgebra c3 = c3_algebra(), c4 = c4_algebra();
    CHECK(c3.dim() == 8);
    CHECK(c4.dim() == 16);
    CHECK(c3.label(c3.unit()) == "0");
    // metric tables: blade squares in basis order
    CHECK(squares(c3) == std::vector<int>{-1, -1, -1, 1, 1, 1, 1, -1});
    CHECK(squares(c4) == std::vector<int>{-1, -1, -1, 1, 1, 1, -1, 1, 1, 1, 1, -1, 1, 1, -1, 1});
    for (int i = 0; i < c4.dim(); ++i)
        for (int k = 0; k < c4.dim(); ++k) CHECK(c4.metric(i, k) == (i == k ? c4.square(i) : 0));
}

TEST_CASE("structure constants follow the label convention") {
    CliffordAlgebra c3 = c3_algebra();
    // e1 e2 = e12 = -e21
    Term t = c3.mul(c3.index("1"), c3.index("2"));
    CHECK(c3.label(t.index) == "21");
    CHECK(t.sign == -1);
    // e21 e13 = e2 e3 = -e32
    t = c3.mul(c3.index("21"), c3.index("13"));
    CHECK(c3.label(t.index) == "32");
    CHECK(t.sign == -1);
    CHECK(c3.C(c3.index("32"), c3.index("21"), c3.index("13")) == -1);
}

TEST_CASE("associativity of the structure constants, exhaustive") {
    for (const CliffordAlgebra& A : {c3_algebra(), c4_algebra()}) {
        int n = A.dim();
        // sum_L C^M_{LK} C^L_{NI} = sum_L C^M_{NL} C^L_{IK}
        for (int m = 0; m < n; ++m)
            for (int k = 0; k < n; ++k)
                for (int nn = 0; nn < n; ++nn)
                    for (int i = 0; i < n; ++i) {
                        int lhs = 0, rhs = 0;
                        for (int l = 0; l < n; ++l) {
                            lhs += A.C(m, l, k) * A.C(l, nn, i);
                            rhs += A.C(m, nn, l) * A.C(l, i, k);
                        }
                        REQUIRE(lhs == rhs);
                    }
    }
}

TEST_CASE("classification by grade") {
    CHECK(classify(4, Signature::parse("+++-")) == "(+, +++-, ---+++, -+++, -)");
    CHECK(classify(3, Signature::parse("+++")) == "(+, +++, ---, -)");
    CHECK(classify(2, Signature::parse("--")) == "(+, --, -)");
    CHECK(classify(1, Signature::parse("-")) == "(+, -)");
    CHECK_THROWS_AS(classify(3, Signature::parse("++")), config_error);
}

TEST_CASE("build validates the basis order") {
    CliffordAlgebra A = build(2, Signature::parse("+-"), BasisOrder::binary(2));
    CHECK(A.dim() == 4);
    CHECK(A.square(A.index("12")) == 1);
    CHECK_THROWS_AS(build(2, Signature::parse("+-"), BasisOrder{{"0", "1", "2"}}), config_error);
    CHECK_THROWS_AS(build(2, Signature::parse("+-"), BasisOrder{{"0", "1", "2", "13"}}), config_error);
}

TEST_CASE("multivector products and inverses") {
    CliffordAlgebra A = c4_algebra();
    MultiVector one = MultiVector::scalar(A, 1);
    MultiVector x = mv(A, {{"0", Rat(2)}, {"1", Rat(1, 3)}, {"34", Rat(-1)}, {"124", Rat(1, 2)}});
    MultiVector y = mv(A, {{"2", Rat(1)}, {"1324", Rat(3)}});
    MultiVector z = mv(A, {{"4", Rat(-2)}, {"13", Rat(1, 5)}});
    CHECK(multiply(one, x, A) == x);
    CHECK(multiply(x, one, A) == x);
    CHECK(multiply(multiply(x, y, A), z, A) == multiply(x, multiply(y, z, A), A));
    CHECK(multiply(x, y + z, A) == multiply(x, y, A) + multiply(x, z, A));

    MultiVector xi = inverse(x, A);
    CHECK(multiply(x, xi, A) == one);
    CHECK(multiply(xi, x, A) == one);
    CHECK(inverse(MultiVector::scalar(A, Rat(2)), A) == MultiVector::scalar(A, Rat(1, 2)));
    // e4 squares to -1, so its inverse is -e4
    CHECK(inverse(MultiVector::basis(A, "4"), A) == MultiVector::basis(A, "4", Rat(-1)));
    // (1 + e1)(1 - e1) = 0
    CHECK_THROWS_AS(inverse(mv(A, {{"0", Rat(1)}, {"1", Rat(1)}}), A), not_invertible);
}

TEST_CASE("structure-equation differentials") {
    CliffordAlgebra A = c3_algebra();
    MultiVector d1 = mv(A, {{"1", Rat(1)}, {"21", Rat(2)}});
    MultiVector d2 = mv(A, {{"3", Rat(-1)}, {"0", Rat(1, 2)}});
    MultiVector one = MultiVector::scalar(A, 1);
    CHECK(general_structure_differential(d1, d2, one, A) == second_differential(d1, d2, A));
    MultiVector x = MultiVector::scalar(A, Rat(4));
    CHECK(general_structure_differential(d1, d2, x, A) == Rat(1, 4) * second_differential(d1, d2, A));
    CHECK(nth_differential({d1, d2, d1}, A) == multiply(multiply(d1, d2, A), d1, A));
    CHECK(nth_differential({}, A) == one);
}

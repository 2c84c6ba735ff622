#include <catch_amalgamated.hpp>

#include "clq/blades.hpp"

#include <functional>

using namespace clq;

namespace {

// Independent rewriting: contract the first repeated generator by carrying
// its partner leftwards, then sort what is left by counting inversions.
SignedBlade oracle(std::vector<int> seq, const Signature& sig) {
    int sign = 1;
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < seq.size() && !again; ++i)
            for (std::size_t j = i + 1; j < seq.size(); ++j)
                if (seq[i] == seq[j]) {
                    if ((j - i - 1) % 2) sign = -sign;
                    sign *= sig.square(seq[i]);
                    seq.erase(seq.begin() + j);
                    seq.erase(seq.begin() + i);
                    again = true;
                    break;
                }
    }
    int inv = 0;
    Blade b = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        b |= Blade(1) << (seq[i] - 1);
        for (std::size_t j = i + 1; j < seq.size(); ++j) inv += seq[i] > seq[j];
    }
    return {inv % 2 ? -sign : sign, b};
}

void for_each_sequence(int n, int maxlen, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> seq;
    std::function<void()> rec = [&] {
        f(seq);
        if (int(seq.size()) == maxlen) return;
        for (int k = 1; k <= n; ++k) {
            seq.push_back(k);
            rec();
            seq.pop_back();
        }
    };
    rec();
}

std::vector<Signature> all_signatures(int n) {
    std::vector<Signature> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> v;
        for (int k = 0; k < n; ++k) v.push_back(mask >> k & 1 ? -1 : 1);
        out.emplace_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("canonicalize agrees with the rewriting oracle") {
    long checked = 0;
    for (int n = 1; n <= 4; ++n)
        for (const Signature& sig : all_signatures(n))
            for_each_sequence(n, 6, [&](const std::vector<int>& seq) {
                REQUIRE(canonicalize(seq, sig) == oracle(seq, sig));
                ++checked;
            });
    // sum over n of 2^n signatures times n^0 + ... + n^6 sequences
    CHECK(checked == 96642);
}

TEST_CASE("worked example 43142") {
    Signature sig = Signature::parse("+++-");
    SignedBlade r = canonicalize(std::string_view("43142"), sig);
    // -e312, and 312 is an even permutation of 123
    CHECK(r == SignedBlade{-1, label_blade("123")});
    CHECK(label_sign("312") == 1);
    CHECK(canonicalize(std::string_view("34142"), sig) == SignedBlade{1, label_blade("123")});
}

TEST_CASE("blade_mul matches canonicalize of the concatenation") {
    for (const Signature& sig : all_signatures(4))
        for (Blade a = 0; a < 16; ++a)
            for (Blade b = 0; b < 16; ++b) {
                std::string s = blade_string(a) + blade_string(b);
                std::vector<int> seq;
                for (char c : s)
                    if (c != '0') seq.push_back(c - '0');
                REQUIRE(blade_mul(a, b, sig) == canonicalize(seq, sig));
            }
}

TEST_CASE("blade squares") {
    Signature sig = Signature::parse("+++-");
    CHECK(blade_square(label_blade("4"), sig) == -1);
    CHECK(blade_square(label_blade("12"), sig) == -1);
    CHECK(blade_square(label_blade("34"), sig) == 1);
    CHECK(blade_square(label_blade("123"), sig) == -1);
    CHECK(blade_square(label_blade("1234"), sig) == -1);
    CHECK(blade_square(0, sig) == 1);
}

TEST_CASE("labels carry their sort sign") {
    CHECK(label_sign("21") == -1);
    CHECK(label_sign("1324") == -1);
    CHECK(label_sign("314") == -1);
    CHECK(label_sign("123") == 1);
    CHECK(label_sign("0") == 1);
    CHECK_THROWS_AS(label_sign("121"), domain_error);

    LabelMap lm({"32", "13", "21", "0", "1", "2", "3", "123"});
    auto [s, i] = lm.express({1, label_blade("23")});
    CHECK(s == -1);
    CHECK(lm.label(i) == "32");
    CHECK(blade_product("21", "13", Signature::parse("+++"), lm) == SignedLabel{-1, "32"});
    CHECK_THROWS_AS(LabelMap({"12", "21"}), config_error);
    CHECK_THROWS_AS(lm.index_of(std::string_view("31")), config_error);
}

TEST_CASE("signature parsing") {
    CHECK(Signature::parse("+++-").squares() == std::vector<int>{1, 1, 1, -1});
    CHECK(Signature::parse("+-").str() == "+-");
    CHECK_THROWS_AS(Signature::parse("+x"), config_error);
    CHECK_THROWS_AS(Signature({1, 2}), config_error);
    CHECK_THROWS_AS(Signature::parse("+").square(2), domain_error);
}

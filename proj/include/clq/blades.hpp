// Blade calculus: canonical forms and signed products of generator sequences.
#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clq {

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Squares of the generating vectors, generator k at position k-1.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<int> squares) : sq_(std::move(squares)) {
        for (int s : sq_)
            if (s != 1 && s != -1) throw config_error("signature entries must be +1 or -1");
        if (sq_.size() > 9) throw config_error("at most 9 generators");
    }

    // "+++-" style
    static Signature parse(std::string_view s) {
        std::vector<int> v;
        for (char c : s) {
            if (c == '+') v.push_back(1);
            else if (c == '-') v.push_back(-1);
            else throw config_error("bad signature character");
        }
        return Signature(std::move(v));
    }

    int n() const { return static_cast<int>(sq_.size()); }
    int square(int k) const {
        if (k < 1 || k > n()) throw domain_error("generator index out of range");
        return sq_[k - 1];
    }
    const std::vector<int>& squares() const { return sq_; }
    std::string str() const {
        std::string s;
        for (int v : sq_) s += v > 0 ? '+' : '-';
        return s;
    }
    bool operator==(const Signature&) const = default;

private:
    std::vector<int> sq_;
};

// Set of generators, bit k-1 for generator k. The empty set is the unit.
using Blade = std::uint32_t;

struct SignedBlade {
    int sign = 1;
    Blade blade = 0;
    bool operator==(const SignedBlade&) const = default;
};

inline int grade(Blade b) { return std::popcount(b); }

// Increasing index string, "0" for the unit.
inline std::string blade_string(Blade b) {
    if (b == 0) return "0";
    std::string s;
    for (int k = 1; k <= 32; ++k)
        if (b & (Blade(1) << (k - 1))) s += char('0' + k);
    return s;
}

// Parse a label like "1324" into its generator sequence; "0" is empty.
inline std::vector<int> label_sequence(std::string_view label) {
    std::vector<int> seq;
    if (label == "0") return seq;
    if (label.empty()) throw domain_error("empty label");
    for (char c : label) {
        if (c < '1' || c > '9') throw domain_error("bad label character");
        seq.push_back(c - '0');
    }
    return seq;
}

// Reduce a generator sequence by adjacent moves: a swap of distinct neighbours
// costs -1, a neighbouring equal pair (k,k) contracts to the square of k.
inline SignedBlade canonicalize(std::vector<int> seq, const Signature& sig) {
    for (int k : seq)
        if (k < 1 || k > sig.n()) throw domain_error("generator index out of range");
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < seq.size();) {
            if (seq[i] == seq[i + 1]) {
                sign *= sig.square(seq[i]);
                seq.erase(seq.begin() + i, seq.begin() + i + 2);
                changed = true;
                continue;
            }
            if (seq[i] > seq[i + 1]) {
                std::swap(seq[i], seq[i + 1]);
                sign = -sign;
                changed = true;
            }
            ++i;
        }
    }
    Blade b = 0;
    for (int k : seq) b |= Blade(1) << (k - 1);
    return {sign, b};
}

inline SignedBlade canonicalize(std::string_view digits, const Signature& sig) {
    return canonicalize(label_sequence(digits), sig);
}

// Product of two canonical blades.
inline SignedBlade blade_mul(Blade a, Blade b, const Signature& sig) {
    int swaps = 0;
    for (Blade rest = b; rest; rest &= rest - 1) {
        int k = std::countr_zero(rest);
        swaps += std::popcount(a >> (k + 1));
    }
    int sign = (swaps & 1) ? -1 : 1;
    for (Blade common = a & b; common; common &= common - 1)
        sign *= sig.square(std::countr_zero(common) + 1);
    return {sign, a ^ b};
}

inline int blade_square(Blade a, const Signature& sig) {
    int k = grade(a);
    int s = ((k * (k - 1) / 2) & 1) ? -1 : 1;
    for (Blade r = a; r; r &= r - 1) s *= sig.square(std::countr_zero(r) + 1);
    return s;
}

// Parity of the permutation sorting a label of distinct indices.
inline int label_sign(std::string_view label) {
    auto seq = label_sequence(label);
    int inv = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j]) throw domain_error("repeated index in label");
            if (seq[i] > seq[j]) ++inv;
        }
    return (inv & 1) ? -1 : 1;
}

inline Blade label_blade(std::string_view label) {
    Blade b = 0;
    for (int k : label_sequence(label)) b |= Blade(1) << (k - 1);
    return b;
}

struct SignedLabel {
    int sign = 1;
    std::string label;
    bool operator==(const SignedLabel&) const = default;
};

// Bijection between display labels and canonical blades. Each label carries the
// sign taking it to increasing order, so e_label = sign * e_blade.
class LabelMap {
public:
    LabelMap() = default;
    explicit LabelMap(const std::vector<std::string>& labels) : labels_(labels) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            Blade b = label_blade(labels[i]);
            if (!by_blade_.emplace(b, int(i)).second)
                throw config_error("duplicate blade in label list: " + labels[i]);
            signs_.push_back(label_sign(labels[i]));
            blades_.push_back(b);
        }
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(int i) const { return labels_.at(i); }
    Blade blade(int i) const { return blades_.at(i); }
    int sign(int i) const { return signs_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    bool contains(Blade b) const { return by_blade_.count(b) != 0; }
    int index_of(Blade b) const {
        auto it = by_blade_.find(b);
        if (it == by_blade_.end()) throw config_error("blade missing from label list: " + blade_string(b));
        return it->second;
    }
    int index_of(std::string_view label) const {
        int i = index_of(label_blade(label));
        if (labels_[i] != label) throw config_error("label not in list: " + std::string(label));
        return i;
    }

    // Express a signed canonical blade against the listed label.
    std::pair<int, int> express(SignedBlade sb) const {
        int i = index_of(sb.blade);
        return {sb.sign * signs_[i], i};
    }

private:
    std::vector<std::string> labels_;
    std::vector<Blade> blades_;
    std::vector<int> signs_;
    std::map<Blade, int> by_blade_;
};

// Product of two labels, expressed against the resulting blade's listed label.
inline SignedLabel blade_product(std::string_view a, std::string_view b, const Signature& sig,
                                 const LabelMap& labels) {
    auto seq = label_sequence(a);
    auto rhs = label_sequence(b);
    seq.insert(seq.end(), rhs.begin(), rhs.end());
    auto [s, i] = labels.express(canonicalize(seq, sig));
    return {s, labels.label(i)};
}

}  // namespace clq

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "permstat/permutation.hpp"

namespace permstat {

// Subexceedant sequence (l_1,...,l_n) with 1 <= l_i <= i, i.e. an element of
// L_n. Image set of the Lehmer, A and B codes.
class CodeVector {
public:
    explicit CodeVector(std::vector<int> entries) : entries_(std::move(entries)) {
        const int n = static_cast<int>(entries_.size());
        if (n < 1) throw validation_error("code vector must be nonempty");
        for (int i = 1; i <= n; ++i) {
            const int v = entries_[static_cast<std::size_t>(i - 1)];
            if (v < 1 || v > i)
                throw validation_error("entry " + std::to_string(v) + " at position " +
                                       std::to_string(i) + " lies outside [1," +
                                       std::to_string(i) + "]");
        }
    }

    int degree() const { return static_cast<int>(entries_.size()); }
    int at(int pos) const { return entries_[static_cast<std::size_t>(pos - 1)]; }
    const std::vector<int>& entries() const { return entries_; }

    bool operator==(const CodeVector& other) const { return entries_ == other.entries_; }
    bool operator!=(const CodeVector& other) const { return entries_ != other.entries_; }

    // "(1,1,3,2,5,5,5)"
    std::string to_string() const {
        std::string out = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i > 0) out += ',';
            out += std::to_string(entries_[i]);
        }
        out += ')';
        return out;
    }

private:
    std::vector<int> entries_;
};

// Accepts "(1,1,3,2,5,5,5)" and also bare comma/space separated entries.
inline CodeVector parse_code_vector(const std::string& text) {
    std::vector<int> entries;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(token, &pos);
        } catch (const std::exception&) {
            throw validation_error("invalid code entry '" + token + "'");
        }
        if (pos != token.size())
            throw validation_error("invalid code entry '" + token + "'");
        entries.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (c == '(' || c == ')' || c == '[' || c == ']') {
            flush();
        } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            token += c;
        }
    }
    flush();
    if (entries.empty()) throw validation_error("empty code vector");
    return CodeVector(std::move(entries));
}

// A subset of [n]. Used both for place-valued and letter-valued statistics.
struct PositionSet {
    int n = 0;
    std::vector<int> members;  // strictly increasing

    PositionSet() = default;
    PositionSet(int degree, std::vector<int> values) : n(degree), members(std::move(values)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (int v : members)
            if (v < 1 || v > n)
                throw validation_error("set member " + std::to_string(v) + " outside [1," +
                                       std::to_string(n) + "]");
    }

    bool contains(int v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }
    std::size_t size() const { return members.size(); }

    bool operator==(const PositionSet& other) const { return members == other.members; }
    bool operator!=(const PositionSet& other) const { return !(*this == other); }

    // "{1,2,5}", "{}" when empty
    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i > 0) out += ',';
            out += std::to_string(members[i]);
        }
        out += '}';
        return out;
    }
};

// A set of ordered index pairs (i,j) with 1 <= i < j <= n.
struct PairSet {
    int n = 0;
    std::vector<std::pair<int, int>> pairs;  // sorted lexicographically

    PairSet() = default;
    PairSet(int degree, std::vector<std::pair<int, int>> values)
        : n(degree), pairs(std::move(values)) {
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        for (const auto& [i, j] : pairs)
            if (i < 1 || j > n || i >= j)
                throw validation_error("pair (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") is not an ordered pair in [1," + std::to_string(n) +
                                       "]");
    }

    std::size_t size() const { return pairs.size(); }

    bool operator==(const PairSet& other) const { return pairs == other.pairs; }
    bool operator!=(const PairSet& other) const { return !(*this == other); }

    // "{(1,3),(2,3),(2,4),(5,6),(5,7),(6,7)}"
    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (i > 0) out += ',';
            out += '(' + std::to_string(pairs[i].first) + ',' + std::to_string(pairs[i].second) +
                   ')';
        }
        out += '}';
        return out;
    }
};

// Lehmer code: l_i = #{ j <= i : sigma_j <= sigma_i }.
inline CodeVector lehmer(const Permutation& p) {
    const int n = p.degree();
    std::vector<int> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        int count = 0;
        for (int j = 1; j <= i; ++j)
            if (p.at(j) <= p.at(i)) ++count;
        entries.push_back(count);
    }
    return CodeVector(std::move(entries));
}

// Unique preimage of the Lehmer code: walking i = n..1, sigma_i is the l_i-th
// smallest value not already used to the right.
inline Permutation lehmer_inverse(const CodeVector& c) {
    const int n = c.degree();
    std::vector<int> remaining(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), 1);
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    for (int i = n; i >= 1; --i) {
        const std::size_t idx = static_cast<std::size_t>(c.at(i) - 1);
        w[static_cast<std::size_t>(i - 1)] = remaining[idx];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return Permutation(std::move(w));
}

inline CodeVector a_code(const Permutation& p) { return lehmer(inverse(p)); }

inline Permutation a_code_inverse(const CodeVector& c) {
    return inverse(lehmer_inverse(c));
}

// B-code: b_i = i when i is the minimum of its cycle, otherwise the first
// element smaller than i met when walking i's cycle against the arrows.
inline CodeVector b_code(const Permutation& p) {
    const int n = p.degree();
    const Permutation inv = inverse(p);
    std::vector<int> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        int j = inv.at(i);
        while (j > i) j = inv.at(j);
        entries.push_back(j);
    }
    return CodeVector(std::move(entries));
}

// Rebuild from a B-code: scan i = 1..n, opening the cycle (i) when b_i = i and
// otherwise splicing i immediately after b_i in b_i's cycle.
inline Permutation b_code_inverse(const CodeVector& c) {
    const int n = c.degree();
    std::vector<std::vector<int>> cycles;
    for (int i = 1; i <= n; ++i) {
        const int b = c.at(i);
        if (b == i) {
            cycles.push_back({i});
            continue;
        }
        bool spliced = false;
        for (auto& cyc : cycles) {
            auto it = std::find(cyc.begin(), cyc.end(), b);
            if (it != cyc.end()) {
                cyc.insert(it + 1, i);
                spliced = true;
                break;
            }
        }
        if (!spliced)
            throw validation_error("b-code entry " + std::to_string(b) +
                                   " does not name an existing cycle element");
    }
    CycleDecomposition dec;
    dec.cycles = std::move(cycles);
    return from_cycles(dec);
}

// Induced set of a code vector. S starts as {1..n}; for i = n..1 the l_i-th
// smallest element l' of S is selected, the pairs (l', j) for j in S, j > l'
// are collected, and l' is removed. The content of the result, not just its
// size, is contractual.
inline PairSet induced_set(const CodeVector& c) {
    const int n = c.degree();
    std::vector<int> s(static_cast<std::size_t>(n));
    std::iota(s.begin(), s.end(), 1);
    std::vector<std::pair<int, int>> pairs;
    for (int i = n; i >= 1; --i) {
        const std::size_t idx = static_cast<std::size_t>(c.at(i) - 1);
        const int selected = s[idx];
        for (std::size_t k = idx + 1; k < s.size(); ++k) pairs.emplace_back(selected, s[k]);
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return PairSet(n, std::move(pairs));
}

// O(c) = { i : l_i = 1 }. Always contains 1.
inline PositionSet ones_set(const CodeVector& c) {
    std::vector<int> members;
    for (int i = 1; i <= c.degree(); ++i)
        if (c.at(i) == 1) members.push_back(i);
    return PositionSet(c.degree(), std::move(members));
}

// Odometer over L_n in lexicographic order; yields all n! code vectors.
class CodeRange {
public:
    explicit CodeRange(int n) : n_(n) {
        if (n < 1) throw validation_error("degree must be >= 1");
    }

    class iterator {
    public:
        iterator(int n, bool at_end)
            : entries_(static_cast<std::size_t>(n), 1), done_(at_end) {}

        CodeVector operator*() const { return CodeVector(entries_); }

        iterator& operator++() {
            int i = static_cast<int>(entries_.size());
            while (i >= 1) {
                if (entries_[static_cast<std::size_t>(i - 1)] < i) {
                    ++entries_[static_cast<std::size_t>(i - 1)];
                    return *this;
                }
                entries_[static_cast<std::size_t>(i - 1)] = 1;
                --i;
            }
            done_ = true;
            return *this;
        }

        bool operator==(const iterator& other) const {
            return done_ == other.done_ && (done_ || entries_ == other.entries_);
        }
        bool operator!=(const iterator& other) const { return !(*this == other); }

    private:
        std::vector<int> entries_;
        bool done_;
    };

    iterator begin() const { return iterator(n_, false); }
    iterator end() const { return iterator(n_, true); }

private:
    int n_;
};

inline CodeRange all_codes(int n, int cap = kDefaultDegreeCap) {
    if (n < 1) throw validation_error("degree must be >= 1");
    if (n > cap)
        throw resource_error("degree " + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
    return CodeRange(n);
}

}  // namespace permstat

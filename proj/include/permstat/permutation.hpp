#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "permstat/errors.hpp"

namespace permstat {

// Degree cap for exhaustive enumeration. 10! ~ 3.6M words is comfortable on a
// desktop; callers can raise it explicitly.
inline constexpr int kDefaultDegreeCap = 10;

// Lexicographic ranks live in uint64_t, so 20! is a hard ceiling.
inline constexpr int kRankLimit = 20;

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

class LexPermutationIterator;

// A permutation of [n] = {1,...,n} in one-line notation. Positions and values
// are 1-indexed at every public interface; the flat word vector is 0-indexed
// storage only. Immutable after construction.
class Permutation {
public:
    explicit Permutation(std::vector<int> word) : word_(std::move(word)) {
        validate(word_);
    }

    static Permutation identity(int n) {
        if (n < 1) throw validation_error("permutation degree must be >= 1");
        std::vector<int> w(static_cast<std::size_t>(n));
        std::iota(w.begin(), w.end(), 1);
        return Permutation(std::move(w), unchecked_tag{});
    }

    int degree() const { return static_cast<int>(word_.size()); }

    // sigma(i), 1-indexed.
    int at(int pos) const { return word_[static_cast<std::size_t>(pos - 1)]; }
    int operator()(int pos) const { return at(pos); }

    const std::vector<int>& word() const { return word_; }

    bool operator==(const Permutation& other) const { return word_ == other.word_; }
    bool operator!=(const Permutation& other) const { return word_ != other.word_; }
    bool operator<(const Permutation& other) const { return word_ < other.word_; }

    // Canonical text form: space-separated values, "2 4 1 3 7 6 5".
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < word_.size(); ++i) {
            if (i > 0) out += ' ';
            out += std::to_string(word_[i]);
        }
        return out;
    }

private:
    struct unchecked_tag {};
    Permutation(std::vector<int> word, unchecked_tag) : word_(std::move(word)) {}

    // Throws naming the first duplicate value, or the smallest missing one.
    static void validate(const std::vector<int>& w) {
        const int n = static_cast<int>(w.size());
        if (n < 1) throw validation_error("permutation degree must be >= 1");
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        bool out_of_range = false;
        for (int v : w) {
            if (v < 1 || v > n) {
                out_of_range = true;
                continue;
            }
            if (seen[static_cast<std::size_t>(v)])
                throw validation_error("not a permutation: duplicate value " + std::to_string(v));
            seen[static_cast<std::size_t>(v)] = true;
        }
        if (out_of_range || std::find(seen.begin() + 1, seen.end(), false) != seen.end()) {
            for (int v = 1; v <= n; ++v)
                if (!seen[static_cast<std::size_t>(v)])
                    throw validation_error("not a permutation: missing value " + std::to_string(v));
        }
    }

    friend class LexPermutationIterator;
    std::vector<int> word_;
};

// Accepts whitespace/comma separated integers, or a contiguous digit string
// ("2413765", legal only while every value is a single digit).
inline Permutation parse_permutation(const std::string& text) {
    std::vector<int> word;
    const bool has_separator =
        text.find_first_of(" \t,\n\r") != std::string::npos;
    std::string digits;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) digits += c;
    const bool all_digits =
        !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        });

    if (!has_separator && all_digits && digits.size() >= 2) {
        for (char c : digits) word.push_back(c - '0');
        return Permutation(std::move(word));
    }

    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(token, &pos);
        } catch (const std::exception&) {
            throw validation_error("invalid permutation token '" + token + "'");
        }
        if (pos != token.size())
            throw validation_error("invalid permutation token '" + token + "'");
        word.push_back(v);
        token.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',')
            flush();
        else
            token += c;
    }
    flush();
    if (word.empty()) throw validation_error("empty permutation");
    return Permutation(std::move(word));
}

inline Permutation inverse(const Permutation& p) {
    const int n = p.degree();
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(p.at(i) - 1)] = i;
    return Permutation(std::move(w));
}

inline Permutation reverse(const Permutation& p) {
    std::vector<int> w(p.word().rbegin(), p.word().rend());
    return Permutation(std::move(w));
}

inline Permutation complement(const Permutation& p) {
    const int n = p.degree();
    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(n));
    for (int v : p.word()) w.push_back(n + 1 - v);
    return Permutation(std::move(w));
}

// Canonical form: every cycle starts at its minimum element, cycles listed by
// increasing minimum. This makes reverse-direction walks well defined.
struct CycleDecomposition {
    std::vector<std::vector<int>> cycles;

    std::string to_string() const {
        std::string out;
        for (const auto& cyc : cycles) {
            out += '(';
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                if (i > 0) out += ' ';
                out += std::to_string(cyc[i]);
            }
            out += ')';
        }
        return out;
    }
};

inline CycleDecomposition cycles(const Permutation& p) {
    const int n = p.degree();
    CycleDecomposition dec;
    std::vector<bool> visited(static_cast<std::size_t>(n) + 1, false);
    for (int start = 1; start <= n; ++start) {
        if (visited[static_cast<std::size_t>(start)]) continue;
        std::vector<int> cyc;
        int v = start;
        do {
            visited[static_cast<std::size_t>(v)] = true;
            cyc.push_back(v);
            v = p.at(v);
        } while (v != start);
        dec.cycles.push_back(std::move(cyc));
    }
    return dec;
}

inline Permutation from_cycles(const CycleDecomposition& dec) {
    int n = 0;
    for (const auto& cyc : dec.cycles) n += static_cast<int>(cyc.size());
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    for (const auto& cyc : dec.cycles) {
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            int from = cyc[k];
            int to = cyc[(k + 1) % cyc.size()];
            if (from < 1 || from > n || w[static_cast<std::size_t>(from - 1)] != 0)
                throw validation_error("cycles do not partition [n]");
            w[static_cast<std::size_t>(from - 1)] = to;
        }
    }
    return Permutation(std::move(w));
}

// Rank of the one-line word among all of S_n in lexicographic order, 0-based.
inline std::uint64_t lex_rank(const Permutation& p) {
    const int n = p.degree();
    std::uint64_t rank = 0;
    std::vector<int> remaining(p.word());
    std::sort(remaining.begin(), remaining.end());
    for (int i = 0; i < n; ++i) {
        auto it = std::lower_bound(remaining.begin(), remaining.end(), p.at(i + 1));
        rank += static_cast<std::uint64_t>(it - remaining.begin()) * factorial(n - 1 - i);
        remaining.erase(it);
    }
    return rank;
}

inline Permutation lex_unrank(int n, std::uint64_t rank) {
    if (n < 1 || n > kRankLimit) throw resource_error("degree out of rankable range");
    std::vector<int> remaining(static_cast<std::size_t>(n));
    std::iota(remaining.begin(), remaining.end(), 1);
    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::uint64_t f = factorial(n - 1 - i);
        const std::size_t d = static_cast<std::size_t>(rank / f);
        rank %= f;
        w.push_back(remaining[d]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(d));
    }
    return Permutation(std::move(w));
}

// Forward iterator over a contiguous lexicographic range of S_n. The same
// range always yields the same sequence, so ranges can be consumed in
// parallel workers and re-consumed for verification.
class LexPermutationIterator {
public:
    using value_type = Permutation;

    LexPermutationIterator(int n, std::uint64_t rank, std::uint64_t end_rank)
        : current_(lex_unrank(n, rank < end_rank ? rank : 0)), left_(end_rank - rank) {
        if (rank >= end_rank) left_ = 0;
    }

    const Permutation& operator*() const { return current_; }
    const Permutation* operator->() const { return &current_; }

    LexPermutationIterator& operator++() {
        --left_;
        if (left_ > 0) std::next_permutation(current_.word_.begin(), current_.word_.end());
        return *this;
    }

    bool done() const { return left_ == 0; }

private:
    Permutation current_;
    std::uint64_t left_;
};

struct LexPermutationSentinel {};

inline bool operator==(const LexPermutationIterator& it, LexPermutationSentinel) {
    return it.done();
}
inline bool operator!=(const LexPermutationIterator& it, LexPermutationSentinel s) {
    return !(it == s);
}

// The half-open rank range [begin_rank, end_rank) of S_n in lexicographic
// order of the one-line word.
class PermutationRange {
public:
    PermutationRange(int n, std::uint64_t begin_rank, std::uint64_t end_rank)
        : n_(n), begin_(begin_rank), end_(end_rank) {
        if (n < 1) throw validation_error("degree must be >= 1");
        if (n > kRankLimit) throw resource_error("degree exceeds rankable range");
        const std::uint64_t total = factorial(n);
        if (begin_ > end_ || end_ > total)
            throw validation_error("invalid lexicographic rank range");
    }

    int degree() const { return n_; }
    std::uint64_t size() const { return end_ - begin_; }
    std::uint64_t begin_rank() const { return begin_; }
    std::uint64_t end_rank() const { return end_; }

    PermutationRange slice(std::uint64_t lo, std::uint64_t hi) const {
        return PermutationRange(n_, begin_ + lo, begin_ + hi);
    }

    LexPermutationIterator begin() const { return LexPermutationIterator(n_, begin_, end_); }
    LexPermutationSentinel end() const { return LexPermutationSentinel{}; }

private:
    int n_;
    std::uint64_t begin_;
    std::uint64_t end_;
};

// The full stream of S_n, refused above the cap.
inline PermutationRange all_perms(int n, int cap = kDefaultDegreeCap) {
    if (n < 1) throw validation_error("degree must be >= 1");
    if (n > cap)
        throw resource_error("degree " + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
    return PermutationRange(n, 0, factorial(n));
}

}  // namespace permstat

#pragma once

#include <string>
#include <vector>

#include "permstat/codes.hpp"
#include "permstat/permutation.hpp"

namespace permstat {

// phi = B^{-1} after A; carries (Inv, Rmil, Lmap, Lmil) to (Sor, Cyc, Lmap, Lmic1).
inline Permutation phi(const Permutation& p) { return b_code_inverse(a_code(p)); }

inline Permutation phi_inverse(const Permutation& p) { return a_code_inverse(b_code(p)); }

// Foata's second fundamental transformation, in the direction
// maj(input) = inv(output). Extends the image one letter at a time: with the
// image gamma ending in b and the next letter a, cut gamma after every letter
// < a when b < a (after every letter > a when b > a), move the last letter of
// each block to its front, then append a.
inline Permutation foata(const Permutation& p) {
    const int n = p.degree();
    std::vector<int> gamma;
    gamma.reserve(static_cast<std::size_t>(n));
    gamma.push_back(p.at(1));
    for (int i = 2; i <= n; ++i) {
        const int a = p.at(i);
        const bool cut_below = gamma.back() < a;
        std::vector<int> next;
        next.reserve(gamma.size() + 1);
        std::size_t block_start = 0;
        for (std::size_t k = 0; k < gamma.size(); ++k) {
            const bool cut = cut_below ? gamma[k] < a : gamma[k] > a;
            if (!cut) continue;
            next.push_back(gamma[k]);
            for (std::size_t t = block_start; t < k; ++t) next.push_back(gamma[t]);
            block_start = k + 1;
        }
        next.push_back(a);
        gamma = std::move(next);
    }
    return Permutation(std::move(gamma));
}

inline bool is_map_name(const std::string& name) {
    return name == "i" || name == "r" || name == "c" || name == "phi" ||
           name == "phi-inv" || name == "psi";
}

inline Permutation apply_named_map(const std::string& name, const Permutation& p) {
    if (name == "i") return inverse(p);
    if (name == "r") return reverse(p);
    if (name == "c") return complement(p);
    if (name == "phi") return phi(p);
    if (name == "phi-inv") return phi_inverse(p);
    if (name == "psi") return foata(p);
    throw validation_error("unknown map '" + name + "'");
}

// Map expressions compose with "." and apply left to right: "i.r" applies i
// first, then r.
inline Permutation apply_map_expr(const std::string& expr, const Permutation& p) {
    if (expr.empty()) throw validation_error("empty map expression");
    Permutation result = p;
    std::string token;
    auto apply = [&] {
        if (token.empty()) throw validation_error("empty map name in '" + expr + "'");
        result = apply_named_map(token, result);
        token.clear();
    };
    for (char c : expr) {
        if (c == '.')
            apply();
        else
            token += c;
    }
    apply();
    return result;
}

}  // namespace permstat

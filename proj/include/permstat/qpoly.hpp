#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "permstat/errors.hpp"

namespace permstat {

// Formal variables of distribution polynomials, in canonical order.
enum : int { kVarQ = 0, kVarX = 1, kVarY = 2, kVarZ = 3 };
inline constexpr int kNumVars = 4;
inline constexpr std::array<const char*, kNumVars> kVarNames = {"q", "x", "y", "z"};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in polynomial coefficient");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in polynomial coefficient");
    return r;
}

inline std::int64_t checked_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

struct Monomial {
    std::array<int, kNumVars> exps{0, 0, 0, 0};

    auto operator<=>(const Monomial&) const = default;
};

// Exact integer-coefficient polynomial in q, x, y, z. Terms are kept in a
// sparse exponent map with no stored zeros; coefficient arithmetic is checked
// 64-bit, never silent wraparound.
class Polynomial {
public:
    Polynomial() = default;

    static Polynomial constant(std::int64_t c) {
        Polynomial p;
        p.add_term(Monomial{}, c);
        return p;
    }

    static Polynomial variable(int var, int power = 1) {
        Monomial m;
        m.exps[static_cast<std::size_t>(var)] = power;
        Polynomial p;
        p.add_term(m, 1);
        return p;
    }

    static Polynomial term(const Monomial& m, std::int64_t coeff) {
        Polynomial p;
        p.add_term(m, coeff);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, std::int64_t>& terms() const { return terms_; }

    std::int64_t coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(const Monomial& m, std::int64_t coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.emplace(m, coeff);
        if (!inserted) {
            it->second = checked_add(it->second, coeff);
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& other) {
        for (const auto& [m, c] : other.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& other) {
        for (const auto& [m, c] : other.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial prod;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                for (int v = 0; v < kNumVars; ++v)
                    m.exps[static_cast<std::size_t>(v)] =
                        ma.exps[static_cast<std::size_t>(v)] + mb.exps[static_cast<std::size_t>(v)];
                prod.add_term(m, checked_mul(ca, cb));
            }
        }
        return prod;
    }

    bool operator==(const Polynomial& other) const { return terms_ == other.terms_; }
    bool operator!=(const Polynomial& other) const { return !(*this == other); }

    std::int64_t eval(std::int64_t q0, std::int64_t x0, std::int64_t y0,
                      std::int64_t z0 = 1) const {
        const std::array<std::int64_t, kNumVars> vals = {q0, x0, y0, z0};
        std::int64_t total = 0;
        for (const auto& [m, c] : terms_) {
            std::int64_t t = c;
            for (int v = 0; v < kNumVars; ++v)
                t = checked_mul(t, checked_pow(vals[static_cast<std::size_t>(v)],
                                               m.exps[static_cast<std::size_t>(v)]));
            total = checked_add(total, t);
        }
        return total;
    }

    // Sum of all coefficients; n! for a distribution over S_n.
    std::int64_t total_mass() const { return eval(1, 1, 1, 1); }

    Polynomial substitute(int var, std::int64_t value) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            Monomial folded = m;
            const int e = folded.exps[static_cast<std::size_t>(var)];
            folded.exps[static_cast<std::size_t>(var)] = 0;
            out.add_term(folded, checked_mul(c, checked_pow(value, e)));
        }
        return out;
    }

    Polynomial swap_vars(int a, int b) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            Monomial swapped = m;
            std::swap(swapped.exps[static_cast<std::size_t>(a)],
                      swapped.exps[static_cast<std::size_t>(b)]);
            out.add_term(swapped, c);
        }
        return out;
    }

    int degree_in(int var) const {
        int d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m.exps[static_cast<std::size_t>(var)]);
        return d;
    }

    // Canonical text form, terms ascending by exponent vector:
    // "x^2*y + q*x*y^2", "1 + 2q + 2q^2 + q^3".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            const std::int64_t abs_c = c < 0 ? -c : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string vars;
            for (int v = 0; v < kNumVars; ++v) {
                const int e = m.exps[static_cast<std::size_t>(v)];
                if (e == 0) continue;
                if (!vars.empty()) vars += '*';
                vars += kVarNames[static_cast<std::size_t>(v)];
                if (e > 1) vars += '^' + std::to_string(e);
            }
            if (vars.empty()) {
                out += std::to_string(abs_c);
            } else {
                if (abs_c != 1) out += std::to_string(abs_c);
                out += vars;
            }
        }
        return out;
    }

private:
    std::map<Monomial, std::int64_t> terms_;
};

// [r]_q = 1 + q + q^2 + ... + q^{r-1}.
inline Polynomial q_integer(int r) {
    if (r < 1) throw validation_error("q-integer defined for r >= 1 only");
    Polynomial p;
    for (int t = 0; t < r; ++t) p.add_term(Monomial{{t, 0, 0, 0}}, 1);
    return p;
}

// xy * prod_{r=2}^{n} (x + [r]_q + y q^{r-1} - 1 - q^{r-1})
inline Polynomial closed_form_main(int n) {
    if (n < 1) throw validation_error("closed form defined for n >= 1 only");
    Polynomial acc = Polynomial::variable(kVarX) * Polynomial::variable(kVarY);
    for (int r = 2; r <= n; ++r) {
        Polynomial factor = Polynomial::variable(kVarX);
        factor += q_integer(r);
        factor += Polynomial::variable(kVarY) * Polynomial::variable(kVarQ, r - 1);
        factor -= Polynomial::constant(1);
        factor -= Polynomial::variable(kVarQ, r - 1);
        acc = acc * factor;
    }
    return acc;
}

// x * prod_{r=2}^{n} (x + [r]_q - 1)
inline Polynomial closed_form_petersen(int n) {
    if (n < 1) throw validation_error("closed form defined for n >= 1 only");
    Polynomial acc = Polynomial::variable(kVarX);
    for (int r = 2; r <= n; ++r) {
        Polynomial factor = Polynomial::variable(kVarX);
        factor += q_integer(r);
        factor -= Polynomial::constant(1);
        acc = acc * factor;
    }
    return acc;
}

}  // namespace permstat

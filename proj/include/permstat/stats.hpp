#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "permstat/codes.hpp"
#include "permstat/permutation.hpp"

namespace permstat {

enum class OrdinaryStat {
    inv,
    sor,
    cyc,
    maj,
    imaj,
    rmaj,
    chg,
    cochg,
    lmin,
    lmax,
    rmin,
    rmax,
    lmic1,
};

enum class SetStatBase {
    Inv,
    Sor,
    Cyc,
    Des,
    Lmil,
    Lmip,
    Lmal,
    Lmap,
    Rmil,
    Rmip,
    Rmal,
    Rmap,
    Lmic1,
};

// A set-valued statistic, optionally composed with the reflection
// Stat* = { n+1-v : v in Stat }. Starring a pair-valued kind is rejected.
struct SetStatKind {
    SetStatBase base;
    bool starred = false;

    bool operator==(const SetStatKind& other) const {
        return base == other.base && starred == other.starred;
    }
};

using SetValue = std::variant<PositionSet, PairSet>;

inline std::string set_value_to_string(const SetValue& v) {
    if (std::holds_alternative<PositionSet>(v)) return std::get<PositionSet>(v).to_string();
    return std::get<PairSet>(v).to_string();
}

inline bool is_pair_valued(SetStatBase base) {
    return base == SetStatBase::Inv || base == SetStatBase::Sor;
}

// ---------------------------------------------------------------------------
// Word-level scans. All work on any word of pairwise-distinct letters, which
// the shifted-cycle lemma needs; places are 1-indexed. The first letter is
// vacuously a left-to-right minimum and maximum, the last a right-to-left one.
// ---------------------------------------------------------------------------

inline std::vector<int> left_to_right_minima_places(std::span<const int> w) {
    std::vector<int> places;
    int best = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i == 0 || w[i] < best) {
            best = w[i];
            places.push_back(static_cast<int>(i) + 1);
        }
    }
    return places;
}

inline std::vector<int> left_to_right_maxima_places(std::span<const int> w) {
    std::vector<int> places;
    int best = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i == 0 || w[i] > best) {
            best = w[i];
            places.push_back(static_cast<int>(i) + 1);
        }
    }
    return places;
}

inline std::vector<int> right_to_left_minima_places(std::span<const int> w) {
    std::vector<int> places;
    int best = 0;
    for (std::size_t k = w.size(); k > 0; --k) {
        if (k == w.size() || w[k - 1] < best) {
            best = w[k - 1];
            places.push_back(static_cast<int>(k));
        }
    }
    std::reverse(places.begin(), places.end());
    return places;
}

inline std::vector<int> right_to_left_maxima_places(std::span<const int> w) {
    std::vector<int> places;
    int best = 0;
    for (std::size_t k = w.size(); k > 0; --k) {
        if (k == w.size() || w[k - 1] > best) {
            best = w[k - 1];
            places.push_back(static_cast<int>(k));
        }
    }
    std::reverse(places.begin(), places.end());
    return places;
}

inline std::vector<int> places_to_letters(std::span<const int> w, const std::vector<int>& places) {
    std::vector<int> letters;
    letters.reserve(places.size());
    for (int p : places) letters.push_back(w[static_cast<std::size_t>(p - 1)]);
    std::sort(letters.begin(), letters.end());
    return letters;
}

// Descent places { i : w_i > w_{i+1} }, a subset of [n-1].
inline std::vector<int> descent_places(std::span<const int> w) {
    std::vector<int> places;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] > w[i + 1]) places.push_back(static_cast<int>(i) + 1);
    return places;
}

// ---------------------------------------------------------------------------
// Ordinary statistics
// ---------------------------------------------------------------------------

inline int inv_stat(const Permutation& p) {
    const auto& w = p.word();
    int count = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[i] > w[j]) ++count;
    return count;
}

inline int cyc_stat(const Permutation& p) {
    const int n = p.degree();
    std::vector<bool> visited(static_cast<std::size_t>(n) + 1, false);
    int count = 0;
    for (int start = 1; start <= n; ++start) {
        if (visited[static_cast<std::size_t>(start)]) continue;
        ++count;
        for (int v = start; !visited[static_cast<std::size_t>(v)]; v = p.at(v))
            visited[static_cast<std::size_t>(v)] = true;
    }
    return count;
}

// The unique factorization sigma = (i_1 j_1)...(i_k j_k) with ascending j_r
// and i_r < j_r, produced by repeatedly moving the largest misplaced value
// into place. Re-multiplying the factors (rightmost first) reproduces sigma.
inline std::vector<std::pair<int, int>> sor_factorization(const Permutation& p) {
    const int n = p.degree();
    std::vector<int> w(static_cast<std::size_t>(n) + 1);
    std::vector<int> pos(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        w[static_cast<std::size_t>(i)] = p.at(i);
        pos[static_cast<std::size_t>(p.at(i))] = i;
    }
    std::vector<std::pair<int, int>> factors;
    for (int j = n; j >= 1; --j) {
        const int pj = pos[static_cast<std::size_t>(j)];
        if (pj == j) continue;
        const int other = w[static_cast<std::size_t>(j)];
        w[static_cast<std::size_t>(pj)] = other;
        w[static_cast<std::size_t>(j)] = j;
        pos[static_cast<std::size_t>(other)] = pj;
        pos[static_cast<std::size_t>(j)] = j;
        factors.emplace_back(pj, j);
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
}

inline int sor_stat(const Permutation& p) {
    int total = 0;
    for (const auto& [i, j] : sor_factorization(p)) total += j - i;
    return total;
}

inline int maj_of_word(std::span<const int> w) {
    int total = 0;
    for (int d : descent_places(w)) total += d;
    return total;
}

inline std::vector<int> reverse_complement_word(const Permutation& p) {
    const int n = p.degree();
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = n; i >= 1; --i) out.push_back(n + 1 - p.at(i));
    return out;
}

inline int ordinary_stat(const Permutation& p, OrdinaryStat kind) {
    const int n = p.degree();
    switch (kind) {
        case OrdinaryStat::inv:
            return inv_stat(p);
        case OrdinaryStat::sor:
            return sor_stat(p);
        case OrdinaryStat::cyc:
            return cyc_stat(p);
        case OrdinaryStat::maj:
            return maj_of_word(p.word());
        case OrdinaryStat::imaj:
            return maj_of_word(inverse(p).word());
        case OrdinaryStat::rmaj:
            return maj_of_word(reverse_complement_word(p));
        case OrdinaryStat::chg: {
            int total = 0;
            for (int d : descent_places(inverse(p).word())) total += n - d;
            return total;
        }
        case OrdinaryStat::cochg: {
            const auto des = descent_places(inverse(p).word());
            int total = 0;
            std::size_t k = 0;
            for (int i = 1; i <= n - 1; ++i) {
                if (k < des.size() && des[k] == i)
                    ++k;
                else
                    total += n - i;
            }
            return total;
        }
        case OrdinaryStat::lmin:
            return static_cast<int>(left_to_right_minima_places(p.word()).size());
        case OrdinaryStat::lmax:
            return static_cast<int>(left_to_right_maxima_places(p.word()).size());
        case OrdinaryStat::rmin:
            return static_cast<int>(right_to_left_minima_places(p.word()).size());
        case OrdinaryStat::rmax:
            return static_cast<int>(right_to_left_maxima_places(p.word()).size());
        case OrdinaryStat::lmic1:
            return static_cast<int>(ones_set(b_code(p)).size());
    }
    throw validation_error("unknown ordinary statistic");
}

// ---------------------------------------------------------------------------
// Set-valued statistics
// ---------------------------------------------------------------------------

inline PositionSet star(const PositionSet& s) {
    std::vector<int> members;
    members.reserve(s.members.size());
    for (int v : s.members) members.push_back(s.n + 1 - v);
    return PositionSet(s.n, std::move(members));
}

// The cycle of p containing 1, rotated so that 1 comes last.
inline std::vector<int> shifted_cycle_1(const Permutation& p) {
    std::vector<int> cyc;
    for (int v = p.at(1); v != 1; v = p.at(v)) cyc.push_back(v);
    cyc.push_back(1);
    return cyc;
}

inline SetValue set_stat(const Permutation& p, SetStatKind kind) {
    if (kind.starred && is_pair_valued(kind.base))
        throw validation_error("the * operation is undefined for pair-valued statistics");
    const int n = p.degree();
    const auto& w = p.word();

    if (kind.base == SetStatBase::Inv) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (p.at(i) > p.at(j)) pairs.emplace_back(i, j);
        return PairSet(n, std::move(pairs));
    }
    if (kind.base == SetStatBase::Sor) return induced_set(b_code(p));

    PositionSet result;
    switch (kind.base) {
        case SetStatBase::Cyc: {
            std::vector<int> minima;
            for (const auto& cyc : cycles(p).cycles) minima.push_back(cyc.front());
            result = PositionSet(n, std::move(minima));
            break;
        }
        case SetStatBase::Des:
            result = PositionSet(n, descent_places(w));
            break;
        case SetStatBase::Lmil:
            result = PositionSet(n, places_to_letters(w, left_to_right_minima_places(w)));
            break;
        case SetStatBase::Lmip:
            result = PositionSet(n, left_to_right_minima_places(w));
            break;
        case SetStatBase::Lmal:
            result = PositionSet(n, places_to_letters(w, left_to_right_maxima_places(w)));
            break;
        case SetStatBase::Lmap:
            result = PositionSet(n, left_to_right_maxima_places(w));
            break;
        case SetStatBase::Rmil:
            result = PositionSet(n, places_to_letters(w, right_to_left_minima_places(w)));
            break;
        case SetStatBase::Rmip:
            result = PositionSet(n, right_to_left_minima_places(w));
            break;
        case SetStatBase::Rmal:
            result = PositionSet(n, places_to_letters(w, right_to_left_maxima_places(w)));
            break;
        case SetStatBase::Rmap:
            result = PositionSet(n, right_to_left_maxima_places(w));
            break;
        case SetStatBase::Lmic1:
            result = ones_set(b_code(p));
            break;
        default:
            throw validation_error("unknown set-valued statistic");
    }
    if (kind.starred) return star(result);
    return result;
}

// ---------------------------------------------------------------------------
// Canonical statistic names ("inv", "sor", ..., "Rmil", "Lmic1", "Rmap*")
// ---------------------------------------------------------------------------

inline const char* ordinary_stat_name(OrdinaryStat kind) {
    switch (kind) {
        case OrdinaryStat::inv: return "inv";
        case OrdinaryStat::sor: return "sor";
        case OrdinaryStat::cyc: return "cyc";
        case OrdinaryStat::maj: return "maj";
        case OrdinaryStat::imaj: return "imaj";
        case OrdinaryStat::rmaj: return "rmaj";
        case OrdinaryStat::chg: return "chg";
        case OrdinaryStat::cochg: return "cochg";
        case OrdinaryStat::lmin: return "lmin";
        case OrdinaryStat::lmax: return "lmax";
        case OrdinaryStat::rmin: return "rmin";
        case OrdinaryStat::rmax: return "rmax";
        case OrdinaryStat::lmic1: return "lmic1";
    }
    return "?";
}

inline std::string set_stat_name(SetStatKind kind) {
    const char* base = "?";
    switch (kind.base) {
        case SetStatBase::Inv: base = "Inv"; break;
        case SetStatBase::Sor: base = "Sor"; break;
        case SetStatBase::Cyc: base = "Cyc"; break;
        case SetStatBase::Des: base = "Des"; break;
        case SetStatBase::Lmil: base = "Lmil"; break;
        case SetStatBase::Lmip: base = "Lmip"; break;
        case SetStatBase::Lmal: base = "Lmal"; break;
        case SetStatBase::Lmap: base = "Lmap"; break;
        case SetStatBase::Rmil: base = "Rmil"; break;
        case SetStatBase::Rmip: base = "Rmip"; break;
        case SetStatBase::Rmal: base = "Rmal"; break;
        case SetStatBase::Rmap: base = "Rmap"; break;
        case SetStatBase::Lmic1: base = "Lmic1"; break;
    }
    return kind.starred ? std::string(base) + "*" : std::string(base);
}

inline const std::vector<OrdinaryStat>& all_ordinary_stats() {
    static const std::vector<OrdinaryStat> kinds = {
        OrdinaryStat::inv,  OrdinaryStat::sor,   OrdinaryStat::cyc,  OrdinaryStat::maj,
        OrdinaryStat::imaj, OrdinaryStat::rmaj,  OrdinaryStat::chg,  OrdinaryStat::cochg,
        OrdinaryStat::lmin, OrdinaryStat::lmax,  OrdinaryStat::rmin, OrdinaryStat::rmax,
        OrdinaryStat::lmic1};
    return kinds;
}

inline const std::vector<SetStatBase>& all_set_stat_bases() {
    static const std::vector<SetStatBase> kinds = {
        SetStatBase::Inv,  SetStatBase::Sor,  SetStatBase::Cyc,  SetStatBase::Des,
        SetStatBase::Lmil, SetStatBase::Lmip, SetStatBase::Lmal, SetStatBase::Lmap,
        SetStatBase::Rmil, SetStatBase::Rmip, SetStatBase::Rmal, SetStatBase::Rmap,
        SetStatBase::Lmic1};
    return kinds;
}

inline bool try_parse_ordinary_stat(const std::string& name, OrdinaryStat& out) {
    for (OrdinaryStat k : all_ordinary_stats()) {
        if (name == ordinary_stat_name(k)) {
            out = k;
            return true;
        }
    }
    return false;
}

inline bool try_parse_set_stat(const std::string& name, SetStatKind& out) {
    std::string base = name;
    bool starred = false;
    if (!base.empty() && base.back() == '*') {
        starred = true;
        base.pop_back();
    }
    for (SetStatBase k : all_set_stat_bases()) {
        if (base == set_stat_name({k, false})) {
            out = {k, starred};
            return true;
        }
    }
    return false;
}

inline OrdinaryStat parse_ordinary_stat(const std::string& name) {
    OrdinaryStat out;
    if (!try_parse_ordinary_stat(name, out))
        throw validation_error("unknown ordinary statistic '" + name + "'");
    return out;
}

inline SetStatKind parse_set_stat(const std::string& name) {
    SetStatKind out;
    if (!try_parse_set_stat(name, out))
        throw validation_error("unknown set-valued statistic '" + name + "'");
    return out;
}

}  // namespace permstat

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "permstat/bijections.hpp"
#include "permstat/qpoly.hpp"
#include "permstat/stats.hpp"

namespace permstat::verify {

// Deliberate statistic corruptions, used to prove the harness can fail.
// inv_misprint counts ascents instead of inversions (the classic transcription
// slip sigma_i < sigma_j).
enum class Mutation {
    none,
    inv_misprint,
};

struct Caps {
    int numeric = 10;     // polynomial distributions and pointwise sweeps
    int set_valued = 8;   // multisets of serialized set tuples grow faster
};

struct Options {
    int workers = 0;  // 0 = hardware concurrency
    Caps caps;
    Mutation mutation = Mutation::none;
};

// ---------------------------------------------------------------------------
// Statistic tuples
// ---------------------------------------------------------------------------

// One slot of a statistic tuple: an ordinary statistic (optionally replaced by
// C(n,2) - stat), a set-valued statistic (optionally starred), or a gap.
// Gaps project the slot away from every claim.
struct TupleSlot {
    enum class Category { gap, ordinary, set_valued };

    Category category = Category::gap;
    OrdinaryStat ordinary = OrdinaryStat::inv;
    bool binom_complement = false;
    SetStatKind set{SetStatBase::Inv, false};

    static TupleSlot gap() { return TupleSlot{}; }
    static TupleSlot of(OrdinaryStat s, bool complement = false) {
        TupleSlot slot;
        slot.category = Category::ordinary;
        slot.ordinary = s;
        slot.binom_complement = complement;
        return slot;
    }
    static TupleSlot of(SetStatKind s) {
        TupleSlot slot;
        slot.category = Category::set_valued;
        slot.set = s;
        return slot;
    }
    static TupleSlot of(SetStatBase base, bool starred = false) {
        return of(SetStatKind{base, starred});
    }

    std::string name() const {
        switch (category) {
            case Category::gap:
                return "-";
            case Category::ordinary:
                return binom_complement ? "C(n,2)-" + std::string(ordinary_stat_name(ordinary))
                                        : ordinary_stat_name(ordinary);
            case Category::set_valued:
                return set_stat_name(set);
        }
        return "?";
    }
};

struct StatTuple {
    std::vector<TupleSlot> slots;

    StatTuple() = default;
    StatTuple(std::initializer_list<TupleSlot> list) : slots(list) {}
    explicit StatTuple(std::vector<TupleSlot> list) : slots(std::move(list)) {}

    std::size_t arity() const {
        std::size_t k = 0;
        for (const auto& s : slots)
            if (s.category != TupleSlot::Category::gap) ++k;
        return k;
    }

    bool all_ordinary() const {
        for (const auto& s : slots)
            if (s.category == TupleSlot::Category::set_valued) return false;
        return true;
    }

    bool all_set_valued() const {
        for (const auto& s : slots)
            if (s.category == TupleSlot::Category::ordinary) return false;
        return true;
    }

    std::string name() const {
        std::string out = "(";
        for (std::size_t i = 0; i < slots.size(); ++i) {
            if (i > 0) out += ',';
            out += slots[i].name();
        }
        return out + ")";
    }
};

// Parses one slot name: "-" gap, lowercase ordinary, capitalized set kind.
inline TupleSlot parse_tuple_slot(const std::string& name) {
    if (name == "-") return TupleSlot::gap();
    OrdinaryStat ord;
    if (try_parse_ordinary_stat(name, ord)) return TupleSlot::of(ord);
    SetStatKind set;
    if (try_parse_set_stat(name, set)) return TupleSlot::of(set);
    throw validation_error("unknown statistic '" + name + "'");
}

inline StatTuple parse_stat_tuple(const std::vector<std::string>& names) {
    StatTuple t;
    for (const auto& n : names) t.slots.push_back(parse_tuple_slot(n));
    return t;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

inline int eval_ordinary(const Permutation& p, OrdinaryStat kind, Mutation mutation) {
    if (mutation == Mutation::inv_misprint && kind == OrdinaryStat::inv) {
        const auto& w = p.word();
        int count = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                if (w[i] < w[j]) ++count;
        return count;
    }
    return ordinary_stat(p, kind);
}

inline std::int64_t eval_slot_numeric(const Permutation& p, const TupleSlot& slot,
                                      Mutation mutation) {
    const std::int64_t v = eval_ordinary(p, slot.ordinary, mutation);
    if (!slot.binom_complement) return v;
    const std::int64_t n = p.degree();
    return n * (n - 1) / 2 - v;
}

inline std::string eval_slot_string(const Permutation& p, const TupleSlot& slot,
                                    Mutation mutation) {
    if (slot.category == TupleSlot::Category::ordinary)
        return std::to_string(eval_slot_numeric(p, slot, mutation));
    return set_value_to_string(set_stat(p, slot.set));
}

// Canonical serialization of a whole value tuple, "(6,{1,3,5},{1,2})".
inline std::string eval_tuple_string(const Permutation& p, const StatTuple& t,
                                     Mutation mutation) {
    std::string out = "(";
    bool first = true;
    for (const auto& slot : t.slots) {
        if (slot.category == TupleSlot::Category::gap) continue;
        if (!first) out += ',';
        first = false;
        out += eval_slot_string(p, slot, mutation);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// Parallel enumeration: S_n is cut into contiguous lexicographic rank ranges,
// one result per range, folded in range order so outcomes are identical for
// every worker count.
// ---------------------------------------------------------------------------

inline int resolve_workers(const Options& opts) {
    if (opts.workers > 0) return opts.workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

template <typename Result, typename Work>
std::vector<Result> map_ranges(int n, const Options& opts, Work work) {
    const std::uint64_t total = factorial(n);
    std::uint64_t workers = static_cast<std::uint64_t>(resolve_workers(opts));
    if (workers > total) workers = total;
    if (workers <= 1) {
        std::vector<Result> out;
        out.push_back(work(PermutationRange(n, 0, total)));
        return out;
    }
    std::vector<PermutationRange> ranges;
    const std::uint64_t chunk = total / workers;
    const std::uint64_t rem = total % workers;
    std::uint64_t lo = 0;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t hi = lo + chunk + (w < rem ? 1 : 0);
        ranges.emplace_back(n, lo, hi);
        lo = hi;
    }
    std::vector<std::future<Result>> futures;
    futures.reserve(ranges.size());
    for (const auto& r : ranges)
        futures.push_back(std::async(std::launch::async, [&work, r] { return work(r); }));
    std::vector<Result> out;
    out.reserve(futures.size());
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Counterexample {
    std::vector<Permutation> perms;  // offending permutation(s), when pointwise
    std::string lhs;
    std::string rhs;
    std::string description;
};

struct VerificationReport {
    std::string theorem_id;
    int n = 0;
    bool passed = true;
    std::vector<CheckResult> checks;
    std::optional<Counterexample> counterexample;
    double elapsed_ms = 0.0;

    // Stable text rendering; elapsed time excluded so reruns compare equal.
    std::string canonical_string() const {
        std::string out = theorem_id + " n=" + std::to_string(n) +
                          " status=" + (passed ? "pass" : "fail") + "\n";
        for (const auto& c : checks) {
            out += "  [" + std::string(c.passed ? "pass" : "fail") + "] " + c.name;
            if (!c.detail.empty()) out += ": " + c.detail;
            out += "\n";
        }
        if (counterexample) {
            out += "  counterexample: " + counterexample->description + "\n";
            for (const auto& p : counterexample->perms) out += "    sigma = " + p.to_string() + "\n";
            if (!counterexample->lhs.empty())
                out += "    lhs = " + counterexample->lhs + "\n    rhs = " + counterexample->rhs +
                       "\n";
        }
        return out;
    }
};

namespace detail {

inline void add_check(VerificationReport& report, const std::string& name, bool passed,
                      const std::string& detail = "",
                      std::optional<Counterexample> ce = std::nullopt) {
    report.checks.push_back({name, passed, detail});
    report.passed = report.passed && passed;
    if (!passed && ce && !report.counterexample) report.counterexample = std::move(ce);
}

// Folds a sub-report into an aggregate under a name prefix.
inline void absorb(VerificationReport& report, const std::string& prefix,
                   const VerificationReport& sub) {
    for (const auto& c : sub.checks)
        report.checks.push_back({prefix + c.name, c.passed, c.detail});
    report.passed = report.passed && sub.passed;
    if (!sub.passed && sub.counterexample && !report.counterexample)
        report.counterexample = sub.counterexample;
}

inline void require_cap(int n, int cap, const char* what) {
    if (n > cap)
        throw resource_error(std::string(what) + " capped at n <= " + std::to_string(cap) +
                             ", got n = " + std::to_string(n));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

// Multiset of canonically serialized value tuples over S_n.
struct SetTupleDistribution {
    int n = 0;
    std::map<std::string, std::uint64_t> counts;

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& [k, c] : counts) t += c;
        return t;
    }

    void merge(SetTupleDistribution&& other) {
        for (auto& [k, c] : other.counts) counts[k] += c;
    }

    bool operator==(const SetTupleDistribution& other) const { return counts == other.counts; }
};

// Joint distribution of any aligned tuple as a multiset of serialized value
// tuples. This is the common engine behind equidistribution checks.
inline SetTupleDistribution value_distribution(const StatTuple& t, int n, const Options& opts) {
    if (t.arity() == 0) throw validation_error("statistic tuple has no non-gap slot");
    auto parts = map_ranges<SetTupleDistribution>(n, opts, [&](PermutationRange range) {
        SetTupleDistribution local;
        local.n = n;
        for (const Permutation& p : range)
            ++local.counts[eval_tuple_string(p, t, opts.mutation)];
        return local;
    });
    SetTupleDistribution out;
    out.n = n;
    for (auto& part : parts) out.merge(std::move(part));
    return out;
}

inline SetTupleDistribution dist_setvalued(const StatTuple& t, int n,
                                           const Options& opts = {}) {
    if (!t.all_set_valued())
        throw validation_error("dist_setvalued requires set-valued slots only");
    detail::require_cap(n, opts.caps.set_valued, "set-valued distributions");
    return value_distribution(t, n, opts);
}

inline bool is_mahonian_family(OrdinaryStat k) {
    switch (k) {
        case OrdinaryStat::inv:
        case OrdinaryStat::sor:
        case OrdinaryStat::maj:
        case OrdinaryStat::imaj:
        case OrdinaryStat::rmaj:
        case OrdinaryStat::chg:
        case OrdinaryStat::cochg:
            return true;
        default:
            return false;
    }
}

// Variable assignment for numeric distributions: q goes to the leading slot
// when it is Mahonian-family (so inversion-like statistics always track q),
// otherwise the pool starts at x; later slots take the next free variable.
inline std::vector<int> assign_variables(const StatTuple& t) {
    std::vector<int> vars(t.slots.size(), -1);
    bool mahonian_first = false;
    for (const auto& s : t.slots) {
        if (s.category == TupleSlot::Category::gap) continue;
        mahonian_first = is_mahonian_family(s.ordinary);
        break;
    }
    const std::vector<int> pool = mahonian_first
                                      ? std::vector<int>{kVarQ, kVarX, kVarY, kVarZ}
                                      : std::vector<int>{kVarX, kVarY, kVarZ, kVarQ};
    std::size_t next = 0;
    for (std::size_t i = 0; i < t.slots.size(); ++i) {
        if (t.slots[i].category == TupleSlot::Category::gap) continue;
        if (next >= pool.size())
            throw validation_error("numeric distributions support at most 4 statistics");
        vars[i] = pool[next++];
    }
    return vars;
}

// Sum over S_n of q^{s1} x^{s2} y^{s3} (z^{s4}) for an ordinary tuple.
inline Polynomial dist_numeric(const StatTuple& t, int n, const Options& opts = {}) {
    if (!t.all_ordinary())
        throw validation_error("dist_numeric requires ordinary statistics only");
    if (t.arity() == 0) throw validation_error("statistic tuple has no non-gap slot");
    detail::require_cap(n, opts.caps.numeric, "numeric distributions");
    const std::vector<int> vars = assign_variables(t);
    auto parts = map_ranges<Polynomial>(n, opts, [&](PermutationRange range) {
        Polynomial local;
        for (const Permutation& p : range) {
            Monomial m;
            for (std::size_t i = 0; i < t.slots.size(); ++i) {
                if (vars[i] < 0) continue;
                m.exps[static_cast<std::size_t>(vars[i])] =
                    static_cast<int>(eval_slot_numeric(p, t.slots[i], opts.mutation));
            }
            local.add_term(m, 1);
        }
        return local;
    });
    Polynomial out;
    for (auto& part : parts) out += part;
    return out;
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

namespace detail {

struct Violation {
    Permutation sigma;
    std::optional<Permutation> mapped;
    std::string lhs;
    std::string rhs;
};

// First (lexicographically) permutation violating check(p); deterministic for
// every worker count because ranges are folded in order.
template <typename CheckFn>
std::optional<Violation> first_violation(int n, const Options& opts, CheckFn check) {
    using MaybeViolation = std::optional<Violation>;
    auto parts = map_ranges<MaybeViolation>(n, opts, [&](PermutationRange range) {
        for (const Permutation& p : range) {
            MaybeViolation v = check(p);
            if (v) return v;
        }
        return MaybeViolation{};
    });
    for (auto& part : parts)
        if (part) return part;
    return std::nullopt;
}

inline Counterexample to_counterexample(const Violation& v, const std::string& what) {
    Counterexample ce;
    ce.perms.push_back(v.sigma);
    if (v.mapped) ce.perms.push_back(*v.mapped);
    ce.lhs = v.lhs;
    ce.rhs = v.rhs;
    ce.description = what + " violated at sigma = " + v.sigma.to_string();
    return ce;
}

inline void validate_map_expr(const std::string& expr) {
    std::string token;
    auto check = [&] {
        if (!is_map_name(token)) throw validation_error("unknown map '" + token + "'");
        token.clear();
    };
    for (char c : expr) {
        if (c == '.')
            check();
        else
            token += c;
    }
    check();
}

inline std::optional<std::string> first_poly_divergence(const Polynomial& a,
                                                        const Polynomial& b) {
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            return "term " + Polynomial::term(ia->first, 1).to_string() + ": lhs " +
                   std::to_string(ia->second) + ", rhs 0";
        }
        if (ia == a.terms().end() || ib->first < ia->first) {
            return "term " + Polynomial::term(ib->first, 1).to_string() + ": lhs 0, rhs " +
                   std::to_string(ib->second);
        }
        if (ia->second != ib->second) {
            return "term " + Polynomial::term(ia->first, 1).to_string() + ": lhs " +
                   std::to_string(ia->second) + ", rhs " + std::to_string(ib->second);
        }
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

inline std::optional<std::string> first_multiset_divergence(const SetTupleDistribution& a,
                                                            const SetTupleDistribution& b) {
    auto ia = a.counts.begin();
    auto ib = b.counts.begin();
    while (ia != a.counts.end() || ib != b.counts.end()) {
        if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
            return "fiber " + ia->first + ": lhs multiplicity " + std::to_string(ia->second) +
                   ", rhs 0";
        }
        if (ia == a.counts.end() || ib->first < ia->first) {
            return "fiber " + ib->first + ": lhs multiplicity 0, rhs " +
                   std::to_string(ib->second);
        }
        if (ia->second != ib->second) {
            return "fiber " + ia->first + ": lhs multiplicity " + std::to_string(ia->second) +
                   ", rhs " + std::to_string(ib->second);
        }
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

inline StatTuple project(const StatTuple& t, const std::vector<std::size_t>& positions) {
    StatTuple out;
    for (std::size_t i : positions) out.slots.push_back(t.slots[i]);
    return out;
}

// Positions where both tuples carry a statistic.
inline std::vector<std::size_t> shared_positions(const StatTuple& a, const StatTuple& b) {
    if (a.slots.size() != b.slots.size())
        throw validation_error("statistic tuples have different arity");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.slots.size(); ++i) {
        const bool ga = a.slots[i].category == TupleSlot::Category::gap;
        const bool gb = b.slots[i].category == TupleSlot::Category::gap;
        if (ga || gb) continue;
        if (a.slots[i].category != b.slots[i].category)
            throw validation_error("slot " + std::to_string(i + 1) +
                                   " mixes ordinary and set-valued statistics");
        out.push_back(i);
    }
    if (out.empty()) throw validation_error("tuples share no non-gap slot");
    return out;
}

inline bool tuple_uses_sets(const StatTuple& t) {
    for (const auto& s : t.slots)
        if (s.category == TupleSlot::Category::set_valued) return true;
    return false;
}

}  // namespace detail

// Pointwise identity lhs(sigma) = rhs(chi(sigma)) over all of S_n.
inline VerificationReport check_transfer(const StatTuple& lhs, const StatTuple& rhs,
                                         const std::string& map_expr, int n,
                                         const Options& opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (lhs.slots.size() != rhs.slots.size())
        throw validation_error("transfer tuples must have equal arity");
    for (std::size_t i = 0; i < lhs.slots.size(); ++i)
        if (lhs.slots[i].category != rhs.slots[i].category)
            throw validation_error("transfer slot " + std::to_string(i + 1) +
                                   " categories differ");
    detail::validate_map_expr(map_expr);
    detail::require_cap(n, opts.caps.numeric, "pointwise sweeps");

    VerificationReport report;
    report.theorem_id = "transfer";
    report.n = n;
    const std::string name = lhs.name() + " -> " + rhs.name() + " under " + map_expr;

    auto violation = detail::first_violation(n, opts, [&](const Permutation& p) {
        std::optional<detail::Violation> v;
        const Permutation mapped = apply_map_expr(map_expr, p);
        const std::string a = eval_tuple_string(p, lhs, opts.mutation);
        const std::string b = eval_tuple_string(mapped, rhs, opts.mutation);
        if (a != b) v = detail::Violation{p, mapped, a, b};
        return v;
    });

    if (violation) {
        detail::add_check(report, name, false, "first violation at " + violation->sigma.to_string(),
                          detail::to_counterexample(*violation, name));
    } else {
        detail::add_check(report, name, true);
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

// Equidistribution of the two tuples projected onto their shared slots.
inline VerificationReport check_equidist(const StatTuple& lhs, const StatTuple& rhs, int n,
                                         const Options& opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    const auto positions = detail::shared_positions(lhs, rhs);
    const StatTuple pl = detail::project(lhs, positions);
    const StatTuple pr = detail::project(rhs, positions);
    const bool sets = detail::tuple_uses_sets(pl) || detail::tuple_uses_sets(pr);
    detail::require_cap(n, sets ? opts.caps.set_valued : opts.caps.numeric,
                        sets ? "set-valued distributions" : "numeric distributions");

    VerificationReport report;
    report.theorem_id = "equidist";
    report.n = n;
    const std::string name = pl.name() + " ~ " + pr.name();

    const SetTupleDistribution da = value_distribution(pl, n, opts);
    const SetTupleDistribution db = value_distribution(pr, n, opts);
    const auto divergence = detail::first_multiset_divergence(da, db);
    if (divergence) {
        Counterexample ce;
        ce.description = *divergence;
        detail::add_check(report, name, false, *divergence, std::move(ce));
    } else {
        detail::add_check(report, name, true);
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

// Symmetry of a pair: the multiset of (a,b)(sigma) equals the multiset of
// (b,a)(sigma).
inline VerificationReport check_symmetric_pair(const TupleSlot& a, const TupleSlot& b, int n,
                                               const Options& opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (a.category == TupleSlot::Category::gap || b.category == TupleSlot::Category::gap)
        throw validation_error("symmetric pair slots must carry statistics");
    if (a.category != b.category)
        throw validation_error("symmetric pair requires matching value categories");
    const bool sets = a.category == TupleSlot::Category::set_valued;
    detail::require_cap(n, sets ? opts.caps.set_valued : opts.caps.numeric,
                        sets ? "set-valued distributions" : "numeric distributions");

    VerificationReport report;
    report.theorem_id = "symmetric-pair";
    report.n = n;
    const std::string name = "(" + a.name() + "," + b.name() + ") symmetric";

    using PairCounts = std::map<std::pair<std::string, std::string>, std::uint64_t>;
    auto parts = map_ranges<PairCounts>(n, opts, [&](PermutationRange range) {
        PairCounts local;
        for (const Permutation& p : range) {
            ++local[{eval_slot_string(p, a, opts.mutation),
                     eval_slot_string(p, b, opts.mutation)}];
        }
        return local;
    });
    PairCounts counts;
    for (auto& part : parts)
        for (auto& [k, c] : part) counts[k] += c;

    std::optional<std::string> divergence;
    for (const auto& [key, count] : counts) {
        auto it = counts.find({key.second, key.first});
        const std::uint64_t swapped = it == counts.end() ? 0 : it->second;
        if (swapped != count) {
            divergence = "value (" + key.first + "," + key.second + ") has multiplicity " +
                         std::to_string(count) + " but (" + key.second + "," + key.first +
                         ") has " + std::to_string(swapped);
            break;
        }
    }
    if (divergence) {
        Counterexample ce;
        ce.description = *divergence;
        detail::add_check(report, name, false, *divergence, std::move(ce));
    } else {
        detail::add_check(report, name, true);
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

// ---------------------------------------------------------------------------
// Theorem registry
// ---------------------------------------------------------------------------

namespace detail {

inline TupleSlot O(OrdinaryStat k) { return TupleSlot::of(k); }
inline TupleSlot Oc(OrdinaryStat k) { return TupleSlot::of(k, true); }
inline TupleSlot S(SetStatBase b, bool starred = false) { return TupleSlot::of(b, starred); }
inline TupleSlot G() { return TupleSlot::gap(); }

// The 13 set-valued triples, in the theorem's numbering.
inline const std::vector<StatTuple>& set_triples() {
    using B = SetStatBase;
    static const std::vector<StatTuple> triples = {
        {S(B::Rmil), S(B::Lmil), S(B::Lmap)},              // (1)
        {S(B::Cyc), S(B::Lmic1), S(B::Lmap)},              // (2)
        {S(B::Lmap), S(B::Lmip), S(B::Rmil)},              // (3)
        {S(B::Rmip, true), S(B::Rmap, true), S(B::Lmal, true)},   // (4)
        {S(B::Lmal, true), S(B::Rmal, true), S(B::Rmip, true)},   // (5)
        {S(B::Lmil), S(B::Rmil), S(B::Rmap, true)},        // (6)
        {S(B::Rmal, true), S(B::Lmal, true), S(B::Lmip)},  // (7)
        {S(B::Rmap, true), S(B::Rmip, true), S(B::Lmil)},  // (8)
        {S(B::Lmip), S(B::Lmap), S(B::Rmal, true)},        // (9)
        {S(B::Lmap), G(), S(B::Cyc)},                      // (10)
        {S(B::Lmic1), S(B::Cyc), G()},                     // (11)
        {S(B::Cyc), G(), S(B::Rmil)},                      // (12)
        {S(B::Rmil), G(), S(B::Cyc)},                      // (13)
    };
    return triples;
}

// The 21 quadruples, in the theorem's numbering.
inline const std::vector<StatTuple>& sta_quadruples() {
    using K = OrdinaryStat;
    static const std::vector<StatTuple> quadruples = {
        {O(K::inv), O(K::rmin), O(K::lmin), O(K::lmax)},    // (1)
        {O(K::sor), O(K::cyc), O(K::lmic1), O(K::lmax)},    // (2)
        {O(K::inv), O(K::lmax), O(K::lmin), O(K::rmin)},    // (3)
        {O(K::inv), O(K::rmin), O(K::rmax), O(K::lmax)},    // (4)
        {O(K::inv), O(K::lmax), O(K::rmax), O(K::rmin)},    // (5)
        {Oc(K::inv), O(K::lmin), O(K::rmin), O(K::rmax)},   // (6)
        {Oc(K::inv), O(K::rmax), O(K::lmax), O(K::lmin)},   // (7)
        {Oc(K::inv), O(K::rmax), O(K::rmin), O(K::lmin)},   // (8)
        {Oc(K::inv), O(K::lmin), O(K::lmax), O(K::rmax)},   // (9)
        {O(K::sor), O(K::lmax), O(K::lmic1), O(K::cyc)},    // (10)
        {Oc(K::sor), O(K::lmic1), O(K::cyc), G()},          // (11)
        {Oc(K::sor), G(), O(K::lmax), O(K::lmic1)},         // (12)
        {Oc(K::sor), G(), O(K::cyc), O(K::lmic1)},          // (13)
        {Oc(K::sor), O(K::lmic1), O(K::lmax), G()},         // (14)
        {G(), O(K::cyc), G(), O(K::rmin)},                  // (15)
        {G(), O(K::rmin), G(), O(K::cyc)},                  // (16)
        {O(K::maj), O(K::rmin), O(K::rmax), G()},           // (17)
        {O(K::imaj), O(K::lmax), O(K::rmax), G()},          // (18)
        {O(K::rmaj), O(K::lmax), O(K::lmin), G()},          // (19)
        {O(K::chg), O(K::rmin), O(K::lmin), G()},           // (20)
        {O(K::cochg), O(K::lmin), O(K::rmin), G()},         // (21)
    };
    return quadruples;
}

struct IrcEdge {
    const char* map;
    SetStatBase a;
    SetStatBase b;
    bool dotted;  // dotted edges compose the far side with *
};

inline const std::vector<IrcEdge>& irc_edges() {
    using B = SetStatBase;
    static const std::vector<IrcEdge> edges = {
        {"i", B::Lmil, B::Lmip, false},
        {"i", B::Rmil, B::Lmap, false},
        {"i", B::Lmal, B::Rmip, false},
        {"i", B::Rmal, B::Rmap, false},
        {"r", B::Lmil, B::Rmil, false},
        {"r", B::Lmal, B::Rmal, false},
        {"r", B::Lmip, B::Rmip, true},
        {"r", B::Lmap, B::Rmap, true},
        {"c", B::Lmip, B::Lmap, false},
        {"c", B::Rmip, B::Rmap, false},
        {"c", B::Lmil, B::Lmal, true},
        {"c", B::Rmil, B::Rmal, true},
    };
    return edges;
}

// Symmetric set-valued pair groups from the triples corollary (^d read as *).
inline const std::vector<std::vector<std::pair<TupleSlot, TupleSlot>>>& set_pair_groups() {
    using B = SetStatBase;
    static const std::vector<std::vector<std::pair<TupleSlot, TupleSlot>>> groups = {
        {
            {S(B::Rmil), S(B::Lmap)},
            {S(B::Rmip, true), S(B::Lmal, true)},
            {S(B::Rmal, true), S(B::Lmip)},
            {S(B::Rmap, true), S(B::Lmil)},
            {S(B::Cyc), S(B::Rmil)},
            {S(B::Cyc), S(B::Lmap)},
        },
        {
            {S(B::Rmil), S(B::Lmil)},
            {S(B::Lmap), S(B::Lmip)},
            {S(B::Rmip, true), S(B::Rmap, true)},
            {S(B::Rmal, true), S(B::Lmal, true)},
            {S(B::Cyc), S(B::Lmic1)},
        },
    };
    return groups;
}

// Symmetric ordinary pair groups from the quadruples corollary; group 0 also
// carries the q=1 closed-form identity.
inline const std::vector<std::vector<std::pair<TupleSlot, TupleSlot>>>& sta_pair_groups() {
    using K = OrdinaryStat;
    static const std::vector<std::vector<std::pair<TupleSlot, TupleSlot>>> groups = {
        {
            {O(K::rmax), O(K::rmin)},
            {O(K::rmax), O(K::lmax)},
            {O(K::rmin), O(K::lmin)},
            {O(K::lmax), O(K::lmin)},
            {O(K::cyc), O(K::lmic1)},
            {O(K::lmic1), O(K::lmax)},
        },
        {
            {O(K::rmax), O(K::lmin)},
            {O(K::rmin), O(K::lmax)},
            {O(K::cyc), O(K::lmax)},
            {O(K::cyc), O(K::rmin)},
        },
    };
    return groups;
}

inline void check_poly_equal(VerificationReport& report, const std::string& name,
                             const Polynomial& lhs, const Polynomial& rhs) {
    const auto divergence = first_poly_divergence(lhs, rhs);
    if (divergence) {
        Counterexample ce;
        ce.description = *divergence;
        ce.lhs = lhs.to_string();
        ce.rhs = rhs.to_string();
        add_check(report, name, false, *divergence, std::move(ce));
    } else {
        add_check(report, name, true);
    }
}

template <typename CheckFn>
void pointwise_check(VerificationReport& report, const std::string& name, int n,
                     const Options& opts, CheckFn per_perm) {
    auto violation = first_violation(n, opts, per_perm);
    if (violation) {
        add_check(report, name, false, "first violation at " + violation->sigma.to_string(),
                  to_counterexample(*violation, name));
    } else {
        add_check(report, name, true);
    }
}

// lhs(sigma) vs rhs(sigma) as serialized strings
template <typename Lhs, typename Rhs>
void pointwise_equal(VerificationReport& report, const std::string& name, int n,
                     const Options& opts, Lhs lhs, Rhs rhs) {
    pointwise_check(report, name, n, opts, [&](const Permutation& p) {
        std::optional<Violation> v;
        const std::string a = lhs(p);
        const std::string b = rhs(p);
        if (a != b) v = Violation{p, std::nullopt, a, b};
        return v;
    });
}

}  // namespace detail

inline const std::vector<std::string>& theorem_ids() {
    static const std::vector<std::string> ids = {
        "thm-petersen",    "thm-foata-han-1", "thm-foata-han-2", "thm-main-1",
        "thm-main-2",      "lem-lmip-acode",  "lem-lmic1-shifted", "eq-sor-bcode",
        "prop-inv-acode",  "lem-phi-sor",     "prop-irc",        "thm-set-all",
        "cor-set-pairs",   "lem-maj-family",  "thm-sta-all",     "cor-sta-pairs",
        "foata-psi",
    };
    return ids;
}

// Theorems whose checks accumulate multisets of set-valued tuples; these obey
// the lower set-valued cap.
inline bool theorem_uses_set_distributions(const std::string& id) {
    return id == "thm-foata-han-2" || id == "thm-set-all" || id == "cor-set-pairs";
}

inline VerificationReport run_theorem(const std::string& id, int n, const Options& opts = {}) {
    using namespace detail;
    using K = OrdinaryStat;
    using B = SetStatBase;

    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.theorem_id = id;
    report.n = n;

    if (id == "thm-petersen") {
        const StatTuple lhs{O(K::inv), O(K::rmin)};
        const StatTuple rhs{O(K::sor), O(K::cyc)};
        absorb(report, "", check_equidist(lhs, rhs, n, opts));
        const Polynomial closed = closed_form_petersen(n);
        check_poly_equal(report, "dist(inv,rmin) == x*prod(x+[r]_q-1)",
                         dist_numeric(lhs, n, opts), closed);
        check_poly_equal(report, "dist(sor,cyc) == x*prod(x+[r]_q-1)",
                         dist_numeric(rhs, n, opts), closed);
    } else if (id == "thm-foata-han-1") {
        absorb(report, "",
               check_transfer(StatTuple{S(B::Rmil), S(B::Lmap)},
                              StatTuple{S(B::Cyc), S(B::Lmap)}, "phi", n, opts));
    } else if (id == "thm-foata-han-2") {
        const std::vector<std::pair<TupleSlot, TupleSlot>> pairs = {
            {S(B::Cyc), S(B::Rmil)}, {S(B::Cyc), S(B::Lmap)}, {S(B::Rmil), S(B::Lmap)}};
        for (const auto& [a, b] : pairs)
            absorb(report, "", check_symmetric_pair(a, b, n, opts));
        for (std::size_t k = 1; k < pairs.size(); ++k)
            absorb(report, "",
                   check_equidist(StatTuple{pairs[0].first, pairs[0].second},
                                  StatTuple{pairs[k].first, pairs[k].second}, n, opts));
    } else if (id == "thm-main-1") {
        absorb(report, "",
               check_transfer(StatTuple{S(B::Inv), S(B::Rmil), S(B::Lmap), S(B::Lmil)},
                              StatTuple{S(B::Sor), S(B::Cyc), S(B::Lmap), S(B::Lmic1)}, "phi",
                              n, opts));
    } else if (id == "thm-main-2") {
        const StatTuple lhs{O(K::inv), O(K::rmin), O(K::lmin)};
        const StatTuple rhs{O(K::sor), O(K::cyc), O(K::lmic1)};
        absorb(report, "", check_equidist(lhs, rhs, n, opts));
        const Polynomial closed = closed_form_main(n);
        check_poly_equal(report, "dist(inv,rmin,lmin) == F_n(q,x,y)",
                         dist_numeric(lhs, n, opts), closed);
        check_poly_equal(report, "dist(sor,cyc,lmic1) == F_n(q,x,y)",
                         dist_numeric(rhs, n, opts), closed);
    } else if (id == "lem-lmip-acode") {
        pointwise_equal(
            report, "Lmip == ones(Leh)", n, opts,
            [&](const Permutation& p) {
                return set_value_to_string(set_stat(p, {B::Lmip, false}));
            },
            [&](const Permutation& p) { return ones_set(lehmer(p)).to_string(); });
        pointwise_equal(
            report, "Lmil == ones(A)", n, opts,
            [&](const Permutation& p) {
                return set_value_to_string(set_stat(p, {B::Lmil, false}));
            },
            [&](const Permutation& p) { return ones_set(a_code(p)).to_string(); });
    } else if (id == "lem-lmic1-shifted") {
        pointwise_equal(
            report, "Lmic1 == Lmil(shifted cycle of 1)", n, opts,
            [&](const Permutation& p) {
                return set_value_to_string(set_stat(p, {B::Lmic1, false}));
            },
            [&](const Permutation& p) {
                const std::vector<int> word = shifted_cycle_1(p);
                return PositionSet(p.degree(),
                                   places_to_letters(word, left_to_right_minima_places(word)))
                    .to_string();
            });
    } else if (id == "eq-sor-bcode") {
        pointwise_equal(
            report, "sor == sum(i - b_i)", n, opts,
            [&](const Permutation& p) {
                return std::to_string(eval_ordinary(p, K::sor, opts.mutation));
            },
            [&](const Permutation& p) {
                const CodeVector b = b_code(p);
                int total = 0;
                for (int i = 1; i <= p.degree(); ++i) total += i - b.at(i);
                return std::to_string(total);
            });
    } else if (id == "prop-inv-acode") {
        pointwise_equal(
            report, "Inv == <A>", n, opts,
            [&](const Permutation& p) {
                return set_value_to_string(set_stat(p, {B::Inv, false}));
            },
            [&](const Permutation& p) { return induced_set(a_code(p)).to_string(); });
    } else if (id == "lem-phi-sor") {
        absorb(report, "",
               check_transfer(StatTuple{S(B::Inv)}, StatTuple{S(B::Sor)}, "phi", n, opts));
    } else if (id == "prop-irc") {
        for (const auto& edge : irc_edges()) {
            const std::string name = std::string(edge.map) + ": " +
                                     set_stat_name({edge.a, false}) + " <-> " +
                                     set_stat_name({edge.b, false}) +
                                     (edge.dotted ? " (dotted)" : "");
            VerificationReport fwd =
                check_transfer(StatTuple{S(edge.a)}, StatTuple{S(edge.b, edge.dotted)},
                               edge.map, n, opts);
            VerificationReport bwd =
                check_transfer(StatTuple{S(edge.b)}, StatTuple{S(edge.a, edge.dotted)},
                               edge.map, n, opts);
            std::optional<Counterexample> ce;
            if (!fwd.passed && fwd.counterexample) ce = fwd.counterexample;
            if (!ce && !bwd.passed && bwd.counterexample) ce = bwd.counterexample;
            add_check(report, name, fwd.passed && bwd.passed,
                      fwd.passed && bwd.passed ? "" : "relation fails", std::move(ce));
        }
    } else if (id == "thm-set-all") {
        const auto& triples = set_triples();
        for (std::size_t k = 0; k < triples.size(); ++k) {
            VerificationReport sub = check_equidist(triples[k], triples[0], n, opts);
            std::optional<Counterexample> ce;
            if (!sub.passed && sub.counterexample) ce = sub.counterexample;
            add_check(report, "triple (" + std::to_string(k + 1) + ") ~ triple (1)",
                      sub.passed, sub.passed ? "" : sub.checks.front().detail, std::move(ce));
        }
    } else if (id == "cor-set-pairs") {
        for (std::size_t g = 0; g < set_pair_groups().size(); ++g) {
            const auto& group = set_pair_groups()[g];
            for (const auto& [a, b] : group)
                absorb(report, "group " + std::to_string(g + 1) + ": ",
                       check_symmetric_pair(a, b, n, opts));
            for (std::size_t k = 1; k < group.size(); ++k)
                absorb(report, "group " + std::to_string(g + 1) + ": ",
                       check_equidist(StatTuple{group[0].first, group[0].second},
                                      StatTuple{group[k].first, group[k].second}, n, opts));
        }
    } else if (id == "lem-maj-family") {
        absorb(report, "",
               check_transfer(StatTuple{O(K::maj)}, StatTuple{O(K::imaj)}, "i", n, opts));
        absorb(report, "",
               check_transfer(StatTuple{O(K::maj)}, StatTuple{O(K::rmaj)}, "r.c", n, opts));
        absorb(report, "",
               check_transfer(StatTuple{O(K::rmaj)}, StatTuple{O(K::chg)}, "i", n, opts));
        absorb(report, "",
               check_transfer(StatTuple{O(K::chg)}, StatTuple{O(K::cochg)}, "r", n, opts));
    } else if (id == "thm-sta-all") {
        const auto& quadruples = sta_quadruples();
        const Polynomial closed = closed_form_main(n);
        for (std::size_t k = 0; k < quadruples.size(); ++k) {
            VerificationReport sub = check_equidist(quadruples[k], quadruples[0], n, opts);
            std::optional<Counterexample> ce;
            if (!sub.passed && sub.counterexample) ce = sub.counterexample;
            add_check(report, "quadruple (" + std::to_string(k + 1) + ") ~ quadruple (1)",
                      sub.passed, sub.passed ? "" : sub.checks.front().detail, std::move(ce));
        }
        for (std::size_t k = 0; k < quadruples.size(); ++k) {
            const auto& quad = quadruples[k];
            bool first_three_full = quad.slots.size() >= 3;
            for (std::size_t i = 0; i < 3 && first_three_full; ++i)
                first_three_full = quad.slots[i].category != TupleSlot::Category::gap;
            if (!first_three_full) continue;
            StatTuple head{quad.slots[0], quad.slots[1], quad.slots[2]};
            check_poly_equal(report,
                             "quadruple (" + std::to_string(k + 1) + ") first three == F_n",
                             dist_numeric(head, n, opts), closed);
        }
    } else if (id == "cor-sta-pairs") {
        const Polynomial closed_q1 = closed_form_main(n).substitute(kVarQ, 1);
        for (std::size_t g = 0; g < sta_pair_groups().size(); ++g) {
            const auto& group = sta_pair_groups()[g];
            for (const auto& [a, b] : group)
                absorb(report, "group " + std::to_string(g + 1) + ": ",
                       check_symmetric_pair(a, b, n, opts));
            for (std::size_t k = 1; k < group.size(); ++k)
                absorb(report, "group " + std::to_string(g + 1) + ": ",
                       check_equidist(StatTuple{group[0].first, group[0].second},
                                      StatTuple{group[k].first, group[k].second}, n, opts));
            if (g == 0) {
                for (const auto& [a, b] : group) {
                    check_poly_equal(report,
                                     "group 1: dist(" + a.name() + "," + b.name() +
                                         ") == F_n(1,x,y)",
                                     dist_numeric(StatTuple{a, b}, n, opts), closed_q1);
                }
            }
        }
    } else if (id == "foata-psi") {
        absorb(report, "",
               check_transfer(StatTuple{O(K::maj)}, StatTuple{O(K::inv)}, "psi", n, opts));
        absorb(report, "",
               check_transfer(StatTuple{O(K::rmax), O(K::rmin)},
                              StatTuple{O(K::rmax), O(K::rmin)}, "psi", n, opts));
    } else {
        throw validation_error("unknown theorem id '" + id + "'");
    }

    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace permstat::verify

#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permstat/permstat.hpp"

namespace permstat::cli {

enum class OutputFormat { text, csv, json };

struct CliConfig {
    std::optional<int> max_n;  // explicit cap: PERMSTAT_MAX_N, then --max-n
    OutputFormat format = OutputFormat::text;
    int workers = 0;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string token;
    for (char c : text) {
        if (c == ',') {
            if (!token.empty()) out.push_back(token);
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty()) out.push_back(token);
    return out;
}

// "1..6" or "5"
inline std::pair<int, int> parse_n_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        if (lo < 1 || hi < lo) throw validation_error("invalid n range '" + text + "'");
        return {lo, hi};
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception&) {
        throw validation_error("invalid n range '" + text + "'");
    }
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline verify::Options engine_options(const CliConfig& cfg) {
    verify::Options opts;
    opts.workers = cfg.workers;
    if (cfg.max_n) {
        opts.caps.numeric = *cfg.max_n;
        opts.caps.set_valued = *cfg.max_n;
    }
    return opts;
}

// ---- polynomial rendering -------------------------------------------------

inline void write_poly_csv(const Polynomial& p, bool with_z, std::ostream& out) {
    out << (with_z ? "q_exp,x_exp,y_exp,z_exp,coeff" : "q_exp,x_exp,y_exp,coeff") << "\n";
    for (const auto& [m, c] : p.terms()) {
        out << m.exps[0] << ',' << m.exps[1] << ',' << m.exps[2];
        if (with_z) out << ',' << m.exps[3];
        out << ',' << c << "\n";
    }
}

inline nlohmann::json poly_to_json(const Polynomial& p, bool with_z) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json t;
        t["q_exp"] = m.exps[0];
        t["x_exp"] = m.exps[1];
        t["y_exp"] = m.exps[2];
        if (with_z) t["z_exp"] = m.exps[3];
        t["coeff"] = c;
        terms.push_back(t);
    }
    return terms;
}

inline void render_poly(const Polynomial& p, const CliConfig& cfg, bool with_z,
                        std::ostream& out) {
    switch (cfg.format) {
        case OutputFormat::text:
            out << p.to_string() << "\n";
            break;
        case OutputFormat::csv:
            write_poly_csv(p, with_z, out);
            break;
        case OutputFormat::json:
            out << nlohmann::json{{"polynomial", p.to_string()},
                                  {"terms", poly_to_json(p, with_z)}}
                       .dump(2)
                << "\n";
            break;
    }
}

// ---- report rendering -----------------------------------------------------

inline nlohmann::json report_to_json(const verify::VerificationReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["status"] = c.passed ? "pass" : "fail";
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.push_back(jc);
    }
    nlohmann::json j;
    j["theorem"] = r.theorem_id;
    j["n"] = r.n;
    j["status"] = r.passed ? "pass" : "fail";
    j["checks"] = checks;
    if (r.counterexample) {
        nlohmann::json ce;
        nlohmann::json perms = nlohmann::json::array();
        for (const auto& p : r.counterexample->perms) perms.push_back(p.to_string());
        ce["perms"] = perms;
        if (!r.counterexample->lhs.empty()) {
            ce["lhs"] = r.counterexample->lhs;
            ce["rhs"] = r.counterexample->rhs;
        }
        ce["description"] = r.counterexample->description;
        j["counterexample"] = ce;
    }
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

// ---- stat value rendering ---------------------------------------------------

struct StatRow {
    std::string kind;
    std::string value;     // canonical text
    nlohmann::json jvalue; // typed value for json output
};

inline StatRow make_ordinary_row(const Permutation& p, OrdinaryStat kind) {
    const int v = ordinary_stat(p, kind);
    return {ordinary_stat_name(kind), std::to_string(v), nlohmann::json(v)};
}

inline StatRow make_set_row(const Permutation& p, SetStatKind kind) {
    const SetValue v = set_stat(p, kind);
    nlohmann::json jv;
    if (std::holds_alternative<PositionSet>(v)) {
        jv = nlohmann::json::array();
        for (int m : std::get<PositionSet>(v).members) jv.push_back(m);
    } else {
        jv = nlohmann::json::array();
        for (const auto& [i, j] : std::get<PairSet>(v).pairs)
            jv.push_back(nlohmann::json::array({i, j}));
    }
    return {set_stat_name(kind), set_value_to_string(v), jv};
}

}  // namespace detail

// Runs the command line given as plain arguments (program name excluded).
// Returns the process exit code: 0 success / all-pass, 1 verification
// failure, 2 usage or validation error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;

    CLI::App app{"exact permutation-statistics engine: codes, bijections, joint "
                 "distributions and an equidistribution verification harness"};
    app.fallthrough();

    CliConfig cfg;
    if (const char* env = std::getenv("PERMSTAT_MAX_N")) {
        try {
            cfg.max_n = std::stoi(env);
        } catch (const std::exception&) {
            err << "error: PERMSTAT_MAX_N is not an integer\n";
            return 2;
        }
    }

    std::string format_name = "text";
    std::optional<int> max_n_flag;
    app.add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--max-n", max_n_flag, "degree cap override");
    app.add_option("--workers", cfg.workers, "worker threads (0 = auto)");

    // stats
    auto* cmd_stats = app.add_subcommand("stats", "evaluate statistics of one permutation");
    std::string stats_perm;
    std::string stats_kinds;
    cmd_stats->add_option("perm", stats_perm, "permutation word")->required();
    cmd_stats->add_option("--kinds", stats_kinds, "comma list of statistic names");

    // code
    auto* cmd_code = app.add_subcommand("code", "encode a permutation or invert a code vector");
    std::string code_input;
    std::string code_kind;
    bool code_invert = false;
    cmd_code->add_option("input", code_input, "permutation word (or code vector with --invert)")
        ->required();
    cmd_code->add_option("--kind", code_kind, "code family")
        ->required()
        ->check(CLI::IsMember({"leh", "a", "b"}));
    cmd_code->add_flag("--invert", code_invert, "decode instead of encode");

    // map
    auto* cmd_map = app.add_subcommand("map", "apply a bijection expression");
    std::string map_perm;
    std::string map_expr;
    cmd_map->add_option("perm", map_perm, "permutation word")->required();
    cmd_map->add_option("expr", map_expr,
                        "maps phi, phi-inv, psi, i, r, c composed with '.', applied left to "
                        "right")
        ->required();

    // dist
    auto* cmd_dist = app.add_subcommand("dist", "joint distribution over S_n");
    std::string dist_kinds;
    int dist_n = 0;
    cmd_dist->add_option("--kinds", dist_kinds, "comma list of statistic names")->required();
    cmd_dist->add_option("--n", dist_n, "degree")->required();

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run theorem checks by exhaustive enumeration");
    std::string verify_ids = "all";
    std::string verify_range;
    cmd_verify->add_option("--theorem", verify_ids, "'all' or comma list of theorem ids");
    cmd_verify->add_option("--n", verify_range, "degree or range, e.g. 5 or 1..6")->required();

    // closed-form
    auto* cmd_closed = app.add_subcommand("closed-form", "expand a product formula");
    std::string closed_which;
    int closed_n = 0;
    cmd_closed->add_option("--which", closed_which, "which closed form")
        ->required()
        ->check(CLI::IsMember({"main", "petersen"}));
    cmd_closed->add_option("--n", closed_n, "degree")->required();

    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.push_back("permstat");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (max_n_flag) cfg.max_n = max_n_flag;
    if (format_name == "csv") cfg.format = OutputFormat::csv;
    else if (format_name == "json") cfg.format = OutputFormat::json;

    try {
        if (*cmd_stats) {
            const Permutation p = parse_permutation(stats_perm);
            std::vector<StatRow> rows;
            if (stats_kinds.empty()) {
                for (OrdinaryStat k : all_ordinary_stats()) rows.push_back(make_ordinary_row(p, k));
                for (SetStatBase b : all_set_stat_bases())
                    rows.push_back(make_set_row(p, {b, false}));
            } else {
                for (const std::string& name : split_list(stats_kinds)) {
                    OrdinaryStat ok;
                    SetStatKind sk;
                    if (try_parse_ordinary_stat(name, ok))
                        rows.push_back(make_ordinary_row(p, ok));
                    else if (try_parse_set_stat(name, sk))
                        rows.push_back(make_set_row(p, sk));
                    else
                        throw validation_error("unknown statistic '" + name + "'");
                }
            }
            switch (cfg.format) {
                case OutputFormat::text:
                    for (const auto& r : rows) out << r.kind << " = " << r.value << "\n";
                    break;
                case OutputFormat::csv:
                    out << "kind,value\n";
                    for (const auto& r : rows)
                        out << r.kind << ',' << csv_escape(r.value) << "\n";
                    break;
                case OutputFormat::json: {
                    nlohmann::json stats = nlohmann::json::object();
                    for (const auto& r : rows) stats[r.kind] = r.jvalue;
                    out << nlohmann::json{{"perm", p.to_string()},
                                          {"n", p.degree()},
                                          {"stats", stats}}
                               .dump(2)
                        << "\n";
                    break;
                }
            }
            return 0;
        }

        if (*cmd_code) {
            std::string result;
            if (code_invert) {
                const CodeVector c = parse_code_vector(code_input);
                Permutation p = code_kind == "leh"  ? lehmer_inverse(c)
                                : code_kind == "a" ? a_code_inverse(c)
                                                   : b_code_inverse(c);
                result = p.to_string();
            } else {
                const Permutation p = parse_permutation(code_input);
                CodeVector c = code_kind == "leh"  ? lehmer(p)
                               : code_kind == "a" ? a_code(p)
                                                  : b_code(p);
                result = c.to_string();
            }
            if (cfg.format == OutputFormat::json)
                out << nlohmann::json{{"input", code_input},
                                      {"kind", code_kind},
                                      {"inverted", code_invert},
                                      {"result", result}}
                           .dump(2)
                    << "\n";
            else if (cfg.format == OutputFormat::csv)
                out << "result\n" << csv_escape(result) << "\n";
            else
                out << result << "\n";
            return 0;
        }

        if (*cmd_map) {
            const Permutation p = parse_permutation(map_perm);
            const Permutation mapped = apply_map_expr(map_expr, p);
            if (cfg.format == OutputFormat::json)
                out << nlohmann::json{{"perm", p.to_string()},
                                      {"expr", map_expr},
                                      {"result", mapped.to_string()}}
                           .dump(2)
                    << "\n";
            else if (cfg.format == OutputFormat::csv)
                out << "result\n" << csv_escape(mapped.to_string()) << "\n";
            else
                out << mapped.to_string() << "\n";
            return 0;
        }

        if (*cmd_dist) {
            const verify::StatTuple tuple =
                verify::parse_stat_tuple(split_list(dist_kinds));
            const verify::Options opts = engine_options(cfg);
            if (tuple.all_ordinary()) {
                const Polynomial poly = verify::dist_numeric(tuple, dist_n, opts);
                render_poly(poly, cfg, tuple.arity() == 4, out);
            } else if (tuple.all_set_valued()) {
                const verify::SetTupleDistribution dist =
                    verify::dist_setvalued(tuple, dist_n, opts);
                switch (cfg.format) {
                    case OutputFormat::text:
                        for (const auto& [key, count] : dist.counts)
                            out << key << " : " << count << "\n";
                        break;
                    case OutputFormat::csv:
                        out << "tuple,count\n";
                        for (const auto& [key, count] : dist.counts)
                            out << csv_escape(key) << ',' << count << "\n";
                        break;
                    case OutputFormat::json: {
                        nlohmann::json rows = nlohmann::json::array();
                        for (const auto& [key, count] : dist.counts)
                            rows.push_back({{"tuple", key}, {"count", count}});
                        out << rows.dump(2) << "\n";
                        break;
                    }
                }
            } else {
                throw validation_error(
                    "dist requires all-ordinary or all-set-valued statistic kinds");
            }
            return 0;
        }

        if (*cmd_closed) {
            const Polynomial poly =
                closed_which == "main" ? closed_form_main(closed_n) : closed_form_petersen(closed_n);
            render_poly(poly, cfg, false, out);
            return 0;
        }

        if (*cmd_verify) {
            std::vector<std::string> ids;
            if (verify_ids == "all") {
                ids = verify::theorem_ids();
            } else {
                ids = split_list(verify_ids);
                for (const auto& id : ids) {
                    const auto& known = verify::theorem_ids();
                    if (std::find(known.begin(), known.end(), id) == known.end())
                        throw validation_error("unknown theorem id '" + id + "'");
                }
            }
            const auto [n_lo, n_hi] = parse_n_range(verify_range);
            const verify::Options opts = engine_options(cfg);

            std::vector<verify::VerificationReport> reports;
            bool all_passed = true;
            for (const auto& id : ids) {
                for (int n = n_lo; n <= n_hi; ++n) {
                    reports.push_back(verify::run_theorem(id, n, opts));
                    all_passed = all_passed && reports.back().passed;
                }
            }

            switch (cfg.format) {
                case OutputFormat::text: {
                    int passed = 0;
                    for (const auto& r : reports) {
                        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.theorem_id
                            << " n=" << r.n << " (" << r.checks.size() << " checks, "
                            << r.elapsed_ms << " ms)\n";
                        if (!r.passed) out << r.canonical_string();
                        if (r.passed) ++passed;
                    }
                    out << passed << "/" << reports.size() << " reports passed\n";
                    break;
                }
                case OutputFormat::csv: {
                    out << "theorem,n,status,checks_passed,checks_total,elapsed_ms\n";
                    for (const auto& r : reports) {
                        std::size_t ok = 0;
                        for (const auto& c : r.checks) ok += c.passed ? 1 : 0;
                        out << r.theorem_id << ',' << r.n << ','
                            << (r.passed ? "pass" : "fail") << ',' << ok << ','
                            << r.checks.size() << ',' << r.elapsed_ms << "\n";
                    }
                    break;
                }
                case OutputFormat::json: {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& r : reports) arr.push_back(report_to_json(r));
                    out << arr.dump(2) << "\n";
                    break;
                }
            }
            return all_passed ? 0 : 1;
        }
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace permstat::cli

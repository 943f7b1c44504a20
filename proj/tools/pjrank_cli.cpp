// pjrank: exact moments, p^j-rank laws and verification suites.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or input error.
//
// Output is deterministic byte-for-byte for fixed flags and seed: every
// number is rendered from exact rationals, JSON field order is fixed, and
// reports carry no timestamps.  The default tolerance comes from the
// PJRANK_TOL environment variable when set.

#include "pjrank/pjrank.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

using namespace pjrank;

namespace {

enum class Format { text, json, csv };

Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw CLI::ValidationError("--format must be text, json or csv");
}

Rat default_tol(const char* fallback) {
    if (const char* env = std::getenv("PJRANK_TOL")) return parse_rat(env);
    return parse_rat(fallback);
}

Family make_family(const std::string& name, int u, int delta, const Rat& alpha) {
    if (name == "class") return Family::class_group(u);
    if (name == "sha") return Family::sha(u);
    if (name == "selmer") return Family::selmer(delta, alpha);
    throw std::invalid_argument("--family must be class, sha or selmer");
}

std::string decimal_line(const Enclosure& e, int digits) {
    RoundedDecimal rd = round_decimal(e, digits);
    if (rd.certain) return rd.text + " (certain)";
    return rd.lo_text + " .. " + rd.hi_text + " (ambiguous)";
}

void emit_report(const VerificationReport& rep, Format fmt, std::ostream& os) {
    if (fmt == Format::json) {
        os << report_to_json(rep).dump() << "\n";
        return;
    }
    os << (rep.pass ? "PASS" : "FAIL") << " " << rep.check << " {";
    bool first = true;
    for (const auto& [k, v] : rep.params) {
        if (!first) os << " ";
        first = false;
        os << k << "=" << v;
    }
    // text mode shows decimal summaries; exact endpoints live in --format json
    os << "} lhs~" << decimal_nearest(rep.lhs.mid(), 10) << " (width~"
       << decimal_nearest(rep.lhs.width(), 12) << ") rhs~" << decimal_nearest(rep.rhs.mid(), 10)
       << " residual~" << decimal_nearest(rep.residual, 12) << " tail~"
       << decimal_nearest(rep.tail, 12);
    if (!rep.notes.empty()) os << " ; " << rep.notes;
    os << "\n";
}

int emit_reports(const std::vector<VerificationReport>& reps, Format fmt) {
    bool all = true;
    for (const auto& r : reps) {
        emit_report(r, fmt, std::cout);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

void emit_table_text(const TableReport& rep, std::ostream& os) {
    os << "p  l  rank  printed    certified  enclosure-mid  status\n";
    for (const auto& c : rep.cells) {
        std::string status = c.match ? "match"
                                     : (c.expected_mismatch ? "expected-mismatch (erratum)"
                                                            : "MISMATCH");
        os << c.p << "  " << c.ell << "  " << c.rank << "     " << c.printed;
        for (size_t pad = c.printed.size(); pad < 11; ++pad) os << ' ';
        os << c.certified << "     " << decimal_nearest(c.value.mid(), 7) << "      " << status
           << "\n";
    }
    for (const auto& col : rep.columns) {
        os << "column p=" << col.p << " l=" << col.ell << ": printed mass "
           << decimal_nearest(col.printed_sum, 4)
           << (col.printed_exceeds_one ? "  EXCEEDS 1 (flagged)" : "") << ", recomputed mass "
           << decimal_nearest(col.recomputed_sum.mid(), 7)
           << (col.recomputed_at_most_one ? "" : "  EXCEEDS 1") << "\n";
    }
    os << "matched " << rep.matched << "/" << rep.cells.size() << "; " << rep.notes << "\n";
}

void emit_table_csv(const TableReport& rep, std::ostream& os) {
    os << "p,l,rank,printed,certified,lo,hi,match,expected_mismatch\n";
    for (const auto& c : rep.cells) {
        os << c.p << "," << c.ell << "," << c.rank << "," << c.printed << "," << c.certified << ","
           << rat_str(c.value.lo) << "," << rat_str(c.value.hi) << "," << (c.match ? 1 : 0) << ","
           << (c.expected_mismatch ? 1 : 0) << "\n";
    }
}

void emit_sample_text(const SampleReport& rep, std::ostream& os) {
    os << "sample family=" << rep.family << " p=" << rep.p << " ell=" << rep.ell
       << " R=" << rep.R << " seed=" << rep.seed << " draws=" << rep.draws << "\n";
    os << "rank  count  law-probability\n";
    for (const auto& b : rep.buckets) {
        os << "(" << b.rank << ")  " << b.count << "  " << decimal_nearest(b.probability, 8)
           << (b.within_4se ? "" : "  [outside 4se]") << "\n";
    }
    for (const auto& m : rep.moments) {
        os << "moment lambda=" << m.lambda << " empirical=" << rat_str(m.empirical) << " ~ "
           << decimal_nearest(m.empirical, 6) << " analytic=" << rat_str(m.analytic)
           << (m.within_4se ? " (within 4se)" : " (OUTSIDE 4se)") << "\n";
    }
    os << (rep.pass ? "PASS" : "FAIL") << " sample\n";
}

std::vector<Partition> grid_partitions(int max_part, int max_len) {
    return partitions_up_to(max_part, max_len);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Cohen-Lenstra style moments and p^j-rank laws"};
    app.require_subcommand(1);

    std::string family_name = "class", lambda_text, joint_text, format_str = "text";
    std::string mix_str = "1/2", alpha_str = "1/2", tol_str, seed_str = "1";
    int p = 3, u = 0, delta = 0, ell = 1, k = 0, rank = -1, R = 20, digits = 4;
    int max_size = 6, max_part = 2, max_len = 2;
    long draws = 1000000;
    std::vector<std::string> lambda_list;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_str, "text, json or csv");
    };

    // moment
    auto* cmd_moment = app.add_subcommand("moment", "exact moment of a family at lambda");
    cmd_moment->add_option("--family", family_name, "class, sha or selmer")->required();
    cmd_moment->add_option("--p", p, "prime")->required();
    cmd_moment->add_option("--lambda", lambda_text, "partition, e.g. \"2,1\" or \"1^2 2^1\"");
    cmd_moment->add_option("--u", u, "weight parameter (class, sha)");
    cmd_moment->add_option("--digits", digits, "decimal digits shown");
    add_common(cmd_moment);

    // ranklaw
    auto* cmd_ranklaw = app.add_subcommand("ranklaw", "joint or marginal rank-law probability");
    cmd_ranklaw->add_option("--family", family_name)->required();
    cmd_ranklaw->add_option("--p", p, "prime")->required();
    cmd_ranklaw->add_option("--joint", joint_text, "rank vector, trailing zeros significant");
    cmd_ranklaw->add_option("--l", ell, "marginal: p^l-rank layer");
    cmd_ranklaw->add_option("--k", k, "marginal rank value (class, sha)");
    cmd_ranklaw->add_option("--rank", rank, "marginal Selmer rank 2k+delta");
    cmd_ranklaw->add_option("--u", u, "weight parameter (class, sha)");
    cmd_ranklaw->add_option("--delta", delta, "Selmer parity slice (joint)");
    cmd_ranklaw->add_option("--alpha", alpha_str, "Selmer even-rank mixture");
    cmd_ranklaw->add_option("--tol", tol_str, "enclosure width target");
    cmd_ranklaw->add_option("--digits", digits, "decimal digits shown");
    add_common(cmd_ranklaw);

    // verify + subchecks
    auto* cmd_verify = app.add_subcommand("verify", "verification suites");
    cmd_verify->require_subcommand(1);

    auto* v_system = cmd_verify->add_subcommand("system", "moment-system residual at truncation");
    v_system->add_option("--family", family_name)->required();
    v_system->add_option("--p", p)->required();
    v_system->add_option("--u", u);
    v_system->add_option("--delta", delta);
    v_system->add_option("--alpha", alpha_str);
    v_system->add_option("--lambda", lambda_text);
    bool system_grid = false;
    v_system->add_flag("--grid", system_grid, "run the full desk grid instead of one lambda");
    v_system->add_option("--R", R, "rank-vector truncation");
    v_system->add_option("--tol", tol_str);
    add_common(v_system);

    auto* v_usol = cmd_verify->add_subcommand("usolution", "mixed-parity solution of the conjugated system");
    v_usol->add_option("--mix", mix_str, "even-part weight in [0,1]");
    v_usol->add_option("--p", p)->required();
    v_usol->add_option("--u", u);
    v_usol->add_option("--max-part", max_part);
    v_usol->add_option("--max-len", max_len);
    v_usol->add_option("--R", R);
    v_usol->add_option("--tol", tol_str);
    add_common(v_usol);

    auto* v_tables = cmd_verify->add_subcommand("tables", "reproduce the published rank tables");
    v_tables->add_option("--tol", tol_str);
    add_common(v_tables);

    auto* v_identity = cmd_verify->add_subcommand("identity", "parity duality identity, exact");
    std::vector<int> identity_primes{2, 3, 5};
    v_identity->add_option("--p", identity_primes, "primes to check");
    v_identity->add_option("--max-size", max_size, "largest |lambda|");
    add_common(v_identity);

    auto* v_norm = cmd_verify->add_subcommand("normalization", "truncated law mass reaches 1");
    v_norm->add_option("--family", family_name)->required();
    v_norm->add_option("--p", p)->required();
    v_norm->add_option("--u", u);
    v_norm->add_option("--alpha", alpha_str);
    v_norm->add_option("--l", ell);
    v_norm->add_option("--R", R);
    v_norm->add_option("--tol", tol_str);
    add_common(v_norm);

    auto* v_limits = cmd_verify->add_subcommand("limits", "large-l and large-p limits");
    v_limits->add_option("--tol", tol_str);
    add_common(v_limits);

    auto* v_marg = cmd_verify->add_subcommand("marginalization", "joint sums equal marginals");
    v_marg->add_option("--family", family_name)->required();
    v_marg->add_option("--p", p)->required();
    v_marg->add_option("--u", u);
    v_marg->add_option("--delta", delta);
    v_marg->add_option("--alpha", alpha_str);
    v_marg->add_option("--l", ell);
    v_marg->add_option("--k", k);
    v_marg->add_option("--R", R);
    v_marg->add_option("--tol", tol_str);
    add_common(v_marg);

    auto* v_sample = cmd_verify->add_subcommand("sample", "seeded Monte-Carlo cross-validation");
    v_sample->add_option("--family", family_name)->required();
    v_sample->add_option("--p", p)->required();
    v_sample->add_option("--u", u);
    v_sample->add_option("--alpha", alpha_str);
    v_sample->add_option("--l", ell);
    v_sample->add_option("--R", R);
    v_sample->add_option("--seed", seed_str);
    v_sample->add_option("--n", draws, "number of draws");
    v_sample->add_option("--lambda", lambda_list, "moment partitions to validate");
    add_common(v_sample);

    auto* v_all = cmd_verify->add_subcommand("all", "tables + identity + systems + limits");
    v_all->add_option("--tol", tol_str);
    add_common(v_all);

    CLI11_PARSE(app, argc, argv);

    try {
        Format fmt = parse_format(format_str);
        const Rat alpha = parse_rat(alpha_str);

        if (cmd_moment->parsed()) {
            Family fam = make_family(family_name, u, delta, alpha);
            Partition lam = Partition::parse(lambda_text);
            Rat value = moment(fam, lam, p);
            if (fmt == Format::json) {
                ordered_json j{{"command", "moment"}, {"family", fam.str()},
                               {"p", p},             {"lambda", lam.str()},
                               {"value", rat_str(value)}, {"decimal", decimal_nearest(value, digits)}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "exact: " << rat_str(value) << "\n"
                          << "decimal: " << decimal_nearest(value, digits) << "\n";
            }
            return 0;
        }

        if (cmd_ranklaw->parsed()) {
            const Rat tol = tol_str.empty() ? default_tol("1e-9") : parse_rat(tol_str);
            Enclosure law;
            std::string what;
            if (!joint_text.empty()) {
                RankVector mu = parse_rank_vector(joint_text);
                if (family_name == "class")
                    law = joint_class(mu, p, u, tol);
                else if (family_name == "sha")
                    law = joint_sha(mu, p, u, tol);
                else
                    law = joint_selmer(mu, p, delta, alpha, tol);
                what = "joint(" + mu.str() + ")";
            } else {
                if (family_name == "class")
                    law = marginal_class(p, ell, k, u, tol);
                else if (family_name == "sha")
                    law = marginal_sha(p, ell, k, u, tol);
                else {
                    int rk = rank >= 0 ? rank : k;
                    law = marginal_selmer(p, ell, rk / 2, rk % 2, alpha, tol);
                    what = "marginal(l=" + std::to_string(ell) + ", rank=" + std::to_string(rk) + ")";
                }
                if (what.empty())
                    what = "marginal(l=" + std::to_string(ell) + ", k=" + std::to_string(k) + ")";
            }
            if (family_name == "class" && p == 2)
                std::cerr << "note: for p = 2 the class-group law describes cl^2 "
                             "(squares of class groups)\n";
            if (fmt == Format::json) {
                ordered_json j{{"command", "ranklaw"},
                               {"family", family_name},
                               {"p", p},
                               {"what", what},
                               {"lo", rat_str(law.lo)},
                               {"hi", rat_str(law.hi)},
                               {"decimal", decimal_line(law, digits)}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "enclosure: [" << rat_str(law.lo) << ", " << rat_str(law.hi) << "]\n"
                          << "decimal: " << decimal_line(law, digits) << "\n";
            }
            return 0;
        }

        // verify subcommands
        if (v_system->parsed()) {
            const Rat tol = tol_str.empty() ? default_tol("1e-6") : parse_rat(tol_str);
            std::vector<VerificationReport> reps;
            if (system_grid) {
                for (const Partition& lam : grid_partitions(2, 2)) {
                    Family fam = make_family(family_name, u, delta, alpha);
                    reps.push_back(check_system(fam, lam, p, tol, R));
                }
            } else {
                Family fam = make_family(family_name, u, delta, alpha);
                reps.push_back(check_system(fam, Partition::parse(lambda_text), p, tol, R));
            }
            return emit_reports(reps, fmt);
        }
        if (v_usol->parsed()) {
            const Rat tol = tol_str.empty() ? default_tol("1e-6") : parse_rat(tol_str);
            auto reps = check_U_solution(parse_rat(mix_str), p, u, grid_partitions(max_part, max_len),
                                         tol, R);
            return emit_reports(reps, fmt);
        }
        if (v_tables->parsed()) {
            const Rat tol = tol_str.empty() ? default_tol("1e-6") : parse_rat(tol_str);
            TableReport rep = reproduce_tables(tol);
            if (fmt == Format::json) {
                ordered_json j = table_report_to_json(rep);
                for (const auto& cell : j["cells"]) std::cout << cell.dump() << "\n";
                std::cout << j["summary"].dump() << "\n";
            } else if (fmt == Format::csv) {
                emit_table_csv(rep, std::cout);
            } else {
                emit_table_text(rep, std::cout);
            }
            return rep.pass ? 0 : 1;
        }
        if (v_identity->parsed()) {
            bool all = true;
            for (int prime : identity_primes) {
                for (const Partition& lam : partitions_up_to(max_size, max_size)) {
                    if (lam.size() > max_size) continue;
                    bool ok = duality_holds(lam, prime);
                    all = all && ok;
                    if (fmt == Format::json) {
                        ordered_json j{{"check", "identity"},
                                       {"params", ordered_json{{"p", std::to_string(prime)},
                                                               {"lambda", "(" + lam.str() + ")"}}},
                                       {"lhs", ordered_json{{"lo", "0"}, {"hi", "0"}}},
                                       {"rhs", ordered_json{{"lo", "0"}, {"hi", "0"}}},
                                       {"residual", "0"},
                                       {"tail", "0"},
                                       {"pass", ok},
                                       {"notes", "exact rational comparison"}};
                        std::cout << j.dump() << "\n";
                    } else if (!ok) {
                        std::cout << "FAIL identity p=" << prime << " lambda=(" << lam.str() << ")\n";
                    }
                }
            }
            if (fmt == Format::text)
                std::cout << (all ? "PASS" : "FAIL") << " identity (exact duality suite)\n";
            return all ? 0 : 1;
        }
        if (v_norm->parsed()) {
            const Rat tol = tol_str.empty() ? default_tol("1e-6") : parse_rat(tol_str);
            Family fam = make_family(family_name, u, delta, alpha);
            return emit_reports({check_normalization(fam, p, ell, tol, R)}, fmt);
        }
        if (v_limits->parsed()) {
            const Rat tol = tol_str.empty() ? default_tol("1e-8") : parse_rat(tol_str);
            return emit_reports(check_limits(tol), fmt);
        }
        if (v_marg->parsed()) {
            const Rat tol = tol_str.empty() ? default_tol("1e-8") : parse_rat(tol_str);
            Family fam = make_family(family_name, u, delta, alpha);
            return emit_reports({check_marginalization(fam, p, ell, k, tol, R)}, fmt);
        }
        if (v_sample->parsed()) {
            Family fam = make_family(family_name, u, delta, alpha);
            std::vector<Partition> lambdas;
            for (const auto& s : lambda_list) lambdas.push_back(Partition::parse(s));
            if (lambdas.empty()) lambdas.push_back(Partition({1}));
            std::uint64_t seed = std::stoull(seed_str);
            SampleReport rep = sample_ranks(seed, draws, fam, p, ell, R, lambdas);
            if (fmt == Format::json)
                std::cout << sample_report_to_json(rep).dump() << "\n";
            else
                emit_sample_text(rep, std::cout);
            return rep.pass ? 0 : 1;
        }
        if (v_all->parsed()) {
            const Rat tol = tol_str.empty() ? default_tol("1e-6") : parse_rat(tol_str);
            bool all = true;

            TableReport tables = reproduce_tables(tol);
            all = all && tables.pass;
            if (fmt == Format::json) {
                ordered_json j = table_report_to_json(tables);
                for (const auto& cell : j["cells"]) std::cout << cell.dump() << "\n";
                std::cout << j["summary"].dump() << "\n";
            } else {
                emit_table_text(tables, std::cout);
            }

            for (int prime : {2, 3, 5})
                for (const Partition& lam : partitions_up_to(6, 6))
                    if (lam.size() <= 6) all = all && duality_holds(lam, prime);
            if (fmt == Format::text) std::cout << (all ? "PASS" : "FAIL") << " identity suite\n";

            std::vector<VerificationReport> reps;
            auto grid = grid_partitions(2, 2);
            for (const Partition& lam : grid) {
                for (int uu : {0, 1}) {
                    for (int pp : {3, 5}) reps.push_back(check_system(Family::class_group(uu), lam, pp, tol, R));
                    for (int pp : {2, 3}) reps.push_back(check_system(Family::sha(uu), lam, pp, tol, R));
                }
                for (int pp : {2, 3})
                    for (int dd : {0, 1})
                        reps.push_back(check_system(Family::selmer(dd, Rat(1, 2)), lam, pp, tol, R));
            }
            for (const Rat& mix : {Rat(0), Rat(3, 10), Rat(1)}) {
                auto ureps = check_U_solution(mix, 2, 0, grid, tol, R);
                reps.insert(reps.end(), ureps.begin(), ureps.end());
            }
            reps.push_back(check_marginalization(Family::class_group(0), 3, 2, 0, parse_rat("1e-8"), 25));
            reps.push_back(check_marginalization(Family::class_group(0), 3, 1, 1, parse_rat("1e-8"), 25));
            reps.push_back(check_marginalization(Family::sha(0), 2, 2, 1, parse_rat("1e-8"), 25));
            reps.push_back(check_normalization(Family::class_group(0), 3, 1, tol, 25));
            reps.push_back(check_normalization(Family::class_group(0), 3, 2, tol, 25));
            reps.push_back(check_normalization(Family::sha(1), 5, 2, tol, 25));
            reps.push_back(check_normalization(Family::selmer(0, Rat(1, 2)), 2, 1, tol, 25));
            auto lims = check_limits();
            reps.insert(reps.end(), lims.begin(), lims.end());
            int rc = emit_reports(reps, fmt);
            return (all && rc == 0) ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

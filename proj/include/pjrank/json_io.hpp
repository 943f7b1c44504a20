#pragma once

// JSON renderings of reports.  Field order is fixed (ordered_json) so that
// identical inputs serialize byte-for-byte identically; rationals are
// emitted as "num/den" strings, never as floats.  The object layout is
// published in docs/report-schema.json.

#include "pjrank/verify.hpp"

#include <json.hpp>

#include <string>

namespace pjrank {

using ordered_json = nlohmann::ordered_json;

inline ordered_json enclosure_to_json(const Enclosure& e) {
    return ordered_json{{"lo", rat_str(e.lo)}, {"hi", rat_str(e.hi)}};
}

inline ordered_json report_to_json(const VerificationReport& r) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    return ordered_json{{"check", r.check},
                        {"params", params},
                        {"lhs", enclosure_to_json(r.lhs)},
                        {"rhs", enclosure_to_json(r.rhs)},
                        {"residual", rat_str(r.residual)},
                        {"tail", rat_str(r.tail)},
                        {"pass", r.pass},
                        {"notes", r.notes}};
}

// Table cells are emitted in the common report shape: rhs is the printed
// value widened by its one-ulp window.
inline ordered_json table_cell_to_json(const TableCell& c) {
    ordered_json params = ordered_json::object();
    params["p"] = std::to_string(c.p);
    params["ell"] = std::to_string(c.ell);
    params["rank"] = std::to_string(c.rank);
    params["printed"] = c.printed;
    params["certified"] = c.certified;
    params["expected_mismatch"] = c.expected_mismatch ? "true" : "false";
    bool pass = c.expected_mismatch ? (c.decided && !c.match) : c.match;
    return ordered_json{
        {"check", "tables.cell"},
        {"params", params},
        {"lhs", enclosure_to_json(c.value)},
        {"rhs", enclosure_to_json(Enclosure(c.printed_value - c.ulp, c.printed_value + c.ulp))},
        {"residual", rat_str(rat_abs(c.value.mid() - c.printed_value))},
        {"tail", "0"},
        {"pass", pass},
        {"notes", c.match ? "match within one printed ulp"
                          : (c.expected_mismatch ? "expected mismatch (erratum); certified value reported"
                                                 : "mismatch")}};
}

inline ordered_json table_report_to_json(const TableReport& t) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : t.cells) arr.push_back(table_cell_to_json(c));
    ordered_json cols = ordered_json::array();
    for (const auto& col : t.columns) {
        cols.push_back(ordered_json{{"p", col.p},
                                    {"ell", col.ell},
                                    {"printed_sum", rat_str(col.printed_sum)},
                                    {"printed_exceeds_one", col.printed_exceeds_one},
                                    {"recomputed_sum", enclosure_to_json(col.recomputed_sum)},
                                    {"recomputed_at_most_one", col.recomputed_at_most_one}});
    }
    ordered_json summary{{"check", "tables.summary"},
                         {"params", ordered_json{{"matched", std::to_string(t.matched)},
                                                 {"cells", std::to_string(t.cells.size())}}},
                         {"lhs", enclosure_to_json(Enclosure(Rat(t.matched)))},
                         {"rhs", enclosure_to_json(Enclosure(Rat(35)))},
                         {"residual", "0"},
                         {"tail", "0"},
                         {"pass", t.pass},
                         {"notes", t.notes}};
    return ordered_json{{"cells", arr}, {"columns", cols}, {"summary", summary}};
}

inline ordered_json sample_report_to_json(const SampleReport& s) {
    ordered_json buckets = ordered_json::array();
    for (const auto& b : s.buckets) {
        buckets.push_back(ordered_json{{"rank", b.rank},
                                       {"count", b.count},
                                       {"probability", rat_str(b.probability)},
                                       {"within_4se", b.within_4se}});
    }
    ordered_json moments = ordered_json::array();
    for (const auto& m : s.moments) {
        moments.push_back(ordered_json{{"lambda", m.lambda},
                                       {"empirical", rat_str(m.empirical)},
                                       {"analytic", rat_str(m.analytic)},
                                       {"se2", rat_str(m.se2)},
                                       {"within_4se", m.within_4se}});
    }
    return ordered_json{{"check", "sample"},
                        {"params", ordered_json{{"seed", std::to_string(s.seed)},
                                                {"draws", std::to_string(s.draws)},
                                                {"family", s.family},
                                                {"p", std::to_string(s.p)},
                                                {"ell", std::to_string(s.ell)},
                                                {"R", std::to_string(s.R)}}},
                        {"buckets", buckets},
                        {"moments", moments},
                        {"pass", s.pass},
                        {"notes", s.notes}};
}

}  // namespace pjrank

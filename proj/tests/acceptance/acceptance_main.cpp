// Acceptance suite: nine integration criteria, one pass/fail line each.
// Exits nonzero if any criterion fails.  Every tolerance is pinned here.

#include "pjrank/pjrank.hpp"

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

using namespace pjrank;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++failures;
}

// 1. Reproduce the 36 published table entries with certified rounding;
//    >= 35 must match within one printed ulp, and the (p=2, l=2, rank=3)
//    entry must mismatch (printed column mass 1.0905 > 1) and be reported
//    with the certified recomputation.  Runtime target: under a minute.
void criterion_tables() {
    auto start = std::chrono::steady_clock::now();
    TableReport rep = reproduce_tables();
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();

    bool erratum_ok = false;
    int unexpected = 0;
    std::string certified_erratum;
    for (const auto& c : rep.cells) {
        if (c.p == 2 && c.ell == 2 && c.rank == 3) {
            erratum_ok = c.decided && !c.match && c.expected_mismatch;
            certified_erratum = c.certified;
        } else if (!c.match) {
            ++unexpected;
        }
    }
    bool column_flagged = false;
    for (const auto& col : rep.columns)
        if (col.p == 2 && col.ell == 2 && col.printed_exceeds_one) column_flagged = true;

    bool pass = rep.matched >= 35 && erratum_ok && column_flagged && unexpected == 0 &&
                elapsed < 60000;
    report(1, "table reproduction (36 cells, certified 4-decimal rounding)", pass,
           "matched " + std::to_string(rep.matched) + "/36, erratum cell certified " +
               certified_erratum + " vs printed 0.1009, " + std::to_string(elapsed) + " ms");
}

// 2. Davenport-Heilbronn moment anchors, exact.
void criterion_moment_anchors() {
    bool pass = moment(Family::class_group(0), Partition({1}), 3) == 2 &&
                moment(Family::class_group(1), Partition({1}), 3) == Rat(4, 3);
    report(2, "moment anchors: class u=0 gives 2, u=1 gives 4/3 at p=3, lambda=(1)", pass);
}

// 3. Closed-form subgroup counts equal brute-force enumeration for every
//    |lambda| <= 4, mu <= lambda, p in {2,3}; totals agree as well.
void criterion_oracle_equivalence() {
    long checked = 0;
    bool pass = true;
    for (int p : {2, 3}) {
        for (const Partition& lam : partitions_up_to(4, 4)) {
            if (lam.size() > 4) continue;
            auto census = subgroup_census(lam, p);
            long enumerated_total = 0;
            for (const auto& [mu, count] : census) enumerated_total += count;
            Rat formula_total(0);
            for (const Partition& mu : subpartitions(lam)) {
                Rat formula = subgroup_count(lam, mu, Rat(p));
                auto it = census.find(mu);
                long enumerated = it == census.end() ? 0 : it->second;
                pass = pass && formula == enumerated;
                formula_total += formula;
                ++checked;
            }
            pass = pass && formula_total == enumerated_total;
        }
    }
    report(3, "subgroup-count formula equals brute-force enumeration", pass,
           std::to_string(checked) + " (lambda, mu, p) triples, zero discrepancies required");
}

// 4. Parity duality identity, exact, |lambda| <= 6, p in {2,3,5}.
void criterion_duality() {
    long checked = 0;
    bool pass = true;
    for (int p : {2, 3, 5}) {
        for (const Partition& lam : partitions_up_to(6, 6)) {
            if (lam.size() > 6) continue;
            pass = pass && duality_holds(lam, p);
            ++checked;
        }
    }
    report(4, "duality identity p^{|l|} sum C p^{-|mu|} = sum C p^{|mu|}", pass,
           std::to_string(checked) + " (lambda, p) pairs");
}

// 5. System residuals <= 1e-6 at R <= 20 over the full desk grid, and the
//    mixed-parity solutions at mix in {0, 3/10, 1}.
void criterion_systems() {
    const Rat tol = parse_rat("1e-6");
    const int R = 20;
    auto grid = partitions_up_to(2, 2);
    bool pass = true;
    long checks = 0;
    for (const Partition& lam : grid) {
        for (int u : {0, 1}) {
            for (int p : {3, 5}) {
                pass = pass && check_system(Family::class_group(u), lam, p, tol, R).pass;
                ++checks;
            }
            for (int p : {2, 3}) {
                pass = pass && check_system(Family::sha(u), lam, p, tol, R).pass;
                ++checks;
            }
        }
        for (int p : {2, 3}) {
            for (int delta : {0, 1}) {
                pass = pass && check_system(Family::selmer(delta, Rat(1, 2)), lam, p, tol, R).pass;
                ++checks;
            }
        }
    }
    for (const Rat& mix : {Rat(0), Rat(3, 10), Rat(1)}) {
        for (const auto& rep : check_U_solution(mix, 2, 0, grid, tol, R)) {
            pass = pass && rep.pass;
            ++checks;
        }
    }
    report(5, "system residuals <= 1e-6 at R <= 20, including mix in {0, 3/10, 1}", pass,
           std::to_string(checks) + " residual checks");
}

// 6. rank_multisum and the alternating Andrews form agree: overlapping
//    enclosures with combined width < 1e-8 over the stated grid.
void criterion_summation_identity() {
    const Rat tol = parse_rat("2e-9");
    const Rat width_cap = parse_rat("1e-8");
    bool pass = true;
    for (const Rat& q : {Rat(1, 3), Rat(1, 4)}) {
        for (int ell : {2, 3}) {
            for (long s : {0L, 1L, 2L}) {
                Enclosure multi = rank_multisum(q, ell, s, tol);
                Enclosure alt = andrews_q(q, ell, rat_pow(q, s - 1), tol);
                pass = pass && multi.overlaps(alt) && multi.width() + alt.width() < width_cap;
            }
        }
    }
    report(6, "nested rank sum equals the alternating series (width < 1e-8)", pass,
           "12 grid points");
}

// 7. Joint-to-marginal agreement within 1e-8, and truncated normalization
//    >= 1 - 1e-6 at R = 25 for l <= 2.
void criterion_marginalization_normalization() {
    const Rat tol8 = parse_rat("1e-8");
    const Rat tol6 = parse_rat("1e-6");
    bool pass = true;
    pass = pass && check_marginalization(Family::class_group(0), 3, 2, 0, tol8, 25).pass;
    pass = pass && check_marginalization(Family::class_group(0), 3, 1, 1, tol8, 25).pass;
    pass = pass && check_marginalization(Family::sha(0), 2, 2, 1, tol8, 25).pass;

    for (int ell : {1, 2}) {
        auto a = check_normalization(Family::class_group(0), 3, ell, tol6, 25);
        pass = pass && a.pass && a.lhs.mid() >= 1 - tol6;
        auto b = check_normalization(Family::sha(1), 5, ell, tol6, 25);
        pass = pass && b.pass && b.lhs.mid() >= 1 - tol6;
        auto c = check_normalization(Family::selmer(0, Rat(1, 2)), 2, ell, tol6, 25);
        pass = pass && c.pass && c.lhs.mid() >= 1 - tol6;
    }
    report(7, "marginalization within 1e-8; normalization >= 1 - 1e-6 at R = 25", pass);
}

// 8. Limits: |f(2,40,0) - 1/2| < 1e-4, |f(2,40,2)| < 1e-4,
//    |f(101,1,0) - 1/2| < 1e-2, and Q at l = 40 within 1e-6 of 1/(xq^2;q)_inf.
void criterion_limits() {
    bool pass = true;
    std::string detail;
    for (const auto& rep : check_limits()) {
        pass = pass && rep.pass;
        if (!rep.pass) detail += rep.check + " ";
    }
    report(8, "large-l and large-p limits at pinned thresholds", pass, detail);
}

// 9. Monte-Carlo: seed 1, N = 10^6 draws from the class u=0, p=3, l=1 law;
//    empirical E[3^r] within 4 standard errors of 2; identical reruns.
void criterion_monte_carlo() {
    auto rep = sample_ranks(1, 1000000, Family::class_group(0), 3, 1, 12, {Partition({1})});
    auto rep2 = sample_ranks(1, 1000000, Family::class_group(0), 3, 1, 12, {Partition({1})});
    bool identical = sample_report_to_json(rep).dump() == sample_report_to_json(rep2).dump();
    bool within = !rep.moments.empty() && rep.moments[0].within_4se &&
                  rep.moments[0].analytic == 2;
    report(9, "Monte-Carlo moment within 4 standard errors; rerun bit-identical",
           identical && within,
           "empirical " + decimal_nearest(rep.moments[0].empirical, 6) + " vs analytic 2");
}

}  // namespace

int main() {
    criterion_tables();
    criterion_moment_anchors();
    criterion_oracle_equivalence();
    criterion_duality();
    criterion_systems();
    criterion_summation_identity();
    criterion_marginalization_normalization();
    criterion_limits();
    criterion_monte_carlo();
    if (failures == 0) {
        std::cout << "all acceptance criteria passed" << std::endl;
        return 0;
    }
    std::cout << failures << " acceptance criteria failed" << std::endl;
    return 1;
}

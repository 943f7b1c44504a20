#pragma once

// Subgroup counting in finite abelian p-groups.
//
// The group of type lambda is  G = (+)_i Z/p^{lambda_i}Z.  The number of
// subgroups of G isomorphic to the group of type mu is
//
//   C_{lambda,mu}(p) = p^{sum_i mu'_{i+1} (lambda'_i - mu'_i)}
//                      * prod_i [lambda'_i - mu'_{i+1}  choose  lambda'_i - mu'_i]_p
//
// with i running to the length of lambda' and mu' entries beyond its
// length read as 0.  It is a polynomial in p with nonnegative integer
// coefficients; both the evaluated and the polynomial forms are provided.
//
// An independent brute-force oracle enumerates every subgroup of a small
// explicit group (breadth-first closure over cyclic extensions <H, g>,
// deduplicated by element set) and classifies each one by its order
// statistics: for an abelian p-group the counts #{x : p^j x = 0} determine
// the type, since #{x : p^j x = 0} = p^{mu'_1 + ... + mu'_j}.

#include "pjrank/partition.hpp"
#include "pjrank/qseries.hpp"
#include "pjrank/rational.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace pjrank {

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat subgroup_count(const Partition& lambda, const Partition& mu, const Rat& base) {
    if (!contains(lambda, mu)) return Rat(0);
    Partition lc = lambda.conjugate();
    Partition mc = mu.conjugate();
    long exponent = 0;
    Rat prod(1);
    for (int i = 0; i < lc.length(); ++i) {
        exponent += static_cast<long>(mc.part(i + 1)) * (lc.part(i) - mc.part(i));
        prod *= qbinom(lc.part(i) - mc.part(i + 1), lc.part(i) - mc.part(i), base);
    }
    return rat_pow(base, exponent) * prod;
}

inline IntPoly subgroup_count_poly(const Partition& lambda, const Partition& mu) {
    if (!contains(lambda, mu)) return poly_zero();
    Partition lc = lambda.conjugate();
    Partition mc = mu.conjugate();
    long exponent = 0;
    IntPoly prod{Int(1)};
    for (int i = 0; i < lc.length(); ++i) {
        exponent += static_cast<long>(mc.part(i + 1)) * (lc.part(i) - mc.part(i));
        prod = poly_mul(prod, qbinom_poly(lc.part(i) - mc.part(i + 1), lc.part(i) - mc.part(i)));
    }
    return poly_shift(prod, exponent);
}

namespace detail {

// Mixed-radix arithmetic in (+)_i Z/p^{lambda_i}Z, elements coded 0..|G|-1.
struct SmallGroup {
    int p;
    std::vector<long> mods;  // p^{lambda_i}
    long order;

    SmallGroup(const Partition& lambda, int p_, long cap) : p(p_) {
        order = 1;
        for (int part : lambda.parts()) {
            long m = 1;
            for (int j = 0; j < part; ++j) m *= p;
            mods.push_back(m);
            if (order > cap / m) throw capacity_error("subgroup oracle: group order exceeds cap");
            order *= m;
        }
        if (order > cap) throw capacity_error("subgroup oracle: group order exceeds cap");
    }

    long add(long a, long b) const {
        long out = 0, scale = 1;
        for (long m : mods) {
            long ca = a % m, cb = b % m;
            out += ((ca + cb) % m) * scale;
            a /= m;
            b /= m;
            scale *= m;
        }
        return out;
    }

    // true iff p^j * x = 0
    bool killed_by(long x, int j) const {
        for (long m : mods) {
            long c = x % m;
            long pj = 1;
            for (int t = 0; t < j && pj < m; ++t) pj *= p;
            if ((c * (pj % m)) % m != 0) return false;
            x /= m;
        }
        return true;
    }
};

inline Partition classify_type(const SmallGroup& g, const std::vector<long>& elems, int max_exp) {
    std::vector<int> conj;  // mu'_j = rk_{p^j}
    long prev = 1;
    for (int j = 1; j <= max_exp; ++j) {
        long nj = 0;
        for (long x : elems)
            if (g.killed_by(x, j)) ++nj;
        long ratio = nj / prev;
        int log = 0;
        while (ratio > 1) {
            ratio /= g.p;
            ++log;
        }
        conj.push_back(log);
        prev = nj;
    }
    return Partition(conj).conjugate();
}

}  // namespace detail

// Enumerates every subgroup of the group of type lambda over the prime p and
// tallies them by type.  The default cap of 2^10 elements keeps this an
// oracle for desk-scale groups only.
inline std::map<Partition, long> subgroup_census(const Partition& lambda, int p, long cap = 1024) {
    detail::SmallGroup g(lambda, p, cap);
    int max_exp = lambda.part(0);

    std::set<std::vector<long>> seen;
    std::vector<std::vector<long>> frontier;
    std::vector<long> trivial{0};
    seen.insert(trivial);
    frontier.push_back(trivial);

    while (!frontier.empty()) {
        std::vector<std::vector<long>> next;
        for (const auto& h : frontier) {
            for (long gen = 1; gen < g.order; ++gen) {
                if (std::binary_search(h.begin(), h.end(), gen)) continue;
                // <H, gen> = union of cosets H + k*gen (abelian)
                std::set<long> ext(h.begin(), h.end());
                long kg = gen;
                while (!std::binary_search(h.begin(), h.end(), kg)) {
                    for (long x : h) ext.insert(g.add(x, kg));
                    kg = g.add(kg, gen);
                }
                std::vector<long> key(ext.begin(), ext.end());
                if (seen.insert(key).second) next.push_back(std::move(key));
            }
        }
        frontier = std::move(next);
    }

    std::map<Partition, long> census;
    for (const auto& h : seen) ++census[detail::classify_type(g, h, max_exp)];
    return census;
}

inline long count_subgroups_bruteforce(const Partition& lambda, const Partition& mu, int p,
                                       long cap = 1024) {
    auto census = subgroup_census(lambda, p, cap);
    auto it = census.find(mu);
    return it == census.end() ? 0 : it->second;
}

}  // namespace pjrank

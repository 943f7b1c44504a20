#pragma once

// Conjectural moments for the three families, the parity duality identity,
// and the growth-bound diagnostics.
//
// For a partition lambda and prime p the moment sums are
//
//   class group, parameter u >= 0 :  sum_{mu <= lambda} C_{lambda,mu}(p)   p^{-u|mu|}
//   Sha,         parameter u >= 0 :  sum_{mu <= lambda} C_{lambda,mu}(p^2) p^{-|mu|(2u-1)}
//   Selmer                        :  sum_{mu <= lambda} C_{lambda,mu}(p^2) p^{|mu|}
//
// (the Selmer sum is the u = 0 instance of the Sha sum).  The duality
// identity ties the two Selmer parity slices together:
//
//   p^{|lambda|} sum_mu C_{lambda,mu}(p^2) p^{-|mu|}  =  sum_mu C_{lambda,mu}(p^2) p^{|mu|}
//
// and is checked exactly.  Growth diagnostics report the pair
// (moment, (lambda'|lambda')); comparisons against c * p^{(l'|l')/2} go
// through squared inequalities so that everything stays rational.

#include "pjrank/partition.hpp"
#include "pjrank/rational.hpp"
#include "pjrank/subgroups.hpp"

#include <stdexcept>
#include <string>

namespace pjrank {

inline bool is_small_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(int p) {
    if (!is_small_prime(p)) throw std::invalid_argument("p must be a prime >= 2");
}

struct Family {
    enum class Kind { class_group, sha, selmer };

    Kind kind = Kind::class_group;
    int u = 0;               // class_group, sha
    int delta = 0;           // selmer parity slice (0: even ranks, 1: odd ranks)
    Rat alpha = Rat(1, 2);   // selmer even-rank mixture weight

    static Family class_group(int u_) {
        if (u_ < 0) throw std::invalid_argument("Family: u must be >= 0");
        Family f;
        f.kind = Kind::class_group;
        f.u = u_;
        return f;
    }
    static Family sha(int u_) {
        if (u_ < 0) throw std::invalid_argument("Family: u must be >= 0");
        Family f;
        f.kind = Kind::sha;
        f.u = u_;
        return f;
    }
    static Family selmer(int delta_, const Rat& alpha_) {
        if (delta_ != 0 && delta_ != 1) throw std::invalid_argument("Family: delta must be 0 or 1");
        if (alpha_ < 0 || alpha_ > 1) throw std::invalid_argument("Family: alpha must lie in [0,1]");
        Family f;
        f.kind = Kind::selmer;
        f.delta = delta_;
        f.alpha = alpha_;
        return f;
    }

    std::string str() const {
        switch (kind) {
            case Kind::class_group: return "class(u=" + std::to_string(u) + ")";
            case Kind::sha: return "sha(u=" + std::to_string(u) + ")";
            case Kind::selmer:
                return "selmer(delta=" + std::to_string(delta) + ",alpha=" + alpha.get_str() + ")";
        }
        return "?";
    }
};

inline Rat moment(const Family& fam, const Partition& lambda, int p) {
    require_prime(p);
    Rat total(0);
    const Rat base = fam.kind == Family::Kind::class_group ? Rat(p) : Rat(p) * p;
    for (const Partition& mu : subpartitions(lambda)) {
        long m = mu.size();
        long weight_exp = 0;
        switch (fam.kind) {
            case Family::Kind::class_group: weight_exp = -static_cast<long>(fam.u) * m; break;
            case Family::Kind::sha: weight_exp = -(2L * fam.u - 1) * m; break;
            case Family::Kind::selmer: weight_exp = m; break;
        }
        total += subgroup_count(lambda, mu, base) * rat_pow(Rat(p), weight_exp);
    }
    return total;
}

inline bool duality_holds(const Partition& lambda, int p) {
    require_prime(p);
    const Rat psq = Rat(p) * p;
    Rat lhs(0), rhs(0);
    for (const Partition& mu : subpartitions(lambda)) {
        Rat c = subgroup_count(lambda, mu, psq);
        lhs += c * rat_pow(Rat(p), -mu.size());
        rhs += c * rat_pow(Rat(p), mu.size());
    }
    lhs *= rat_pow(Rat(p), lambda.size());
    return lhs == rhs;
}

// Boundedness diagnostics: class moments are O(p^{(l'|l')/2}), Sha moments
// O(p^{(l'|l')}).  Half-integer powers are never formed; growth_within
// compares squares instead.
struct GrowthDiagnostic {
    Family::Kind kind;
    Rat moment_value;
    long conj_pairing;  // (lambda'|lambda')
};

inline GrowthDiagnostic bound_ratio(const Family& fam, const Partition& lambda, int p) {
    if (fam.kind == Family::Kind::selmer)
        throw std::invalid_argument("bound_ratio: no growth bound for the Selmer family");
    Partition conj = lambda.conjugate();
    return GrowthDiagnostic{fam.kind, moment(fam, lambda, p), pairing(conj, conj)};
}

inline bool growth_within(const GrowthDiagnostic& d, int p, const Rat& c) {
    Rat scale = rat_pow(Rat(p), d.conj_pairing);
    if (d.kind == Family::Kind::class_group) return d.moment_value * d.moment_value <= c * c * scale;
    return d.moment_value <= c * scale;
}

// Sharper class-family diagnostic: moment <= c * p^{(l'|l')/4} * |lambda|^ell,
// compared via fourth powers (lambda nonempty).
inline bool growth_within_quarter(const GrowthDiagnostic& d, int p, long lambda_size, int ell,
                                  const Rat& c) {
    if (d.kind != Family::Kind::class_group)
        throw std::invalid_argument("growth_within_quarter: class family only");
    if (lambda_size <= 0) throw std::invalid_argument("growth_within_quarter: lambda must be nonempty");
    Rat m4 = rat_pow(d.moment_value, 4);
    Rat bound = rat_pow(c, 4) * rat_pow(Rat(p), d.conj_pairing) *
                rat_pow(Rat(lambda_size), 4L * ell);
    return m4 <= bound;
}

}  // namespace pjrank
